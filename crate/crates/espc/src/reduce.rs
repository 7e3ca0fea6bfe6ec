//! Graph reductions applied before indexing: 1-shell (core-fringe) peeling
//! and neighborhood-equivalence (twin) collapsing, plus the endpoint maps
//! that keep queries on the original graph exact.
//!
//! Pipeline order is fixed: the 1-shell is peeled first, twins are collapsed
//! on the remaining core. Counting on the reduced graph weights every
//! internal path vertex by its multiplicity; endpoints stay unweighted.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Sentinel for "no vertex" in parent/core maps.
pub const NO_VERTEX: u32 = u32::MAX;

/// Core-fringe decomposition of a graph. The core is the 2-core; peeled
/// vertices form trees, each attached to the core by at most one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreFringe {
    pub in_core: Vec<bool>,
    /// For core vertices, the vertex itself; for fringe vertices, the core
    /// vertex their tree hangs from, or the smallest-id vertex of a tree-only
    /// component.
    pub anchor: Vec<VertexId>,
    /// Next hop toward the anchor; `NO_VERTEX` for core vertices and roots.
    pub parent: Vec<VertexId>,
    /// Hop count to the anchor; 0 for core vertices and roots.
    pub depth: Vec<u32>,
    /// Input id -> dense core id (`NO_VERTEX` for fringe vertices).
    pub core_of: Vec<u32>,
    /// Dense core id -> input id.
    pub core_origin: Vec<VertexId>,
}

/// Iteratively peels degree<=1 vertices. Returns the 2-core as a dense graph
/// together with anchor/parent/depth maps over the input ids.
pub fn one_shell(g: &Graph) -> (Graph, CoreFringe) {
    let n = g.num_vertices();
    let mut deg: Vec<u32> = (0..n as VertexId).map(|v| g.neighbors(v).len() as u32).collect();
    let mut removed = vec![false; n];
    let mut queue: Vec<VertexId> = (0..n as VertexId).filter(|&v| deg[v as usize] <= 1).collect();
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        removed[v as usize] = true;
        for &u in g.neighbors(v) {
            if removed[u as usize] {
                continue;
            }
            deg[u as usize] -= 1;
            if deg[u as usize] == 1 {
                queue.push(u);
            }
        }
    }

    let in_core: Vec<bool> = removed.iter().map(|&r| !r).collect();
    let mut anchor = vec![NO_VERTEX; n];
    let mut parent = vec![NO_VERTEX; n];
    let mut depth = vec![0u32; n];
    for v in 0..n {
        if in_core[v] {
            anchor[v] = v as VertexId;
        }
    }

    // Hang attached trees off their unique core neighbor.
    let mut bfs: Vec<VertexId> = Vec::new();
    for c in 0..n as VertexId {
        if !in_core[c as usize] {
            continue;
        }
        for &x in g.neighbors(c) {
            if !in_core[x as usize] && anchor[x as usize] == NO_VERTEX {
                anchor[x as usize] = c;
                parent[x as usize] = c;
                depth[x as usize] = 1;
                bfs.push(x);
            }
        }
    }
    let mut head = 0;
    while head < bfs.len() {
        let x = bfs[head];
        head += 1;
        for &y in g.neighbors(x) {
            if !in_core[y as usize] && anchor[y as usize] == NO_VERTEX {
                anchor[y as usize] = anchor[x as usize];
                parent[y as usize] = x;
                depth[y as usize] = depth[x as usize] + 1;
                bfs.push(y);
            }
        }
    }

    // Remaining fringe vertices belong to tree-only components; root each at
    // its smallest id. Ascending iteration makes the first unassigned vertex
    // of a component its minimum.
    for r in 0..n as VertexId {
        if in_core[r as usize] || anchor[r as usize] != NO_VERTEX {
            continue;
        }
        anchor[r as usize] = r;
        let mut comp = vec![r];
        let mut head = 0;
        while head < comp.len() {
            let x = comp[head];
            head += 1;
            for &y in g.neighbors(x) {
                if anchor[y as usize] == NO_VERTEX {
                    anchor[y as usize] = r;
                    parent[y as usize] = x;
                    depth[y as usize] = depth[x as usize] + 1;
                    comp.push(y);
                }
            }
        }
    }

    let core_origin: Vec<VertexId> = (0..n as VertexId).filter(|&v| in_core[v as usize]).collect();
    let mut core_of = vec![NO_VERTEX; n];
    for (i, &v) in core_origin.iter().enumerate() {
        core_of[v as usize] = i as u32;
    }
    let mut core_edges = Vec::new();
    for &v in &core_origin {
        for &u in g.neighbors(v) {
            if in_core[u as usize] {
                core_edges.push((core_of[v as usize], core_of[u as usize]));
            }
        }
    }
    let core = Graph::from_edges(core_origin.len(), core_edges);
    (
        core,
        CoreFringe {
            in_core,
            anchor,
            parent,
            depth,
            core_of,
            core_origin,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum TwinKind {
    Singleton = 0,
    /// Class members are pairwise adjacent (identical closed neighborhoods).
    Adjacent = 1,
    /// Class members are pairwise non-adjacent (identical open neighborhoods).
    NonAdjacent = 2,
}

impl TwinKind {
    pub fn from_u8(x: u8) -> Result<TwinKind> {
        match x {
            0 => Ok(TwinKind::Singleton),
            1 => Ok(TwinKind::Adjacent),
            2 => Ok(TwinKind::NonAdjacent),
            other => Err(Error::Corrupt(format!("bad twin kind {other}"))),
        }
    }
}

/// Neighborhood-equivalence reduction of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinReduction {
    /// Graph induced on class representatives, duplicate edges collapsed.
    pub graph: Graph,
    /// Input id -> representative input id (smallest class member).
    pub rep: Vec<VertexId>,
    /// Input id -> dense reduced id of its representative.
    pub red_of: Vec<u32>,
    /// Dense reduced id -> representative input id.
    pub origin: Vec<VertexId>,
    /// Class size per reduced vertex.
    pub weight: Vec<u64>,
    pub kind: Vec<TwinKind>,
    /// Per reduced vertex, the weight sum over its reduced-graph neighbors
    /// (the count of a distance-2 hop between non-adjacent twins).
    pub nbr_weight_sum: Vec<u64>,
}

/// Groups vertices with identical open neighborhoods (non-adjacent twins) or
/// identical closed neighborhoods (adjacent twins); keeps the smallest-id
/// member of each class as representative with the class size as weight.
pub fn twin_reduce(g: &Graph) -> TwinReduction {
    let n = g.num_vertices();
    let mut rep: Vec<VertexId> = (0..n as VertexId).collect();
    let mut kind_of: Vec<TwinKind> = vec![TwinKind::Singleton; n];

    let mut open_groups: HashMap<&[VertexId], Vec<VertexId>> = HashMap::new();
    for v in 0..n as VertexId {
        open_groups.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut closed_groups: HashMap<Vec<VertexId>, Vec<VertexId>> = HashMap::new();
    for v in 0..n as VertexId {
        let mut closed = g.neighbors(v).to_vec();
        let at = closed.partition_point(|&u| u < v);
        closed.insert(at, v);
        closed_groups.entry(closed).or_default().push(v);
    }
    // A vertex can never sit in a non-trivial class of both passes: a closed
    // twin of v is adjacent to v, so it would appear in v's open neighborhood
    // and break open equality.
    for class in open_groups.values().chain(closed_groups.values()) {
        if class.len() < 2 {
            continue;
        }
        let adjacent = g.neighbors(class[1]).binary_search(&class[0]).is_ok();
        let r = class[0];
        for &v in class {
            debug_assert!(rep[v as usize] == v, "overlapping twin classes");
            rep[v as usize] = r;
            kind_of[v as usize] = if adjacent { TwinKind::Adjacent } else { TwinKind::NonAdjacent };
        }
    }

    let origin: Vec<VertexId> = (0..n as VertexId).filter(|&v| rep[v as usize] == v).collect();
    let mut red_of_rep = vec![NO_VERTEX; n];
    for (i, &r) in origin.iter().enumerate() {
        red_of_rep[r as usize] = i as u32;
    }
    let red_of: Vec<u32> = (0..n).map(|v| red_of_rep[rep[v] as usize]).collect();

    let mut weight = vec![0u64; origin.len()];
    for v in 0..n {
        weight[red_of[v] as usize] += 1;
    }
    let kind: Vec<TwinKind> = origin.iter().map(|&r| kind_of[r as usize]).collect();

    let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
    for v in 0..n as VertexId {
        for &u in g.neighbors(v) {
            let (a, b) = (red_of[v as usize], red_of[u as usize]);
            if a < b {
                edges.insert((a, b));
            }
        }
    }
    let graph = Graph::from_edges(origin.len(), edges.iter().copied());
    let nbr_weight_sum: Vec<u64> = (0..origin.len() as u32)
        .map(|r| graph.neighbors(r).iter().map(|&u| weight[u as usize]).sum())
        .collect();

    TwinReduction {
        graph,
        rep,
        red_of,
        origin,
        weight,
        kind,
        nbr_weight_sum,
    }
}

/// Which reductions to apply before indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReduceSetting {
    #[default]
    None,
    Shell,
    Twin,
    Both,
}

/// Twin-side maps of a [`Reduction`], composed over original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinMaps {
    /// Original id -> reduced id; valid at core vertices (`NO_VERTEX` elsewhere).
    pub red_of: Vec<u32>,
    /// Reduced id -> original id of the representative.
    pub origin: Vec<VertexId>,
    pub weight: Vec<u64>,
    pub kind: Vec<TwinKind>,
    pub nbr_weight_sum: Vec<u64>,
}

/// Composed endpoint-mapping data carried by every index. Absent parts mean
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    n_orig: usize,
    n_red: usize,
    pub shell: Option<CoreFringe>,
    pub twin: Option<TwinMaps>,
}

/// A reduced graph ready for indexing: structure, per-vertex multiplicities,
/// and the maps back to the original graph.
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: Graph,
    pub weights: Vec<u64>,
    pub maps: Reduction,
}

/// Runs the reduction pipeline for `setting` (1-shell first, then twins on
/// the core).
pub fn reduce(g: &Graph, setting: ReduceSetting) -> Reduced {
    let n = g.num_vertices();
    match setting {
        ReduceSetting::None => Reduced {
            graph: g.clone(),
            weights: vec![1; n],
            maps: Reduction {
                n_orig: n,
                n_red: n,
                shell: None,
                twin: None,
            },
        },
        ReduceSetting::Shell => {
            let (core, cf) = one_shell(g);
            let n_red = core.num_vertices();
            Reduced {
                graph: core,
                weights: vec![1; n_red],
                maps: Reduction {
                    n_orig: n,
                    n_red,
                    shell: Some(cf),
                    twin: None,
                },
            }
        }
        ReduceSetting::Twin => {
            let tr = twin_reduce(g);
            let n_red = tr.graph.num_vertices();
            Reduced {
                graph: tr.graph,
                weights: tr.weight.clone(),
                maps: Reduction {
                    n_orig: n,
                    n_red,
                    shell: None,
                    twin: Some(TwinMaps {
                        red_of: tr.red_of,
                        origin: tr.origin,
                        weight: tr.weight,
                        kind: tr.kind,
                        nbr_weight_sum: tr.nbr_weight_sum,
                    }),
                },
            }
        }
        ReduceSetting::Both => {
            let (core, cf) = one_shell(g);
            let tr = twin_reduce(&core);
            let n_red = tr.graph.num_vertices();
            // Compose core-id maps back to original ids.
            let mut red_of = vec![NO_VERTEX; n];
            for (core_id, &orig) in cf.core_origin.iter().enumerate() {
                red_of[orig as usize] = tr.red_of[core_id];
            }
            let origin: Vec<VertexId> = tr
                .origin
                .iter()
                .map(|&core_rep| cf.core_origin[core_rep as usize])
                .collect();
            Reduced {
                graph: tr.graph,
                weights: tr.weight.clone(),
                maps: Reduction {
                    n_orig: n,
                    n_red,
                    shell: Some(cf),
                    twin: Some(TwinMaps {
                        red_of,
                        origin,
                        weight: tr.weight,
                        kind: tr.kind,
                        nbr_weight_sum: tr.nbr_weight_sum,
                    }),
                },
            }
        }
    }
}

impl Reduction {
    /// Identity reduction over `n` vertices.
    pub fn identity(n: usize) -> Reduction {
        Reduction {
            n_orig: n,
            n_red: n,
            shell: None,
            twin: None,
        }
    }

    pub fn from_parts(
        n_orig: usize,
        n_red: usize,
        shell: Option<CoreFringe>,
        twin: Option<TwinMaps>,
    ) -> Reduction {
        Reduction {
            n_orig,
            n_red,
            shell,
            twin,
        }
    }

    pub fn num_original(&self) -> usize {
        self.n_orig
    }

    pub fn num_reduced(&self) -> usize {
        self.n_red
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.n_orig {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: self.n_orig,
            })
        }
    }

    pub fn anchor(&self, v: VertexId) -> VertexId {
        self.shell.as_ref().map_or(v, |s| s.anchor[v as usize])
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.shell.as_ref().map_or(0, |s| s.depth[v as usize])
    }

    fn anchor_in_core(&self, a: VertexId) -> bool {
        self.shell.as_ref().is_none_or(|s| s.in_core[a as usize])
    }

    /// Maps an original vertex to its reduced image and tree depth. `None`
    /// when the vertex lies in a tree-only component (its anchor never made
    /// it into the indexed graph).
    pub fn map_endpoint(&self, v: VertexId) -> Result<Option<(u32, u32)>> {
        self.check_vertex(v)?;
        let a = self.anchor(v);
        if !self.anchor_in_core(a) {
            return Ok(None);
        }
        let red = match (&self.twin, &self.shell) {
            (Some(t), _) => t.red_of[a as usize],
            (None, Some(s)) => s.core_of[a as usize],
            (None, None) => a,
        };
        debug_assert_ne!(red, NO_VERTEX);
        Ok(Some((red, self.depth(v))))
    }

    /// Hop distance along the unique tree path between two vertices sharing
    /// an anchor, by walking parent pointers to the lowest common ancestor.
    pub fn tree_distance(&self, s: VertexId, t: VertexId) -> Result<u32> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if self.anchor(s) != self.anchor(t) {
            return Err(Error::NotSameTree { s, t });
        }
        if s == t {
            return Ok(0);
        }
        let shell = self
            .shell
            .as_ref()
            .expect("distinct vertices share an anchor only under shell reduction");
        let mut a = s;
        let mut b = t;
        let mut da = shell.depth[a as usize];
        let mut db = shell.depth[b as usize];
        let mut dist = 0u32;
        while da > db {
            a = shell.parent[a as usize];
            da -= 1;
            dist += 1;
        }
        while db > da {
            b = shell.parent[b as usize];
            db -= 1;
            dist += 1;
        }
        while a != b {
            a = shell.parent[a as usize];
            b = shell.parent[b as usize];
            dist += 2;
        }
        Ok(dist)
    }

    /// Multiplicity of a reduced vertex.
    pub fn weight(&self, r: u32) -> u64 {
        self.twin.as_ref().map_or(1, |t| t.weight[r as usize])
    }

    pub fn kind(&self, r: u32) -> TwinKind {
        self.twin.as_ref().map_or(TwinKind::Singleton, |t| t.kind[r as usize])
    }

    pub fn nbr_weight_sum(&self, r: u32) -> u64 {
        self.twin.as_ref().map_or(0, |t| t.nbr_weight_sum[r as usize])
    }

    pub fn has_weights(&self) -> bool {
        self.twin.is_some()
    }
}
