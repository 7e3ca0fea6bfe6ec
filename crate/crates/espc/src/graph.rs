//! Compact undirected graph representation shared by all other modules.
//!
//! Vertices are dense `u32` ids. Adjacency is CSR: `offsets[v]..offsets[v+1]`
//! indexes into `neighbors`, and every neighbor list is strictly ascending.
//! Graphs are immutable after construction and safe to share between threads.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    /// Undirected edge count; `neighbors.len() == 2 * num_edges`.
    num_edges: u64,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    /// Dense id -> original external id. `None` means the ids are their own
    /// external ids (loading normalizes an identity mapping back to `None`).
    id_map: Option<Vec<u32>>,
}

impl Graph {
    /// Builds a graph over vertices `0..n` from raw edge pairs. Self-loops are
    /// dropped, parallel edges collapsed, and each pair symmetrized.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Graph {
        let mut set: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for (a, b) in edges {
            assert!((a as usize) < n && (b as usize) < n, "edge endpoint out of range");
            if a == b {
                continue;
            }
            set.insert((a.min(b), a.max(b)));
        }
        Self::from_canonical_edges(n, &set, None)
    }

    fn from_canonical_edges(
        n: usize,
        edges: &BTreeSet<(VertexId, VertexId)>,
        id_map: Option<Vec<u32>>,
    ) -> Graph {
        let mut deg = vec![0usize; n];
        for &(a, b) in edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut neighbors = vec![0 as VertexId; offsets[n]];
        let mut cursor = offsets.clone();
        for &(a, b) in edges {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        // Edges arrive sorted by (a, b), so each list needs one extra sort for
        // the reversed arcs.
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            num_vertices: n,
            num_edges: edges.len() as u64,
            offsets,
            neighbors,
            id_map,
        }
    }

    /// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
    /// are comments; blank lines are skipped. External ids are remapped to
    /// dense `[0, n)` in ascending order of original id.
    pub fn load_edge_list(reader: impl BufRead) -> Result<Graph> {
        let mut raw: Vec<(u32, u32)> = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let a = parse_id(tokens.next(), lineno)?;
            let b = parse_id(tokens.next(), lineno)?;
            if tokens.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected exactly two ids".into(),
                });
            }
            raw.push((a, b));
        }
        if raw.is_empty() {
            return Err(Error::EmptyEdgeList);
        }

        let mut ids: Vec<u32> = raw.iter().flat_map(|&(a, b)| [a, b]).collect();
        ids.sort_unstable();
        ids.dedup();
        let dense = |orig: u32| ids.binary_search(&orig).unwrap() as VertexId;

        let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for (a, b) in raw {
            if a == b {
                continue;
            }
            let (a, b) = (dense(a), dense(b));
            edges.insert((a.min(b), a.max(b)));
        }
        let identity = ids.iter().enumerate().all(|(i, &orig)| orig == i as u32);
        let id_map = if identity { None } else { Some(ids.clone()) };
        Ok(Self::from_canonical_edges(ids.len(), &edges, id_map))
    }

    /// Writes the graph as an edge list (one `a b` per line, external ids,
    /// canonical order). Reloading the output reproduces the graph as long as
    /// no vertex is isolated.
    pub fn write_edge_list(&self, mut writer: impl Write) -> Result<()> {
        for v in 0..self.num_vertices as VertexId {
            for &u in self.neighbors(v) {
                if v < u {
                    writeln!(writer, "{} {}", self.original_id(v), self.original_id(u))?;
                }
            }
        }
        Ok(())
    }

    /// Erdős–Rényi-style random graph with roughly `n * edge_factor` edges,
    /// deterministic for a fixed `(n, edge_factor, seed)`.
    pub fn generate_random(n: usize, edge_factor: f64, seed: u64) -> Graph {
        assert!(n >= 1, "generate_random requires n >= 1");
        let max_pairs = n as u64 * (n as u64 - 1) / 2;
        let target = ((n as f64 * edge_factor).floor() as u64).min(max_pairs);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        if 2 * target > max_pairs {
            // Dense request: partial Fisher-Yates over all pairs.
            let mut pairs: Vec<(VertexId, VertexId)> = (0..n as VertexId)
                .flat_map(|a| ((a + 1)..n as VertexId).map(move |b| (a, b)))
                .collect();
            for i in 0..target as usize {
                let j = rng.random_range(i..pairs.len());
                pairs.swap(i, j);
            }
            edges.extend(pairs.into_iter().take(target as usize));
        } else {
            while (edges.len() as u64) < target {
                let a = rng.random_range(0..n as VertexId);
                let b = rng.random_range(0..n as VertexId);
                if a != b {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
        Self::from_canonical_edges(n, &edges, None)
    }

    /// Scale-free random graph: each new vertex attaches to `attach` distinct
    /// existing vertices chosen proportionally to degree, seeded by a clique.
    /// Deterministic for a fixed `(n, attach, seed)`. Produces the skewed
    /// degree distributions hub labeling thrives on, so it is the default
    /// benchmark workload.
    pub fn generate_preferential(n: usize, attach: usize, seed: u64) -> Graph {
        assert!(n >= 1 && attach >= 1, "generate_preferential requires n, attach >= 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        // Endpoint multiset: sampling an index uniformly is sampling a vertex
        // by degree.
        let mut endpoints: Vec<VertexId> = Vec::new();
        let m0 = (attach + 1).min(n);
        for a in 0..m0 as VertexId {
            for b in a + 1..m0 as VertexId {
                edges.insert((a, b));
                endpoints.push(a);
                endpoints.push(b);
            }
        }
        let mut chosen: BTreeSet<VertexId> = BTreeSet::new();
        for v in m0..n {
            chosen.clear();
            while chosen.len() < attach.min(v) {
                let u = endpoints[rng.random_range(0..endpoints.len())];
                chosen.insert(u);
            }
            for &u in &chosen {
                edges.insert((u.min(v as VertexId), u.max(v as VertexId)));
                endpoints.push(u);
                endpoints.push(v as VertexId);
            }
        }
        Self::from_canonical_edges(n, &edges, None)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> u64 {
        self.num_edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degree(&self, v: VertexId) -> Result<u32> {
        if (v as usize) >= self.num_vertices {
            return Err(Error::VertexOutOfRange {
                vertex: v as u64,
                n: self.num_vertices,
            });
        }
        Ok(self.neighbors(v).len() as u32)
    }

    /// The external id a dense vertex id came from (identity when the graph
    /// was not loaded from an external id space).
    pub fn original_id(&self, v: VertexId) -> u32 {
        match &self.id_map {
            Some(map) => map[v as usize],
            None => v,
        }
    }

    /// Dense id for an external id, if present.
    pub fn dense_id(&self, original: u32) -> Option<VertexId> {
        match &self.id_map {
            Some(map) => map.binary_search(&original).ok().map(|i| i as VertexId),
            None => ((original as usize) < self.num_vertices).then_some(original),
        }
    }

    /// Checks every structural invariant; used by tests and after ingestion.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vertices;
        if self.offsets.len() != n + 1 || self.offsets[0] != 0 {
            return Err(Error::Corrupt("bad offset array".into()));
        }
        if self.offsets[n] != self.neighbors.len() || self.offsets[n] as u64 != 2 * self.num_edges {
            return Err(Error::Corrupt("offsets[n] != 2m".into()));
        }
        for v in 0..n as VertexId {
            if self.offsets[v as usize] > self.offsets[v as usize + 1] {
                return Err(Error::Corrupt("offsets not monotone".into()));
            }
            let nbrs = self.neighbors(v);
            for (k, &u) in nbrs.iter().enumerate() {
                if (u as usize) >= n {
                    return Err(Error::Corrupt("neighbor out of range".into()));
                }
                if u == v {
                    return Err(Error::Corrupt(format!("self-loop at {v}")));
                }
                if k > 0 && nbrs[k - 1] >= u {
                    return Err(Error::Corrupt(format!("neighbor list of {v} not ascending")));
                }
                if self.neighbors(u).binary_search(&v).is_err() {
                    return Err(Error::Corrupt(format!("edge ({v}, {u}) not symmetric")));
                }
            }
        }
        Ok(())
    }
}

fn parse_id(token: Option<&str>, line: usize) -> Result<u32> {
    let token = token.ok_or(Error::Parse {
        line,
        msg: "expected exactly two ids".into(),
    })?;
    token.parse::<u32>().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid vertex id {token:?}"),
    })
}
