//! Total vertex orders driving label construction.
//!
//! Position 0 is the highest rank; hubs must rank at or above the vertices
//! they label. All orderings are deterministic and single-threaded; ties are
//! always broken toward the smaller dense id.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// A bijection between vertex ids and rank positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    /// vertex -> position in `[0, n)`; smaller position = higher rank.
    pub rank_of: Vec<u32>,
    /// position -> vertex; inverse of `rank_of`.
    pub vertex_at: Vec<VertexId>,
}

impl VertexOrder {
    /// Builds an order from the position -> vertex array, checking that it is
    /// a permutation.
    pub fn from_vertex_at(vertex_at: Vec<VertexId>) -> Result<VertexOrder> {
        let n = vertex_at.len();
        let mut rank_of = vec![u32::MAX; n];
        for (pos, &v) in vertex_at.iter().enumerate() {
            if (v as usize) >= n {
                return Err(Error::VertexOutOfRange { vertex: v as u64, n });
            }
            if rank_of[v as usize] != u32::MAX {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice in order")));
            }
            rank_of[v as usize] = pos as u32;
        }
        Ok(VertexOrder { rank_of, vertex_at })
    }

    pub fn len(&self) -> usize {
        self.vertex_at.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_at.is_empty()
    }
}

/// Descending-degree order (highest degree gets position 0).
pub fn degree_order(g: &Graph) -> VertexOrder {
    let n = g.num_vertices();
    let mut vertex_at: Vec<VertexId> = (0..n as VertexId).collect();
    vertex_at.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    VertexOrder::from_vertex_at(vertex_at).expect("permutation by construction")
}

/// Minimum-degree elimination order.
///
/// Repeatedly removes the minimum-degree vertex (ties toward the smaller id),
/// connects its remaining neighbors into a clique, and bumps each remaining
/// neighbor's tracked degree by `deg(removed) - 1`. The tracked degree follows
/// that update formula rather than the literal post-fill adjacency. The
/// last-eliminated vertex gets rank 0.
pub fn elimination_order(g: &Graph) -> VertexOrder {
    let n = g.num_vertices();
    let mut adj: Vec<BTreeSet<VertexId>> = (0..n as VertexId)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut deg: Vec<u64> = (0..n as VertexId).map(|v| g.neighbors(v).len() as u64).collect();
    let mut alive: BTreeSet<(u64, VertexId)> = (0..n as VertexId).map(|v| (deg[v as usize], v)).collect();

    let mut queue: Vec<VertexId> = Vec::with_capacity(n);
    while let Some(&(d, v)) = alive.iter().next() {
        alive.remove(&(d, v));
        queue.push(v);
        let nbrs: Vec<VertexId> = adj[v as usize].iter().copied().collect();
        for &u in &nbrs {
            adj[u as usize].remove(&v);
        }
        // Fill: clique over the remaining neighbors.
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj[nbrs[i] as usize].insert(nbrs[j]);
                adj[nbrs[j] as usize].insert(nbrs[i]);
            }
        }
        for &u in &nbrs {
            alive.remove(&(deg[u as usize], u));
            deg[u as usize] += d;
            deg[u as usize] -= 1;
            alive.insert((deg[u as usize], u));
        }
        adj[v as usize].clear();
    }
    queue.reverse();
    VertexOrder::from_vertex_at(queue).expect("permutation by construction")
}

/// Hybrid order with degree threshold `delta`: vertices of degree greater than
/// `delta` form the core-part and take the top positions in degree order; the
/// rest follow in the elimination order of the subgraph they induce.
pub fn hybrid_order(g: &Graph, delta: u32) -> VertexOrder {
    let n = g.num_vertices();
    let mut core: Vec<VertexId> = Vec::new();
    let mut fringe: Vec<VertexId> = Vec::new();
    for v in 0..n as VertexId {
        if g.neighbors(v).len() as u32 > delta {
            core.push(v);
        } else {
            fringe.push(v);
        }
    }
    core.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));

    // Elimination order on the induced fringe subgraph, mapped back.
    let mut sub_of = vec![u32::MAX; n];
    for (i, &v) in fringe.iter().enumerate() {
        sub_of[v as usize] = i as u32;
    }
    let mut sub_edges = Vec::new();
    for &v in &fringe {
        for &u in g.neighbors(v) {
            if sub_of[u as usize] != u32::MAX {
                sub_edges.push((sub_of[v as usize], sub_of[u as usize]));
            }
        }
    }
    let sub = Graph::from_edges(fringe.len(), sub_edges);
    let sub_order = elimination_order(&sub);

    let mut vertex_at = core;
    vertex_at.extend(sub_order.vertex_at.iter().map(|&s| fringe[s as usize]));
    VertexOrder::from_vertex_at(vertex_at).expect("permutation by construction")
}
