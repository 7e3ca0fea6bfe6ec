//! Brute-force shortest-path counting oracles.
//!
//! Deliberately naive layered-BFS implementations, textually independent of
//! the label builders they certify. The `verify` CLI subcommand and the test
//! suites treat these as ground truth.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::order::VertexOrder;

pub const UNREACHABLE: u32 = u32::MAX;

/// Default vertex-count bound for all-pairs verification.
pub const DEFAULT_ORACLE_BOUND: usize = 256;

/// Distances and shortest-path counts from one source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsspCount {
    pub dist: Vec<u32>,
    pub sigma: Vec<u64>,
}

/// Counting BFS from `source`. With `weights`, a path contributes the product
/// of the weights of its internal vertices (endpoints stay unweighted), which
/// is the counting convention of reduced graphs.
pub fn bfs_count(g: &Graph, source: VertexId, weights: Option<&[u64]>) -> Result<SsspCount> {
    let n = g.num_vertices();
    if (source as usize) >= n {
        return Err(Error::VertexOutOfRange { vertex: source as u64, n });
    }
    bfs_count_masked(g, source, weights, |_| true)
}

fn bfs_count_masked(
    g: &Graph,
    source: VertexId,
    weights: Option<&[u64]>,
    allowed: impl Fn(VertexId) -> bool,
) -> Result<SsspCount> {
    let n = g.num_vertices();
    let mut dist = vec![UNREACHABLE; n];
    let mut sigma = vec![0u64; n];
    dist[source as usize] = 0;
    sigma[source as usize] = 1;
    let mut frontier = vec![source];
    let mut next = Vec::new();
    let mut level = 0u32;
    while !frontier.is_empty() {
        for &v in &frontier {
            let contribution = if v == source {
                1
            } else {
                weights.map_or(1, |w| w[v as usize])
            };
            for &u in g.neighbors(v) {
                if !allowed(u) {
                    continue;
                }
                if dist[u as usize] == UNREACHABLE {
                    dist[u as usize] = level + 1;
                    next.push(u);
                }
                if dist[u as usize] == level + 1 {
                    let add = sigma[v as usize]
                        .checked_mul(contribution)
                        .and_then(|x| sigma[u as usize].checked_add(x))
                        .ok_or(Error::CountOverflow { u: source, v: u })?;
                    sigma[u as usize] = add;
                }
            }
        }
        frontier = std::mem::take(&mut next);
        level += 1;
    }
    Ok(SsspCount { dist, sigma })
}

/// All-pairs `(dist, count)` table; row `s`, column `t`. Refuses graphs above
/// `bound` vertices (`None` uses [`DEFAULT_ORACLE_BOUND`]).
pub fn all_pairs_oracle(g: &Graph, bound: Option<usize>) -> Result<Vec<SsspCount>> {
    let n = g.num_vertices();
    let bound = bound.unwrap_or(DEFAULT_ORACLE_BOUND);
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    (0..n as VertexId).map(|s| bfs_count(g, s, None)).collect()
}

/// For each vertex `u`, the number of shortest `w`-`u` paths on which `w` is
/// the highest-ranked vertex (0 when none). Computed by a BFS restricted to
/// vertices ranking at or below `w`, cross-checked against full-graph
/// distances.
pub fn trough_count_oracle(g: &Graph, order: &VertexOrder, w: VertexId) -> Result<Vec<u64>> {
    let n = g.num_vertices();
    let rank_w = order.rank_of[w as usize];
    let restricted = bfs_count_masked(g, w, None, |v| order.rank_of[v as usize] >= rank_w)?;
    let full = bfs_count(g, w, None)?;
    let counts = (0..n)
        .map(|u| {
            if restricted.dist[u] != UNREACHABLE && restricted.dist[u] == full.dist[u] {
                restricted.sigma[u]
            } else {
                0
            }
        })
        .collect();
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfix;

    #[test]
    fn path_distances_and_counts() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
        let r = bfs_count(&g, 0, None).unwrap();
        assert_eq!(r.dist, vec![0, 1, 2]);
        assert_eq!(r.sigma, vec![1, 1, 1]);
    }

    #[test]
    fn four_cycle_opposite_corners_count_two() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
        let r = bfs_count(&g, 0, None).unwrap();
        assert_eq!(r.dist[2], 2);
        assert_eq!(r.sigma[2], 2);
    }

    #[test]
    fn fig2_example_pair() {
        let g = testfix::fig2_graph();
        let r = bfs_count(&g, testfix::V10, None).unwrap();
        assert_eq!(r.dist[testfix::V7 as usize], 3);
        assert_eq!(r.sigma[testfix::V7 as usize], 4);
    }

    #[test]
    fn unreachable_vertices_have_zero_count() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]);
        let r = bfs_count(&g, 0, None).unwrap();
        assert_eq!(r.dist[2], UNREACHABLE);
        assert_eq!(r.sigma[2], 0);
    }

    #[test]
    fn predecessor_sum_recurrence_holds() {
        let g = Graph::generate_random(48, 2.2, 13);
        let r = bfs_count(&g, 5, None).unwrap();
        for v in 0..48u32 {
            if v == 5 || r.dist[v as usize] == UNREACHABLE {
                continue;
            }
            let expect: u64 = g
                .neighbors(v)
                .iter()
                .filter(|&&p| r.dist[p as usize] + 1 == r.dist[v as usize])
                .map(|&p| r.sigma[p as usize])
                .sum();
            assert_eq!(r.sigma[v as usize], expect, "vertex {v}");
        }
    }

    #[test]
    fn all_pairs_table_is_symmetric_with_unit_diagonal() {
        let g = Graph::generate_random(20, 1.5, 3);
        let table = all_pairs_oracle(&g, None).unwrap();
        for s in 0..20usize {
            assert_eq!((table[s].dist[s], table[s].sigma[s]), (0, 1));
            for t in 0..20usize {
                assert_eq!(table[s].dist[t], table[t].dist[s]);
                assert_eq!(table[s].sigma[t], table[t].sigma[s]);
            }
        }
    }

    #[test]
    fn all_pairs_respects_bound() {
        let g = Graph::generate_random(10, 1.0, 1);
        assert!(matches!(
            all_pairs_oracle(&g, Some(5)),
            Err(Error::OracleBound { n: 10, bound: 5 })
        ));
    }

    #[test]
    fn trough_counts_on_fig2() {
        let g = testfix::fig2_graph();
        let order = testfix::caption_order();
        let from_v7 = trough_count_oracle(&g, &order, testfix::V7).unwrap();
        assert_eq!(from_v7[testfix::V10 as usize], 2);
        assert_eq!(from_v7[testfix::V1 as usize], 0);
        // Top-ranked vertex: trough counts equal the plain BFS counts.
        let from_v1 = trough_count_oracle(&g, &order, testfix::V1).unwrap();
        let plain = bfs_count(&g, testfix::V1, None).unwrap();
        assert_eq!(from_v1, plain.sigma);
    }
}
