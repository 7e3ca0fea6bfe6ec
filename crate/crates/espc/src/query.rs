//! Point-to-point and batch queries over a finished index.
//!
//! A query takes original vertex ids, composes the reduction maps, and
//! merge-joins the two reduced endpoints' label lists over their common hubs.
//! Queries are pure; the index is shared read-only.

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::label::{partial_query, SpcIndex};
use crate::reduce::TwinKind;

/// Distance and shortest-path count of one pair. `dist == None` means
/// unreachable, in which case `count == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub dist: Option<u32>,
    pub count: u64,
}

impl QueryResult {
    pub const UNREACHABLE: QueryResult = QueryResult { dist: None, count: 0 };

    pub fn reachable(dist: u32, count: u64) -> QueryResult {
        QueryResult {
            dist: Some(dist),
            count,
        }
    }
}

impl std::fmt::Display for QueryResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.dist {
            Some(d) => write!(f, "{} {}", d, self.count),
            None => write!(f, "INF 0"),
        }
    }
}

/// Exact distance and shortest-path count between two original vertices.
pub fn spc_query(idx: &SpcIndex, s: VertexId, t: VertexId) -> Result<QueryResult> {
    let red = &idx.reduction;
    red.check_vertex(s)?;
    red.check_vertex(t)?;
    if s == t {
        return Ok(QueryResult::reachable(0, 1));
    }
    // Same fringe tree (or one endpoint is the other's anchor): the tree path
    // is the unique shortest path.
    if red.anchor(s) == red.anchor(t) {
        return Ok(QueryResult::reachable(red.tree_distance(s, t)?, 1));
    }
    let Some((rs, depth_s)) = red.map_endpoint(s)? else {
        return Ok(QueryResult::UNREACHABLE); // tree-only component
    };
    let Some((rt, depth_t)) = red.map_endpoint(t)? else {
        return Ok(QueryResult::UNREACHABLE);
    };
    let through_trees = depth_s + depth_t;

    if rs == rt {
        // Distinct anchors collapsed into one twin class.
        return Ok(match red.kind(rs) {
            TwinKind::Adjacent => QueryResult::reachable(through_trees + 1, 1),
            TwinKind::NonAdjacent => {
                let via = red.nbr_weight_sum(rs);
                if via == 0 {
                    // Non-adjacent twins with empty neighborhoods: isolated.
                    QueryResult::UNREACHABLE
                } else {
                    QueryResult::reachable(through_trees + 2, via)
                }
            }
            TwinKind::Singleton => {
                return Err(Error::Corrupt(
                    "distinct anchors map to one singleton class".into(),
                ))
            }
        });
    }

    let rank_s = idx.order.rank_of[rs as usize];
    let rank_t = idx.order.rank_of[rt as usize];
    let joined = partial_query(
        idx.entries(rs),
        idx.entries(rt),
        |hub_pos| {
            if hub_pos == rank_s || hub_pos == rank_t {
                1 // the hub is an endpoint's reduced image: unweighted
            } else {
                idx.hub_weight(hub_pos)
            }
        },
        (s, t),
    )?;
    Ok(match joined {
        Some((d, c)) => QueryResult::reachable(d + through_trees, c),
        None => QueryResult::UNREACHABLE,
    })
}

/// Maps [`spc_query`] over `pairs`, distributing the work across `workers`
/// threads. Results are positionally identical to the sequential map; on
/// failure the error of the smallest failing pair index is returned.
pub fn batch_query(
    idx: &SpcIndex,
    pairs: &[(VertexId, VertexId)],
    workers: usize,
) -> Result<Vec<QueryResult>> {
    assert!(workers >= 1, "workers must be at least 1");
    let run = |pair: &(VertexId, VertexId)| spc_query(idx, pair.0, pair.1);
    #[cfg(feature = "parallel")]
    let results: Vec<Result<QueryResult>> = if workers > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?;
        pool.install(|| pairs.par_iter().map(run).collect())
    } else {
        pairs.iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<QueryResult>> = pairs.iter().map(run).collect();

    results.into_iter().collect()
}
