//! Sequential label construction: one pruned counting BFS per vertex in rank
//! order. Strictly single-threaded; the distance-round builder must reproduce
//! its output label for label.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::label::{join_min_dist, LabelEntry};
use crate::order::VertexOrder;

const UNVISITED: u32 = u32::MAX;

/// Builds the full label set for `g` under `order`. `weights` carries the
/// per-vertex multiplicities of a reduced graph (`None` = all ones).
///
/// The BFS sourced at the rank-`i` vertex applies, per reached vertex `x` at
/// BFS distance `dx`:
/// - rank prune: `x` ranking above the source gets no label and no expansion;
/// - query prune: a common-hub distance shorter than `dx` over the labels
///   built so far kills the label and the expansion;
/// - otherwise (equal or longer) the entry `(i, dx, sigma)` is inserted and
///   the search keeps expanding, `sigma` being the count accumulated through
///   non-pruned predecessors (times the predecessor's weight when it is an
///   internal vertex).
pub fn build_sequential(
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
) -> Result<Vec<Vec<LabelEntry>>> {
    let n = g.num_vertices();
    assert_eq!(order.len(), n, "order must cover the graph");
    let mut labels: Vec<Vec<LabelEntry>> = vec![Vec::new(); n];

    let mut dist = vec![UNVISITED; n];
    let mut sigma = vec![0u64; n];
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    let mut touched: Vec<VertexId> = Vec::new();

    for i in 0..n {
        let source = order.vertex_at[i];
        dist[source as usize] = 0;
        sigma[source as usize] = 1;
        labels[source as usize].push(LabelEntry {
            hub_pos: i as u32,
            dist: 0,
            count: 1,
        });
        queue.push_back(source);
        touched.push(source);

        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if x != source {
                if order.rank_of[x as usize] < i as u32 {
                    continue; // outranks the source: no label, no expansion
                }
                let d0 = join_min_dist(&labels[source as usize], &labels[x as usize]);
                if d0.is_some_and(|d| d < dx) {
                    continue; // covered by higher-ranked hubs: prune
                }
                labels[x as usize].push(LabelEntry {
                    hub_pos: i as u32,
                    dist: dx,
                    count: sigma[x as usize],
                });
            }
            let step = if x == source {
                1
            } else {
                weights.map_or(1, |w| w[x as usize])
            };
            for &y in g.neighbors(x) {
                if dist[y as usize] == UNVISITED {
                    dist[y as usize] = dx + 1;
                    queue.push_back(y);
                    touched.push(y);
                }
                if dist[y as usize] == dx + 1 {
                    sigma[y as usize] = sigma[x as usize]
                        .checked_mul(step)
                        .and_then(|c| sigma[y as usize].checked_add(c))
                        .ok_or(Error::CountOverflow { u: source, v: y })?;
                }
            }
        }

        for &v in &touched {
            dist[v as usize] = UNVISITED;
            sigma[v as usize] = 0;
        }
        touched.clear();
        queue.clear();
    }
    Ok(labels)
}
