//! Shortest-path-counting label machinery shared by the sequential and the
//! distance-round parallel builders.
//!
//! A label entry `(hub_pos, dist, count)` on vertex `v` records that the hub
//! at rank `hub_pos` lies at hop distance `dist` from `v`, with `count`
//! shortest paths on which the hub is the highest-ranked vertex. Per-vertex
//! entry lists are kept sorted by hub position so that queries are linear
//! merge-joins.

pub mod parallel;
pub mod seq;

use crate::error::{Error, Result};
use crate::order::VertexOrder;
use crate::reduce::Reduction;

/// One `(hub, distance, count)` triple. Also the unit that candidate buffers
/// of the parallel builder carry around.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelEntry {
    /// Rank position of the hub.
    pub hub_pos: u32,
    /// Hop distance to the hub.
    pub dist: u32,
    /// Number of trough shortest paths to the hub (weighted by internal
    /// multiplicities on reduced graphs).
    pub count: u64,
}

/// Deduplicates a candidate multiset: sorts by `(hub, dist)`, keeps only the
/// minimal distance per hub (elimination) and sums the counts of identical
/// `(hub, dist)` pairs (merging). Output is hub-sorted and insensitive to the
/// input permutation.
pub fn eliminate_and_merge(mut cands: Vec<LabelEntry>) -> Result<Vec<LabelEntry>> {
    cands.sort_unstable_by_key(|c| (c.hub_pos, c.dist));
    let mut out: Vec<LabelEntry> = Vec::with_capacity(cands.len());
    for c in cands {
        match out.last_mut() {
            Some(last) if last.hub_pos == c.hub_pos => {
                if last.dist == c.dist {
                    last.count = last.count.checked_add(c.count).ok_or(Error::CountOverflow {
                        u: c.hub_pos,
                        v: c.hub_pos,
                    })?;
                }
                // Larger distance for the same hub: eliminated.
            }
            _ => out.push(c),
        }
    }
    Ok(out)
}

/// Minimal distance over the common hubs of two hub-sorted label lists, or
/// `None` when the hub sets are disjoint. This is the pruning side of a
/// query: counts are deliberately not touched, so a pruning decision can
/// never overflow.
pub fn join_min_dist(a: &[LabelEntry], b: &[LabelEntry]) -> Option<u32> {
    let mut best: Option<u32> = None;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].hub_pos.cmp(&b[j].hub_pos) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                let d = a[i].dist + b[j].dist;
                if best.is_none_or(|x| d < x) {
                    best = Some(d);
                }
                i += 1;
                j += 1;
            }
        }
    }
    best
}

/// Merge-join of two hub-sorted label lists: minimal distance sum over common
/// hubs and, over the hubs achieving it, the sum of count products. Each term
/// is additionally multiplied by `hub_weight(hub_pos)` (pass `|_| 1` for
/// unweighted graphs; endpoints' own hubs must map to 1). `err_pair` names
/// the queried pair in overflow errors.
pub fn partial_query(
    a: &[LabelEntry],
    b: &[LabelEntry],
    hub_weight: impl Fn(u32) -> u64,
    err_pair: (u32, u32),
) -> Result<Option<(u32, u64)>> {
    let Some(best) = join_min_dist(a, b) else {
        return Ok(None);
    };
    // Second pass accumulates only minimal-distance terms, so counts parked
    // on longer detours cannot cause spurious overflow.
    let overflow = || Error::CountOverflow {
        u: err_pair.0,
        v: err_pair.1,
    };
    let mut total: u64 = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].hub_pos.cmp(&b[j].hub_pos) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i].dist + b[j].dist == best {
                    let term = a[i]
                        .count
                        .checked_mul(b[j].count)
                        .and_then(|x| x.checked_mul(hub_weight(a[i].hub_pos)))
                        .ok_or_else(overflow)?;
                    total = total.checked_add(term).ok_or_else(overflow)?;
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(Some((best, total)))
}

/// Builder provenance and configuration echo. Kept in memory only; the
/// serialized index is a pure function of its content.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexMeta {
    pub builder: String,
    pub config: String,
}

/// A finished shortest-path-counting index: the vertex order and labels of
/// the (possibly reduced) graph, the reduction maps composing original
/// endpoints onto it, and build provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpcIndex {
    pub num_orig_vertices: usize,
    pub num_orig_edges: u64,
    /// Order over the reduced graph's vertices.
    pub order: VertexOrder,
    /// Per reduced vertex, hub-sorted label entries.
    pub labels: Vec<Vec<LabelEntry>>,
    pub reduction: Reduction,
    pub meta: IndexMeta,
}

impl SpcIndex {
    pub fn entries(&self, v: u32) -> &[LabelEntry] {
        &self.labels[v as usize]
    }

    /// Total number of label entries.
    pub fn num_entries(&self) -> u64 {
        self.labels.iter().map(|l| l.len() as u64).sum()
    }

    /// Weight of the hub sitting at rank `pos`.
    pub fn hub_weight(&self, pos: u32) -> u64 {
        self.reduction.weight(self.order.vertex_at[pos as usize])
    }

    /// Structural sanity check: label lists hub-sorted, hubs rank at or above
    /// their owner, self entries present.
    pub fn validate(&self) -> Result<()> {
        if self.labels.len() != self.order.len() || self.order.len() != self.reduction.num_reduced()
        {
            return Err(Error::Corrupt("label/order/reduction size mismatch".into()));
        }
        for (v, entries) in self.labels.iter().enumerate() {
            let own = self.order.rank_of[v];
            let mut saw_self = false;
            for (k, e) in entries.iter().enumerate() {
                if k > 0 && entries[k - 1].hub_pos >= e.hub_pos {
                    return Err(Error::Corrupt(format!("labels of {v} not hub-sorted")));
                }
                if e.hub_pos > own {
                    return Err(Error::Corrupt(format!(
                        "hub below owner: vertex {v} rank {own} hub_pos {}",
                        e.hub_pos
                    )));
                }
                if e.count == 0 {
                    return Err(Error::Corrupt(format!("zero count on vertex {v}")));
                }
                let is_self = e.hub_pos == own;
                if is_self != (e.dist == 0) || (is_self && e.count != 1) {
                    return Err(Error::Corrupt(format!("bad self entry on vertex {v}")));
                }
                saw_self |= is_self;
            }
            if !saw_self {
                return Err(Error::Corrupt(format!("missing self entry on vertex {v}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(hub_pos: u32, dist: u32, count: u64) -> LabelEntry {
        LabelEntry { hub_pos, dist, count }
    }

    #[test]
    fn merging_sums_counts() {
        let out = eliminate_and_merge(vec![e(4, 3, 2), e(4, 3, 5)]).unwrap();
        assert_eq!(out, vec![e(4, 3, 7)]);
    }

    #[test]
    fn elimination_keeps_minimal_distance() {
        let out = eliminate_and_merge(vec![e(4, 2, 1), e(4, 3, 9)]).unwrap();
        assert_eq!(out, vec![e(4, 2, 1)]);
    }

    #[test]
    fn empty_input_stays_empty() {
        assert!(eliminate_and_merge(vec![]).unwrap().is_empty());
    }

    #[test]
    fn merge_overflow_is_an_error() {
        let r = eliminate_and_merge(vec![e(1, 1, u64::MAX), e(1, 1, 1)]);
        assert!(matches!(r, Err(Error::CountOverflow { .. })));
    }

    #[test]
    fn join_reproduces_the_published_pair() {
        // L(v10) and L(v7) from the fixture table share hubs at ranks 0 and 1,
        // both summing to distance 3, counts 1*2 + 2*1 = 4.
        let v10 = vec![e(0, 1, 1), e(1, 3, 2), e(2, 2, 1), e(3, 0, 1)];
        let v7 = vec![e(0, 2, 2), e(1, 0, 1)];
        assert_eq!(join_min_dist(&v10, &v7), Some(3));
        let (d, c) = partial_query(&v10, &v7, |_| 1, (9, 6)).unwrap().unwrap();
        assert_eq!((d, c), (3, 4));
    }

    #[test]
    fn join_self_pair_is_zero_one() {
        let own = vec![e(5, 0, 1)];
        assert_eq!(partial_query(&own, &own, |_| 1, (5, 5)).unwrap(), Some((0, 1)));
    }

    #[test]
    fn join_disjoint_hubs_is_none() {
        let a = vec![e(0, 1, 1)];
        let b = vec![e(1, 1, 1)];
        assert_eq!(partial_query(&a, &b, |_| 1, (0, 1)).unwrap(), None);
        assert_eq!(join_min_dist(&a, &b), None);
    }

    #[test]
    fn non_minimal_terms_cannot_overflow_a_query() {
        // Huge counts at distance 9 are ignored once the distance-3 pair wins.
        let a = vec![e(0, 1, 1), e(1, 4, u64::MAX)];
        let b = vec![e(0, 2, 3), e(1, 5, u64::MAX)];
        assert_eq!(partial_query(&a, &b, |_| 1, (0, 0)).unwrap(), Some((3, 3)));
    }

    fn naive_dedup(cands: &[LabelEntry]) -> Vec<LabelEntry> {
        let mut hubs: Vec<u32> = cands.iter().map(|c| c.hub_pos).collect();
        hubs.sort_unstable();
        hubs.dedup();
        hubs.into_iter()
            .map(|h| {
                let dmin = cands
                    .iter()
                    .filter(|c| c.hub_pos == h)
                    .map(|c| c.dist)
                    .min()
                    .unwrap();
                let count = cands
                    .iter()
                    .filter(|c| c.hub_pos == h && c.dist == dmin)
                    .map(|c| c.count)
                    .sum();
                e(h, dmin, count)
            })
            .collect()
    }

    proptest! {
        #[test]
        fn dedup_matches_quadratic_reference_and_is_permutation_invariant(
            cands in proptest::collection::vec((0u32..8, 0u32..5, 1u64..100), 0..24),
            rot in 0usize..24,
        ) {
            let cands: Vec<LabelEntry> =
                cands.into_iter().map(|(h, d, c)| e(h, d, c)).collect();
            let merged = eliminate_and_merge(cands.clone()).unwrap();
            prop_assert_eq!(&merged, &naive_dedup(&cands));
            let mut rotated = cands;
            if !rotated.is_empty() {
                let rot = rot % rotated.len();
                rotated.rotate_left(rot);
            }
            prop_assert_eq!(eliminate_and_merge(rotated).unwrap(), merged);
        }
    }
}
