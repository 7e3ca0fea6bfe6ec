//! Distance-round label construction.
//!
//! Instead of sweeping vertices in rank order, labels are built in rounds
//! d = 1, 2, ...: round d creates every entry of hop distance exactly d by
//! propagating the previous round's entries across edges (pull gathers from
//! neighbors, push scatters to them). Pruning decisions read only the
//! immutable snapshot of rounds <= d-1 plus a hub-presence check, so a round
//! is embarrassingly parallel and the output is identical for any worker
//! count, either propagation mode, and either schedule. The result is
//! label-for-label equal to [`build_sequential`](crate::label::seq::build_sequential).

use std::ops::Range;
#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::label::{eliminate_and_merge, join_min_dist, LabelEntry};
use crate::order::VertexOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationMode {
    #[default]
    Pull,
    Push,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheduler {
    /// Contiguous rank ranges of size floor(n / workers); the last worker
    /// takes the remainder.
    #[default]
    Static,
    /// Fixed-size vertex blocks ordered by descending estimated cost and
    /// claimed atomically by idle workers.
    DynamicCost,
}

pub const DEFAULT_LANDMARKS: usize = 100;

#[derive(Debug, Clone)]
pub struct BuildConfig {
    pub mode: PropagationMode,
    pub workers: usize,
    pub landmark_count: usize,
    pub scheduler: Scheduler,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            mode: PropagationMode::Pull,
            workers: 1,
            landmark_count: DEFAULT_LANDMARKS,
            scheduler: Scheduler::Static,
        }
    }
}

/// State between rounds. `settled` holds every entry of distance <= d-1
/// (hub-sorted per vertex) and never mutates during a round; `fresh` is the
/// distance d-1 subset that still propagates.
#[derive(Debug, Clone)]
pub struct RoundState {
    pub d: u32,
    pub settled: Vec<Vec<LabelEntry>>,
    pub fresh: Vec<Vec<LabelEntry>>,
}

impl RoundState {
    /// Round-0 state: every vertex owns exactly its self entry.
    pub fn initial(order: &VertexOrder) -> RoundState {
        let self_entries: Vec<Vec<LabelEntry>> = (0..order.len())
            .map(|v| {
                vec![LabelEntry {
                    hub_pos: order.rank_of[v],
                    dist: 0,
                    count: 1,
                }]
            })
            .collect();
        RoundState {
            d: 1,
            settled: self_entries.clone(),
            fresh: self_entries,
        }
    }

    /// Absorbs the labels created at distance `d` and moves to round d+1.
    pub fn advance(&mut self, new_labels: Vec<Vec<LabelEntry>>) {
        for (settled, new) in self.settled.iter_mut().zip(new_labels.iter()) {
            if new.is_empty() {
                continue;
            }
            let mut merged = Vec::with_capacity(settled.len() + new.len());
            let (mut i, mut j) = (0, 0);
            while i < settled.len() && j < new.len() {
                if settled[i].hub_pos < new[j].hub_pos {
                    merged.push(settled[i]);
                    i += 1;
                } else {
                    debug_assert_ne!(settled[i].hub_pos, new[j].hub_pos);
                    merged.push(new[j]);
                    j += 1;
                }
            }
            merged.extend_from_slice(&settled[i..]);
            merged.extend_from_slice(&new[j..]);
            *settled = merged;
        }
        self.fresh = new_labels;
        self.d += 1;
    }
}

// ---------------------------------------------------------------------------
// Landmark filter

/// One-bit settled matrix for high-degree vertices. `settled[l][v]` is true
/// at the start of round d exactly when dist(l, v) <= d-1, which is precisely
/// the pruning condition for a candidate hub l at a target v, so a lookup
/// replaces the snapshot query whenever the hub is a landmark.
#[derive(Debug)]
pub struct LandmarkFilter {
    landmarks: Vec<VertexId>,
    landmark_of: Vec<u32>,
    theta: u32,
    settled: Vec<BitRow>,
    frontier: Vec<Vec<VertexId>>,
    covered: u32,
}

#[derive(Debug, Clone)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> BitRow {
        BitRow(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }
}

/// Picks the `k` highest-degree vertices (ties toward smaller ids) as
/// landmarks; `k` is clamped to the vertex count.
pub fn select_landmarks(g: &Graph, k: usize) -> LandmarkFilter {
    let n = g.num_vertices();
    let k = k.min(n);
    let mut by_degree: Vec<VertexId> = (0..n as VertexId).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.neighbors(v).len()), v));
    by_degree.truncate(k);
    let theta = by_degree.last().map_or(0, |&v| g.neighbors(v).len() as u32);
    let mut landmark_of = vec![u32::MAX; n];
    let mut settled = Vec::with_capacity(k);
    let mut frontier = Vec::with_capacity(k);
    for (idx, &l) in by_degree.iter().enumerate() {
        landmark_of[l as usize] = idx as u32;
        let mut row = BitRow::new(n);
        row.set(l as usize);
        settled.push(row);
        frontier.push(vec![l]);
    }
    LandmarkFilter {
        landmarks: by_degree,
        landmark_of,
        theta,
        settled,
        frontier,
        covered: 0,
    }
}

impl LandmarkFilter {
    pub fn landmarks(&self) -> &[VertexId] {
        &self.landmarks
    }

    /// Degree threshold realized by the selection (degree of the k-th pick).
    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// `Some(bit)` when `hub` is a landmark: bit == (dist(hub, v) <= covered).
    #[inline]
    fn check(&self, hub: VertexId, v: VertexId) -> Option<bool> {
        let idx = self.landmark_of[hub as usize];
        if idx == u32::MAX {
            None
        } else {
            Some(self.settled[idx as usize].get(v as usize))
        }
    }

    /// Expands every landmark's BFS frontier by one hop; afterwards
    /// `settled[l][v] == (dist(l, v) <= d)`. Called once per round.
    pub fn advance(&mut self, g: &Graph, d: u32) {
        assert_eq!(d, self.covered + 1, "landmark filter advanced out of order");
        let step = |(row, frontier): (&mut BitRow, &mut Vec<VertexId>)| {
            let mut next = Vec::new();
            for &v in frontier.iter() {
                for &u in g.neighbors(v) {
                    if !row.get(u as usize) {
                        row.set(u as usize);
                        next.push(u);
                    }
                }
            }
            *frontier = next;
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            self.settled
                .par_iter_mut()
                .zip(self.frontier.par_iter_mut())
                .for_each(step);
        }
        #[cfg(not(feature = "parallel"))]
        self.settled.iter_mut().zip(self.frontier.iter_mut()).for_each(step);
        self.covered = d;
    }
}

// ---------------------------------------------------------------------------
// Scheduling

const DYNAMIC_BLOCK: usize = 64;

/// A concrete work-assignment for one round.
#[derive(Debug)]
pub enum SchedulePlan {
    Static { chunks: Vec<Range<usize>> },
    Dynamic { blocks: Vec<Vec<VertexId>> },
}

/// Estimated candidate volume of vertex `u` this round: the total fresh-label
/// count over its neighbors, without the rank filter the exact cost would
/// apply.
pub fn cost_estimate(g: &Graph, state: &RoundState, u: VertexId) -> u64 {
    g.neighbors(u)
        .iter()
        .map(|&v| state.fresh[v as usize].len() as u64)
        .sum()
}

/// Builds the round's work assignment. Static chunks cover rank positions;
/// the dynamic plan orders fixed-size vertex blocks by descending
/// [`cost_estimate`]. Both assignments must produce identical labels.
pub fn schedule(
    order: &VertexOrder,
    cfg: &BuildConfig,
    g: &Graph,
    state: &RoundState,
) -> SchedulePlan {
    let n = order.len();
    match cfg.scheduler {
        Scheduler::Static => {
            let t = cfg.workers.max(1);
            let size = n / t;
            let chunks = (0..t)
                .map(|i| {
                    let lo = i * size;
                    let hi = if i + 1 == t { n } else { lo + size };
                    lo..hi
                })
                .collect();
            SchedulePlan::Static { chunks }
        }
        Scheduler::DynamicCost => {
            let mut vertices: Vec<VertexId> = (0..n as VertexId).collect();
            let costs: Vec<u64> = vertices.iter().map(|&u| cost_estimate(g, state, u)).collect();
            vertices.sort_by_key(|&u| (std::cmp::Reverse(costs[u as usize]), u));
            let blocks = vertices.chunks(DYNAMIC_BLOCK).map(<[VertexId]>::to_vec).collect();
            SchedulePlan::Dynamic { blocks }
        }
    }
}

// ---------------------------------------------------------------------------
// Executor

enum Executor {
    Sequential,
    #[cfg(feature = "parallel")]
    Pool(rayon::ThreadPool),
}

impl Executor {
    fn new(workers: usize) -> Result<Executor> {
        assert!(workers >= 1, "workers must be at least 1");
        #[cfg(feature = "parallel")]
        if workers > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::ThreadPool(e.to_string()))?;
            return Ok(Executor::Pool(pool));
        }
        let _ = workers;
        Ok(Executor::Sequential)
    }

    /// Runs `f` inside the worker pool so that nested data-parallel calls
    /// stay within the configured worker count.
    fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self {
            Executor::Sequential => f(),
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => pool.install(f),
        }
    }

    /// Runs `work` once for every vertex covered by the plan. Static chunks
    /// map one-to-one onto workers; dynamic blocks are claimed through an
    /// atomic cursor by whichever worker goes idle first.
    fn run(&self, plan: &SchedulePlan, order: &VertexOrder, work: impl Fn(VertexId) + Sync) {
        match self {
            Executor::Sequential => match plan {
                SchedulePlan::Static { chunks } => {
                    for chunk in chunks {
                        for pos in chunk.clone() {
                            work(order.vertex_at[pos]);
                        }
                    }
                }
                SchedulePlan::Dynamic { blocks } => {
                    for block in blocks {
                        for &v in block {
                            work(v);
                        }
                    }
                }
            },
            #[cfg(feature = "parallel")]
            Executor::Pool(pool) => match plan {
                SchedulePlan::Static { chunks } => {
                    pool.broadcast(|ctx| {
                        let chunk = &chunks[ctx.index()];
                        for pos in chunk.clone() {
                            work(order.vertex_at[pos]);
                        }
                    });
                }
                SchedulePlan::Dynamic { blocks } => {
                    let cursor = AtomicUsize::new(0);
                    pool.broadcast(|_| loop {
                        let b = cursor.fetch_add(1, Ordering::Relaxed);
                        let Some(block) = blocks.get(b) else { break };
                        for &v in block {
                            work(v);
                        }
                    });
                }
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Rounds

/// Shared tail of both propagation modes: dedup the candidate multiset for
/// `u`, then drop candidates that (a) do not outrank `u`, (b) already hub a
/// settled entry, or (c) are reachable in fewer than `d` hops per the
/// landmark bit or the snapshot query.
fn finish_candidates(
    u: VertexId,
    cands: Vec<LabelEntry>,
    state: &RoundState,
    order: &VertexOrder,
    filter: &LandmarkFilter,
) -> Result<Vec<LabelEntry>> {
    let merged = eliminate_and_merge(cands).map_err(|e| match e {
        // The generic dedup names the hub's rank; substitute real vertices.
        Error::CountOverflow { u: hub_pos, .. } => Error::CountOverflow {
            u: order.vertex_at[hub_pos as usize],
            v: u,
        },
        other => other,
    })?;
    let settled_u = &state.settled[u as usize];
    let mut out = Vec::new();
    for cand in merged {
        debug_assert!(cand.hub_pos < order.rank_of[u as usize]);
        if settled_u.binary_search_by_key(&cand.hub_pos, |e| e.hub_pos).is_ok() {
            continue; // a shorter entry for this hub exists
        }
        let hub = order.vertex_at[cand.hub_pos as usize];
        let prune = match filter.check(hub, u) {
            Some(bit) => bit,
            None => join_min_dist(&state.settled[hub as usize], settled_u)
                .is_some_and(|d0| d0 < state.d),
        };
        if !prune {
            out.push(cand);
        }
    }
    Ok(out)
}

/// Count carried into round d when an entry of vertex `v` extends through
/// `v`: fresh entries of round 1 are self entries (the hub itself), which
/// stay unweighted; any later `v` is an internal vertex of the new path.
#[inline]
fn step_weight(weights: Option<&[u64]>, v: VertexId, d: u32) -> u64 {
    if d == 1 {
        1
    } else {
        weights.map_or(1, |w| w[v as usize])
    }
}

/// One pull round: every vertex gathers its neighbors' fresh entries as
/// distance-d candidates and keeps the survivors of [`finish_candidates`].
pub fn pull_round(
    state: &RoundState,
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    filter: &LandmarkFilter,
    cfg: &BuildConfig,
) -> Result<Vec<Vec<LabelEntry>>> {
    pull_round_in(&Executor::new(cfg.workers)?, state, g, weights, order, filter, cfg)
}

fn pull_round_in(
    exec: &Executor,
    state: &RoundState,
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    filter: &LandmarkFilter,
    cfg: &BuildConfig,
) -> Result<Vec<Vec<LabelEntry>>> {
    let plan = schedule(order, cfg, g, state);
    run_targets(state, g, order, filter, exec, &plan, |u| {
        let rank_u = order.rank_of[u as usize];
        let mut cands = Vec::new();
        for &v in g.neighbors(u) {
            let fresh = &state.fresh[v as usize];
            if fresh.is_empty() {
                continue;
            }
            let step = step_weight(weights, v, state.d);
            for e in fresh {
                debug_assert_eq!(e.dist, state.d - 1);
                if e.hub_pos >= rank_u {
                    continue; // hub must strictly outrank the target
                }
                let count = e.count.checked_mul(step).ok_or(Error::CountOverflow {
                    u: order.vertex_at[e.hub_pos as usize],
                    v: u,
                })?;
                cands.push(LabelEntry {
                    hub_pos: e.hub_pos,
                    dist: state.d,
                    count,
                });
            }
        }
        Ok(cands)
    })
}

/// One push round. Phase 1 scatters fresh entries into per-target buffers
/// (exclusive append under a per-buffer lock, no count arithmetic); phase 2
/// runs the same dedup/prune/insert pipeline as [`pull_round`], so both modes
/// produce identical rounds.
pub fn push_round(
    state: &RoundState,
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    filter: &LandmarkFilter,
    cfg: &BuildConfig,
) -> Result<Vec<Vec<LabelEntry>>> {
    push_round_in(&Executor::new(cfg.workers)?, state, g, weights, order, filter, cfg)
}

fn push_round_in(
    exec: &Executor,
    state: &RoundState,
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    filter: &LandmarkFilter,
    cfg: &BuildConfig,
) -> Result<Vec<Vec<LabelEntry>>> {
    let n = g.num_vertices();
    let plan = schedule(order, cfg, g, state);

    let buffers: Vec<Mutex<Vec<LabelEntry>>> = (0..n).map(|_| Mutex::new(Vec::new())).collect();
    let phase1: Vec<OnceLock<Result<()>>> = (0..n).map(|_| OnceLock::new()).collect();
    exec.run(&plan, order, |v| {
        let result = (|| {
            let fresh = &state.fresh[v as usize];
            if fresh.is_empty() {
                return Ok(());
            }
            let step = step_weight(weights, v, state.d);
            let mut staged = Vec::with_capacity(fresh.len());
            for &u in g.neighbors(v) {
                let rank_u = order.rank_of[u as usize];
                staged.clear();
                for e in fresh {
                    if e.hub_pos >= rank_u {
                        continue;
                    }
                    let count = e.count.checked_mul(step).ok_or(Error::CountOverflow {
                        u: order.vertex_at[e.hub_pos as usize],
                        v: u,
                    })?;
                    staged.push(LabelEntry {
                        hub_pos: e.hub_pos,
                        dist: state.d,
                        count,
                    });
                }
                if !staged.is_empty() {
                    buffers[u as usize].lock().unwrap().extend_from_slice(&staged);
                }
            }
            Ok(())
        })();
        phase1[v as usize].set(result).expect("source pushed twice");
    });
    for slot in phase1 {
        slot.into_inner().expect("schedule missed a source")?;
    }

    run_targets(state, g, order, filter, exec, &plan, |u| {
        Ok(std::mem::take(&mut *buffers[u as usize].lock().unwrap()))
    })
}

/// Runs the target side of a round under the executor: `gather` produces the
/// raw candidate multiset of a vertex, `finish_candidates` filters it, and
/// the per-vertex results are collected in vertex order (first error wins
/// deterministically).
fn run_targets(
    state: &RoundState,
    g: &Graph,
    order: &VertexOrder,
    filter: &LandmarkFilter,
    exec: &Executor,
    plan: &SchedulePlan,
    gather: impl Fn(VertexId) -> Result<Vec<LabelEntry>> + Sync,
) -> Result<Vec<Vec<LabelEntry>>> {
    let n = g.num_vertices();
    let slots: Vec<OnceLock<Result<Vec<LabelEntry>>>> = (0..n).map(|_| OnceLock::new()).collect();
    exec.run(plan, order, |u| {
        let result = gather(u).and_then(|cands| finish_candidates(u, cands, state, order, filter));
        slots[u as usize].set(result).expect("target processed twice");
    });
    let mut new_labels = Vec::with_capacity(n);
    for slot in slots {
        new_labels.push(slot.into_inner().expect("schedule missed a target")?);
    }
    Ok(new_labels)
}

/// Builds the complete label set in distance rounds. The output is
/// label-for-label identical to the sequential builder for every mode,
/// scheduler, and worker count.
pub fn build_parallel(
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    cfg: &BuildConfig,
) -> Result<Vec<Vec<LabelEntry>>> {
    build_parallel_timed(g, weights, order, cfg).map(|(labels, _)| labels)
}

/// [`build_parallel`] that also reports the seconds spent on landmark
/// labeling (selection plus the per-round frontier advances).
pub fn build_parallel_timed(
    g: &Graph,
    weights: Option<&[u64]>,
    order: &VertexOrder,
    cfg: &BuildConfig,
) -> Result<(Vec<Vec<LabelEntry>>, f64)> {
    use std::time::Instant;
    let n = g.num_vertices();
    assert_eq!(order.len(), n, "order must cover the graph");
    let exec = Executor::new(cfg.workers)?;
    let mut landmark_s = 0.0;
    let t = Instant::now();
    let mut filter = exec.install(|| select_landmarks(g, cfg.landmark_count));
    landmark_s += t.elapsed().as_secs_f64();
    let mut state = RoundState::initial(order);
    if n == 0 {
        return Ok((Vec::new(), landmark_s));
    }
    loop {
        let new_labels = match cfg.mode {
            PropagationMode::Pull => {
                pull_round_in(&exec, &state, g, weights, order, &filter, cfg)?
            }
            PropagationMode::Push => {
                push_round_in(&exec, &state, g, weights, order, &filter, cfg)?
            }
        };
        if new_labels.iter().all(Vec::is_empty) {
            return Ok((state.settled, landmark_s));
        }
        let d = state.d;
        state.advance(new_labels);
        let t = Instant::now();
        exec.install(|| filter.advance(g, d));
        landmark_s += t.elapsed().as_secs_f64();
    }
}
