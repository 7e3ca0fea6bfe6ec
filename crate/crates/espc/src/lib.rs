//! Exact shortest-path distance-and-count queries over undirected, unweighted
//! graphs, answered from a 2-hop hub-label index.
//!
//! The index stores, per vertex, `(hub, distance, count)` triples under a
//! global vertex ranking; a point-to-point query merge-joins two label lists
//! over their common hubs. Two builders produce identical indexes: a
//! sequential pruned-BFS sweep in rank order ([`label::seq`]) and a
//! distance-round propagation scheme that parallelizes over vertices within a
//! round ([`label::parallel`]). Optional graph reductions (1-shell peeling
//! and twin collapsing, [`reduce`]) shrink the indexed graph while queries on
//! the original graph stay exact.
//!
//! ```
//! use espc::{build, BuildOptions, spc_query};
//!
//! let g = espc::Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]);
//! let idx = build(&g, &BuildOptions::default()).unwrap();
//! let r = spc_query(&idx, 0, 2).unwrap();
//! assert_eq!((r.dist, r.count), (Some(2), 2));
//! ```

pub mod error;
pub mod graph;
pub mod io;
pub mod label;
pub mod oracle;
pub mod order;
pub mod query;
pub mod reduce;

#[cfg(test)]
pub(crate) mod testfix;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use label::parallel::{BuildConfig, PropagationMode, Scheduler};
pub use label::{IndexMeta, LabelEntry, SpcIndex};
pub use order::VertexOrder;
pub use query::{batch_query, spc_query, QueryResult};
pub use reduce::ReduceSetting;

/// Which vertex ordering heuristic to run on the (reduced) graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderKind {
    #[default]
    Degree,
    Elimination,
    /// Degree order above the `delta` threshold, elimination order below.
    Hybrid,
}

/// Which builder constructs the labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuilderKind {
    /// Sequential pruned BFS in rank order.
    Seq,
    /// Distance-round propagation.
    #[default]
    Pspc,
}

pub const DEFAULT_DELTA: u32 = 5;

/// End-to-end build configuration: reduction, ordering, and builder.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub reduce: ReduceSetting,
    pub order: OrderKind,
    pub delta: u32,
    pub builder: BuilderKind,
    pub parallel: BuildConfig,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            reduce: ReduceSetting::None,
            order: OrderKind::Degree,
            delta: DEFAULT_DELTA,
            builder: BuilderKind::Pspc,
            parallel: BuildConfig::default(),
        }
    }
}

impl BuildOptions {
    fn echo(&self) -> String {
        format!(
            "reduce={:?} order={:?} delta={} builder={:?} mode={:?} workers={} landmarks={} scheduler={:?}",
            self.reduce,
            self.order,
            self.delta,
            self.builder,
            self.parallel.mode,
            self.parallel.workers,
            self.parallel.landmark_count,
            self.parallel.scheduler,
        )
    }
}

/// Computes the configured vertex order of a graph.
pub fn make_order(g: &Graph, kind: OrderKind, delta: u32) -> VertexOrder {
    match kind {
        OrderKind::Degree => order::degree_order(g),
        OrderKind::Elimination => order::elimination_order(g),
        OrderKind::Hybrid => order::hybrid_order(g, delta),
    }
}

/// Wall-clock phase breakdown of a build.
#[derive(Debug, Clone, Copy, Default)]
pub struct BuildTimings {
    pub reduce_s: f64,
    pub order_s: f64,
    pub landmark_s: f64,
    pub label_s: f64,
    pub total_s: f64,
}

/// Runs the full pipeline: reduce, order, build labels, assemble the index.
pub fn build(g: &Graph, opts: &BuildOptions) -> Result<SpcIndex> {
    build_timed(g, opts).map(|(idx, _)| idx)
}

/// [`build`] with a per-phase timing breakdown (reduction, ordering, landmark
/// labeling, label construction).
pub fn build_timed(g: &Graph, opts: &BuildOptions) -> Result<(SpcIndex, BuildTimings)> {
    use std::time::Instant;
    let t0 = Instant::now();
    let reduced = reduce::reduce(g, opts.reduce);
    let t1 = Instant::now();
    let order = make_order(&reduced.graph, opts.order, opts.delta);
    let t2 = Instant::now();
    let weights = reduced.maps.has_weights().then_some(reduced.weights.as_slice());
    let (labels, landmark_s) = match opts.builder {
        BuilderKind::Seq => (label::seq::build_sequential(&reduced.graph, weights, &order)?, 0.0),
        BuilderKind::Pspc => {
            label::parallel::build_parallel_timed(&reduced.graph, weights, &order, &opts.parallel)?
        }
    };
    let t3 = Instant::now();
    let idx = SpcIndex {
        num_orig_vertices: g.num_vertices(),
        num_orig_edges: g.num_edges(),
        order,
        labels,
        reduction: reduced.maps,
        meta: IndexMeta {
            builder: match opts.builder {
                BuilderKind::Seq => "seq".into(),
                BuilderKind::Pspc => "pspc".into(),
            },
            config: opts.echo(),
        },
    };
    let timings = BuildTimings {
        reduce_s: (t1 - t0).as_secs_f64(),
        order_s: (t2 - t1).as_secs_f64(),
        landmark_s,
        label_s: (t3 - t2).as_secs_f64() - landmark_s,
        total_s: (t3 - t0).as_secs_f64(),
    };
    Ok((idx, timings))
}
