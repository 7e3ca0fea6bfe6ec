//! Shared fixtures for the integration suites: the 10-vertex example graph
//! with its published ranking and label table, an overflow gadget, and the
//! random-graph corpus generators.

#![allow(dead_code)]

use espc::{Graph, LabelEntry, VertexOrder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const V1: u32 = 0;
pub const V2: u32 = 1;
pub const V3: u32 = 2;
pub const V4: u32 = 3;
pub const V5: u32 = 4;
pub const V6: u32 = 5;
pub const V7: u32 = 6;
pub const V8: u32 = 7;
pub const V9: u32 = 8;
pub const V10: u32 = 9;

pub fn fig2_edges() -> Vec<(u32, u32)> {
    vec![
        (V1, V3),
        (V1, V4),
        (V1, V5),
        (V1, V10),
        (V7, V4),
        (V7, V5),
        (V7, V6),
        (V7, V8),
        (V3, V6),
        (V2, V4),
        (V2, V10),
        (V9, V8),
        (V9, V10),
    ]
}

pub fn fig2_graph() -> Graph {
    Graph::from_edges(10, fig2_edges())
}

pub fn fig2_edge_list_text() -> String {
    let mut s = String::from("# 10 vertices, 13 edges\n");
    for (a, b) in fig2_edges() {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}

pub fn caption_order() -> VertexOrder {
    VertexOrder::from_vertex_at(vec![V1, V7, V4, V10, V3, V5, V6, V2, V8, V9]).unwrap()
}

/// The full expected label table under the caption order: 35 entries.
pub fn expected_labels() -> Vec<Vec<LabelEntry>> {
    let order = caption_order();
    let raw: Vec<Vec<(u32, u32, u64)>> = vec![
        vec![(V1, 0, 1)],
        vec![(V1, 2, 2), (V7, 2, 1), (V4, 1, 1), (V10, 1, 1), (V2, 0, 1)],
        vec![(V1, 1, 1), (V7, 2, 1), (V3, 0, 1)],
        vec![(V1, 1, 1), (V7, 1, 1), (V4, 0, 1)],
        vec![(V1, 1, 1), (V7, 1, 1), (V5, 0, 1)],
        vec![(V1, 2, 1), (V7, 1, 1), (V3, 1, 1), (V6, 0, 1)],
        vec![(V1, 2, 2), (V7, 0, 1)],
        vec![(V1, 3, 3), (V7, 1, 1), (V10, 2, 1), (V8, 0, 1)],
        vec![
            (V1, 2, 1),
            (V7, 2, 1),
            (V4, 3, 1),
            (V10, 1, 1),
            (V8, 1, 1),
            (V9, 0, 1),
        ],
        vec![(V1, 1, 1), (V7, 3, 2), (V4, 2, 1), (V10, 0, 1)],
    ];
    raw.into_iter()
        .map(|row| {
            let mut entries: Vec<LabelEntry> = row
                .into_iter()
                .map(|(hub, dist, count)| LabelEntry {
                    hub_pos: order.rank_of[hub as usize],
                    dist,
                    count,
                })
                .collect();
            entries.sort_by_key(|e| e.hub_pos);
            entries
        })
        .collect()
}

/// Layered blow-up whose shortest-path counts reach 2^64 during any build.
pub fn overflow_gadget() -> Graph {
    let width = 2u32;
    let layers = 67u32;
    let vertex = |layer: u32, k: u32| 1 + layer * width + k;
    let mut edges = Vec::new();
    for k in 0..width {
        edges.push((0, vertex(0, k)));
    }
    for layer in 0..layers - 1 {
        for a in 0..width {
            for b in 0..width {
                edges.push((vertex(layer, a), vertex(layer + 1, b)));
            }
        }
    }
    let sink = 1 + layers * width;
    for k in 0..width {
        edges.push((vertex(layers - 1, k), sink));
    }
    Graph::from_edges(sink as usize + 1, edges)
}

/// The random corpus entry for index `i`: sizes 8..=64, densities cycling
/// through four regimes.
pub fn corpus_graph(base_seed: u64, i: u64) -> Graph {
    let n = 8 + (i as usize % 57);
    let factor = [0.6, 1.2, 2.0, 3.0][i as usize % 4];
    Graph::generate_random(n, factor, base_seed + i)
}

/// A random graph with forced twin classes: three base vertices each gain a
/// pair of fresh copies of their neighborhood. A pair is left mutually
/// non-adjacent (open twins) or wired together (closed twins); copies never
/// touch other copies, so the classes survive verbatim.
pub fn twin_rich_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_n = 12usize;
    let base = Graph::generate_random(base_n, 1.5, seed ^ 0x5eed);
    let pairs = 3usize;
    let n = base_n + 2 * pairs;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for v in 0..base_n as u32 {
        for &u in base.neighbors(v) {
            if v < u {
                edges.push((v, u));
            }
        }
    }
    for p in 0..pairs {
        let c1 = (base_n + 2 * p) as u32;
        let c2 = c1 + 1;
        let of = rng.random_range(0..base_n as u32);
        for &u in base.neighbors(of) {
            edges.push((c1, u));
            edges.push((c2, u));
        }
        if rng.random_bool(0.5) {
            edges.push((c1, c2)); // closed (adjacent) twins
        }
    }
    Graph::from_edges(n, edges)
}

/// A random core with pendant trees, a pure tree component, and an isolated
/// vertex, exercising every fringe case of the 1-shell reduction.
pub fn tree_rich_graph(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core_n = 10usize;
    let core = Graph::generate_random(core_n, 2.0, seed ^ 0x7ee);
    let tree_vertices = 14usize;
    let pure_tree = 5usize;
    let n = core_n + tree_vertices + pure_tree + 1;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for v in 0..core_n as u32 {
        for &u in core.neighbors(v) {
            if v < u {
                edges.push((v, u));
            }
        }
    }
    // Pendant trees: each new vertex hangs off any earlier vertex.
    for k in 0..tree_vertices {
        let v = (core_n + k) as u32;
        let host = rng.random_range(0..v);
        edges.push((v, host));
    }
    // A tree-only component (path), plus one isolated vertex at the end.
    let tree0 = (core_n + tree_vertices) as u32;
    for k in 0..pure_tree as u32 - 1 {
        edges.push((tree0 + k, tree0 + k + 1));
    }
    Graph::from_edges(n, edges)
}
