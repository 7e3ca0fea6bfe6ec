//! Shared unit-test fixture: the 10-vertex example graph, its published
//! ranking, and the full expected label table.

use crate::graph::{Graph, VertexId};
use crate::label::LabelEntry;
use crate::order::VertexOrder;

pub const V1: VertexId = 0;
pub const V2: VertexId = 1;
pub const V3: VertexId = 2;
pub const V4: VertexId = 3;
pub const V5: VertexId = 4;
pub const V6: VertexId = 5;
pub const V7: VertexId = 6;
pub const V8: VertexId = 7;
pub const V9: VertexId = 8;
pub const V10: VertexId = 9;

pub fn fig2_edges() -> Vec<(VertexId, VertexId)> {
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

/// Ranking v1, v7, v4, v10, v3, v5, v6, v2, v8, v9 (position 0 first).
pub fn caption_order() -> VertexOrder {
    VertexOrder::from_vertex_at(vec![V1, V7, V4, V10, V3, V5, V6, V2, V8, V9]).unwrap()
}

/// Expected labels per vertex under the caption order, as
/// `(hub vertex, dist, count)` triples in hub-rank order. 35 entries total.
pub fn expected_labels() -> Vec<Vec<(VertexId, u32, u64)>> {
    vec![
        /* v1 */ vec![(V1, 0, 1)],
        /* v2 */ vec![(V1, 2, 2), (V7, 2, 1), (V4, 1, 1), (V10, 1, 1), (V2, 0, 1)],
        /* v3 */ vec![(V1, 1, 1), (V7, 2, 1), (V3, 0, 1)],
        /* v4 */ vec![(V1, 1, 1), (V7, 1, 1), (V4, 0, 1)],
        /* v5 */ vec![(V1, 1, 1), (V7, 1, 1), (V5, 0, 1)],
        /* v6 */ vec![(V1, 2, 1), (V7, 1, 1), (V3, 1, 1), (V6, 0, 1)],
        /* v7 */ vec![(V1, 2, 2), (V7, 0, 1)],
        /* v8 */ vec![(V1, 3, 3), (V7, 1, 1), (V10, 2, 1), (V8, 0, 1)],
        /* v9 */ vec![
            (V1, 2, 1),
            (V7, 2, 1),
            (V4, 3, 1),
            (V10, 1, 1),
            (V8, 1, 1),
            (V9, 0, 1),
        ],
        /* v10 */ vec![(V1, 1, 1), (V7, 3, 2), (V4, 2, 1), (V10, 0, 1)],
    ]
}

/// Layered blow-up graph whose shortest-path counts exceed u64: a source
/// fans out to `layers` fully-bipartite-connected layers of width 2 and back
/// into a sink, so counts double per layer and hit 2^64 during any build.
/// The highest-degree tie-break makes the first layer-1 vertex rank 0, and
/// every path from it is a trough path.
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

/// The expected table converted to rank-based label entries, sorted by hub
/// position per vertex.
pub fn expected_label_entries() -> Vec<Vec<LabelEntry>> {
    let order = caption_order();
    expected_labels()
        .into_iter()
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
