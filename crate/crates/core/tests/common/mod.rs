//! Shared helpers for the integration suites: seeded random graphs and
//! random proper colorings.

use broomlab_core::coloring::ColoredGraph;
use broomlab_core::graph::Graph;
use broomlab_core::SplitMix64;

pub fn random_graph(rng: &mut SplitMix64, n: usize, keep_of_3: u64) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.below(3) < keep_of_3 {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &pairs).unwrap()
}

/// Colors edges in random order with a random admissible color. The
/// palette has `2*max_degree - 1 + extra` colors, enough that greedy
/// assignment never blocks regardless of order.
pub fn random_proper_coloring(rng: &mut SplitMix64, g: &Graph, extra: u32) -> ColoredGraph {
    let m = g.edge_count();
    let cap = 2 * g.max_degree().max(1) as u32 - 1 + extra;
    let mut order: Vec<usize> = (0..m).collect();
    for i in (1..m).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    let mut colors = vec![0u32; m];
    for &e in &order {
        let (u, v) = g.edge_at(e);
        let admissible: Vec<u32> = (1..=cap)
            .filter(|&c| {
                g.edges().iter().enumerate().all(|(f, &(a, b))| {
                    colors[f] != c || (a != u && b != u && a != v && b != v)
                })
            })
            .collect();
        assert!(!admissible.is_empty(), "palette too small");
        colors[e] = admissible[rng.below(admissible.len() as u64) as usize];
    }
    ColoredGraph::new(g.clone(), colors)
        .unwrap()
        .canonicalize_colors()
}
