//! Acceptance suite: every verification criterion runs here, one PASS
//! line per criterion, with its wall-clock budget asserted. Tests take a
//! global lock so budgets are not skewed by parallel siblings.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use broomlab_core::bounds::{bounds_for, extract_dense_subgraph, Coeff, Rule};
use broomlab_core::coloring::{ColorClassView, ColoredGraph};
use broomlab_core::construct::{
    f2_bipartite_coloring, f2_clique_coloring, f3_clique_coloring, odd_clique_coloring,
};
use broomlab_core::detect::{
    classify_c4, degree_structure_report, extract_sigma, find_rainbow_broom, BroomEmbedding,
    BroomPattern, CycleClass,
};
use broomlab_core::graph::Graph;
use broomlab_core::search::{
    colorings_isomorphic, enumerate_one_factorizations, near_factorization_search,
    reduce_by_vertex_isomorphism, search, PruneRules, SearchConfig, SearchOutcome,
};
use broomlab_core::SplitMix64;

static GATE: Mutex<()> = Mutex::new(());

fn criterion<F: FnOnce()>(id: &str, budget: Duration, body: F) {
    let _gate = GATE.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    body();
    let elapsed = start.elapsed();
    println!("ACCEPT {id}: PASS ({elapsed:?} within {budget:?})");
    assert!(
        elapsed <= budget,
        "criterion {id} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

fn assert_rainbow_free(cg: &ColoredGraph, t: u32) {
    let pat = BroomPattern::new(t, 3).unwrap();
    assert_eq!(find_rainbow_broom(cg, pat).unwrap(), None, "t={t}");
}

// --- 1. Construction verification -----------------------------------------

#[test]
fn accept_1a_odd_clique_colorings() {
    for t in [3u32, 5, 7, 9] {
        criterion(&format!("1a odd-matching t={t}"), Duration::from_secs(1), || {
            let cg = odd_clique_coloring(t).unwrap();
            assert!(cg.check_proper().is_proper());
            assert_rainbow_free(&cg, t);
        });
    }
}

#[test]
fn accept_1b_f2_bipartite_colorings() {
    for s in [2u32, 3, 4] {
        let t = 1u32 << s;
        criterion(
            &format!("1b f2-bipartite s={s}"),
            Duration::from_secs(30),
            || {
                let cg = f2_bipartite_coloring(s).unwrap();
                assert!(cg.check_proper().is_proper());
                assert_rainbow_free(&cg, t);
            },
        );
    }
}

#[test]
fn accept_1c_f3_clique_coloring() {
    criterion("1c f3-clique s=2", Duration::from_secs(5), || {
        let cg = f3_clique_coloring(2).unwrap();
        assert!(cg.check_proper().is_proper());
        assert_rainbow_free(&cg, 8);
    });
}

#[test]
fn accept_1d_f2_clique_colorings() {
    // s = 2 has t = 2, below the smallest three-edge-handle broom; its
    // obligation is the structural clause only.
    for s in [2u32, 3] {
        criterion(&format!("1d f2-clique s={s}"), Duration::from_secs(5), || {
            let cg = f2_clique_coloring(s).unwrap();
            let colors = (1u32 << s) - 1;
            assert_eq!(cg.color_count() as u32, colors);
            let view = ColorClassView::new(&cg, colors);
            for c in 1..=colors {
                assert!(view.class_is_perfect_matching(&cg, c));
            }
            if s >= 3 {
                assert_rainbow_free(&cg, (1 << s) - 2);
            }
        });
    }
}

// --- 2. Impossibility reproductions ----------------------------------------

#[test]
fn accept_2a_k6_exhausts() {
    criterion("2a search(K_6, t=4) EXHAUSTED", Duration::from_secs(600), || {
        let mut config = SearchConfig::generic(Graph::clique(6).unwrap(), "clique:6", 4);
        config.palette_cap = 6;
        let cert = search(&config).unwrap();
        assert_eq!(cert.outcome, SearchOutcome::Exhausted);
        assert!(cert.stats.nodes > 0);
    });
}

#[test]
fn accept_2b_k7_exhausts() {
    criterion("2b search(K_7, t=5) EXHAUSTED", Duration::from_secs(3600), || {
        let config = SearchConfig::generic(Graph::clique(7).unwrap(), "clique:7", 5);
        let cert = search(&config).unwrap();
        assert_eq!(cert.outcome, SearchOutcome::Exhausted);
        assert!(cert.stats.nodes > 0);
    });
}

#[test]
fn accept_2c_k11_near_factorization_exhausts() {
    criterion(
        "2c near_factorization_search(K_11, t=10) EXHAUSTED",
        Duration::from_secs(3600),
        || {
            let cert = near_factorization_search(11, PruneRules::all()).unwrap();
            assert_eq!(cert.outcome, SearchOutcome::Exhausted);
            // Node counts land in the certificate for regression tracking.
            assert!(cert.stats.nodes > 0);
            assert!(cert.stats.pruned_bichromatic_p4 > 0);
            println!(
                "  k11 regression: nodes={} pruned.bichromatic-p4={}",
                cert.stats.nodes, cert.stats.pruned_bichromatic_p4
            );
        },
    );
}

// --- 3. Uniqueness at desk scale --------------------------------------------

#[test]
fn accept_3_k8_uniqueness() {
    criterion("3 K_8 factorization uniqueness", Duration::from_secs(600), || {
        let all = enumerate_one_factorizations(8).unwrap();
        let filtered: Vec<ColoredGraph> = all
            .into_iter()
            .filter(|cg| cg.satisfies_four_cycle_property())
            .collect();
        let classes = reduce_by_vertex_isomorphism(&filtered).unwrap();
        assert_eq!(classes.len(), 1, "exactly one class survives the filter");
        let reference = f2_clique_coloring(3).unwrap();
        assert!(colorings_isomorphic(&classes[0], &reference).unwrap());
    });
}

// --- 4. Property suites -------------------------------------------------------

/// The stored rainbow-free colorings whose hosts give every cycle vertex
/// at least t - 2 off-cycle neighbors.
fn qualifying_stored_colorings() -> Vec<(ColoredGraph, u32)> {
    let mut out = vec![
        (f2_clique_coloring(3).unwrap(), 6),
        (f2_bipartite_coloring(2).unwrap(), 4),
        (f2_bipartite_coloring(3).unwrap(), 8),
    ];
    let mut config = SearchConfig::generic(Graph::clique(8).unwrap(), "clique:8", 6);
    config.palette_cap = 8;
    if let SearchOutcome::Witness(w) = search(&config).unwrap().outcome {
        out.push((w, 6));
    }
    out
}

#[test]
fn accept_4a_cycle_scan_on_stored_colorings() {
    criterion("4a C4 scan on stored colorings", Duration::from_secs(60), || {
        for (cg, t) in qualifying_stored_colorings() {
            assert!(broomlab_core::search::c4_rule_qualifies(cg.graph(), t));
            for cycle in cg.graph().enumerate_c4() {
                for &anchor in &cycle {
                    let class = classify_c4(&cg, cycle, anchor).unwrap();
                    assert!(
                        matches!(
                            class,
                            CycleClass::Bichromatic | CycleClass::RainbowAnchored
                        ),
                        "t={t} cycle={cycle:?} anchor={anchor}: {class:?}"
                    );
                }
            }
        }
    });
}

#[test]
fn accept_4b_sigma_involutions() {
    criterion("4b sigma involutions on f2-clique(3)", Duration::from_secs(30), || {
        let cg = f2_clique_coloring(3).unwrap();
        let mut pairs = 0;
        for u in 0..8u32 {
            for v in u + 1..8 {
                let sigma = extract_sigma(&cg, u, v).unwrap();
                assert!(sigma.is_transposition_involution, "({u},{v})");
                assert!(sigma.is_derangement, "({u},{v})");
                pairs += 1;
            }
        }
        assert_eq!(pairs, 28);
    });
}

#[test]
fn accept_4c_degree_structure_on_witnesses() {
    criterion(
        "4c degree structure flag, t = 0 mod 4 witnesses",
        Duration::from_secs(120),
        || {
            // The complete hosts with t = 4 exhaust, so witnesses are
            // gathered from sparse sub-hosts of K_6 (all within t + 2
            // vertices).
            let mut rng = SplitMix64::new(0x4c);
            let mut witnesses = 0;
            for _ in 0..60 {
                let n = 5 + rng.below(2) as usize;
                let mut pairs = Vec::new();
                for u in 0..n as u32 {
                    for v in u + 1..n as u32 {
                        if rng.below(3) < 2 {
                            pairs.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edges(n, &pairs).unwrap();
                if g.edge_count() < 4 {
                    continue;
                }
                let config = SearchConfig::generic(g, "sub-host", 4);
                if config.validate().is_err() {
                    continue;
                }
                if let SearchOutcome::Witness(w) = search(&config).unwrap().outcome {
                    let report = degree_structure_report(&w, 4).unwrap();
                    assert!(report.structure_holds);
                    witnesses += 1;
                }
            }
            assert!(witnesses > 0, "need at least one witness to check");
        },
    );
}

#[test]
fn accept_4d_detector_matches_naive_embedder() {
    criterion("4d detector vs naive embedder x1000", Duration::from_secs(120), || {
        let mut rng = SplitMix64::new(0x4d);
        let mut cases = 0;
        while cases < 1000 {
            let n = 4 + rng.below(4) as usize;
            let g = random_graph(&mut rng, n);
            if g.edge_count() < 3 {
                continue;
            }
            let cg = random_proper_coloring(&mut rng, &g);
            let t = 3 + rng.below(3) as u32;
            let ell = 2 + rng.below(2) as u32;
            if ell > t {
                continue;
            }
            cases += 1;
            let pat = BroomPattern::new(t, ell).unwrap();
            let got = find_rainbow_broom(&cg, pat).unwrap();
            let expected = naive_embed(&cg, t, ell);
            assert_eq!(got, expected, "t={t} ell={ell}");
        }
    });
}

#[test]
fn accept_4e_dense_subgraph_guarantees() {
    criterion("4e dense subgraph extraction x1000", Duration::from_secs(120), || {
        let mut rng = SplitMix64::new(0x4e);
        let mut accepted = 0;
        while accepted < 1000 {
            let n = 4 + rng.below(12) as usize;
            let g = random_graph(&mut rng, n);
            let d = Coeff::new(1 + rng.below(5) as i64, 1 + rng.below(2) as i64);
            // Qualifying inputs only: average degree at least d.
            if g.n() == 0
                || Coeff::new(2 * g.edge_count() as i64, g.n() as i64) < d
            {
                continue;
            }
            accepted += 1;
            let (sub, _) = extract_dense_subgraph(&g, d).unwrap();
            assert!(sub.n() > 0);
            for v in 0..sub.n() as u32 {
                // deg > d/2
                assert!(2 * sub.degree(v) as i64 * d.denom() > *d.numer());
            }
            assert!(Coeff::new(2 * sub.edge_count() as i64, sub.n() as i64) >= d);
        }
    });
}

// --- 5. Bounds ledger ---------------------------------------------------------

#[test]
fn accept_5_bounds_ledger() {
    criterion("5 bounds ledger", Duration::from_secs(10), || {
        let r = |n: i64, d: i64| Coeff::new(n, d);
        // (t, lower, upper, lower rule, upper rule)
        let table: [(i64, Coeff, Coeff, Rule, Rule); 11] = [
            (3, r(3, 2), r(3, 2), Rule::OddExact, Rule::OddExact),
            (5, r(5, 2), r(5, 2), Rule::OddExact, Rule::OddExact),
            (6, r(7, 2), r(7, 2), Rule::SpecialEvenExact, Rule::SpecialEvenExact),
            (8, r(4, 1), r(4, 1), Rule::PowerOfTwoLower, Rule::MultipleOfFourUpper),
            (9, r(9, 2), r(9, 2), Rule::OddExact, Rule::OddExact),
            (10, r(9, 2), r(65, 12), Rule::CliqueLower, Rule::EvenUpper),
            (12, r(11, 2), r(6, 1), Rule::CliqueLower, Rule::MultipleOfFourUpper),
            (14, r(15, 2), r(15, 2), Rule::SpecialEvenExact, Rule::SpecialEvenExact),
            (16, r(8, 1), r(8, 1), Rule::PowerOfTwoLower, Rule::MultipleOfFourUpper),
            // 26 = 3^3 - 1 is 2 mod 4: ternary lower 13, even upper
            // (27/2 - 1/28) = 377/28.
            (26, r(13, 1), r(377, 28), Rule::PowerOfThreeLower, Rule::EvenUpper),
            (30, r(31, 2), r(31, 2), Rule::SpecialEvenExact, Rule::SpecialEvenExact),
        ];
        for (t, lower, upper, lower_rule, upper_rule) in table {
            let report = bounds_for(t).unwrap();
            assert_eq!(report.lower, lower, "t={t} lower");
            assert_eq!(report.upper, upper, "t={t} upper");
            assert_eq!(report.lower_rule, lower_rule, "t={t} lower rule");
            assert_eq!(report.upper_rule, upper_rule, "t={t} upper rule");
            assert_eq!(report.exact(), lower == upper, "t={t} exactness");
        }
    });
}

// --- helpers -----------------------------------------------------------------

fn random_graph(rng: &mut SplitMix64, n: usize) -> Graph {
    let mut pairs = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.below(3) < 2 {
                pairs.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &pairs).unwrap()
}

fn random_proper_coloring(rng: &mut SplitMix64, g: &Graph) -> ColoredGraph {
    let m = g.edge_count();
    let cap = 2 * g.max_degree().max(1) as u32 + 1;
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
                g.edges()
                    .iter()
                    .enumerate()
                    .all(|(f, &(a, b))| colors[f] != c || (a != u && b != u && a != v && b != v))
            })
            .collect();
        colors[e] = admissible[rng.below(admissible.len() as u64) as usize];
    }
    ColoredGraph::new(g.clone(), colors)
        .unwrap()
        .canonicalize_colors()
}

/// Reference embedder for criterion 4d, independent of the detector: all
/// handle injections in lexicographic order, then bristle subsets.
fn naive_embed(cg: &ColoredGraph, t: u32, ell: u32) -> Option<BroomEmbedding> {
    let mut handle = Vec::new();
    for v0 in 0..cg.graph().n() as u32 {
        handle.push(v0);
        if let Some(found) = naive_extend(cg, t, ell, &mut handle) {
            return Some(found);
        }
        handle.pop();
    }
    None
}

fn naive_extend(
    cg: &ColoredGraph,
    t: u32,
    ell: u32,
    handle: &mut Vec<u32>,
) -> Option<BroomEmbedding> {
    if handle.len() == ell as usize + 1 {
        let base = *handle.last().unwrap();
        let candidates: Vec<u32> = (0..cg.graph().n() as u32)
            .filter(|&w| cg.graph().has_edge(base, w) && !handle.contains(&w))
            .collect();
        return naive_bristles(cg, t, handle, &candidates, 0, &mut Vec::new());
    }
    let last = *handle.last().unwrap();
    for w in 0..cg.graph().n() as u32 {
        if !cg.graph().has_edge(last, w) || handle.contains(&w) {
            continue;
        }
        handle.push(w);
        if let Some(found) = naive_extend(cg, t, ell, handle) {
            return Some(found);
        }
        handle.pop();
    }
    None
}

fn naive_bristles(
    cg: &ColoredGraph,
    t: u32,
    handle: &[u32],
    candidates: &[u32],
    from: usize,
    chosen: &mut Vec<u32>,
) -> Option<BroomEmbedding> {
    let need = t as usize + 1 - handle.len();
    if chosen.len() == need {
        let base = *handle.last().unwrap();
        let mut colors: Vec<u32> = handle
            .windows(2)
            .map(|p| cg.color_of(p[0], p[1]).unwrap())
            .collect();
        for &b in chosen.iter() {
            colors.push(cg.color_of(base, b).unwrap());
        }
        let mut dedup = colors.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() == colors.len() {
            return Some(BroomEmbedding {
                handle: handle.to_vec(),
                bristles: chosen.clone(),
            });
        }
        return None;
    }
    for i in from..candidates.len() {
        chosen.push(candidates[i]);
        if let Some(found) = naive_bristles(cg, t, handle, candidates, i + 1, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}
