//! Exhaustive enumeration of the one-factorizations of small even
//! cliques, one canonical representative per color-relabeling class
//! (i.e., per partition of the edge set into perfect matchings), with an
//! optional reduction to vertex-isomorphism classes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::ColoredGraph;
use crate::graph::Graph;

use super::SearchError;

const ENUMERATION_GUARD: usize = 8;
const ISO_GUARD: usize = 9;

/// All one-factorizations of `K_k`, `k` in {2, 4, 6, 8}. Each partition is
/// emitted once, in canonical color form (class ids follow the vertex-0
/// star). Larger orders hit a size guard.
pub fn enumerate_one_factorizations(k: usize) -> Result<Vec<ColoredGraph>, SearchError> {
    if k > ENUMERATION_GUARD {
        return Err(SearchError::InvalidParameter(format!(
            "one-factorization enumeration is guarded at order {ENUMERATION_GUARD}, got {k}"
        )));
    }
    if k < 2 || k % 2 != 0 {
        return Err(SearchError::InvalidParameter(format!(
            "one-factorization enumeration needs an even order >= 2, got {k}"
        )));
    }
    let host = Graph::clique(k).expect("k >= 2");
    let m = host.edge_count();
    let mut colors = vec![0u32; m];
    let mut out = Vec::new();
    extend_factorization(&host, &mut colors, 0, &mut out);
    Ok(out)
}

fn extend_factorization(
    host: &Graph,
    colors: &mut Vec<u32>,
    used: u32,
    out: &mut Vec<ColoredGraph>,
) {
    let Some(seed) = colors.iter().position(|&c| c == 0) else {
        out.push(
            ColoredGraph::new(host.clone(), colors.clone())
                .expect("all edges colored with positive ids"),
        );
        return;
    };
    // The next class must contain the least uncolored edge; build every
    // perfect matching through it from uncolored edges.
    let color = used + 1;
    let mut in_class = 0u32; // vertex bitmask, k <= 8
    let (u, v) = host.edge_at(seed);
    colors[seed] = color;
    in_class |= (1 << u) | (1 << v);
    extend_matching(host, colors, color, in_class, used, out);
    colors[seed] = 0;
}

fn extend_matching(
    host: &Graph,
    colors: &mut Vec<u32>,
    color: u32,
    in_class: u32,
    used: u32,
    out: &mut Vec<ColoredGraph>,
) {
    let k = host.n() as u32;
    let Some(next) = (0..k).find(|&v| in_class & (1 << v) == 0) else {
        extend_factorization(host, colors, used + 1, out);
        return;
    };
    for w in next + 1..k {
        if in_class & (1 << w) != 0 {
            continue;
        }
        let e = host.index_of(next, w).expect("complete host");
        if colors[e] != 0 {
            continue;
        }
        colors[e] = color;
        extend_matching(
            host,
            colors,
            color,
            in_class | (1 << next) | (1 << w),
            used,
            out,
        );
        colors[e] = 0;
    }
}

/// Cheap isomorphism invariant: for every unordered pair of color
/// classes, the sorted multiset of cycle/path lengths (edge counts) in
/// their union, aggregated and sorted.
fn pair_structure_invariant(cg: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = cg.graph().n();
    let by_color = {
        let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &c) in cg.colors().iter().enumerate() {
            map.entry(c).or_default().push(i);
        }
        map
    };
    let classes: Vec<&Vec<usize>> = by_color.values().collect();
    let mut invariant = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            let mut adj = vec![Vec::new(); n];
            for &e in a.iter().chain(b.iter()) {
                let (u, v) = cg.graph().edge_at(e);
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
            let mut seen = vec![false; n];
            let mut lengths = Vec::new();
            for start in 0..n {
                if seen[start] || adj[start].is_empty() {
                    continue;
                }
                // Walk the component; unions of two matchings are paths
                // or cycles, so edge count = vertex count or one less.
                let mut stack = vec![start];
                seen[start] = true;
                let mut vertices = 0usize;
                let mut degree_sum = 0usize;
                while let Some(v) = stack.pop() {
                    vertices += 1;
                    degree_sum += adj[v].len();
                    for &w in &adj[v] {
                        if !seen[w as usize] {
                            seen[w as usize] = true;
                            stack.push(w as usize);
                        }
                    }
                }
                lengths.push(vertices);
                lengths.push(degree_sum / 2);
            }
            lengths.sort_unstable();
            invariant.push(lengths);
        }
    }
    invariant.sort_unstable();
    invariant
}

/// Backtracking search for a vertex bijection carrying one coloring onto
/// the other up to a color bijection, built incrementally.
fn isomorphism_exists(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    let n = a.graph().n();
    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    // Color maps in both directions; 0 = unassigned.
    let max_color = |cg: &ColoredGraph| cg.colors().iter().copied().max().unwrap_or(0) as usize;
    let mut fwd = vec![0u32; max_color(a) + 1];
    let mut bwd = vec![0u32; max_color(b) + 1];
    place(a, b, 0, &mut image, &mut used, &mut fwd, &mut bwd)
}

#[allow(clippy::too_many_arguments)]
fn place(
    a: &ColoredGraph,
    b: &ColoredGraph,
    v: usize,
    image: &mut Vec<u32>,
    used: &mut Vec<bool>,
    fwd: &mut Vec<u32>,
    bwd: &mut Vec<u32>,
) -> bool {
    let n = a.graph().n();
    if v == n {
        return true;
    }
    'candidates: for w in 0..n {
        if used[w] {
            continue;
        }
        // Check color consistency against the already-placed vertices,
        // extending the color bijection tentatively.
        let mut added: Vec<(u32, u32)> = Vec::new();
        for u in 0..v {
            let ca = a.color_of(u as u32, v as u32);
            let cb = b.color_of(image[u], w as u32);
            match (ca, cb) {
                (None, None) => continue,
                (Some(ca), Some(cb)) => {
                    let f = fwd[ca as usize];
                    let g = bwd[cb as usize];
                    if (f != 0 && f != cb) || (g != 0 && g != ca) {
                        for &(x, y) in &added {
                            fwd[x as usize] = 0;
                            bwd[y as usize] = 0;
                        }
                        continue 'candidates;
                    }
                    if f == 0 {
                        fwd[ca as usize] = cb;
                        bwd[cb as usize] = ca;
                        added.push((ca, cb));
                    }
                }
                _ => {
                    for &(x, y) in &added {
                        fwd[x as usize] = 0;
                        bwd[y as usize] = 0;
                    }
                    continue 'candidates;
                }
            }
        }
        image[v] = w as u32;
        used[w] = true;
        if place(a, b, v + 1, image, used, fwd, bwd) {
            return true;
        }
        image[v] = u32::MAX;
        used[w] = false;
        for &(x, y) in &added {
            fwd[x as usize] = 0;
            bwd[y as usize] = 0;
        }
    }
    false
}

/// Whether two colorings of the same host are equal up to a vertex
/// relabeling (colors compared as partitions).
pub fn colorings_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool, SearchError> {
    if a.graph().n() > ISO_GUARD || b.graph().n() > ISO_GUARD {
        return Err(SearchError::InvalidParameter(format!(
            "isomorphism checks are guarded at order {ISO_GUARD}"
        )));
    }
    if a.graph().n() != b.graph().n() || a.graph().edges() != b.graph().edges() {
        return Ok(false);
    }
    if a.palette().len() != b.palette().len() {
        return Ok(false);
    }
    if pair_structure_invariant(a) != pair_structure_invariant(b) {
        return Ok(false);
    }
    Ok(isomorphism_exists(a, b))
}


/// One representative per vertex-isomorphism class, in first-seen order.
pub fn reduce_by_vertex_isomorphism(
    colorings: &[ColoredGraph],
) -> Result<Vec<ColoredGraph>, SearchError> {
    let mut reps: Vec<(Vec<Vec<usize>>, ColoredGraph)> = Vec::new();
    for cg in colorings {
        if cg.graph().n() > ISO_GUARD {
            return Err(SearchError::InvalidParameter(format!(
                "isomorphism reduction is guarded at order {ISO_GUARD}"
            )));
        }
        let invariant = pair_structure_invariant(cg);
        let mut known = false;
        for (inv, rep) in &reps {
            if *inv == invariant && isomorphism_exists(rep, cg) {
                known = true;
                break;
            }
        }
        if !known {
            reps.push((invariant, cg.clone()));
        }
    }
    Ok(reps.into_iter().map(|(_, cg)| cg).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColorClassView;

    #[test]
    fn k2_and_k4_counts() {
        assert_eq!(enumerate_one_factorizations(2).unwrap().len(), 1);
        // K_4 has a unique one-factorization.
        let fs = enumerate_one_factorizations(4).unwrap();
        assert_eq!(fs.len(), 1);
        let view = ColorClassView::new(&fs[0], 3);
        assert!(view.is_one_factorization(&fs[0]));
    }

    #[test]
    fn k6_count_cross_checked() {
        let fs = enumerate_one_factorizations(6).unwrap();
        // Independent oracle below; the value is frozen as a regression.
        assert_eq!(fs.len(), brute_count_k6());
        assert_eq!(fs.len(), 6);
        for cg in &fs {
            assert!(cg.check_proper().is_proper());
            assert!(cg.is_canonical());
            let view = ColorClassView::new(cg, 5);
            assert!(view.is_one_factorization(cg));
        }
        // All six are vertex-isomorphic.
        assert_eq!(reduce_by_vertex_isomorphism(&fs).unwrap().len(), 1);
    }

    #[test]
    fn guards() {
        assert!(enumerate_one_factorizations(10).is_err());
        assert!(enumerate_one_factorizations(5).is_err());
        assert!(enumerate_one_factorizations(0).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let a = crate::construct::f2_clique_coloring(2).unwrap();
        let b = crate::coloring::round_robin_factorize(4).unwrap();
        assert!(colorings_isomorphic(&a, &b).unwrap());

        let c = crate::coloring::round_robin_factorize(6).unwrap();
        assert!(!colorings_isomorphic(&a, &c).unwrap());
    }

    // Independent count of the partitions of E(K_6) into perfect
    // matchings, written against the edge list directly.
    fn brute_count_k6() -> usize {
        let host = Graph::clique(6).unwrap();
        let matchings = perfect_matchings(&host);
        let mut count = 0;
        // Choose 5 pairwise edge-disjoint perfect matchings covering all
        // 15 edges, as an unordered set: force lexicographic order of
        // matchings to count sets once.
        fn go(
            matchings: &[Vec<usize>],
            from: usize,
            used_edges: u32,
            chosen: usize,
            count: &mut usize,
        ) {
            if chosen == 5 {
                if used_edges == (1 << 15) - 1 {
                    *count += 1;
                }
                return;
            }
            for i in from..matchings.len() {
                let mask: u32 = matchings[i].iter().map(|&e| 1 << e).sum();
                if mask & used_edges == 0 {
                    go(matchings, i + 1, used_edges | mask, chosen + 1, count);
                }
            }
        }
        go(&matchings, 0, 0, 0, &mut count);
        count
    }

    fn perfect_matchings(host: &Graph) -> Vec<Vec<usize>> {
        let n = host.n() as u32;
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn go(
            host: &Graph,
            n: u32,
            covered: u32,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let Some(v) = (0..n).find(|&v| covered & (1 << v) == 0) else {
                out.push(current.clone());
                return;
            };
            for w in v + 1..n {
                if covered & (1 << w) != 0 || !host.has_edge(v, w) {
                    continue;
                }
                current.push(host.index_of(v, w).unwrap());
                go(host, n, covered | (1 << v) | (1 << w), current, out);
                current.pop();
            }
        }
        go(host, n, 0, &mut current, &mut out);
        out
    }
}
