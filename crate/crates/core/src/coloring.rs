//! Edge colorings over the canonical edge index: properness verdicts,
//! canonical color form, color-class views, the four-cycle identity, and
//! the round-robin one-factorization of even cliques.
//!
//! Colors are positive integers; `0` is reserved by the search engine for
//! "uncolored". The canonical form relabels colors to first-appearance
//! order along the edge index — only the partition of edges into classes
//! carries meaning, so the canonical form is what generators emit and what
//! the file format stores.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringError {
    InvalidParameter(&'static str),
    LengthMismatch { expected: usize, got: usize },
    ZeroColor { edge: usize },
}

impl fmt::Display for ColoringError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColoringError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            ColoringError::LengthMismatch { expected, got } => {
                write!(f, "color array has {got} entries, expected {expected}")
            }
            ColoringError::ZeroColor { edge } => {
                write!(f, "edge {edge} has color 0 (colors are positive)")
            }
        }
    }
}

/// Outcome of a properness check. The witness is deterministic: the first
/// edge (in index order) that repeats a color at one of its endpoints,
/// with the endpoint checked in `(u, v)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProperVerdict {
    Proper,
    Improper {
        vertex: u32,
        color: u32,
        first_edge: usize,
        second_edge: usize,
    },
}

impl ProperVerdict {
    pub fn is_proper(&self) -> bool {
        matches!(self, ProperVerdict::Proper)
    }
}

/// A graph together with an edge color assignment, indexed by the
/// canonical edge index. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    colors: Vec<u32>,
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: Vec<u32>) -> Result<ColoredGraph, ColoringError> {
        if colors.len() != graph.edge_count() {
            return Err(ColoringError::LengthMismatch {
                expected: graph.edge_count(),
                got: colors.len(),
            });
        }
        if let Some(edge) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor { edge });
        }
        Ok(ColoredGraph { graph, colors })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color_of_edge(&self, i: usize) -> u32 {
        self.colors[i]
    }

    pub fn color_of(&self, u: u32, v: u32) -> Option<u32> {
        self.graph.index_of(u, v).map(|i| self.colors[i])
    }

    /// Number of distinct colors used.
    pub fn color_count(&self) -> usize {
        self.palette().len()
    }

    /// The set of colors used (the image of the coloring).
    pub fn palette(&self) -> BTreeSet<u32> {
        self.colors.iter().copied().collect()
    }

    /// Checks that no two edges sharing a vertex have the same color.
    pub fn check_proper(&self) -> ProperVerdict {
        let n = self.graph.n();
        // seen[v] maps color -> first edge carrying it at v.
        let mut seen: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
        for (i, &(u, v)) in self.graph.edges().iter().enumerate() {
            let c = self.colors[i];
            for &vertex in &[u, v] {
                if let Some(&(_, first)) = seen[vertex as usize]
                    .iter()
                    .find(|&&(color, _)| color == c)
                {
                    return ProperVerdict::Improper {
                        vertex,
                        color: c,
                        first_edge: first,
                        second_edge: i,
                    };
                }
            }
            seen[u as usize].push((c, i));
            seen[v as usize].push((c, i));
        }
        ProperVerdict::Proper
    }

    /// Whether color ids are exactly `1..=C` in first-appearance order
    /// along the edge index.
    pub fn is_canonical(&self) -> bool {
        let mut next = 1;
        for &c in &self.colors {
            if c == next {
                next += 1;
            } else if c > next {
                return false;
            }
        }
        true
    }

    /// Relabels colors to first-appearance order along the edge index.
    /// The partition of edges into classes is unchanged.
    pub fn canonicalize_colors(&self) -> ColoredGraph {
        let mut map: Vec<(u32, u32)> = Vec::new();
        let mut out = Vec::with_capacity(self.colors.len());
        for &c in &self.colors {
            let id = match map.iter().find(|&&(old, _)| old == c) {
                Some(&(_, new)) => new,
                None => {
                    let new = map.len() as u32 + 1;
                    map.push((c, new));
                    new
                }
            };
            out.push(id);
        }
        ColoredGraph {
            graph: self.graph.clone(),
            colors: out,
        }
    }

    /// The set of colors on edges incident to `v`, ascending.
    pub fn color_degree_profile(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .graph
            .neighbors(v)
            .iter()
            .filter_map(|w| self.color_of(v, w))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The four-cycle identity: whenever two vertex-disjoint edges share a
    /// color, both cross pairings (where present in the host) must also
    /// share a color. Pairings with a missing edge are vacuous.
    pub fn satisfies_four_cycle_property(&self) -> bool {
        let by_color = group_edges_by_color(self);
        for class in by_color.values() {
            for (i, &e1) in class.iter().enumerate() {
                for &e2 in &class[i + 1..] {
                    let (x, y) = self.graph.edge_at(e1);
                    let (z, w) = self.graph.edge_at(e2);
                    if x == z || x == w || y == z || y == w {
                        continue;
                    }
                    // c(xy) = c(zw) forces c(yz) = c(xw) and c(yw) = c(xz).
                    for (p, q, r, s) in [(y, z, x, w), (y, w, x, z)] {
                        match (self.color_of(p, q), self.color_of(r, s)) {
                            (Some(a), Some(b)) if a != b => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColoredGraph(n={}, m={}, colors={})",
            self.graph.n(),
            self.graph.edge_count(),
            self.color_count()
        )
    }
}

fn group_edges_by_color(cg: &ColoredGraph) -> alloc::collections::BTreeMap<u32, Vec<usize>> {
    let mut map = alloc::collections::BTreeMap::new();
    for (i, &c) in cg.colors().iter().enumerate() {
        map.entry(c).or_insert_with(Vec::new).push(i);
    }
    map
}

/// Colors `K_k` (`k` even) with exactly `k - 1` perfect matchings using
/// the circle method: vertex `k - 1` is fixed, vertices `0..k-1` rotate.
/// Output is in canonical color form.
pub fn round_robin_factorize(k: usize) -> Result<ColoredGraph, ColoringError> {
    if k < 2 || k % 2 != 0 {
        return Err(ColoringError::InvalidParameter(
            "round robin factorization needs an even order >= 2",
        ));
    }
    let graph = Graph::clique(k).expect("k >= 2");
    let mut colors = vec![0u32; graph.edge_count()];
    let rounds = k - 1;
    for r in 0..rounds {
        let color = r as u32 + 1;
        let mut set = |a: usize, b: usize| {
            let i = graph.index_of(a as u32, b as u32).unwrap();
            colors[i] = color;
        };
        set(r, k - 1);
        for i in 1..k / 2 {
            let a = (r + i) % rounds;
            let b = (r + rounds - i) % rounds;
            set(a, b);
        }
    }
    let cg = ColoredGraph::new(graph, colors)?;
    Ok(cg.canonicalize_colors())
}

/// Per-color edge classes over a stated palette `1..=palette`, plus the
/// missing color at each vertex when exactly one palette color is absent
/// there.
pub struct ColorClassView {
    palette: u32,
    classes: Vec<Vec<usize>>,
    missing: Vec<Option<u32>>,
}

impl ColorClassView {
    pub fn new(cg: &ColoredGraph, palette: u32) -> ColorClassView {
        let n = cg.graph().n();
        let mut classes = vec![Vec::new(); palette as usize];
        for (i, &c) in cg.colors().iter().enumerate() {
            if c >= 1 && c <= palette {
                classes[c as usize - 1].push(i);
            }
        }
        let mut missing = Vec::with_capacity(n);
        for v in 0..n as u32 {
            let present = cg.color_degree_profile(v);
            let absent: Vec<u32> = (1..=palette).filter(|c| !present.contains(c)).collect();
            missing.push(if absent.len() == 1 {
                Some(absent[0])
            } else {
                None
            });
        }
        ColorClassView {
            palette,
            classes,
            missing,
        }
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    /// Edge indices of color `c` (1-based).
    pub fn class(&self, c: u32) -> &[usize] {
        &self.classes[c as usize - 1]
    }

    /// The unique palette color absent at `v`, when exactly one is absent.
    pub fn missing_color(&self, v: u32) -> Option<u32> {
        self.missing[v as usize]
    }

    pub fn class_is_matching(&self, cg: &ColoredGraph, c: u32) -> bool {
        let mut used = BTreeSet::new();
        for &i in self.class(c) {
            let (u, v) = cg.graph().edge_at(i);
            if !used.insert(u) || !used.insert(v) {
                return false;
            }
        }
        true
    }

    pub fn class_is_perfect_matching(&self, cg: &ColoredGraph, c: u32) -> bool {
        self.class_is_matching(cg, c) && self.class(c).len() * 2 == cg.graph().n()
    }

    /// Palette of size `n - 1` on an even-order host with every class a
    /// perfect matching.
    pub fn is_one_factorization(&self, cg: &ColoredGraph) -> bool {
        let n = cg.graph().n();
        n % 2 == 0
            && self.palette as usize == n - 1
            && (1..=self.palette).all(|c| self.class_is_perfect_matching(cg, c))
    }

    /// Palette of size `n` on an odd-order host where every class is a
    /// maximum matching missing exactly one vertex, and the missing
    /// vertices are distinct across classes (so vertices are uniquely
    /// labeled by their missing color).
    pub fn is_near_one_factorization(&self, cg: &ColoredGraph) -> bool {
        let n = cg.graph().n();
        if n % 2 == 0 || self.palette as usize != n {
            return false;
        }
        let per_class = (n - 1) / 2;
        if !(1..=self.palette)
            .all(|c| self.class(c).len() == per_class && self.class_is_matching(cg, c))
        {
            return false;
        }
        self.vertex_labels().is_some()
    }

    /// The per-vertex missing color, when it is defined everywhere and
    /// forms a bijection onto the palette.
    pub fn vertex_labels(&self) -> Option<Vec<u32>> {
        let mut labels = Vec::with_capacity(self.missing.len());
        let mut seen = BTreeSet::new();
        for m in &self.missing {
            let label = (*m)?;
            if !seen.insert(label) {
                return None;
            }
            labels.push(label);
        }
        if labels.len() == self.palette as usize {
            Some(labels)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SplitMix64;

    #[test]
    fn round_robin_small() {
        let cg = round_robin_factorize(4).unwrap();
        assert!(cg.check_proper().is_proper());
        assert_eq!(cg.color_count(), 3);
        let view = ColorClassView::new(&cg, 3);
        assert!(view.is_one_factorization(&cg));
        for c in 1..=3 {
            assert_eq!(view.class(c).len(), 2);
        }

        let cg = round_robin_factorize(2).unwrap();
        assert_eq!(cg.color_count(), 1);
        assert_eq!(cg.graph().edge_count(), 1);

        assert!(round_robin_factorize(5).is_err());
        assert!(round_robin_factorize(0).is_err());
    }

    #[test]
    fn round_robin_k10_structure() {
        let cg = round_robin_factorize(10).unwrap();
        assert!(cg.check_proper().is_proper());
        assert_eq!(cg.color_count(), 9);
        assert!(cg.is_canonical());
        let view = ColorClassView::new(&cg, 9);
        assert!(view.is_one_factorization(&cg));
        // Classes partition the edge set.
        let total: usize = (1..=9).map(|c| view.class(c).len()).sum();
        assert_eq!(total, 45);
    }

    #[test]
    fn properness_witness_is_deterministic() {
        // Path 0-1-2 with both edges color 1: improper at vertex 1, found
        // when edge (1,2) repeats the color.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cg = ColoredGraph::new(g, vec![1, 1]).unwrap();
        match cg.check_proper() {
            ProperVerdict::Improper {
                vertex,
                color,
                first_edge,
                second_edge,
            } => {
                assert_eq!(vertex, 1);
                assert_eq!(color, 1);
                assert_eq!(first_edge, 0);
                assert_eq!(second_edge, 1);
            }
            ProperVerdict::Proper => panic!("expected improper"),
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_partition_preserving() {
        let mut rng = SplitMix64::new(41);
        for _ in 0..50 {
            let cg = random_proper_coloring(&mut rng, 5);
            let canon = cg.canonicalize_colors();
            assert!(canon.is_canonical());
            assert_eq!(canon.canonicalize_colors().colors(), canon.colors());
            assert_eq!(partition(&cg), partition(&canon));
        }
    }

    #[test]
    fn swapping_color_names_restores_canonical_original() {
        let cg = round_robin_factorize(6).unwrap();
        let swapped: Vec<u32> = cg
            .colors()
            .iter()
            .map(|&c| match c {
                1 => 2,
                2 => 1,
                other => other,
            })
            .collect();
        let swapped = ColoredGraph::new(cg.graph().clone(), swapped).unwrap();
        assert_eq!(swapped.canonicalize_colors().colors(), cg.colors());
    }

    #[test]
    fn color_degree_profile_examples() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let cg = ColoredGraph::new(g, vec![1]).unwrap();
        assert!(cg.color_degree_profile(2).is_empty());

        let k4 = round_robin_factorize(4).unwrap();
        for v in 0..4 {
            assert_eq!(k4.color_degree_profile(v), vec![1, 2, 3]);
        }
    }

    #[test]
    fn near_factorization_labels_on_k11() {
        // K_11 colored by restricting the round-robin coloring of K_12 to
        // its first 11 vertices: 11 colors, every class a 5-edge matching,
        // each vertex missing exactly one color.
        let k12 = round_robin_factorize(12).unwrap();
        let mut pairs = Vec::new();
        let mut colors = Vec::new();
        for (i, &(u, v)) in k12.graph().edges().iter().enumerate() {
            if u < 11 && v < 11 {
                pairs.push((u, v));
                colors.push(k12.color_of_edge(i));
            }
        }
        let g = Graph::from_edges(11, &pairs).unwrap();
        let cg = ColoredGraph::new(g, colors).unwrap().canonicalize_colors();
        assert!(cg.check_proper().is_proper());
        assert_eq!(cg.color_count(), 11);
        let view = ColorClassView::new(&cg, 11);
        assert!(view.is_near_one_factorization(&cg));
        let labels = view.vertex_labels().unwrap();
        for v in 0..11u32 {
            let profile = cg.color_degree_profile(v);
            assert_eq!(profile.len(), 10);
            assert!(!profile.contains(&labels[v as usize]));
        }
    }

    #[test]
    fn four_cycle_property_examples() {
        // The unique 1-factorization of K_4 satisfies the identity.
        let k4 = round_robin_factorize(4).unwrap();
        assert!(k4.satisfies_four_cycle_property());

        // A coloring with a trichromatic-style violation does not: color
        // (0,1) and (2,3) equal but the cross pairs differ.
        let g = Graph::clique(4).unwrap();
        // Edge order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
        let cg = ColoredGraph::new(g, vec![1, 2, 3, 3, 2, 1]).unwrap();
        // c(01)=c(23)=1; cross pair c(12)=3 vs c(03)=3 ok, c(13)=2 vs c(02)=2 ok.
        assert!(cg.satisfies_four_cycle_property());
        let g = Graph::clique(4).unwrap();
        let cg = ColoredGraph::new(g, vec![1, 2, 3, 4, 2, 1]).unwrap();
        // c(01)=c(23)=1 but c(12)=4 != c(03)=3.
        assert!(!cg.satisfies_four_cycle_property());
    }

    fn partition(cg: &ColoredGraph) -> BTreeSet<Vec<usize>> {
        group_edges_by_color(cg).into_values().collect()
    }

    fn random_proper_coloring(rng: &mut SplitMix64, k: usize) -> ColoredGraph {
        let g = Graph::clique(k).unwrap();
        let mut colors = Vec::with_capacity(g.edge_count());
        let cap = 2 * k as u32;
        'edges: for &(u, v) in g.edges() {
            let mut tries = 0;
            loop {
                let c = 1 + rng.below(cap as u64) as u32;
                let clash = g.edges().iter().zip(&colors).any(|(&(a, b), &col)| {
                    col == c && (a == u || b == u || a == v || b == v)
                });
                if !clash {
                    colors.push(c);
                    continue 'edges;
                }
                tries += 1;
                assert!(tries < 1000);
            }
        }
        ColoredGraph::new(g, colors).unwrap()
    }
}
