//! Undirected simple graphs over dense vertex ids `0..n`, with a canonical
//! lexicographic edge index. The edge index is load-bearing: search
//! branching, the coloring file format and witness tie-breaking all refer
//! to it, so it is bit-exact by construction (edges stored as `(u, v)`
//! with `u < v`, sorted lexicographically).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Bitset over the vertex range `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    bits: Vec<u64>,
    n: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            bits: vec![0; n.div_ceil(64)],
            n,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n as u32 {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.bits[v as usize / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.bits[v as usize / 64] &= !(1u64 << (v % 64));
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.n && (self.bits[v as usize / 64] >> (v % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
            n: self.n,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
            n: self.n,
        }
    }

    /// Ascending iterator over members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().enumerate().flat_map(|(block, &word)| {
            let mut w = word;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros();
                    w &= w - 1;
                    Some(block as u32 * 64 + bit)
                }
            })
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    InvalidParameter(&'static str),
    SelfLoop(u32),
    DuplicateEdge(u32, u32),
    VertexOutOfRange(u32),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
        }
    }
}

/// Undirected simple graph. Immutable after construction; edge `i` is the
/// `i`-th pair `(u, v)`, `u < v`, in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![VertexSet::empty(n); n],
        }
    }

    /// Builds a graph from an edge list. Pairs are normalized to `u < v`
    /// and sorted; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn from_edges(n: usize, pairs: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a as usize >= n {
                return Err(GraphError::VertexOutOfRange(a));
            }
            if b as usize >= n {
                return Err(GraphError::VertexOutOfRange(b));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut adj = vec![VertexSet::empty(n); n];
        for &(u, v) in &edges {
            adj[u as usize].insert(v);
            adj[v as usize].insert(u);
        }
        Ok(Graph { n, edges, adj })
    }

    /// Complete graph on `k >= 1` vertices.
    pub fn clique(k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameter("clique order must be >= 1"));
        }
        let mut pairs = Vec::with_capacity(k * (k - 1) / 2);
        for u in 0..k as u32 {
            for v in u + 1..k as u32 {
                pairs.push((u, v));
            }
        }
        Graph::from_edges(k, &pairs)
    }

    /// Complete bipartite graph; vertices `0..a` form one side.
    pub fn biclique(a: usize, b: usize) -> Result<Graph, GraphError> {
        if a == 0 || b == 0 {
            return Err(GraphError::InvalidParameter("biclique sides must be >= 1"));
        }
        let mut pairs = Vec::with_capacity(a * b);
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                pairs.push((u, a as u32 + v));
            }
        }
        Graph::from_edges(a + b, &pairs)
    }

    /// `floor(n / |V(block)|)` vertex-disjoint copies of `block`, padded
    /// with isolated vertices up to `n` vertices total.
    pub fn disjoint_union(block: &Graph, n: usize) -> Graph {
        let k = block.n;
        let copies = n.checked_div(k).unwrap_or(0);
        let mut pairs = Vec::with_capacity(copies * block.edge_count());
        for c in 0..copies {
            let base = (c * k) as u32;
            for &(u, v) in &block.edges {
                pairs.push((base + u, base + v));
            }
        }
        Graph::from_edges(n, &pairs).expect("shifted copies of a valid graph are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_at(&self, i: usize) -> (u32, u32) {
        self.edges[i]
    }

    /// Inverse of `edge_at`: the canonical index of `{u, v}`, if present.
    pub fn index_of(&self, u: u32, v: u32) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj.get(u as usize).is_some_and(|s| s.contains(v))
    }

    pub fn neighbors(&self, v: u32) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Whether every pair of distinct vertices is an edge.
    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.n);
        let mut out = Vec::new();
        for start in 0..self.n as u32 {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            comp.insert(start);
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for w in self.adj[v as usize].iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `keep`, re-indexed densely in ascending order of
    /// the original ids. Returns the graph and the original id of each new
    /// vertex.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<u32>) {
        let old_ids: Vec<u32> = keep.iter().collect();
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let pairs: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_id[u as usize], new_id[v as usize]))
            .collect();
        let g = Graph::from_edges(old_ids.len(), &pairs)
            .expect("induced subgraph of a valid graph is valid");
        (g, old_ids)
    }

    /// Visits every directed simple path with `len` edges in lexicographic
    /// order of the vertex sequence. The visitor returns `true` to stop
    /// early; the return value reports whether a visitor stopped the walk.
    pub fn visit_paths<F: FnMut(&[u32]) -> bool>(&self, len: usize, f: &mut F) -> bool {
        if len == 0 || len > self.n.saturating_sub(1) {
            return false;
        }
        let mut path = Vec::with_capacity(len + 1);
        for v0 in 0..self.n as u32 {
            path.push(v0);
            if self.extend_path(len, &mut path, f) {
                return true;
            }
            path.pop();
        }
        false
    }

    fn extend_path<F: FnMut(&[u32]) -> bool>(
        &self,
        len: usize,
        path: &mut Vec<u32>,
        f: &mut F,
    ) -> bool {
        if path.len() == len + 1 {
            return f(path);
        }
        let last = *path.last().unwrap();
        for w in self.adj[last as usize].iter() {
            if path.contains(&w) {
                continue;
            }
            path.push(w);
            if self.extend_path(len, path, f) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// Every directed simple path with `len` edges, in lexicographic order.
    pub fn enumerate_paths(&self, len: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        self.visit_paths(len, &mut |p| {
            out.push(p.to_vec());
            false
        });
        out
    }

    /// Visits each 4-cycle once as its canonical representative
    /// `[a, b, c, d]` (edges ab, bc, cd, da): `a` is the least vertex on
    /// the cycle and `b < d` are its cycle-neighbors.
    pub fn visit_c4<F: FnMut([u32; 4]) -> bool>(&self, f: &mut F) -> bool {
        for a in 0..self.n as u32 {
            let nbrs: Vec<u32> = self.adj[a as usize].iter().filter(|&w| w > a).collect();
            for (i, &b) in nbrs.iter().enumerate() {
                for &d in &nbrs[i + 1..] {
                    let common = self.adj[b as usize].intersection(&self.adj[d as usize]);
                    for c in common.iter() {
                        if c > a && c != b && c != d && f([a, b, c, d]) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// All 4-cycles, one canonical representative each.
    pub fn enumerate_c4(&self) -> Vec<[u32; 4]> {
        let mut out = Vec::new();
        self.visit_c4(&mut |c| {
            out.push(c);
            false
        });
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_edge_counts() {
        assert_eq!(Graph::clique(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::clique(6).unwrap().edge_count(), 15);
        assert_eq!(Graph::clique(11).unwrap().edge_count(), 55);
        assert!(Graph::clique(0).is_err());
    }

    #[test]
    fn biclique_edge_counts() {
        assert_eq!(Graph::biclique(4, 4).unwrap().edge_count(), 16);
        assert_eq!(Graph::biclique(8, 8).unwrap().edge_count(), 64);
        let star = Graph::biclique(1, 3).unwrap();
        assert_eq!(star.edge_count(), 3);
        assert_eq!(star.degree(0), 3);
        assert!(Graph::biclique(0, 3).is_err());
    }

    #[test]
    fn disjoint_union_counts() {
        let k10 = Graph::clique(10).unwrap();
        let g = Graph::disjoint_union(&k10, 1000);
        assert_eq!(g.edge_count(), 4500);

        let k4 = Graph::clique(4).unwrap();
        let g = Graph::disjoint_union(&k4, 3);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.n(), 3);

        // Two copies of K_9 inside 19 vertices: 2 * 36 edges and one
        // isolated vertex.
        let k9 = Graph::clique(9).unwrap();
        let g = Graph::disjoint_union(&k9, 19);
        assert_eq!(g.edge_count(), 72);
        assert_eq!((0..19).filter(|&v| g.degree(v) == 0).count(), 1);
    }

    #[test]
    fn edge_index_bijection() {
        let mut rng = crate::SplitMix64::new(11);
        for _ in 0..50 {
            let n = 2 + (rng.below(7) as usize);
            let g = random_graph(&mut rng, n);
            for i in 0..g.edge_count() {
                let (u, v) = g.edge_at(i);
                assert_eq!(g.index_of(u, v), Some(i));
                assert_eq!(g.index_of(v, u), Some(i));
            }
        }
    }

    #[test]
    fn disjoint_union_count_property() {
        let mut rng = crate::SplitMix64::new(5);
        for _ in 0..40 {
            let k = 1 + rng.below(6) as usize;
            let block = random_graph(&mut rng, k);
            let n = rng.below(60) as usize;
            let g = Graph::disjoint_union(&block, n);
            assert_eq!(g.edge_count(), (n / k) * block.edge_count());
        }
    }

    #[test]
    fn paths_in_triangle() {
        let k3 = Graph::clique(3).unwrap();
        assert_eq!(k3.enumerate_paths(2).len(), 6);
        assert!(k3.enumerate_paths(3).is_empty());
    }

    #[test]
    fn paths_in_path_graph() {
        let p = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let got = p.enumerate_paths(3);
        assert_eq!(got, vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn c4_examples() {
        assert_eq!(Graph::clique(4).unwrap().enumerate_c4().len(), 3);
        assert_eq!(Graph::biclique(2, 2).unwrap().enumerate_c4().len(), 1);
        let tree = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        assert!(tree.enumerate_c4().is_empty());
    }

    #[test]
    fn c4_agrees_with_subset_scan() {
        let mut rng = crate::SplitMix64::new(23);
        for _ in 0..60 {
            let n = 4 + rng.below(5) as usize;
            let g = random_graph(&mut rng, n);
            let got = g.enumerate_c4().len();
            assert_eq!(got, brute_c4_count(&g), "mismatch on {:?}", g.edges());
        }
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange(2))
        );
    }

    #[test]
    fn components_and_induced() {
        let k10 = Graph::clique(10).unwrap();
        let g = Graph::disjoint_union(&k10, 23);
        let comps = g.components();
        assert_eq!(comps.len(), 2 + 3); // two cliques + three isolated vertices
        let (sub, ids) = g.induced_subgraph(&comps[1]);
        assert_eq!(sub.edge_count(), 45);
        assert_eq!(ids[0], 10);
    }

    fn random_graph(rng: &mut crate::SplitMix64, n: usize) -> Graph {
        let mut pairs = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                if rng.below(2) == 0 {
                    pairs.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &pairs).unwrap()
    }

    // Independent oracle: count 4-cycles by scanning all 4-subsets.
    fn brute_c4_count(g: &Graph) -> usize {
        let n = g.n() as u32;
        let mut count = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        // Each unordered 4-subset supports up to three
                        // distinct 4-cycles, one per perfect pairing.
                        let quads = [[a, b, c, d], [a, c, b, d], [a, b, d, c]];
                        for q in quads {
                            if g.has_edge(q[0], q[1])
                                && g.has_edge(q[1], q[2])
                                && g.has_edge(q[2], q[3])
                                && g.has_edge(q[3], q[0])
                            {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        count
    }
}
