//! Generators for the explicit rainbow-broom-free colorings: matching
//! decompositions of even cliques, the characteristic-2 bipartite and
//! clique families, the characteristic-3 clique family, and the density
//! bookkeeping for their disjoint-union blowups.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::coloring::{round_robin_factorize, ColoredGraph, ColoringError};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructError {
    InvalidParameter(&'static str),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl From<ColoringError> for ConstructError {
    fn from(_: ColoringError) -> ConstructError {
        ConstructError::InvalidParameter("internal coloring construction failed")
    }
}

/// A vector over the field with `q` elements (`q` in {2, 3}), stored
/// most-significant coordinate first so that index order equals
/// lexicographic order on coordinate tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorLabel {
    q: u8,
    coords: Vec<u8>,
}

impl VectorLabel {
    pub fn from_index(q: u8, dim: usize, index: usize) -> VectorLabel {
        let mut coords = alloc::vec![0u8; dim];
        let mut rest = index;
        for slot in coords.iter_mut().rev() {
            *slot = (rest % q as usize) as u8;
            rest /= q as usize;
        }
        debug_assert_eq!(rest, 0);
        VectorLabel { q, coords }
    }

    pub fn to_index(&self) -> usize {
        self.coords
            .iter()
            .fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }

    pub fn add(&self, other: &VectorLabel) -> VectorLabel {
        self.zip_with(other, |a, b| (a + b) % self.q)
    }

    pub fn sub(&self, other: &VectorLabel) -> VectorLabel {
        self.zip_with(other, |a, b| (a + self.q - b) % self.q)
    }

    fn zip_with(&self, other: &VectorLabel, f: impl Fn(u8, u8) -> u8) -> VectorLabel {
        debug_assert_eq!(self.q, other.q);
        debug_assert_eq!(self.coords.len(), other.coords.len());
        VectorLabel {
            q: self.q,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// `K_{t+1}` for odd `t`, colored by the round-robin one-factorization:
/// exactly `t` colors, each class a perfect matching.
pub fn odd_clique_coloring(t: u32) -> Result<ColoredGraph, ConstructError> {
    if t < 3 || t % 2 == 0 {
        return Err(ConstructError::InvalidParameter(
            "odd clique coloring needs odd t >= 3",
        ));
    }
    Ok(round_robin_factorize(t as usize + 1)?)
}

/// `K_{t,t}` with `t = 2^s`: both sides carry the vectors of a dimension-s
/// space over the two-element field in lexicographic order, and the edge
/// `{x_i, y_j}` gets the color `x_i - y_j`. Exactly `t` colors, each a
/// perfect matching.
pub fn f2_bipartite_coloring(s: u32) -> Result<ColoredGraph, ConstructError> {
    if s < 2 {
        return Err(ConstructError::InvalidParameter(
            "bipartite family needs dimension s >= 2",
        ));
    }
    let t = 1usize << s;
    let graph = Graph::biclique(t, t).expect("t >= 4");
    let mut colors = Vec::with_capacity(graph.edge_count());
    for &(u, v) in graph.edges() {
        let x = u as usize; // side X: vertices 0..t
        let y = v as usize - t; // side Y: vertices t..2t
        colors.push((x ^ y) as u32 + 1);
    }
    let cg = ColoredGraph::new(graph, colors)?;
    Ok(cg.canonicalize_colors())
}

/// `K_{3^s}` on vertex labels from a dimension-s space over the
/// three-element field; the edge `{u, v}` gets the color `u + v`. Proper
/// with exactly `3^s` colors, each class a maximum matching missing one
/// vertex.
pub fn f3_clique_coloring(s: u32) -> Result<ColoredGraph, ConstructError> {
    if s < 2 {
        return Err(ConstructError::InvalidParameter(
            "ternary clique family needs dimension s >= 2",
        ));
    }
    let n = 3usize.pow(s);
    let graph = Graph::clique(n).expect("n >= 9");
    let mut colors = Vec::with_capacity(graph.edge_count());
    for &(u, v) in graph.edges() {
        let lu = VectorLabel::from_index(3, s as usize, u as usize);
        let lv = VectorLabel::from_index(3, s as usize, v as usize);
        colors.push(lu.add(&lv).to_index() as u32 + 1);
    }
    let cg = ColoredGraph::new(graph, colors)?;
    Ok(cg.canonicalize_colors())
}

/// `K_{2^s}` on binary vector labels with `c({u, v}) = u - v` (equals
/// `u + v` in characteristic 2): `2^s - 1` colors, each a perfect
/// matching, satisfying the four-cycle identity.
pub fn f2_clique_coloring(s: u32) -> Result<ColoredGraph, ConstructError> {
    if s < 2 {
        return Err(ConstructError::InvalidParameter(
            "binary clique family needs dimension s >= 2",
        ));
    }
    let n = 1usize << s;
    let graph = Graph::clique(n).expect("n >= 4");
    let mut colors = Vec::with_capacity(graph.edge_count());
    for &(u, v) in graph.edges() {
        colors.push((u ^ v) + 1);
    }
    let cg = ColoredGraph::new(graph, colors)?;
    Ok(cg.canonicalize_colors())
}

/// Edge count and leading density coefficient of the disjoint-union
/// blowup of a colored block to `n` total vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub copies: usize,
    pub edges: usize,
    /// Block edges per block vertex: the per-vertex density the blowup
    /// approaches as `n` grows.
    pub coefficient: Ratio<i64>,
}

pub fn density_report(block: &ColoredGraph, n: usize) -> Result<DensityReport, ConstructError> {
    let k = block.graph().n();
    if k == 0 || n < k {
        return Err(ConstructError::InvalidParameter(
            "density report needs n at least the block order",
        ));
    }
    let copies = n / k;
    Ok(DensityReport {
        copies,
        edges: copies * block.graph().edge_count(),
        coefficient: Ratio::new(block.graph().edge_count() as i64, k as i64),
    })
}
