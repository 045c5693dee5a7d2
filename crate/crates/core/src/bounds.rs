//! The theorem ledger as an evaluator: exact rational lower/upper
//! coefficients of the extremal edge density for each broom size, plus the
//! dense-subgraph extraction and component filtering procedures the upper
//! bound arguments rest on.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::graph::{Graph, VertexSet};

pub type Coeff = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsError {
    InvalidParameter(&'static str),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

/// Which result supplies a side of the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Odd t: matching-decomposed cliques meet the odd upper bound.
    OddExact,
    /// t = 2^s - 2: binary clique colorings, exact.
    SpecialEvenExact,
    /// t = 2^s: binary bipartite colorings supply the lower bound.
    PowerOfTwoLower,
    /// t = 3^s - 1: ternary clique colorings supply the lower bound.
    PowerOfThreeLower,
    /// Arbitrarily colored disjoint cliques K_t.
    CliqueLower,
    /// Upper bound for t divisible by four.
    MultipleOfFourUpper,
    /// General even upper bound (t + 1)/2 - 1/(t + 2).
    EvenUpper,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::OddExact => "odd-exact",
            Rule::SpecialEvenExact => "special-even-exact",
            Rule::PowerOfTwoLower => "power-of-two-lower",
            Rule::PowerOfThreeLower => "power-of-three-lower",
            Rule::CliqueLower => "clique-lower",
            Rule::MultipleOfFourUpper => "multiple-of-four-upper",
            Rule::EvenUpper => "even-upper",
        };
        f.write_str(name)
    }
}

/// Lower and upper coefficients of n in the extremal edge count, with the
/// rule supplying each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub t: i64,
    pub lower: Coeff,
    pub upper: Coeff,
    pub lower_rule: Rule,
    pub upper_rule: Rule,
}

impl BoundsReport {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Exact power detection by integer arithmetic.
fn is_power_of(base: i64, mut x: i64) -> bool {
    if x < 1 {
        return false;
    }
    while x % base == 0 {
        x /= base;
    }
    x == 1
}

/// The bounds ledger for the three-edge-handle broom with `t >= 3` edges.
pub fn bounds_for(t: i64) -> Result<BoundsReport, BoundsError> {
    if t < 3 {
        return Err(BoundsError::InvalidParameter("bounds need t >= 3"));
    }
    let half = |num: i64| Coeff::new(num, 2);
    if t % 2 == 1 {
        return Ok(BoundsReport {
            t,
            lower: half(t),
            upper: half(t),
            lower_rule: Rule::OddExact,
            upper_rule: Rule::OddExact,
        });
    }
    // t = 2^s - 2 (s >= 3 since t >= 3): exact (t + 1)/2.
    if is_power_of(2, t + 2) {
        return Ok(BoundsReport {
            t,
            lower: half(t + 1),
            upper: half(t + 1),
            lower_rule: Rule::SpecialEvenExact,
            upper_rule: Rule::SpecialEvenExact,
        });
    }
    let (lower, lower_rule) = if is_power_of(2, t) {
        (half(t), Rule::PowerOfTwoLower)
    } else if is_power_of(3, t + 1) {
        (half(t), Rule::PowerOfThreeLower)
    } else {
        (half(t - 1), Rule::CliqueLower)
    };
    let (upper, upper_rule) = if t % 4 == 0 {
        (half(t), Rule::MultipleOfFourUpper)
    } else {
        (half(t + 1) - Coeff::new(1, t + 2), Rule::EvenUpper)
    };
    Ok(BoundsReport {
        t,
        lower,
        upper,
        lower_rule,
        upper_rule,
    })
}

/// Advisory general upper coefficient `(t + ell - 2)/2` for handle length
/// `ell`, valid only while `3*ell - 4 <= t`.
pub fn general_broom_upper(t: i64, ell: i64) -> Result<Coeff, BoundsError> {
    if ell < 2 || t < ell {
        return Err(BoundsError::InvalidParameter("need 2 <= ell <= t"));
    }
    if 3 * ell - 4 > t {
        return Err(BoundsError::InvalidParameter(
            "general bound requires 3*ell - 4 <= t",
        ));
    }
    Ok(Coeff::new(t + ell - 2, 2))
}

fn degree_exceeds_half(deg: usize, d: Coeff) -> bool {
    // deg > d/2  <=>  2 * deg * denom > numer (denom > 0).
    2 * deg as i64 * d.denom() > *d.numer()
}

fn average_degree_at_least(g: &Graph, d: Coeff) -> bool {
    // 2m/n >= d  <=>  2m * denom >= numer * n.
    if g.n() == 0 {
        return false;
    }
    2 * g.edge_count() as i64 * d.denom() >= d.numer() * g.n() as i64
}

/// Extracts a subgraph with minimum degree above `d/2` and average degree
/// at least `d` by repeatedly deleting the least-index vertex of degree at
/// most `d/2`, stopping at the first state satisfying both guarantees.
/// Returns the subgraph (densely re-indexed) and the surviving original
/// vertex ids.
pub fn extract_dense_subgraph(g: &Graph, d: Coeff) -> Result<(Graph, Vec<u32>), BoundsError> {
    if d <= Coeff::from_integer(0) {
        return Err(BoundsError::InvalidParameter("density must be positive"));
    }
    if !average_degree_at_least(g, d) {
        return Err(BoundsError::InvalidParameter(
            "average degree below requested density",
        ));
    }
    let mut keep = VertexSet::full(g.n());
    let mut degree: Vec<usize> = (0..g.n() as u32).map(|v| g.degree(v)).collect();
    let mut edges = g.edge_count();
    let mut alive = g.n();
    loop {
        let min_ok = keep.iter().all(|v| degree_exceeds_half(degree[v as usize], d));
        let avg_ok = 2 * edges as i64 * d.denom() >= d.numer() * alive as i64;
        if min_ok && avg_ok {
            let (sub, ids) = g.induced_subgraph(&keep);
            return Ok((sub, ids));
        }
        let victim = keep
            .iter()
            .find(|&v| !degree_exceeds_half(degree[v as usize], d));
        match victim {
            Some(v) => {
                keep.remove(v);
                alive -= 1;
                for w in g.neighbors(v).iter() {
                    if keep.contains(w) {
                        degree[w as usize] -= 1;
                        edges -= 1;
                    }
                }
                degree[v as usize] = 0;
            }
            // No deletable vertex but the average condition failed: cannot
            // happen when the precondition held, since deleting vertices of
            // degree <= d/2 never drops the average below d.
            None => {
                return Err(BoundsError::InvalidParameter(
                    "extraction exhausted the graph",
                ))
            }
        }
    }
}

/// Keeps only the components whose average degree strictly exceeds `d`;
/// the result is densely re-indexed over the surviving vertices.
pub fn component_filter(g: &Graph, d: Coeff) -> Graph {
    let mut keep = VertexSet::empty(g.n());
    for comp in g.components() {
        let (sub, _) = g.induced_subgraph(&comp);
        // strict: 2m * denom > numer * n
        if sub.n() > 0 && 2 * sub.edge_count() as i64 * d.denom() > d.numer() * sub.n() as i64 {
            for v in comp.iter() {
                keep.insert(v);
            }
        }
    }
    g.induced_subgraph(&keep).0
}
