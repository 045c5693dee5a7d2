//! Rainbow-subgraph detection and structural analyzers for properly
//! edge-colored graphs: broom embedding search, four-cycle classification,
//! good-coloring checks, the color correspondence between two vertices,
//! and degree-structure reporting.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::coloring::ColoredGraph;

/// Hosts above this order are rejected by the naive embedder used for
/// handle lengths >= 4.
const NAIVE_SIZE_GUARD: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetectError {
    ImproperColoring { vertex: u32 },
    InvalidParameter(&'static str),
    SizeGuard { n: usize, limit: usize },
}

impl fmt::Display for DetectError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetectError::ImproperColoring { vertex } => {
                write!(f, "coloring is improper at vertex {vertex}")
            }
            DetectError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            DetectError::SizeGuard { n, limit } => {
                write!(f, "host has {n} vertices, exceeding the guard of {limit}")
            }
        }
    }
}

/// A broom: a handle path with `ell` edges plus `t - ell` pendant bristle
/// edges at the handle's end, `t` edges in total on `t + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BroomPattern {
    t: u32,
    ell: u32,
}

impl BroomPattern {
    pub fn new(t: u32, ell: u32) -> Result<BroomPattern, DetectError> {
        if ell < 2 || ell > t {
            return Err(DetectError::InvalidParameter(
                "broom handle length must satisfy 2 <= ell <= t",
            ));
        }
        Ok(BroomPattern { t, ell })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn bristle_count(&self) -> u32 {
        self.t - self.ell
    }
}

/// A located broom copy: handle vertices in path order, bristle endpoints
/// sorted ascending. Rainbow witnesses re-verify via [`BroomEmbedding::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BroomEmbedding {
    pub handle: Vec<u32>,
    pub bristles: Vec<u32>,
}

impl BroomEmbedding {
    /// Re-checks the witness against the host: all vertices distinct, all
    /// broom edges present, all edge colors pairwise distinct.
    pub fn verify(&self, cg: &ColoredGraph, pat: BroomPattern) -> bool {
        if self.handle.len() != pat.ell as usize + 1
            || self.bristles.len() != pat.bristle_count() as usize
        {
            return false;
        }
        let mut vertices: BTreeSet<u32> = self.handle.iter().copied().collect();
        for &b in &self.bristles {
            if !vertices.insert(b) {
                return false;
            }
        }
        if vertices.len() != pat.t as usize + 1 {
            return false;
        }
        let base = *self.handle.last().unwrap();
        let mut colors = BTreeSet::new();
        for pair in self.handle.windows(2) {
            match cg.color_of(pair[0], pair[1]) {
                Some(c) if colors.insert(c) => {}
                _ => return false,
            }
        }
        for &b in &self.bristles {
            match cg.color_of(base, b) {
                Some(c) if colors.insert(c) => {}
                _ => return false,
            }
        }
        true
    }
}

/// Classification of a properly colored 4-cycle relative to an anchor
/// vertex on the cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    /// Two colors; opposite edges agree.
    Bichromatic,
    /// Exactly three colors.
    Trichromatic,
    /// Four colors, and the anchor is incident (anywhere in the host) to
    /// the colors of both cycle edges avoiding it.
    RainbowAnchored,
    /// Four colors, anchor missing at least one of those two colors.
    RainbowUnanchored,
}

fn ensure_proper(cg: &ColoredGraph) -> Result<(), DetectError> {
    match cg.check_proper() {
        crate::coloring::ProperVerdict::Proper => Ok(()),
        crate::coloring::ProperVerdict::Improper { vertex, .. } => {
            Err(DetectError::ImproperColoring { vertex })
        }
    }
}

/// Searches for a rainbow copy of `pat` in a properly colored host.
///
/// For each rainbow directed path `v_0..v_ell`, neighbors of `v_ell`
/// outside the path whose edge color avoids the path's colors are valid
/// bristles; properness makes their colors automatically distinct, so a
/// rainbow copy exists iff some rainbow path has at least `t - ell` of
/// them. Returns the lexicographically least witness (handle sequence,
/// then sorted bristles), or `None`. Exact, with no false negatives.
pub fn find_rainbow_broom(
    cg: &ColoredGraph,
    pat: BroomPattern,
) -> Result<Option<BroomEmbedding>, DetectError> {
    ensure_proper(cg)?;
    if cg.graph().edge_count() < pat.t as usize {
        return Ok(None);
    }
    if pat.ell <= 3 {
        Ok(path_count_search(cg, pat))
    } else {
        if cg.graph().n() > NAIVE_SIZE_GUARD {
            return Err(DetectError::SizeGuard {
                n: cg.graph().n(),
                limit: NAIVE_SIZE_GUARD,
            });
        }
        Ok(naive_embed(cg, pat))
    }
}

fn path_count_search(cg: &ColoredGraph, pat: BroomPattern) -> Option<BroomEmbedding> {
    let need = pat.bristle_count() as usize;
    let found = RefCell::new(None);
    cg.graph().visit_paths(pat.ell as usize, &mut |path| {
        let mut colors = Vec::with_capacity(pat.ell as usize);
        for pair in path.windows(2) {
            let c = cg.color_of(pair[0], pair[1]).unwrap();
            if colors.contains(&c) {
                return false;
            }
            colors.push(c);
        }
        let base = *path.last().unwrap();
        let mut bristles = Vec::new();
        for w in cg.graph().neighbors(base).iter() {
            if path.contains(&w) {
                continue;
            }
            let c = cg.color_of(base, w).unwrap();
            if !colors.contains(&c) {
                bristles.push(w);
                if bristles.len() == need {
                    break;
                }
            }
        }
        if bristles.len() >= need {
            bristles.truncate(need);
            *found.borrow_mut() = Some(BroomEmbedding {
                handle: path.to_vec(),
                bristles,
            });
            true
        } else {
            false
        }
    });
    found.into_inner()
}

// Reference embedder: enumerate handles in lexicographic order and bristle
// subsets in lexicographic order, checking all t colors pairwise distinct.
fn naive_embed(cg: &ColoredGraph, pat: BroomPattern) -> Option<BroomEmbedding> {
    let need = pat.bristle_count() as usize;
    let found = RefCell::new(None);
    cg.graph().visit_paths(pat.ell as usize, &mut |path| {
        let base = *path.last().unwrap();
        let candidates: Vec<u32> = cg
            .graph()
            .neighbors(base)
            .iter()
            .filter(|w| !path.contains(w))
            .collect();
        if candidates.len() < need {
            return false;
        }
        let handle_colors: Vec<u32> = path
            .windows(2)
            .map(|p| cg.color_of(p[0], p[1]).unwrap())
            .collect();
        let mut chosen = Vec::with_capacity(need);
        if pick_bristles(cg, base, &candidates, 0, need, &handle_colors, &mut chosen) {
            *found.borrow_mut() = Some(BroomEmbedding {
                handle: path.to_vec(),
                bristles: chosen,
            });
            true
        } else {
            false
        }
    });
    found.into_inner()
}

fn pick_bristles(
    cg: &ColoredGraph,
    base: u32,
    candidates: &[u32],
    from: usize,
    need: usize,
    used_colors: &[u32],
    chosen: &mut Vec<u32>,
) -> bool {
    if chosen.len() == need {
        let mut all = used_colors.to_vec();
        for &b in chosen.iter() {
            all.push(cg.color_of(base, b).unwrap());
        }
        let mut dedup = all.clone();
        dedup.sort_unstable();
        dedup.dedup();
        return dedup.len() == all.len();
    }
    for i in from..candidates.len() {
        chosen.push(candidates[i]);
        if pick_bristles(cg, base, candidates, i + 1, need, used_colors, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// First rainbow path with `len` edges starting at `v`, in lexicographic
/// order of the vertex sequence, or `None`.
pub fn find_rainbow_path_from(cg: &ColoredGraph, v: u32, len: usize) -> Option<Vec<u32>> {
    let mut path = [v].to_vec();
    let mut colors = Vec::with_capacity(len);
    if rainbow_path_dfs(cg, len, &mut path, &mut colors) {
        Some(path)
    } else {
        None
    }
}

fn rainbow_path_dfs(
    cg: &ColoredGraph,
    len: usize,
    path: &mut Vec<u32>,
    colors: &mut Vec<u32>,
) -> bool {
    if path.len() == len + 1 {
        return true;
    }
    let last = *path.last().unwrap();
    for w in cg.graph().neighbors(last).iter() {
        if path.contains(&w) {
            continue;
        }
        let c = cg.color_of(last, w).unwrap();
        if colors.contains(&c) {
            continue;
        }
        path.push(w);
        colors.push(c);
        if rainbow_path_dfs(cg, len, path, colors) {
            return true;
        }
        path.pop();
        colors.pop();
    }
    false
}

/// Classifies the 4-cycle `[a, b, c, d]` (edges ab, bc, cd, da) relative
/// to `anchor`, which must lie on the cycle.
pub fn classify_c4(
    cg: &ColoredGraph,
    cycle: [u32; 4],
    anchor: u32,
) -> Result<CycleClass, DetectError> {
    let [a, b, c, d] = cycle;
    let edge_colors = [
        cg.color_of(a, b),
        cg.color_of(b, c),
        cg.color_of(c, d),
        cg.color_of(d, a),
    ];
    let mut colors = [0u32; 4];
    for (slot, ec) in colors.iter_mut().zip(edge_colors) {
        *slot = ec.ok_or(DetectError::InvalidParameter("cycle edge absent from host"))?;
    }
    let pos = cycle
        .iter()
        .position(|&v| v == anchor)
        .ok_or(DetectError::InvalidParameter("anchor not on cycle"))?;
    let mut distinct = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    Ok(match distinct.len() {
        0..=2 => CycleClass::Bichromatic,
        3 => CycleClass::Trichromatic,
        _ => {
            // The two cycle edges avoiding the anchor: edges are indexed
            // ab=0, bc=1, cd=2, da=3; vertex at position p touches edges
            // p and (p + 3) % 4.
            let away = [(pos + 1) % 4, (pos + 2) % 4];
            let incident = cg.color_degree_profile(anchor);
            if away.iter().all(|&i| incident.contains(&colors[i])) {
                CycleClass::RainbowAnchored
            } else {
                CycleClass::RainbowUnanchored
            }
        }
    })
}

/// True iff the coloring uses at most `t + 1` colors and no 4-cycle is
/// trichromatic.
pub fn check_good_coloring(cg: &ColoredGraph, t: u32) -> bool {
    if cg.color_count() > t as usize + 1 {
        return false;
    }
    !cg.graph().visit_c4(&mut |[a, b, c, d]| {
        let cols = [
            cg.color_of(a, b).unwrap(),
            cg.color_of(b, c).unwrap(),
            cg.color_of(c, d).unwrap(),
            cg.color_of(d, a).unwrap(),
        ];
        let mut distinct = cols.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        distinct.len() == 3
    })
}

/// The partial color correspondence from `u` toward `v`: for each common
/// neighbor `w`, the color `c(uw)` maps to `c(vw)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub u: u32,
    pub v: u32,
    pub map: BTreeMap<u32, u32>,
    /// Image set equals domain set.
    pub is_bijection: bool,
    /// Domain and image both equal `im(c)` minus the color of `uv` (when
    /// that edge exists), with no fixed point.
    pub is_derangement: bool,
    /// Fixed-point-free involution: a product of disjoint transpositions.
    pub is_transposition_involution: bool,
}

impl SigmaReport {
    /// The disjoint transpositions `(a b)` with `a < b`, when the map is a
    /// fixed-point-free involution.
    pub fn transpositions(&self) -> Option<Vec<(u32, u32)>> {
        if !self.is_transposition_involution {
            return None;
        }
        let mut out: Vec<(u32, u32)> = self
            .map
            .iter()
            .filter(|&(&a, &b)| a < b)
            .map(|(&a, &b)| (a, b))
            .collect();
        out.sort_unstable();
        Some(out)
    }
}

/// Computes the color correspondence over `N(u) ∩ N(v)` and reports its
/// algebraic shape.
pub fn extract_sigma(cg: &ColoredGraph, u: u32, v: u32) -> Result<SigmaReport, DetectError> {
    ensure_proper(cg)?;
    if u == v {
        return Err(DetectError::InvalidParameter("sigma needs distinct vertices"));
    }
    let common = cg.graph().neighbors(u).intersection(cg.graph().neighbors(v));
    let mut map = BTreeMap::new();
    for w in common.iter() {
        map.insert(cg.color_of(u, w).unwrap(), cg.color_of(v, w).unwrap());
    }
    let domain: BTreeSet<u32> = map.keys().copied().collect();
    let image: BTreeSet<u32> = map.values().copied().collect();
    let is_bijection = domain == image;
    let mut expected = cg.palette();
    if let Some(cuv) = cg.color_of(u, v) {
        expected.remove(&cuv);
    }
    let fixed_point_free = map.iter().all(|(a, b)| a != b);
    let is_derangement = domain == expected && image == expected && fixed_point_free;
    let is_transposition_involution = !map.is_empty()
        && fixed_point_free
        && map
            .iter()
            .all(|(a, b)| map.get(b).is_some_and(|back| back == a));
    Ok(SigmaReport {
        u,
        v,
        map,
        is_bijection,
        is_derangement,
        is_transposition_involution,
    })
}

/// Degree census of a host with at most `t + 2` vertices, plus whether the
/// structural conclusion holds: at most two vertices of degree `t + 1`,
/// and if exactly two, every other vertex has degree at most `t - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStructureReport {
    pub at_t_plus_1: usize,
    pub at_t: usize,
    pub below_t: usize,
    pub structure_holds: bool,
}

pub fn degree_structure_report(
    cg: &ColoredGraph,
    t: u32,
) -> Result<DegreeStructureReport, DetectError> {
    let g = cg.graph();
    if g.n() > t as usize + 2 {
        return Err(DetectError::InvalidParameter(
            "degree structure report needs a host on at most t + 2 vertices",
        ));
    }
    let mut at_t_plus_1 = 0;
    let mut at_t = 0;
    let mut below_t = 0;
    for v in 0..g.n() as u32 {
        let d = g.degree(v);
        if d == t as usize + 1 {
            at_t_plus_1 += 1;
        } else if d == t as usize {
            at_t += 1;
        } else {
            below_t += 1;
        }
    }
    let structure_holds = at_t_plus_1 <= 2 && (at_t_plus_1 < 2 || at_t == 0);
    Ok(DegreeStructureReport {
        at_t_plus_1,
        at_t,
        below_t,
        structure_holds,
    })
}
