//! Near-factorization search on odd complete hosts with t = n - 1.
//!
//! In this regime a rainbow-free coloring is forced (after the palette
//! reduction) to use exactly n colors, each class a maximum matching
//! missing one vertex, so vertices are labeled by their missing color and
//! vertex relabeling lets the engine fix label(v) = v. The four-cycle fact
//! (an edge {b, c} colored with vertex a's label pins c({a,b}) = label(c)
//! and c({a,c}) = label(b)) is enforced structurally: the engine assigns
//! whole triples {a, b, c}, so a state is a partial partition of vertex
//! pairs into triples. The first class is fixed to a canonical matching,
//! the second is enumerated up to the joint stabilizer of the first class
//! and both distinguished vertices, and deeper levels use no vertex
//! symmetry.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::ColoredGraph;
use crate::detect::{find_rainbow_broom, BroomPattern};
use crate::graph::Graph;

use super::{
    echo, PruneRules, SearchCertificate, SearchConfig, SearchError, SearchMode, SearchOutcome,
    SearchStats,
};

const NONE: u32 = u32::MAX;

/// A constraint on the second color class, used by the certified-rule
/// sub-searches.
#[derive(Clone, Debug)]
pub(crate) struct NfRestriction {
    /// Pairs on the rotating vertices assigned to the second class.
    pub pairs: Vec<(u32, u32)>,
    /// Exact: these are all of the class's free pairs. Partial: the rest
    /// of the class is completed by ordinary branching.
    pub exact: bool,
}

impl NfRestriction {
    fn label(&self) -> String {
        let kind = if self.exact { "m2" } else { "m2-partial" };
        let body: Vec<String> = self
            .pairs
            .iter()
            .map(|&(a, b)| format!("{a}-{b}"))
            .collect();
        format!("{kind}:{}", body.join(","))
    }
}

/// A sub-search exhaustion backing a derived prune rule.
#[derive(Clone, Debug)]
pub struct CaseCertificate {
    pub name: String,
    pub restriction: String,
    pub certificate: SearchCertificate,
}

/// A derived pruning rule, active only while every backing certificate
/// re-verifies against the current engine.
#[derive(Clone, Debug)]
pub struct CertifiedRule {
    pub name: &'static str,
    pub host_label: String,
    pub cases: Vec<CaseCertificate>,
    pub engine: String,
}

impl CertifiedRule {
    pub fn is_valid(&self) -> bool {
        self.engine == crate::ENGINE_VERSION
            && !self.cases.is_empty()
            && self.cases.iter().all(|c| {
                c.certificate.engine == crate::ENGINE_VERSION
                    && matches!(c.certificate.outcome, SearchOutcome::Exhausted)
            })
    }
}

struct NfEngine {
    n: usize,
    t: u32,
    /// third[u*n+v] = the vertex whose label colors edge {u, v}.
    third: Vec<u32>,
    /// partner[v*n+a] = w iff edge {v, w} is colored with label a.
    partner: Vec<u32>,
    covered: usize,
    c4_active: bool,
    broom_active: bool,
    bp4_active: bool,
    stats: SearchStats,
}

impl NfEngine {
    fn new(n: usize, t: u32, rules: PruneRules, bp4_active: bool) -> NfEngine {
        NfEngine {
            n,
            t,
            third: vec![NONE; n * n],
            partner: vec![NONE; n * n],
            covered: 0,
            c4_active: rules.c4,
            broom_active: rules.broom_capacity,
            bp4_active,
            stats: SearchStats::default(),
        }
    }

    fn third_of(&self, u: u32, v: u32) -> u32 {
        self.third[u as usize * self.n + v as usize]
    }

    fn set_third(&mut self, u: u32, v: u32, a: u32) {
        self.third[u as usize * self.n + v as usize] = a;
        self.third[v as usize * self.n + u as usize] = a;
    }

    fn partner_of(&self, v: u32, color: u32) -> u32 {
        self.partner[v as usize * self.n + color as usize]
    }

    fn set_partner(&mut self, v: u32, color: u32, w: u32) {
        self.partner[v as usize * self.n + color as usize] = w;
    }

    fn triple_allowed(&self, a: u32, b: u32, c: u32) -> bool {
        self.third_of(b, c) == NONE && self.third_of(a, b) == NONE && self.third_of(a, c) == NONE
    }

    fn assign_triple(&mut self, a: u32, b: u32, c: u32) {
        debug_assert!(self.triple_allowed(a, b, c));
        self.set_third(b, c, a);
        self.set_third(a, b, c);
        self.set_third(a, c, b);
        self.set_partner(b, a, c);
        self.set_partner(c, a, b);
        self.set_partner(a, c, b);
        self.set_partner(b, c, a);
        self.set_partner(a, b, c);
        self.set_partner(c, b, a);
        self.covered += 3;
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.covered as u32);
    }

    fn unassign_triple(&mut self, a: u32, b: u32, c: u32) {
        self.set_third(b, c, NONE);
        self.set_third(a, b, NONE);
        self.set_third(a, c, NONE);
        self.set_partner(b, a, NONE);
        self.set_partner(c, a, NONE);
        self.set_partner(a, c, NONE);
        self.set_partner(b, c, NONE);
        self.set_partner(a, b, NONE);
        self.set_partner(c, b, NONE);
        self.covered -= 3;
    }

    /// Prune checks after placing triple {a, b, c}; returns the rule name.
    fn prune_after(&self, a: u32, b: u32, c: u32) -> Option<&'static str> {
        let edges = [(b, c, a), (a, b, c), (a, c, b)];
        if self.c4_active {
            for &(x, y, r) in &edges {
                if self.labeled_trichromatic(x, y, r) {
                    return Some("c4");
                }
            }
        }
        if self.bp4_active {
            for &(x, y, r) in &edges {
                if self.bichromatic_p4_through(x, y, r) {
                    return Some("bichromatic-p4");
                }
            }
        }
        if self.broom_active && self.covered >= self.t as usize {
            for &(x, y, r) in &edges {
                if self.completed_broom_through(x, y, r) {
                    return Some("broom-capacity");
                }
            }
        }
        None
    }

    /// An edge {x, y} colored with vertex r's label forbids a trichromatic
    /// cycle r-x-y-d for every fourth vertex d: such a cycle would hand r
    /// a rainbow handle with a full fan of clean bristles. Structural
    /// triple assignment already implies this; the check is kept as a
    /// guard and statistics hook.
    fn labeled_trichromatic(&self, x: u32, y: u32, r: u32) -> bool {
        for (p, q) in [(x, y), (y, x)] {
            // Cycle r-p-q-d with edge colors c(rp), c(pq)=r, c(qd), c(dr).
            let crp = self.third_of(r, p);
            for d in 0..self.n as u32 {
                if d == r || d == p || d == q {
                    continue;
                }
                let cqd = self.third_of(q, d);
                let cdr = self.third_of(d, r);
                if cqd == NONE || cdr == NONE {
                    continue;
                }
                let mut colors = [crp, r, cqd, cdr];
                colors.sort_unstable();
                let mut k = 1;
                for w in colors.windows(2) {
                    if w[0] != w[1] {
                        k += 1;
                    }
                }
                if k == 3 {
                    return true;
                }
            }
        }
        false
    }

    /// Whether the new edge {x, y} (color alpha) closes a path of four
    /// edges alternating between two colors.
    fn bichromatic_p4_through(&self, x: u32, y: u32, alpha: u32) -> bool {
        for (p, q) in [(x, y), (y, x)] {
            // As an end edge: p-q-w-z-v colored alpha, beta, alpha, beta.
            for w in 0..self.n as u32 {
                if w == p || w == q {
                    continue;
                }
                let beta = self.third_of(q, w);
                if beta == NONE {
                    continue;
                }
                let z = self.partner_of(w, alpha);
                if z == NONE || z == p || z == q {
                    continue;
                }
                let v = self.partner_of(z, beta);
                if v == NONE || v == p || v == q || v == w {
                    continue;
                }
                return true;
            }
            // As the second edge: v-p-q-w-z colored gamma, alpha, gamma,
            // alpha.
            for v in 0..self.n as u32 {
                if v == p || v == q {
                    continue;
                }
                let gamma = self.third_of(v, p);
                if gamma == NONE {
                    continue;
                }
                let w = self.partner_of(q, gamma);
                if w == NONE || w == v || w == p {
                    continue;
                }
                let z = self.partner_of(w, alpha);
                if z == NONE || z == v || z == p || z == q {
                    continue;
                }
                return true;
            }
        }
        false
    }

    fn covered_neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.n as u32).filter(move |&w| w != v && self.third_of(v, w) != NONE)
    }

    fn completed_broom_through(&self, eu: u32, ev: u32, color: u32) -> bool {
        let need = self.t as usize - 3;
        for (a, b) in [(eu, ev), (ev, eu)] {
            let cab = color;
            // First handle edge: a-b-x-y.
            for x in self.covered_neighbors(b) {
                if x == a {
                    continue;
                }
                let cbx = self.third_of(b, x);
                if cbx == cab {
                    continue;
                }
                for y in self.covered_neighbors(x) {
                    if y == a || y == b {
                        continue;
                    }
                    let cxy = self.third_of(x, y);
                    if cxy == cab || cxy == cbx {
                        continue;
                    }
                    if self.bristles_at(y, [a, b, x], [cab, cbx, cxy]) >= need {
                        return true;
                    }
                }
            }
            // Middle handle edge: x-a-b-y.
            for x in self.covered_neighbors(a) {
                if x == b {
                    continue;
                }
                let cxa = self.third_of(x, a);
                if cxa == cab {
                    continue;
                }
                for y in self.covered_neighbors(b) {
                    if y == x || y == a {
                        continue;
                    }
                    let cby = self.third_of(b, y);
                    if cby == cxa || cby == cab {
                        continue;
                    }
                    if self.bristles_at(y, [x, a, b], [cxa, cab, cby]) >= need {
                        return true;
                    }
                }
            }
            // Last handle edge: x-y-a-b, bristles at b.
            for y in self.covered_neighbors(a) {
                if y == b {
                    continue;
                }
                let cya = self.third_of(y, a);
                if cya == cab {
                    continue;
                }
                for x in self.covered_neighbors(y) {
                    if x == a || x == b {
                        continue;
                    }
                    let cxy = self.third_of(x, y);
                    if cxy == cya || cxy == cab {
                        continue;
                    }
                    if self.bristles_at(b, [x, y, a], [cxy, cya, cab]) >= need {
                        return true;
                    }
                }
            }
            // As a bristle at base a with tip b.
            for p2 in self.covered_neighbors(a) {
                if p2 == b {
                    continue;
                }
                let c2 = self.third_of(p2, a);
                if c2 == cab {
                    continue;
                }
                for p1 in self.covered_neighbors(p2) {
                    if p1 == a || p1 == b {
                        continue;
                    }
                    let c1 = self.third_of(p1, p2);
                    if c1 == c2 || c1 == cab {
                        continue;
                    }
                    for p0 in self.covered_neighbors(p1) {
                        if p0 == a || p0 == b || p0 == p2 {
                            continue;
                        }
                        let c0 = self.third_of(p0, p1);
                        if c0 == c1 || c0 == c2 || c0 == cab {
                            continue;
                        }
                        if self.bristles_at(a, [p0, p1, p2], [c0, c1, c2]) >= need {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    fn bristles_at(&self, base: u32, path: [u32; 3], path_colors: [u32; 3]) -> usize {
        self.covered_neighbors(base)
            .filter(|&w| !path.contains(&w) && !path_colors.contains(&self.third_of(base, w)))
            .count()
    }

    fn least_uncovered_pair(&self) -> Option<(u32, u32)> {
        for i in 0..self.n as u32 {
            for j in i + 1..self.n as u32 {
                if self.third_of(i, j) == NONE {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn dfs(&mut self, host: &Graph) -> Result<Option<ColoredGraph>, SearchError> {
        let Some((i, j)) = self.least_uncovered_pair() else {
            return self.leaf(host);
        };
        for a in 0..self.n as u32 {
            if a == i || a == j || !self.triple_allowed(a, i, j) {
                continue;
            }
            self.assign_triple(a, i, j);
            match self.prune_after(a, i, j) {
                Some(rule) => self.count_prune(rule),
                None => {
                    if let Some(witness) = self.dfs(host)? {
                        self.unassign_triple(a, i, j);
                        return Ok(Some(witness));
                    }
                }
            }
            self.unassign_triple(a, i, j);
        }
        Ok(None)
    }

    fn count_prune(&mut self, rule: &'static str) {
        match rule {
            "c4" => self.stats.pruned_c4 += 1,
            "broom-capacity" => self.stats.pruned_broom_capacity += 1,
            _ => self.stats.pruned_bichromatic_p4 += 1,
        }
    }

    fn leaf(&mut self, host: &Graph) -> Result<Option<ColoredGraph>, SearchError> {
        let mut colors = Vec::with_capacity(host.edge_count());
        for &(u, v) in host.edges() {
            let a = self.third_of(u, v);
            debug_assert_ne!(a, NONE);
            colors.push(a + 1);
        }
        let cg = ColoredGraph::new(host.clone(), colors)
            .map_err(|e| SearchError::Internal(format!("leaf assembly failed: {e}")))?
            .canonicalize_colors();
        if !cg.check_proper().is_proper() {
            return Err(SearchError::Internal(String::from(
                "near-factorization leaf is improper",
            )));
        }
        let pat = BroomPattern::new(self.t, 3)
            .map_err(|e| SearchError::Internal(format!("bad pattern: {e}")))?;
        match find_rainbow_broom(&cg, pat) {
            Ok(None) => Ok(Some(cg)),
            Ok(Some(_)) => Ok(None),
            Err(e) => Err(SearchError::Internal(format!("leaf detection failed: {e}"))),
        }
    }
}

/// Canonical first class on vertices 1..n: pairs {1,2}, {3,4}, ...
fn first_class_pairs(n: usize) -> Vec<(u32, u32)> {
    (0..(n - 1) / 2)
        .map(|k| (2 * k as u32 + 1, 2 * k as u32 + 2))
        .collect()
}

/// Perfect matchings on the rotating vertices 3..n that avoid the pairs
/// already covered by the first class.
fn second_class_candidates(n: usize) -> Vec<Vec<(u32, u32)>> {
    let verts: Vec<u32> = (3..n as u32).collect();
    let forbidden = first_class_pairs(n);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        verts: &[u32],
        used: &mut Vec<u32>,
        forbidden: &[(u32, u32)],
        current: &mut Vec<(u32, u32)>,
        out: &mut Vec<Vec<(u32, u32)>>,
    ) {
        let Some(&v) = verts.iter().find(|v| !used.contains(v)) else {
            out.push(current.clone());
            return;
        };
        used.push(v);
        for &w in verts {
            if w <= v || used.contains(&w) || forbidden.contains(&(v, w)) {
                continue;
            }
            used.push(w);
            current.push((v, w));
            go(verts, used, forbidden, current, out);
            current.pop();
            used.pop();
        }
        used.pop();
    }
    go(&verts, &mut Vec::new(), &forbidden, &mut current, &mut out);
    out
}

/// The joint stabilizer of the center vertex, both distinguished vertices
/// and the first class: flips of each remaining block and adjacent block
/// swaps, as vertex permutations.
fn stabilizer_generators(n: usize) -> Vec<Vec<u32>> {
    let id: Vec<u32> = (0..n as u32).collect();
    let mut gens = Vec::new();
    let blocks: Vec<(u32, u32)> = first_class_pairs(n)
        .into_iter()
        .filter(|&(a, _)| a >= 3)
        .collect();
    for &(a, b) in &blocks {
        let mut p = id.clone();
        p.swap(a as usize, b as usize);
        gens.push(p);
    }
    for pair in blocks.windows(2) {
        let (a1, b1) = pair[0];
        let (a2, b2) = pair[1];
        let mut p = id.clone();
        p.swap(a1 as usize, a2 as usize);
        p.swap(b1 as usize, b2 as usize);
        gens.push(p);
    }
    gens
}

fn apply_perm(perm: &[u32], pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a as usize], perm[b as usize]);
            (x.min(y), x.max(y))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Lexicographically least matching in the stabilizer orbit.
fn orbit_min(gens: &[Vec<u32>], pairs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut sorted = pairs.to_vec();
    sorted.sort_unstable();
    let mut seen = vec![sorted.clone()];
    let mut frontier = vec![sorted.clone()];
    let mut best = sorted;
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let next = apply_perm(g, &cur);
            if !seen.contains(&next) {
                if next < best {
                    best = next.clone();
                }
                seen.push(next.clone());
                frontier.push(next);
            }
        }
    }
    best
}

/// Cycle lengths of the union of the first-class pairs and a candidate
/// second class over the rotating vertices.
fn union_cycle_lengths(n: usize, candidate: &[(u32, u32)]) -> Vec<usize> {
    let verts: Vec<u32> = (3..n as u32).collect();
    let m1: Vec<(u32, u32)> = first_class_pairs(n)
        .into_iter()
        .filter(|&(a, _)| a >= 3)
        .collect();
    let partner = |pairs: &[(u32, u32)], v: u32| -> u32 {
        pairs
            .iter()
            .find_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("perfect matchings cover the rotating vertices")
    };
    let mut lengths = Vec::new();
    let mut visited: Vec<u32> = Vec::new();
    for &start in &verts {
        if visited.contains(&start) {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        let mut take_m1 = true;
        loop {
            visited.push(v);
            v = if take_m1 {
                partner(&m1, v)
            } else {
                partner(candidate, v)
            };
            take_m1 = !take_m1;
            len += 1;
            if v == start {
                break;
            }
        }
        lengths.push(len);
    }
    lengths
}

struct SecondClassRep {
    pairs: Vec<(u32, u32)>,
    /// True when the union with the first class is all 4-cycles.
    all_quads: bool,
}

fn second_class_reps(n: usize) -> Vec<SecondClassRep> {
    let gens = stabilizer_generators(n);
    let mut reps = Vec::new();
    for cand in second_class_candidates(n) {
        if orbit_min(&gens, &cand) == cand {
            let all_quads = union_cycle_lengths(n, &cand).iter().all(|&l| l == 4);
            reps.push(SecondClassRep {
                pairs: cand,
                all_quads,
            });
        }
    }
    reps
}

fn nf_assumptions() -> Vec<&'static str> {
    vec![
        "palette-reduction",
        "near-factorization-structure",
        "four-cycle-fact",
    ]
}

fn run_nf(
    config: &SearchConfig,
    restriction: Option<&NfRestriction>,
    bp4_active: bool,
) -> Result<SearchCertificate, SearchError> {
    let n = config.host.n();
    let mut engine = NfEngine::new(n, config.t, config.rules, bp4_active);
    // Fix the first class: triples {0, 2k+1, 2k+2}.
    for &(b, c) in &first_class_pairs(n) {
        engine.assign_triple(0, b, c);
    }
    let host = &config.host;
    let mut outcome = SearchOutcome::Exhausted;
    match restriction {
        Some(r) => {
            let mut placed = Vec::new();
            let mut dead = false;
            for &(b, c) in &r.pairs {
                if !engine.triple_allowed(1, b, c) {
                    dead = true;
                    break;
                }
                engine.assign_triple(1, b, c);
                placed.push((b, c));
                if let Some(rule) = engine.prune_after(1, b, c) {
                    engine.count_prune(rule);
                    dead = true;
                    break;
                }
            }
            if !dead {
                if let Some(w) = engine.dfs(host)? {
                    outcome = SearchOutcome::Witness(w);
                }
            }
            for &(b, c) in placed.iter().rev() {
                engine.unassign_triple(1, b, c);
            }
        }
        None => {
            'reps: for rep in second_class_reps(n) {
                if bp4_active && !rep.all_quads {
                    // Subtree certified exhausted by the case certificates.
                    engine.count_prune("bichromatic-p4");
                    continue;
                }
                let mut placed = Vec::new();
                let mut dead = false;
                for &(b, c) in &rep.pairs {
                    debug_assert!(engine.triple_allowed(1, b, c));
                    engine.assign_triple(1, b, c);
                    placed.push((b, c));
                    if let Some(rule) = engine.prune_after(1, b, c) {
                        engine.count_prune(rule);
                        dead = true;
                        break;
                    }
                }
                if !dead {
                    if let Some(w) = engine.dfs(host)? {
                        for &(b, c) in placed.iter().rev() {
                            engine.unassign_triple(1, b, c);
                        }
                        outcome = SearchOutcome::Witness(w);
                        break 'reps;
                    }
                }
                for &(b, c) in placed.iter().rev() {
                    engine.unassign_triple(1, b, c);
                }
            }
        }
    }
    Ok(SearchCertificate {
        config: echo(config, restriction.map(|r| r.label())),
        outcome,
        stats: engine.stats,
        assumptions: nf_assumptions(),
        engine: String::from(crate::ENGINE_VERSION),
    })
}

/// Case-exhaustion sub-searches backing the bichromatic-P4 exclusion on
/// the 11-vertex near-factorization space: every second-class choice whose
/// union with the first class is a single long cycle is exhausted, as is
/// the hexagon configuration that strands one block.
pub fn build_bichromatic_p4_rule() -> Result<CertifiedRule, SearchError> {
    let mut config = SearchConfig::near_factorization(11)?;
    config.rules.lemma_certified = false;
    let mut cases = Vec::new();
    for (i, rep) in second_class_reps(11).iter().enumerate() {
        if rep.all_quads {
            continue;
        }
        let restriction = NfRestriction {
            pairs: rep.pairs.clone(),
            exact: true,
        };
        let cert = run_nf(&config, Some(&restriction), false)?;
        cases.push(CaseCertificate {
            name: format!("case-octagon-{i}"),
            restriction: restriction.label(),
            certificate: cert,
        });
    }
    // The hexagon configuration: three second-class pairs closing a
    // 6-cycle with the first class, stranding the last block.
    let restriction = NfRestriction {
        pairs: vec![(4, 6), (5, 7), (3, 8)],
        exact: false,
    };
    let cert = run_nf(&config, Some(&restriction), false)?;
    cases.push(CaseCertificate {
        name: String::from("case-hexagon"),
        restriction: restriction.label(),
        certificate: cert,
    });
    Ok(CertifiedRule {
        name: "bichromatic-p4",
        host_label: String::from("clique:11"),
        cases,
        engine: String::from(crate::ENGINE_VERSION),
    })
}

/// The derived rules available for a host, each backed by stored
/// sub-search certificates. Empty for hosts with no certified rules.
pub fn lemma_certified_prune_registry(n: usize) -> Result<Vec<CertifiedRule>, SearchError> {
    if n == 11 {
        Ok(vec![build_bichromatic_p4_rule()?])
    } else {
        Ok(Vec::new())
    }
}

pub(crate) fn nf_search(
    config: &SearchConfig,
    restriction: Option<&NfRestriction>,
) -> Result<SearchCertificate, SearchError> {
    let rule = if config.rules.lemma_certified && config.host.n() == 11 {
        Some(build_bichromatic_p4_rule()?)
    } else {
        None
    };
    nf_search_restricted(config, rule.as_ref(), restriction)
}

fn nf_search_restricted(
    config: &SearchConfig,
    rule: Option<&CertifiedRule>,
    restriction: Option<&NfRestriction>,
) -> Result<SearchCertificate, SearchError> {
    let bp4_active = config.rules.lemma_certified
        && rule.is_some_and(|r| r.is_valid() && r.host_label == config.host_label);
    run_nf(config, restriction, bp4_active)
}

/// Near-factorization search with an explicitly supplied certified rule.
/// A missing or invalid rule simply disables the derived prune; the
/// search stays sound without it.
pub fn nf_search_with_rule(
    config: &SearchConfig,
    rule: Option<&CertifiedRule>,
) -> Result<SearchCertificate, SearchError> {
    config.validate()?;
    nf_search_restricted(config, rule, None)
}

/// Searches for a rainbow-broom-free coloring of the odd complete host
/// `K_n` with `t = n - 1` via the near-factorization pipeline.
pub fn near_factorization_search(
    n: usize,
    rules: PruneRules,
) -> Result<SearchCertificate, SearchError> {
    let mut config = SearchConfig::near_factorization(n)?;
    config.rules = rules;
    config.validate()?;
    if config.mode != SearchMode::NearFactorization {
        return Err(SearchError::Internal(String::from("mode drifted")));
    }
    nf_search(&config, None)
}
