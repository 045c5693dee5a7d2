//! Certified exhaustive search: find a rainbow-broom-free proper coloring
//! of a host or prove none exists. Generic mode branches depth-first over
//! edges with canonical color introduction (new color id = used + 1),
//! which covers every proper partition into at most `palette_cap` classes
//! exactly once. NearFactorization mode (see [`near`]) branches over color
//! classes of odd complete hosts. Witnesses re-verify end-to-end before a
//! certificate is emitted; exhaustion certificates come only from
//! deterministic sequential runs.

mod factorize;
mod near;

pub use factorize::{
    colorings_isomorphic, enumerate_one_factorizations, reduce_by_vertex_isomorphism,
};
pub use near::{
    build_bichromatic_p4_rule, lemma_certified_prune_registry, near_factorization_search,
    nf_search_with_rule, CaseCertificate, CertifiedRule,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::ColoredGraph;
use crate::detect::{find_rainbow_broom, BroomPattern};
use crate::graph::Graph;

/// Hosts above this order are rejected by the search engine.
pub const HOST_GUARD: usize = 16;
/// Color masks are 128 bits wide.
pub const PALETTE_GUARD: u32 = 120;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    InvalidParameter(String),
    Internal(String),
    /// A cooperative cancellation flag was raised mid-run.
    Cancelled,
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            SearchError::Internal(msg) => write!(f, "internal error: {msg}"),
            SearchError::Cancelled => write!(f, "search cancelled"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Generic,
    NearFactorization,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Generic => "generic",
            SearchMode::NearFactorization => "near-factorization",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PruneRules {
    pub c4: bool,
    pub broom_capacity: bool,
    pub lemma_certified: bool,
}

impl PruneRules {
    pub fn none() -> Self {
        PruneRules::default()
    }

    pub fn all() -> Self {
        PruneRules {
            c4: true,
            broom_capacity: true,
            lemma_certified: true,
        }
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.c4 {
            parts.push("c4");
        }
        if self.broom_capacity {
            parts.push("broom-capacity");
        }
        if self.lemma_certified {
            parts.push("lemma-certified");
        }
        if parts.is_empty() {
            String::from("none")
        } else {
            parts.join(",")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Least-index uncolored edge next (default; required for audits and
    /// branch prefixes).
    Canonical,
    /// Uncolored edge with the fewest allowed colors next, ties by index.
    /// Verdicts are order-independent; only statistics and which witness
    /// is found first change.
    MostConstrained,
}

impl fmt::Display for EdgeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeOrder::Canonical => "canonical",
            EdgeOrder::MostConstrained => "most-constrained",
        })
    }
}

#[derive(Clone)]
pub struct SearchConfig {
    pub host: Graph,
    pub host_label: String,
    pub t: u32,
    pub mode: SearchMode,
    pub palette_cap: u32,
    pub rules: PruneRules,
    pub order: EdgeOrder,
    pub deterministic: bool,
    /// Forced leading branch decisions `(edge index, color)`, used for
    /// work splitting. Entries must match the canonical branching order.
    pub prefix: Vec<(usize, u32)>,
}

impl SearchConfig {
    /// Default palette cap: `n - 1` (even) or `n` (odd) colors on a
    /// complete host via the matching recoloring reduction; the full edge
    /// count on anything else.
    pub fn default_palette_cap(host: &Graph) -> u32 {
        if host.is_complete() && host.n() >= 2 {
            if host.n() % 2 == 0 {
                host.n() as u32 - 1
            } else {
                host.n() as u32
            }
        } else {
            host.edge_count() as u32
        }
    }

    /// Generic-mode config with default cap and the prune rules that
    /// qualify on this host.
    pub fn generic(host: Graph, host_label: &str, t: u32) -> SearchConfig {
        let palette_cap = Self::default_palette_cap(&host);
        let rules = PruneRules {
            c4: c4_rule_qualifies(&host, t),
            broom_capacity: true,
            lemma_certified: false,
        };
        SearchConfig {
            host,
            host_label: String::from(host_label),
            t,
            mode: SearchMode::Generic,
            palette_cap,
            rules,
            order: EdgeOrder::Canonical,
            deterministic: true,
            prefix: Vec::new(),
        }
    }

    /// NearFactorization config on the odd complete host `K_n` with
    /// `t = n - 1`.
    pub fn near_factorization(n: usize) -> Result<SearchConfig, SearchError> {
        if n % 2 == 0 || n < 5 {
            return Err(SearchError::InvalidParameter(String::from(
                "near-factorization mode needs an odd complete host of order >= 5",
            )));
        }
        let host = Graph::clique(n)
            .map_err(|e| SearchError::InvalidParameter(format!("bad host: {e}")))?;
        Ok(SearchConfig {
            host,
            host_label: format!("clique:{n}"),
            t: n as u32 - 1,
            mode: SearchMode::NearFactorization,
            palette_cap: n as u32,
            rules: PruneRules {
                c4: true,
                broom_capacity: true,
                lemma_certified: false,
            },
            order: EdgeOrder::Canonical,
            deterministic: true,
            prefix: Vec::new(),
        })
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.t < 3 {
            return Err(SearchError::InvalidParameter(String::from("t must be >= 3")));
        }
        if self.host.n() > HOST_GUARD {
            return Err(SearchError::InvalidParameter(format!(
                "host order {} exceeds the engine guard of {HOST_GUARD}",
                self.host.n()
            )));
        }
        if self.palette_cap > PALETTE_GUARD {
            return Err(SearchError::InvalidParameter(format!(
                "palette cap {} exceeds {PALETTE_GUARD}",
                self.palette_cap
            )));
        }
        if (self.palette_cap as usize) < self.host.max_degree() {
            return Err(SearchError::InvalidParameter(String::from(
                "palette cap below the maximum degree cannot be proper",
            )));
        }
        if !self.deterministic {
            return Err(SearchError::InvalidParameter(String::from(
                "only deterministic runs can emit certificates; \
                 nondeterministic hunting is driven by splitting prefixes",
            )));
        }
        if !self.prefix.is_empty() && !matches!(self.order, EdgeOrder::Canonical) {
            return Err(SearchError::InvalidParameter(String::from(
                "branch prefixes require the canonical edge order",
            )));
        }
        match self.mode {
            SearchMode::Generic => {
                if self.rules.c4 && !c4_rule_qualifies(&self.host, self.t) {
                    return Err(SearchError::InvalidParameter(String::from(
                        "C4 rule enabled on a host that does not guarantee \
                         t - 2 off-cycle neighbors at every cycle vertex",
                    )));
                }
            }
            SearchMode::NearFactorization => {
                if !self.host.is_complete() || self.host.n() % 2 == 0 || self.host.n() < 5 {
                    return Err(SearchError::InvalidParameter(String::from(
                        "near-factorization mode needs an odd complete host",
                    )));
                }
                if self.t as usize != self.host.n() - 1 {
                    return Err(SearchError::InvalidParameter(String::from(
                        "near-factorization mode fixes t = n - 1",
                    )));
                }
                if self.palette_cap as usize != self.host.n() {
                    return Err(SearchError::InvalidParameter(String::from(
                        "near-factorization mode fixes the palette cap to n",
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Whether the generic C4 rule is justified on this host: every 4-cycle
/// vertex must keep at least `t - 2` neighbors off the cycle.
pub fn c4_rule_qualifies(host: &Graph, t: u32) -> bool {
    !host.visit_c4(&mut |[a, b, c, d]| {
        [a, b, c, d].iter().any(|&v| {
            let on_cycle = [a, b, c, d]
                .iter()
                .filter(|&&w| w != v && host.has_edge(v, w))
                .count();
            host.degree(v) - on_cycle < t as usize - 2
        })
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_c4: u64,
    pub pruned_broom_capacity: u64,
    pub pruned_bichromatic_p4: u64,
    pub max_depth: u32,
    /// Filled in by the driving layer; excluded from determinism checks.
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(ColoredGraph),
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigEcho {
    pub host_label: String,
    pub t: u32,
    pub ell: u32,
    pub mode: SearchMode,
    pub palette_cap: u32,
    pub rules: String,
    pub order: EdgeOrder,
    pub restriction: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub config: ConfigEcho,
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    /// Trusted reductions the verdict relies on, named.
    pub assumptions: Vec<&'static str>,
    pub engine: String,
}

impl SearchCertificate {
    /// Equality up to wall time, which is the only nondeterministic field.
    pub fn deterministic_eq(&self, other: &SearchCertificate) -> bool {
        let strip = |s: &SearchStats| SearchStats {
            wall_ms: 0,
            ..s.clone()
        };
        self.config == other.config
            && self.outcome == other.outcome
            && strip(&self.stats) == strip(&other.stats)
            && self.assumptions == other.assumptions
            && self.engine == other.engine
    }
}

/// Partial edge coloring: `0` means uncolored; introduced color ids always
/// form the prefix `1..=used`.
#[derive(Clone)]
pub struct PartialColoring {
    colors: Vec<u32>,
    used: u32,
    masks: Vec<u128>,
    colored_degree: Vec<u32>,
    uncolored_degree: Vec<u32>,
}

impl PartialColoring {
    pub fn new(host: &Graph) -> PartialColoring {
        PartialColoring {
            colors: vec![0; host.edge_count()],
            used: 0,
            masks: vec![0; host.n()],
            colored_degree: vec![0; host.n()],
            uncolored_degree: (0..host.n() as u32)
                .map(|v| host.degree(v) as u32)
                .collect(),
        }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn used(&self) -> u32 {
        self.used
    }

    pub fn color_allowed(&self, host: &Graph, e: usize, c: u32) -> bool {
        let (u, v) = host.edge_at(e);
        let bit = 1u128 << (c - 1);
        self.masks[u as usize] & bit == 0 && self.masks[v as usize] & bit == 0
    }

    pub fn assign(&mut self, host: &Graph, e: usize, c: u32) {
        debug_assert_eq!(self.colors[e], 0);
        debug_assert!(c >= 1 && c <= self.used + 1);
        let (u, v) = host.edge_at(e);
        let bit = 1u128 << (c - 1);
        self.colors[e] = c;
        self.masks[u as usize] |= bit;
        self.masks[v as usize] |= bit;
        self.colored_degree[u as usize] += 1;
        self.colored_degree[v as usize] += 1;
        self.uncolored_degree[u as usize] -= 1;
        self.uncolored_degree[v as usize] -= 1;
        if c > self.used {
            self.used = c;
        }
    }

    pub fn unassign(&mut self, host: &Graph, e: usize) {
        let c = self.colors[e];
        debug_assert_ne!(c, 0);
        let (u, v) = host.edge_at(e);
        let bit = 1u128 << (c - 1);
        self.colors[e] = 0;
        self.masks[u as usize] &= !bit;
        self.masks[v as usize] &= !bit;
        self.colored_degree[u as usize] -= 1;
        self.colored_degree[v as usize] -= 1;
        self.uncolored_degree[u as usize] += 1;
        self.uncolored_degree[v as usize] += 1;
        if c == self.used && !self.colors.contains(&c) {
            self.used -= 1;
        }
    }

    fn uncolored_total(&self) -> usize {
        self.colors.iter().filter(|&&c| c == 0).count()
    }

    fn colored_total(&self) -> usize {
        self.colors.len() - self.uncolored_total()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneVerdict {
    Keep,
    Prune { rule: &'static str },
}

fn distinct4(colors: [u32; 4]) -> usize {
    let mut d = colors.to_vec();
    d.sort_unstable();
    d.dedup();
    d.len()
}

/// The C4 rule as a standalone verdict over a partial state: prunes a
/// fully colored trichromatic 4-cycle, or a fully colored rainbow 4-cycle
/// one of whose anchors has a complete incident star missing a required
/// away-edge color. Errors if the host does not qualify for the rule.
pub fn apply_c4_prune(
    state: &PartialColoring,
    host: &Graph,
    t: u32,
) -> Result<PruneVerdict, SearchError> {
    if !c4_rule_qualifies(host, t) {
        return Err(SearchError::InvalidParameter(String::from(
            "C4 rule enabled on a non-qualifying host",
        )));
    }
    let mut verdict = PruneVerdict::Keep;
    host.visit_c4(&mut |quad| {
        let Some(colors) = quad_colors(state, host, quad) else {
            return false;
        };
        if c4_quad_prunes(state, quad, colors) {
            verdict = PruneVerdict::Prune { rule: "c4" };
            true
        } else {
            false
        }
    });
    Ok(verdict)
}

fn quad_colors(state: &PartialColoring, host: &Graph, quad: [u32; 4]) -> Option<[u32; 4]> {
    let [a, b, c, d] = quad;
    let mut out = [0u32; 4];
    for (slot, (x, y)) in out.iter_mut().zip([(a, b), (b, c), (c, d), (d, a)]) {
        let col = state.colors[host.index_of(x, y)?];
        if col == 0 {
            return None;
        }
        *slot = col;
    }
    Some(out)
}

/// Shared decision logic for one fully colored quad.
fn c4_quad_prunes(state: &PartialColoring, quad: [u32; 4], colors: [u32; 4]) -> bool {
    match distinct4(colors) {
        3 => true,
        4 => quad.iter().enumerate().any(|(pos, &anchor)| {
            // Anchor's full star must be colored before its incident set
            // is conclusive.
            if state.uncolored_degree[anchor as usize] != 0 {
                return false;
            }
            let away = [(pos + 1) % 4, (pos + 2) % 4];
            away.iter().any(|&i| {
                let bit = 1u128 << (colors[i] - 1);
                state.masks[anchor as usize] & bit == 0
            })
        }),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Generic engine
// ---------------------------------------------------------------------------

struct Engine<'a> {
    host: &'a Graph,
    t: u32,
    cap: u32,
    rules: PruneRules,
    order: EdgeOrder,
    m: usize,
    ends: Vec<(u32, u32)>,
    /// Edge index by vertex pair; usize::MAX where no edge.
    eix: Vec<usize>,
    n: usize,
    /// 4-cycles through each edge, pre-resolved to (vertex quad, edge quad).
    c4_through: Vec<Vec<([u32; 4], [usize; 4])>>,
    state: PartialColoring,
    stats: SearchStats,
    audit: Option<AuditRecorder>,
    cancel: Option<&'a core::sync::atomic::AtomicBool>,
}

struct AuditRecorder {
    rule: &'static str,
    one_in: u64,
    offset: u64,
    seen: u64,
    samples: Vec<Vec<u32>>,
}

impl<'a> Engine<'a> {
    fn new(config: &'a SearchConfig) -> Engine<'a> {
        let host = &config.host;
        let n = host.n();
        let m = host.edge_count();
        let mut eix = vec![usize::MAX; n * n];
        for (i, &(u, v)) in host.edges().iter().enumerate() {
            eix[u as usize * n + v as usize] = i;
            eix[v as usize * n + u as usize] = i;
        }
        let mut c4_through = vec![Vec::new(); m];
        host.visit_c4(&mut |quad| {
            let [a, b, c, d] = quad;
            let edges = [
                eix[a as usize * n + b as usize],
                eix[b as usize * n + c as usize],
                eix[c as usize * n + d as usize],
                eix[d as usize * n + a as usize],
            ];
            for e in edges {
                c4_through[e].push((quad, edges));
            }
            false
        });
        Engine {
            host,
            t: config.t,
            cap: config.palette_cap,
            rules: config.rules,
            order: config.order,
            m,
            ends: host.edges().to_vec(),
            eix,
            n,
            c4_through,
            state: PartialColoring::new(host),
            stats: SearchStats::default(),
            audit: None,
            cancel: None,
        }
    }

    fn color_between(&self, u: u32, v: u32) -> u32 {
        let e = self.eix[u as usize * self.n + v as usize];
        if e == usize::MAX {
            0
        } else {
            self.state.colors[e]
        }
    }

    /// Next edge to branch on, or None at a leaf.
    fn pick_edge(&self) -> Option<usize> {
        match self.order {
            EdgeOrder::Canonical => self.state.colors.iter().position(|&c| c == 0),
            EdgeOrder::MostConstrained => {
                let limit = self.cap.min(self.state.used + 1);
                let mut best: Option<(usize, usize)> = None;
                for e in 0..self.m {
                    if self.state.colors[e] != 0 {
                        continue;
                    }
                    let choices = (1..=limit)
                        .filter(|&c| self.state.color_allowed(self.host, e, c))
                        .count();
                    if best.map_or(true, |(_, b)| choices < b) {
                        best = Some((e, choices));
                        if choices == 0 {
                            break;
                        }
                    }
                }
                best.map(|(e, _)| e)
            }
        }
    }

    /// Exact look-ahead: every endpoint must have enough free colors for
    /// its uncolored edges. Never cuts a completable state.
    fn endpoints_feasible(&self, e: usize) -> bool {
        let (u, v) = self.ends[e];
        for w in [u, v] {
            let free = self.cap - self.state.masks[w as usize].count_ones();
            if free < self.state.uncolored_degree[w as usize] {
                return false;
            }
        }
        true
    }

    /// Prune checks after assigning edge `e`. Returns the rule that fired.
    fn prune_after(&self, e: usize) -> Option<&'static str> {
        if self.rules.c4 {
            for &(quad, edges) in &self.c4_through[e] {
                let mut colors = [0u32; 4];
                let mut complete = true;
                for (slot, &ei) in colors.iter_mut().zip(&edges) {
                    *slot = self.state.colors[ei];
                    if *slot == 0 {
                        complete = false;
                        break;
                    }
                }
                if complete && c4_quad_prunes(&self.state, quad, colors) {
                    return Some("c4");
                }
            }
        }
        if self.rules.broom_capacity
            && self.state.colored_total() >= self.t as usize
            && self.completed_broom_through(e)
        {
            return Some("broom-capacity");
        }
        None
    }

    /// Whether a fully colored rainbow broom (handle length 3) uses the
    /// just-colored edge `e`. Sound as a prune: colors never change once
    /// assigned, so any completion keeps the copy.
    fn completed_broom_through(&self, e: usize) -> bool {
        let (eu, ev) = self.ends[e];
        let need = self.t as usize - 3;
        for (a, b) in [(eu, ev), (ev, eu)] {
            let cab = self.state.colors[e];
            // e as the first handle edge: a-b-x-y.
            for x in self.colored_neighbors(b) {
                if x == a {
                    continue;
                }
                let cbx = self.color_between(b, x);
                if cbx == cab {
                    continue;
                }
                for y in self.colored_neighbors(x) {
                    if y == a || y == b {
                        continue;
                    }
                    let cxy = self.color_between(x, y);
                    if cxy == cab || cxy == cbx {
                        continue;
                    }
                    if self.bristles_at(y, [a, b, x], [cab, cbx, cxy]) >= need {
                        return true;
                    }
                }
            }
            // e as the middle handle edge: x-a-b-y.
            for x in self.colored_neighbors(a) {
                if x == b {
                    continue;
                }
                let cxa = self.color_between(x, a);
                if cxa == cab {
                    continue;
                }
                for y in self.colored_neighbors(b) {
                    if y == x || y == a {
                        continue;
                    }
                    let cby = self.color_between(b, y);
                    if cby == cxa || cby == cab {
                        continue;
                    }
                    if self.bristles_at(y, [x, a, b], [cxa, cab, cby]) >= need {
                        return true;
                    }
                }
            }
            // e as the last handle edge: x-y-a-b, bristles at b.
            for y in self.colored_neighbors(a) {
                if y == b {
                    continue;
                }
                let cya = self.color_between(y, a);
                if cya == cab {
                    continue;
                }
                for x in self.colored_neighbors(y) {
                    if x == a || x == b {
                        continue;
                    }
                    let cxy = self.color_between(x, y);
                    if cxy == cya || cxy == cab {
                        continue;
                    }
                    if self.bristles_at(b, [x, y, a], [cxy, cya, cab]) >= need {
                        return true;
                    }
                }
            }
            // e as a bristle at base a with tip b.
            if need > 0 {
                for p2 in self.colored_neighbors(a) {
                    if p2 == b {
                        continue;
                    }
                    let c2 = self.color_between(p2, a);
                    if c2 == cab {
                        continue;
                    }
                    for p1 in self.colored_neighbors(p2) {
                        if p1 == a || p1 == b {
                            continue;
                        }
                        let c1 = self.color_between(p1, p2);
                        if c1 == c2 || c1 == cab {
                            continue;
                        }
                        for p0 in self.colored_neighbors(p1) {
                            if p0 == a || p0 == b || p0 == p2 {
                                continue;
                            }
                            let c0 = self.color_between(p0, p1);
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
        }
        false
    }

    fn colored_neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.host
            .neighbors(v)
            .iter()
            .filter(move |&w| self.color_between(v, w) != 0)
    }

    fn bristles_at(&self, base: u32, path: [u32; 3], path_colors: [u32; 3]) -> usize {
        self.colored_neighbors(base)
            .filter(|&w| !path.contains(&w) && !path_colors.contains(&self.color_between(base, w)))
            .count()
    }

    fn dfs(&mut self, depth: usize) -> Result<Option<ColoredGraph>, SearchError> {
        if self.stats.nodes & 0xfff == 0 {
            if let Some(flag) = self.cancel {
                if flag.load(core::sync::atomic::Ordering::Relaxed) {
                    return Err(SearchError::Cancelled);
                }
            }
        }
        let Some(e) = self.pick_edge() else {
            return self.leaf();
        };
        let limit = self.cap.min(self.state.used + 1);
        for c in 1..=limit {
            if !self.state.color_allowed(self.host, e, c) {
                continue;
            }
            self.state.assign(self.host, e, c);
            self.stats.nodes += 1;
            self.stats.max_depth = self.stats.max_depth.max(depth as u32 + 1);
            let mut descend = self.endpoints_feasible(e);
            if descend {
                if let Some(rule) = self.prune_after(e) {
                    self.count_prune(rule);
                    descend = false;
                }
            }
            if descend {
                if let Some(witness) = self.dfs(depth + 1)? {
                    self.state.unassign(self.host, e);
                    return Ok(Some(witness));
                }
            }
            self.state.unassign(self.host, e);
        }
        Ok(None)
    }

    fn count_prune(&mut self, rule: &'static str) {
        match rule {
            "c4" => self.stats.pruned_c4 += 1,
            "broom-capacity" => self.stats.pruned_broom_capacity += 1,
            _ => self.stats.pruned_bichromatic_p4 += 1,
        }
        if let Some(rec) = &mut self.audit {
            if rec.rule == rule {
                if rec.seen % rec.one_in == rec.offset {
                    rec.samples.push(self.state.colors.clone());
                }
                rec.seen += 1;
            }
        }
    }

    fn leaf(&mut self) -> Result<Option<ColoredGraph>, SearchError> {
        let cg = ColoredGraph::new(self.host.clone(), self.state.colors.clone())
            .map_err(|e| SearchError::Internal(format!("leaf assembly failed: {e}")))?;
        let cg = if cg.is_canonical() {
            cg
        } else {
            cg.canonicalize_colors()
        };
        if !cg.check_proper().is_proper() {
            return Err(SearchError::Internal(String::from(
                "engine produced an improper leaf",
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

    /// Returns false if the prefix dead-ends (conflict or prune).
    fn apply_prefix(&mut self, prefix: &[(usize, u32)]) -> Result<bool, SearchError> {
        for &(e, c) in prefix {
            let expected = self.pick_edge();
            if expected != Some(e) {
                return Err(SearchError::InvalidParameter(format!(
                    "prefix edge {e} does not match the branching order"
                )));
            }
            if c < 1 || c > self.cap.min(self.state.used + 1) {
                return Err(SearchError::InvalidParameter(format!(
                    "prefix color {c} out of canonical range"
                )));
            }
            if !self.state.color_allowed(self.host, e, c) {
                return Ok(false);
            }
            self.state.assign(self.host, e, c);
            self.stats.nodes += 1;
            self.stats.max_depth = self.stats.max_depth.max(self.state.colored_total() as u32);
            if !self.endpoints_feasible(e) {
                return Ok(false);
            }
            if let Some(rule) = self.prune_after(e) {
                self.count_prune(rule);
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn generic_assumptions(config: &SearchConfig) -> Vec<&'static str> {
    let mut out = Vec::new();
    if config.host.is_complete() && (config.palette_cap as usize) < config.host.edge_count() {
        out.push("palette-reduction");
    }
    out
}

pub(crate) fn echo(config: &SearchConfig, restriction: Option<String>) -> ConfigEcho {
    ConfigEcho {
        host_label: config.host_label.clone(),
        t: config.t,
        ell: 3,
        mode: config.mode,
        palette_cap: config.palette_cap,
        rules: config.rules.summary(),
        order: config.order,
        restriction,
    }
}

fn generic_search(config: &SearchConfig) -> Result<SearchCertificate, SearchError> {
    generic_search_cancellable(config, None)
}

fn generic_search_cancellable(
    config: &SearchConfig,
    cancel: Option<&core::sync::atomic::AtomicBool>,
) -> Result<SearchCertificate, SearchError> {
    let mut engine = Engine::new(config);
    engine.cancel = cancel;
    let outcome = if engine.apply_prefix(&config.prefix)? {
        match engine.dfs(config.prefix.len())? {
            Some(witness) => SearchOutcome::Witness(witness),
            None => SearchOutcome::Exhausted,
        }
    } else {
        SearchOutcome::Exhausted
    };
    let restriction = if config.prefix.is_empty() {
        None
    } else {
        Some(format!("prefix:{:?}", config.prefix))
    };
    Ok(SearchCertificate {
        config: echo(config, restriction),
        outcome,
        stats: engine.stats,
        assumptions: generic_assumptions(config),
        engine: String::from(crate::ENGINE_VERSION),
    })
}

/// Runs the configured search to a certificate. Witness certificates
/// re-verify (properness plus a clean detector pass) before this returns.
pub fn search(config: &SearchConfig) -> Result<SearchCertificate, SearchError> {
    config.validate()?;
    match config.mode {
        SearchMode::Generic => generic_search(config),
        SearchMode::NearFactorization => near::nf_search(config, None),
    }
}

/// Generic-mode search that polls a cooperative cancellation flag; used
/// by parallel witness drivers to stop losing branches early.
pub fn search_with_cancel(
    config: &SearchConfig,
    cancel: &core::sync::atomic::AtomicBool,
) -> Result<SearchCertificate, SearchError> {
    config.validate()?;
    match config.mode {
        SearchMode::Generic => generic_search_cancellable(config, Some(cancel)),
        SearchMode::NearFactorization => Err(SearchError::InvalidParameter(String::from(
            "cancellable runs apply to generic mode only",
        ))),
    }
}

/// Enumerates the feasible branch decisions at the root (or below a given
/// prefix) without descending: the work units for parallel hunting.
pub fn branch_prefixes(
    config: &SearchConfig,
    below: &[(usize, u32)],
) -> Result<Vec<Vec<(usize, u32)>>, SearchError> {
    config.validate()?;
    if config.mode != SearchMode::Generic {
        return Err(SearchError::InvalidParameter(String::from(
            "branch splitting applies to generic mode only",
        )));
    }
    let mut engine = Engine::new(config);
    if !engine.apply_prefix(below)? {
        return Ok(Vec::new());
    }
    let Some(e) = engine.pick_edge() else {
        return Ok(Vec::new());
    };
    let limit = engine.cap.min(engine.state.used + 1);
    let mut out = Vec::new();
    for c in 1..=limit {
        if engine.state.color_allowed(engine.host, e, c) {
            let mut prefix = below.to_vec();
            prefix.push((e, c));
            out.push(prefix);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Prune audit
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditRule {
    C4,
    BroomCapacity,
}

impl AuditRule {
    fn name(&self) -> &'static str {
        match self {
            AuditRule::C4 => "c4",
            AuditRule::BroomCapacity => "broom-capacity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub rule: &'static str,
    pub pruned_total: u64,
    pub sampled: usize,
    /// Sampled pruned states under which a rule-off re-expansion found a
    /// witness. Must be zero for a sound rule.
    pub violations: usize,
}

/// Re-expands roughly one in `one_in` of the states pruned by `rule`
/// (seeded sampling) with that rule disabled, and checks that no witness
/// lies beneath any of them. Small hosts only.
pub fn audit_prunes(
    config: &SearchConfig,
    rule: AuditRule,
    one_in: u64,
    seed: u64,
) -> Result<AuditReport, SearchError> {
    config.validate()?;
    if config.mode != SearchMode::Generic {
        return Err(SearchError::InvalidParameter(String::from(
            "prune audits run in generic mode",
        )));
    }
    if config.host.n() > 7 {
        return Err(SearchError::InvalidParameter(String::from(
            "prune audits are limited to hosts with at most 7 vertices",
        )));
    }
    if !matches!(config.order, EdgeOrder::Canonical) {
        return Err(SearchError::InvalidParameter(String::from(
            "prune audits require the canonical edge order",
        )));
    }
    if one_in == 0 {
        return Err(SearchError::InvalidParameter(String::from(
            "sampling rate must be positive",
        )));
    }
    let enabled = match rule {
        AuditRule::C4 => config.rules.c4,
        AuditRule::BroomCapacity => config.rules.broom_capacity,
    };
    if !enabled {
        return Err(SearchError::InvalidParameter(String::from(
            "audited rule is not enabled in this config",
        )));
    }

    let mut rng = crate::SplitMix64::new(seed);
    let offset = rng.below(one_in);
    let mut engine = Engine::new(config);
    engine.audit = Some(AuditRecorder {
        rule: rule.name(),
        one_in,
        offset,
        seen: 0,
        samples: Vec::new(),
    });
    if engine.apply_prefix(&config.prefix)? {
        engine.dfs(config.prefix.len())?;
    }
    let recorder = engine.audit.take().expect("recorder installed above");
    let pruned_total = recorder.seen;
    let mut violations = 0;

    let mut relaxed = config.rules;
    match rule {
        AuditRule::C4 => relaxed.c4 = false,
        AuditRule::BroomCapacity => relaxed.broom_capacity = false,
    }
    let sub_config = SearchConfig {
        rules: relaxed,
        prefix: Vec::new(),
        ..config.clone()
    };
    for snapshot in &recorder.samples {
        let mut sub = Engine::new(&sub_config);
        let mut dead = false;
        for e in 0..snapshot.len() {
            if snapshot[e] == 0 {
                continue;
            }
            sub.state.assign(&sub_config.host, e, snapshot[e]);
            if !sub.endpoints_feasible(e) || sub.prune_after(e).is_some() {
                dead = true;
                break;
            }
        }
        if !dead && sub.dfs(sub.state.colored_total())?.is_some() {
            violations += 1;
        }
    }
    Ok(AuditReport {
        rule: rule.name(),
        pruned_total,
        sampled: recorder.samples.len(),
        violations,
    })
}
