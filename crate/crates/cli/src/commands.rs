//! Subcommand implementations. Exit codes are part of the contract:
//! 0 = success / property holds, 1 = property violated or witness of
//! failure (a found broom; an exhausted search), 2 = usage or input
//! error, 3 = internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use broomlab_core::bounds::{bounds_for, general_broom_upper, Coeff};
use broomlab_core::construct::{
    f2_bipartite_coloring, f2_clique_coloring, f3_clique_coloring, odd_clique_coloring,
};
use broomlab_core::detect::{
    check_good_coloring, classify_c4, degree_structure_report, extract_sigma, find_rainbow_broom,
    BroomPattern, CycleClass,
};
use broomlab_core::graph::Graph;
use broomlab_core::search::{
    audit_prunes, search, AuditRule, EdgeOrder, PruneRules, SearchCertificate, SearchConfig,
    SearchMode, SearchOutcome,
};

use crate::format::{read_certificate, read_coloring, write_certificate, write_coloring};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

fn fmt_coeff(c: Coeff) -> String {
    if *c.denom() == 1 {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn load_coloring_file(path: &Path) -> Result<broomlab_core::coloring::ColoredGraph, i32> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_USAGE);
        }
    };
    match read_coloring(&text) {
        Ok(cg) => Ok(cg),
        Err(e) => {
            eprintln!("error: {e}");
            Err(EXIT_USAGE)
        }
    }
}

pub fn cmd_construct(
    family: &str,
    t: Option<u32>,
    s: Option<u32>,
    out: Option<&PathBuf>,
) -> i32 {
    let built = match family {
        "odd-matching" => {
            let Some(t) = t else {
                eprintln!("error: --family odd-matching needs --t");
                return EXIT_USAGE;
            };
            odd_clique_coloring(t).map(|cg| (cg, t, format!("family odd-matching t {t}")))
        }
        "f2-bipartite" => {
            let Some(s) = s else {
                eprintln!("error: --family f2-bipartite needs --s");
                return EXIT_USAGE;
            };
            f2_bipartite_coloring(s).map(|cg| (cg, 1 << s, format!("family f2-bipartite s {s}")))
        }
        "f2-clique" => {
            let Some(s) = s else {
                eprintln!("error: --family f2-clique needs --s");
                return EXIT_USAGE;
            };
            f2_clique_coloring(s).map(|cg| (cg, (1 << s) - 2, format!("family f2-clique s {s}")))
        }
        "f3-clique" => {
            let Some(s) = s else {
                eprintln!("error: --family f3-clique needs --s");
                return EXIT_USAGE;
            };
            f3_clique_coloring(s).map(|cg| (cg, 3u32.pow(s) - 1, format!("family f3-clique s {s}")))
        }
        other => {
            eprintln!(
                "error: unknown family '{other}' (expected odd-matching, f2-bipartite, f2-clique, f3-clique)"
            );
            return EXIT_USAGE;
        }
    };
    let (cg, t, comment) = match built {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = write_coloring(&cg, &[comment, format!("t {t}")]);
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INTERNAL;
            }
            println!(
                "t={t} n={} m={} colors={} -> {}",
                cg.graph().n(),
                cg.graph().edge_count(),
                cg.color_count(),
                path.display()
            );
        }
        None => print!("{text}"),
    }
    EXIT_OK
}

pub fn cmd_verify(input: &Path, t: u32, ell: u32) -> i32 {
    let cg = match load_coloring_file(input) {
        Ok(cg) => cg,
        Err(code) => return code,
    };
    let pat = match BroomPattern::new(t, ell) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match find_rainbow_broom(&cg, pat) {
        Ok(None) => {
            println!("rainbow-free: no rainbow broom with t={t}, ell={ell}");
            EXIT_OK
        }
        Ok(Some(emb)) => {
            println!(
                "rainbow broom found: handle {:?}, bristles {:?}",
                emb.handle, emb.bristles
            );
            EXIT_VIOLATED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn parse_host(spec: &str) -> Result<(Graph, String), String> {
    if let Some(k) = spec.strip_prefix("clique:") {
        let k: usize = k.parse().map_err(|_| format!("bad clique order '{k}'"))?;
        let g = Graph::clique(k).map_err(|e| e.to_string())?;
        return Ok((g, format!("clique:{k}")));
    }
    if let Some(ab) = spec.strip_prefix("biclique:") {
        let parts: Vec<&str> = ab.split(',').collect();
        if parts.len() != 2 {
            return Err("biclique spec needs 'biclique:a,b'".into());
        }
        let a: usize = parts[0].parse().map_err(|_| "bad biclique side")?;
        let b: usize = parts[1].parse().map_err(|_| "bad biclique side")?;
        let g = Graph::biclique(a, b).map_err(|e| e.to_string())?;
        return Ok((g, format!("biclique:{a},{b}")));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let cg = read_coloring(&text).map_err(|e| e.to_string())?;
        return Ok((cg.graph().clone(), format!("file:{path}")));
    }
    Err(format!(
        "unknown host spec '{spec}' (expected clique:k, biclique:a,b, file:path)"
    ))
}

fn parse_rules(spec: Option<&str>, config: &SearchConfig) -> Result<PruneRules, String> {
    match spec {
        None | Some("auto") => Ok(config.rules),
        Some("none") => Ok(PruneRules::none()),
        Some(list) => {
            let mut rules = PruneRules::none();
            for item in list.split(',') {
                match item {
                    "c4" => rules.c4 = true,
                    "broom-capacity" => rules.broom_capacity = true,
                    "lemma-certified" => rules.lemma_certified = true,
                    other => return Err(format!("unknown rule '{other}'")),
                }
            }
            Ok(rules)
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_search(
    host_spec: &str,
    t: u32,
    mode: &str,
    palette_cap: Option<u32>,
    rules: Option<&str>,
    order: &str,
    workers: usize,
    out: Option<&PathBuf>,
    audit: Option<&str>,
    seed: u64,
) -> i32 {
    let (host, host_label) = match parse_host(host_spec) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut config = match mode {
        "generic" => SearchConfig::generic(host, &host_label, t),
        "near-factorization" => {
            let n = host.n();
            match SearchConfig::near_factorization(n) {
                Ok(mut c) => {
                    if !host.is_complete() {
                        eprintln!("error: near-factorization mode needs a complete host");
                        return EXIT_USAGE;
                    }
                    if c.t != t {
                        eprintln!("error: near-factorization mode fixes t = n - 1 = {}", c.t);
                        return EXIT_USAGE;
                    }
                    c.rules.lemma_certified = true;
                    c
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_USAGE;
                }
            }
        }
        other => {
            eprintln!("error: unknown mode '{other}'");
            return EXIT_USAGE;
        }
    };
    if let Some(cap) = palette_cap {
        config.palette_cap = cap;
    }
    config.rules = match parse_rules(rules, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    config.order = match order {
        "canonical" => EdgeOrder::Canonical,
        "most-constrained" => EdgeOrder::MostConstrained,
        other => {
            eprintln!("error: unknown order '{other}'");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }

    let start = Instant::now();
    let mut cert = if workers > 1 && config.mode == SearchMode::Generic {
        match parallel::hunt_then_certify(&config, workers) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
        }
    } else {
        if workers > 1 {
            eprintln!(
                "note: exhaustion-capable runs are sequential; ignoring --workers {workers}"
            );
        }
        match search(&config) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
        }
    };
    cert.stats.wall_ms = start.elapsed().as_millis() as u64;

    let verdict = match &cert.outcome {
        SearchOutcome::Witness(_) => "WITNESS",
        SearchOutcome::Exhausted => "EXHAUSTED",
    };
    println!(
        "{verdict} host={} t={t} nodes={} pruned.c4={} pruned.broom-capacity={} pruned.bichromatic-p4={} depth={} wall_ms={}",
        cert.config.host_label,
        cert.stats.nodes,
        cert.stats.pruned_c4,
        cert.stats.pruned_broom_capacity,
        cert.stats.pruned_bichromatic_p4,
        cert.stats.max_depth,
        cert.stats.wall_ms
    );
    if let Some(path) = out {
        if let Err(e) = fs::write(path, write_certificate(&cert)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
        println!("certificate -> {}", path.display());
    }

    if let Some(rule_name) = audit {
        let rule = match rule_name {
            "c4" => AuditRule::C4,
            "broom-capacity" => AuditRule::BroomCapacity,
            other => {
                eprintln!("error: unknown audit rule '{other}'");
                return EXIT_USAGE;
            }
        };
        match audit_prunes(&config, rule, 100, seed) {
            Ok(report) => {
                println!(
                    "audit rule={} pruned={} sampled={} violations={}",
                    report.rule, report.pruned_total, report.sampled, report.violations
                );
                if report.violations > 0 {
                    eprintln!("error: prune audit found witnesses below pruned states");
                    return EXIT_INTERNAL;
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    }

    match cert.outcome {
        SearchOutcome::Witness(_) => EXIT_OK,
        SearchOutcome::Exhausted => EXIT_VIOLATED,
    }
}

pub fn cmd_analyze(input: &Path, t: u32) -> i32 {
    let cg = match load_coloring_file(input) {
        Ok(cg) => cg,
        Err(code) => return code,
    };
    let mut bichromatic = 0u64;
    let mut trichromatic = 0u64;
    let mut anchored = 0u64;
    let mut unanchored = 0u64;
    for cycle in cg.graph().enumerate_c4() {
        for &anchor in &cycle {
            match classify_c4(&cg, cycle, anchor) {
                Ok(CycleClass::Bichromatic) => bichromatic += 1,
                Ok(CycleClass::Trichromatic) => trichromatic += 1,
                Ok(CycleClass::RainbowAnchored) => anchored += 1,
                Ok(CycleClass::RainbowUnanchored) => unanchored += 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            }
        }
    }
    println!(
        "c4 classes (cycle,anchor pairs): bichromatic={bichromatic} trichromatic={trichromatic} rainbow-anchored={anchored} rainbow-unanchored={unanchored}"
    );

    let n = cg.graph().n() as u32;
    let mut pairs = 0u64;
    let mut bijections = 0u64;
    let mut derangements = 0u64;
    let mut involutions = 0u64;
    let mut empty = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            match extract_sigma(&cg, u, v) {
                Ok(sigma) => {
                    pairs += 1;
                    if sigma.map.is_empty() {
                        empty += 1;
                    }
                    if sigma.is_bijection {
                        bijections += 1;
                    }
                    if sigma.is_derangement {
                        derangements += 1;
                    }
                    if sigma.is_transposition_involution {
                        involutions += 1;
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_INTERNAL;
                }
            }
        }
    }
    println!(
        "sigma over {pairs} pairs: bijections={bijections} derangements={derangements} fpf-involutions={involutions} empty={empty}"
    );

    if cg.graph().n() <= t as usize + 2 {
        match degree_structure_report(&cg, t) {
            Ok(report) => println!(
                "degree structure: at-t+1={} at-t={} below={} holds={}",
                report.at_t_plus_1, report.at_t, report.below_t, report.structure_holds
            ),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
        }
    } else {
        println!(
            "degree structure: n/a (host has {} vertices, more than t + 2 = {})",
            cg.graph().n(),
            t + 2
        );
    }

    println!(
        "good coloring (<= t+1 colors, no trichromatic cycle): {}",
        if check_good_coloring(&cg, t) { "yes" } else { "no" }
    );
    EXIT_OK
}

pub fn cmd_bounds(t: i64) -> i32 {
    let report = match bounds_for(t) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if report.exact() {
        println!(
            "t={t} exact {} (lower: {}, upper: {})",
            fmt_coeff(report.lower),
            report.lower_rule,
            report.upper_rule
        );
    } else {
        println!(
            "t={t} range [{}, {}] (lower: {}, upper: {})",
            fmt_coeff(report.lower),
            fmt_coeff(report.upper),
            report.lower_rule,
            report.upper_rule
        );
    }
    if let Ok(advisory) = general_broom_upper(t, 3) {
        println!("advisory general handle-3 upper: {}", fmt_coeff(advisory));
    }
    EXIT_OK
}

pub fn cmd_certify(cert_path: &Path, rerun: bool) -> i32 {
    let text = match fs::read_to_string(cert_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cert_path.display());
            return EXIT_USAGE;
        }
    };
    let cert = match read_certificate(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    // Re-verify an embedded witness end to end.
    if let SearchOutcome::Witness(w) = &cert.outcome {
        if !w.check_proper().is_proper() {
            println!("INVALID: embedded witness is improper");
            return EXIT_VIOLATED;
        }
        let pat = match BroomPattern::new(cert.config.t, cert.config.ell) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VIOLATED;
            }
        };
        match find_rainbow_broom(w, pat) {
            Ok(None) => {}
            Ok(Some(_)) => {
                println!("INVALID: embedded witness contains a rainbow broom");
                return EXIT_VIOLATED;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_VIOLATED;
            }
        }
    }
    if rerun {
        let (host, host_label) = match parse_host(&cert.config.host_label) {
            Ok(x) => x,
            Err(e) => {
                eprintln!("error: cannot rebuild host: {e}");
                return EXIT_VIOLATED;
            }
        };
        if cert.config.restriction.is_some() {
            eprintln!("error: restricted sub-certificates cannot be rerun standalone");
            return EXIT_VIOLATED;
        }
        let mut config = match cert.config.mode {
            SearchMode::Generic => SearchConfig::generic(host, &host_label, cert.config.t),
            SearchMode::NearFactorization => match SearchConfig::near_factorization(host.n()) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EXIT_VIOLATED;
                }
            },
        };
        config.palette_cap = cert.config.palette_cap;
        config.order = cert.config.order;
        if let Ok(rules) = parse_rules(Some(&cert.config.rules), &config) {
            config.rules = rules;
        }
        if let Err(e) = config.validate() {
            eprintln!("error: rerun config invalid: {e}");
            return EXIT_VIOLATED;
        }
        let fresh: SearchCertificate = match search(&config) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: rerun failed: {e}");
                return EXIT_INTERNAL;
            }
        };
        let same_verdict = matches!(
            (&fresh.outcome, &cert.outcome),
            (SearchOutcome::Witness(_), SearchOutcome::Witness(_))
                | (SearchOutcome::Exhausted, SearchOutcome::Exhausted)
        );
        if !same_verdict {
            println!("INVALID: rerun verdict differs from the certificate");
            return EXIT_VIOLATED;
        }
        println!("rerun verdict matches");
    }
    println!("certificate valid (engine: {})", cert.engine);
    EXIT_OK
}
