//! On-disk text formats: the coloring file (`broomlab-coloring v1`) and
//! the search certificate (`broomlab-cert v1`). Writers are bit-exact;
//! loaders are strict, with one error code per failure class.

use std::fmt;

use broomlab_core::coloring::{ColoredGraph, ProperVerdict};
use broomlab_core::graph::Graph;
use broomlab_core::search::{ConfigEcho, SearchCertificate, SearchOutcome, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Io(String),
    MalformedHeader(String),
    InvalidEdgeLine { line: usize, msg: String },
    UnsortedEdges { line: usize },
    DuplicateEdge { line: usize },
    ColorOutOfRange { line: usize, color: i64 },
    NonCanonicalColors { line: usize },
    ImproperColoring { vertex: u32 },
    EdgeCountMismatch { expected: usize, got: usize },
    MalformedCertificate(String),
}

impl FormatError {
    /// Stable short code, part of the CLI contract.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Io(_) => "io",
            FormatError::MalformedHeader(_) => "malformed-header",
            FormatError::InvalidEdgeLine { .. } => "invalid-edge-line",
            FormatError::UnsortedEdges { .. } => "unsorted-edges",
            FormatError::DuplicateEdge { .. } => "duplicate-edge",
            FormatError::ColorOutOfRange { .. } => "color-out-of-range",
            FormatError::NonCanonicalColors { .. } => "non-canonical-colors",
            FormatError::ImproperColoring { .. } => "improper-coloring",
            FormatError::EdgeCountMismatch { .. } => "edge-count-mismatch",
            FormatError::MalformedCertificate(_) => "malformed-certificate",
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(msg) => write!(f, "[io] {msg}"),
            FormatError::MalformedHeader(msg) => write!(f, "[malformed-header] {msg}"),
            FormatError::InvalidEdgeLine { line, msg } => {
                write!(f, "[invalid-edge-line] line {line}: {msg}")
            }
            FormatError::UnsortedEdges { line } => {
                write!(f, "[unsorted-edges] line {line}: edges must ascend lexicographically")
            }
            FormatError::DuplicateEdge { line } => {
                write!(f, "[duplicate-edge] line {line}")
            }
            FormatError::ColorOutOfRange { line, color } => {
                write!(f, "[color-out-of-range] line {line}: color {color}")
            }
            FormatError::NonCanonicalColors { line } => write!(
                f,
                "[non-canonical-colors] line {line}: color ids must follow first appearance"
            ),
            FormatError::ImproperColoring { vertex } => {
                write!(f, "[improper-coloring] repeated color at vertex {vertex}")
            }
            FormatError::EdgeCountMismatch { expected, got } => {
                write!(f, "[edge-count-mismatch] header says {expected}, found {got}")
            }
            FormatError::MalformedCertificate(msg) => {
                write!(f, "[malformed-certificate] {msg}")
            }
        }
    }
}

pub const COLORING_MAGIC: &str = "broomlab-coloring v1";
pub const CERT_MAGIC: &str = "broomlab-cert v1";

/// Renders a coloring in the canonical file format. `comments` become
/// trailing `#` lines.
pub fn write_coloring(cg: &ColoredGraph, comments: &[String]) -> String {
    let mut out = String::new();
    out.push_str(COLORING_MAGIC);
    out.push('\n');
    out.push_str(&format!(
        "n {} m {} colors {}\n",
        cg.graph().n(),
        cg.graph().edge_count(),
        cg.color_count()
    ));
    for (i, &(u, v)) in cg.graph().edges().iter().enumerate() {
        out.push_str(&format!("{u} {v} {}\n", cg.color_of_edge(i)));
    }
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out
}

/// Strict loader: verifies the header, edge ordering, color range,
/// canonical color order and properness, each with its own error code.
pub fn read_coloring(text: &str) -> Result<ColoredGraph, FormatError> {
    let mut lines = text.lines().enumerate();
    let (_, magic) = lines
        .next()
        .ok_or_else(|| FormatError::MalformedHeader("empty file".into()))?;
    if magic != COLORING_MAGIC {
        return Err(FormatError::MalformedHeader(format!(
            "expected '{COLORING_MAGIC}', got '{magic}'"
        )));
    }
    let (_, header) = lines
        .next()
        .ok_or_else(|| FormatError::MalformedHeader("missing size header".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (n, m, colors) = match tokens.as_slice() {
        ["n", n, "m", m, "colors", c] => {
            let parse =
                |s: &str| -> Result<usize, FormatError> {
                    s.parse().map_err(|_| {
                        FormatError::MalformedHeader(format!("bad integer '{s}'"))
                    })
                };
            (parse(n)?, parse(m)?, parse(c)?)
        }
        _ => {
            return Err(FormatError::MalformedHeader(format!(
                "expected 'n <n> m <m> colors <c>', got '{header}'"
            )))
        }
    };

    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(m);
    let mut colors_by_edge: Vec<u32> = Vec::with_capacity(m);
    let mut max_seen = 0u32;
    let mut in_trailer = false;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.starts_with('#') {
            in_trailer = true;
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if in_trailer {
            return Err(FormatError::InvalidEdgeLine {
                line: lineno,
                msg: "edge line after comment trailer".into(),
            });
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(FormatError::InvalidEdgeLine {
                line: lineno,
                msg: format!("expected '<u> <v> <color>', got '{line}'"),
            });
        }
        let parse = |s: &str| -> Result<i64, FormatError> {
            s.parse().map_err(|_| FormatError::InvalidEdgeLine {
                line: lineno,
                msg: format!("bad integer '{s}'"),
            })
        };
        let (u, v, c) = (parse(tokens[0])?, parse(tokens[1])?, parse(tokens[2])?);
        if u < 0 || v < 0 || u >= n as i64 || v >= n as i64 || u >= v {
            return Err(FormatError::InvalidEdgeLine {
                line: lineno,
                msg: format!("edge ({u}, {v}) needs 0 <= u < v < {n}"),
            });
        }
        let pair = (u as u32, v as u32);
        if let Some(&prev) = pairs.last() {
            if pair == prev {
                return Err(FormatError::DuplicateEdge { line: lineno });
            }
            if pair < prev {
                return Err(FormatError::UnsortedEdges { line: lineno });
            }
        }
        if c < 1 || c > colors as i64 {
            return Err(FormatError::ColorOutOfRange { line: lineno, color: c });
        }
        let c = c as u32;
        if c > max_seen + 1 {
            return Err(FormatError::NonCanonicalColors { line: lineno });
        }
        max_seen = max_seen.max(c);
        pairs.push(pair);
        colors_by_edge.push(c);
    }
    if pairs.len() != m {
        return Err(FormatError::EdgeCountMismatch {
            expected: m,
            got: pairs.len(),
        });
    }
    if (max_seen as usize) != colors && m > 0 {
        return Err(FormatError::NonCanonicalColors { line: 2 });
    }
    let graph = Graph::from_edges(n, &pairs).map_err(|e| FormatError::InvalidEdgeLine {
        line: 0,
        msg: e.to_string(),
    })?;
    // A sorted, deduplicated pair list *is* the canonical edge index, so
    // colors_by_edge already lines up with it.
    let cg = ColoredGraph::new(graph, colors_by_edge).map_err(|e| FormatError::InvalidEdgeLine {
        line: 0,
        msg: e.to_string(),
    })?;
    match cg.check_proper() {
        ProperVerdict::Proper => Ok(cg),
        ProperVerdict::Improper { vertex, .. } => Err(FormatError::ImproperColoring { vertex }),
    }
}

/// Renders a search certificate.
pub fn write_certificate(cert: &SearchCertificate) -> String {
    let mut out = String::new();
    out.push_str(CERT_MAGIC);
    out.push('\n');
    out.push_str(&format!("host {}\n", cert.config.host_label));
    out.push_str(&format!("t {}\n", cert.config.t));
    out.push_str(&format!("ell {}\n", cert.config.ell));
    out.push_str(&format!("mode {}\n", cert.config.mode));
    out.push_str(&format!("palette_cap {}\n", cert.config.palette_cap));
    out.push_str(&format!("rules {}\n", cert.config.rules));
    out.push_str(&format!("order {}\n", cert.config.order));
    let assumptions = if cert.assumptions.is_empty() {
        "none".to_string()
    } else {
        cert.assumptions.join(",")
    };
    out.push_str(&format!("assumptions {assumptions}\n"));
    if let Some(r) = &cert.config.restriction {
        out.push_str(&format!("restriction {r}\n"));
    }
    match &cert.outcome {
        SearchOutcome::Witness(w) => {
            out.push_str("result WITNESS\n");
            out.push_str("begin-coloring\n");
            out.push_str(&write_coloring(w, &[]));
            out.push_str("end-coloring\n");
        }
        SearchOutcome::Exhausted => out.push_str("result EXHAUSTED\n"),
    }
    out.push_str(&format!("nodes={}\n", cert.stats.nodes));
    out.push_str(&format!("pruned.c4={}\n", cert.stats.pruned_c4));
    out.push_str(&format!(
        "pruned.broom-capacity={}\n",
        cert.stats.pruned_broom_capacity
    ));
    out.push_str(&format!(
        "pruned.bichromatic-p4={}\n",
        cert.stats.pruned_bichromatic_p4
    ));
    out.push_str(&format!("depth={}\n", cert.stats.max_depth));
    out.push_str(&format!("wall_ms={}\n", cert.stats.wall_ms));
    out.push_str(&format!("engine {}\n", cert.engine));
    out
}

/// A certificate parsed back from disk.
#[derive(Clone, Debug)]
pub struct CertificateFile {
    pub config: ConfigEcho,
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    pub assumptions: Vec<String>,
    pub engine: String,
}

pub fn read_certificate(text: &str) -> Result<CertificateFile, FormatError> {
    let mut lines = text.lines().peekable();
    let magic = lines
        .next()
        .ok_or_else(|| FormatError::MalformedCertificate("empty file".into()))?;
    if magic != CERT_MAGIC {
        return Err(FormatError::MalformedCertificate(format!(
            "expected '{CERT_MAGIC}', got '{magic}'"
        )));
    }
    let field = |key: &str, lines: &mut std::iter::Peekable<std::str::Lines>| {
        let line = lines
            .next()
            .ok_or_else(|| FormatError::MalformedCertificate(format!("missing '{key}'")))?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(' '))
            .map(|s| s.to_string())
            .ok_or_else(|| FormatError::MalformedCertificate(format!("expected '{key} ...', got '{line}'")))
    };
    let host_label = field("host", &mut lines)?;
    let t: u32 = parse_num(&field("t", &mut lines)?)?;
    let ell: u32 = parse_num(&field("ell", &mut lines)?)?;
    let mode_text = field("mode", &mut lines)?;
    let mode = match mode_text.as_str() {
        "generic" => broomlab_core::search::SearchMode::Generic,
        "near-factorization" => broomlab_core::search::SearchMode::NearFactorization,
        other => {
            return Err(FormatError::MalformedCertificate(format!(
                "unknown mode '{other}'"
            )))
        }
    };
    let palette_cap: u32 = parse_num(&field("palette_cap", &mut lines)?)?;
    let rules = field("rules", &mut lines)?;
    let order_text = field("order", &mut lines)?;
    let order = match order_text.as_str() {
        "canonical" => broomlab_core::search::EdgeOrder::Canonical,
        "most-constrained" => broomlab_core::search::EdgeOrder::MostConstrained,
        other => {
            return Err(FormatError::MalformedCertificate(format!(
                "unknown order '{other}'"
            )))
        }
    };
    let assumptions_text = field("assumptions", &mut lines)?;
    let assumptions: Vec<String> = if assumptions_text == "none" {
        Vec::new()
    } else {
        assumptions_text.split(',').map(|s| s.to_string()).collect()
    };
    let mut restriction = None;
    let result_line = loop {
        let line = lines
            .next()
            .ok_or_else(|| FormatError::MalformedCertificate("missing result".into()))?;
        if let Some(r) = line.strip_prefix("restriction ") {
            restriction = Some(r.to_string());
        } else {
            break line;
        }
    };
    let outcome = match result_line {
        "result EXHAUSTED" => SearchOutcome::Exhausted,
        "result WITNESS" => {
            let begin = lines
                .next()
                .ok_or_else(|| FormatError::MalformedCertificate("missing coloring".into()))?;
            if begin != "begin-coloring" {
                return Err(FormatError::MalformedCertificate(
                    "expected begin-coloring".into(),
                ));
            }
            let mut body = String::new();
            loop {
                let line = lines.next().ok_or_else(|| {
                    FormatError::MalformedCertificate("unterminated coloring".into())
                })?;
                if line == "end-coloring" {
                    break;
                }
                body.push_str(line);
                body.push('\n');
            }
            let cg = read_coloring(&body)?;
            SearchOutcome::Witness(cg)
        }
        other => {
            return Err(FormatError::MalformedCertificate(format!(
                "unknown result '{other}'"
            )))
        }
    };
    let stat = |key: &str, lines: &mut std::iter::Peekable<std::str::Lines>| {
        let line = lines
            .next()
            .ok_or_else(|| FormatError::MalformedCertificate(format!("missing '{key}'")))?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| {
                FormatError::MalformedCertificate(format!("expected '{key}=...', got '{line}'"))
            })
            .and_then(parse_num::<u64>)
    };
    let nodes = stat("nodes", &mut lines)?;
    let pruned_c4 = stat("pruned.c4", &mut lines)?;
    let pruned_broom_capacity = stat("pruned.broom-capacity", &mut lines)?;
    let pruned_bichromatic_p4 = stat("pruned.bichromatic-p4", &mut lines)?;
    let depth = stat("depth", &mut lines)?;
    let wall_ms = stat("wall_ms", &mut lines)?;
    let engine = field("engine", &mut lines)?;
    Ok(CertificateFile {
        config: ConfigEcho {
            host_label,
            t,
            ell,
            mode,
            palette_cap,
            rules,
            order,
            restriction,
        },
        outcome,
        stats: SearchStats {
            nodes,
            pruned_c4,
            pruned_broom_capacity,
            pruned_bichromatic_p4,
            max_depth: depth as u32,
            wall_ms,
        },
        assumptions,
        engine,
    })
}

fn parse_num<T>(s: &str) -> Result<T, FormatError>
where
    T: std::str::FromStr,
    <T as std::str::FromStr>::Err: fmt::Display,
{
    s.trim()
        .parse()
        .map_err(|e| FormatError::MalformedCertificate(format!("bad number '{s}': {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use broomlab_core::construct::f3_clique_coloring;

    #[test]
    fn coloring_roundtrip() {
        let cg = f3_clique_coloring(2).unwrap();
        let text = write_coloring(&cg, &["family f3-clique s 2".into()]);
        let back = read_coloring(&text).unwrap();
        assert_eq!(back.colors(), cg.colors());
        assert_eq!(back.graph().edges(), cg.graph().edges());
        // Writers are bit-exact: a second render is identical.
        assert_eq!(write_coloring(&back, &["family f3-clique s 2".into()]), text);
    }

    #[test]
    fn loader_error_codes() {
        let bad_magic = "broomlab-coloring v2\nn 1 m 0 colors 0\n";
        assert_eq!(read_coloring(bad_magic).unwrap_err().code(), "malformed-header");

        let base = "broomlab-coloring v1\nn 3 m 3 colors 3\n0 1 1\n0 2 2\n1 2 3\n";
        assert!(read_coloring(base).is_ok());

        let unsorted = "broomlab-coloring v1\nn 3 m 3 colors 3\n0 2 1\n0 1 2\n1 2 3\n";
        assert_eq!(read_coloring(unsorted).unwrap_err().code(), "unsorted-edges");

        let duplicate = "broomlab-coloring v1\nn 3 m 3 colors 3\n0 1 1\n0 1 2\n1 2 3\n";
        assert_eq!(read_coloring(duplicate).unwrap_err().code(), "duplicate-edge");

        let out_of_range = "broomlab-coloring v1\nn 3 m 3 colors 2\n0 1 1\n0 2 2\n1 2 3\n";
        assert_eq!(
            read_coloring(out_of_range).unwrap_err().code(),
            "color-out-of-range"
        );

        let non_canonical = "broomlab-coloring v1\nn 3 m 3 colors 3\n0 1 2\n0 2 1\n1 2 3\n";
        assert_eq!(
            read_coloring(non_canonical).unwrap_err().code(),
            "non-canonical-colors"
        );

        let improper = "broomlab-coloring v1\nn 3 m 3 colors 2\n0 1 1\n0 2 2\n1 2 1\n";
        assert_eq!(
            read_coloring(improper).unwrap_err().code(),
            "improper-coloring"
        );

        let mismatch = "broomlab-coloring v1\nn 3 m 3 colors 2\n0 1 1\n0 2 2\n";
        assert_eq!(
            read_coloring(mismatch).unwrap_err().code(),
            "edge-count-mismatch"
        );
    }

    #[test]
    fn certificate_roundtrip() {
        use broomlab_core::graph::Graph;
        use broomlab_core::search::{search, SearchConfig};
        let mut config = SearchConfig::generic(Graph::clique(6).unwrap(), "clique:6", 4);
        config.palette_cap = 6;
        let cert = search(&config).unwrap();
        let text = write_certificate(&cert);
        let back = read_certificate(&text).unwrap();
        assert_eq!(back.config, cert.config);
        assert_eq!(back.outcome, cert.outcome);
        assert_eq!(back.stats, cert.stats);
        assert_eq!(back.engine, cert.engine);
    }
}
