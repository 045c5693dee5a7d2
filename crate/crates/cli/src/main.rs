//! broomlab: a workbench for rainbow-broom-free proper edge colorings:
//! generators, detectors, structural analyzers, certified exhaustive
//! search, and the exact bounds ledger.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use broomlab_cli::commands;

#[derive(Parser)]
#[command(
    name = "broomlab",
    version,
    about = "Rainbow-broom workbench: constructions, detection, certified search, exact bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a built-in rainbow-broom-free coloring
    Construct {
        /// odd-matching | f2-bipartite | f2-clique | f3-clique
        #[arg(long)]
        family: String,
        /// Broom size for odd-matching (odd, >= 3)
        #[arg(long)]
        t: Option<u32>,
        /// Dimension for the algebraic families (>= 2)
        #[arg(long)]
        s: Option<u32>,
        /// Write the coloring file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file for rainbow brooms (exit 0 clean, 1 found)
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 3)]
        ell: u32,
    },
    /// Search a host for a rainbow-broom-free proper coloring
    /// (exit 0 witness, 1 exhausted)
    Search {
        /// clique:k | biclique:a,b | file:path
        #[arg(long)]
        host: String,
        #[arg(long)]
        t: u32,
        /// generic | near-factorization
        #[arg(long, default_value = "generic")]
        mode: String,
        #[arg(long = "palette-cap")]
        palette_cap: Option<u32>,
        /// auto | none | comma list of c4, broom-capacity, lemma-certified
        #[arg(long)]
        rules: Option<String>,
        /// canonical | most-constrained
        #[arg(long, default_value = "canonical")]
        order: String,
        /// Parallel witness hunting only; exhaustion certifies at 1
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write a certificate file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Audit a prune rule after the run: c4 | broom-capacity
        #[arg(long)]
        audit: Option<String>,
        /// Seed for the randomized prune audit
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Structural analysis of a coloring file
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        t: u32,
    },
    /// Exact extremal coefficients for a broom size
    Bounds {
        #[arg(long)]
        t: i64,
    },
    /// Validate a certificate file (optionally re-running the search)
    Certify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        rerun: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Construct { family, t, s, out } => {
            commands::cmd_construct(&family, t, s, out.as_ref())
        }
        Command::Verify { input, t, ell } => commands::cmd_verify(&input, t, ell),
        Command::Search {
            host,
            t,
            mode,
            palette_cap,
            rules,
            order,
            workers,
            out,
            audit,
            seed,
        } => commands::cmd_search(
            &host,
            t,
            &mode,
            palette_cap,
            rules.as_deref(),
            &order,
            workers,
            out.as_ref(),
            audit.as_deref(),
            seed,
        ),
        Command::Analyze { input, t } => commands::cmd_analyze(&input, t),
        Command::Bounds { t } => commands::cmd_bounds(t),
        Command::Certify { cert, rerun } => commands::cmd_certify(&cert, rerun),
    };
    ExitCode::from(code as u8)
}
