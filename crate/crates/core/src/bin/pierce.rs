//! Command-line front end. Exit codes: 0 all checks passed, 1 a property
//! check failed, 2 schema or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pierce_core::analyzer::MinPiercing;
use pierce_core::doc::{self, ConstructParams};
use pierce_core::selftest::{self, SelftestOptions};
use pierce_core::svg;
use pierce_core::Error;

#[derive(Parser)]
#[command(name = "pierce", version, about = "Exact toolkit for pierced point configurations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named configuration document.
    Construct {
        /// One of: regular-mgon, rotated-union, bipartite, quadrilateral,
        /// three-line, fp-coset, two-point.
        name: String,
        /// Polygon size for regular-mgon and rotated-union.
        #[arg(long)]
        m: Option<u64>,
        /// Odd polygon size for the bipartite construction.
        #[arg(long)]
        k: Option<u64>,
        /// Prime modulus for fp-coset.
        #[arg(long)]
        p: Option<u64>,
        /// Curve constant b in y^2 = x^3 + b for fp-coset.
        #[arg(long)]
        b: Option<i64>,
        /// Subgroup order for fp-coset.
        #[arg(long)]
        order: Option<u64>,
        /// Which subgroup of that order (canonical ordering).
        #[arg(long, default_value_t = 0)]
        subgroup_index: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the piercing and general-position hypotheses of a document.
    Verify {
        file: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run the structure-recovery pipeline; prints a JSON report.
    Analyze { file: PathBuf },
    /// Exact minimum piercing number for a planar rational document.
    Minpierce {
        file: PathBuf,
        /// Give up beyond this size.
        #[arg(long, default_value_t = 6)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the oracle suites; nonzero exit on any counterexample.
    Selftest {
        /// Exhaustive restricted-sumset sweep over Z_k up to this k.
        #[arg(long, default_value_t = 18)]
        lev_bound: u32,
        /// Exhaustive sumset-coset sweep over Z_k up to this k.
        #[arg(long, default_value_t = 12)]
        lemma_bound: u32,
        /// Seeded samples per conic kind in the bridge suite.
        #[arg(long, default_value_t = 1000)]
        gt_samples: u32,
        /// Sabotage the bridge suite to prove it catches failures.
        #[arg(long, hide = true)]
        inject_mutant: bool,
    },
    /// Draw a configuration as SVG.
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Numeric stand-in for the generic rotation (fraction of a turn).
        #[arg(long)]
        theta: Option<f64>,
    },
}

fn read_document(path: &Path) -> Result<doc::LoadedConfig, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    doc::load(&doc::parse_document(&text)?)
}

/// 0 = pass, 1 = property failure, 2 = usage/schema error.
fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Construct { name, m, k, p, b, order, subgroup_index, out } => {
            let params = ConstructParams { m, k, p, b, order, subgroup_index };
            let document = doc::construct(&name, &params)?;
            let json = doc::canonical_json(&document);
            match out {
                Some(path) => std::fs::write(&path, json)
                    .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?,
                None => print!("{json}"),
            }
            Ok(0)
        }
        Cmd::Verify { file, json } => {
            let cfg = read_document(&file)?;
            let report = doc::verify(&cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                for c in &report.checks {
                    let mark = if c.passed { "ok " } else { "FAIL" };
                    match &c.detail {
                        Some(d) => println!("[{mark}] {}: {d}", c.name),
                        None => println!("[{mark}] {}", c.name),
                    }
                }
                println!("{}", if report.passed { "verified" } else { "verification failed" });
            }
            Ok(if report.passed { 0 } else { 1 })
        }
        Cmd::Analyze { file } => {
            let cfg = read_document(&file)?;
            let report = doc::analyze(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            Ok(0)
        }
        Cmd::Minpierce { file, limit, json } => {
            let cfg = read_document(&file)?;
            let result = doc::min_piercing(&cfg, limit)?;
            match result {
                MinPiercing::Exact(k) => {
                    if json {
                        println!("{{\"min_piercing\": {k}}}");
                    } else {
                        println!("minimum piercing number: {k}");
                    }
                }
                MinPiercing::ExceedsLimit(l) => {
                    if json {
                        println!("{{\"min_piercing\": null, \"exceeds\": {l}}}");
                    } else {
                        println!("minimum piercing number: > {l}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Selftest { lev_bound, lemma_bound, gt_samples, inject_mutant } => {
            let opts = SelftestOptions { lev_bound, lemma_bound, gt_samples, inject_mutant };
            let report = selftest::run(&opts);
            for suite in &report.suites {
                let mark = if suite.passed() { "ok " } else { "FAIL" };
                println!(
                    "[{mark}] {} ({} cases, {} asserted)",
                    suite.name, suite.cases, suite.asserted
                );
                for ce in &suite.counterexamples {
                    println!("       counterexample: {ce}");
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Cmd::Plot { file, out, theta } => {
            let cfg = read_document(&file)?;
            let rendered = svg::render(&cfg, theta.unwrap_or(svg::DEFAULT_THETA))?;
            std::fs::write(&out, rendered)
                .map_err(|e| Error::Usage(format!("{}: {e}", out.display())))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
