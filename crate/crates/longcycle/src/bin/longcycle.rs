//! Command-line driver: solve instances, verify certificates, query the
//! brute-force oracles, run sweeps and generate test graphs.
//!
//! Exit codes: 0 success, 1 invalid certificate, 2 usage/input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use longcycle::cert::{from_json, solve_to_json, verify_certificate, VerifyResult};
use longcycle::cycles::{find_disjoint_long_pair_bruteforce, min_transversal_bruteforce};
use longcycle::graph::{
    gen_complete, gen_cycle, gen_disjoint_union, gen_gnp, parse_dimacs, parse_edge_list, Graph,
};
use longcycle::solver::Budget;
use longcycle::sweep::{run_sweep, SweepConfig, SweepMode};

#[derive(Parser)]
#[command(
    name = "longcycle",
    version,
    about = "Exact certificates for long-cycle packing vs covering: two disjoint \
             cycles of length >= ell, or a transversal of at most floor((3*ell+7)/2) vertices"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Lines "u v" with 0-indexed vertices, optional "n=<k>" header.
    Edgelist,
    /// DIMACS edge format: "p edge n m" then "e u v" (1-indexed).
    Dimacs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and emit the certificate as JSON.
    Solve {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Attach the solver trace to the certificate.
        #[arg(long)]
        trace: bool,
    },
    /// Check a certificate against a graph from scratch.
    Verify {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Print the brute-force ground truth: minimum transversal and whether
    /// two disjoint long cycles exist.
    Oracle {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
    },
    /// Solve and verify a whole instance family; print a TSV report with a
    /// JSON aggregate line.
    Sweep {
        /// Comma-separated thresholds, e.g. 3,4,5.
        #[arg(long, value_delimiter = ',', required = true)]
        ell_list: Vec<usize>,
        /// Every connected labeled graph on up to --max-n vertices.
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        #[arg(long, requires = "exhaustive")]
        max_n: Option<usize>,
        /// Random G(n,p) samples.
        #[arg(long)]
        random: bool,
        #[arg(long, requires = "random")]
        count: Option<usize>,
        #[arg(long, requires = "random")]
        n: Option<usize>,
        #[arg(long, requires = "random")]
        p: Option<f64>,
        #[arg(long, requires = "random")]
        seed: Option<u64>,
        /// Cross-check every row against the brute-force oracles.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a test instance as edge-list text.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cycle C_n (n >= 3).
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erdos-Renyi G(n, p); deterministic for a fixed seed.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjoint union of two cycles C_n1 + C_n2.
    Union {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Usage/input problem -> exit 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_graph(path: &PathBuf, format: Format) -> Result<Graph, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let g = match format {
        Format::Edgelist => parse_edge_list(&text)?,
        Format::Dimacs => parse_dimacs(&text)?,
    };
    Ok(g)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_ell(ell: usize) -> Result<(), UsageError> {
    if ell < 3 {
        return Err(UsageError(format!("ell must be at least 3, got {ell}")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.cmd {
        Cmd::Solve {
            ell,
            input,
            format,
            out,
            trace,
        } => {
            check_ell(ell)?;
            let g = read_graph(&input, format)?;
            let mut json = solve_to_json(&g, ell, trace);
            json.push('\n');
            emit(&out, &json)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            ell,
            input,
            format,
            cert,
        } => {
            check_ell(ell)?;
            let g = read_graph(&input, format)?;
            let text = fs::read_to_string(&cert)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", cert.display())))?;
            let doc = from_json(&text)?;
            if doc.ell != ell {
                println!("invalid: certificate is for ell = {}, expected {ell}", doc.ell);
                return Ok(ExitCode::from(1));
            }
            match verify_certificate(&g, &doc) {
                VerifyResult::Valid => {
                    println!("valid: {} certificate within budget {}", doc.kind, doc.budget);
                    Ok(ExitCode::SUCCESS)
                }
                VerifyResult::Invalid(reason) => {
                    println!("invalid: {reason}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Cmd::Oracle { ell, input, format } => {
            check_ell(ell)?;
            let g = read_graph(&input, format)?;
            let budget = Budget::new(ell).value;
            let pair = find_disjoint_long_pair_bruteforce(&g, ell);
            let min_t = min_transversal_bruteforce(&g, ell, budget);
            let doc = serde_json::json!({
                "ell": ell,
                "n": g.n(),
                "budget": budget,
                "disjoint_pair_exists": pair.is_some(),
                "min_transversal_size": min_t.as_ref().map(|(k, _)| *k),
                "min_transversal": min_t.as_ref().map(|(_, s)| s.to_sorted_vec()),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep {
            ell_list,
            exhaustive,
            max_n,
            random,
            count,
            n,
            p,
            seed,
            oracle,
            out,
        } => {
            for &ell in &ell_list {
                check_ell(ell)?;
            }
            let mode = if exhaustive {
                let max_n =
                    max_n.ok_or_else(|| UsageError("--exhaustive requires --max-n".into()))?;
                if !(1..=8).contains(&max_n) {
                    return Err(UsageError("--max-n must be in 1..=8".into()));
                }
                SweepMode::Exhaustive { max_n }
            } else if random {
                let count = count.ok_or_else(|| UsageError("--random requires --count".into()))?;
                let n = n.ok_or_else(|| UsageError("--random requires --n".into()))?;
                let p = p.ok_or_else(|| UsageError("--random requires --p".into()))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(UsageError(format!("p must be in [0,1], got {p}")));
                }
                let seed = seed.ok_or_else(|| UsageError("--random requires --seed".into()))?;
                SweepMode::Random { count, n, p, seed }
            } else {
                return Err(UsageError("pass either --exhaustive or --random".into()));
            };
            let report = run_sweep(&SweepConfig {
                ells: ell_list,
                mode,
                oracle,
            });
            emit(&out, &report.render())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gen { kind } => {
            let (g, out) = match kind {
                GenCmd::Complete { n, out } => (gen_complete(n), out),
                GenCmd::Cycle { n, out } => (gen_cycle(n)?, out),
                GenCmd::Gnp { n, p, seed, out } => (gen_gnp(n, p, seed)?, out),
                GenCmd::Union { n1, n2, out } => {
                    (gen_disjoint_union(&gen_cycle(n1)?, &gen_cycle(n2)?)?, out)
                }
            };
            emit(&out, &g.to_edge_list())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
