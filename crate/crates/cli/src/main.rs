//! `rbh` — bipartite graphs, spectral radii, shifting, rainbow Hamilton
//! search, and the verification battery.
//!
//! Exit codes: 0 on success (witness found, verification passed);
//! 1 when no witness exists or a verification target fails (the report
//! is still emitted); 2 on usage, I/O, or format errors. Diagnostics go
//! to stderr, machine output (BGF, BFAM, JSON, witness lines) to stdout
//! or the `-o` file.

use clap::{Parser, Subcommand};
use rbh_core::bigraph::{construct, decode_graph, encode_graph, FamilyName, FamilyTag};
use rbh_core::rainbow::{
    decode_family, encode_family, find_rainbow_hamilton_cycle, find_rainbow_hamilton_path,
    format_witness, longest_rainbow_path,
};
use rbh_core::shifting::{bi_shift, shift_xy, ShiftPair};
use rbh_core::spectral::spectral_radius;
use rbh_core::verify::{
    run_target, sample_families, Opts, ReportMode, SamplePool, Target, VerificationReport,
    DEFAULT_SEED,
};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Graph(#[from] rbh_core::GraphError),
    #[error(transparent)]
    Parse(#[from] rbh_core::ParseError),
    #[error(transparent)]
    Shift(#[from] rbh_core::ShiftError),
    #[error(transparent)]
    Rainbow(#[from] rbh_core::RainbowError),
    #[error(transparent)]
    Spectral(#[from] rbh_core::SpectralError),
    #[error(transparent)]
    Verify(#[from] rbh_core::VerifyError),
}

impl CliError {
    fn msg(text: impl Into<String>) -> Self {
        CliError::Message(text.into())
    }
}

#[derive(Parser)]
#[command(
    name = "rbh",
    about = "Bipartite shifting, spectral radii, and rainbow Hamilton search",
    version
)]
struct Cli {
    /// Float margin for spectral threshold comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    eps: f64,
    /// Convergence bound for the spectral engine.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named extremal graph and emit it as BGF.
    Construct {
        /// Family tag: Q, R, S, T, or B.
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Spectral radius of a BGF graph, printed with 12 decimal digits.
    Rho {
        /// Input BGF file (stdin if omitted or `-`).
        input: Option<PathBuf>,
    },
    /// Apply one (x, y)-shift to a BGF graph.
    Shift {
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shift a BGF graph to its bi-shifted fixpoint.
    Bishift {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search a BFAM family for a rainbow Hamilton path.
    Path {
        input: Option<PathBuf>,
    },
    /// Search a BFAM family for a rainbow Hamilton cycle.
    Cycle {
        input: Option<PathBuf>,
    },
    /// Longest rainbow path of a BFAM family.
    Longest {
        input: Option<PathBuf>,
    },
    /// Run verification harnesses and emit JSON reports.
    Verify {
        /// Target id (thm1.4, lem3.2, cor5.1, obs1, ...), `lem4.2` for
        /// both orientations, or `all` for the whole battery.
        #[arg(long)]
        target: String,
        /// Size parameter (n_max for lem2.8); per-target default.
        #[arg(long)]
        n: Option<usize>,
        /// Coverage: exhaustive, sample, or extremal-only.
        #[arg(long)]
        mode: Option<String>,
        /// Sampling seed (overrides RBH_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Sample count for sampled modes.
        #[arg(long)]
        count: Option<u64>,
        /// Worker count; 0 means all cores. Reports do not depend on it.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the JSON report(s) here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Append a CSV summary (one row per target).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Draw seeded pseudo-random families as BFAM documents.
    Sample {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// `all` or `copies:<TAG>:<k>:<n>`.
        #[arg(long, default_value = "all")]
        pool: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::msg(format!("{}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::msg(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::msg(format!("{}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn env_seed() -> Result<Option<u64>, CliError> {
    match std::env::var("RBH_SEED") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| CliError::msg(format!("RBH_SEED is not a valid seed: {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let opts = Opts { eps: cli.eps, tol: cli.tol, jobs: 0 };
    match cli.cmd {
        Cmd::Construct { family, k, n, output } => {
            let tag: FamilyTag = family.parse()?;
            let g = construct(FamilyName::new(tag, k, n))?;
            write_output(&output, &encode_graph(&g))?;
            Ok(true)
        }
        Cmd::Rho { input } => {
            let g = decode_graph(&read_input(&input)?)?;
            let est = spectral_radius(&g, cli.tol)?;
            println!("{:.12}", est.value);
            Ok(true)
        }
        Cmd::Shift { x, y, input, output } => {
            let g = decode_graph(&read_input(&input)?)?;
            let shifted = shift_xy(&g, ShiftPair::new(x, y))?;
            write_output(&output, &encode_graph(&shifted))?;
            Ok(true)
        }
        Cmd::Bishift { input, output } => {
            let g = decode_graph(&read_input(&input)?)?;
            write_output(&output, &encode_graph(&bi_shift(&g)))?;
            Ok(true)
        }
        Cmd::Path { input } => {
            let fam = decode_family(&read_input(&input)?)?;
            match find_rainbow_hamilton_path(&fam)? {
                Some(w) => {
                    println!("{}", format_witness(&w, false));
                    Ok(true)
                }
                None => {
                    println!("none");
                    Ok(false)
                }
            }
        }
        Cmd::Cycle { input } => {
            let fam = decode_family(&read_input(&input)?)?;
            match find_rainbow_hamilton_cycle(&fam)? {
                Some(w) => {
                    println!("{}", format_witness(&w, true));
                    Ok(true)
                }
                None => {
                    println!("none");
                    Ok(false)
                }
            }
        }
        Cmd::Longest { input } => {
            let fam = decode_family(&read_input(&input)?)?;
            let w = longest_rainbow_path(&fam);
            println!("{}", format_witness(&w, false));
            Ok(true)
        }
        Cmd::Verify { target, n, mode, seed, count, jobs, json, csv } => {
            let opts = Opts { jobs, ..opts };
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(DEFAULT_SEED),
            };
            let targets = if target == "all" { Target::battery() } else { Target::parse(&target)? };
            let mut reports = Vec::new();
            for t in targets {
                let t_n = n.unwrap_or_else(|| t.default_n());
                let t_mode = resolve_mode(t, t_n, mode.as_deref(), seed, count)?;
                let report = run_target(t, t_n, t_mode, &opts)?;
                eprintln!(
                    "{}: {} ({} cases, {} violations, {} ms)",
                    report.target,
                    if report.is_pass() { "pass" } else { "FAIL" },
                    report.cases_checked,
                    report.violations.len(),
                    report.elapsed_ms
                );
                reports.push(report);
            }
            let json_text = if reports.len() == 1 {
                reports[0].to_json_pretty()
            } else {
                serde_json::to_string_pretty(&reports).expect("report serialization cannot fail")
            };
            match &json {
                Some(p) => std::fs::write(p, json_text + "\n")
                    .map_err(|e| CliError::msg(format!("{}: {e}", p.display())))?,
                None => println!("{json_text}"),
            }
            if let Some(p) = &csv {
                let mut rows = String::from(VerificationReport::csv_header());
                rows.push('\n');
                for r in &reports {
                    rows.push_str(&r.csv_row());
                    rows.push('\n');
                }
                std::fs::write(p, rows)
                    .map_err(|e| CliError::msg(format!("{}: {e}", p.display())))?;
            }
            Ok(reports.iter().all(|r| r.is_pass()))
        }
        Cmd::Sample { nx, ny, k, seed, count, pool, output } => {
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(DEFAULT_SEED),
            };
            let pool = parse_pool(&pool)?;
            let docs: Vec<String> = sample_families(nx, ny, k, seed, count, pool)?
                .map(|f| encode_family(&f))
                .collect();
            write_output(&output, &docs.join("\n"))?;
            Ok(true)
        }
    }
}

fn resolve_mode(
    target: Target,
    n: usize,
    mode: Option<&str>,
    seed: u64,
    count: Option<u64>,
) -> Result<ReportMode, CliError> {
    let default = target.default_mode(n, seed);
    match mode {
        None => Ok(match default {
            ReportMode::Sample { seed, count: c } => {
                ReportMode::Sample { seed, count: count.unwrap_or(c) }
            }
            other => other,
        }),
        Some("exhaustive") => Ok(ReportMode::Exhaustive),
        Some("extremal-only") => Ok(ReportMode::ExtremalOnly),
        Some("sample") => {
            let default_count = match default {
                ReportMode::Sample { count, .. } => count,
                _ => 10_000,
            };
            Ok(ReportMode::Sample { seed, count: count.unwrap_or(default_count) })
        }
        Some(other) => Err(CliError::msg(format!(
            "unknown mode {other:?} (expected exhaustive, sample, or extremal-only)"
        ))),
    }
}

fn parse_pool(text: &str) -> Result<SamplePool, CliError> {
    if text == "all" {
        return Ok(SamplePool::All);
    }
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 4 && parts[0] == "copies" {
        let tag: FamilyTag = parts[1].parse()?;
        let k = parts[2]
            .parse::<usize>()
            .map_err(|_| CliError::msg(format!("invalid pool parameter {:?}", parts[2])))?;
        let n = parts[3]
            .parse::<usize>()
            .map_err(|_| CliError::msg(format!("invalid pool parameter {:?}", parts[3])))?;
        return Ok(SamplePool::CopiesOf(FamilyName::new(tag, k, n)));
    }
    Err(CliError::msg(format!(
        "unknown pool {text:?} (expected `all` or `copies:<TAG>:<k>:<n>`)"
    )))
}
