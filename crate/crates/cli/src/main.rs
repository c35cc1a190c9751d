//! `revlab` - command-line front end for the spectral revival toolkit.
//!
//! Subcommands: `eigs`, `solve`, `revive`, `hilbert`, `compare`.  Every run
//! is driven by a JSON configuration (see the repository README for the
//! schema); flags override individual fields.  Output CSV/JSON is
//! byte-identical across repeated runs and across thread counts.
//!
//! Exit codes: 0 success, 2 configuration error, 3 semantic misuse
//! (e.g. `compare` at an irrational time), 4 accuracy failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use revlab::config::RunConfig;
use revlab::problem::{hilbert_profile, ProblemRegistry};
use revlab::report::spectrum_csv;
use revlab::Error;

#[derive(Parser)]
#[command(name = "revlab", version, about = "Spectral solver and revival diagnostics for two dispersive boundary value problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the spectrum: n, k_n, asymptote, eigenvalue, norm, residual
    Eigs(CommonArgs),
    /// Eigenfunction-expansion solution profile on the configured grid
    Solve(CommonArgs),
    /// Closed-form revival profile at the configured rational time
    Revive(CommonArgs),
    /// Periodic Hilbert transform of the configured datum
    Hilbert(CommonArgs),
    /// Compare the reduced series against the closed form; JSON summary
    Compare(CompareArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the mode count N
    #[arg(long)]
    n: Option<u32>,
    /// Override the Hilbert synthesis truncation N_H
    #[arg(long)]
    modes: Option<usize>,
    /// Override the output grid size
    #[arg(long)]
    grid: Option<usize>,
    /// Override the singularity exclusion radius
    #[arg(long)]
    delta: Option<f64>,
    /// Worker threads (REVLAB_THREADS takes precedence)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also write the per-point decomposition table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("revlab: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Domain(_) | Error::Json(_) | Error::Io(_) => 2,
                Error::Semantic(_) => 3,
                Error::Accuracy(_) => 4,
                _ => 1,
            })
        }
    }
}

fn load_config(args: &CommonArgs) -> Result<RunConfig, Error> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut cfg = RunConfig::from_json(&text)?;
    if let Some(n) = args.n {
        cfg.modes = n;
    }
    if let Some(nh) = args.modes {
        cfg.hilbert_modes = nh;
    }
    if let Some(g) = args.grid {
        cfg.grid = g;
    }
    if let Some(d) = args.delta {
        cfg.delta = d;
    }
    if let Some(t) = args.threads {
        cfg.threads = Some(t);
    }
    if let Ok(t) = std::env::var("REVLAB_THREADS") {
        let t: usize = t
            .parse()
            .map_err(|_| Error::Config(format!("REVLAB_THREADS = '{t}' is not a number")))?;
        cfg.threads = Some(t);
    }
    cfg.validate()?;
    if let Some(t) = cfg.threads {
        // a second build_global is a no-op; results do not depend on the
        // pool size anyway
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let registry = ProblemRegistry::builtin();
    let lookup = |cfg: &RunConfig| {
        registry
            .get(&cfg.problem)
            .ok_or_else(|| Error::Config(format!("unknown problem '{}'", cfg.problem)))
    };
    match cli.command {
        Command::Eigs(args) => {
            let cfg = load_config(&args)?;
            let (rows, warnings) = lookup(&cfg)?.spectrum_rows(&cfg)?;
            for w in warnings {
                eprintln!("revlab: warning: {w}");
            }
            emit(&args.out, &spectrum_csv(&rows))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve(args) => {
            let cfg = load_config(&args)?;
            let table = lookup(&cfg)?.solve_profile(&cfg)?;
            emit(&args.out, &table.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Revive(args) => {
            let cfg = load_config(&args)?;
            let table = lookup(&cfg)?.revive_profile(&cfg)?;
            emit(&args.out, &table.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert(args) => {
            let cfg = load_config(&args)?;
            let table = hilbert_profile(&cfg)?;
            emit(&args.out, &table.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare(args) => {
            let cfg = load_config(&args.common)?;
            let out = lookup(&cfg)?.compare(&cfg)?;
            if let Some(csv_path) = &args.csv {
                std::fs::write(csv_path, out.table.to_csv())?;
            }
            let mut json = serde_json::to_string_pretty(&out.summary)?;
            json.push('\n');
            emit(&args.common.out, &json)?;
            if out.summary.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "revlab: accuracy failure: sup_err = {:.3e} >= threshold {:.3e}",
                    out.summary.sup_err, out.summary.threshold
                );
                Ok(ExitCode::from(4))
            }
        }
    }
}
