use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use resat_core::engine::Outcome;
use resat_core::Assignment;

use resat_cli::batch::{plan_jobs, run_batch};
use resat_cli::cactus::{cactus_from_files, write_cactus};
use resat_cli::generate::{generate, Family};
use resat_cli::input::read_formula;
use resat_cli::policy::{build_config, describe, PolicyChoice, SearchFlags};
use resat_cli::run::{build_report, run_with_timeout, write_trace};

/// SAT solver that can re-randomize its branching heuristic at restarts,
/// steered by a bandit over the observed learning rate.
#[derive(Parser, Debug)]
#[command(name = "resat", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one instance and print a SAT-competition style report
    Solve(SolveArgs),
    /// Run a directory of instances under one or more policies, to CSV
    Batch(BatchArgs),
    /// Turn batch CSVs into cactus-plot data (policy, rank, seconds)
    Cactus(CactusArgs),
    /// Generate a benchmark instance as DIMACS
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Instance file (.cnf or .cnf.gz)
    path: PathBuf,

    /// Boundary policy: baseline, fixed=<p>, thompson, thompson-decay, swucb
    #[arg(long, default_value = "baseline")]
    policy: PolicyChoice,

    #[command(flatten)]
    flags: SearchFlags,

    /// Wall-clock budget in seconds
    #[arg(long, default_value_t = 5000.0)]
    timeout: f64,

    /// Write run statistics as JSON here
    #[arg(long)]
    stats: Option<PathBuf>,

    /// Write the per-window reward trace as CSV here
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// Directory of .cnf / .cnf.gz instances
    dir: PathBuf,

    /// Policy to run; repeat the flag to compare several
    #[arg(long = "policy", default_value = "baseline")]
    policies: Vec<PolicyChoice>,

    #[command(flatten)]
    flags: SearchFlags,

    /// Wall-clock budget per run, in seconds
    #[arg(long, default_value_t = 5000.0)]
    timeout: f64,

    /// Concurrent solver runs
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Output CSV path
    #[arg(long, default_value = "batch.csv")]
    out: PathBuf,

    /// Continue an interrupted batch instead of starting over
    #[arg(long, default_value_t = false)]
    resume: bool,
}

#[derive(Args, Debug)]
struct CactusArgs {
    /// Batch CSVs to merge
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,

    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn seconds(value: f64) -> Duration {
    if value <= 0.0 {
        Duration::ZERO
    } else {
        Duration::from_secs_f64(value)
    }
}

fn print_model(model: &Assignment) {
    let mut line = String::from("v");
    for (i, var) in (1..=model.num_vars() as u32).enumerate() {
        let v = resat_core::Variable::new(var);
        let lit = if model.value(v) == Some(true) { var as i64 } else { -(var as i64) };
        line.push_str(&format!(" {lit}"));
        // SAT-competition style wrapping: keep v-lines readable.
        if (i + 1) % 25 == 0 {
            println!("{line}");
            line = String::from("v");
        }
    }
    line.push_str(" 0");
    println!("{line}");
}

fn solve_command(args: &SolveArgs) -> anyhow::Result<u8> {
    let formula = read_formula(&args.path)?;
    let config = build_config(args.policy, &args.flags);
    config.validate().context("invalid configuration")?;
    let label = describe(args.policy, &args.flags);

    let (outcome, stats, solver) =
        run_with_timeout(formula, config, seconds(args.timeout))?;

    println!("c instance {}", args.path.display());
    println!("c policy {label} seed {}", args.flags.seed);
    println!(
        "c conflicts {} decisions {} propagations {}",
        stats.conflicts, stats.decisions, stats.propagations
    );
    println!(
        "c restarts {} resets {} learned {} deleted {}",
        stats.restarts, stats.resets, stats.learned, stats.deleted
    );
    println!("c time {:.3}s", stats.elapsed_seconds);

    let code = match &outcome {
        Outcome::Sat(model) => {
            // Check the model against the formula once more, independently of
            // anything the search believes.
            anyhow::ensure!(
                solver.formula().evaluate(model) == Ok(true),
                "internal error: model failed verification, not printing it"
            );
            println!("s SATISFIABLE");
            print_model(model);
            10
        }
        Outcome::Unsat => {
            println!("s UNSATISFIABLE");
            20
        }
        Outcome::Indeterminate => {
            println!("s UNKNOWN");
            0
        }
    };

    if let Some(path) = &args.stats {
        let report = build_report(
            &args.path.display().to_string(),
            &label,
            args.flags.seed,
            &outcome,
            &stats,
        );
        let json = serde_json::to_string_pretty(&report)?;
        fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.trace {
        let file =
            fs::File::create(path).with_context(|| format!("writing {}", path.display()))?;
        write_trace(file, &stats.windows)?;
    }
    Ok(code)
}

fn batch_command(args: &BatchArgs) -> anyhow::Result<u8> {
    let policies: Vec<(String, _)> = args
        .policies
        .iter()
        .map(|&choice| (describe(choice, &args.flags), build_config(choice, &args.flags)))
        .collect();
    for (label, config) in &policies {
        config.validate().with_context(|| format!("invalid configuration for {label}"))?;
    }
    let jobs = plan_jobs(&args.dir, &policies)?;
    let ran = run_batch(&jobs, seconds(args.timeout), args.jobs, &args.out, args.resume)?;
    eprintln!("c {} of {} runs written to {}", ran, jobs.len(), args.out.display());
    Ok(0)
}

fn cactus_command(args: &CactusArgs) -> anyhow::Result<u8> {
    let rows = cactus_from_files(&args.inputs)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path)
                .with_context(|| format!("writing {}", path.display()))?;
            write_cactus(file, &rows)?;
        }
        None => write_cactus(std::io::stdout().lock(), &rows)?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                // Help and version are successful exits by convention.
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve(args) => solve_command(args),
        Command::Batch(args) => batch_command(args),
        Command::Cactus(args) => cactus_command(args),
        Command::Gen(args) => generate(&args.family, args.out.as_ref()).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
