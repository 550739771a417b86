//! Running one solver instance under a wall-clock budget, plus the stats and
//! trace serializers.

use std::io::Write;
use std::time::{Duration, Instant};

use resat_core::bandit::Arm;
use resat_core::engine::{Outcome, RunStats, SolverConfig};
use resat_core::reset::WindowRecord;
use resat_core::{Formula, Solver};
use serde::Serialize;

/// Solves `formula` under `config`, stopping at `timeout`. The returned stats
/// have `elapsed_seconds` filled in. The solver is returned too so callers can
/// re-verify models against the formula it holds.
pub fn run_with_timeout(
    formula: Formula,
    config: SolverConfig,
    timeout: Duration,
) -> anyhow::Result<(Outcome, RunStats, Solver)> {
    let mut solver = Solver::new(formula, config)?;
    let start = Instant::now();
    let outcome = solver.solve_with_stop(&mut || start.elapsed() >= timeout);
    let mut stats = solver.stats().clone();
    stats.elapsed_seconds = start.elapsed().as_secs_f64();
    Ok((outcome, stats, solver))
}

/// Everything the JSON stats report carries. Field names are the schema.
#[derive(Serialize, Debug)]
pub struct StatsReport {
    pub instance: String,
    pub policy: String,
    pub seed: u64,
    pub verdict: String,
    pub seconds: f64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub resets: u64,
    pub learned: u64,
    pub deleted: u64,
    pub reward_windows: WindowSummary,
}

/// Aggregate view of the per-window reward trace.
#[derive(Serialize, Debug)]
pub struct WindowSummary {
    pub count: usize,
    /// Windows that credited an arm (the first window never does).
    pub credited: usize,
    pub successes: usize,
    pub mean_rw: f64,
    pub final_ema: f64,
}

pub fn summarize_windows(windows: &[WindowRecord]) -> WindowSummary {
    let credited = windows.iter().filter(|w| w.success.is_some()).count();
    let successes = windows.iter().filter(|w| w.success == Some(true)).count();
    let mean_rw = if windows.is_empty() {
        0.0
    } else {
        windows.iter().map(|w| w.rw).sum::<f64>() / windows.len() as f64
    };
    WindowSummary {
        count: windows.len(),
        credited,
        successes,
        mean_rw,
        final_ema: windows.last().map_or(0.0, |w| w.ema),
    }
}

pub fn build_report(
    instance: &str,
    policy: &str,
    seed: u64,
    outcome: &Outcome,
    stats: &RunStats,
) -> StatsReport {
    StatsReport {
        instance: instance.to_string(),
        policy: policy.to_string(),
        seed,
        verdict: outcome.verdict().to_string(),
        seconds: stats.elapsed_seconds,
        conflicts: stats.conflicts,
        decisions: stats.decisions,
        propagations: stats.propagations,
        restarts: stats.restarts,
        resets: stats.resets,
        learned: stats.learned,
        deleted: stats.deleted,
        reward_windows: summarize_windows(&stats.windows),
    }
}

fn arm_label(arm: Option<Arm>) -> &'static str {
    match arm {
        None => "",
        Some(Arm::Restart) => "restart",
        Some(Arm::Reset) => "reset",
    }
}

/// Writes the per-window trace as CSV: one row per restart boundary, blank
/// arm/success fields for windows that credited nothing.
pub fn write_trace<W: Write>(writer: W, windows: &[WindowRecord]) -> anyhow::Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(["window", "arm", "rw", "ema", "success"])?;
    for w in windows {
        csv.write_record([
            w.index.to_string(),
            arm_label(w.arm).to_string(),
            format!("{}", w.rw),
            format!("{}", w.ema),
            w.success.map_or_else(String::new, |s| s.to_string()),
        ])?;
    }
    csv.flush()?;
    Ok(())
}
