//! The benchmark batch runner: a directory of instances crossed with a list
//! of policies, results streamed to CSV so an interrupted batch can resume.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context};
use rayon::prelude::*;
use resat_core::engine::SolverConfig;
use serde::{Deserialize, Serialize};

use crate::input::{is_cnf_path, read_formula};
use crate::run::run_with_timeout;

/// One CSV row. `seconds` is the only column two identical runs may disagree
/// on; everything else is deterministic for a given seed.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BatchRecord {
    pub instance: String,
    pub policy: String,
    pub seed: u64,
    pub verdict: String,
    pub seconds: f64,
    pub conflicts: u64,
    pub decisions: u64,
    pub restarts: u64,
    pub resets: u64,
}

/// A planned unit of work: one instance under one policy configuration.
#[derive(Clone, Debug)]
pub struct Job {
    pub instance: PathBuf,
    pub policy_label: String,
    pub config: SolverConfig,
}

/// Enumerates `dir`'s CNF files (sorted by name) crossed with the policies,
/// instance-major: all policies for the first instance, then the next.
pub fn plan_jobs(
    dir: &Path,
    policies: &[(String, SolverConfig)],
) -> anyhow::Result<Vec<Job>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_cnf_path(p))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .cnf or .cnf.gz files in {}", dir.display());
    }
    let jobs = files
        .iter()
        .flat_map(|file| {
            policies.iter().map(|(label, config)| Job {
                instance: file.clone(),
                policy_label: label.clone(),
                config: config.clone(),
            })
        })
        .collect();
    Ok(jobs)
}

fn run_job(job: &Job, timeout: Duration) -> BatchRecord {
    let instance = job.instance.display().to_string();
    let blank = |verdict: &str| BatchRecord {
        instance: instance.clone(),
        policy: job.policy_label.clone(),
        seed: job.config.seed,
        verdict: verdict.to_string(),
        seconds: 0.0,
        conflicts: 0,
        decisions: 0,
        restarts: 0,
        resets: 0,
    };
    let formula = match read_formula(&job.instance) {
        Ok(f) => f,
        Err(err) => {
            eprintln!("c error on {instance}: {err:#}");
            return blank("ERROR");
        }
    };
    match run_with_timeout(formula, job.config.clone(), timeout) {
        Ok((outcome, stats, _)) => BatchRecord {
            verdict: outcome.verdict().to_string(),
            seconds: stats.elapsed_seconds,
            conflicts: stats.conflicts,
            decisions: stats.decisions,
            restarts: stats.restarts,
            resets: stats.resets,
            ..blank("")
        },
        Err(err) => {
            eprintln!("c error on {instance}: {err:#}");
            blank("ERROR")
        }
    }
}

/// Reads the rows already present in `out` and checks they are exactly the
/// prefix this plan would have produced (instance, policy, seed per row).
/// Returns how many jobs to skip.
fn validate_resume(out: &Path, jobs: &[Job]) -> anyhow::Result<usize> {
    if !out.exists() {
        return Ok(0);
    }
    let mut reader = csv::Reader::from_path(out)
        .with_context(|| format!("reading {} for --resume", out.display()))?;
    let mut done = 0usize;
    for (i, row) in reader.deserialize::<BatchRecord>().enumerate() {
        let row = row.with_context(|| format!("row {} of {}", i + 1, out.display()))?;
        let Some(job) = jobs.get(i) else {
            bail!("{} has more rows than this batch plans", out.display());
        };
        let expected = job.instance.display().to_string();
        if row.instance != expected
            || row.policy != job.policy_label
            || row.seed != job.config.seed
        {
            bail!(
                "{} row {}: found ({}, {}, {}), plan says ({}, {}, {}); \
                 refusing to resume a different batch",
                out.display(),
                i + 1,
                row.instance,
                row.policy,
                row.seed,
                expected,
                job.policy_label,
                job.config.seed,
            );
        }
        done = i + 1;
    }
    Ok(done)
}

/// Runs the batch, appending to `out` as results arrive. With `resume`, rows
/// already in `out` are validated against the plan and skipped. `parallel`
/// caps concurrent solver runs; rows are always written in plan order.
pub fn run_batch(
    jobs: &[Job],
    timeout: Duration,
    parallel: usize,
    out: &Path,
    resume: bool,
) -> anyhow::Result<usize> {
    let skip = if resume { validate_resume(out, jobs)? } else { 0 };
    let parallel = parallel.max(1);

    // On resume, append without re-emitting the header row.
    let (file, headers) = if skip > 0 {
        (fs::OpenOptions::new().append(true).open(out)?, false)
    } else {
        (fs::File::create(out)?, true)
    };
    let mut writer = csv::WriterBuilder::new().has_headers(headers).from_writer(file);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel)
        .build()
        .context("building worker pool")?;

    let mut completed = skip;
    // Chunked execution keeps output in plan order while still using the
    // pool, and bounds how much work a kill can lose.
    for chunk in jobs[skip..].chunks(parallel) {
        let records: Vec<BatchRecord> = if parallel == 1 {
            chunk.iter().map(|job| run_job(job, timeout)).collect()
        } else {
            pool.install(|| chunk.par_iter().map(|job| run_job(job, timeout)).collect())
        };
        for record in records {
            writer.serialize(record)?;
            completed += 1;
        }
        writer.flush()?;
        writer.get_ref().sync_data().ok();
    }
    writer.flush()?;
    Ok(completed - skip)
}

/// Reads a batch CSV back. Used by `cactus` and by tests.
pub fn read_records(path: &Path) -> anyhow::Result<Vec<BatchRecord>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let mut records = Vec::new();
    for row in reader.deserialize::<BatchRecord>() {
        records.push(row.with_context(|| format!("parsing {}", path.display()))?);
    }
    Ok(records)
}

/// Writes records to a CSV writer; the inverse of [`read_records`].
pub fn write_records<W: Write>(writer: W, records: &[BatchRecord]) -> anyhow::Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    for record in records {
        csv.serialize(record)?;
    }
    csv.flush()?;
    Ok(())
}
