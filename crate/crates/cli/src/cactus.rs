//! Cactus-plot data: per policy, the sorted times of solved instances with a
//! cumulative rank, ready for any plotting tool.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::batch::{read_records, BatchRecord};

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CactusRow {
    pub policy: String,
    pub rank: usize,
    pub seconds: f64,
}

fn solved(record: &BatchRecord) -> bool {
    record.verdict == "SAT" || record.verdict == "UNSAT"
}

/// Merges records (possibly from several batch files), keeps solved rows
/// only, and emits per-policy ascending times with ranks starting at 1.
/// Policies appear in alphabetical order; a policy with no solved rows
/// contributes nothing.
pub fn cactus_rows(records: &[BatchRecord]) -> Vec<CactusRow> {
    let mut by_policy: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for record in records.iter().filter(|r| solved(r)) {
        by_policy.entry(&record.policy).or_default().push(record.seconds);
    }
    let mut rows = Vec::new();
    for (policy, mut times) in by_policy {
        times.sort_by(f64::total_cmp);
        rows.extend(times.into_iter().enumerate().map(|(i, seconds)| CactusRow {
            policy: policy.to_string(),
            rank: i + 1,
            seconds,
        }));
    }
    rows
}

pub fn cactus_from_files(paths: &[PathBuf]) -> anyhow::Result<Vec<CactusRow>> {
    let mut records = Vec::new();
    for path in paths {
        records.extend(read_records(path)?);
    }
    Ok(cactus_rows(&records))
}

pub fn write_cactus<W: Write>(writer: W, rows: &[CactusRow]) -> anyhow::Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    for row in rows {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}
