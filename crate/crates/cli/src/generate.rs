//! The `gen` subcommand: writes instances from the built-in families as
//! DIMACS, for building local benchmark suites.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::Subcommand;
use resat_core::formula::to_dimacs;
use resat_core::{instances, Formula};

#[derive(Subcommand, Clone, Debug)]
pub enum Family {
    /// Uniform random 3-CNF
    Random3 {
        #[arg(long)]
        vars: u32,
        /// Exact clause count; exclusive with --ratio
        #[arg(long, conflicts_with = "ratio")]
        clauses: Option<usize>,
        /// Clauses-per-variable ratio (e.g. 4.26)
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pigeonhole principle (unsatisfiable when pigeons > holes)
    Php {
        #[arg(long)]
        pigeons: u32,
        #[arg(long)]
        holes: u32,
        /// Shuffle variable names and clause order with this seed
        #[arg(long)]
        permute_seed: Option<u64>,
    },
    /// Planted preimage of a small mixing circuit (satisfiable)
    Hash {
        #[arg(long, default_value_t = 8)]
        bits: u32,
        #[arg(long, default_value_t = 5)]
        rounds: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Planted xor-chain system disguised as plain CNF (satisfiable)
    Parity {
        #[arg(long)]
        vars: u32,
        #[arg(long)]
        equations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Equivalence check of two adder circuits (unsatisfiable)
    Miter {
        #[arg(long)]
        width: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn build(family: &Family) -> anyhow::Result<Formula> {
    Ok(match *family {
        Family::Random3 { vars, clauses, ratio, seed } => match (clauses, ratio) {
            (Some(m), _) => instances::random_3cnf(vars, m, seed),
            (None, Some(r)) => instances::random_3cnf_with_ratio(vars, r, seed),
            (None, None) => anyhow::bail!("random3 needs --clauses or --ratio"),
        },
        Family::Php { pigeons, holes, permute_seed } => match permute_seed {
            Some(seed) => instances::pigeonhole_permuted(pigeons, holes, seed),
            None => instances::pigeonhole(pigeons, holes),
        },
        Family::Hash { bits, rounds, seed } => {
            instances::toy_hash_preimage(bits, rounds, seed)
        }
        Family::Parity { vars, equations, seed } => {
            instances::parity_obfuscated(vars, equations, seed)
        }
        Family::Miter { width, seed } => instances::adder_miter(width, seed),
    })
}

/// Renders the chosen instance to `out`, or stdout when no path is given.
pub fn generate(family: &Family, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let formula = build(family)?;
    let text = to_dimacs(&formula);
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
