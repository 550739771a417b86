//! Reading CNF files, with transparent gzip decompression.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::Context;
use flate2::read::GzDecoder;
use resat_core::formula::parse_dimacs;
use resat_core::Formula;

/// Reads a `.cnf` or `.cnf.gz` file into a formula. Compression is detected
/// by the `.gz` suffix, not by content sniffing.
pub fn read_formula(path: &Path) -> anyhow::Result<Formula> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = if path.extension().is_some_and(|e| e == "gz") {
        let mut out = String::new();
        GzDecoder::new(&bytes[..])
            .read_to_string(&mut out)
            .with_context(|| format!("decompressing {}", path.display()))?;
        out
    } else {
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?
    };
    let parsed =
        parse_dimacs(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some((declared, found)) = parsed.clause_count_mismatch {
        eprintln!(
            "c warning: {} declares {declared} clauses but contains {found}",
            path.display()
        );
    }
    Ok(parsed.formula)
}

/// True for the file extensions the batch runner picks up.
pub fn is_cnf_path(path: &Path) -> bool {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    name.ends_with(".cnf") || name.ends_with(".cnf.gz")
}
