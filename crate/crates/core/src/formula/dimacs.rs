//! DIMACS CNF reading and writing.
//!
//! The reader normalizes clauses on the way in: duplicate literals are dropped,
//! tautological clauses are removed (and counted), and a header/body clause
//! count mismatch is reported as data rather than an error so callers can warn.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Clause, Formula, Literal, Variable};

/// Result of a successful parse, with normalization notes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedDimacs {
    pub formula: Formula,
    /// Clauses dropped because they contained a literal and its negation.
    pub tautologies_removed: usize,
    /// `Some((declared, found))` when the header count disagrees with the body.
    /// `found` counts clauses as written, before tautology removal.
    pub clause_count_mismatch: Option<(usize, usize)>,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected 'p cnf <vars> <clauses>' header before clause data")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed header '{header}'")]
    BadHeader { line: usize, header: String },
    #[error("line {line}: '{token}' is not an integer")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} outside declared range of {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("line {line}: final clause is missing its 0 terminator")]
    UnterminatedClause { line: usize },
}

fn is_skippable(line: &str) -> bool {
    let trimmed = line.trim_start();
    trimmed.is_empty() || trimmed.starts_with('c')
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let bad = || ParseError::BadHeader { line: line_no, header: line.trim().to_string() };
    let mut tokens = line.split_ascii_whitespace();
    if tokens.next() != Some("p") || tokens.next() != Some("cnf") {
        return Err(bad());
    }
    let vars: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let clauses: usize = tokens.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if tokens.next().is_some() || vars > (i32::MAX - 1) as usize {
        return Err(bad());
    }
    Ok((vars, clauses))
}

/// Parses DIMACS CNF text. Clauses may span lines and share lines; comment
/// lines (`c ...`) and blank lines are allowed anywhere. Zero-length clauses
/// are kept, leaving the formula trivially unsatisfiable.
pub fn parse_dimacs(input: &str) -> Result<ParsedDimacs, ParseError> {
    let mut lines = input.lines().enumerate();
    let mut line_no = 0;
    let header = loop {
        match lines.next() {
            Some((idx, line)) => {
                line_no = idx + 1;
                if is_skippable(line) {
                    continue;
                }
                if line.trim_start().starts_with('p') {
                    break parse_header(line, line_no)?;
                }
                return Err(ParseError::MissingHeader { line: line_no });
            }
            None => return Err(ParseError::MissingHeader { line: line_no.max(1) }),
        }
    };
    let (num_vars, declared_clauses) = header;

    let mut formula = Formula::new(num_vars);
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_tautology = false;
    let mut clauses_found = 0usize;
    let mut tautologies_removed = 0usize;
    let mut last_token_line = line_no;

    for (idx, line) in lines {
        let line_no = idx + 1;
        if is_skippable(line) {
            continue;
        }
        for token in line.split_ascii_whitespace() {
            last_token_line = line_no;
            let value: i64 = token
                .parse()
                .map_err(|_| ParseError::InvalidToken { line: line_no, token: token.to_string() })?;
            if value == 0 {
                clauses_found += 1;
                if pending_tautology {
                    tautologies_removed += 1;
                } else {
                    formula.add_clause(Clause::new(core::mem::take(&mut pending)));
                }
                pending.clear();
                pending_tautology = false;
                continue;
            }
            if value.unsigned_abs() as usize > num_vars {
                return Err(ParseError::LiteralOutOfRange {
                    line: line_no,
                    literal: value,
                    num_vars,
                });
            }
            let lit = Literal::new(Variable::new(value.unsigned_abs() as u32), value > 0);
            if pending.contains(&!lit) {
                pending_tautology = true;
            }
            if !pending_tautology && !pending.contains(&lit) {
                pending.push(lit);
            }
        }
    }
    if !pending.is_empty() || pending_tautology {
        return Err(ParseError::UnterminatedClause { line: last_token_line });
    }

    let clause_count_mismatch =
        (clauses_found != declared_clauses).then_some((declared_clauses, clauses_found));
    Ok(ParsedDimacs { formula, tautologies_removed, clause_count_mismatch })
}

/// Renders a formula as DIMACS text: header line, then one clause per line.
pub fn to_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    out.push_str("p cnf ");
    out.push_str(&formula.num_vars().to_string());
    out.push(' ');
    out.push_str(&formula.clauses().len().to_string());
    out.push('\n');
    for clause in formula.clauses() {
        for lit in clause.lits() {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
