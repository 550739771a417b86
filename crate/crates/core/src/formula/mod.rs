//! CNF formulas: variables, literals, clauses, assignments, and a brute-force
//! reference solver for desk-scale cross-checking.

mod dimacs;

pub use dimacs::{parse_dimacs, to_dimacs, ParseError, ParsedDimacs};

use alloc::vec;
use alloc::vec::Vec;

/// A propositional variable, indexed from 1 as in DIMACS.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable(u32);

impl Variable {
    /// `index` is 1-based; 0 is reserved as the DIMACS clause terminator.
    pub fn new(index: u32) -> Variable {
        assert!(index > 0, "variable indices start at 1");
        Variable(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// 0-based position for dense per-variable arrays.
    pub(crate) fn slot(self) -> usize {
        (self.0 - 1) as usize
    }

    pub(crate) fn from_slot(slot: usize) -> Variable {
        Variable(slot as u32 + 1)
    }
}

impl core::fmt::Display for Variable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable together with a polarity, packed so that a literal doubles as an
/// index into watch lists: code = 2 * (var - 1) + (0 if positive else 1).
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Literal(u32);

impl Literal {
    pub fn new(var: Variable, positive: bool) -> Literal {
        Literal(var.slot() as u32 * 2 + if positive { 0 } else { 1 })
    }

    /// Builds a literal from a non-zero DIMACS integer.
    pub fn from_dimacs(lit: i32) -> Literal {
        assert!(lit != 0, "0 terminates DIMACS clauses and is not a literal");
        Literal::new(Variable::new(lit.unsigned_abs()), lit > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = (self.0 / 2 + 1) as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Variable {
        Variable(self.0 / 2 + 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }
}

impl core::ops::Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal(self.0 ^ 1)
    }
}

impl core::fmt::Display for Literal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Learnt clauses carry the LBD they were scored
/// with when the solver produced them; original clauses carry none.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Clause {
    literals: Vec<Literal>,
    learnt: bool,
    lbd: Option<u32>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause { literals, learnt: false, lbd: None }
    }

    pub fn new_learnt(literals: Vec<Literal>, lbd: u32) -> Clause {
        Clause { literals, learnt: true, lbd: Some(lbd) }
    }

    pub fn lits(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_learnt(&self) -> bool {
        self.learnt
    }

    pub fn lbd(&self) -> Option<u32> {
        self.lbd
    }
}

/// A CNF formula over variables `1..=num_vars`.
///
/// Clauses are kept in insertion order and may be empty (an empty clause makes
/// the formula trivially unsatisfiable). Duplicate-free, tautology-free clauses
/// are the responsibility of whoever builds the formula; [`parse_dimacs`]
/// normalizes its input accordingly.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(num_vars: usize) -> Formula {
        Formula { num_vars, clauses: Vec::new() }
    }

    /// Convenience constructor from DIMACS-style integer clauses, mostly for
    /// tests and generators: `Formula::from_ints(2, &[&[1, -2], &[2]])`.
    pub fn from_ints(num_vars: usize, clauses: &[&[i32]]) -> Formula {
        let mut f = Formula::new(num_vars);
        for ints in clauses {
            f.add_clause(Clause::new(ints.iter().map(|&i| Literal::from_dimacs(i)).collect()));
        }
        f
    }

    /// Panics if the clause mentions a variable outside `1..=num_vars`.
    pub fn add_clause(&mut self, clause: Clause) {
        for lit in clause.lits() {
            assert!(
                (lit.var().index() as usize) <= self.num_vars,
                "literal {lit} out of range for {} variables",
                self.num_vars
            );
        }
        self.clauses.push(clause);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    /// Evaluates the formula under a total assignment.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, EvaluateError> {
        for var in 1..=self.num_vars {
            let var = Variable::new(var as u32);
            if assignment.value(var).is_none() {
                return Err(EvaluateError::Incomplete { var });
            }
        }
        Ok(self.clauses.iter().all(|clause| {
            clause
                .lits()
                .iter()
                .any(|lit| assignment.value(lit.var()) == Some(lit.is_positive()))
        }))
    }
}

/// A (possibly partial) mapping from variables to truth values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new(num_vars: usize) -> Assignment {
        Assignment { values: vec![None; num_vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn set(&mut self, var: Variable, value: bool) {
        self.values[var.slot()] = Some(value);
    }

    pub fn value(&self, var: Variable) -> Option<bool> {
        self.values.get(var.slot()).copied().flatten()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    /// True iff the literal is satisfied; `None` while its variable is unset.
    pub fn value_of(&self, lit: Literal) -> Option<bool> {
        self.value(lit.var()).map(|v| v == lit.is_positive())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum EvaluateError {
    #[error("assignment leaves variable {var} unset")]
    Incomplete { var: Variable },
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum BruteForceError {
    #[error("{num_vars} variables exceed the exhaustive-search limit of {limit}")]
    TooManyVariables { num_vars: usize, limit: usize },
}

/// Largest variable count [`brute_force_solve`] accepts.
pub const BRUTE_FORCE_VAR_LIMIT: usize = 25;

/// Exhaustive reference solver for cross-checking the engine at desk scale.
///
/// Enumerates assignments in lexicographic order (variable 1 most significant,
/// false before true) and returns the first model, or `None` when every
/// assignment falsifies some clause.
pub fn brute_force_solve(formula: &Formula) -> Result<Option<Assignment>, BruteForceError> {
    let n = formula.num_vars();
    if n > BRUTE_FORCE_VAR_LIMIT {
        return Err(BruteForceError::TooManyVariables { num_vars: n, limit: BRUTE_FORCE_VAR_LIMIT });
    }
    let n = n as u32;
    for mask in 0u64..(1u64 << n) {
        let satisfied = formula.clauses().iter().all(|clause| {
            clause.lits().iter().any(|lit| {
                let bit = (mask >> (n - lit.var().index())) & 1 == 1;
                bit == lit.is_positive()
            })
        });
        if satisfied {
            let mut model = Assignment::new(n as usize);
            for idx in 1..=n {
                model.set(Variable::new(idx), (mask >> (n - idx)) & 1 == 1);
            }
            return Ok(Some(model));
        }
    }
    Ok(None)
}
