//! Run outcome and counters reported by the solver.

use alloc::vec::Vec;

use crate::formula::{Assignment, Literal};
use crate::reset::WindowRecord;

#[derive(Clone, PartialEq, Debug)]
pub enum Outcome {
    Sat(Assignment),
    Unsat,
    /// A budget ran out before the search finished.
    Indeterminate,
}

impl Outcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            Outcome::Sat(_) => "SAT",
            Outcome::Unsat => "UNSAT",
            Outcome::Indeterminate => "INDET",
        }
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            Outcome::Sat(model) => Some(model),
            _ => None,
        }
    }

    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }
}

/// Counters are cumulative over the run; `resets <= restarts` always, and
/// every counter only grows while the search is running.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct RunStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    /// Restart boundaries reached (whatever action was taken there).
    pub restarts: u64,
    /// Boundaries that re-randomized activities (fully or partially).
    pub resets: u64,
    pub learned: u64,
    pub deleted: u64,
    /// Filled in by the caller that owns a clock; the core never measures time.
    pub elapsed_seconds: f64,
    /// One record per completed restart window, in order.
    pub windows: Vec<WindowRecord>,
    /// Decision literals in order, when the config asked for them.
    pub decision_trace: Option<Vec<Literal>>,
}
