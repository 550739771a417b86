//! CDCL SAT solving with adaptive variable-activity resets.
//!
//! The engine is a conflict-driven clause-learning solver with two-watched-literal
//! propagation, first-UIP learning, EVSIDS branching, phase saving, Luby restarts
//! and glucose-style clause database reduction. What sets it apart is what happens
//! at a restart boundary: instead of always keeping the branching heuristic's
//! state, a bandit policy (fixed probability, Thompson sampling with optional
//! decayed posteriors, or sliding-window UCB) chooses between a plain restart and
//! a full or partial re-randomization of variable activities. The policy is
//! rewarded by the learning rate the solver achieved in the window that the
//! chosen action opened, so the solver adapts its reset frequency to the instance.
//!
//! The crate is `no_std`-compatible (requires `alloc`); anything that needs an
//! operating system (files, clocks, processes) lives in the companion CLI crate.
//! Wall-clock budgets are injected as a stop callback for the same reason.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod bandit;
pub mod engine;
pub mod formula;
pub mod instances;
pub mod reset;

pub use engine::{Outcome, RunStats, Solver, SolverConfig};
pub use formula::{Assignment, Clause, Formula, Literal, Variable};
