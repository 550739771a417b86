//! The CDCL engine: unit propagation, first-UIP conflict analysis, activity
//! driven branching with phase saving, learnt-clause reduction, and a Luby
//! restart schedule whose boundaries hand control to the reset machinery.

pub mod activity;
mod clause_db;
mod config;
mod luby;
mod stats;
pub mod trail;

pub use clause_db::ClauseRef;
pub use config::{ConfigError, PolicyKind, ResetScope, SolverConfig};
pub use luby::luby;
pub use stats::{Outcome, RunStats};

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::formula::{Assignment, Formula, Literal, Variable};
use crate::reset::{self, ResetAction, ResetPolicy, RewardTracker};
use activity::ActivityTable;
use clause_db::ClauseDb;
use trail::Trail;

/// The stop callback is polled once per this many search-loop steps.
const STOP_POLL_MASK: u64 = 1024 - 1;

/// Number of distinct decision levels among `levels`.
fn lbd_from_levels(levels: &[u32]) -> u32 {
    let mut sorted = levels.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() as u32
}

/// Backjump target for a learnt clause with literals at `levels`: the highest
/// level strictly below the maximum, or 0 when only one level appears.
fn backjump_from_levels(levels: &[u32]) -> u32 {
    let top = levels.iter().copied().max().unwrap_or(0);
    levels.iter().copied().filter(|&l| l < top).max().unwrap_or(0)
}

/// A single-use CDCL solver over one formula.
///
/// All randomness comes from one seeded generator that only the boundary
/// policy and the resets consume; the search itself is deterministic, so two
/// runs with the same formula, config, and seed replay identically.
pub struct Solver {
    formula: Formula,
    config: SolverConfig,
    db: ClauseDb,
    trail: Trail,
    activities: ActivityTable,
    tracker: RewardTracker,
    policy: ResetPolicy,
    rng: ChaCha8Rng,
    stats: RunStats,
    /// Value of `stats.conflicts` at the most recent restart boundary.
    conflicts_at_boundary: u64,
    root_conflict: bool,
    finished: Option<Outcome>,
    /// Scratch marks for conflict analysis, always false between conflicts.
    seen: Vec<bool>,
}

impl Solver {
    pub fn new(formula: Formula, config: SolverConfig) -> Result<Solver, ConfigError> {
        config.validate()?;
        let num_vars = formula.num_vars();
        let mut solver = Solver {
            db: ClauseDb::new(num_vars, config.learnt_limit),
            trail: Trail::new(num_vars),
            activities: ActivityTable::new(num_vars, config.activity_decay),
            tracker: RewardTracker::new(config.ema_decay, config.flip_success),
            policy: ResetPolicy::from_kind(&config.policy),
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            stats: RunStats {
                decision_trace: config.record_decisions.then(Vec::new),
                ..RunStats::default()
            },
            conflicts_at_boundary: 0,
            root_conflict: false,
            finished: None,
            seen: vec![false; num_vars],
            formula,
            config,
        };
        solver.ingest();
        Ok(solver)
    }

    /// Loads the formula's clauses: duplicates within a clause collapse,
    /// tautologies drop, units go straight onto the root level, and an empty
    /// or contradicted clause marks the formula unsatisfiable outright.
    fn ingest(&mut self) {
        'clauses: for idx in 0..self.formula.clauses().len() {
            let mut lits: Vec<Literal> = self.formula.clauses()[idx].lits().to_vec();
            lits.sort_unstable();
            lits.dedup();
            for pair in lits.windows(2) {
                if pair[0].var() == pair[1].var() {
                    continue 'clauses; // tautology: v and not-v side by side
                }
            }
            match lits.len() {
                0 => self.root_conflict = true,
                1 => match self.trail.value_lit(lits[0]) {
                    Some(false) => self.root_conflict = true,
                    Some(true) => {}
                    None => self.trail.enqueue(lits[0], None),
                },
                _ => {
                    self.db.add_original(lits);
                }
            }
        }
    }

    pub fn solve(&mut self) -> Outcome {
        self.solve_with_stop(&mut || false)
    }

    /// Runs the search until a verdict, the conflict budget, or the stop
    /// callback ends it. `stop` is polled about once per thousand loop steps.
    /// After an indeterminate outcome the search can be resumed by calling
    /// again; settled verdicts are cached and returned as-is.
    pub fn solve_with_stop(&mut self, stop: &mut dyn FnMut() -> bool) -> Outcome {
        if let Some(done) = &self.finished {
            return done.clone();
        }
        if self.root_conflict {
            return self.finish(Outcome::Unsat, true);
        }
        let mut steps: u64 = 0;
        loop {
            steps += 1;
            if steps & STOP_POLL_MASK == 0 && stop() {
                return self.finish(Outcome::Indeterminate, false);
            }
            if let Some(conflict) = self.db.propagate(&mut self.trail, &mut self.stats.propagations)
            {
                self.stats.conflicts += 1;
                if self.trail.decision_level() == 0 {
                    return self.finish(Outcome::Unsat, true);
                }
                self.learn_from(conflict);
                if let Some(budget) = self.config.conflict_budget {
                    if self.stats.conflicts >= budget {
                        return self.finish(Outcome::Indeterminate, false);
                    }
                }
                continue;
            }
            if self.boundary_due() {
                self.restart_boundary();
                continue;
            }
            if self.db.over_limit() {
                self.stats.deleted += self.db.reduce(&self.trail);
            }
            match self.pick_branch() {
                Some(decision) => self.push_decision(decision),
                None => {
                    let model = self.model_from_trail();
                    assert_eq!(
                        self.formula.evaluate(&model),
                        Ok(true),
                        "internal error: complete assignment fails the formula"
                    );
                    return self.finish(Outcome::Sat(model), true);
                }
            }
        }
    }

    fn finish(&mut self, outcome: Outcome, settle: bool) -> Outcome {
        let records = self.tracker.take_records();
        self.stats.windows.extend(records);
        if settle {
            self.finished = Some(outcome.clone());
        }
        outcome
    }

    /// First-UIP analysis of `conflict`, then backjump and learn.
    fn learn_from(&mut self, conflict: ClauseRef) {
        let (learnt, backjump, lbd) = self.analyze(conflict);
        self.trail.backtrack_to(backjump, &mut self.activities);
        self.stats.learned += 1;
        self.tracker.on_clause_learned();
        if learnt.len() == 1 {
            debug_assert_eq!(backjump, 0);
            self.trail.enqueue(learnt[0], None);
        } else {
            // Watch the asserting literal and a literal from the backjump
            // level: the latter is the last to unassign, which keeps the
            // watch invariant through future backtracking.
            let asserting = learnt[0];
            debug_assert_eq!(self.trail.level_of(learnt[1].var()), backjump);
            let cref = self.db.add_learnt(learnt, lbd);
            self.trail.enqueue(asserting, Some(cref));
        }
        self.db.decay_clause_activities();
    }

    /// Resolves backwards from the conflict until one literal of the current
    /// level remains: the first unique implication point. Returns the learnt
    /// clause (asserting literal first, deepest other literal second), the
    /// backjump level, and the clause's distinct-level count.
    fn analyze(&mut self, conflict: ClauseRef) -> (Vec<Literal>, u32, u32) {
        let current = self.trail.decision_level();
        debug_assert!(current > 0, "level-0 conflicts terminate the search upstream");

        let mut others: Vec<Literal> = Vec::new();
        let mut to_bump: Vec<Variable> = Vec::new();
        let mut open = 0usize;
        let mut index = self.trail.len();
        let mut clause = conflict;
        let mut resolved_on: Option<Literal> = None;

        let uip = loop {
            self.db.bump_clause(clause);
            let lits = self.db.lits(clause);
            debug_assert!(resolved_on.map_or(true, |p| lits[0] == p));
            for &q in &lits[usize::from(resolved_on.is_some())..] {
                let v = q.var();
                if self.seen[v.slot()] || self.trail.level_of(v) == 0 {
                    continue;
                }
                debug_assert_eq!(self.trail.value_lit(q), Some(false));
                self.seen[v.slot()] = true;
                to_bump.push(v);
                if self.trail.level_of(v) == current {
                    open += 1;
                } else {
                    others.push(q);
                }
            }
            let pivot = loop {
                index -= 1;
                let lit = self.trail.lits()[index];
                if self.seen[lit.var().slot()] {
                    break lit;
                }
            };
            self.seen[pivot.var().slot()] = false;
            open -= 1;
            if open == 0 {
                break pivot;
            }
            clause = self
                .trail
                .reason_of(pivot.var())
                .expect("only the decision can be reasonless at its level");
            resolved_on = Some(pivot);
        };

        let mut learnt = Vec::with_capacity(others.len() + 1);
        learnt.push(!uip);
        learnt.extend_from_slice(&others);

        let levels: Vec<u32> = learnt.iter().map(|l| self.trail.level_of(l.var())).collect();
        debug_assert_eq!(levels.iter().filter(|&&l| l == current).count(), 1);
        let lbd = lbd_from_levels(&levels);
        let backjump = backjump_from_levels(&levels);
        if learnt.len() >= 2 {
            let mut deepest = 1;
            for i in 2..learnt.len() {
                if levels[i] > levels[deepest] {
                    deepest = i;
                }
            }
            learnt.swap(1, deepest);
        }

        for v in &to_bump {
            self.seen[v.slot()] = false;
        }
        self.activities.bump_and_decay(&to_bump);

        (learnt, backjump, lbd)
    }

    fn boundary_due(&self) -> bool {
        let since = self.stats.conflicts - self.conflicts_at_boundary;
        since >= luby(self.stats.restarts + 1) * self.config.luby_unit
    }

    fn restart_boundary(&mut self) {
        let action = reset::on_restart_boundary(
            &mut self.trail,
            &mut self.activities,
            &mut self.tracker,
            &mut self.policy,
            self.config.reset_scope,
            &mut self.rng,
        );
        self.stats.restarts += 1;
        if action != ResetAction::Restart {
            self.stats.resets += 1;
        }
        self.conflicts_at_boundary = self.stats.conflicts;
        #[cfg(debug_assertions)]
        self.db.check_watch_invariant(&self.trail);
    }

    /// Highest-activity unassigned variable (ties to the lowest index), with
    /// its saved phase. `None` means the assignment is complete.
    fn pick_branch(&mut self) -> Option<Literal> {
        while let Some(var) = self.activities.pop_max() {
            if self.trail.value(var).is_none() {
                return Some(Literal::new(var, self.trail.phase(var)));
            }
        }
        None
    }

    fn push_decision(&mut self, decision: Literal) {
        self.trail.new_decision_level();
        self.trail.enqueue(decision, None);
        self.stats.decisions += 1;
        self.tracker.on_decision();
        if let Some(trace) = &mut self.stats.decision_trace {
            trace.push(decision);
        }
    }

    fn model_from_trail(&self) -> Assignment {
        let mut model = Assignment::new(self.trail.num_vars());
        for slot in 0..self.trail.num_vars() {
            let var = Variable::from_slot(slot);
            if let Some(value) = self.trail.value(var) {
                model.set(var, value);
            }
        }
        debug_assert!(model.is_total());
        model
    }

    /// Replaces the conflict budget. Raising it after an indeterminate
    /// outcome lets the next [`Solver::solve`] call resume the search.
    pub fn set_conflict_budget(&mut self, budget: Option<u64>) {
        self.config.conflict_budget = budget;
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.trail.num_vars()
    }

    pub fn value(&self, var: Variable) -> Option<bool> {
        self.trail.value(var)
    }

    pub fn decision_level(&self) -> u32 {
        self.trail.decision_level()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::brute_force_solve;
    use crate::instances;

    fn lit(i: i32) -> Literal {
        Literal::from_dimacs(i)
    }

    fn solver_for(ints: &[&[i32]], num_vars: usize) -> Solver {
        Solver::new(Formula::from_ints(num_vars, ints), SolverConfig::default()).unwrap()
    }

    #[test]
    fn propagation_records_the_implying_clause() {
        let mut s = solver_for(&[&[-1, 2]], 2);
        s.push_decision(lit(1));
        assert_eq!(s.db.propagate(&mut s.trail, &mut s.stats.propagations), None);
        assert_eq!(s.value(Variable::new(2)), Some(true));
        let reason = s.trail.reason_of(Variable::new(2)).expect("propagated, not decided");
        // Propagation normalizes the implied literal to the front.
        assert_eq!(s.db.lits(reason), &[lit(2), lit(-1)]);
    }

    #[test]
    fn falsified_clause_surfaces_as_conflict() {
        let mut s = solver_for(&[&[-1, 2], &[-1, -2]], 2);
        s.push_decision(lit(1));
        let conflict = s.db.propagate(&mut s.trail, &mut s.stats.propagations);
        assert!(conflict.is_some(), "the two implications of var 1 disagree on var 2");
        assert_eq!(s.db.lits(conflict.unwrap()), &[lit(-2), lit(-1)]);
    }

    #[test]
    fn propagation_without_queued_literals_is_a_noop() {
        let mut s = solver_for(&[&[1, 2]], 2);
        assert_eq!(s.db.propagate(&mut s.trail, &mut s.stats.propagations), None);
        assert_eq!(s.trail.len(), 0);
    }

    #[test]
    fn branching_takes_highest_activity_lowest_index_saved_phase() {
        let mut s = solver_for(&[], 2);
        s.activities.set_activity(Variable::new(1), 0.5);
        s.activities.set_activity(Variable::new(2), 0.9);
        assert_eq!(s.pick_branch(), Some(lit(-2))); // initial phase is false

        let mut s = solver_for(&[], 2);
        s.activities.set_activity(Variable::new(1), 0.7);
        s.activities.set_activity(Variable::new(2), 0.7);
        assert_eq!(s.pick_branch(), Some(lit(-1)));

        let mut s = solver_for(&[], 2);
        s.activities.set_activity(Variable::new(1), 0.1);
        s.activities.set_activity(Variable::new(2), 0.9);
        s.trail.enqueue(lit(2), None);
        assert_eq!(s.pick_branch(), Some(lit(-1)));
    }

    #[test]
    fn level_summaries_of_learnt_clauses() {
        assert_eq!(lbd_from_levels(&[3, 5, 5]), 2);
        assert_eq!(backjump_from_levels(&[3, 5, 5]), 3);
        assert_eq!(lbd_from_levels(&[7]), 1);
        assert_eq!(backjump_from_levels(&[7]), 0);
    }

    #[test]
    fn analysis_reduces_single_level_conflict_to_a_unit() {
        let mut s = solver_for(&[&[-1, 2], &[-2, 3], &[-1, -2, -3]], 3);
        s.push_decision(lit(1));
        let conflict = s.db.propagate(&mut s.trail, &mut s.stats.propagations).unwrap();
        let (learnt, backjump, lbd) = s.analyze(conflict);
        assert_eq!(learnt, [lit(-1)]);
        assert_eq!(backjump, 0);
        assert_eq!(lbd, 1);
    }

    #[test]
    fn analysis_stops_at_the_first_uip_across_levels() {
        let mut s = solver_for(&[&[-3, 2], &[-1, -2, -3]], 3);
        s.push_decision(lit(1));
        assert!(s.db.propagate(&mut s.trail, &mut s.stats.propagations).is_none());
        s.push_decision(lit(3));
        let conflict = s.db.propagate(&mut s.trail, &mut s.stats.propagations).unwrap();
        let (learnt, backjump, lbd) = s.analyze(conflict);
        assert_eq!(learnt, [lit(-3), lit(-1)]);
        assert_eq!(backjump, 1);
        assert_eq!(lbd, 2);
    }

    #[test]
    fn contradictory_units_are_unsat() {
        let mut s = solver_for(&[&[1], &[-1]], 1);
        assert_eq!(s.solve(), Outcome::Unsat);
    }

    #[test]
    fn classic_two_variable_contradiction_is_unsat() {
        let mut s = solver_for(&[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]], 2);
        assert_eq!(s.solve(), Outcome::Unsat);
    }

    #[test]
    fn three_pigeons_two_holes_is_unsat() {
        let mut s = Solver::new(instances::pigeonhole(3, 2), SolverConfig::default()).unwrap();
        assert_eq!(s.solve(), Outcome::Unsat);
        assert!(s.stats().conflicts > 0);
    }

    #[test]
    fn empty_formula_and_empty_clause_edge_cases() {
        let mut s = Solver::new(Formula::new(0), SolverConfig::default()).unwrap();
        assert!(s.solve().is_sat());

        let mut f = Formula::new(1);
        f.add_clause(crate::formula::Clause::new(Vec::new()));
        let mut s = Solver::new(f, SolverConfig::default()).unwrap();
        assert_eq!(s.solve(), Outcome::Unsat);
    }

    #[test]
    fn ingest_collapses_duplicates_and_drops_tautologies() {
        let mut s = solver_for(&[&[1, 1, 2], &[1, -1]], 2);
        assert_eq!(s.db.num_original(), 1, "tautology dropped, duplicate collapsed");
        assert!(s.solve().is_sat());
    }

    #[test]
    fn verdicts_match_brute_force_on_small_random_instances() {
        for seed in 0..25 {
            let f = instances::random_3cnf_with_ratio(12, 4.26, seed);
            let expected = brute_force_solve(&f).unwrap();
            let mut s = Solver::new(f.clone(), SolverConfig::default()).unwrap();
            match s.solve() {
                Outcome::Sat(model) => {
                    assert!(expected.is_some(), "seed {seed}: solver sat, oracle unsat");
                    assert_eq!(f.evaluate(&model), Ok(true), "seed {seed}");
                }
                Outcome::Unsat => assert!(expected.is_none(), "seed {seed}: solver unsat, oracle sat"),
                Outcome::Indeterminate => panic!("seed {seed}: no budget was set"),
            }
        }
    }

    fn run_counters(config: SolverConfig, formula: Formula) -> (Outcome, RunStats) {
        let mut s = Solver::new(formula, config).unwrap();
        let outcome = s.solve();
        (outcome, s.stats().clone())
    }

    #[test]
    fn identical_runs_replay_identically() {
        let config = SolverConfig {
            policy: PolicyKind::Thompson { decay: Some(0.8) },
            luby_unit: 4,
            seed: 9,
            record_decisions: true,
            ..SolverConfig::default()
        };
        let f = instances::random_3cnf(30, 128, 3);
        let (o1, s1) = run_counters(config.clone(), f.clone());
        let (o2, s2) = run_counters(config, f);
        assert_eq!(o1, o2);
        assert_eq!(s1, s2);
    }

    #[test]
    fn zero_probability_resets_replay_the_baseline_exactly() {
        let f = instances::random_3cnf(30, 128, 4);
        let base = SolverConfig {
            luby_unit: 4,
            seed: 11,
            record_decisions: true,
            ..SolverConfig::default()
        };
        let fixed = SolverConfig {
            policy: PolicyKind::Fixed { reset_probability: 0.0 },
            ..base.clone()
        };
        let (o1, s1) = run_counters(base, f.clone());
        let (o2, s2) = run_counters(fixed, f);
        assert_eq!(o1, o2);
        assert_eq!(s1.decision_trace, s2.decision_trace);
        assert_eq!(s1.conflicts, s2.conflicts);
        assert_eq!(s1.restarts, s2.restarts);
        assert_eq!(s2.resets, 0);
    }

    #[test]
    fn conflict_budget_reports_indeterminate() {
        let config = SolverConfig { conflict_budget: Some(20), ..SolverConfig::default() };
        let (outcome, stats) = run_counters(config, instances::pigeonhole(5, 4));
        assert_eq!(outcome, Outcome::Indeterminate);
        assert_eq!(stats.conflicts, 20);
    }

    #[test]
    fn stop_callback_interrupts_the_search() {
        // Big enough that the search cannot finish before the first poll.
        let mut s = Solver::new(instances::pigeonhole(9, 8), SolverConfig::default()).unwrap();
        let outcome = s.solve_with_stop(&mut || true);
        assert_eq!(outcome, Outcome::Indeterminate);
    }

    #[test]
    fn baseline_never_resets_and_traces_every_window() {
        let config = SolverConfig { luby_unit: 1, ..SolverConfig::default() };
        let (outcome, stats) = run_counters(config, instances::pigeonhole(4, 3));
        assert_eq!(outcome, Outcome::Unsat);
        assert_eq!(stats.resets, 0);
        assert!(stats.restarts > 0, "tiny Luby unit should produce boundaries");
        assert_eq!(stats.windows.len() as u64, stats.restarts);
        assert!(stats.windows.iter().all(|w| w.arm.is_none() && w.success.is_none()));
    }

    #[test]
    fn policies_reset_and_still_agree_with_the_oracle() {
        let policies = [
            (PolicyKind::Fixed { reset_probability: 0.5 }, ResetScope::Full),
            (PolicyKind::Thompson { decay: Some(0.8) }, ResetScope::Top(3)),
            (PolicyKind::SwUcb { window: 30, explore: 0.2 }, ResetScope::Full),
        ];
        for (policy, scope) in policies {
            for seed in 0..10 {
                let f = instances::random_3cnf_with_ratio(12, 4.26, 100 + seed);
                let expected = brute_force_solve(&f).unwrap().is_some();
                let config = SolverConfig {
                    policy: policy.clone(),
                    reset_scope: scope,
                    luby_unit: 2,
                    seed,
                    ..SolverConfig::default()
                };
                let (outcome, _) = run_counters(config, f);
                assert_eq!(outcome.is_sat(), expected, "policy {policy:?} seed {seed}");
            }
        }
    }

    #[test]
    fn settled_verdicts_are_cached() {
        let mut s = solver_for(&[&[1, 2], &[-1, 2]], 2);
        let first = s.solve();
        assert!(first.is_sat());
        assert_eq!(s.solve(), first);
    }
}
