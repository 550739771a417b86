//! End-to-end checks through the crate's public surface only: parse, solve,
//! verify, and resume, the way a downstream caller would.

use resat_core::engine::{Outcome, PolicyKind, ResetScope, SolverConfig};
use resat_core::formula::{brute_force_solve, parse_dimacs, to_dimacs};
use resat_core::{instances, Formula, Solver};

#[test]
fn dimacs_round_trip_solves_like_the_original() {
    let f = instances::random_3cnf(14, 60, 7);
    let text = to_dimacs(&f);
    let parsed = parse_dimacs(&text).expect("own output must parse");
    assert_eq!(parsed.tautologies_removed, 0);
    assert_eq!(parsed.clause_count_mismatch, None);
    let mut a = Solver::new(f, SolverConfig::default()).unwrap();
    let mut b = Solver::new(parsed.formula, SolverConfig::default()).unwrap();
    assert_eq!(a.solve().verdict(), b.solve().verdict());
}

#[test]
fn every_policy_agrees_with_brute_force_on_a_mixed_bag() {
    let configs = [
        SolverConfig::default(),
        SolverConfig {
            policy: PolicyKind::Fixed { reset_probability: 0.3 },
            ..SolverConfig::default()
        },
        SolverConfig {
            policy: PolicyKind::Thompson { decay: None },
            ..SolverConfig::default()
        },
        SolverConfig {
            policy: PolicyKind::Thompson { decay: Some(0.8) },
            reset_scope: ResetScope::Top(2),
            ..SolverConfig::default()
        },
        SolverConfig {
            policy: PolicyKind::SwUcb { window: 30, explore: 0.2 },
            ..SolverConfig::default()
        },
    ];
    for seed in 0..20u64 {
        let f = instances::random_3cnf_with_ratio(10, 4.26, 900 + seed);
        let expected = brute_force_solve(&f).unwrap();
        for (i, config) in configs.iter().enumerate() {
            let config = SolverConfig { seed, luby_unit: 2, ..config.clone() };
            let mut solver = Solver::new(f.clone(), config).unwrap();
            match solver.solve() {
                Outcome::Sat(model) => {
                    assert!(expected.is_some(), "config {i} seed {seed} claims sat");
                    assert_eq!(f.evaluate(&model), Ok(true));
                }
                Outcome::Unsat => assert!(expected.is_none(), "config {i} seed {seed}"),
                Outcome::Indeterminate => panic!("config {i} seed {seed}: no budget set"),
            }
        }
    }
}

#[test]
fn interrupted_search_resumes_to_the_same_verdict() {
    let f = instances::pigeonhole(7, 6);
    let mut reference = Solver::new(f.clone(), SolverConfig::default()).unwrap();
    let expected = reference.solve();

    let config = SolverConfig { conflict_budget: Some(30), ..SolverConfig::default() };
    let mut paused = Solver::new(f, config).unwrap();
    let mut rounds = 0;
    let verdict = loop {
        match paused.solve() {
            Outcome::Indeterminate => {
                rounds += 1;
                assert!(rounds < 10_000, "never finished");
                // Widen the budget and pick the search back up where it stopped.
                paused.set_conflict_budget(Some(paused.stats().conflicts + 10));
            }
            done => break done,
        }
    };
    assert_eq!(verdict, expected);
    assert!(rounds > 0, "the budget should have paused the search at least once");
}

#[test]
fn window_records_cover_every_boundary_in_order() {
    let config = SolverConfig {
        policy: PolicyKind::Fixed { reset_probability: 0.5 },
        luby_unit: 1,
        seed: 5,
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(instances::pigeonhole(4, 3), config).unwrap();
    solver.solve();
    let stats = solver.stats();
    assert_eq!(stats.windows.len() as u64, stats.restarts);
    for (i, w) in stats.windows.iter().enumerate() {
        assert_eq!(w.index, i as u64);
        if i == 0 {
            // The first window opened before any arm was chosen.
            assert!(w.arm.is_none() && w.success.is_none());
        } else {
            assert!(w.arm.is_some() && w.success.is_some());
        }
    }
    // Credit always lags the action by one window, so the tail action may
    // still be uncredited when the run ends.
    let resets_recorded = stats
        .windows
        .iter()
        .filter(|w| w.arm == Some(resat_core::bandit::Arm::Reset))
        .count() as u64;
    assert!(resets_recorded <= stats.resets && stats.resets - resets_recorded <= 1);
}

#[test]
fn miters_and_planted_instances_land_on_their_designed_verdicts() {
    let mut m = Solver::new(instances::adder_miter(3, 1), SolverConfig::default()).unwrap();
    assert_eq!(m.solve(), Outcome::Unsat);

    let mut h =
        Solver::new(instances::toy_hash_preimage(6, 3, 2), SolverConfig::default()).unwrap();
    assert!(h.solve().is_sat());

    let mut p =
        Solver::new(instances::parity_obfuscated(12, 20, 3), SolverConfig::default()).unwrap();
    assert!(p.solve().is_sat());
}

#[test]
fn formula_construction_rejects_out_of_range_variables() {
    let result = std::panic::catch_unwind(|| {
        let mut f = Formula::new(2);
        f.add_clause(resat_core::Clause::new(vec![resat_core::Literal::from_dimacs(3)]));
    });
    assert!(result.is_err());
}
