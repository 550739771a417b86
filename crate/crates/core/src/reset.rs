//! Restart-boundary orchestration.
//!
//! Every time the restart schedule fires, the solver hands control to
//! [`on_restart_boundary`]. It closes out the reward window that just ended
//! (learnt clauses per decision), credits the bandit arm whose choice governed
//! that window, and asks the policy whether the upcoming window should begin
//! with a plain restart or with a randomization of the variable activities.
//!
//! Credit is deliberately delayed by one boundary: the arm picked now is
//! judged by the window it is about to shape, not the one that just closed.

use alloc::vec::Vec;

use rand::Rng;

use crate::bandit::{Arm, FixedProbability, Policy, SlidingWindowUcb, ThompsonSampler};
use crate::engine::activity::ActivityTable;
use crate::engine::trail::Trail;
use crate::engine::{PolicyKind, ResetScope};
use crate::formula::Variable;

/// What a restart boundary did to the activity table.
///
/// `PartialReset(k)` with `k >= num_vars` keeps the entire branching order,
/// which makes it behave like `Restart` as far as the search is concerned;
/// `k = 0` is normalized to `FullReset` before it gets here.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ResetAction {
    Restart,
    FullReset,
    PartialReset(u32),
}

/// One completed reward window, as logged for traces and stats.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct WindowRecord {
    /// 0-based index of the completed window.
    pub index: u64,
    /// Arm whose boundary choice governed this window; `None` for the first
    /// window of a run and for the baseline policy.
    pub arm: Option<Arm>,
    /// Learnt clauses per decision over the window.
    pub rw: f64,
    /// Moving average after folding in this window's reward.
    pub ema: f64,
    /// How the window was credited; `None` when no arm was awaiting credit.
    pub success: Option<bool>,
}

/// Success test for a completed window: the reward must strictly beat the
/// moving average. Equality counts as failure.
pub fn classify(rw: f64, ema: f64) -> bool {
    rw > ema
}

/// Per-window reward bookkeeping: counters for the current window, the moving
/// average of past rewards, and the arm still awaiting credit.
pub struct RewardTracker {
    window_decisions: u64,
    window_learned: u64,
    ema: f64,
    lambda: f64,
    flip_success: bool,
    pending: Option<Arm>,
    windows_seen: u64,
    credits_assigned: u64,
    records: Vec<WindowRecord>,
}

impl RewardTracker {
    /// `lambda` weights history in the moving average (`ema <- l*ema +
    /// (1-l)*value`). `flip_success` inverts the success comparison, for
    /// ablation runs.
    pub fn new(lambda: f64, flip_success: bool) -> RewardTracker {
        assert!(
            lambda > 0.0 && lambda < 1.0,
            "moving-average decay must be in (0, 1), got {lambda}"
        );
        RewardTracker {
            window_decisions: 0,
            window_learned: 0,
            ema: 0.0,
            lambda,
            flip_success,
            pending: None,
            windows_seen: 0,
            credits_assigned: 0,
            records: Vec::new(),
        }
    }

    pub fn on_decision(&mut self) {
        self.window_decisions += 1;
    }

    pub fn on_clause_learned(&mut self) {
        self.window_learned += 1;
    }

    pub fn window_decisions(&self) -> u64 {
        self.window_decisions
    }

    pub fn window_learned(&self) -> u64 {
        self.window_learned
    }

    /// Reward of the window so far: learnt clauses per decision, 0 when the
    /// window held no decisions.
    pub fn rw_glr(&self) -> f64 {
        if self.window_decisions == 0 {
            0.0
        } else {
            self.window_learned as f64 / self.window_decisions as f64
        }
    }

    pub fn ema(&self) -> f64 {
        self.ema
    }

    pub fn windows_seen(&self) -> u64 {
        self.windows_seen
    }

    pub fn pending_arm(&self) -> Option<Arm> {
        self.pending
    }

    pub fn credits_assigned(&self) -> u64 {
        self.credits_assigned
    }

    /// Folds one window's reward into the moving average and returns the new
    /// average. The first window initializes the average outright.
    pub fn update_ema(&mut self, value: f64) -> f64 {
        self.ema = if self.windows_seen == 0 {
            value
        } else {
            self.lambda * self.ema + (1.0 - self.lambda) * value
        };
        self.windows_seen += 1;
        self.ema
    }

    /// Applies the configured success direction against the pre-update average.
    fn classify_window(&self, rw: f64) -> bool {
        if self.flip_success {
            classify(self.ema, rw)
        } else {
            classify(rw, self.ema)
        }
    }

    pub fn records(&self) -> &[WindowRecord] {
        &self.records
    }

    pub fn take_records(&mut self) -> Vec<WindowRecord> {
        core::mem::take(&mut self.records)
    }
}

/// Runtime-selected boundary policy. `Baseline` never consults a bandit and
/// never resets; the other variants wrap one bandit each.
pub enum ResetPolicy {
    Baseline,
    Fixed(FixedProbability),
    Thompson(ThompsonSampler),
    SwUcb(SlidingWindowUcb),
}

impl ResetPolicy {
    /// The configuration must already be validated; invalid knobs panic here.
    pub fn from_kind(kind: &PolicyKind) -> ResetPolicy {
        match *kind {
            PolicyKind::Baseline => ResetPolicy::Baseline,
            PolicyKind::Fixed { reset_probability } => {
                ResetPolicy::Fixed(FixedProbability::new(reset_probability))
            }
            PolicyKind::Thompson { decay } => ResetPolicy::Thompson(ThompsonSampler::new(decay)),
            PolicyKind::SwUcb { window, explore } => {
                ResetPolicy::SwUcb(SlidingWindowUcb::new(window, explore))
            }
        }
    }

    /// `None` means no arm was pulled (baseline), so nothing will await credit.
    pub fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<Arm> {
        match self {
            ResetPolicy::Baseline => None,
            ResetPolicy::Fixed(p) => Some(p.select(rng)),
            ResetPolicy::Thompson(p) => Some(p.select(rng)),
            ResetPolicy::SwUcb(p) => Some(p.select(rng)),
        }
    }

    pub fn credit(&mut self, arm: Arm, success: bool) {
        match self {
            ResetPolicy::Baseline => {}
            ResetPolicy::Fixed(p) => p.credit(arm, success),
            ResetPolicy::Thompson(p) => p.credit(arm, success),
            ResetPolicy::SwUcb(p) => p.credit(arm, success),
        }
    }

    /// Posterior state, when Thompson sampling is the active policy.
    pub fn thompson(&self) -> Option<&ThompsonSampler> {
        match self {
            ResetPolicy::Thompson(p) => Some(p),
            _ => None,
        }
    }
}

/// Overwrites every activity with an independent uniform draw from [0, 1) and
/// restores the bump increment to 1.0, so the new order is a uniformly random
/// permutation that fresh bumps cannot instantly drown out. Saved phases, the
/// clause database, and the restart schedule are untouched.
pub fn full_reset<R: Rng + ?Sized>(activities: &mut ActivityTable, rng: &mut R) {
    for slot in 0..activities.num_vars() {
        activities.set_activity(Variable::from_slot(slot), rng.random::<f64>());
    }
    activities.reset_increment();
}

/// Like [`full_reset`], but first records the `k` highest-activity variables
/// (ties to the lower index) and afterwards pins them above the randomized
/// range: rank j of k gets `1 + (k - j) * (0.5 / k)`, a strictly decreasing
/// ladder in [1, 1.5). The old top-k prefix of the branching order survives
/// in order; everything below it is freshly shuffled. `k >= num_vars` thus
/// reproduces the entire previous order.
pub fn partial_reset<R: Rng + ?Sized>(activities: &mut ActivityTable, k: u32, rng: &mut R) {
    assert!(k >= 1, "partial reset needs k >= 1; use full_reset instead");
    let kept: Vec<Variable> = activities
        .order_snapshot()
        .into_iter()
        .take(k as usize)
        .collect();
    full_reset(activities, rng);
    let spacing = 0.5 / f64::from(k);
    for (i, &var) in kept.iter().enumerate() {
        let rank = i as u32 + 1;
        activities.set_activity(var, 1.0 + f64::from(k - rank) * spacing);
    }
}

/// Closes the current reward window and opens the next one:
/// settles credit for the arm picked at the previous boundary, updates the
/// moving average, clears the trail, pulls the next arm, and applies the
/// resulting action to the activity table. Window counters restart at zero.
pub fn on_restart_boundary<R: Rng + ?Sized>(
    trail: &mut Trail,
    activities: &mut ActivityTable,
    tracker: &mut RewardTracker,
    policy: &mut ResetPolicy,
    scope: ResetScope,
    rng: &mut R,
) -> ResetAction {
    let rw = tracker.rw_glr();
    let credited = tracker.pending.take();
    let success = credited.map(|arm| {
        // The average still holds only pre-window history at this point.
        let success = tracker.classify_window(rw);
        policy.credit(arm, success);
        tracker.credits_assigned += 1;
        success
    });
    let index = tracker.windows_seen;
    let ema = tracker.update_ema(rw);
    tracker.records.push(WindowRecord { index, arm: credited, rw, ema, success });

    trail.backtrack_to(0, activities);

    let next = policy.select(rng);
    tracker.pending = next;
    let action = match next {
        None | Some(Arm::Restart) => ResetAction::Restart,
        Some(Arm::Reset) => match scope {
            ResetScope::Full | ResetScope::Top(0) => {
                full_reset(activities, rng);
                ResetAction::FullReset
            }
            ResetScope::Top(k) => {
                partial_reset(activities, k, rng);
                ResetAction::PartialReset(k)
            }
        },
    };

    tracker.window_decisions = 0;
    tracker.window_learned = 0;
    action
}
