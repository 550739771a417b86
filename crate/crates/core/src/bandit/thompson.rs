//! Thompson sampling with optionally decayed Beta posteriors.

use rand::Rng;

use super::{sample_beta, Arm, Policy};

/// Beta posterior over one arm's success probability.
#[derive(Copy, Clone, PartialEq, Debug)]
pub struct BetaArm {
    alpha: f64,
    beta: f64,
}

impl BetaArm {
    /// The uninformed prior: Beta(1, 1), i.e. uniform.
    pub fn new() -> BetaArm {
        BetaArm { alpha: 1.0, beta: 1.0 }
    }

    pub fn with_shape(alpha: f64, beta: f64) -> BetaArm {
        assert!(alpha > 0.0 && beta > 0.0, "Beta shape parameters must be positive");
        BetaArm { alpha, beta }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for BetaArm {
    fn default() -> BetaArm {
        BetaArm::new()
    }
}

/// Picks the restart arm unless the reset arm's sample is strictly larger.
/// Kept separate from the sampling so scale invariance is testable: the
/// comparison only looks at the order of the two samples.
pub fn select_from_samples(restart_sample: f64, reset_sample: f64) -> Arm {
    if reset_sample > restart_sample {
        Arm::Reset
    } else {
        Arm::Restart
    }
}

/// Thompson sampling over the two arms.
///
/// With `decay = Some(d)` each credited outcome first shrinks both shape
/// parameters of the pulled arm by `d` and then adds 1 to the matching one,
/// so the posterior's total evidence stays below `1/(1-d) + 1` per parameter
/// and old outcomes fade geometrically. The un-pulled arm is never touched.
pub struct ThompsonSampler {
    arms: [BetaArm; 2],
    decay: Option<f64>,
}

impl ThompsonSampler {
    pub fn new(decay: Option<f64>) -> ThompsonSampler {
        if let Some(d) = decay {
            assert!(d > 0.0 && d < 1.0, "posterior decay must lie in (0, 1)");
        }
        ThompsonSampler { arms: [BetaArm::new(); 2], decay }
    }

    pub fn arm(&self, arm: Arm) -> &BetaArm {
        &self.arms[arm.index()]
    }

    pub fn decay(&self) -> Option<f64> {
        self.decay
    }
}

impl Policy for ThompsonSampler {
    /// Samples the restart arm first, then the reset arm (a fixed draw order
    /// keeps runs reproducible for a given seed).
    fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Arm {
        let restart = &self.arms[Arm::Restart.index()];
        let reset = &self.arms[Arm::Reset.index()];
        let restart_sample = sample_beta(restart.alpha, restart.beta, rng);
        let reset_sample = sample_beta(reset.alpha, reset.beta, rng);
        select_from_samples(restart_sample, reset_sample)
    }

    fn credit(&mut self, arm: Arm, success: bool) {
        let a = &mut self.arms[arm.index()];
        match self.decay {
            Some(d) if success => {
                a.alpha = a.alpha * d + 1.0;
                a.beta *= d;
            }
            Some(d) => {
                a.beta = a.beta * d + 1.0;
                a.alpha *= d;
            }
            None if success => a.alpha += 1.0,
            None => a.beta += 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decayed_success_update_matches_hand_computation() {
        let mut p = ThompsonSampler::new(Some(0.8));
        p.credit(Arm::Reset, true);
        assert!((p.arm(Arm::Reset).alpha() - 1.8).abs() < 1e-12);
        assert!((p.arm(Arm::Reset).beta() - 0.8).abs() < 1e-12);
        // The other arm is untouched.
        assert_eq!(p.arm(Arm::Restart).alpha(), 1.0);
        assert_eq!(p.arm(Arm::Restart).beta(), 1.0);
    }

    #[test]
    fn decayed_failure_update_mirrors_the_success_case() {
        let mut p = ThompsonSampler::new(Some(0.8));
        p.credit(Arm::Restart, false);
        assert!((p.arm(Arm::Restart).beta() - 1.8).abs() < 1e-12);
        assert!((p.arm(Arm::Restart).alpha() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn undecayed_updates_add_one() {
        let mut p = ThompsonSampler::new(None);
        p.credit(Arm::Reset, true);
        p.credit(Arm::Reset, false);
        p.credit(Arm::Reset, false);
        assert_eq!(p.arm(Arm::Reset).alpha(), 2.0);
        assert_eq!(p.arm(Arm::Reset).beta(), 3.0);
    }

    #[test]
    fn run_of_successes_follows_the_geometric_sum() {
        let d: f64 = 0.8;
        let mut p = ThompsonSampler::new(Some(d));
        for k in 1..=50u32 {
            p.credit(Arm::Reset, true);
            // The prior's own weight decays alongside the geometric sum.
            let expected: f64 =
                d.powi(k as i32) + (0..k).map(|i| d.powi(i as i32)).sum::<f64>();
            assert!((p.arm(Arm::Reset).alpha() - expected).abs() < 1e-9, "after {k} successes");
            assert!((p.arm(Arm::Reset).beta() - d.powi(k as i32)).abs() < 1e-12);
        }
        // Infinite-run limit: alpha -> 1/(1-d), comfortably under the bound.
        assert!(p.arm(Arm::Reset).alpha() < 1.0 / (1.0 - d) + 1.0);
    }

    #[test]
    fn lopsided_posteriors_pick_the_confident_arm() {
        let mut p = ThompsonSampler::new(None);
        p.arms[Arm::Reset.index()] = BetaArm::with_shape(1000.0, 1.0);
        p.arms[Arm::Restart.index()] = BetaArm::with_shape(1.0, 1000.0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let resets = (0..10_000).filter(|_| p.select(&mut rng) == Arm::Reset).count();
        assert!(resets >= 9_900, "only {resets} of 10000 picked the strong arm");
    }

    #[test]
    fn symmetric_priors_split_evenly() {
        let mut p = ThompsonSampler::new(None);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let resets = (0..100_000).filter(|_| p.select(&mut rng) == Arm::Reset).count();
        let frac = resets as f64 / 1e5;
        assert!((frac - 0.5).abs() < 0.02, "reset fraction {frac}");
    }

    #[test]
    fn selection_replays_exactly_under_one_seed() {
        let run = |seed: u64| {
            let mut p = ThompsonSampler::new(Some(0.8));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..100).map(|_| p.select(&mut rng)).collect::<alloc::vec::Vec<_>>()
        };
        assert_eq!(run(11), run(11));
        assert_ne!(run(11), run(12));
    }

    #[test]
    fn equal_samples_go_to_restart() {
        assert_eq!(select_from_samples(0.7, 0.7), Arm::Restart);
        assert_eq!(select_from_samples(0.2, 0.9), Arm::Reset);
        assert_eq!(select_from_samples(0.9, 0.2), Arm::Restart);
    }

    proptest::proptest! {
        #[test]
        fn selection_is_scale_invariant(
            a in 1e-6f64..1.0,
            b in 1e-6f64..1.0,
            scale in 1e-3f64..1e3,
        ) {
            proptest::prop_assert_eq!(
                select_from_samples(a, b),
                select_from_samples(a * scale, b * scale)
            );
        }

        #[test]
        fn decayed_shapes_never_exceed_the_geometric_bound(
            d in 0.5f64..0.95,
            start_a in 1.0f64..6.0,
            start_b in 1.0f64..6.0,
            outcomes in proptest::collection::vec(proptest::bool::ANY, 1..400),
        ) {
            let bound = 1.0 / (1.0 - d) + 1.0;
            proptest::prop_assume!(start_a <= bound && start_b <= bound);
            let mut p = ThompsonSampler::new(Some(d));
            p.arms[Arm::Reset.index()] = BetaArm::with_shape(start_a, start_b);
            for success in outcomes {
                p.credit(Arm::Reset, success);
                let arm = p.arm(Arm::Reset);
                proptest::prop_assert!(arm.alpha() <= bound && arm.beta() <= bound);
                proptest::prop_assert!(arm.alpha() > 0.0 && arm.beta() > 0.0);
            }
        }
    }
}
