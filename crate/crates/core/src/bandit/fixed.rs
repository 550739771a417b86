//! The non-adaptive control policy: reset with a fixed probability.

use rand::Rng;

use super::{Arm, Policy};

pub struct FixedProbability {
    reset_probability: f64,
}

impl FixedProbability {
    pub fn new(reset_probability: f64) -> FixedProbability {
        assert!(
            (0.0..=1.0).contains(&reset_probability),
            "the reset probability must lie in [0, 1]"
        );
        FixedProbability { reset_probability }
    }

    pub fn reset_probability(&self) -> f64 {
        self.reset_probability
    }
}

impl Policy for FixedProbability {
    fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Arm {
        if rng.random::<f64>() < self.reset_probability {
            Arm::Reset
        } else {
            Arm::Restart
        }
    }

    /// Outcomes never change a fixed coin.
    fn credit(&mut self, _arm: Arm, _success: bool) {}
}
