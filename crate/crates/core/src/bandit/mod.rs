//! Two-armed bandit policies that pick between restarting and resetting.
//!
//! The arms are fixed: `Restart` keeps the branching order, `Reset` throws it
//! away. Policies see one binary outcome per pull, delivered one boundary
//! late by the reward tracker, and must keep adapting forever because the
//! underlying payoffs drift as the search moves through an instance.

mod env;
mod fixed;
mod swucb;
mod thompson;

pub use env::{recovery_time, simulate_bernoulli_env, BernoulliTrace};
pub use fixed::FixedProbability;
pub use swucb::SlidingWindowUcb;
pub use thompson::{select_from_samples, BetaArm, ThompsonSampler};

use rand::Rng;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum Arm {
    Restart,
    Reset,
}

impl Arm {
    pub fn index(self) -> usize {
        match self {
            Arm::Restart => 0,
            Arm::Reset => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Arm::Restart => "restart",
            Arm::Reset => "reset",
        }
    }
}

impl core::fmt::Display for Arm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A boundary policy: pick an arm, then learn from its delayed outcome.
pub trait Policy {
    fn select<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Arm;
    fn credit(&mut self, arm: Arm, success: bool);
}

/// Mean of a Beta(alpha, beta) distribution. Panics on non-positive shapes.
pub fn beta_mean(alpha: f64, beta: f64) -> f64 {
    assert!(alpha > 0.0 && beta > 0.0, "Beta shape parameters must be positive");
    alpha / (alpha + beta)
}

/// Variance of a Beta(alpha, beta) distribution. Panics on non-positive shapes.
pub fn beta_variance(alpha: f64, beta: f64) -> f64 {
    assert!(alpha > 0.0 && beta > 0.0, "Beta shape parameters must be positive");
    let s = alpha + beta;
    alpha * beta / (s * s * (s + 1.0))
}

/// Draws a Beta(alpha, beta) variate, nudged into the open unit interval so
/// downstream comparisons never see an exact 0 or 1.
pub fn sample_beta<R: Rng + ?Sized>(alpha: f64, beta: f64, rng: &mut R) -> f64 {
    assert!(alpha > 0.0 && beta > 0.0, "Beta shape parameters must be positive");
    use rand_distr::Distribution;
    let dist = rand_distr::Beta::new(alpha, beta).expect("valid shape parameters");
    dist.sample(rng).clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON)
}
