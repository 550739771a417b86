//! A synthetic two-armed Bernoulli environment for exercising policies,
//! including abrupt payoff switches that model the solver moving between
//! phases where resets help and phases where they hurt.

use alloc::vec::Vec;

use rand::Rng;

use super::{Arm, Policy};

#[derive(Clone, Debug)]
pub struct BernoulliTrace {
    pub selections: Vec<Arm>,
    pub rewards: Vec<f64>,
}

impl BernoulliTrace {
    pub fn cumulative_reward(&self) -> f64 {
        self.rewards.iter().sum()
    }
}

/// Runs `policy` for `horizon` steps against Bernoulli arms with the given
/// means (indexed by [`Arm::index`]). Each `(step, new_means)` switch takes
/// effect at the start of that step. Every selection is credited immediately
/// with the binary outcome it drew.
pub fn simulate_bernoulli_env<P: Policy, R: Rng + ?Sized>(
    policy: &mut P,
    mut means: [f64; 2],
    horizon: usize,
    switches: &[(usize, [f64; 2])],
    rng: &mut R,
) -> BernoulliTrace {
    let mut selections = Vec::with_capacity(horizon);
    let mut rewards = Vec::with_capacity(horizon);
    for step in 0..horizon {
        for &(at, new_means) in switches {
            if at == step {
                means = new_means;
            }
        }
        let arm = policy.select(rng);
        let reward = if rng.random::<f64>() < means[arm.index()] { 1.0 } else { 0.0 };
        policy.credit(arm, reward == 1.0);
        selections.push(arm);
        rewards.push(reward);
    }
    BernoulliTrace { selections, rewards }
}

/// How long after `switch_step` the policy takes to pick `target` in at least
/// `threshold` of a `block`-sized stretch of steps. Scans consecutive
/// non-overlapping blocks and returns the offset (in steps after the switch)
/// at which the first such block ends, or `None` if no block qualifies.
pub fn recovery_time(
    selections: &[Arm],
    switch_step: usize,
    target: Arm,
    block: usize,
    threshold: f64,
) -> Option<usize> {
    assert!(block > 0);
    let tail = &selections[switch_step.min(selections.len())..];
    for (i, chunk) in tail.chunks_exact(block).enumerate() {
        let hits = chunk.iter().filter(|&&a| a == target).count();
        if hits as f64 / block as f64 >= threshold {
            return Some((i + 1) * block);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandit::{SlidingWindowUcb, ThompsonSampler};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn thompson_exploits_a_stationary_gap() {
        let mut best_heavy = 0;
        for seed in 0..5 {
            let mut policy = ThompsonSampler::new(None);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let trace =
                simulate_bernoulli_env(&mut policy, [0.8, 0.2], 10_000, &[], &mut rng);
            let last_thousand = &trace.selections[9_000..];
            let restarts = last_thousand.iter().filter(|&&a| a == Arm::Restart).count();
            if restarts >= 900 {
                best_heavy += 1;
            }
        }
        assert!(best_heavy >= 4, "only {best_heavy}/5 seeds locked onto the better arm");
    }

    #[test]
    fn decayed_thompson_recovers_from_a_switch_but_undecayed_stalls() {
        let switches = [(5_000usize, [0.1, 0.9])];
        let mut decayed_ok = 0;
        let mut undecayed_stuck = 0;
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut decayed = ThompsonSampler::new(Some(0.8));
            let trace =
                simulate_bernoulli_env(&mut decayed, [0.9, 0.1], 5_400, &switches, &mut rng);
            if recovery_time(&trace.selections, 5_000, Arm::Reset, 50, 0.8) <= Some(200) {
                decayed_ok += 1;
            }

            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut frozen = ThompsonSampler::new(None);
            let trace =
                simulate_bernoulli_env(&mut frozen, [0.9, 0.1], 6_000, &switches, &mut rng);
            if recovery_time(&trace.selections, 5_000, Arm::Reset, 50, 0.8).is_none() {
                undecayed_stuck += 1;
            }
        }
        assert!(decayed_ok >= 4, "decayed recovered on {decayed_ok}/5 seeds");
        assert!(undecayed_stuck >= 4, "undecayed got stuck on {undecayed_stuck}/5 seeds");
    }

    #[test]
    fn sliding_window_ucb_recovers_within_a_few_windows() {
        let switches = [(2_000usize, [0.1, 0.9])];
        let mut ok = 0;
        for seed in 0..5 {
            let mut policy = SlidingWindowUcb::new(30, 0.2);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let trace =
                simulate_bernoulli_env(&mut policy, [0.9, 0.1], 2_400, &switches, &mut rng);
            if recovery_time(&trace.selections, 2_000, Arm::Reset, 50, 0.8) <= Some(150) {
                ok += 1;
            }
        }
        assert!(ok >= 4, "window UCB recovered on {ok}/5 seeds");
    }

    #[test]
    fn switches_change_the_payoffs_when_scheduled() {
        // A policy pinned to one arm sees its hit rate collapse after the switch.
        struct Pinned;
        impl Policy for Pinned {
            fn select<R: Rng + ?Sized>(&mut self, _rng: &mut R) -> Arm {
                Arm::Restart
            }
            fn credit(&mut self, _arm: Arm, _success: bool) {}
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trace = simulate_bernoulli_env(
            &mut Pinned,
            [1.0, 0.0],
            100,
            &[(50, [0.0, 1.0])],
            &mut rng,
        );
        assert_eq!(trace.rewards[..50].iter().sum::<f64>(), 50.0);
        assert_eq!(trace.rewards[50..].iter().sum::<f64>(), 0.0);
        assert_eq!(trace.cumulative_reward(), 50.0);
    }

    #[test]
    fn recovery_time_reads_block_fractions() {
        use Arm::{Reset as B, Restart as A};
        let sels = [A, A, A, A, B, B, B, A, B, B, B, B];
        assert_eq!(recovery_time(&sels, 4, B, 4, 0.75), Some(4));
        assert_eq!(recovery_time(&sels, 0, B, 4, 0.75), Some(8));
        assert_eq!(recovery_time(&sels, 0, B, 4, 1.0), Some(12));
        assert_eq!(recovery_time(&sels, 0, B, 5, 0.9), None);
    }
}
