//! Sliding-window UCB: optimism over only the most recent outcomes.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use super::{Arm, Policy};

/// UCB1 computed over a FIFO window of the last `capacity` credited pulls,
/// so evidence older than the window simply stops existing. An arm missing
/// from the window is picked unconditionally, restart first.
pub struct SlidingWindowUcb {
    window: VecDeque<(Arm, f64)>,
    capacity: usize,
    explore: f64,
    total: u64,
}

impl SlidingWindowUcb {
    pub fn new(capacity: usize, explore: f64) -> SlidingWindowUcb {
        assert!(capacity > 0, "the window must hold at least one outcome");
        assert!(explore > 0.0, "the exploration coefficient must be positive");
        SlidingWindowUcb { window: VecDeque::with_capacity(capacity), capacity, explore, total: 0 }
    }

    /// Pushes one credited outcome, clamped to [0, 1], evicting the oldest
    /// entry once the window is full.
    pub fn record(&mut self, arm: Arm, reward: f64) {
        self.window.push_back((arm, reward.clamp(0.0, 1.0)));
        while self.window.len() > self.capacity {
            self.window.pop_front();
        }
        self.total += 1;
    }

    /// Windowed (restart, reset) UCB scores; `None` until both arms appear in
    /// the window. The time horizon in the exploration term is the windowed
    /// pull count, capped at the capacity.
    pub fn ucb_values(&self) -> Option<(f64, f64)> {
        let (counts, sums) = self.window_tally();
        if counts[0] == 0 || counts[1] == 0 {
            return None;
        }
        let t = self.total.min(self.capacity as u64) as f64;
        let score = |i: usize| {
            let n = counts[i] as f64;
            sums[i] / n + self.explore * libm::sqrt(libm::log(t) / n)
        };
        Some((score(0), score(1)))
    }

    pub fn window_len(&self) -> usize {
        self.window.len()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn window_rewards(&self, arm: Arm) -> Vec<f64> {
        self.window.iter().filter(|(a, _)| *a == arm).map(|&(_, r)| r).collect()
    }

    fn window_tally(&self) -> ([u64; 2], [f64; 2]) {
        let mut counts = [0u64; 2];
        let mut sums = [0.0f64; 2];
        for &(arm, reward) in &self.window {
            counts[arm.index()] += 1;
            sums[arm.index()] += reward;
        }
        (counts, sums)
    }
}

impl Policy for SlidingWindowUcb {
    fn select<R: Rng + ?Sized>(&mut self, _rng: &mut R) -> Arm {
        let (counts, _) = self.window_tally();
        if counts[Arm::Restart.index()] == 0 {
            return Arm::Restart;
        }
        if counts[Arm::Reset.index()] == 0 {
            return Arm::Reset;
        }
        let (restart, reset) = self.ucb_values().expect("both arms are in the window");
        if reset > restart {
            Arm::Reset
        } else {
            Arm::Restart
        }
    }

    fn credit(&mut self, arm: Arm, success: bool) {
        self.record(arm, if success { 1.0 } else { 0.0 });
    }
}
