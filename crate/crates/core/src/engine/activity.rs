//! EVSIDS variable activities with an indexed max-heap for branching.
//!
//! Bumps add the current increment and the increment itself grows by the
//! inverse decay factor, so older bumps fade exponentially without ever
//! touching stored scores. Everything is rescaled when scores threaten the
//! representable range; rescaling is order-preserving.

use alloc::vec;
use alloc::vec::Vec;

use crate::formula::Variable;

const RESCALE_THRESHOLD: f64 = 1e100;
const RESCALE_FACTOR: f64 = 1e-100;
const ABSENT: usize = usize::MAX;

pub struct ActivityTable {
    activity: Vec<f64>,
    increment: f64,
    inverse_decay: f64,
    /// Max-heap of variable slots ordered by (activity desc, index asc).
    /// Holds a superset of the unassigned variables; callers pop lazily.
    heap: Vec<u32>,
    position: Vec<usize>,
}

impl ActivityTable {
    pub fn new(num_vars: usize, decay_factor: f64) -> ActivityTable {
        assert!(decay_factor > 0.0 && decay_factor <= 1.0, "decay factor must be in (0, 1]");
        // An index-ascending array of equal activities is already a valid heap.
        ActivityTable {
            activity: vec![0.0; num_vars],
            increment: 1.0,
            inverse_decay: 1.0 / decay_factor,
            heap: (0..num_vars as u32).collect(),
            position: (0..num_vars).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.activity.len()
    }

    pub fn activity(&self, var: Variable) -> f64 {
        self.activity[var.slot()]
    }

    pub fn increment(&self) -> f64 {
        self.increment
    }

    /// Adds the current increment to each listed variable, then decays by
    /// growing the increment. Rescales every score when one passes 1e100.
    pub fn bump_and_decay(&mut self, vars: &[Variable]) {
        let mut rescale = false;
        for &var in vars {
            let slot = var.slot();
            self.activity[slot] += self.increment;
            rescale |= self.activity[slot] > RESCALE_THRESHOLD;
            if self.position[slot] != ABSENT {
                self.sift_up(self.position[slot]);
            }
        }
        if rescale {
            for a in &mut self.activity {
                *a *= RESCALE_FACTOR;
            }
            self.increment *= RESCALE_FACTOR;
        }
        self.increment *= self.inverse_decay;
    }

    /// Overwrites one score, keeping the heap consistent. Used by resets.
    pub fn set_activity(&mut self, var: Variable, value: f64) {
        let slot = var.slot();
        self.activity[slot] = value;
        let pos = self.position[slot];
        if pos != ABSENT {
            self.sift_up(pos);
            self.sift_down(self.position[slot]);
        }
    }

    pub fn reset_increment(&mut self) {
        self.increment = 1.0;
    }

    /// Reinserts a variable after it becomes unassigned.
    pub fn insert(&mut self, var: Variable) {
        let slot = var.slot();
        if self.position[slot] != ABSENT {
            return;
        }
        self.position[slot] = self.heap.len();
        self.heap.push(slot as u32);
        self.sift_up(self.heap.len() - 1);
    }

    /// Removes and returns the best variable: highest activity, ties to the
    /// lowest index. The caller is responsible for skipping assigned ones.
    pub fn pop_max(&mut self) -> Option<Variable> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0) as usize;
        self.position[top] = ABSENT;
        if !self.heap.is_empty() {
            self.position[self.heap[0] as usize] = 0;
            self.sift_down(0);
        }
        Some(Variable::from_slot(top))
    }

    /// All variables ordered by (activity desc, index asc), independent of
    /// heap membership. This is the branching preference order.
    pub fn order_snapshot(&self) -> Vec<Variable> {
        let mut slots: Vec<usize> = (0..self.activity.len()).collect();
        slots.sort_by(|&a, &b| {
            self.activity[b].total_cmp(&self.activity[a]).then(a.cmp(&b))
        });
        slots.into_iter().map(Variable::from_slot).collect()
    }

    fn beats(&self, a: usize, b: usize) -> bool {
        self.activity[a] > self.activity[b] || (self.activity[a] == self.activity[b] && a < b)
    }

    fn sift_up(&mut self, mut pos: usize) {
        let slot = self.heap[pos] as usize;
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if !self.beats(slot, self.heap[parent] as usize) {
                break;
            }
            self.heap[pos] = self.heap[parent];
            self.position[self.heap[pos] as usize] = pos;
            pos = parent;
        }
        self.heap[pos] = slot as u32;
        self.position[slot] = pos;
    }

    fn sift_down(&mut self, mut pos: usize) {
        let slot = self.heap[pos] as usize;
        loop {
            let left = 2 * pos + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let best = if right < self.heap.len()
                && self.beats(self.heap[right] as usize, self.heap[left] as usize)
            {
                right
            } else {
                left
            };
            if !self.beats(self.heap[best] as usize, slot) {
                break;
            }
            self.heap[pos] = self.heap[best];
            self.position[self.heap[pos] as usize] = pos;
            pos = best;
        }
        self.heap[pos] = slot as u32;
        self.position[slot] = pos;
    }
}
