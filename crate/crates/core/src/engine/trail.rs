//! Assignment trail: values, decision levels, implication reasons, and the
//! propagation queue, with phase saving on backtrack.

use alloc::vec;
use alloc::vec::Vec;

use super::activity::ActivityTable;
use super::clause_db::ClauseRef;
use crate::formula::{Literal, Variable};

pub struct Trail {
    assigns: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<ClauseRef>>,
    /// Last assigned polarity per variable; decisions reuse it. Starts false.
    phase: Vec<bool>,
    trail: Vec<Literal>,
    lim: Vec<usize>,
    qhead: usize,
}

impl Trail {
    pub fn new(num_vars: usize) -> Trail {
        Trail {
            assigns: vec![None; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            phase: vec![false; num_vars],
            trail: Vec::with_capacity(num_vars),
            lim: Vec::new(),
            qhead: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn decision_level(&self) -> u32 {
        self.lim.len() as u32
    }

    pub fn len(&self) -> usize {
        self.trail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trail.is_empty()
    }

    pub fn lits(&self) -> &[Literal] {
        &self.trail
    }

    pub fn value(&self, var: Variable) -> Option<bool> {
        self.assigns[var.slot()]
    }

    pub fn value_lit(&self, lit: Literal) -> Option<bool> {
        self.assigns[lit.var().slot()].map(|v| v == lit.is_positive())
    }

    /// Level the variable was assigned at; meaningless while unassigned.
    pub fn level_of(&self, var: Variable) -> u32 {
        self.level[var.slot()]
    }

    pub fn reason_of(&self, var: Variable) -> Option<ClauseRef> {
        self.reason[var.slot()]
    }

    pub fn phase(&self, var: Variable) -> bool {
        self.phase[var.slot()]
    }

    pub fn new_decision_level(&mut self) {
        self.lim.push(self.trail.len());
    }

    /// Assigns a currently-unassigned literal at the current decision level.
    pub fn enqueue(&mut self, lit: Literal, reason: Option<ClauseRef>) {
        let slot = lit.var().slot();
        debug_assert!(self.assigns[slot].is_none(), "literal {lit} is already assigned");
        self.assigns[slot] = Some(lit.is_positive());
        self.level[slot] = self.decision_level();
        self.reason[slot] = reason;
        self.trail.push(lit);
    }

    /// Next literal whose implications have not been explored yet.
    pub fn next_queued(&mut self) -> Option<Literal> {
        let lit = self.trail.get(self.qhead).copied();
        if lit.is_some() {
            self.qhead += 1;
        }
        lit
    }

    /// Abandons the rest of the queue (used when propagation hits a conflict).
    pub fn flush_queue(&mut self) {
        self.qhead = self.trail.len();
    }

    /// Undoes assignments above `level`, saving phases and returning the
    /// variables to the branching heap.
    pub fn backtrack_to(&mut self, level: u32, activities: &mut ActivityTable) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.lim[level as usize];
        for &lit in &self.trail[keep..] {
            let slot = lit.var().slot();
            self.phase[slot] = lit.is_positive();
            self.assigns[slot] = None;
            self.reason[slot] = None;
            activities.insert(lit.var());
        }
        self.trail.truncate(keep);
        self.lim.truncate(level as usize);
        self.qhead = self.trail.len();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Literal;

    fn lit(i: i32) -> Literal {
        Literal::from_dimacs(i)
    }

    #[test]
    fn enqueue_tracks_level_and_value() {
        let mut act = ActivityTable::new(3, 0.95);
        let mut t = Trail::new(3);
        t.enqueue(lit(1), None);
        t.new_decision_level();
        t.enqueue(lit(-2), None);
        assert_eq!(t.value_lit(lit(1)), Some(true));
        assert_eq!(t.value_lit(lit(-1)), Some(false));
        assert_eq!(t.value_lit(lit(-2)), Some(true));
        assert_eq!(t.value(Variable::new(3)), None);
        assert_eq!(t.level_of(Variable::new(1)), 0);
        assert_eq!(t.level_of(Variable::new(2)), 1);
        t.backtrack_to(0, &mut act);
        assert_eq!(t.len(), 1);
        assert_eq!(t.value(Variable::new(2)), None);
    }

    #[test]
    fn backtrack_saves_phases() {
        let mut act = ActivityTable::new(2, 0.95);
        let mut t = Trail::new(2);
        assert!(!t.phase(Variable::new(1)));
        t.new_decision_level();
        t.enqueue(lit(1), None);
        t.enqueue(lit(-2), None);
        t.backtrack_to(0, &mut act);
        assert!(t.phase(Variable::new(1)));
        assert!(!t.phase(Variable::new(2)));
    }

    #[test]
    fn queue_hands_out_each_literal_once() {
        let mut t = Trail::new(2);
        t.enqueue(lit(1), None);
        assert_eq!(t.next_queued(), Some(lit(1)));
        assert_eq!(t.next_queued(), None);
        t.enqueue(lit(2), None);
        t.flush_queue();
        assert_eq!(t.next_queued(), None);
    }

    #[test]
    fn backtrack_rewinds_queue_to_trail_end() {
        let mut act = ActivityTable::new(2, 0.95);
        let mut t = Trail::new(2);
        t.enqueue(lit(1), None);
        t.new_decision_level();
        t.enqueue(lit(2), None);
        while t.next_queued().is_some() {}
        t.backtrack_to(0, &mut act);
        assert_eq!(t.next_queued(), None);
        t.enqueue(lit(-2), None);
        assert_eq!(t.next_queued(), Some(lit(-2)));
    }
}
