//! Clause storage, watch lists, unit propagation, and learnt-clause reduction.
//!
//! Clauses live in an arena of reusable slots; a `ClauseRef` stays valid for
//! as long as the clause is live. Reduction deletes eagerly (watches are
//! unhooked on the spot), so reason clauses must be excluded by the caller's
//! trail, which `reduce` takes care of.

use alloc::vec;
use alloc::vec::Vec;

use super::trail::Trail;
use crate::formula::Literal;

const CLAUSE_INVERSE_DECAY: f64 = 1.0 / 0.999;
const CLAUSE_RESCALE_THRESHOLD: f64 = 1e20;
const CLAUSE_RESCALE_FACTOR: f64 = 1e-20;
/// Learnt clauses at this LBD or below survive every reduction.
const GLUE_LBD: u32 = 2;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClauseRef(u32);

impl ClauseRef {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

struct Slot {
    lits: Vec<Literal>,
    learnt: bool,
    lbd: u32,
    activity: f64,
    live: bool,
}

pub struct ClauseDb {
    slots: Vec<Slot>,
    free: Vec<u32>,
    /// watches[lit.code()] lists clauses that watch `lit`.
    watches: Vec<Vec<ClauseRef>>,
    num_learnt: usize,
    num_original: usize,
    deleted_total: u64,
    clause_inc: f64,
    limit: f64,
}

impl ClauseDb {
    pub fn new(num_vars: usize, initial_limit: usize) -> ClauseDb {
        ClauseDb {
            slots: Vec::new(),
            free: Vec::new(),
            watches: vec![Vec::new(); num_vars * 2],
            num_learnt: 0,
            num_original: 0,
            deleted_total: 0,
            clause_inc: 1.0,
            limit: initial_limit as f64,
        }
    }

    pub fn add_original(&mut self, lits: Vec<Literal>) -> ClauseRef {
        self.add(lits, false, 0)
    }

    /// Stores a learnt clause and gives it a freshness bump. The first two
    /// literals become the watches, so the caller must have placed the
    /// asserting literal first and a deepest remaining literal second.
    pub fn add_learnt(&mut self, lits: Vec<Literal>, lbd: u32) -> ClauseRef {
        let cref = self.add(lits, true, lbd);
        self.bump_clause(cref);
        cref
    }

    fn add(&mut self, lits: Vec<Literal>, learnt: bool, lbd: u32) -> ClauseRef {
        assert!(lits.len() >= 2, "unit and empty clauses belong on the trail");
        let slot = Slot { lits, learnt, lbd, activity: 0.0, live: true };
        let cref = match self.free.pop() {
            Some(idx) => {
                self.slots[idx as usize] = slot;
                ClauseRef(idx)
            }
            None => {
                self.slots.push(slot);
                ClauseRef((self.slots.len() - 1) as u32)
            }
        };
        if learnt {
            self.num_learnt += 1;
        } else {
            self.num_original += 1;
        }
        let lits = &self.slots[cref.idx()].lits;
        let (w0, w1) = (lits[0], lits[1]);
        self.watches[w0.code()].push(cref);
        self.watches[w1.code()].push(cref);
        cref
    }

    pub fn lits(&self, cref: ClauseRef) -> &[Literal] {
        &self.slots[cref.idx()].lits
    }

    #[cfg(test)]
    pub fn is_live(&self, cref: ClauseRef) -> bool {
        self.slots[cref.idx()].live
    }

    #[cfg(test)]
    pub fn num_original(&self) -> usize {
        self.num_original
    }

    #[cfg(test)]
    pub fn limit(&self) -> f64 {
        self.limit
    }

    pub fn over_limit(&self) -> bool {
        self.num_learnt as f64 > self.limit
    }

    /// Rewards a learnt clause for participating in conflict analysis.
    pub fn bump_clause(&mut self, cref: ClauseRef) {
        let slot = &mut self.slots[cref.idx()];
        if !slot.learnt {
            return;
        }
        slot.activity += self.clause_inc;
        if slot.activity > CLAUSE_RESCALE_THRESHOLD {
            for s in self.slots.iter_mut().filter(|s| s.live && s.learnt) {
                s.activity *= CLAUSE_RESCALE_FACTOR;
            }
            self.clause_inc *= CLAUSE_RESCALE_FACTOR;
        }
    }

    pub fn decay_clause_activities(&mut self) {
        self.clause_inc *= CLAUSE_INVERSE_DECAY;
    }

    /// Propagates queued assignments to fixpoint. Returns a conflicting
    /// clause, or `None` once the queue is exhausted. `propagations` counts
    /// trail literals whose watch lists were processed.
    pub fn propagate(&mut self, trail: &mut Trail, propagations: &mut u64) -> Option<ClauseRef> {
        while let Some(p) = trail.next_queued() {
            *propagations += 1;
            let falsified = !p;
            let mut ws = core::mem::take(&mut self.watches[falsified.code()]);
            let mut kept = 0;
            let mut i = 0;
            'watchers: while i < ws.len() {
                let cref = ws[i];
                i += 1;
                let lits = &mut self.slots[cref.idx()].lits;
                if lits[0] == falsified {
                    lits.swap(0, 1);
                }
                debug_assert_eq!(lits[1], falsified);
                let first = lits[0];
                if trail.value_lit(first) == Some(true) {
                    ws[kept] = cref;
                    kept += 1;
                    continue;
                }
                for k in 2..lits.len() {
                    if trail.value_lit(lits[k]) != Some(false) {
                        lits.swap(1, k);
                        let moved = lits[1];
                        self.watches[moved.code()].push(cref);
                        continue 'watchers;
                    }
                }
                // No replacement: the clause is unit or conflicting.
                ws[kept] = cref;
                kept += 1;
                if trail.value_lit(first) == Some(false) {
                    while i < ws.len() {
                        ws[kept] = ws[i];
                        kept += 1;
                        i += 1;
                    }
                    ws.truncate(kept);
                    self.watches[falsified.code()] = ws;
                    trail.flush_queue();
                    return Some(cref);
                }
                trail.enqueue(first, Some(cref));
            }
            ws.truncate(kept);
            self.watches[falsified.code()] = ws;
        }
        None
    }

    /// Deletes the worst half of the deletable learnt clauses: everything
    /// except glue clauses (LBD <= 2) and reasons on the trail, ordered by
    /// (LBD desc, activity asc). Grows the trigger limit by 1.1x. Returns the
    /// number of clauses deleted.
    pub fn reduce(&mut self, trail: &Trail) -> u64 {
        let mut locked = vec![false; self.slots.len()];
        for &lit in trail.lits() {
            if let Some(cref) = trail.reason_of(lit.var()) {
                locked[cref.idx()] = true;
            }
        }
        let mut candidates: Vec<u32> = (0..self.slots.len() as u32)
            .filter(|&i| {
                let s = &self.slots[i as usize];
                s.live && s.learnt && s.lbd > GLUE_LBD && !locked[i as usize]
            })
            .collect();
        candidates.sort_by(|&a, &b| {
            let (sa, sb) = (&self.slots[a as usize], &self.slots[b as usize]);
            sb.lbd
                .cmp(&sa.lbd)
                .then(sa.activity.total_cmp(&sb.activity))
                .then(a.cmp(&b))
        });
        let doomed = candidates.len() / 2;
        for &idx in &candidates[..doomed] {
            self.delete(ClauseRef(idx));
        }
        self.limit *= 1.1;
        doomed as u64
    }

    fn delete(&mut self, cref: ClauseRef) {
        let slot = &mut self.slots[cref.idx()];
        debug_assert!(slot.live);
        let (w0, w1) = (slot.lits[0], slot.lits[1]);
        slot.live = false;
        slot.lits = Vec::new();
        if slot.learnt {
            self.num_learnt -= 1;
        } else {
            self.num_original -= 1;
        }
        self.deleted_total += 1;
        self.watches[w0.code()].retain(|&c| c != cref);
        self.watches[w1.code()].retain(|&c| c != cref);
        self.free.push(cref.0);
    }

    /// Watch-list soundness: at a propagation fixpoint a watched literal may
    /// be false only if the clause's other watch is true. Panics on violation;
    /// meant for debug builds and tests.
    #[cfg(any(debug_assertions, test))]
    pub fn check_watch_invariant(&self, trail: &Trail) {
        for (idx, slot) in self.slots.iter().enumerate() {
            if !slot.live {
                continue;
            }
            let (w0, w1) = (slot.lits[0], slot.lits[1]);
            let cref = ClauseRef(idx as u32);
            assert!(
                self.watches[w0.code()].contains(&cref) && self.watches[w1.code()].contains(&cref),
                "clause {idx} is not on both watch lists"
            );
            let (v0, v1) = (trail.value_lit(w0), trail.value_lit(w1));
            assert!(
                !(v0 == Some(false) && v1 != Some(true)),
                "clause {idx}: watch {w0} false without {w1} true"
            );
            assert!(
                !(v1 == Some(false) && v0 != Some(true)),
                "clause {idx}: watch {w1} false without {w0} true"
            );
        }
    }
}
