use alloc::vec;
use alloc::vec::Vec;

use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashMap};

use super::step::{ProofStep, StepKind};
use crate::encode::CnfInstance;
use crate::lit::Lit;

/// Why a step was refused.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RejectReason {
    #[error("clause is neither RUP nor RAT on its first literal")]
    NotImplied,
    #[error("proof does not end with the empty clause")]
    MissingEmptyClause,
    #[error("literal {0} exceeds the formula's variable count")]
    UnknownVariable(i32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept {
        trusted: usize,
        steps: usize,
    },
    Reject {
        /// Zero-based index of the offending step; the proof length when the proof is incomplete.
        step: usize,
        reason: RejectReason,
    },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept { .. })
    }
}

const NONE: u32 = u32::MAX;
const BINARY: u32 = 1 << 31;

#[derive(Clone, Copy)]
struct ClauseMeta {
    start: u32,
    len: u32,
    active: bool,
    /// Next clause with the same content hash.
    next: u32,
}

#[derive(Clone, Copy)]
struct Watch {
    /// Clause id, with the `BINARY` bit set for two-literal clauses.
    id: u32,
    blocker: Lit,
}

/// Forward DRAT checker with trusted additions.
///
/// Keeps the active clause set under top-level unit propagation; each
/// addition is checked by propagating the negation of the clause on top.
#[derive(Clone)]
pub struct Checker {
    var_count: usize,
    arena: Vec<Lit>,
    meta: Vec<ClauseMeta>,
    hasher: DefaultHashBuilder,
    /// Content hash to most recent clause id.
    index: HashMap<u64, u32>,
    /// Watches triggered when the literal with this code becomes false.
    watches: Vec<Vec<Watch>>,
    units: Vec<u32>,
    values: Vec<i8>,
    cause: Vec<u32>,
    trail: Vec<Lit>,
    head: usize,
    root_conflict: bool,
    scratch: Vec<Lit>,
    steps: usize,
    trusted: usize,
    ignored_deletions: usize,
    rebuilds: usize,
    propagations: u64,
    last_was_empty: bool,
    rejected: Option<(usize, RejectReason)>,
}

impl Checker {
    pub fn new(formula: &CnfInstance) -> Self {
        let var_count = formula.var_count as usize;
        let mut checker = Checker {
            var_count,
            arena: Vec::new(),
            meta: Vec::with_capacity(formula.clauses.len()),
            hasher: DefaultHashBuilder::default(),
            index: HashMap::with_capacity(formula.clauses.len()),
            watches: vec![Vec::new(); 2 * var_count],
            units: Vec::new(),
            values: vec![0; 2 * var_count],
            cause: vec![NONE; var_count],
            trail: Vec::new(),
            head: 0,
            root_conflict: false,
            scratch: Vec::new(),
            steps: 0,
            trusted: 0,
            ignored_deletions: 0,
            rebuilds: 0,
            propagations: 0,
            last_was_empty: false,
            rejected: None,
        };
        for clause in &formula.clauses {
            checker.normalize_into_scratch(clause);
            checker.insert_scratch();
        }
        checker
    }

    pub fn steps_checked(&self) -> usize {
        self.steps
    }

    pub fn trusted_count(&self) -> usize {
        self.trusted
    }

    /// Deletions naming clauses that are not in the active set; they are skipped.
    pub fn ignored_deletions(&self) -> usize {
        self.ignored_deletions
    }

    /// Times the top-level state was recomputed from scratch.
    pub fn rebuilds(&self) -> usize {
        self.rebuilds
    }

    /// Literals taken off the propagation queue so far.
    pub fn propagations(&self) -> u64 {
        self.propagations
    }

    #[inline]
    fn value(&self, lit: Lit) -> i8 {
        self.values[lit.code()]
    }

    #[inline]
    fn set_true(&mut self, lit: Lit, cause: u32) {
        let code = lit.code();
        self.values[code] = 1;
        self.values[code ^ 1] = -1;
        self.cause[lit.var().index()] = cause;
        self.trail.push(lit);
    }

    fn lits(&self, id: u32) -> &[Lit] {
        let m = &self.meta[id as usize];
        &self.arena[m.start as usize..(m.start + m.len) as usize]
    }

    fn normalize_into_scratch(&mut self, lits: &[Lit]) {
        self.scratch.clear();
        self.scratch.extend_from_slice(lits);
        self.scratch.sort_unstable();
        self.scratch.dedup();
    }

    fn hash_of(&self, sorted: &[Lit]) -> u64 {
        self.hasher.hash_one(sorted)
    }

    /// Adds the normalized clause in `scratch` and updates top-level propagation.
    fn insert_scratch(&mut self) {
        let id = self.meta.len() as u32;
        let hash = self.hash_of(&self.scratch);
        let next = self.index.insert(hash, id).unwrap_or(NONE);
        self.meta.push(ClauseMeta {
            start: self.arena.len() as u32,
            len: self.scratch.len() as u32,
            active: true,
            next,
        });
        self.arena.extend_from_slice(&self.scratch);
        self.watch_new(id);
        if !self.root_conflict && self.propagate() {
            self.root_conflict = true;
        }
    }

    /// Chooses watches for a clause under the current top-level assignment.
    fn watch_new(&mut self, id: u32) {
        let ClauseMeta { start, len, .. } = self.meta[id as usize];
        let (start, len) = (start as usize, len as usize);
        match len {
            0 => {
                self.root_conflict = true;
                return;
            }
            1 => {
                self.units.push(id);
                let lit = self.arena[start];
                match self.value(lit) {
                    0 => self.set_true(lit, id),
                    -1 => self.root_conflict = true,
                    _ => {}
                }
                return;
            }
            _ => {}
        }
        let mut front = 0;
        for k in 0..len {
            if front == 2 {
                break;
            }
            if self.value(self.arena[start + k]) != -1 {
                self.arena.swap(start + front, start + k);
                front += 1;
            }
        }
        let (a, b) = (self.arena[start], self.arena[start + 1]);
        let tag = if len == 2 { id | BINARY } else { id };
        self.watches[a.code()].push(Watch { id: tag, blocker: b });
        self.watches[b.code()].push(Watch { id: tag, blocker: a });
        match front {
            0 => self.root_conflict = true,
            1 if self.value(a) == 0 => self.set_true(a, id),
            _ => {}
        }
    }

    /// Propagates pending assignments; true on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = !self.trail[self.head];
            self.head += 1;
            self.propagations += 1;
            let mut list = core::mem::take(&mut self.watches[falsified.code()]);
            let mut keep = 0;
            let mut pos = 0;
            let mut conflict = false;
            while pos < list.len() {
                let w = list[pos];
                pos += 1;
                let id = w.id & !BINARY;
                let meta = self.meta[id as usize];
                if !meta.active {
                    continue;
                }
                let blocker_value = self.values[w.blocker.code()];
                if blocker_value == 1 {
                    list[keep] = w;
                    keep += 1;
                    continue;
                }
                if w.id & BINARY != 0 {
                    list[keep] = w;
                    keep += 1;
                    if blocker_value == -1 {
                        conflict = true;
                        break;
                    }
                    self.set_true(w.blocker, id);
                    continue;
                }
                let start = meta.start as usize;
                let len = meta.len as usize;
                if self.arena[start] == falsified {
                    self.arena.swap(start, start + 1);
                }
                let other = self.arena[start];
                let other_value = self.values[other.code()];
                if other != w.blocker && other_value == 1 {
                    list[keep] = Watch { id: w.id, blocker: other };
                    keep += 1;
                    continue;
                }
                let mut replaced = false;
                for k in start + 2..start + len {
                    let cand = self.arena[k];
                    if self.values[cand.code()] != -1 {
                        self.arena.swap(start + 1, k);
                        self.watches[cand.code()].push(Watch { id: w.id, blocker: other });
                        replaced = true;
                        break;
                    }
                }
                if replaced {
                    continue;
                }
                list[keep] = Watch { id: w.id, blocker: other };
                keep += 1;
                if other_value == -1 {
                    conflict = true;
                    break;
                }
                self.set_true(other, id);
            }
            while pos < list.len() {
                list[keep] = list[pos];
                keep += 1;
                pos += 1;
            }
            list.truncate(keep);
            self.watches[falsified.code()] = list;
            if conflict {
                self.head = self.trail.len();
                return true;
            }
        }
        false
    }

    fn undo_to(&mut self, mark: usize) {
        for k in mark..self.trail.len() {
            let lit = self.trail[k];
            self.values[lit.code()] = 0;
            self.values[lit.code() ^ 1] = 0;
            self.cause[lit.var().index()] = NONE;
        }
        self.trail.truncate(mark);
        self.head = mark;
    }

    /// Reverse unit propagation: does falsifying `lits` propagate to a conflict?
    fn rup(&mut self, lits: &[Lit]) -> bool {
        if self.root_conflict {
            return true;
        }
        let mark = self.trail.len();
        let mut implied = false;
        for &lit in lits {
            match self.value(lit) {
                1 => {
                    implied = true;
                    break;
                }
                0 => self.set_true(!lit, NONE),
                _ => {}
            }
        }
        if !implied {
            implied = self.propagate();
        }
        self.undo_to(mark);
        implied
    }

    /// Resolution asymmetric tautology on the first literal.
    fn rat(&mut self, lits: &[Lit]) -> bool {
        let Some(&pivot) = lits.first() else {
            return false;
        };
        let partners: Vec<u32> = (0..self.meta.len() as u32)
            .filter(|&id| self.meta[id as usize].active && self.lits(id).contains(&!pivot))
            .collect();
        let mut resolvent = Vec::new();
        for id in partners {
            resolvent.clear();
            resolvent.extend_from_slice(lits);
            resolvent.extend(self.lits(id).iter().copied().filter(|&l| l != !pivot));
            resolvent.sort_unstable();
            resolvent.dedup();
            if resolvent.windows(2).any(|w| w[0] == !w[1]) {
                continue;
            }
            if !self.rup(&resolvent) {
                return false;
            }
        }
        true
    }

    /// Deactivates the most recent active clause equal to `scratch`.
    fn remove_scratch(&mut self) {
        let hash = self.hash_of(&self.scratch);
        let mut prev = NONE;
        let mut id = self.index.get(&hash).copied().unwrap_or(NONE);
        while id != NONE {
            let m = self.meta[id as usize];
            if m.active && m.len as usize == self.scratch.len() && self.lits(id).iter().all(|l| self.scratch.contains(l)) {
                break;
            }
            prev = id;
            id = m.next;
        }
        if id == NONE {
            self.ignored_deletions += 1;
            return;
        }
        let next = self.meta[id as usize].next;
        if prev == NONE {
            if next == NONE {
                self.index.remove(&hash);
            } else {
                self.index.insert(hash, next);
            }
        } else {
            self.meta[prev as usize].next = next;
        }
        self.meta[id as usize].active = false;
        if self.meta[id as usize].len == 1 {
            self.units.retain(|&u| u != id);
        }
        if self.root_conflict {
            self.rebuild();
            return;
        }
        if !self.lits(id).iter().any(|l| self.cause[l.var().index()] == id) {
            return;
        }
        let Some(first) = self.trail.iter().position(|l| self.cause[l.var().index()] == id) else {
            return;
        };
        // Everything before `first` is still justified; re-derive the rest.
        self.undo_to(first);
        for k in 0..self.units.len() {
            let lit = self.arena[self.meta[self.units[k] as usize].start as usize];
            match self.value(lit) {
                0 => self.set_true(lit, self.units[k]),
                -1 => self.root_conflict = true,
                _ => {}
            }
        }
        self.head = 0;
        if !self.root_conflict && self.propagate() {
            self.root_conflict = true;
        }
    }

    /// Recomputes watches and top-level propagation from the active set.
    fn rebuild(&mut self) {
        self.rebuilds += 1;
        self.undo_to(0);
        for list in self.watches.iter_mut() {
            list.clear();
        }
        self.units.clear();
        self.root_conflict = false;
        for id in 0..self.meta.len() as u32 {
            if self.meta[id as usize].active {
                self.watch_new(id);
                if !self.root_conflict && self.propagate() {
                    self.root_conflict = true;
                }
            }
        }
    }

    fn check_vars(&self, lits: &[Lit]) -> Result<(), RejectReason> {
        match lits.iter().find(|l| l.var().index() >= self.var_count) {
            Some(l) => Err(RejectReason::UnknownVariable(l.to_dimacs())),
            None => Ok(()),
        }
    }

    /// Processes one step; after a rejection further steps are ignored.
    pub fn apply(&mut self, step: &ProofStep) -> Result<(), (usize, RejectReason)> {
        if let Some(rejected) = &self.rejected {
            return Err(rejected.clone());
        }
        let index = self.steps;
        self.steps += 1;
        let outcome = self.check_vars(&step.literals).and_then(|()| {
            self.normalize_into_scratch(&step.literals);
            match step.kind {
                StepKind::Addition => {
                    let lits = core::mem::take(&mut self.scratch);
                    let ok = self.rup(&lits) || self.rat(&step.literals);
                    self.scratch = lits;
                    if ok {
                        self.insert_scratch();
                        Ok(())
                    } else {
                        Err(RejectReason::NotImplied)
                    }
                }
                StepKind::TrustedAddition => {
                    self.trusted += 1;
                    self.insert_scratch();
                    Ok(())
                }
                StepKind::Deletion => {
                    self.remove_scratch();
                    Ok(())
                }
            }
        });
        self.last_was_empty = step.is_empty_clause();
        outcome.map_err(|reason| {
            self.rejected = Some((index, reason.clone()));
            (index, reason)
        })
    }

    pub fn finish(self) -> Verdict {
        if let Some((step, reason)) = self.rejected {
            return Verdict::Reject { step, reason };
        }
        if !self.last_was_empty {
            return Verdict::Reject { step: self.steps, reason: RejectReason::MissingEmptyClause };
        }
        Verdict::Accept { trusted: self.trusted, steps: self.steps }
    }
}

/// Checks a whole proof against `formula`.
pub fn check(formula: &CnfInstance, proof: &[ProofStep]) -> Verdict {
    let mut checker = Checker::new(formula);
    for step in proof {
        if checker.apply(step).is_err() {
            break;
        }
    }
    checker.finish()
}
