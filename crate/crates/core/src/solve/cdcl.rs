use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::heap::VarHeap;
use super::{RestartPolicy, SolveError, SolverConfig, SolverStats};
use crate::lit::{Lit, Var};
use crate::proof::{ProofSink, StepKind};

type L = u32;

const NO_REASON: u32 = u32::MAX;
const BINARY: u32 = 1 << 31;
const HEADER: usize = 3;
const LEARNT: u32 = 1;
const DELETED: u32 = 2;

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

#[derive(Debug, Clone, Copy)]
struct Watch {
    /// Clause reference, with [`BINARY`] set for two-literal clauses.
    cref: u32,
    /// A literal of the clause; for binary clauses, the other literal.
    blocker: L,
}

fn var_of(l: L) -> usize {
    (l >> 1) as usize
}

fn to_lit(l: L) -> Lit {
    Lit::from_code(l as usize)
}

/// Outcome of one search call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Vec<bool>),
    Unsat,
}

/// What to do after a model has been reported.
pub enum ModelAction {
    /// Add this clause permanently (logged as a trusted addition) and keep searching.
    Block(Vec<Lit>),
    Stop,
}

/// Final state of an all-solutions run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEnd {
    /// The formula plus all blocking clauses is unsatisfiable.
    Exhausted,
    /// The callback asked to stop.
    Stopped,
}

/// Exponential moving average with bias correction for the early samples.
#[derive(Debug, Clone, Copy)]
struct Ema {
    alpha: f64,
    value: f64,
    beta: f64,
}

impl Ema {
    fn new(alpha: f64) -> Self {
        Ema { alpha, value: 0.0, beta: 1.0 }
    }

    fn update(&mut self, x: f64) {
        self.value += self.alpha * (x - self.value);
        self.beta *= 1.0 - self.alpha;
    }

    fn get(&self) -> f64 {
        if self.beta >= 1.0 {
            0.0
        } else {
            self.value / (1.0 - self.beta)
        }
    }
}

enum SearchStatus {
    Sat,
    Unsat,
    Restart,
    Budget,
}

/// Conflict-driven clause-learning solver with two watched literals,
/// first-UIP learning, clause minimisation, EVSIDS with phase saving,
/// LBD-average or Luby restarts and LBD-based clause deletion.
pub struct Solver<'p> {
    config: SolverConfig,
    num_vars: usize,
    arena: Vec<u32>,
    wasted: usize,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watch>>,
    value: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<L>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f32,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    to_clear: Vec<L>,
    stack: Vec<L>,
    level_stamp: Vec<u64>,
    stamp: u64,
    ok: bool,
    next_reduce: u64,
    reductions: u64,
    restarts: u64,
    lbd_fast: Ema,
    lbd_slow: Ema,
    stable: bool,
    stable_restarts: u64,
    phase_length: u64,
    next_switch: u64,
    stats: SolverStats,
    proof: Option<&'p mut dyn ProofSink>,
    proof_failed: bool,
}

impl<'p> Solver<'p> {
    pub fn new(num_vars: usize, config: SolverConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let activity: Vec<f64> = (0..num_vars)
            .map(|_| if config.seed == 0 { 0.0 } else { (rng.next_u32() as f64 / u32::MAX as f64) * 1e-5 })
            .collect();
        let mut heap = VarHeap::new(num_vars);
        for v in 0..num_vars {
            heap.insert(v, &activity);
        }
        Solver {
            next_reduce: config.first_reduce,
            config,
            num_vars,
            arena: Vec::new(),
            wasted: 0,
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            value: vec![UNDEF; 2 * num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            cla_inc: 1.0,
            heap,
            phase: vec![false; num_vars],
            seen: vec![false; num_vars],
            to_clear: Vec::new(),
            stack: Vec::new(),
            level_stamp: vec![0; num_vars + 1],
            stamp: 0,
            ok: true,
            reductions: 0,
            restarts: 0,
            lbd_fast: Ema::new(0.03),
            lbd_slow: Ema::new(1e-5),
            stable: false,
            stable_restarts: 0,
            phase_length: 1000,
            next_switch: 1000,
            stats: SolverStats::default(),
            proof: None,
            proof_failed: false,
        }
    }

    /// Logs every derived clause, deletion and blocking clause to `sink`.
    pub fn set_proof_sink(&mut self, sink: &'p mut dyn ProofSink) {
        self.proof = Some(sink);
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn log(&mut self, kind: StepKind, lits: &[L]) {
        if let Some(sink) = self.proof.as_mut() {
            let converted: Vec<Lit> = lits.iter().map(|&l| to_lit(l)).collect();
            if sink.log(kind, &converted).is_err() {
                self.proof_failed = true;
            }
        }
    }

    fn lit_value(&self, l: L) -> i8 {
        self.value[l as usize]
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn clause_len(&self, cref: u32) -> usize {
        self.arena[cref as usize] as usize
    }

    fn clause(&self, cref: u32) -> &[u32] {
        let start = cref as usize + HEADER;
        &self.arena[start..start + self.clause_len(cref)]
    }

    fn is_learnt(&self, cref: u32) -> bool {
        self.arena[cref as usize + 1] & LEARNT != 0
    }

    fn lbd(&self, cref: u32) -> u32 {
        self.arena[cref as usize + 1] >> 2
    }

    fn clause_activity(&self, cref: u32) -> f32 {
        f32::from_bits(self.arena[cref as usize + 2])
    }

    fn set_clause_activity(&mut self, cref: u32, act: f32) {
        self.arena[cref as usize + 2] = act.to_bits();
    }

    fn alloc_clause(&mut self, lits: &[L], learnt: bool, lbd: u32) -> u32 {
        let cref = self.arena.len() as u32;
        assert!(cref < BINARY, "clause arena exhausted");
        self.arena.push(lits.len() as u32);
        self.arena.push(lbd << 2 | learnt as u32);
        self.arena.push(0f32.to_bits());
        self.arena.extend_from_slice(lits);
        cref
    }

    fn attach(&mut self, cref: u32) {
        let (a, b, binary) = {
            let c = self.clause(cref);
            (c[0], c[1], c.len() == 2)
        };
        let tag = if binary { cref | BINARY } else { cref };
        self.watches[a as usize].push(Watch { cref: tag, blocker: b });
        self.watches[b as usize].push(Watch { cref: tag, blocker: a });
    }

    fn enqueue(&mut self, l: L, reason: u32) {
        let v = var_of(l);
        debug_assert_eq!(self.value[l as usize], UNDEF);
        self.value[l as usize] = TRUE;
        self.value[(l ^ 1) as usize] = FALSE;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds an input clause at decision level 0. Returns false once the
    /// formula is known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let mut lits: Vec<L> = clause.iter().map(|l| l.code() as L).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.lit_value(l) == TRUE && self.level[var_of(l)] == 0) {
            return true;
        }
        lits.retain(|&l| self.lit_value(l) != FALSE);
        match lits.len() {
            0 => {
                self.ok = false;
                self.log(StepKind::Addition, &[]);
            }
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                    self.log(StepKind::Addition, &[]);
                }
            }
            _ => {
                let cref = self.alloc_clause(&lits, false, 0);
                self.attach(cref);
            }
        }
        self.ok
    }

    /// Unit propagation over the watch lists. Returns a conflicting clause.
    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = core::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                let blocker_value = self.value[w.blocker as usize];
                if blocker_value == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                if w.cref & BINARY != 0 {
                    ws[j] = w;
                    j += 1;
                    if blocker_value == FALSE {
                        conflict = Some(w.cref & !BINARY);
                        break;
                    }
                    self.enqueue(w.blocker, w.cref & !BINARY);
                    continue;
                }
                let cref = w.cref as usize;
                let start = cref + HEADER;
                let len = self.arena[cref] as usize;
                if self.arena[start] == false_lit {
                    self.arena.swap(start, start + 1);
                }
                let first = self.arena[start];
                if first != w.blocker && self.value[first as usize] == TRUE {
                    ws[j] = Watch { cref: w.cref, blocker: first };
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..len {
                    let l = self.arena[start + k];
                    if self.value[l as usize] != FALSE {
                        self.arena.swap(start + 1, start + k);
                        self.watches[l as usize].push(Watch { cref: w.cref, blocker: first });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watch { cref: w.cref, blocker: first };
                j += 1;
                if self.value[first as usize] == FALSE {
                    conflict = Some(w.cref);
                    break;
                }
                self.enqueue(first, w.cref);
            }
            while i < ws.len() {
                ws[j] = ws[i];
                i += 1;
                j += 1;
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let keep = self.trail_lim[level as usize];
        for idx in (keep..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = var_of(l);
            self.value[l as usize] = UNDEF;
            self.value[(l ^ 1) as usize] = UNDEF;
            self.reason[v] = NO_REASON;
            self.phase[v] = l & 1 == 0;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level as usize);
        self.qhead = keep;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let act = self.clause_activity(cref) + self.cla_inc;
        self.set_clause_activity(cref, act);
        if act > 1e20 {
            for i in 0..self.learnts.len() {
                let c = self.learnts[i];
                let a = self.clause_activity(c) * 1e-20;
                self.set_clause_activity(c, a);
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    /// First-UIP analysis; returns the learnt clause (asserting literal first,
    /// highest remaining level second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<L>, u32) {
        let mut learnt: Vec<L> = vec![0];
        let mut path = 0usize;
        let mut implied: Option<L> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            if self.is_learnt(confl) {
                self.bump_clause(confl);
            }
            let len = self.clause_len(confl);
            for k in 0..len {
                let q = self.arena[confl as usize + HEADER + k];
                let v = var_of(q);
                if implied.is_some_and(|p| var_of(p) == v) {
                    continue;
                }
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let p = self.trail[idx];
            let v = var_of(p);
            self.seen[v] = false;
            path -= 1;
            implied = Some(p);
            if path == 0 {
                break;
            }
            confl = self.reason[v];
        }
        learnt[0] = implied.unwrap() ^ 1;

        // Recursive minimisation.
        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt);
        let abstract_levels = learnt[1..].iter().fold(0, |acc, &l| acc | self.abstract_level(var_of(l)));
        let mut kept = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[var_of(l)] == NO_REASON || !self.literal_redundant(l, abstract_levels) {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);
        for i in 0..self.to_clear.len() {
            let v = var_of(self.to_clear[i]);
            self.seen[v] = false;
        }

        let backjump = if learnt.len() == 1 {
            0
        } else {
            let (best, _) = learnt
                .iter()
                .enumerate()
                .skip(1)
                .max_by_key(|&(_, &l)| self.level[var_of(l)])
                .unwrap();
            learnt.swap(1, best);
            self.level[var_of(learnt[1])]
        };
        (learnt, backjump)
    }

    fn literal_redundant(&mut self, p: L, abstract_levels: u32) -> bool {
        self.stack.clear();
        self.stack.push(p);
        let top = self.to_clear.len();
        while let Some(q) = self.stack.pop() {
            let cref = self.reason[var_of(q)];
            let len = self.clause_len(cref);
            for k in 0..len {
                let l = self.arena[cref as usize + HEADER + k];
                let v = var_of(l);
                if v == var_of(q) || self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v] != NO_REASON && self.abstract_level(v) & abstract_levels != 0 {
                    self.seen[v] = true;
                    self.stack.push(l);
                    self.to_clear.push(l);
                } else {
                    for i in top..self.to_clear.len() {
                        let v = var_of(self.to_clear[i]);
                        self.seen[v] = false;
                    }
                    self.to_clear.truncate(top);
                    return false;
                }
            }
        }
        true
    }

    fn compute_lbd(&mut self, lits: &[L]) -> u32 {
        self.stamp += 1;
        let mut count = 0;
        for &l in lits {
            let lvl = self.level[var_of(l)] as usize;
            if self.level_stamp[lvl] != self.stamp {
                self.level_stamp[lvl] = self.stamp;
                count += 1;
            }
        }
        count
    }

    fn locked(&self, cref: u32) -> bool {
        let first = self.clause(cref)[0];
        self.lit_value(first) == TRUE && self.reason[var_of(first)] == cref
    }

    fn reduce_db(&mut self) {
        self.reductions += 1;
        let mut candidates: Vec<u32> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| self.lbd(c) > self.config.keep_glue && !self.locked(c))
            .collect();
        candidates.sort_unstable_by(|&a, &b| {
            self.lbd(b)
                .cmp(&self.lbd(a))
                .then(self.clause_activity(a).total_cmp(&self.clause_activity(b)))
        });
        candidates.truncate(candidates.len() / 2);
        for &c in &candidates {
            let lits = self.clause(c).to_vec();
            self.log(StepKind::Deletion, &lits);
            self.arena[c as usize + 1] |= DELETED;
            self.wasted += HEADER + lits.len();
        }
        if candidates.is_empty() {
            return;
        }
        let arena = &self.arena;
        let live = |w: &Watch| arena[(w.cref & !BINARY) as usize + 1] & DELETED == 0;
        for ws in self.watches.iter_mut() {
            ws.retain(live);
        }
        self.learnts.retain(|&c| arena[c as usize + 1] & DELETED == 0);
        if self.wasted * 2 > self.arena.len() {
            self.collect_garbage();
        }
    }

    fn collect_garbage(&mut self) {
        let mut fresh = Vec::with_capacity(self.arena.len() - self.wasted);
        let mut pos = 0;
        while pos < self.arena.len() {
            let len = self.arena[pos] as usize;
            if self.arena[pos + 1] & DELETED == 0 {
                let new = fresh.len() as u32;
                fresh.extend_from_slice(&self.arena[pos..pos + HEADER + len]);
                // Forwarding address replaces the activity word of the old copy.
                self.arena[pos + 2] = new;
            }
            pos += HEADER + len;
        }
        let old = core::mem::replace(&mut self.arena, fresh);
        let forward = |cref: u32| old[cref as usize + 2];
        for ws in self.watches.iter_mut() {
            for w in ws.iter_mut() {
                w.cref = forward(w.cref & !BINARY) | (w.cref & BINARY);
            }
        }
        for &l in &self.trail {
            let v = var_of(l);
            if self.reason[v] != NO_REASON {
                self.reason[v] = forward(self.reason[v]);
            }
        }
        for c in self.learnts.iter_mut() {
            *c = forward(*c);
        }
        self.wasted = 0;
    }

    fn pick_branch(&mut self) -> Option<L> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.value[2 * v] == UNDEF {
                let l = (2 * v) as L | (!self.phase[v]) as L;
                return Some(l);
            }
        }
        None
    }

    fn search(&mut self, conflict_limit: u64) -> SearchStatus {
        let mut conflicts_here = 0u64;
        loop {
            if self.proof_failed {
                return SearchStatus::Budget;
            }
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts_here += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    self.log(StepKind::Addition, &[]);
                    return SearchStatus::Unsat;
                }
                let (learnt, backjump) = self.analyze(confl);
                let lbd = self.compute_lbd(&learnt);
                self.lbd_fast.update(lbd as f64);
                self.lbd_slow.update(lbd as f64);
                self.cancel_until(backjump);
                self.log(StepKind::Addition, &learnt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let cref = self.alloc_clause(&learnt, true, lbd);
                    self.attach(cref);
                    self.learnts.push(cref);
                    self.bump_clause(cref);
                    self.enqueue(learnt[0], cref);
                }
                self.var_inc /= self.config.var_decay;
                self.cla_inc /= 0.999;
            } else {
                if self.restart_due(conflicts_here, conflict_limit) {
                    self.cancel_until(0);
                    return SearchStatus::Restart;
                }
                if self.config.conflict_budget.is_some_and(|b| self.stats.conflicts >= b) {
                    return SearchStatus::Budget;
                }
                if self.stats.conflicts >= self.next_reduce {
                    self.next_reduce = self.stats.conflicts + self.config.first_reduce + self.config.reduce_increment * self.reductions;
                    self.reduce_db();
                }
                match self.pick_branch() {
                    None => return SearchStatus::Sat,
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }

    fn restart_due(&self, conflicts_here: u64, limit: u64) -> bool {
        let focused = match self.config.restarts {
            RestartPolicy::Luby => false,
            RestartPolicy::Glucose => true,
            RestartPolicy::Alternating => !self.stable,
        };
        if focused {
            conflicts_here >= 2 && self.lbd_fast.get() > 1.1 * self.lbd_slow.get()
        } else {
            conflicts_here >= limit
        }
    }

    fn restart_limit(&self) -> u64 {
        match self.config.restarts {
            RestartPolicy::Alternating if self.stable => luby(self.stable_restarts) * self.config.restart_base * 16,
            _ => luby(self.restarts) * self.config.restart_base,
        }
    }

    fn note_restart(&mut self) {
        self.restarts += 1;
        self.stats.restarts += 1;
        if self.stable {
            self.stable_restarts += 1;
        }
        if self.config.restarts == RestartPolicy::Alternating && self.stats.conflicts >= self.next_switch {
            self.stable = !self.stable;
            if !self.stable {
                self.phase_length *= 2;
            }
            self.next_switch = self.stats.conflicts + self.phase_length;
        }
    }

    fn model(&self) -> Vec<bool> {
        (0..self.num_vars).map(|v| self.value[2 * v] == TRUE).collect()
    }

    /// Adds a clause in the middle of search (after a model was found) and
    /// backjumps so that the watch invariants hold again.
    fn add_blocking_clause(&mut self, clause: &[Lit]) {
        let mut lits: Vec<L> = clause.iter().map(|l| l.code() as L).collect();
        lits.sort_unstable();
        lits.dedup();
        self.log(StepKind::TrustedAddition, &lits);
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        // True first, then unassigned, then false by decreasing level.
        let key = |s: &Self, l: L| match s.lit_value(l) {
            TRUE => (2u8, u32::MAX - s.level[var_of(l)]),
            UNDEF => (1, 0),
            _ => (0, s.level[var_of(l)]),
        };
        lits.sort_by(|&a, &b| key(self, b).cmp(&key(self, a)));
        let all_false_at_root = lits
            .iter()
            .all(|&l| self.lit_value(l) == FALSE && self.level[var_of(l)] == 0);
        if lits.is_empty() || all_false_at_root {
            self.cancel_until(0);
            self.ok = false;
            self.log(StepKind::Addition, &[]);
            return;
        }
        if lits.len() == 1 {
            self.cancel_until(0);
            if self.lit_value(lits[0]) == UNDEF {
                self.enqueue(lits[0], NO_REASON);
            }
            return;
        }
        let cref = self.alloc_clause(&lits, false, 0);
        self.attach(cref);
        let (first, second) = (lits[0], lits[1]);
        if self.lit_value(first) == FALSE {
            let (l0, l1) = (self.level[var_of(first)], self.level[var_of(second)]);
            if self.lit_value(second) == FALSE && l0 > l1 {
                self.cancel_until(l1);
                self.enqueue(first, cref);
            } else {
                self.cancel_until(l0.saturating_sub(1));
            }
        } else if self.lit_value(first) == UNDEF && self.lit_value(second) == FALSE {
            let l1 = self.level[var_of(second)];
            self.cancel_until(l1);
            self.enqueue(first, cref);
        }
    }

    /// Runs until every model has been reported and blocked, or the callback stops.
    pub fn enumerate<E>(
        &mut self,
        mut on_model: impl FnMut(&[bool]) -> Result<ModelAction, E>,
    ) -> Result<SearchEnd, SolveError<E>> {
        if !self.ok {
            return Ok(SearchEnd::Exhausted);
        }
        if self.propagate().is_some() {
            self.ok = false;
            self.log(StepKind::Addition, &[]);
            return self.finish(SearchEnd::Exhausted);
        }
        loop {
            let limit = self.restart_limit();
            match self.search(limit) {
                SearchStatus::Sat => {
                    let model = self.model();
                    self.stats.models += 1;
                    match on_model(&model).map_err(SolveError::Callback)? {
                        ModelAction::Stop => return self.finish(SearchEnd::Stopped),
                        ModelAction::Block(clause) => self.add_blocking_clause(&clause),
                    }
                    if !self.ok {
                        return self.finish(SearchEnd::Exhausted);
                    }
                }
                SearchStatus::Unsat => return self.finish(SearchEnd::Exhausted),
                SearchStatus::Restart => self.note_restart(),
                SearchStatus::Budget => {
                    if self.proof_failed {
                        return Err(SolveError::ProofSink);
                    }
                    return Err(SolveError::BudgetExhausted { conflicts: self.stats.conflicts });
                }
            }
        }
    }

    fn finish<E>(&self, end: SearchEnd) -> Result<SearchEnd, SolveError<E>> {
        if self.proof_failed {
            Err(SolveError::ProofSink)
        } else {
            Ok(end)
        }
    }

    /// Decides satisfiability, stopping at the first model.
    pub fn solve(&mut self) -> Result<SolveResult, SolveError<core::convert::Infallible>> {
        let mut found = None;
        let end = self.enumerate(|model| {
            found = Some(model.to_vec());
            Ok(ModelAction::Stop)
        })?;
        Ok(match (end, found) {
            (SearchEnd::Stopped, Some(model)) => SolveResult::Sat(model),
            _ => SolveResult::Unsat,
        })
    }

    /// Loads every clause of `clauses` over `num_vars` variables.
    pub fn from_clauses(num_vars: usize, clauses: &[Vec<Lit>], config: SolverConfig) -> Self {
        let mut solver = Solver::new(num_vars, config);
        for c in clauses {
            debug_assert!(c.iter().all(|l| l.var().index() < num_vars));
            if !solver.add_clause(c) {
                break;
            }
        }
        solver
    }

    /// Variable value in the current (partial) assignment.
    pub fn value_of(&self, var: Var) -> Option<bool> {
        match self.value[2 * var.index()] {
            TRUE => Some(true),
            FALSE => Some(false),
            _ => None,
        }
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ... (zero-based).
pub fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0i32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}
