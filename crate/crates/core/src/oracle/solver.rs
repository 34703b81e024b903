//! A CDCL solver: two watched literals, first-UIP learning, VSIDS, phase
//! saving, Luby restarts and activity-based clause deletion. Optionally logs
//! every learned clause as an explicit resolution chain.

use std::time::Instant;

use crate::formula::{Lit, Var};

use super::OracleError;

const NO_REASON: u32 = u32::MAX;
const NO_PROOF: u32 = u32::MAX;
const UNDEF: u8 = 2;

/// Budget for one `solve` call.
#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    pub conflicts: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Limits {
    pub fn none() -> Limits {
        Limits::default()
    }
}

/// One entry of the raw proof log. `tag` on axioms is whatever the caller
/// passed to [`Solver::add_clause_tagged`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogStep {
    Axiom { lits: Vec<Lit>, tag: u32 },
    /// Resolve `start` successively with each `(premise, pivot)`.
    Chain {
        start: u32,
        steps: Vec<(u32, Var)>,
        lits: Vec<Lit>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct ProofLog {
    pub steps: Vec<LogStep>,
    /// Index of the step deriving the empty clause, once found.
    pub empty: Option<u32>,
}

impl ProofLog {
    fn push(&mut self, s: LogStep) -> u32 {
        self.steps.push(s);
        (self.steps.len() - 1) as u32
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Clone, Debug)]
struct ClauseData {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
    proof_id: u32,
}

#[derive(Clone, Copy, Debug)]
struct Watch {
    cref: u32,
    blocker: Lit,
}

#[derive(Clone, Debug)]
pub struct Solver {
    num_vars: usize,
    clauses: Vec<ClauseData>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    max_learnts: f64,
    model: Vec<bool>,
    proof: Option<ProofLog>,
    unit_proof: Vec<u32>,
    units_done: usize,
    stats: SolverStats,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new()
    }
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            num_vars: 0,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: vec![Vec::new(), Vec::new()],
            assigns: vec![UNDEF],
            level: vec![0],
            reason: vec![NO_REASON],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0],
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            phase: vec![false],
            seen: vec![false],
            ok: true,
            max_learnts: 0.0,
            model: Vec::new(),
            proof: None,
            unit_proof: vec![NO_PROOF],
            units_done: 0,
            stats: SolverStats::default(),
        }
    }

    /// A solver that records a resolution derivation of every learned clause.
    pub fn with_proof() -> Solver {
        Solver {
            proof: Some(ProofLog::default()),
            ..Solver::new()
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn ensure_vars(&mut self, n: usize) {
        while self.num_vars < n {
            self.num_vars += 1;
            self.watches.push(Vec::new());
            self.watches.push(Vec::new());
            self.assigns.push(UNDEF);
            self.level.push(0);
            self.reason.push(NO_REASON);
            self.activity.push(0.0);
            self.phase.push(false);
            self.seen.push(false);
            self.unit_proof.push(NO_PROOF);
            self.heap.insert(self.num_vars, &self.activity);
        }
    }

    pub fn new_var(&mut self) -> Var {
        self.ensure_vars(self.num_vars + 1);
        Var::new(self.num_vars as u32)
    }

    /// False once the clause set is known to be unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn add_clause(&mut self, lits: &[Lit]) {
        self.add_clause_tagged(lits, 0);
    }

    /// Adds a clause; `tag` is recorded on its proof axiom.
    pub fn add_clause_tagged(&mut self, lits: &[Lit], tag: u32) {
        self.cancel_until(0);
        let mut lits = lits.to_vec();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        if let Some(top) = lits.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(top);
        }
        if !self.ok {
            return;
        }
        let proof_id = match self.proof.as_mut() {
            Some(p) => p.push(LogStep::Axiom {
                lits: lits.clone(),
                tag,
            }),
            None => NO_PROOF,
        };
        if lits.is_empty() {
            if let Some(p) = self.proof.as_mut() {
                p.empty = Some(proof_id);
            }
            self.ok = false;
            return;
        }
        // True literals first, then unassigned, then false.
        let rank = |s: &Solver, l: Lit| match s.value(l) {
            1 => 0,
            UNDEF => 1,
            _ => 2,
        };
        lits.sort_by_key(|&l| rank(self, l));
        let cref = self.alloc(lits.clone(), false, proof_id);
        if self.value(lits[0]) == 0 {
            self.derive_empty(cref);
            return;
        }
        if lits.len() >= 2 {
            self.attach(cref);
        }
        if self.value(lits[0]) == UNDEF && (lits.len() == 1 || self.value(lits[1]) == 0) {
            self.enqueue(lits[0], cref);
        }
    }

    /// Solves under `assumptions` with no resource limit.
    pub fn solve(&mut self, assumptions: &[Lit]) -> bool {
        self.solve_limited(assumptions, &Limits::none())
            .expect("no limit was set")
    }

    /// Returns `Ok(true)` for SAT (see [`Solver::model`]), `Ok(false)` for
    /// UNSAT under the assumptions.
    pub fn solve_limited(
        &mut self,
        assumptions: &[Lit],
        limits: &Limits,
    ) -> Result<bool, OracleError> {
        self.model.clear();
        if !self.ok {
            return Ok(false);
        }
        self.cancel_until(0);
        if let Some(top) = assumptions.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(top);
        }
        if let Some(c) = self.propagate() {
            self.derive_empty(c);
            return Ok(false);
        }
        if self.max_learnts == 0.0 {
            self.max_learnts = (self.clauses.len() as f64 / 3.0).max(2000.0);
        }
        let start_conflicts = self.stats.conflicts;
        let mut curr_restarts = 0;
        let result = loop {
            let budget = (luby(2.0, curr_restarts) * 100.0) as u64;
            match self.search(budget, assumptions, limits, start_conflicts) {
                Ok(Some(r)) => break Ok(r),
                Ok(None) => {
                    curr_restarts += 1;
                    self.stats.restarts += 1;
                }
                Err(e) => break Err(e),
            }
        };
        if let Ok(true) = result {
            self.model = (0..=self.num_vars)
                .map(|v| v > 0 && self.assigns[v] == 1)
                .collect();
        }
        self.cancel_until(0);
        result
    }

    /// Model of the last satisfiable call, indexed by variable id (index 0 unused).
    pub fn model(&self) -> &[bool] {
        &self.model
    }

    pub fn model_value(&self, v: Var) -> bool {
        self.model[v.index()]
    }

    pub fn proof(&self) -> Option<&ProofLog> {
        self.proof.as_ref()
    }

    pub fn take_proof(&mut self) -> Option<ProofLog> {
        self.proof.take()
    }

    // ----- internals -----

    fn value(&self, l: Lit) -> u8 {
        lit_value(&self.assigns, l)
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn alloc(&mut self, lits: Vec<Lit>, learnt: bool, proof_id: u32) -> u32 {
        self.clauses.push(ClauseData {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
            proof_id,
        });
        (self.clauses.len() - 1) as u32
    }

    fn attach(&mut self, cref: u32) {
        let c = &self.clauses[cref as usize];
        let (a, b) = (c.lits[0], c.lits[1]);
        self.watches[a.code()].push(Watch { cref, blocker: b });
        self.watches[b.code()].push(Watch { cref, blocker: a });
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var().index();
        self.assigns[v] = l.is_positive() as u8;
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            self.phase[v] = l.is_positive();
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            if !self.heap.contains(v) {
                self.heap.insert(v, &self.activity);
            }
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level);
        self.qhead = lim;
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = &mut self.clauses[w.cref as usize];
                if c.lits[0] == false_lit {
                    c.lits.swap(0, 1);
                }
                let first = c.lits[0];
                let nw = Watch {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && lit_value(&self.assigns, first) == 1 {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.lits.len() {
                    if lit_value(&self.assigns, c.lits[k]) != 0 {
                        c.lits.swap(1, k);
                        let q = c.lits[1];
                        self.watches[q.code()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if lit_value(&self.assigns, first) == 0 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    let v = first.var().index();
                    self.assigns[v] = first.is_positive() as u8;
                    self.level[v] = self.trail_lim.len() as u32;
                    self.reason[v] = w.cref;
                    self.trail.push(first);
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
        }
        conflict
    }

    fn search(
        &mut self,
        budget: u64,
        assumptions: &[Lit],
        limits: &Limits,
        start_conflicts: u64,
    ) -> Result<Option<bool>, OracleError> {
        let mut conflicts_here = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts_here += 1;
                if self.decision_level() == 0 {
                    self.derive_empty(confl);
                    return Ok(Some(false));
                }
                let (learnt, bt, chain, level0) = self.analyze(confl);
                self.cancel_until(bt);
                let proof_id = self.log_learnt(confl, chain, level0, &learnt);
                let cref = self.alloc(learnt.clone(), true, proof_id);
                if learnt.len() > 1 {
                    self.attach(cref);
                    self.learnts.push(cref);
                    self.bump_clause(cref);
                }
                self.enqueue(learnt[0], cref);
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;

                let used = self.stats.conflicts - start_conflicts;
                if limits.conflicts.is_some_and(|c| used >= c) {
                    return Err(OracleError::ResourceLimit(format!(
                        "conflict budget of {used} exhausted"
                    )));
                }
                if used % 64 == 0 && limits.deadline.is_some_and(|d| Instant::now() >= d) {
                    return Err(OracleError::ResourceLimit("time limit reached".into()));
                }
            } else {
                if conflicts_here >= budget {
                    self.cancel_until(0);
                    return Ok(None);
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                    self.max_learnts *= 1.1;
                }
                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let p = assumptions[self.decision_level()];
                    match self.value(p) {
                        1 => self.trail_lim.push(self.trail.len()),
                        0 => return Ok(Some(false)),
                        _ => {
                            next = Some(p);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(p) => p,
                    None => {
                        let mut pick = None;
                        while let Some(v) = self.heap.pop(&self.activity) {
                            if self.assigns[v] == UNDEF {
                                pick = Some(Var::new(v as u32).lit(self.phase[v]));
                                break;
                            }
                        }
                        match pick {
                            Some(p) => p,
                            None => return Ok(Some(true)),
                        }
                    }
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, NO_REASON);
            }
        }
    }

    /// First-UIP analysis. Returns the learned clause (asserting literal
    /// first, highest remaining level second), the backtrack level, the
    /// resolution chain and the level-0 variables that still need to be
    /// resolved away.
    #[allow(clippy::type_complexity)]
    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, usize, Vec<(u32, Var)>, Vec<Var>) {
        let logging = self.proof.is_some();
        let current = self.decision_level() as u32;
        let mut learnt: Vec<Lit> = vec![Lit::new(Var::new(1), true)];
        let mut chain = Vec::new();
        let mut level0 = Vec::new();
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let mut cref = confl;
        loop {
            if self.clauses[cref as usize].learnt {
                self.bump_clause(cref);
            }
            let len = self.clauses[cref as usize].lits.len();
            for k in 0..len {
                let q = self.clauses[cref as usize].lits[k];
                let v = q.var().index();
                if Some(q.var()) == p.map(|p| p.var()) || self.seen[v] {
                    continue;
                }
                if self.level[v] == 0 {
                    if logging {
                        self.seen[v] = true;
                        level0.push(q.var());
                    }
                    continue;
                }
                self.seen[v] = true;
                self.bump_var(v);
                if self.level[v] >= current {
                    path += 1;
                } else {
                    learnt.push(q);
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = lit.var().index();
            p = Some(lit);
            self.seen[v] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            cref = self.reason[v];
            chain.push((self.clauses[cref as usize].proof_id, lit.var()));
        }
        learnt[0] = !p.unwrap();
        for l in &learnt {
            self.seen[l.var().index()] = false;
        }
        for v in &level0 {
            self.seen[v.index()] = false;
        }
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            bt = self.level[learnt[1].var().index()] as usize;
        }
        (learnt, bt, chain, level0)
    }

    fn log_learnt(&mut self, confl: u32, mut chain: Vec<(u32, Var)>, level0: Vec<Var>, learnt: &[Lit]) -> u32 {
        if self.proof.is_none() {
            return NO_PROOF;
        }
        for v in level0 {
            let id = self.unit_proof_of(v);
            chain.push((id, v));
        }
        let start = self.clauses[confl as usize].proof_id;
        let mut lits = learnt.to_vec();
        lits.sort_unstable();
        self.proof.as_mut().unwrap().push(LogStep::Chain {
            start,
            steps: chain,
            lits,
        })
    }

    /// Proof id of the unit clause asserting the level-0 value of `v`.
    fn unit_proof_of(&mut self, v: Var) -> u32 {
        let level0_end = self.trail_lim.first().copied().unwrap_or(self.trail.len());
        while self.unit_proof[v.index()] == NO_PROOF {
            assert!(self.units_done < level0_end, "variable is not fixed at level 0");
            let l = self.trail[self.units_done];
            self.units_done += 1;
            let u = l.var().index();
            let cref = self.reason[u] as usize;
            let c = &self.clauses[cref];
            if c.lits.len() == 1 {
                self.unit_proof[u] = c.proof_id;
                continue;
            }
            let steps: Vec<(u32, Var)> = c
                .lits
                .iter()
                .filter(|q| q.var() != l.var())
                .map(|q| (self.unit_proof[q.var().index()], q.var()))
                .collect();
            debug_assert!(steps.iter().all(|s| s.0 != NO_PROOF));
            let start = c.proof_id;
            self.unit_proof[u] = self.proof.as_mut().unwrap().push(LogStep::Chain {
                start,
                steps,
                lits: vec![l],
            });
        }
        self.unit_proof[v.index()]
    }

    /// Records a refutation from a clause falsified at level 0.
    fn derive_empty(&mut self, confl: u32) {
        self.ok = false;
        if self.proof.is_none() {
            return;
        }
        let lits = self.clauses[confl as usize].lits.clone();
        let steps: Vec<(u32, Var)> = lits
            .iter()
            .map(|l| (self.unit_proof_of(l.var()), l.var()))
            .collect();
        let start = self.clauses[confl as usize].proof_id;
        let p = self.proof.as_mut().unwrap();
        let id = p.push(LogStep::Chain {
            start,
            steps,
            lits: Vec::new(),
        });
        p.empty = Some(id);
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        if self.heap.contains(v) {
            self.heap.increased(v, &self.activity);
        }
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn locked(&self, cref: u32) -> bool {
        let c = &self.clauses[cref as usize];
        let v = c.lits[0].var().index();
        self.reason[v] == cref && self.value(c.lits[0]) == 1
    }

    fn reduce_db(&mut self) {
        let mut ls = std::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            (ca.lits.len() > 2)
                .cmp(&(cb.lits.len() > 2))
                .reverse()
                .then(ca.activity.total_cmp(&cb.activity))
        });
        let half = ls.len() / 2;
        let mut keep = Vec::with_capacity(ls.len());
        for (i, &cref) in ls.iter().enumerate() {
            let c = &self.clauses[cref as usize];
            if i < half && c.lits.len() > 2 && !self.locked(cref) {
                let c = &mut self.clauses[cref as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                keep.push(cref);
            }
        }
        self.learnts = keep;
        let clauses = &self.clauses;
        for ws in self.watches.iter_mut() {
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }
}

fn lit_value(assigns: &[u8], l: Lit) -> u8 {
    let a = assigns[l.var().index()];
    if a == UNDEF {
        UNDEF
    } else {
        (a == l.is_positive() as u8) as u8
    }
}

fn luby(y: f64, mut x: u32) -> f64 {
    let (mut size, mut seq) = (1u32, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq as i32)
}

/// Binary max-heap of variables keyed by activity.
#[derive(Clone, Debug, Default)]
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const NOT_IN_HEAP: usize = usize::MAX;

impl VarHeap {
    fn contains(&self, v: usize) -> bool {
        self.pos.get(v).is_some_and(|&p| p != NOT_IN_HEAP)
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.pos.len() <= v {
            self.pos.resize(v + 1, NOT_IN_HEAP);
        }
        self.pos[v] = self.heap.len();
        self.heap.push(v);
        self.up(self.heap.len() - 1, act);
    }

    fn increased(&mut self, v: usize, act: &[f64]) {
        self.up(self.pos[v], act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.down(0, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if act[pv] >= act[v] {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && act[self.heap[r]] > act[self.heap[l]] {
                r
            } else {
                l
            };
            if act[self.heap[c]] <= act[v] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i]] = i;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }
}
