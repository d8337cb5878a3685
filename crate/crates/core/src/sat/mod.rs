//! Incremental CDCL SAT solver with assumption-based solving.
//!
//! Two-watched-literal propagation, VSIDS decisions with phase saving, first-UIP
//! learning with local minimization, Luby restarts and activity-based learnt
//! clause reduction. Unsatisfiable answers under assumptions carry a core: a
//! subset of the assumptions that is already unsatisfiable with the clauses.

mod heap;

use std::fmt::{self, Write as _};
use std::ops::Not;

use heap::VarHeap;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn lit(self, negated: bool) -> Lit {
        Lit::new(self, negated)
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

/// `2 * var + negated`, the same packing as AIGER literals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, negated: bool) -> Lit {
        Lit(var.0 << 1 | negated as u32)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.is_negated() { "-" } else { "" }, self.var().0)
    }
}

/// A satisfying assignment, indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn value(&self, lit: Lit) -> bool {
        self.0[lit.var().idx()] ^ lit.is_negated()
    }

    pub fn var_value(&self, var: Var) -> bool {
        self.0[var.idx()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Model),
    /// Subset of the assumptions that conflicts with the clause database.
    Unsat(Vec<Lit>),
    /// Conflict budget exhausted.
    Unknown,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveResult::Unsat(_))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverOptions {
    /// Perturbs the initial variable order; zero keeps the natural order.
    pub seed: u64,
    /// Re-validates every model and every core.
    pub check: bool,
    /// Conflicts allowed per `solve` call.
    pub conflict_budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub solves: u64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub check_failures: u64,
}

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

#[derive(Debug)]
struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    removed: bool,
    activity: f64,
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Debug)]
pub struct Solver {
    opts: SolverOptions,
    stats: SolverStats,
    ok: bool,
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    phase: Vec<bool>,
    seen: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    max_learnts: f64,
    rng: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(SolverOptions::default())
    }
}

impl Solver {
    pub fn new(opts: SolverOptions) -> Solver {
        Solver {
            opts,
            stats: SolverStats::default(),
            ok: true,
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            phase: Vec::new(),
            seen: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            max_learnts: 0.0,
            rng: opts.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1,
        }
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// False once the clause database is unsatisfiable without assumptions.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.assigns.len() as u32);
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(None);
        self.phase.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        let jitter = if self.opts.seed == 0 {
            0.0
        } else {
            self.rng ^= self.rng << 13;
            self.rng ^= self.rng >> 7;
            self.rng ^= self.rng << 17;
            (self.rng % 1000) as f64 * 1e-6
        };
        self.activity.push(jitter);
        self.heap.insert(v.0, &self.activity);
        v
    }

    /// Ensures variables `0..n` exist.
    pub fn reserve_vars(&mut self, n: usize) {
        while self.num_vars() < n {
            self.new_var();
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[l.var().idx()];
        if l.is_negated() {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    /// Adds a permanent clause. An empty (or falsified) clause makes the solver
    /// unsatisfiable for good; the return value reports whether it still is `ok`.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let mut c: Vec<Lit> = lits.to_vec();
        if let Some(max) = c.iter().map(|l| l.var().idx()).max() {
            self.reserve_vars(max + 1);
        }
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) || c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        match c.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.enqueue(c[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                let cref = self.clauses.len() as u32;
                self.clauses.push(Clause { lits: c, learnt: false, removed: false, activity: 0.0 });
                self.attach(cref);
            }
        }
        self.ok
    }

    fn attach(&mut self, cref: u32) {
        let c = &self.clauses[cref as usize].lits;
        let (a, b) = (c[0], c[1]);
        self.watches[(!a).idx()].push(Watcher { cref, blocker: b });
        self.watches[(!b).idx()].push(Watcher { cref, blocker: a });
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = l.var().idx();
        self.assigns[v] = if l.is_negated() { FALSE } else { TRUE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.idx()]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let clause = &mut self.clauses[w.cref as usize];
                if clause.removed {
                    continue;
                }
                if clause.lits[0] == false_lit {
                    clause.lits.swap(0, 1);
                }
                let first = clause.lits[0];
                let watcher = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = watcher;
                    j += 1;
                    continue;
                }
                for k in 2..clause.lits.len() {
                    if lit_value(&self.assigns, clause.lits[k]) != FALSE {
                        clause.lits.swap(1, k);
                        let new_watch = !clause.lits[1];
                        self.watches[new_watch.idx()].push(watcher);
                        continue 'watchers;
                    }
                }
                ws[j] = watcher;
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    let v = first.var().idx();
                    self.assigns[v] = if first.is_negated() { FALSE } else { TRUE };
                    self.level[v] = self.trail_lim.len() as u32;
                    self.reason[v] = Some(w.cref);
                    self.trail.push(first);
                }
            }
            ws.truncate(j);
            self.watches[p.idx()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level];
        for idx in (start..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = l.var().idx();
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.phase[v] = !l.is_negated();
            self.heap.insert(v as u32, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level);
        self.qhead = start;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v as u32, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level() as u32;
        loop {
            self.bump_clause(confl);
            let skip = usize::from(p.is_some());
            let n = self.clauses[confl as usize].lits.len();
            for k in skip..n {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var().idx();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().idx()] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[lit.var().idx()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var().idx()].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();

        // Local minimization: drop literals implied by other learnt literals.
        let marked: Vec<Lit> = learnt[1..].to_vec();
        let mut kept = vec![learnt[0]];
        for &l in &marked {
            let redundant = match self.reason[l.var().idx()] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..]
                    .iter()
                    .all(|q| self.seen[q.var().idx()] || self.level[q.var().idx()] == 0),
            };
            if !redundant {
                kept.push(l);
            }
        }
        for l in marked {
            self.seen[l.var().idx()] = false;
        }
        let mut learnt = kept;
        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[learnt[k].var().idx()] > self.level[learnt[best].var().idx()] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            self.level[learnt[1].var().idx()] as usize
        };
        (learnt, bt)
    }

    /// Core of assumptions responsible for `failed` being false.
    fn analyze_final(&mut self, failed: Lit) -> Vec<Lit> {
        let mut core = vec![failed];
        let v0 = failed.var().idx();
        if self.level[v0] == 0 {
            return core;
        }
        self.seen[v0] = true;
        let start = self.trail_lim[0];
        for idx in (start..self.trail.len()).rev() {
            let x = self.trail[idx];
            let v = x.var().idx();
            if !self.seen[v] {
                continue;
            }
            match self.reason[v] {
                None => core.push(x),
                Some(r) => {
                    for k in 1..self.clauses[r as usize].lits.len() {
                        let q = self.clauses[r as usize].lits[k];
                        if self.level[q.var().idx()] > 0 {
                            self.seen[q.var().idx()] = true;
                        }
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[v0] = false;
        core.sort_unstable();
        core.dedup();
        core
    }

    fn locked(&self, cref: u32) -> bool {
        let l = self.clauses[cref as usize].lits[0];
        self.reason[l.var().idx()] == Some(cref) && self.value(l) == TRUE
    }

    fn reduce_db(&mut self) {
        let mut learnts = std::mem::take(&mut self.learnts);
        learnts.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            (ca.lits.len() > 2)
                .cmp(&(cb.lits.len() > 2))
                .reverse()
                .then(ca.activity.total_cmp(&cb.activity))
        });
        let half = learnts.len() / 2;
        let mut kept = Vec::with_capacity(learnts.len());
        for (i, &cref) in learnts.iter().enumerate() {
            let c = &self.clauses[cref as usize];
            if i < half && c.lits.len() > 2 && !self.locked(cref) {
                let c = &mut self.clauses[cref as usize];
                c.removed = true;
                c.lits = Vec::new();
            } else {
                kept.push(cref);
            }
        }
        self.learnts = kept;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop_max(&self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Var(v).lit(!self.phase[v as usize]));
            }
        }
        None
    }

    fn search(&mut self, assumptions: &[Lit], conflict_limit: u64, budget: &mut Option<u64>) -> Option<SolveResult> {
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts += 1;
                if let Some(b) = budget {
                    if *b == 0 {
                        return Some(SolveResult::Unknown);
                    }
                    *b -= 1;
                }
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Some(SolveResult::Unsat(Vec::new()));
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let cref = self.clauses.len() as u32;
                    let first = learnt[0];
                    self.clauses.push(Clause { lits: learnt, learnt: true, removed: false, activity: 0.0 });
                    self.attach(cref);
                    self.learnts.push(cref);
                    self.bump_clause(cref);
                    self.enqueue(first, Some(cref));
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
            } else {
                if conflicts >= conflict_limit {
                    self.cancel_until(0);
                    return None;
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                }
                let mut next = None;
                while self.decision_level() < assumptions.len() {
                    let a = assumptions[self.decision_level()];
                    match self.value(a) {
                        TRUE => self.trail_lim.push(self.trail.len()),
                        FALSE => {
                            let core = self.analyze_final(a);
                            return Some(SolveResult::Unsat(core));
                        }
                        _ => {
                            next = Some(a);
                            break;
                        }
                    }
                }
                let next = match next {
                    Some(a) => a,
                    None => {
                        self.stats.decisions += 1;
                        match self.pick_branch() {
                            Some(l) => l,
                            None => {
                                let model = Model(self.assigns.iter().map(|&a| a == TRUE).collect());
                                return Some(SolveResult::Sat(model));
                            }
                        }
                    }
                };
                self.trail_lim.push(self.trail.len());
                self.enqueue(next, None);
            }
        }
    }

    /// Solves under `assumptions`; the clause database is left unchanged apart
    /// from learnt clauses.
    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveResult {
        let result = self.solve_inner(assumptions);
        if self.opts.check {
            let ok = match &result {
                SolveResult::Sat(m) => self.model_satisfies(m, assumptions),
                SolveResult::Unsat(core) => {
                    core.iter().all(|l| assumptions.contains(l))
                        && (!self.ok || matches!(self.solve_inner(core), SolveResult::Unsat(_)))
                }
                SolveResult::Unknown => true,
            };
            if !ok {
                self.stats.check_failures += 1;
            }
        }
        result
    }

    fn solve_inner(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        if !self.ok {
            return SolveResult::Unsat(Vec::new());
        }
        if let Some(max) = assumptions.iter().map(|l| l.var().idx()).max() {
            self.reserve_vars(max + 1);
        }
        self.max_learnts = (self.clauses.len() as f64 / 3.0).max(1000.0);
        let mut budget = self.opts.conflict_budget;
        let mut restart = 0u32;
        let result = loop {
            let limit = (luby(2.0, restart) * 100.0) as u64;
            restart += 1;
            if let Some(r) = self.search(assumptions, limit, &mut budget) {
                break r;
            }
            self.max_learnts *= 1.05;
        };
        self.cancel_until(0);
        result
    }

    fn model_satisfies(&self, m: &Model, assumptions: &[Lit]) -> bool {
        let clauses_ok = self
            .clauses
            .iter()
            .filter(|c| !c.learnt && !c.removed)
            .all(|c| c.lits.iter().any(|&l| m.value(l)));
        let units_ok = self.trail.iter().all(|&l| m.value(l));
        clauses_ok && units_ok && assumptions.iter().all(|&l| m.value(l))
    }

    /// DIMACS rendering of the problem clauses with `assumptions` as unit clauses.
    pub fn to_dimacs(&self, assumptions: &[Lit]) -> String {
        let lit = |l: Lit| -> i64 {
            let v = l.var().0 as i64 + 1;
            if l.is_negated() {
                -v
            } else {
                v
            }
        };
        let problem: Vec<&Clause> = self.clauses.iter().filter(|c| !c.learnt && !c.removed).collect();
        let level0: Vec<Lit> =
            self.trail.iter().copied().filter(|l| self.level[l.var().idx()] == 0).collect();
        let mut out = format!(
            "p cnf {} {}\n",
            self.num_vars(),
            problem.len() + level0.len() + assumptions.len() + usize::from(!self.ok)
        );
        if !self.ok {
            out.push_str("0\n");
        }
        for c in problem {
            for &l in &c.lits {
                write!(out, "{} ", lit(l)).unwrap();
            }
            out.push_str("0\n");
        }
        for &l in level0.iter().chain(assumptions) {
            writeln!(out, "{} 0", lit(l)).unwrap();
        }
        out
    }
}

fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let a = assigns[l.var().idx()];
    if l.is_negated() {
        -a
    } else {
        a
    }
}

/// Finite subsequences of the Luby sequence, scaled by `y`.
fn luby(y: f64, mut x: u32) -> f64 {
    let mut size = 1u32;
    let mut seq = 0i32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    y.powi(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(s: &mut Solver, xs: &[i32]) -> Vec<Lit> {
        xs.iter()
            .map(|&x| {
                let v = Var(x.unsigned_abs());
                s.reserve_vars(v.idx() + 1);
                v.lit(x < 0)
            })
            .collect()
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<f64> = (0..15).map(|i| luby(2.0, i)).collect();
        assert_eq!(seq, vec![1., 1., 2., 1., 1., 2., 4., 1., 1., 2., 1., 1., 2., 4., 8.]);
    }

    #[test]
    fn contradiction() {
        let mut s = Solver::default();
        let x = lits(&mut s, &[1]);
        s.add_clause(&x);
        s.add_clause(&[!x[0]]);
        assert_eq!(s.solve(&[]), SolveResult::Unsat(vec![]));
        assert!(!s.is_ok());
    }

    #[test]
    fn unit_propagation_under_assumption() {
        let mut s = Solver::default();
        let c = lits(&mut s, &[1, 2]);
        s.add_clause(&c);
        match s.solve(&[!c[0]]) {
            SolveResult::Sat(m) => assert!(m.value(c[1])),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn empty_database() {
        let mut s = Solver::default();
        let x = lits(&mut s, &[1]);
        match s.solve(&x) {
            SolveResult::Sat(m) => assert!(m.value(x[0])),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn core_is_forced() {
        let mut s = Solver::new(SolverOptions { check: true, ..Default::default() });
        let xy = lits(&mut s, &[1, 2]);
        s.add_clause(&[!xy[0]]);
        assert_eq!(s.solve(&xy), SolveResult::Unsat(vec![xy[0]]));
        assert_eq!(s.stats().check_failures, 0);
    }

    #[test]
    fn empty_clause_is_permanent() {
        let mut s = Solver::default();
        assert!(!s.add_clause(&[]));
        assert_eq!(s.solve(&[]), SolveResult::Unsat(vec![]));
    }

    #[test]
    fn complementary_assumptions() {
        let mut s = Solver::default();
        let x = lits(&mut s, &[1, -1]);
        match s.solve(&x) {
            SolveResult::Unsat(core) => assert_eq!(core, vec![x[0], x[1]]),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 5 pigeons, 4 holes.
        let mut s = Solver::new(SolverOptions { check: true, ..Default::default() });
        let var = |p: u32, h: u32| Var(p * 4 + h);
        s.reserve_vars(20);
        for p in 0..5 {
            let c: Vec<Lit> = (0..4).map(|h| var(p, h).lit(false)).collect();
            s.add_clause(&c);
        }
        for h in 0..4 {
            for p in 0..5 {
                for q in p + 1..5 {
                    s.add_clause(&[var(p, h).lit(true), var(q, h).lit(true)]);
                }
            }
        }
        assert!(s.solve(&[]).is_unsat());
        assert_eq!(s.stats().check_failures, 0);
    }

    #[test]
    fn dimacs_dump() {
        let mut s = Solver::default();
        let c = lits(&mut s, &[0, -1]);
        s.add_clause(&c);
        assert_eq!(s.to_dimacs(&[c[1]]), "p cnf 2 2\n1 -2 0\n-2 0\n");
    }
}
