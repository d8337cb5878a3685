//! IC3 / property directed reachability with optional mirrored lemmas and
//! predicate replacement.
//!
//! Frames are delta-encoded: `frames[k]` holds the cubes blocked exactly up to
//! frame `k`, so `F_k` is the conjunction of the negations of `frames[k..]`.
//! One solver per frame holds `F_k & Tr & C`; solver 0 holds `Init & Tr & C`.

mod audit;
mod cube;
mod stats;

pub use cube::{Cube, LatchLit};
pub use stats::Stats;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::circuit::{simulate, Circuit, SymmetryMap};
use crate::encode::{encode_frame, sat_lit};
use crate::replacement::{has_inequality_pattern, predicate_replace, PredMode};
use crate::sat::{self, Model, SolveResult, Solver, SolverOptions, SolverStats};
use crate::symmetry::symmetric_cube;

/// Activation literals retired in one solver before it is rebuilt.
const REBUILD_AFTER: usize = 4000;

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    /// Block the mirror of every learned cube.
    pub symmetry: bool,
    pub pred: PredMode,
    /// Re-test every mirrored cube before blocking it.
    pub audit_symmetric: bool,
    /// Check the four frame conditions after every blocking round and propagation.
    pub audit_frames: bool,
    /// Validate every SAT model and core.
    pub sat_checks: bool,
    pub seed: u64,
    pub timeout: Option<Duration>,
    pub max_frames: Option<usize>,
    pub max_obligations: Option<u64>,
}

/// A counterexample: values for the latches with undefined reset (in latch
/// order) and one input vector per cycle. The last cycle asserts bad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub init: Vec<bool>,
    pub inputs: Vec<Vec<bool>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Time,
    Frames,
    Obligations,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `invariant` lists the blocked cubes; their negations, together with the
    /// constraints, form an inductive invariant excluding bad. It is the frame
    /// `F_frame`, found equal to its successor.
    Safe { invariant: Vec<Cube>, frame: usize },
    Unsafe { trace: Trace },
    /// No bad state is reachable within `bound` steps.
    Unknown { bound: usize, limit: Limit },
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub stats: Stats,
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("symmetry map covers {map} latches but the circuit has {circuit}")]
    MapSize { map: usize, circuit: usize },
    #[error("predicate replacement needs inequivalence predicates bound in the pairing")]
    NoPredicates,
    #[error("internal error: {0}")]
    Internal(String),
}

enum Reach {
    Unreachable(Cube),
    Reachable { pred: Cube, inputs: Vec<bool> },
}

/// Path from an initial state: the full initial state and the inputs applied so far.
struct Cex {
    init_state: Vec<bool>,
    inputs: Vec<Vec<bool>>,
}

struct FrameSolver {
    solver: Solver,
    retired: usize,
}

type Step<T> = Result<T, Limit>;

pub(crate) struct Engine<'a> {
    c: &'a Circuit,
    m: &'a SymmetryMap,
    opts: EngineOptions,
    init: Vec<Option<bool>>,
    state: Vec<sat::Lit>,
    next: Vec<sat::Lit>,
    inputs: Vec<sat::Lit>,
    bad: sat::Lit,
    frames: Vec<Vec<Cube>>,
    solvers: Vec<FrameSolver>,
    stats: Stats,
    retired_sat: SolverStats,
    deadline: Option<Instant>,
}

/// Runs IC3 on `c` under the options.
pub fn check(c: &Circuit, m: &SymmetryMap, opts: &EngineOptions) -> Result<CheckResult, EngineError> {
    if m.num_latches() != c.num_latches() {
        return Err(EngineError::MapSize { map: m.num_latches(), circuit: c.num_latches() });
    }
    if opts.pred != PredMode::None && !m.has_predicates() {
        return Err(EngineError::NoPredicates);
    }
    let start = Instant::now();
    let mut e = Engine::new(c, m, opts.clone(), start);
    let verdict = e.run();
    let mut stats = e.finish_stats();
    stats.wall_time = start.elapsed();
    let verdict = match verdict {
        Ok(v) => v,
        // Every frame below the top one is known to exclude bad.
        Err(limit) => Verdict::Unknown { bound: e.frames.len().saturating_sub(2), limit },
    };
    if let Verdict::Unsafe { trace } = &verdict {
        let sim = simulate(c, &trace.init, &trace.inputs).map_err(|err| EngineError::Internal(err.to_string()))?;
        if !sim.ends_bad() {
            return Err(EngineError::Internal("counterexample does not replay".into()));
        }
    }
    Ok(CheckResult { verdict, stats })
}

impl<'a> Engine<'a> {
    fn new(c: &'a Circuit, m: &'a SymmetryMap, opts: EngineOptions, start: Instant) -> Engine<'a> {
        let deadline = opts.timeout.map(|t| start + t);
        let mut e = Engine {
            c,
            m,
            init: c.latches.iter().map(|l| l.init).collect(),
            state: c.latches.iter().map(|l| sat_lit(l.state)).collect(),
            next: c.latches.iter().map(|l| sat_lit(l.next)).collect(),
            inputs: c.inputs.iter().map(|&l| sat_lit(l)).collect(),
            bad: sat_lit(c.bad),
            opts,
            frames: vec![Vec::new()],
            solvers: Vec::new(),
            stats: Stats::default(),
            retired_sat: SolverStats::default(),
            deadline,
        };
        let s0 = e.build_solver(0);
        e.solvers.push(s0);
        e
    }

    fn finish_stats(&mut self) -> Stats {
        let mut st = self.stats.clone();
        let mut sat = self.retired_sat;
        for fs in &self.solvers {
            add_sat_stats(&mut sat, fs.solver.stats());
        }
        st.sat_queries = sat.solves;
        st.sat_conflicts = sat.conflicts;
        st.sat_check_failures = sat.check_failures;
        st.frame_sizes = self.frames.iter().skip(1).map(Vec::len).collect();
        st
    }

    fn solver_options(&self) -> SolverOptions {
        SolverOptions { seed: self.opts.seed, check: self.opts.sat_checks, conflict_budget: None }
    }

    fn build_solver(&self, k: usize) -> FrameSolver {
        let mut solver = Solver::new(self.solver_options());
        encode_frame(self.c, &mut solver, 0);
        if k == 0 {
            for (i, v) in self.init.iter().enumerate() {
                if let Some(v) = *v {
                    solver.add_clause(&[self.cur(LatchLit::new(i, v))]);
                }
            }
        } else {
            for cube in self.frames[k..].iter().flatten() {
                solver.add_clause(&self.clause(cube));
            }
        }
        FrameSolver { solver, retired: 0 }
    }

    fn cur(&self, l: LatchLit) -> sat::Lit {
        let s = self.state[l.latch()];
        if l.value() {
            s
        } else {
            !s
        }
    }

    fn nxt(&self, l: LatchLit) -> sat::Lit {
        let s = self.next[l.latch()];
        if l.value() {
            s
        } else {
            !s
        }
    }

    fn clause(&self, cube: &Cube) -> Vec<sat::Lit> {
        cube.lits().iter().map(|&l| !self.cur(l)).collect()
    }

    fn check_time(&self) -> Step<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Limit::Time),
            _ => Ok(()),
        }
    }

    fn latch_values(&self, m: &Model) -> Vec<bool> {
        self.state.iter().map(|&l| m.value(l)).collect()
    }

    fn input_values(&self, m: &Model) -> Vec<bool> {
        self.inputs.iter().map(|&l| m.value(l)).collect()
    }

    /// Queries `F_j & [!s] & Tr & s'` on solver `j`.
    fn relative(&mut self, j: usize, s: &Cube, negate: bool) -> Reach {
        if self.solvers[j].retired >= REBUILD_AFTER {
            let fresh = self.build_solver(j);
            let old = std::mem::replace(&mut self.solvers[j], fresh);
            add_sat_stats(&mut self.retired_sat, old.solver.stats());
        }
        let negation = self.clause(s);
        let mut assumptions: Vec<sat::Lit> = Vec::with_capacity(s.len() + 1);
        let fs = &mut self.solvers[j];
        let act = negate.then(|| {
            let a = fs.solver.new_var().lit(false);
            let mut cl = vec![!a];
            cl.extend(negation);
            fs.solver.add_clause(&cl);
            a
        });
        assumptions.extend(act);
        assumptions.extend(s.lits().iter().map(|&l| {
            let n = self.next[l.latch()];
            if l.value() {
                n
            } else {
                !n
            }
        }));
        let fs = &mut self.solvers[j];
        let result = fs.solver.solve(&assumptions);
        if let Some(a) = act {
            fs.solver.add_clause(&[!a]);
            fs.retired += 1;
        }
        match result {
            SolveResult::Sat(m) => Reach::Reachable { pred: Cube::full(&self.latch_values(&m)), inputs: self.input_values(&m) },
            SolveResult::Unsat(core) => {
                let core: HashSet<sat::Lit> = core.into_iter().collect();
                let lits = s.lits().iter().copied().filter(|&l| core.contains(&self.nxt(l))).collect();
                Reach::Unreachable(Cube::new(lits).expect("subset of a cube"))
            }
            SolveResult::Unknown => unreachable!("frame solvers run without a conflict budget"),
        }
    }

    /// The reachability test of `s` at frame `k >= 1`.
    fn reach_test(&mut self, s: &Cube, k: usize) -> Reach {
        self.stats.reachability_tests += 1;
        self.relative(k - 1, s, true)
    }

    /// Adds back one literal of `within` (which avoids Init) if `core` meets Init.
    fn init_guard(&self, core: Cube, within: &Cube) -> Cube {
        if !core.intersects_init(&self.init) {
            return core;
        }
        let sep = within.init_separator(&self.init).expect("cube avoids the initial states");
        let mut lits = core.lits().to_vec();
        lits.push(sep);
        Cube::new(lits).expect("subset of a cube")
    }

    fn generalize(&mut self, s: &Cube, core: Cube, k: usize) -> Step<Cube> {
        let mut c = self.init_guard(core, s);
        for l in c.lits().to_vec() {
            if c.len() == 1 || !c.contains(l) {
                continue;
            }
            let cand = c.without(l);
            if cand.intersects_init(&self.init) {
                continue;
            }
            self.check_time()?;
            if let Reach::Unreachable(core) = self.reach_test(&cand, k) {
                let next = self.init_guard(core, &cand);
                self.stats.generalize_drops += (c.len() - next.len()) as u64;
                c = next;
            }
        }
        Ok(c)
    }

    /// Cubes to block for the generalized cube `c` of obligation `s` at frame `k`.
    fn blocked_cube_set(&mut self, c: Cube, s: &Cube, k: usize) -> Step<Vec<Cube>> {
        let m = self.m;
        let mut set = vec![c.clone()];
        if self.opts.pred != PredMode::None {
            let rep = predicate_replace(&c, m, self.opts.pred, |x| {
                self.check_time()?;
                Ok(!x.intersects_init(&self.init) && matches!(self.reach_test(x, k), Reach::Unreachable(_)))
            })?;
            self.stats.replacement_tests += rep.tests as u64;
            if rep.nodes.iter().any(|n| !n.is_empty()) {
                self.stats.predicate_replacements += 1;
            }
            set = rep.cubes;
            if !set.iter().any(|x| x.subsumes(s)) {
                // The replaced cubes miss `s` because it has a predicate low
                // while its registers differ. Nothing in the netlist ties the
                // predicate latch to the current register values, so learn
                // that tie for each such group first.
                let mut low: Vec<usize> =
                    rep.groups.iter().filter(|g| s.value_of(g.neq) == Some(false)).map(|g| g.group).collect();
                low.dedup();
                for gid in low {
                    let links = self.link_lemmas(gid, k)?;
                    set.extend(links);
                }
            }
            if !set.iter().any(|x| x.subsumes(s)) {
                // Block the part of `c` where those predicates are low as well.
                let mut lits = c.lits().to_vec();
                for g in &rep.groups {
                    if s.value_of(g.neq) == Some(false) {
                        lits.push(LatchLit::new(g.neq, false));
                    }
                }
                let piece = Cube::new(lits).expect("literals taken from s");
                let cover = match self.reach_test(&piece, k) {
                    Reach::Unreachable(_) => piece,
                    Reach::Reachable { .. } => c.clone(),
                };
                self.stats.guard_cubes += 1;
                set.push(cover);
            }
        }
        if self.opts.symmetry {
            let mut mirrors: Vec<Cube> = Vec::new();
            for x in &set {
                let y = symmetric_cube(x, m);
                if set.contains(&y) || mirrors.contains(&y) {
                    continue;
                }
                if y.intersects_init(&self.init) {
                    self.stats.symmetric_init_skips += 1;
                    continue;
                }
                if self.opts.audit_symmetric {
                    self.stats.symmetric_audits += 1;
                    if !matches!(self.relative(k - 1, &y, true), Reach::Unreachable(_)) {
                        self.stats.symmetric_audit_failures += 1;
                        continue;
                    }
                }
                mirrors.push(y);
            }
            self.stats.symmetric_cubes_added += mirrors.len() as u64;
            set.extend(mirrors);
        }
        Ok(set)
    }

    /// Cubes `x1[i] & !x2[i] & !neq` (both orientations, every bit) of group
    /// `gid` that are unreachable at frame `k` and not yet blocked there.
    fn link_lemmas(&mut self, gid: usize, k: usize) -> Step<Vec<Cube>> {
        let m = self.m;
        let neq = m.neq_latch(gid).expect("only predicated groups are replaced");
        let g = &m.group_pairs()[gid];
        let mut out = Vec::new();
        for (&l, &r) in g.left.iter().zip(&g.right) {
            for a in [true, false] {
                let cube = Cube::new(vec![LatchLit::new(l, a), LatchLit::new(r, !a), LatchLit::new(neq, false)])
                    .expect("distinct latches");
                if cube.intersects_init(&self.init) || self.frames[k..].iter().flatten().any(|d| d.subsumes(&cube)) {
                    continue;
                }
                self.check_time()?;
                if let Reach::Unreachable(_) = self.reach_test(&cube, k) {
                    self.stats.link_lemmas += 1;
                    out.push(cube);
                }
            }
        }
        Ok(out)
    }

    fn add_blocked(&mut self, cube: Cube, k: usize) {
        if self.frames[k..].iter().flatten().any(|d| d.subsumes(&cube)) {
            return;
        }
        for j in 1..=k {
            self.frames[j].retain(|d| !cube.subsumes(d));
        }
        let clause = self.clause(&cube);
        for j in 1..=k {
            self.solvers[j].solver.add_clause(&clause);
        }
        self.frames[k].push(cube);
        self.stats.clauses_learned += 1;
    }

    /// Blocks full-state cube `s` at frame `k`, or returns a path from Init to it.
    fn block(&mut self, s: &Cube, k: usize) -> Step<Option<Cex>> {
        loop {
            self.stats.block_calls += 1;
            self.check_time()?;
            if k == 0 || s.intersects_init(&self.init) {
                let init_state = (0..self.c.num_latches()).map(|i| s.value_of(i).unwrap_or(false)).collect();
                return Ok(Some(Cex { init_state, inputs: Vec::new() }));
            }
            match self.reach_test(s, k) {
                Reach::Unreachable(core) => {
                    let c = self.generalize(s, core, k)?;
                    if has_inequality_pattern(&c, self.m) {
                        self.stats.inequality_blocks += 1;
                    }
                    for cube in self.blocked_cube_set(c, s, k)? {
                        self.add_blocked(cube, k);
                    }
                    return Ok(None);
                }
                Reach::Reachable { pred, inputs } => {
                    self.stats.obligations += 1;
                    if self.opts.max_obligations.is_some_and(|b| self.stats.obligations > b) {
                        return Err(Limit::Obligations);
                    }
                    if let Some(mut cex) = self.block(&pred, k - 1)? {
                        cex.inputs.push(inputs);
                        return Ok(Some(cex));
                    }
                }
            }
        }
    }

    /// A state of `F_k` with inputs asserting bad.
    fn bad_state(&mut self, k: usize) -> Option<(Cube, Vec<bool>)> {
        self.stats.bad_queries += 1;
        let bad = self.bad;
        match self.solvers[k].solver.solve(&[bad]) {
            SolveResult::Sat(m) => Some((Cube::full(&self.latch_values(&m)), self.input_values(&m))),
            _ => None,
        }
    }

    /// Pushes cubes forward; returns the frame whose delta emptied, if any.
    fn propagate(&mut self) -> Step<Option<usize>> {
        let n = self.frames.len() - 1;
        for j in 1..n {
            for cube in self.frames[j].clone() {
                self.check_time()?;
                self.stats.propagation_tests += 1;
                if let Reach::Unreachable(_) = self.relative(j, &cube, false) {
                    self.frames[j].retain(|d| *d != cube);
                    if !self.frames[j + 1..].iter().flatten().any(|d| d.subsumes(&cube)) {
                        let clause = self.clause(&cube);
                        self.solvers[j + 1].solver.add_clause(&clause);
                        self.frames[j + 1].push(cube);
                    }
                }
            }
            if self.frames[j].is_empty() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    fn trace(&self, cex: Cex) -> Trace {
        let init = self.init.iter().zip(&cex.init_state).filter(|(i, _)| i.is_none()).map(|(_, &v)| v).collect();
        Trace { init, inputs: cex.inputs }
    }

    fn audit(&mut self) {
        if self.opts.audit_frames {
            self.stats.frame_audits += 1;
            self.stats.frame_audit_violations += self.audit_frames() as u64;
        }
    }

    fn run(&mut self) -> Step<Verdict> {
        if let Some((s, inputs)) = self.bad_state(0) {
            let cex = Cex { init_state: s.lits().iter().map(|l| l.value()).collect(), inputs: vec![inputs] };
            return Ok(Verdict::Unsafe { trace: self.trace(cex) });
        }
        self.frames.push(Vec::new());
        let s1 = self.build_solver(1);
        self.solvers.push(s1);
        loop {
            let n = self.frames.len() - 1;
            while let Some((s, inputs)) = self.bad_state(n) {
                self.check_time()?;
                let blocked = self.block(&s, n)?;
                self.audit();
                if let Some(mut cex) = blocked {
                    cex.inputs.push(inputs);
                    return Ok(Verdict::Unsafe { trace: self.trace(cex) });
                }
            }
            if self.opts.max_frames.is_some_and(|max| n >= max) {
                return Ok(Verdict::Unknown { bound: n, limit: Limit::Frames });
            }
            self.frames.push(Vec::new());
            let fresh = self.build_solver(n + 1);
            self.solvers.push(fresh);
            let fixpoint = self.propagate()?;
            self.audit();
            if let Some(j) = fixpoint {
                let invariant = self.frames[j + 1..].iter().flatten().cloned().collect();
                return Ok(Verdict::Safe { invariant, frame: j });
            }
        }
    }
}

fn add_sat_stats(into: &mut SolverStats, s: SolverStats) {
    into.solves += s.solves;
    into.conflicts += s.conflicts;
    into.decisions += s.decisions;
    into.propagations += s.propagations;
    into.check_failures += s.check_failures;
}
