use std::collections::{BTreeSet, HashMap};

use crate::circuit::{Circuit, Lit as AigLit, VarKind};

pub const DEFAULT_LATCH_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExplicitError {
    #[error("{latches} latches exceed the explicit-state limit of {limit}")]
    TooManyLatches { latches: usize, limit: usize },
}

/// Reachable states of a circuit; bit `i` of a state code is latch `i`.
#[derive(Clone, Debug)]
pub struct ReachableStates {
    num_latches: usize,
    depth: HashMap<u32, u32>,
    bad: BTreeSet<u32>,
    first_bad: Option<usize>,
}

impl ReachableStates {
    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn num_latches(&self) -> usize {
        self.num_latches
    }

    pub fn contains(&self, state: &[bool]) -> bool {
        self.depth.contains_key(&encode(state))
    }

    /// Fewest transitions from an initial state.
    pub fn depth_of(&self, state: &[bool]) -> Option<usize> {
        self.depth.get(&encode(state)).map(|&d| d as usize)
    }

    /// Sorted state codes.
    pub fn codes(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.depth.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn states(&self) -> Vec<Vec<bool>> {
        self.codes().into_iter().map(|s| decode(s, self.num_latches)).collect()
    }

    /// States in which some constraint-respecting input asserts bad.
    pub fn bad_states(&self) -> Vec<Vec<bool>> {
        self.bad.iter().map(|&s| decode(s, self.num_latches)).collect()
    }

    /// Depth of the shallowest bad state.
    pub fn first_bad(&self) -> Option<usize> {
        self.first_bad
    }
}

fn encode(state: &[bool]) -> u32 {
    state.iter().enumerate().fold(0, |acc, (i, &b)| acc | (b as u32) << i)
}

fn decode(code: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

/// Exact breadth-first reachability. Latches with undefined reset start at both
/// values; inputs are enumerated every step.
pub fn explicit_reach(c: &Circuit, latch_limit: usize) -> Result<ReachableStates, ExplicitError> {
    explore(c, latch_limit, false)
}

/// Depth of the shallowest reachable bad state; stops as soon as one is found.
pub fn explicit_bad_depth(c: &Circuit, latch_limit: usize) -> Result<Option<usize>, ExplicitError> {
    Ok(explore(c, latch_limit, true)?.first_bad)
}

fn explore(c: &Circuit, limit: usize, stop_at_bad: bool) -> Result<ReachableStates, ExplicitError> {
    let n = c.num_latches();
    if n > limit || n > 31 {
        return Err(ExplicitError::TooManyLatches { latches: n, limit: limit.min(31) });
    }
    let mut out = ReachableStates { num_latches: n, depth: HashMap::new(), bad: BTreeSet::new(), first_bad: None };
    let free: Vec<usize> = (0..n).filter(|&i| c.latches[i].init.is_none()).collect();
    let fixed = (0..n).fold(0u32, |acc, i| acc | ((c.latches[i].init == Some(true)) as u32) << i);
    let mut frontier = Vec::new();
    for bits in 0u32..1 << free.len() {
        let s = free.iter().enumerate().fold(fixed, |acc, (j, &i)| acc | (bits >> j & 1) << i);
        if out.depth.insert(s, 0).is_none() {
            frontier.push(s);
        }
    }
    let mut ex = Stepper::new(c);
    let mut depth = 0u32;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            let mut bad = false;
            ex.successors(s, &mut |t, b| {
                bad |= b;
                if let std::collections::hash_map::Entry::Vacant(e) = out.depth.entry(t) {
                    e.insert(depth + 1);
                    next.push(t);
                }
            });
            if bad {
                out.bad.insert(s);
                out.first_bad.get_or_insert(depth as usize);
                if stop_at_bad {
                    return Ok(out);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(out)
}

const F: u8 = 0;
const T: u8 = 1;
const X: u8 = 2;

/// Successor enumeration by three-valued simulation: inputs start unknown and
/// are split only while some next-state, constraint or bad value is unknown.
struct Stepper<'a> {
    c: &'a Circuit,
    kinds: Vec<VarKind>,
    vals: Vec<u8>,
    assign: Vec<u8>,
    seen: Vec<bool>,
}

impl<'a> Stepper<'a> {
    fn new(c: &'a Circuit) -> Stepper<'a> {
        let vars = c.max_var as usize + 1;
        Stepper { c, kinds: c.var_kinds(), vals: vec![X; vars], assign: vec![X; c.num_inputs()], seen: vec![false; vars] }
    }

    fn lit(&self, l: AigLit) -> u8 {
        match self.vals[l.var() as usize] {
            X => X,
            v => v ^ l.is_negated() as u8,
        }
    }

    fn eval(&mut self, state: u32) {
        self.vals[0] = F;
        for (i, l) in self.c.inputs.iter().enumerate() {
            self.vals[l.var() as usize] = self.assign[i];
        }
        for (i, l) in self.c.latches.iter().enumerate() {
            self.vals[l.state.var() as usize] = (state >> i & 1) as u8;
        }
        for g in &self.c.ands {
            let (a, b) = (self.lit(g.lhs), self.lit(g.rhs));
            self.vals[g.out.var() as usize] = if a == F || b == F {
                F
            } else if a == T && b == T {
                T
            } else {
                X
            };
        }
    }

    fn targets(&self) -> impl Iterator<Item = AigLit> + '_ {
        self.c.latches.iter().map(|l| l.next).chain(self.c.constraints.iter().copied()).chain([self.c.bad])
    }

    /// Lowest unassigned input feeding an unknown target through unknown gates.
    fn split_input(&mut self) -> Option<usize> {
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut stack: Vec<u32> = self.targets().filter(|&l| self.lit(l) == X).map(|l| l.var()).collect();
        let mut best: Option<usize> = None;
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut self.seen[v as usize], true) {
                continue;
            }
            match self.kinds[v as usize] {
                VarKind::Input(i) => best = Some(best.map_or(i, |b| b.min(i))),
                VarKind::And(g) => {
                    let g = self.c.ands[g];
                    for op in [g.lhs, g.rhs] {
                        if self.vals[op.var() as usize] == X {
                            stack.push(op.var());
                        }
                    }
                }
                _ => {}
            }
        }
        best
    }

    fn successors(&mut self, state: u32, emit: &mut dyn FnMut(u32, bool)) {
        self.assign.iter_mut().for_each(|a| *a = X);
        self.split(state, emit);
    }

    fn split(&mut self, state: u32, emit: &mut dyn FnMut(u32, bool)) {
        self.eval(state);
        if self.c.constraints.iter().any(|&k| self.lit(k) == F) {
            return;
        }
        match self.split_input() {
            None => {
                let next = self.c.latches.iter().enumerate().fold(0u32, |acc, (i, l)| acc | (self.lit(l.next) as u32) << i);
                emit(next, self.lit(self.c.bad) == T);
            }
            Some(i) => {
                for v in [F, T] {
                    self.assign[i] = v;
                    self.split(state, emit);
                }
                self.assign[i] = X;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{simulate, AigBuilder, Word};

    #[test]
    fn toggle() {
        let mut b = AigBuilder::new();
        let q = b.latch("q", Some(false));
        b.set_next(q, !q);
        let c = b.finish().unwrap();
        let r = explicit_reach(&c, DEFAULT_LATCH_LIMIT).unwrap();
        assert_eq!(r.states(), vec![vec![false], vec![true]]);
        assert_eq!(r.first_bad(), None);
    }

    #[test]
    fn limit() {
        let mut b = AigBuilder::new();
        let w = b.latch_word("w", 3, None);
        b.set_next_word(&w, &w.clone());
        let c = b.finish().unwrap();
        assert_eq!(explicit_reach(&c, 2).unwrap_err(), ExplicitError::TooManyLatches { latches: 3, limit: 2 });
        assert_eq!(explicit_reach(&c, 3).unwrap().len(), 8);
    }

    #[test]
    fn loadable_counter() {
        // Loads any value below 4 and counts up, saturating at 7.
        let mut b = AigBuilder::new();
        let ld = b.input("ld");
        let v = b.input_word("v", 3);
        let q = b.latch_word("q", 3, Some(false));
        let one = Word::constant(1, 3);
        let inc = b.add_word(&q, &one);
        let full = b.and_all(q.0.clone());
        let run = b.mux_word(full, &q, &inc);
        let next = b.mux_word(ld, &v, &run);
        b.set_next_word(&q, &next);
        let small = !v.0[2];
        let ok = b.or(!ld, small);
        b.constraint(ok);
        b.bad(full);
        let c = b.finish().unwrap();
        let r = explicit_reach(&c, DEFAULT_LATCH_LIMIT).unwrap();
        assert_eq!(r.len(), 8);
        // 0 -> load 3 -> 4 -> 5 -> 6 -> 7
        assert_eq!(r.first_bad(), Some(5));
        assert_eq!(r.depth_of(&[true, true, false]), Some(1));
        assert_eq!(r.depth_of(&[false, false, true]), Some(2));
        assert_eq!(explicit_bad_depth(&c, DEFAULT_LATCH_LIMIT).unwrap(), Some(5));
    }

    #[test]
    fn agrees_with_simulation_on_all_inputs() {
        let mut b = AigBuilder::new();
        let x = b.input_word("x", 2);
        let q = b.latch_word("q", 2, None);
        let n = b.add_word(&q, &x);
        b.set_next_word(&q, &n);
        let c = b.finish().unwrap();
        let r = explicit_reach(&c, DEFAULT_LATCH_LIMIT).unwrap();
        for init in 0..4u32 {
            for stim in 0..16u32 {
                let i = vec![init & 1 == 1, init & 2 == 2];
                let s = vec![vec![stim & 1 == 1, stim & 2 == 2], vec![stim & 4 == 4, stim & 8 == 8]];
                let t = simulate(&c, &i, &s).unwrap();
                assert!(t.states.iter().all(|st| r.contains(st)));
            }
        }
    }
}
