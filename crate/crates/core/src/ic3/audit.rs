//! Independent re-check of the frame conditions with fresh solvers:
//! `Init => F_1`, `F_k => F_{k+1}`, `F_k & Tr => F_{k+1}'` and `F_k => !bad` below the top frame.

use super::{Cube, Engine, LatchLit};
use crate::encode::encode_frame;
use crate::sat::{self, SolveResult, Solver, SolverOptions};

impl Engine<'_> {
    /// Solver for `F_k & Tr & C` built from scratch.
    fn audit_solver(&self, k: usize) -> Solver {
        let mut s = Solver::new(SolverOptions::default());
        encode_frame(self.c, &mut s, 0);
        if k == 0 {
            for (i, v) in self.init.iter().enumerate() {
                if let Some(v) = *v {
                    s.add_clause(&[self.cur(LatchLit::new(i, v))]);
                }
            }
        } else {
            for cube in self.frames[k..].iter().flatten() {
                s.add_clause(&self.clause(cube));
            }
        }
        s
    }

    /// Adds "some cube of `cubes` holds" with literals mapped by `lit`. Returns
    /// false when there are no cubes, i.e. the disjunction is empty.
    fn assert_some_cube(s: &mut Solver, cubes: &[&Cube], lit: impl Fn(LatchLit) -> sat::Lit) -> bool {
        if cubes.is_empty() {
            return false;
        }
        let mut any = Vec::with_capacity(cubes.len());
        for cube in cubes {
            let a = s.new_var().lit(false);
            for &l in cube.lits() {
                s.add_clause(&[!a, lit(l)]);
            }
            any.push(a);
        }
        s.add_clause(&any);
        true
    }

    /// Number of violated frame conditions.
    pub(super) fn audit_frames(&self) -> usize {
        let n = self.frames.len() - 1;
        let mut violations = 0;
        for k in 0..n {
            let upper: Vec<&Cube> = self.frames[k + 1..].iter().flatten().collect();
            // F_k => F_{k+1}
            let mut s = self.audit_solver(k);
            if Self::assert_some_cube(&mut s, &upper, |l| self.cur(l)) && s.solve(&[]).is_sat() {
                violations += 1;
            }
            // F_k & Tr => F_{k+1}'
            let mut s = self.audit_solver(k);
            if Self::assert_some_cube(&mut s, &upper, |l| self.nxt(l)) && s.solve(&[]).is_sat() {
                violations += 1;
            }
            // F_k => P
            let mut s = self.audit_solver(k);
            if let SolveResult::Sat(_) = s.solve(&[self.bad]) {
                violations += 1;
            }
        }
        violations
    }
}
