//! Tseitin encoding of a circuit's combinational layer.

use crate::circuit::{Circuit, Lit as AigLit};
use crate::sat::{Lit, Solver, Var};

/// Solver literal for `l` in the time frame whose variables are shifted by `offset`.
/// The constant keeps variable 0 in every frame.
pub fn shifted(l: AigLit, offset: u32) -> Lit {
    let v = if l.var() == 0 { 0 } else { l.var() + offset };
    Var(v).lit(l.is_negated())
}

pub fn sat_lit(l: AigLit) -> Lit {
    shifted(l, 0)
}

/// Adds the AND gates (three clauses each) of one time frame. Variable 0 is pinned false.
pub fn encode_gates(c: &Circuit, s: &mut Solver, offset: u32) {
    s.reserve_vars((c.max_var + offset) as usize + 1);
    s.add_clause(&[Var(0).lit(true)]);
    for g in &c.ands {
        let (o, a, b) = (shifted(g.out, offset), shifted(g.lhs, offset), shifted(g.rhs, offset));
        s.add_clause(&[!o, a]);
        s.add_clause(&[!o, b]);
        s.add_clause(&[o, !a, !b]);
    }
}

/// The gates and the constraints of one time frame.
pub fn encode_frame(c: &Circuit, s: &mut Solver, offset: u32) {
    encode_gates(c, s, offset);
    for &k in &c.constraints {
        s.add_clause(&[shifted(k, offset)]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::AigBuilder;
    use crate::sat::SolveResult;

    #[test]
    fn and_gate_semantics() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let y = b.input("y");
        let z = b.and(x, !y);
        b.output("z", z);
        let c = b.finish().unwrap();
        for (vx, vy) in [(false, false), (false, true), (true, false), (true, true)] {
            let mut s = Solver::default();
            encode_frame(&c, &mut s, 0);
            let a = [sat_lit(x.with_polarity(vx)), sat_lit(y.with_polarity(vy))];
            match s.solve(&a) {
                SolveResult::Sat(m) => assert_eq!(m.value(sat_lit(z)), vx && !vy),
                r => panic!("{r:?}"),
            }
        }
    }
}
