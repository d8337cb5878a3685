use crate::circuit::Circuit;
use crate::encode::{encode_frame, shifted};
use crate::ic3::Trace;
use crate::sat::{SolveResult, Solver};

/// Shortest counterexample of at most `bound + 1` cycles, found by unrolling.
/// Latches with undefined reset are free at cycle 0.
pub fn bmc(c: &Circuit, bound: usize) -> Option<Trace> {
    let width = c.max_var;
    let mut s = Solver::default();
    for depth in 0..=bound {
        let off = depth as u32 * width;
        encode_frame(c, &mut s, off);
        if depth == 0 {
            for l in &c.latches {
                if let Some(v) = l.init {
                    s.add_clause(&[shifted(l.state.with_polarity(v), 0)]);
                }
            }
        } else {
            let prev = off - width;
            for l in &c.latches {
                let (q, d) = (shifted(l.state, off), shifted(l.next, prev));
                s.add_clause(&[!q, d]);
                s.add_clause(&[q, !d]);
            }
        }
        if let SolveResult::Sat(m) = s.solve(&[shifted(c.bad, off)]) {
            let init = c.latches.iter().filter(|l| l.init.is_none()).map(|l| m.value(shifted(l.state, 0))).collect();
            let inputs = (0..=depth)
                .map(|t| c.inputs.iter().map(|&i| m.value(shifted(i, t as u32 * width))).collect())
                .collect();
            return Some(Trace { init, inputs });
        }
        if !s.is_ok() {
            // Constraints have cut every path; deeper unrollings stay unsatisfiable.
            return None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::AigBuilder;
    use crate::oracle::replay;

    fn counter(bits: usize) -> Circuit {
        let mut b = AigBuilder::new();
        let q = b.latch_word("q", bits, Some(false));
        let one = crate::circuit::Word::constant(1, bits);
        let sum = b.add_word(&q, &one);
        b.set_next_word(&q, &sum);
        let all = b.and_all(q.0.clone());
        b.bad(all);
        b.finish().unwrap()
    }

    #[test]
    fn finds_shortest() {
        let c = counter(3);
        assert!(bmc(&c, 6).is_none());
        let t = bmc(&c, 7).unwrap();
        assert_eq!(t.inputs.len(), 8);
        assert!(replay(&c, &t).unwrap());
    }

    #[test]
    fn constant_false_bad() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let q = b.latch("q", None);
        b.set_next(q, x);
        let c = b.finish().unwrap();
        assert!(bmc(&c, 10).is_none());
    }

    #[test]
    fn free_init_is_used() {
        let mut b = AigBuilder::new();
        let q = b.latch("q", None);
        b.set_next(q, q);
        b.bad(q);
        let c = b.finish().unwrap();
        let t = bmc(&c, 0).unwrap();
        assert_eq!(t.init, vec![true]);
        assert!(replay(&c, &t).unwrap());
    }

    #[test]
    fn constraints_hold_on_every_cycle() {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let q = b.latch("q", Some(false));
        b.set_next(q, x);
        b.constraint(!x);
        b.bad(q);
        let c = b.finish().unwrap();
        assert!(bmc(&c, 5).is_none());
    }
}
