//! Parametric single-copy designs with a non-interference specification.

use std::fmt;
use std::str::FromStr;

use super::{add_equivalence_predicates, self_compose, NiSpec, SelfCompError};
use crate::circuit::{AigBuilder, Circuit, SymmetryMap, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// A selector register choosing whether a result register loads a secret
    /// or a public word; the result is observable.
    MuxReg,
    /// Multiplier-operand shifter with early termination: latency reveals the
    /// position of the secret operand's top set bit.
    ShiftAddMult,
    /// Subtractive GCD whose second operand may be secret; completion is observable.
    GcdLockstep,
    /// Down-counter loaded from a public or a secret word; reaching zero is observable.
    CounterLeak,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::MuxReg, Family::ShiftAddMult, Family::GcdLockstep, Family::CounterLeak];

    pub fn name(self) -> &'static str {
        match self {
            Family::MuxReg => "mux_reg",
            Family::ShiftAddMult => "shift_add_mult",
            Family::GcdLockstep => "gcd_lockstep",
            Family::CounterLeak => "counter_leak",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Family, BenchError> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| BenchError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Safe,
    Unsafe,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("unknown benchmark family `{0}` (expected mux_reg, shift_add_mult, gcd_lockstep or counter_leak)")]
    UnknownFamily(String),
    #[error("benchmark size must be at least 1")]
    ZeroSize,
    #[error(transparent)]
    Compose(#[from] SelfCompError),
}

#[derive(Clone, Debug)]
pub struct Benchmark {
    pub circuit: Circuit,
    pub spec: NiSpec,
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct ComposedBenchmark {
    pub circuit: Circuit,
    pub map: SymmetryMap,
    pub expected: Expected,
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// One copy of `family` at data width `size`. `constrained` adds the input
/// assumption that makes the design non-interfering.
pub fn generate_benchmark(family: Family, size: usize, constrained: bool) -> Result<Benchmark, BenchError> {
    if size == 0 {
        return Err(BenchError::ZeroSize);
    }
    let n = size;
    let mut b = AigBuilder::new();
    let spec = match family {
        Family::MuxReg => {
            let sel = b.input("sel");
            let public = b.input_word("in", n);
            let secret = b.input_word("secret", n);
            let s = b.latch("s", Some(false));
            let r = b.latch_word("r", n, Some(false));
            b.set_next(s, sel);
            let rn = b.mux_word(s, &secret, &public);
            b.set_next_word(&r, &rn);
            b.output_word("out", &r);
            b.output("assume", !sel);
            NiSpec {
                secret_inputs: names(&["secret"]),
                public_inputs: names(&["sel", "in"]),
                sink_outputs: names(&["out"]),
                ..Default::default()
            }
        }
        Family::ShiftAddMult => {
            let start = b.input("start");
            let operand = b.input_word("b", n);
            let busy = b.latch("busy", Some(false));
            let valid = b.latch("valid", Some(false));
            let mplier = b.latch_word("mplier", n, Some(false));
            let load = b.and(start, !busy);
            let zero = b.is_zero(&mplier);
            let done = b.and(busy, zero);
            b.set_next(valid, done);
            let running = b.and(busy, !zero);
            let busy_next = b.or(load, running);
            b.set_next(busy, busy_next);
            let shifted = b.mux_word(busy, &mplier.shr1(), &mplier);
            let mplier_next = b.mux_word(load, &operand, &shifted);
            b.set_next_word(&mplier, &mplier_next);
            b.output("valid", valid);
            let top_set = b.or(!start, operand.0[n - 1]);
            b.output("assume", top_set);
            NiSpec {
                secret_inputs: names(&["b"]),
                public_inputs: names(&["start"]),
                sink_outputs: names(&["valid"]),
                ..Default::default()
            }
        }
        Family::GcdLockstep => {
            let sel = b.input("sel");
            let x = b.input_word("x", n);
            let y = b.input_word("y", n);
            let k = b.input_word("k", n);
            let busy = b.latch("busy", Some(false));
            let a = b.latch_word("a", n, Some(false));
            let bb = b.latch_word("b", n, Some(false));
            let eq = b.eq_word(&a, &bb);
            let (a_minus_b, a_less) = b.sub_word(&a, &bb);
            let (b_minus_a, _) = b.sub_word(&bb, &a);
            let load = !busy;
            let a_step = b.mux_word(a_less, &a, &a_minus_b);
            let a_run = b.mux_word(eq, &a, &a_step);
            let a_next = b.mux_word(load, &x, &a_run);
            let b_step = b.mux_word(a_less, &b_minus_a, &bb);
            let b_run = b.mux_word(eq, &bb, &b_step);
            let b_load = b.mux_word(sel, &k, &y);
            let b_next = b.mux_word(load, &b_load, &b_run);
            b.set_next_word(&a, &a_next);
            b.set_next_word(&bb, &b_next);
            let busy_next = b.or(load, !eq);
            b.set_next(busy, busy_next);
            let valid = b.and(busy, eq);
            b.output("valid", valid);
            b.output("assume", !sel);
            NiSpec {
                secret_inputs: names(&["k"]),
                public_inputs: names(&["sel", "x", "y"]),
                sink_outputs: names(&["valid"]),
                ..Default::default()
            }
        }
        Family::CounterLeak => {
            let load = b.input("load");
            let sel = b.input("sel");
            let p = b.input_word("p", n);
            let k = b.input_word("k", n);
            let cnt = b.latch_word("cnt", n, Some(false));
            let zero = b.is_zero(&cnt);
            let (dec, _) = b.sub_word(&cnt, &Word::constant(1, n));
            let run = b.mux_word(zero, &cnt, &dec);
            let loaded = b.mux_word(sel, &k, &p);
            let next = b.mux_word(load, &loaded, &run);
            b.set_next_word(&cnt, &next);
            b.output("zero", zero);
            let secret_load = b.and(load, sel);
            b.output("assume", !secret_load);
            NiSpec {
                secret_inputs: names(&["k"]),
                public_inputs: names(&["load", "sel", "p"]),
                sink_outputs: names(&["zero"]),
                ..Default::default()
            }
        }
    };
    let spec = NiSpec { assumptions: if constrained { names(&["assume"]) } else { Vec::new() }, ..spec };
    let circuit = b.finish().expect("generated designs are well formed");
    let expected = if constrained { Expected::Safe } else { Expected::Unsafe };
    Ok(Benchmark { circuit, spec, expected })
}

/// The self-composition of a benchmark, optionally with inequivalence predicates.
pub fn compose_benchmark(family: Family, size: usize, constrained: bool, predicates: bool) -> Result<ComposedBenchmark, BenchError> {
    let bench = generate_benchmark(family, size, constrained)?;
    let (mut circuit, mut map) = self_compose(&bench.circuit, &bench.spec)?;
    if predicates {
        (circuit, map) = add_equivalence_predicates(&circuit, &map)?;
    }
    Ok(ComposedBenchmark { circuit, map, expected: bench.expected })
}
