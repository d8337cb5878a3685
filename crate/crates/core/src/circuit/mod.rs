//! Bit-level and-inverter graph transition systems.
//!
//! A [`Circuit`] is the usual AIGER data model restricted to a single bad-state
//! literal: inputs, latches with reset values, two-input AND gates, named
//! outputs, invariant constraints and a symbol table.

mod aiger;
mod builder;
mod pairing;
mod sim;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Not;

pub use aiger::{parse_aiger, write_aiger, ParseError};
pub use builder::{AigBuilder, Word};
pub use pairing::{parse_pairing, write_pairing, GroupPair, PairingError, SymmetryMap};
pub use sim::{simulate, SimError, SimTrace};

/// An AIGER literal: `2 * var + negated`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub const FALSE: Lit = Lit(0);
    pub const TRUE: Lit = Lit(1);

    pub const fn new(var: u32, negated: bool) -> Lit {
        Lit(var << 1 | negated as u32)
    }

    pub const fn from_code(code: u32) -> Lit {
        Lit(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn var(self) -> u32 {
        self.0 >> 1
    }

    pub const fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub const fn positive(self) -> Lit {
        Lit(self.0 & !1)
    }

    pub const fn is_const(self) -> bool {
        self.0 < 2
    }

    /// `self` if `value` is true, its negation otherwise.
    pub fn with_polarity(self, value: bool) -> Lit {
        if value {
            self
        } else {
            !self
        }
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
        match *self {
            Lit::FALSE => write!(f, "false"),
            Lit::TRUE => write!(f, "true"),
            l if l.is_negated() => write!(f, "!v{}", l.var()),
            l => write!(f, "v{}", l.var()),
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Latch {
    pub state: Lit,
    pub next: Lit,
    /// `None` is a free (undefined) reset value.
    pub init: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AndGate {
    pub out: Lit,
    pub lhs: Lit,
    pub rhs: Lit,
}

/// Names attached to inputs, latches and outputs, keyed by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbols {
    pub inputs: BTreeMap<usize, String>,
    pub latches: BTreeMap<usize, String>,
    pub outputs: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub max_var: u32,
    pub inputs: Vec<Lit>,
    pub latches: Vec<Latch>,
    /// Topologically ordered: every operand is defined before use.
    pub ands: Vec<AndGate>,
    pub outputs: Vec<Lit>,
    /// Asserted exactly when the safety property is violated.
    pub bad: Lit,
    pub constraints: Vec<Lit>,
    pub symbols: Symbols,
}

/// What defines a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Const,
    Input(usize),
    Latch(usize),
    And(usize),
    Undefined,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("literal {0} exceeds maximum variable index {1}")]
    LiteralOutOfRange(u32, u32),
    #[error("variable {0} is defined more than once")]
    DuplicateDefinition(u32),
    #[error("variable {0} is used but never defined")]
    UndefinedVariable(u32),
    #[error("AND gate {0} is not in topological order")]
    Unordered(u32),
    #[error("{0} must be a positive non-constant literal")]
    BadDefinition(u32),
}

impl Circuit {
    pub fn empty() -> Circuit {
        Circuit {
            max_var: 0,
            inputs: Vec::new(),
            latches: Vec::new(),
            ands: Vec::new(),
            outputs: Vec::new(),
            bad: Lit::FALSE,
            constraints: Vec::new(),
            symbols: Symbols::default(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_latches(&self) -> usize {
        self.latches.len()
    }

    pub fn var_kinds(&self) -> Vec<VarKind> {
        let mut kinds = vec![VarKind::Undefined; self.max_var as usize + 1];
        kinds[0] = VarKind::Const;
        for (i, l) in self.inputs.iter().enumerate() {
            kinds[l.var() as usize] = VarKind::Input(i);
        }
        for (i, l) in self.latches.iter().enumerate() {
            kinds[l.state.var() as usize] = VarKind::Latch(i);
        }
        for (i, g) in self.ands.iter().enumerate() {
            kinds[g.out.var() as usize] = VarKind::And(i);
        }
        kinds
    }

    /// Maps a variable to the latch it holds, if any.
    pub fn latch_index_by_var(&self) -> Vec<Option<usize>> {
        let mut map = vec![None; self.max_var as usize + 1];
        for (i, l) in self.latches.iter().enumerate() {
            map[l.state.var() as usize] = Some(i);
        }
        map
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let mut defined = vec![false; self.max_var as usize + 1];
        defined[0] = true;
        let mut define = |lit: Lit| -> Result<(), CircuitError> {
            if lit.var() > self.max_var {
                return Err(CircuitError::LiteralOutOfRange(lit.code(), self.max_var));
            }
            if lit.is_negated() || lit.is_const() {
                return Err(CircuitError::BadDefinition(lit.code()));
            }
            let slot = &mut defined[lit.var() as usize];
            if *slot {
                return Err(CircuitError::DuplicateDefinition(lit.var()));
            }
            *slot = true;
            Ok(())
        };
        for &i in &self.inputs {
            define(i)?;
        }
        for l in &self.latches {
            define(l.state)?;
        }
        for g in &self.ands {
            define(g.out)?;
        }
        let check = |lit: Lit| -> Result<(), CircuitError> {
            if lit.var() > self.max_var {
                Err(CircuitError::LiteralOutOfRange(lit.code(), self.max_var))
            } else if !defined[lit.var() as usize] {
                Err(CircuitError::UndefinedVariable(lit.var()))
            } else {
                Ok(())
            }
        };
        for l in &self.latches {
            check(l.next)?;
        }
        for &o in self.outputs.iter().chain(&self.constraints).chain([&self.bad]) {
            check(o)?;
        }
        let mut ready = vec![false; self.max_var as usize + 1];
        ready[0] = true;
        for &i in &self.inputs {
            ready[i.var() as usize] = true;
        }
        for l in &self.latches {
            ready[l.state.var() as usize] = true;
        }
        for g in &self.ands {
            check(g.lhs)?;
            check(g.rhs)?;
            if !ready[g.lhs.var() as usize] || !ready[g.rhs.var() as usize] {
                return Err(CircuitError::Unordered(g.out.var()));
            }
            ready[g.out.var() as usize] = true;
        }
        Ok(())
    }

    /// Evaluates every variable given input and latch values.
    pub fn eval(&self, latch_values: &[bool], input_values: &[bool]) -> Vec<bool> {
        let mut values = vec![false; self.max_var as usize + 1];
        for (l, &v) in self.inputs.iter().zip(input_values) {
            values[l.var() as usize] = v;
        }
        for (l, &v) in self.latches.iter().zip(latch_values) {
            values[l.state.var() as usize] = v;
        }
        for g in &self.ands {
            values[g.out.var() as usize] = lit_value(&values, g.lhs) && lit_value(&values, g.rhs);
        }
        values
    }

    pub fn latch_by_name(&self, name: &str) -> Option<usize> {
        self.symbols.latches.iter().find(|(_, n)| n.as_str() == name).map(|(&i, _)| i)
    }

    pub fn input_by_name(&self, name: &str) -> Option<usize> {
        self.symbols.inputs.iter().find(|(_, n)| n.as_str() == name).map(|(&i, _)| i)
    }

    pub fn output_by_name(&self, name: &str) -> Option<usize> {
        self.symbols.outputs.iter().find(|(_, n)| n.as_str() == name).map(|(&i, _)| i)
    }
}

/// Value of `lit` under a per-variable assignment.
pub fn lit_value(values: &[bool], lit: Lit) -> bool {
    values[lit.var() as usize] ^ lit.is_negated()
}

/// Splits `name[idx]` into its base name and bit index.
pub fn split_bit_name(name: &str) -> Option<(&str, usize)> {
    let open = name.rfind('[')?;
    let inner = name[open + 1..].strip_suffix(']')?;
    Some((&name[..open], inner.parse().ok()?))
}
