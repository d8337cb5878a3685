use super::{AndGate, Circuit, CircuitError, Latch, Lit};

/// A little-endian bundle of literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word(pub Vec<Lit>);

impl Word {
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn constant(value: u64, width: usize) -> Word {
        Word((0..width).map(|i| if value >> i & 1 == 1 { Lit::TRUE } else { Lit::FALSE }).collect())
    }

    /// Logical shift towards the most significant bit, filling with zero.
    pub fn shl1(&self) -> Word {
        let mut bits = vec![Lit::FALSE];
        bits.extend_from_slice(&self.0[..self.0.len().saturating_sub(1)]);
        bits.truncate(self.0.len());
        Word(bits)
    }

    /// Logical shift towards the least significant bit, filling with zero.
    pub fn shr1(&self) -> Word {
        let mut bits: Vec<Lit> = self.0.iter().skip(1).copied().collect();
        bits.push(Lit::FALSE);
        bits.truncate(self.0.len());
        Word(bits)
    }
}

/// Incremental construction of a [`Circuit`] with constant folding.
#[derive(Debug)]
pub struct AigBuilder {
    circuit: Circuit,
    next_set: Vec<bool>,
}

impl Default for AigBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl AigBuilder {
    pub fn new() -> Self {
        AigBuilder { circuit: Circuit::empty(), next_set: Vec::new() }
    }

    fn fresh(&mut self) -> Lit {
        self.circuit.max_var += 1;
        Lit::new(self.circuit.max_var, false)
    }

    pub fn input(&mut self, name: &str) -> Lit {
        let lit = self.fresh();
        self.circuit.symbols.inputs.insert(self.circuit.inputs.len(), name.to_string());
        self.circuit.inputs.push(lit);
        lit
    }

    pub fn input_word(&mut self, name: &str, width: usize) -> Word {
        Word((0..width).map(|i| self.input(&format!("{name}[{i}]"))).collect())
    }

    pub fn latch(&mut self, name: &str, init: Option<bool>) -> Lit {
        let lit = self.fresh();
        self.circuit.symbols.latches.insert(self.circuit.latches.len(), name.to_string());
        self.circuit.latches.push(Latch { state: lit, next: Lit::FALSE, init });
        self.next_set.push(false);
        lit
    }

    pub fn latch_word(&mut self, name: &str, width: usize, init: Option<bool>) -> Word {
        Word((0..width).map(|i| self.latch(&format!("{name}[{i}]"), init)).collect())
    }

    pub fn set_next(&mut self, state: Lit, next: Lit) {
        let idx = self
            .circuit
            .latches
            .iter()
            .position(|l| l.state == state)
            .expect("set_next on a literal that is not a latch");
        self.circuit.latches[idx].next = next;
        self.next_set[idx] = true;
    }

    pub fn set_next_word(&mut self, state: &Word, next: &Word) {
        assert_eq!(state.width(), next.width());
        for (&s, &n) in state.0.iter().zip(&next.0) {
            self.set_next(s, n);
        }
    }

    pub fn and(&mut self, a: Lit, b: Lit) -> Lit {
        if a == Lit::FALSE || b == Lit::FALSE || a == !b {
            return Lit::FALSE;
        }
        if a == Lit::TRUE || a == b {
            return b;
        }
        if b == Lit::TRUE {
            return a;
        }
        let out = self.fresh();
        self.circuit.ands.push(AndGate { out, lhs: a, rhs: b });
        out
    }

    pub fn or(&mut self, a: Lit, b: Lit) -> Lit {
        !self.and(!a, !b)
    }

    pub fn xor(&mut self, a: Lit, b: Lit) -> Lit {
        let l = self.and(a, !b);
        let r = self.and(!a, b);
        self.or(l, r)
    }

    pub fn mux(&mut self, sel: Lit, then: Lit, otherwise: Lit) -> Lit {
        let t = self.and(sel, then);
        let e = self.and(!sel, otherwise);
        self.or(t, e)
    }

    pub fn and_all(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        lits.into_iter().fold(Lit::TRUE, |acc, l| self.and(acc, l))
    }

    pub fn or_all(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        lits.into_iter().fold(Lit::FALSE, |acc, l| self.or(acc, l))
    }

    pub fn mux_word(&mut self, sel: Lit, then: &Word, otherwise: &Word) -> Word {
        Word(then.0.iter().zip(&otherwise.0).map(|(&t, &e)| self.mux(sel, t, e)).collect())
    }

    pub fn and_word(&mut self, a: &Word, bit: Lit) -> Word {
        Word(a.0.iter().map(|&x| self.and(x, bit)).collect())
    }

    pub fn is_zero(&mut self, a: &Word) -> Lit {
        let any = self.or_all(a.0.iter().copied());
        !any
    }

    pub fn eq_word(&mut self, a: &Word, b: &Word) -> Lit {
        let diffs: Vec<Lit> = a.0.iter().zip(&b.0).map(|(&x, &y)| self.xor(x, y)).collect();
        let any = self.or_all(diffs);
        !any
    }

    /// Sum modulo `2^width`.
    pub fn add_word(&mut self, a: &Word, b: &Word) -> Word {
        let mut carry = Lit::FALSE;
        let mut out = Vec::with_capacity(a.width());
        for (&x, &y) in a.0.iter().zip(&b.0) {
            let xy = self.xor(x, y);
            out.push(self.xor(xy, carry));
            let g = self.and(x, y);
            let p = self.and(xy, carry);
            carry = self.or(g, p);
        }
        Word(out)
    }

    /// Difference modulo `2^width` together with the unsigned borrow (`a < b`).
    pub fn sub_word(&mut self, a: &Word, b: &Word) -> (Word, Lit) {
        let mut borrow = Lit::FALSE;
        let mut out = Vec::with_capacity(a.width());
        for (&x, &y) in a.0.iter().zip(&b.0) {
            let xy = self.xor(x, y);
            out.push(self.xor(xy, borrow));
            // borrow' = (!x & y) | (!(x ^ y) & borrow)
            let g = self.and(!x, y);
            let p = self.and(!xy, borrow);
            borrow = self.or(g, p);
        }
        (Word(out), borrow)
    }

    pub fn output(&mut self, name: &str, lit: Lit) {
        self.circuit.symbols.outputs.insert(self.circuit.outputs.len(), name.to_string());
        self.circuit.outputs.push(lit);
    }

    pub fn output_word(&mut self, name: &str, word: &Word) {
        for (i, &l) in word.0.iter().enumerate() {
            self.output(&format!("{name}[{i}]"), l);
        }
    }

    pub fn constraint(&mut self, lit: Lit) {
        self.circuit.constraints.push(lit);
    }

    pub fn bad(&mut self, lit: Lit) {
        self.circuit.bad = lit;
    }

    pub fn finish(self) -> Result<Circuit, CircuitError> {
        if let Some(idx) = self.next_set.iter().position(|&s| !s) {
            return Err(CircuitError::UndefinedVariable(self.circuit.latches[idx].state.var()));
        }
        self.circuit.validate()?;
        Ok(self.circuit)
    }
}
