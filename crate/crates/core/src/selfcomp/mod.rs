//! Two-copy product construction for non-interference and its augmentation
//! with register inequivalence predicates.

mod families;

pub use families::{compose_benchmark, generate_benchmark, BenchError, Benchmark, ComposedBenchmark, Expected, Family};

use std::collections::{BTreeMap, BTreeSet};

use crate::circuit::{split_bit_name, AndGate, Circuit, GroupPair, Latch, Lit, PairingError, SymmetryMap};

/// What may differ between the two copies and what must agree.
///
/// Names resolve exactly or, for words, by base name (`k` covers `k[0]`, `k[1]`, ...).
/// Inputs not listed as secret are shared.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NiSpec {
    pub secret_inputs: Vec<String>,
    pub public_inputs: Vec<String>,
    /// Output names (or word base names) compared between copies.
    pub sink_outputs: Vec<String>,
    /// Latches whose initial value is free and independent per copy.
    pub secret_init_latches: Vec<String>,
    /// Outputs asserted in every cycle of both copies.
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelfCompError {
    #[error("the source circuit already has a bad-state output")]
    HasBad,
    #[error("no {kind} named `{name}`")]
    MissingSignal { kind: &'static str, name: String },
    #[error("input `{0}` is listed both as secret and as public")]
    Overlap(String),
    #[error("latch `{0}` has an undefined reset but is not a secret-initialized latch")]
    UndefinedInit(String),
    #[error("the circuit already carries inequivalence predicates")]
    AlreadyAugmented,
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

fn resolve(names: &BTreeMap<usize, String>, count: usize, wanted: &str, kind: &'static str) -> Result<Vec<usize>, SelfCompError> {
    let exact: Vec<usize> = (0..count).filter(|i| names.get(i).map(String::as_str) == Some(wanted)).collect();
    if !exact.is_empty() {
        return Ok(exact);
    }
    let mut bits: Vec<(usize, usize)> = names
        .iter()
        .filter_map(|(&i, n)| split_bit_name(n).filter(|(base, _)| *base == wanted).map(|(_, bit)| (bit, i)))
        .collect();
    if bits.is_empty() {
        return Err(SelfCompError::MissingSignal { kind, name: wanted.to_string() });
    }
    bits.sort_unstable();
    Ok(bits.into_iter().map(|(_, i)| i).collect())
}

fn resolve_all(
    names: &BTreeMap<usize, String>,
    count: usize,
    wanted: &[String],
    kind: &'static str,
) -> Result<Vec<usize>, SelfCompError> {
    let mut out = Vec::new();
    for w in wanted {
        out.extend(resolve(names, count, w, kind)?);
    }
    Ok(out)
}

/// Appends AND gates without constant folding, so gate counts follow the construction exactly.
struct RawAnds<'a> {
    c: &'a mut Circuit,
}

impl RawAnds<'_> {
    fn and(&mut self, a: Lit, b: Lit) -> Lit {
        self.c.max_var += 1;
        let out = Lit::new(self.c.max_var, false);
        self.c.ands.push(AndGate { out, lhs: a, rhs: b });
        out
    }

    fn or(&mut self, a: Lit, b: Lit) -> Lit {
        !self.and(!a, !b)
    }

    fn xor(&mut self, a: Lit, b: Lit) -> Lit {
        let l = self.and(a, !b);
        let r = self.and(!a, b);
        self.or(l, r)
    }

    /// `3w` gates for the XORs plus `w - 1` for the OR chain.
    fn any_difference(&mut self, pairs: &[(Lit, Lit)]) -> Lit {
        let diffs: Vec<Lit> = pairs.iter().map(|&(a, b)| self.xor(a, b)).collect();
        let mut it = diffs.into_iter();
        let first = it.next().unwrap_or(Lit::FALSE);
        it.fold(first, |acc, d| self.or(acc, d))
    }
}

fn name_or(names: &BTreeMap<usize, String>, i: usize, prefix: char) -> String {
    names.get(&i).cloned().unwrap_or_else(|| format!("{prefix}{i}"))
}

/// Builds the self-composition of `c`: public inputs feed both copies, secret
/// inputs and secret-initialized latches are duplicated, and bad asserts that
/// some sink bit differs between the copies.
///
/// Latch `i` of copy 1 becomes latch `i`, its copy-2 twin latch `L + i`. Every
/// latch word named `x[0..w]` yields a register group pair `x`.
pub fn self_compose(c: &Circuit, spec: &NiSpec) -> Result<(Circuit, SymmetryMap), SelfCompError> {
    if c.bad != Lit::FALSE {
        return Err(SelfCompError::HasBad);
    }
    let sy = &c.symbols;
    let secret: BTreeSet<usize> = resolve_all(&sy.inputs, c.num_inputs(), &spec.secret_inputs, "input")?.into_iter().collect();
    for p in resolve_all(&sy.inputs, c.num_inputs(), &spec.public_inputs, "input")? {
        if secret.contains(&p) {
            return Err(SelfCompError::Overlap(name_or(&sy.inputs, p, 'i')));
        }
    }
    let sinks = resolve_all(&sy.outputs, c.outputs.len(), &spec.sink_outputs, "output")?;
    let assumptions = resolve_all(&sy.outputs, c.outputs.len(), &spec.assumptions, "output")?;
    let free_init: BTreeSet<usize> =
        resolve_all(&sy.latches, c.num_latches(), &spec.secret_init_latches, "latch")?.into_iter().collect();
    for (i, l) in c.latches.iter().enumerate() {
        if l.init.is_none() && !free_init.contains(&i) {
            return Err(SelfCompError::UndefinedInit(name_or(&sy.latches, i, 'l')));
        }
    }

    let mut out = Circuit::empty();
    let mut map = [vec![Lit::FALSE; c.max_var as usize + 1], vec![Lit::FALSE; c.max_var as usize + 1]];
    let fresh = |out: &mut Circuit| {
        out.max_var += 1;
        Lit::new(out.max_var, false)
    };
    for (i, &l) in c.inputs.iter().enumerate() {
        if !secret.contains(&i) {
            let v = fresh(&mut out);
            map[0][l.var() as usize] = v;
            map[1][l.var() as usize] = v;
            out.symbols.inputs.insert(out.inputs.len(), name_or(&sy.inputs, i, 'i'));
            out.inputs.push(v);
        }
    }
    for copy in 0..2 {
        for (i, &l) in c.inputs.iter().enumerate() {
            if secret.contains(&i) {
                let v = fresh(&mut out);
                map[copy][l.var() as usize] = v;
                out.symbols.inputs.insert(out.inputs.len(), format!("c{}.{}", copy + 1, name_or(&sy.inputs, i, 'i')));
                out.inputs.push(v);
            }
        }
    }
    for copy in 0..2 {
        for (i, l) in c.latches.iter().enumerate() {
            let v = fresh(&mut out);
            map[copy][l.state.var() as usize] = v;
            let init = if free_init.contains(&i) { None } else { l.init };
            out.symbols.latches.insert(out.latches.len(), format!("c{}.{}", copy + 1, name_or(&sy.latches, i, 'l')));
            out.latches.push(Latch { state: v, next: Lit::FALSE, init });
        }
    }
    let tr = |map: &[Lit], l: Lit| -> Lit { map[l.var() as usize].with_polarity(!l.is_negated()) };
    for copy in 0..2 {
        for g in &c.ands {
            let v = fresh(&mut out);
            map[copy][g.out.var() as usize] = v;
            let gate = AndGate { out: v, lhs: tr(&map[copy], g.lhs), rhs: tr(&map[copy], g.rhs) };
            out.ands.push(gate);
        }
    }
    let num_latches = c.num_latches();
    for copy in 0..2 {
        for (i, l) in c.latches.iter().enumerate() {
            out.latches[copy * num_latches + i].next = tr(&map[copy], l.next);
        }
        for (i, &o) in c.outputs.iter().enumerate() {
            out.symbols.outputs.insert(out.outputs.len(), format!("c{}.{}", copy + 1, name_or(&sy.outputs, i, 'o')));
            out.outputs.push(tr(&map[copy], o));
        }
        for &k in &c.constraints {
            out.constraints.push(tr(&map[copy], k));
        }
        for &a in &assumptions {
            out.constraints.push(tr(&map[copy], c.outputs[a]));
        }
    }
    let pairs: Vec<(Lit, Lit)> =
        sinks.iter().map(|&o| (tr(&map[0], c.outputs[o]), tr(&map[1], c.outputs[o]))).collect();
    out.bad = RawAnds { c: &mut out }.any_difference(&pairs);

    let mut words: BTreeMap<&str, BTreeMap<usize, usize>> = BTreeMap::new();
    for (&i, name) in &sy.latches {
        if let Some((base, bit)) = split_bit_name(name) {
            words.entry(base).or_default().insert(bit, i);
        }
    }
    let groups = words
        .into_iter()
        .filter(|(_, bits)| bits.keys().copied().eq(0..bits.len()))
        .map(|(base, bits)| GroupPair {
            name: base.to_string(),
            left: bits.values().copied().collect(),
            right: bits.values().map(|&i| num_latches + i).collect(),
        })
        .collect();
    let m = SymmetryMap::new(
        2 * num_latches,
        (0..num_latches).map(|i| (i, num_latches + i)).collect(),
        Vec::new(),
        groups,
        BTreeMap::new(),
    )?;
    out.validate().expect("composition of a valid circuit is valid");
    Ok((out, m))
}

/// Adds one latch `neq.<group>` per register group pair, whose next state is
/// true iff the next states of the two registers differ. Its reset is 0 when
/// both registers reset to the same value, 1 when they reset to different
/// values, and undefined when either reset is undefined.
pub fn add_equivalence_predicates(c: &Circuit, m: &SymmetryMap) -> Result<(Circuit, SymmetryMap), SelfCompError> {
    if m.has_predicates() {
        return Err(SelfCompError::AlreadyAugmented);
    }
    let mut out = c.clone();
    let base = c.num_latches();
    let mut bindings = Vec::new();
    for (gid, g) in m.group_pairs().iter().enumerate() {
        out.max_var += 1;
        let state = Lit::new(out.max_var, false);
        let inits: Vec<(Option<bool>, Option<bool>)> =
            g.left.iter().zip(&g.right).map(|(&l, &r)| (c.latches[l].init, c.latches[r].init)).collect();
        let init = if inits.iter().any(|(a, b)| a.is_none() || b.is_none()) {
            None
        } else {
            Some(inits.iter().any(|(a, b)| a != b))
        };
        out.symbols.latches.insert(base + gid, format!("neq.{}", g.name));
        out.latches.push(Latch { state, next: Lit::FALSE, init });
        bindings.push((gid, base + gid));
    }
    for (gid, g) in m.group_pairs().iter().enumerate() {
        let pairs: Vec<(Lit, Lit)> = g.left.iter().zip(&g.right).map(|(&l, &r)| (c.latches[l].next, c.latches[r].next)).collect();
        let next = RawAnds { c: &mut out }.any_difference(&pairs);
        out.latches[base + gid].next = next;
    }
    let m = m.with_predicates(out.num_latches(), &bindings)?;
    out.validate().expect("augmentation of a valid circuit is valid");
    Ok((out, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{simulate, AigBuilder};

    /// One copy: public `p`, secret `k`, register `r[0..2]` loading `p & k` / `p`.
    fn small() -> Circuit {
        let mut b = AigBuilder::new();
        let p = b.input("p");
        let k = b.input("k");
        let r = b.latch_word("r", 2, Some(false));
        let pk = b.and(p, k);
        b.set_next(r.0[0], pk);
        b.set_next(r.0[1], p);
        b.output_word("o", &r);
        b.output("a", !k);
        b.finish().unwrap()
    }

    fn spec() -> NiSpec {
        NiSpec {
            secret_inputs: vec!["k".into()],
            public_inputs: vec!["p".into()],
            sink_outputs: vec!["o".into()],
            ..Default::default()
        }
    }

    #[test]
    fn counts_follow_construction() {
        let c = small();
        let (sc, m) = self_compose(&c, &spec()).unwrap();
        assert_eq!(sc.num_inputs(), 1 + 2);
        assert_eq!(sc.num_latches(), 4);
        // two copies of one gate, plus 2 XORs and one OR
        assert_eq!(sc.ands.len(), 2 + 3 * 2 + 1);
        assert_eq!(m.latch_pairs().len(), 2);
        assert_eq!(m.group_pairs().len(), 1);
        assert_eq!(m.group_pairs()[0].left, vec![0, 1]);
        assert_eq!(m.group_pairs()[0].right, vec![2, 3]);
    }

    #[test]
    fn missing_names_are_reported() {
        let mut s = spec();
        s.sink_outputs = vec!["nothing".into()];
        assert_eq!(
            self_compose(&small(), &s).unwrap_err(),
            SelfCompError::MissingSignal { kind: "output", name: "nothing".into() }
        );
    }

    #[test]
    fn existing_bad_rejected() {
        let mut c = small();
        c.bad = c.outputs[0];
        assert_eq!(self_compose(&c, &spec()).unwrap_err(), SelfCompError::HasBad);
    }

    #[test]
    fn overlap_rejected() {
        let mut s = spec();
        s.public_inputs.push("k".into());
        assert!(matches!(self_compose(&small(), &s), Err(SelfCompError::Overlap(_))));
    }

    #[test]
    fn secrets_drive_the_miter() {
        let (sc, _) = self_compose(&small(), &spec()).unwrap();
        // inputs: p, c1.k, c2.k
        let t = simulate(&sc, &[], &[vec![true, true, false], vec![false, false, false]]).unwrap();
        assert_eq!(t.bad, vec![false, true]);
        let t = simulate(&sc, &[], &[vec![true, true, true], vec![false, false, false]]).unwrap();
        assert_eq!(t.bad, vec![false, false]);
    }

    #[test]
    fn assumptions_become_per_copy_constraints() {
        let mut s = spec();
        s.assumptions = vec!["a".into()];
        let (sc, _) = self_compose(&small(), &s).unwrap();
        assert_eq!(sc.constraints.len(), 2);
    }

    #[test]
    fn predicate_shape_and_init() {
        let (sc, m) = self_compose(&small(), &spec()).unwrap();
        let (aug, am) = add_equivalence_predicates(&sc, &m).unwrap();
        assert_eq!(aug.num_latches(), 5);
        assert_eq!(aug.ands.len(), sc.ands.len() + 4 * 2 - 1);
        assert_eq!(aug.latches[4].init, Some(false));
        assert_eq!(am.neq_latch(0), Some(4));
        assert_eq!(am.partner(4), 4);
        assert_eq!(add_equivalence_predicates(&aug, &am).unwrap_err(), SelfCompError::AlreadyAugmented);
    }

    #[test]
    fn predicate_init_rules() {
        let (mut sc, m) = self_compose(&small(), &spec()).unwrap();
        sc.latches[2].init = Some(true);
        assert_eq!(add_equivalence_predicates(&sc, &m).unwrap().0.latches[4].init, Some(true));
        sc.latches[2].init = None;
        assert_eq!(add_equivalence_predicates(&sc, &m).unwrap().0.latches[4].init, None);
    }

    #[test]
    fn single_bit_group_has_no_or_chain() {
        let mut b = AigBuilder::new();
        let k = b.input("k");
        let r = b.latch_word("r", 1, Some(false));
        b.set_next(r.0[0], k);
        b.output_word("o", &r);
        let c = b.finish().unwrap();
        let s = NiSpec { secret_inputs: vec!["k".into()], sink_outputs: vec!["o".into()], ..Default::default() };
        let (sc, m) = self_compose(&c, &s).unwrap();
        let (aug, _) = add_equivalence_predicates(&sc, &m).unwrap();
        assert_eq!(aug.ands.len() - sc.ands.len(), 3);
    }
}
