//! Latch correspondence between the two copies of a self-composition.
//!
//! Sidecar grammar, one directive per line, `#` starts a comment:
//!
//! ```text
//! pair <i> <j>                                  latch i (copy 1) <-> latch j (copy 2)
//! self <i>                                      latch i is its own counterpart
//! group <name> <w> <i0> .. <iw-1> | <j0> .. <jw-1>   paired w-bit registers, LSB first
//! neq <name> <i>                                latch i is the inequivalence predicate of group <name>
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::Circuit;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("line {0}: syntax error: {1}")]
    Syntax(usize, String),
    #[error("latch index {0} is out of range")]
    UnknownLatch(usize),
    #[error("latch {0} is classified more than once or paired with itself")]
    NonInvolutive(usize),
    #[error("latch {0} is neither paired nor self-symmetric")]
    Unclassified(usize),
    #[error("group {0}: width mismatch")]
    WidthMismatch(String),
    #[error("group {0}: bit {1} is not a latch pair with copy-1 on the left")]
    GroupNotPaired(String, usize),
    #[error("group {0} is declared more than once")]
    DuplicateGroup(String),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("group {0}: predicate latch {1} must be self-symmetric and unique")]
    BadPredicate(String, usize),
}

/// A word-level register pair: `left[i]` (copy 1) corresponds to `right[i]` (copy 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPair {
    pub name: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl GroupPair {
    pub fn width(&self) -> usize {
        self.left.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryMap {
    latch_pairs: Vec<(usize, usize)>,
    group_pairs: Vec<GroupPair>,
    neq_latches: BTreeMap<usize, usize>,
    self_latches: Vec<usize>,
    partner: Vec<usize>,
}

impl SymmetryMap {
    /// Builds and validates a map over `num_latches` latches.
    pub fn new(
        num_latches: usize,
        latch_pairs: Vec<(usize, usize)>,
        self_latches: Vec<usize>,
        group_pairs: Vec<GroupPair>,
        neq_latches: BTreeMap<usize, usize>,
    ) -> Result<SymmetryMap, PairingError> {
        let mut partner = vec![usize::MAX; num_latches];
        let mut classify = |latch: usize, to: usize| -> Result<(), PairingError> {
            let slot = partner.get_mut(latch).ok_or(PairingError::UnknownLatch(latch))?;
            if *slot != usize::MAX {
                return Err(PairingError::NonInvolutive(latch));
            }
            *slot = to;
            Ok(())
        };
        for &(a, b) in &latch_pairs {
            if a == b {
                return Err(PairingError::NonInvolutive(a));
            }
            if b >= num_latches {
                return Err(PairingError::UnknownLatch(b));
            }
            classify(a, b)?;
            classify(b, a)?;
        }
        for &s in &self_latches {
            classify(s, s)?;
        }
        if let Some(unclassified) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(PairingError::Unclassified(unclassified));
        }
        let mut names = std::collections::BTreeSet::new();
        for g in &group_pairs {
            if !names.insert(g.name.as_str()) {
                return Err(PairingError::DuplicateGroup(g.name.clone()));
            }
            if g.left.len() != g.right.len() || g.left.is_empty() {
                return Err(PairingError::WidthMismatch(g.name.clone()));
            }
            let orientation_ok = latch_pairs.iter().map(|p| p.0).collect::<std::collections::BTreeSet<_>>();
            for (bit, (&l, &r)) in g.left.iter().zip(&g.right).enumerate() {
                if l >= num_latches || r >= num_latches {
                    return Err(PairingError::UnknownLatch(l.max(r)));
                }
                if partner[l] != r || l == r || !orientation_ok.contains(&l) {
                    return Err(PairingError::GroupNotPaired(g.name.clone(), bit));
                }
            }
        }
        let mut seen_pred = std::collections::BTreeSet::new();
        for (&gid, &latch) in &neq_latches {
            let name = group_pairs.get(gid).map(|g| g.name.clone()).ok_or(PairingError::UnknownGroup(gid.to_string()))?;
            if latch >= num_latches || partner[latch] != latch || !seen_pred.insert(latch) {
                return Err(PairingError::BadPredicate(name, latch));
            }
        }
        Ok(SymmetryMap { latch_pairs, group_pairs, neq_latches, self_latches, partner })
    }

    /// The identity map: every latch is its own counterpart.
    pub fn trivial(num_latches: usize) -> SymmetryMap {
        SymmetryMap::new(num_latches, Vec::new(), (0..num_latches).collect(), Vec::new(), BTreeMap::new())
            .expect("identity map is valid")
    }

    pub fn num_latches(&self) -> usize {
        self.partner.len()
    }

    /// The counterpart of `latch` in the other copy (itself when self-symmetric).
    pub fn partner(&self, latch: usize) -> usize {
        self.partner[latch]
    }

    pub fn latch_pairs(&self) -> &[(usize, usize)] {
        &self.latch_pairs
    }

    pub fn self_latches(&self) -> &[usize] {
        &self.self_latches
    }

    pub fn group_pairs(&self) -> &[GroupPair] {
        &self.group_pairs
    }

    pub fn group_by_name(&self, name: &str) -> Option<usize> {
        self.group_pairs.iter().position(|g| g.name == name)
    }

    /// Group-pair id to predicate latch index.
    pub fn neq_latches(&self) -> &BTreeMap<usize, usize> {
        &self.neq_latches
    }

    pub fn neq_latch(&self, group: usize) -> Option<usize> {
        self.neq_latches.get(&group).copied()
    }

    pub fn has_predicates(&self) -> bool {
        !self.neq_latches.is_empty()
    }

    /// Returns a copy extended with self-symmetric predicate latches, one per listed group.
    pub fn with_predicates(&self, num_latches: usize, bindings: &[(usize, usize)]) -> Result<SymmetryMap, PairingError> {
        let mut self_latches = self.self_latches.clone();
        let mut neq = self.neq_latches.clone();
        for &(group, latch) in bindings {
            self_latches.push(latch);
            neq.insert(group, latch);
        }
        SymmetryMap::new(num_latches, self.latch_pairs.clone(), self_latches, self.group_pairs.clone(), neq)
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> PairingError {
    PairingError::Syntax(line, msg.into())
}

fn index(line: usize, tok: Option<&str>) -> Result<usize, PairingError> {
    tok.ok_or_else(|| syntax(line, "missing latch index"))?
        .parse()
        .map_err(|_| syntax(line, "latch index must be a non-negative integer"))
}

/// Parses a pairing sidecar and validates it against `c`.
pub fn parse_pairing(text: &[u8], c: &Circuit) -> Result<SymmetryMap, PairingError> {
    let text = std::str::from_utf8(text).map_err(|_| syntax(0, "not valid UTF-8"))?;
    let mut pairs = Vec::new();
    let mut selfs = Vec::new();
    let mut groups: Vec<GroupPair> = Vec::new();
    let mut neq_named: Vec<(usize, String, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        match toks.next() {
            Some("pair") => {
                let a = index(line, toks.next())?;
                let b = index(line, toks.next())?;
                pairs.push((a, b));
            }
            Some("self") => selfs.push(index(line, toks.next())?),
            Some("group") => {
                let name = toks.next().ok_or_else(|| syntax(line, "missing group name"))?.to_string();
                let width = index(line, toks.next())?;
                let rest: Vec<&str> = toks.by_ref().collect();
                let bar = rest.iter().position(|&t| t == "|").ok_or_else(|| syntax(line, "missing '|'"))?;
                let left = rest[..bar].iter().map(|t| index(line, Some(t))).collect::<Result<Vec<_>, _>>()?;
                let right = rest[bar + 1..].iter().map(|t| index(line, Some(t))).collect::<Result<Vec<_>, _>>()?;
                if left.len() != width || right.len() != width {
                    return Err(PairingError::WidthMismatch(name));
                }
                groups.push(GroupPair { name, left, right });
            }
            Some("neq") => {
                let name = toks.next().ok_or_else(|| syntax(line, "missing group name"))?.to_string();
                let latch = index(line, toks.next())?;
                neq_named.push((line, name, latch));
            }
            Some(other) => return Err(syntax(line, format!("unknown directive '{other}'"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let mut neq = BTreeMap::new();
    for (_, name, latch) in neq_named {
        let gid = groups.iter().position(|g| g.name == name).ok_or(PairingError::UnknownGroup(name.clone()))?;
        if neq.insert(gid, latch).is_some() {
            return Err(PairingError::BadPredicate(name, latch));
        }
    }
    SymmetryMap::new(c.num_latches(), pairs, selfs, groups, neq)
}

/// Canonical sidecar text: pairs and self latches sorted, then groups and predicates in id order.
pub fn write_pairing(m: &SymmetryMap) -> String {
    let mut out = String::new();
    let mut pairs = m.latch_pairs.clone();
    pairs.sort_unstable();
    for (a, b) in pairs {
        writeln!(out, "pair {a} {b}").unwrap();
    }
    let mut selfs = m.self_latches.clone();
    selfs.sort_unstable();
    for s in selfs {
        writeln!(out, "self {s}").unwrap();
    }
    for g in &m.group_pairs {
        write!(out, "group {} {}", g.name, g.width()).unwrap();
        for i in &g.left {
            write!(out, " {i}").unwrap();
        }
        out.push_str(" |");
        for j in &g.right {
            write!(out, " {j}").unwrap();
        }
        out.push('\n');
    }
    for (&gid, &latch) in &m.neq_latches {
        writeln!(out, "neq {} {latch}", m.group_pairs[gid].name).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{AigBuilder, Circuit};

    fn latches(n: usize) -> Circuit {
        let mut b = AigBuilder::new();
        for i in 0..n {
            let l = b.latch(&format!("l{i}"), Some(false));
            b.set_next(l, l);
        }
        b.finish().unwrap()
    }

    #[test]
    fn pairs_and_self() {
        let c = latches(7);
        let m = parse_pairing(b"# demo\npair 0 3\npair 1 4\npair 2 5\nself 6\n", &c).unwrap();
        assert_eq!(m.latch_pairs().len(), 3);
        assert_eq!(m.self_latches(), &[6]);
        assert_eq!(m.partner(4), 1);
        assert_eq!(m.partner(6), 6);
    }

    #[test]
    fn self_pairing_rejected() {
        let c = latches(2);
        assert_eq!(parse_pairing(b"pair 0 0\nself 1\n", &c), Err(PairingError::NonInvolutive(0)));
    }

    #[test]
    fn errors() {
        let c = latches(4);
        assert_eq!(parse_pairing(b"pair 0 9\n", &c), Err(PairingError::UnknownLatch(9)));
        assert_eq!(parse_pairing(b"pair 0 1\nself 2\n", &c), Err(PairingError::Unclassified(3)));
        assert_eq!(parse_pairing(b"pair 0 1\npair 1 2\nself 3\n", &c), Err(PairingError::NonInvolutive(1)));
        assert!(matches!(
            parse_pairing(b"pair 0 2\npair 1 3\ngroup r 2 0 1 | 2\n", &c),
            Err(PairingError::WidthMismatch(_))
        ));
        assert!(matches!(
            parse_pairing(b"pair 0 2\npair 1 3\ngroup r 2 0 1 | 3 2\n", &c),
            Err(PairingError::GroupNotPaired(_, 0))
        ));
        assert!(matches!(parse_pairing(b"pair 0 1\nself 2\nself 3\nneq r 3\n", &c), Err(PairingError::UnknownGroup(_))));
        assert!(matches!(parse_pairing(b"frob 1\n", &c), Err(PairingError::Syntax(1, _))));
    }

    #[test]
    fn groups_and_predicates_round_trip() {
        let c = latches(5);
        let text = "pair 0 2\npair 1 3\nself 4\ngroup r 2 0 1 | 2 3\nneq r 4\n";
        let m = parse_pairing(text.as_bytes(), &c).unwrap();
        assert_eq!(m.neq_latch(0), Some(4));
        assert_eq!(write_pairing(&m), text);
    }
}
