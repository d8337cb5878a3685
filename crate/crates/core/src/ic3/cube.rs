use std::fmt;
use std::ops::Not;

/// A latch literal: latch index and the value it asserts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatchLit(u32);

impl LatchLit {
    pub fn new(latch: usize, value: bool) -> LatchLit {
        LatchLit((latch as u32) << 1 | (!value) as u32)
    }

    pub fn latch(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn value(self) -> bool {
        self.0 & 1 == 0
    }
}

impl Not for LatchLit {
    type Output = LatchLit;
    fn not(self) -> LatchLit {
        LatchLit(self.0 ^ 1)
    }
}

impl fmt::Debug for LatchLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}l{}", if self.value() { "" } else { "!" }, self.latch())
    }
}

/// A conjunction of latch literals in canonical (sorted, duplicate-free) order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cube(Vec<LatchLit>);

impl Cube {
    /// `None` when the literals contain a complementary pair.
    pub fn new(mut lits: Vec<LatchLit>) -> Option<Cube> {
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].latch() == w[1].latch()) {
            return None;
        }
        Some(Cube(lits))
    }

    /// The cube fixing every latch to `values`.
    pub fn full(values: &[bool]) -> Cube {
        Cube(values.iter().enumerate().map(|(i, &v)| LatchLit::new(i, v)).collect())
    }

    pub fn lits(&self) -> &[LatchLit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: LatchLit) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    /// Value this cube assigns to `latch`, if any.
    pub fn value_of(&self, latch: usize) -> Option<bool> {
        let probe = LatchLit::new(latch, true);
        match self.0.binary_search(&probe) {
            Ok(_) => Some(true),
            Err(i) => self.0.get(i).filter(|l| l.latch() == latch).map(|l| l.value()),
        }
    }

    /// True when every literal of `self` occurs in `other`, i.e. `self` covers
    /// at least the states of `other`.
    pub fn subsumes(&self, other: &Cube) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|l| it.any(|o| o == l))
    }

    pub fn without(&self, l: LatchLit) -> Cube {
        Cube(self.0.iter().copied().filter(|&x| x != l).collect())
    }

    /// Whether some state satisfying `init` (undefined latches free) lies in the cube.
    pub fn intersects_init(&self, init: &[Option<bool>]) -> bool {
        self.0.iter().all(|l| init[l.latch()].is_none_or(|v| v == l.value()))
    }

    /// A literal of the cube that no initial state satisfies.
    pub fn init_separator(&self, init: &[Option<bool>]) -> Option<LatchLit> {
        self.0.iter().copied().find(|l| init[l.latch()].is_some_and(|v| v != l.value()))
    }

    pub fn holds_in(&self, state: &[bool]) -> bool {
        self.0.iter().all(|l| state[l.latch()] == l.value())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cube(lits: &[(usize, bool)]) -> Cube {
        Cube::new(lits.iter().map(|&(i, v)| LatchLit::new(i, v)).collect()).unwrap()
    }

    #[test]
    fn complementary_rejected() {
        assert!(Cube::new(vec![LatchLit::new(2, true), LatchLit::new(2, false)]).is_none());
    }

    #[test]
    fn init_checks() {
        let init = [Some(false), None, Some(true)];
        assert!(cube(&[(1, true), (2, true)]).intersects_init(&init));
        let c = cube(&[(0, true), (1, false)]);
        assert!(!c.intersects_init(&init));
        assert_eq!(c.init_separator(&init), Some(LatchLit::new(0, true)));
    }

    #[test]
    fn value_lookup() {
        let c = cube(&[(0, false), (3, true)]);
        assert_eq!(c.value_of(0), Some(false));
        assert_eq!(c.value_of(3), Some(true));
        assert_eq!(c.value_of(1), None);
    }

    proptest! {
        #[test]
        fn subsumption_is_subset(a in prop::collection::btree_map(0usize..8, any::<bool>(), 0..6),
                                 b in prop::collection::btree_map(0usize..8, any::<bool>(), 0..6)) {
            let ca = cube(&a.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>());
            let cb = cube(&b.iter().map(|(&k, &v)| (k, v)).collect::<Vec<_>>());
            let subset = a.iter().all(|(k, v)| b.get(k) == Some(v));
            prop_assert_eq!(ca.subsumes(&cb), subset);
            // Semantic reading: every full state in cb is in ca.
            if subset {
                for bits in 0u32..256 {
                    let st: Vec<bool> = (0..8).map(|i| bits >> i & 1 == 1).collect();
                    prop_assert!(!cb.holds_in(&st) || ca.holds_in(&st));
                }
            }
        }
    }
}
