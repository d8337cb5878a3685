//! Cross-copy mirroring of cubes.

use crate::circuit::SymmetryMap;
use crate::ic3::{Cube, LatchLit};

/// Swaps every paired latch for its counterpart; self-symmetric latches
/// (including inequivalence predicates) stay put.
///
/// Panics if a literal refers to a latch outside the map.
pub fn symmetric_cube(c: &Cube, m: &SymmetryMap) -> Cube {
    Cube::new(c.lits().iter().map(|l| LatchLit::new(m.partner(l.latch()), l.value())).collect())
        .expect("the partner map is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GroupPair;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    // Latches 0..3 copy 1, 3..6 copy 2, 6 predicate.
    fn map() -> SymmetryMap {
        let g = GroupPair { name: "r".into(), left: vec![1, 2], right: vec![4, 5] };
        SymmetryMap::new(7, vec![(0, 3), (1, 4), (2, 5)], vec![6], vec![g], BTreeMap::from([(0, 6)])).unwrap()
    }

    fn cube(lits: &[(usize, bool)]) -> Cube {
        Cube::new(lits.iter().map(|&(i, v)| LatchLit::new(i, v)).collect()).unwrap()
    }

    #[test]
    fn selector_maps_across() {
        assert_eq!(symmetric_cube(&cube(&[(0, true)]), &map()), cube(&[(3, true)]));
    }

    #[test]
    fn predicate_is_fixed() {
        assert_eq!(symmetric_cube(&cube(&[(6, true)]), &map()), cube(&[(6, true)]));
    }

    #[test]
    fn inequality_pattern_flips_orientation() {
        let c = cube(&[(1, true), (4, false)]);
        assert_eq!(symmetric_cube(&c, &map()), cube(&[(1, false), (4, true)]));
    }

    proptest! {
        #[test]
        fn involution(lits in prop::collection::btree_map(0usize..7, any::<bool>(), 0..7)) {
            let c = cube(&lits.into_iter().collect::<Vec<_>>());
            let m = map();
            prop_assert_eq!(symmetric_cube(&symmetric_cube(&c, &m), &m), c);
        }
    }
}
