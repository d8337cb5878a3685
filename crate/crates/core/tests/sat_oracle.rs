use nicheck::sat::{Lit, SolveResult, Solver, SolverOptions, Var};
use proptest::prelude::*;

fn brute_force(n: u32, clauses: &[Vec<Lit>], fixed: &[Lit]) -> bool {
    (0u32..1 << n).any(|bits| {
        let val = |l: Lit| (bits >> l.var().0 & 1 == 1) ^ l.is_negated();
        fixed.iter().all(|&l| val(l)) && clauses.iter().all(|c| c.iter().any(|&l| val(l)))
    })
}

fn arb_lit(n: u32) -> impl Strategy<Value = Lit> {
    (0..n, any::<bool>()).prop_map(|(v, neg)| Var(v).lit(neg))
}

fn arb_instance() -> impl Strategy<Value = (u32, Vec<Vec<Lit>>, Vec<Lit>)> {
    (3u32..=16).prop_flat_map(|n| {
        let m = (n as usize * 3)..=(n as usize * 5);
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(arb_lit(n), 3), m),
            prop::collection::vec(arb_lit(n), 0..4),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn agrees_with_truth_table((n, clauses, assumptions) in arb_instance(), seed in 0u64..4) {
        let mut s = Solver::new(SolverOptions { seed, check: true, ..Default::default() });
        s.reserve_vars(n as usize);
        for c in &clauses {
            s.add_clause(c);
        }
        let expected = brute_force(n, &clauses, &assumptions);
        match s.solve(&assumptions) {
            SolveResult::Sat(m) => {
                prop_assert!(expected);
                prop_assert!(clauses.iter().all(|c| c.iter().any(|&l| m.value(l))));
                prop_assert!(assumptions.iter().all(|&l| m.value(l)));
            }
            SolveResult::Unsat(core) => {
                prop_assert!(!expected);
                prop_assert!(core.iter().all(|l| assumptions.contains(l)));
                prop_assert!(!brute_force(n, &clauses, &core));
            }
            SolveResult::Unknown => prop_assert!(false, "no budget was set"),
        }
        prop_assert_eq!(s.stats().check_failures, 0);
        // The database must be reusable after an assumption-level answer.
        prop_assert_eq!(s.solve(&[]).is_sat(), brute_force(n, &clauses, &[]));
    }

    #[test]
    fn incremental_additions((n, clauses, _) in arb_instance()) {
        let mut s = Solver::default();
        s.reserve_vars(n as usize);
        for (i, c) in clauses.iter().enumerate() {
            s.add_clause(c);
            if i % 7 == 0 {
                prop_assert_eq!(s.solve(&[]).is_sat(), brute_force(n, &clauses[..=i], &[]));
            }
        }
    }
}
