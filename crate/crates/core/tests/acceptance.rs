//! Acceptance gate. Prints one PASS or FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nicheck::circuit::{GroupPair, SymmetryMap};
use nicheck::ic3::{check, CheckResult, Cube, EngineOptions, LatchLit, Verdict};
use nicheck::oracle::{certify, explicit_bad_depth, replay, Certificate, Certification, DEFAULT_LATCH_LIMIT};
use nicheck::replacement::{find_groups, predicate_replace, PredMode};
use nicheck::sat::{Lit, SolveResult, Solver, SolverOptions, Var};
use nicheck::selfcomp::{compose_benchmark, ComposedBenchmark, Expected, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONFIGS: [(&str, bool, PredMode); 8] = [
    ("baseline", false, PredMode::None),
    ("sym", true, PredMode::None),
    ("aon", false, PredMode::AllOrNothing),
    ("maximal", false, PredMode::Maximal),
    ("maximum", false, PredMode::Maximum),
    ("sym+aon", true, PredMode::AllOrNothing),
    ("sym+maximal", true, PredMode::Maximal),
    ("sym+maximum", true, PredMode::Maximum),
];

struct Run {
    family: Family,
    size: usize,
    constrained: bool,
    config: &'static str,
    bench: ComposedBenchmark,
    result: CheckResult,
}

/// All families, sizes 1 to 4, both variants, all configurations, with every
/// debug check switched on.
fn benchmark_runs() -> (Vec<Run>, Duration) {
    let start = Instant::now();
    let mut runs = Vec::new();
    for family in Family::ALL {
        for size in 1..=4 {
            for constrained in [true, false] {
                for (config, symmetry, pred) in CONFIGS {
                    let bench = compose_benchmark(family, size, constrained, pred != PredMode::None).unwrap();
                    let opts = EngineOptions {
                        symmetry,
                        pred,
                        audit_symmetric: symmetry,
                        sat_checks: true,
                        ..Default::default()
                    };
                    let result = check(&bench.circuit, &bench.map, &opts).unwrap();
                    runs.push(Run { family, size, constrained, config, bench, result });
                }
            }
        }
    }
    (runs, start.elapsed())
}

fn label(r: &Run) -> String {
    format!("{}({}) {} {}", r.family, r.size, if r.constrained { "constrained" } else { "unconstrained" }, r.config)
}

fn criterion1(runs: &[Run], elapsed: Duration) -> Result<String, String> {
    let start = Instant::now();
    let mut truth: BTreeMap<(Family, usize, bool, bool), bool> = BTreeMap::new();
    let mut bad = Vec::new();
    for r in runs {
        let pred = r.bench.map.has_predicates();
        let unsafe_truth = *truth.entry((r.family, r.size, r.constrained, pred)).or_insert_with(|| {
            explicit_bad_depth(&r.bench.circuit, DEFAULT_LATCH_LIMIT).expect("within the latch limit").is_some()
        });
        let expected_unsafe = r.bench.expected == Expected::Unsafe;
        let got = match r.result.verdict {
            Verdict::Safe { .. } => Some(false),
            Verdict::Unsafe { .. } => Some(true),
            Verdict::Unknown { .. } => None,
        };
        if got != Some(unsafe_truth) || unsafe_truth != expected_unsafe {
            bad.push(label(r));
        }
    }
    let total = elapsed + start.elapsed();
    if !bad.is_empty() {
        return Err(format!("{} disagreements, first: {}", bad.len(), bad[0]));
    }
    if total >= Duration::from_secs(300) {
        return Err(format!("took {total:?}"));
    }
    Ok(format!("{} runs agree with explicit-state ground truth in {:.2}s", runs.len(), total.as_secs_f64()))
}

fn criterion2(runs: &[Run]) -> Result<String, String> {
    let mut n = 0;
    for r in runs {
        if let Verdict::Safe { invariant, .. } = &r.result.verdict {
            let cert = Certificate::from_invariant(&r.bench.circuit, invariant);
            match certify(&r.bench.circuit, &cert) {
                Ok(Certification::Pass) => n += 1,
                other => return Err(format!("{}: {other:?}", label(r))),
            }
        }
    }
    if n == 0 {
        return Err("no safe results".into());
    }
    Ok(format!("{n}/{n} certificates pass"))
}

fn criterion3(runs: &[Run]) -> Result<String, String> {
    let mut n = 0;
    for r in runs {
        if let Verdict::Unsafe { trace } = &r.result.verdict {
            if replay(&r.bench.circuit, trace) != Ok(true) {
                return Err(format!("{}: trace does not replay", label(r)));
            }
            n += 1;
        }
    }
    if n == 0 {
        return Err("no unsafe results".into());
    }
    Ok(format!("{n}/{n} counterexamples replay"))
}

fn criterion4() -> Result<String, String> {
    let (mut audits, mut violations) = (0, 0);
    for family in [Family::MuxReg, Family::GcdLockstep] {
        for constrained in [true, false] {
            for (_, symmetry, pred) in CONFIGS {
                let b = compose_benchmark(family, 4, constrained, pred != PredMode::None).unwrap();
                let opts = EngineOptions { symmetry, pred, audit_frames: true, ..Default::default() };
                let r = check(&b.circuit, &b.map, &opts).unwrap();
                audits += r.stats.frame_audits;
                violations += r.stats.frame_audit_violations;
            }
        }
    }
    if violations > 0 || audits == 0 {
        return Err(format!("{violations} violations over {audits} audits"));
    }
    Ok(format!("{audits} frame audits on mux_reg(4) and gcd_lockstep(4), zero violations"))
}

fn criterion5(runs: &[Run]) -> Result<String, String> {
    let audits: u64 = runs.iter().map(|r| r.result.stats.symmetric_audits).sum();
    let failures: u64 = runs.iter().map(|r| r.result.stats.symmetric_audit_failures).sum();
    if failures > 0 || audits == 0 {
        return Err(format!("{failures} failures over {audits} audited mirrors"));
    }
    Ok(format!("{audits} mirrored cubes re-tested, zero failures"))
}

/// A random register layout with a predicate per register, and a cube over it.
fn random_instance(rng: &mut ChaCha8Rng) -> (SymmetryMap, Cube) {
    let regs = rng.gen_range(1..=3);
    let widths: Vec<usize> = (0..regs).map(|_| rng.gen_range(1..=3)).collect();
    let total: usize = widths.iter().sum();
    let mut groups = Vec::new();
    let mut pairs = Vec::new();
    let mut next = 0;
    for (r, &w) in widths.iter().enumerate() {
        let left: Vec<usize> = (next..next + w).collect();
        let right: Vec<usize> = (total + next..total + next + w).collect();
        pairs.extend(left.iter().copied().zip(right.iter().copied()));
        groups.push(GroupPair { name: format!("r{r}"), left, right });
        next += w;
    }
    let neq: BTreeMap<usize, usize> = (0..regs).map(|r| (r, 2 * total + r)).collect();
    let selfs: Vec<usize> = neq.values().copied().collect();
    let m = SymmetryMap::new(2 * total + regs, pairs, selfs, groups, neq.clone()).unwrap();
    let mut lits = Vec::new();
    for g in m.group_pairs() {
        for (&l, &r) in g.left.iter().zip(&g.right) {
            match rng.gen_range(0..5) {
                0 | 1 => {
                    let a = rng.gen();
                    lits.push(LatchLit::new(l, a));
                    lits.push(LatchLit::new(r, !a));
                }
                2 => {
                    let a = rng.gen();
                    lits.push(LatchLit::new(l, a));
                    lits.push(LatchLit::new(r, a));
                }
                3 => lits.push(LatchLit::new(l, rng.gen())),
                _ => {}
            }
        }
    }
    for &p in neq.values() {
        if rng.gen_ratio(1, 6) {
            lits.push(LatchLit::new(p, rng.gen()));
        }
    }
    (m, Cube::new(lits).unwrap())
}

fn node_of(x: &Cube, groups: &[nicheck::replacement::InequivalenceGroup]) -> u32 {
    groups.iter().enumerate().filter(|(_, g)| !x.contains(g.positive)).fold(0, |acc, (i, _)| acc | 1 << i)
}

fn criterion6() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut calls = 0;
    let mut exhaustive = 0;
    let mut violations: Vec<String> = Vec::new();
    while calls < 3000 {
        let (m, c) = random_instance(&mut rng);
        let groups = find_groups(&c, &m);
        let k = groups.len();
        if k == 0 || k > 8 {
            continue;
        }
        let full = (1u32 << k) - 1;
        // Either a downward-closed oracle (generated by a few maximal nodes) or an arbitrary one.
        let monotone = rng.gen_bool(0.5);
        let gens: Vec<u32> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=full)).collect();
        let table: Vec<bool> = (0..=full).map(|_| rng.gen_bool(0.4)).collect();
        let unreachable = |s: u32| if monotone { gens.iter().any(|&g| s & g == s) } else { table[s as usize] };
        let oracle = |x: &Cube| -> Result<bool, ()> { Ok(unreachable(node_of(x, &groups))) };

        let aon = predicate_replace(&c, &m, PredMode::AllOrNothing, oracle).unwrap();
        calls += 1;
        if aon.tests > 1 {
            violations.push(format!("aon used {} tests", aon.tests));
        }

        let maximal = predicate_replace(&c, &m, PredMode::Maximal, oracle).unwrap();
        calls += 1;
        let sel = maximal.nodes[0].iter().fold(0u32, |a, &i| a | 1 << i);
        if maximal.tests > k || maximal.cubes.len() != 1 || (sel != 0 && !unreachable(sel)) {
            violations.push(format!("maximal: {} tests for {k} groups, node {sel:b}", maximal.tests));
        }
        if monotone && (0..k).any(|g| sel >> g & 1 == 0 && unreachable(sel | 1 << g)) {
            violations.push(format!("maximal node {sel:b} is not maximal"));
        }

        let maximum = predicate_replace(&c, &m, PredMode::Maximum, oracle).unwrap();
        calls += 1;
        let got: BTreeSet<u32> = maximum.cubes.iter().map(|x| node_of(x, &groups)).collect();
        let antichain = maximum.cubes.iter().enumerate().all(|(i, a)| {
            maximum.cubes.iter().enumerate().all(|(j, b)| i == j || !a.subsumes(b))
        });
        if !antichain || got.len() != maximum.cubes.len() {
            violations.push("maximum result is not an antichain".into());
        }
        if k <= 4 {
            exhaustive += 1;
            // Maximal elements of the unreachable nodes, with the original cube standing in when none exist.
            let unreach: Vec<u32> = (1..=full).filter(|&s| unreachable(s)).collect();
            let mut want: BTreeSet<u32> =
                unreach.iter().copied().filter(|&s| !unreach.iter().any(|&t| t != s && t & s == s)).collect();
            if want.is_empty() {
                want.insert(0);
            }
            if got != want {
                violations.push(format!("maximum {got:?} differs from enumeration {want:?}"));
            }
        }
    }
    if !violations.is_empty() {
        return Err(format!("{} violations, first: {}", violations.len(), violations[0]));
    }
    Ok(format!("{calls} replacement calls ({exhaustive} maximum results checked against lattice enumeration), zero violations"))
}

fn mux_stats(n: usize, symmetry: bool, pred: PredMode) -> nicheck::ic3::Stats {
    let b = compose_benchmark(Family::MuxReg, n, true, pred != PredMode::None).unwrap();
    let r = check(&b.circuit, &b.map, &EngineOptions { symmetry, pred, ..Default::default() }).unwrap();
    assert!(matches!(r.verdict, Verdict::Safe { .. }));
    r.stats
}

fn criterion7() -> Result<String, String> {
    let mut baseline = BTreeMap::new();
    let mut slowest = Duration::ZERO;
    for n in [8, 16, 32] {
        let s = mux_stats(n, false, PredMode::None);
        slowest = slowest.max(s.wall_time);
        if s.inequality_blocks < 2 * n as u64 {
            return Err(format!("n={n}: only {} inequality blocks", s.inequality_blocks));
        }
        baseline.insert(n, s.block_calls);
    }
    // At least two more calls per unit of width between consecutive sizes.
    if baseline[&16] < baseline[&8] + 16 || baseline[&32] < baseline[&16] + 32 {
        return Err(format!("baseline block calls {baseline:?} grow sublinearly"));
    }
    let base32 = baseline[&32] as f64;
    let mut worst_pred = f64::INFINITY;
    for (name, symmetry, pred) in CONFIGS.iter().filter(|c| c.2 != PredMode::None) {
        let s = mux_stats(32, *symmetry, *pred);
        slowest = slowest.max(s.wall_time);
        let ratio = base32 / s.block_calls as f64;
        if ratio < 2.0 {
            return Err(format!("{name} at n=32: {} block calls vs baseline {base32} ({ratio:.2}x)", s.block_calls));
        }
        worst_pred = worst_pred.min(ratio);
    }
    let sym = mux_stats(32, true, PredMode::None);
    slowest = slowest.max(sym.wall_time);
    let sym_ratio = base32 / sym.block_calls as f64;
    if sym_ratio < 1.2 {
        return Err(format!("symmetry at n=32: {sym_ratio:.2}x"));
    }
    if slowest >= Duration::from_secs(60) {
        return Err(format!("slowest cell took {slowest:?}"));
    }
    Ok(format!(
        "baseline block calls {baseline:?}; predicate modes >= {worst_pred:.1}x, symmetry {sym_ratio:.1}x fewer at n=32"
    ))
}

fn brute_force(n: u32, clauses: &[Vec<Lit>], fixed: &[Lit]) -> bool {
    (0u32..1 << n).any(|bits| {
        let val = |l: Lit| (bits >> l.var().0 & 1 == 1) ^ l.is_negated();
        fixed.iter().all(|&l| val(l)) && clauses.iter().all(|c| c.iter().any(|&l| val(l)))
    })
}

fn criterion8(runs: &[Run]) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..500 {
        let n: u32 = rng.gen_range(3..=16);
        let lit = |rng: &mut ChaCha8Rng| Var(rng.gen_range(0..n)).lit(rng.gen());
        let clauses: Vec<Vec<Lit>> =
            (0..rng.gen_range(3 * n..=5 * n)).map(|_| (0..3).map(|_| lit(&mut rng)).collect()).collect();
        let assumptions: Vec<Lit> = (0..rng.gen_range(0..4)).map(|_| lit(&mut rng)).collect();
        let mut s = Solver::new(SolverOptions { seed: i, check: true, ..Default::default() });
        s.reserve_vars(n as usize);
        for c in &clauses {
            s.add_clause(c);
        }
        let ok = match s.solve(&assumptions) {
            SolveResult::Sat(m) => {
                brute_force(n, &clauses, &assumptions)
                    && clauses.iter().all(|c| c.iter().any(|&l| m.value(l)))
                    && assumptions.iter().all(|&l| m.value(l))
            }
            SolveResult::Unsat(core) => {
                !brute_force(n, &clauses, &assumptions)
                    && core.iter().all(|l| assumptions.contains(l))
                    && !brute_force(n, &clauses, &core)
            }
            SolveResult::Unknown => false,
        };
        if !ok || s.stats().check_failures > 0 {
            return Err(format!("instance {i} ({n} vars) disagrees with the truth table"));
        }
    }
    let queries: u64 = runs.iter().map(|r| r.result.stats.sat_queries).sum();
    let failures: u64 = runs.iter().map(|r| r.result.stats.sat_check_failures).sum();
    if failures > 0 {
        return Err(format!("{failures} model/core check failures over {queries} engine queries"));
    }
    Ok(format!("500 random instances match the truth table; {queries} checked engine queries, zero failures"))
}

type Criterion<'a> = Box<dyn Fn() -> Result<String, String> + 'a>;

fn main() {
    let (runs, elapsed) = benchmark_runs();
    let criteria: Vec<(usize, Criterion)> = vec![
        (1, Box::new(|| criterion1(&runs, elapsed))),
        (2, Box::new(|| criterion2(&runs))),
        (3, Box::new(|| criterion3(&runs))),
        (4, Box::new(criterion4)),
        (5, Box::new(|| criterion5(&runs))),
        (6, Box::new(criterion6)),
        (7, Box::new(criterion7)),
        (8, Box::new(|| criterion8(&runs))),
    ];
    let mut failed = 0;
    for (id, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
