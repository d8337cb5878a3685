use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{bail, Result};
use nicheck::ic3::{check, EngineOptions, Stats, Verdict};
use nicheck::oracle::{certify, replay, Certificate, Certification};
use nicheck::replacement::PredMode;
use nicheck::selfcomp::{compose_benchmark, BenchError, ComposedBenchmark, Expected, Family};

use crate::check::Outcome;
use crate::{usage, write_file};

/// The eight engine configurations: baseline, symmetry alone, each predicate
/// mode alone, and each predicate mode with symmetry.
pub const CONFIGS: [(&str, bool, PredMode); 8] = [
    ("baseline", false, PredMode::None),
    ("sym", true, PredMode::None),
    ("aon", false, PredMode::AllOrNothing),
    ("maximal", false, PredMode::Maximal),
    ("maximum", false, PredMode::Maximum),
    ("sym+aon", true, PredMode::AllOrNothing),
    ("sym+maximal", true, PredMode::Maximal),
    ("sym+maximum", true, PredMode::Maximum),
];

#[derive(Clone, Debug)]
pub struct MatrixConfig {
    pub family: String,
    pub sizes: Vec<usize>,
    pub constrained: bool,
    pub timeout: Option<Duration>,
    pub seed: u64,
    pub audit_symmetric: bool,
    pub jobs: usize,
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub size: usize,
    pub config: &'static str,
    pub outcome: Outcome,
    pub stats: Stats,
}

impl Cell {
    fn text(&self) -> String {
        let time = match self.outcome {
            Outcome::Unknown { bound } => format!("TO({bound})"),
            _ => format!("{:.3}s", self.stats.wall_time.as_secs_f64()),
        };
        format!("{time} b={} l={}", self.stats.block_calls, self.stats.clauses_learned)
    }
}

/// Runs every configuration on every size, validates each answer, and checks
/// that all configurations agree. Returns the cells and the rendered table.
pub fn run_matrix(cfg: &MatrixConfig) -> Result<(Vec<Cell>, String)> {
    let family: Family = cfg.family.parse().map_err(|e: BenchError| usage(e.to_string()))?;
    if cfg.sizes.is_empty() {
        return Err(usage("no sizes given"));
    }
    let mut instances: Vec<(ComposedBenchmark, ComposedBenchmark)> = Vec::new();
    for &n in &cfg.sizes {
        let build = |pred| {
            compose_benchmark(family, n, cfg.constrained, pred).map_err(|e| match e {
                BenchError::ZeroSize => usage(e.to_string()),
                other => anyhow::Error::new(other),
            })
        };
        instances.push((build(false)?, build(true)?));
    }
    let jobs: Vec<(usize, usize)> = (0..cfg.sizes.len()).flat_map(|i| (0..CONFIGS.len()).map(move |k| (i, k))).collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Cell>>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..cfg.jobs.max(1).min(jobs.len()) {
            scope.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, k)) = jobs.get(j) else { break };
                let cell = run_cell(cfg, &instances[i], cfg.sizes[i], k);
                results.lock().unwrap()[j] = Some(cell);
            });
        }
    });
    let cells = results.into_inner().unwrap().into_iter().map(|r| r.expect("every job ran")).collect::<Result<Vec<Cell>>>()?;

    let expected = instances[0].0.expected;
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let row = &cells[i * CONFIGS.len()..(i + 1) * CONFIGS.len()];
        let decided: Vec<&Cell> = row.iter().filter(|c| !matches!(c.outcome, Outcome::Unknown { .. })).collect();
        if let Some(first) = decided.first() {
            if let Some(odd) = decided.iter().find(|c| c.outcome != first.outcome) {
                bail!(
                    "verdict disagreement on {family}({n}): {} says {} but {} says {}",
                    first.config,
                    first.outcome,
                    odd.config,
                    odd.outcome
                );
            }
        }
    }
    let table = render(family, cfg, expected, &cells);
    if let Some(dir) = &cfg.out_dir {
        std::fs::create_dir_all(dir)?;
        write_file(&dir.join(format!("{family}.txt")), &table)?;
        write_file(&dir.join(format!("{family}.kv")), &kv_lines(family, &cells))?;
    }
    Ok((cells, table))
}

fn run_cell(cfg: &MatrixConfig, inst: &(ComposedBenchmark, ComposedBenchmark), size: usize, k: usize) -> Result<Cell> {
    let (name, symmetry, pred) = CONFIGS[k];
    let b = if pred == PredMode::None { &inst.0 } else { &inst.1 };
    let opts = EngineOptions {
        symmetry,
        pred,
        audit_symmetric: cfg.audit_symmetric,
        seed: cfg.seed,
        timeout: cfg.timeout,
        ..Default::default()
    };
    let r = check(&b.circuit, &b.map, &opts)?;
    match &r.verdict {
        Verdict::Safe { invariant, .. } => {
            let cert = Certificate::from_invariant(&b.circuit, invariant);
            if certify(&b.circuit, &cert)? != Certification::Pass {
                bail!("{name} on size {size}: invariant does not certify");
            }
        }
        Verdict::Unsafe { trace } => {
            if !replay(&b.circuit, trace)? {
                bail!("{name} on size {size}: counterexample does not replay");
            }
        }
        Verdict::Unknown { .. } => {}
    }
    if r.stats.symmetric_audit_failures > 0 {
        bail!("{name} on size {size}: {} mirrored cubes failed the audit", r.stats.symmetric_audit_failures);
    }
    Ok(Cell { size, config: name, outcome: Outcome::of(&r.verdict), stats: r.stats })
}

fn render(family: Family, cfg: &MatrixConfig, expected: Expected, cells: &[Cell]) -> String {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["size".to_string(), "verdict".to_string()];
    header.extend(CONFIGS.iter().map(|c| c.0.to_string()));
    rows.push(header);
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let row = &cells[i * CONFIGS.len()..(i + 1) * CONFIGS.len()];
        let verdict = row
            .iter()
            .find(|c| !matches!(c.outcome, Outcome::Unknown { .. }))
            .map_or("TO".to_string(), |c| c.outcome.to_string());
        let mut line = vec![n.to_string(), verdict];
        line.extend(row.iter().map(Cell::text));
        rows.push(line);
    }
    let widths: Vec<usize> = (0..rows[0].len()).map(|j| rows.iter().map(|r| r[j].len()).max().unwrap()).collect();
    let mut out = String::new();
    let exp = match expected {
        Expected::Safe => "SAFE",
        Expected::Unsafe => "UNSAFE",
    };
    writeln!(out, "# {family} constrained={} expected={exp}", cfg.constrained).unwrap();
    writeln!(out, "# cell: time (or TO(proof bound)), b=block calls, l=clauses learned").unwrap();
    for r in &rows {
        let cols: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        writeln!(out, "{}", cols.join("  ").trim_end()).unwrap();
    }
    out
}

fn kv_lines(family: Family, cells: &[Cell]) -> String {
    let mut out = String::new();
    for c in cells {
        writeln!(
            out,
            "family={family} size={} config={} result={} time_s={:.6} block_calls={} clauses_learned={}",
            c.size,
            c.config,
            c.outcome,
            c.stats.wall_time.as_secs_f64(),
            c.stats.block_calls,
            c.stats.clauses_learned
        )
        .unwrap();
    }
    out
}
