use std::fmt::Write as _;
use std::time::Duration;

/// Run counters. All are monotone during a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Stats {
    /// Invocations of the blocking procedure, retries included.
    pub block_calls: u64,
    pub reachability_tests: u64,
    pub generalize_drops: u64,
    /// Blocking steps whose replacement picked at least one predicate.
    pub predicate_replacements: u64,
    /// Reachability tests issued by the replacement heuristics.
    pub replacement_tests: u64,
    /// Extra cubes blocked because no replaced cube covered the obligation.
    pub guard_cubes: u64,
    /// Cubes tying a predicate latch to its register bits.
    pub link_lemmas: u64,
    pub symmetric_cubes_added: u64,
    pub symmetric_init_skips: u64,
    pub symmetric_audits: u64,
    pub symmetric_audit_failures: u64,
    pub clauses_learned: u64,
    /// Successful blocking steps whose generalized cube holds a per-bit inequality pattern.
    pub inequality_blocks: u64,
    pub propagation_tests: u64,
    pub bad_queries: u64,
    pub obligations: u64,
    pub frame_audits: u64,
    pub frame_audit_violations: u64,
    pub sat_queries: u64,
    pub sat_conflicts: u64,
    pub sat_check_failures: u64,
    /// Cubes held in each frame delta, index 1 upward.
    pub frame_sizes: Vec<usize>,
    pub wall_time: Duration,
}

impl Stats {
    /// Line-oriented `key=value` rendering with a stable key order.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.counters() {
            writeln!(s, "{k}={v}").unwrap();
        }
        let sizes: Vec<String> = self.frame_sizes.iter().map(|x| x.to_string()).collect();
        writeln!(s, "frame_sizes={}", sizes.join(",")).unwrap();
        writeln!(s, "wall_time_s={:.6}", self.wall_time.as_secs_f64()).unwrap();
        s
    }

    pub fn counters(&self) -> [(&'static str, u64); 21] {
        [
            ("block_calls", self.block_calls),
            ("reachability_tests", self.reachability_tests),
            ("generalize_drops", self.generalize_drops),
            ("predicate_replacements", self.predicate_replacements),
            ("replacement_tests", self.replacement_tests),
            ("guard_cubes", self.guard_cubes),
            ("link_lemmas", self.link_lemmas),
            ("symmetric_cubes_added", self.symmetric_cubes_added),
            ("symmetric_init_skips", self.symmetric_init_skips),
            ("symmetric_audits", self.symmetric_audits),
            ("symmetric_audit_failures", self.symmetric_audit_failures),
            ("clauses_learned", self.clauses_learned),
            ("inequality_blocks", self.inequality_blocks),
            ("propagation_tests", self.propagation_tests),
            ("bad_queries", self.bad_queries),
            ("obligations", self.obligations),
            ("frame_audits", self.frame_audits),
            ("frame_audit_violations", self.frame_audit_violations),
            ("sat_queries", self.sat_queries),
            ("sat_conflicts", self.sat_conflicts),
            ("sat_check_failures", self.sat_check_failures),
        ]
    }

    /// Everything except wall time, for determinism comparisons.
    pub fn without_time(&self) -> Stats {
        Stats { wall_time: Duration::ZERO, ..self.clone() }
    }
}
