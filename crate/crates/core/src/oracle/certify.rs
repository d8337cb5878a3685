use std::fmt::Write as _;

use crate::circuit::{Circuit, Lit as AigLit};
use crate::encode::{encode_frame, encode_gates, sat_lit};
use crate::ic3::Cube;
use crate::sat::{Lit, Model, SolveResult, Solver};

/// An inductive invariant as clauses over latch literals, one clause per line
/// in AIGER literal encoding. The constant literal `0` (false) may appear, so
/// `0` alone on a line is the empty clause.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub clauses: Vec<Vec<AigLit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("line {line}: `{token}` is not a literal")]
    Syntax { line: usize, token: String },
    #[error("literal {0} is neither a constant nor a latch")]
    NotALatch(u32),
}

impl Certificate {
    /// The clauses negating the blocked cubes of a safe verdict.
    pub fn from_invariant(c: &Circuit, cubes: &[Cube]) -> Certificate {
        let clauses = cubes
            .iter()
            .map(|cube| cube.lits().iter().map(|l| c.latches[l.latch()].state.with_polarity(!l.value())).collect())
            .collect();
        Certificate { clauses }
    }

    pub fn parse(text: &str) -> Result<Certificate, CertificateError> {
        let mut clauses = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let clause = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map(AigLit::from_code).map_err(|_| CertificateError::Syntax { line: i + 1, token: t.into() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            clauses.push(clause);
        }
        Ok(Certificate { clauses })
    }

    pub fn write(&self) -> String {
        let mut s = String::new();
        for cl in &self.clauses {
            let codes: Vec<String> = cl.iter().map(|l| l.code().to_string()).collect();
            writeln!(s, "{}", if codes.is_empty() { "0".to_string() } else { codes.join(" ") }).unwrap();
        }
        s
    }

    fn validate(&self, c: &Circuit) -> Result<(), CertificateError> {
        let latch = c.latch_index_by_var();
        for &l in self.clauses.iter().flatten() {
            if !l.is_const() && latch.get(l.var() as usize).copied().flatten().is_none() {
                return Err(CertificateError::NotALatch(l.code()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertCheck {
    /// Init implies Inv.
    Initiation,
    /// Inv and the transition relation (under the constraints) imply Inv'.
    Consecution,
    /// Inv under the constraints excludes bad.
    Safety,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    Pass,
    /// `state` and `inputs` witness the failed check.
    Fail { check: CertCheck, state: Vec<bool>, inputs: Vec<bool> },
}

/// Checks the three conditions of an inductive invariant with one SAT query each.
pub fn certify(c: &Circuit, cert: &Certificate) -> Result<Certification, CertificateError> {
    cert.validate(c)?;
    let clause = |cl: &Vec<AigLit>| -> Vec<Lit> { cl.iter().map(|&l| sat_lit(l)).collect() };
    let latch = c.latch_index_by_var();
    let primed = |l: AigLit| -> Lit {
        match latch.get(l.var() as usize).copied().flatten() {
            Some(i) => sat_lit(c.latches[i].next.with_polarity(!l.is_negated())),
            None => sat_lit(l),
        }
    };
    for check in [CertCheck::Initiation, CertCheck::Consecution, CertCheck::Safety] {
        let mut s = Solver::default();
        let goal: Vec<Lit> = match check {
            CertCheck::Initiation => {
                encode_gates(c, &mut s, 0);
                for l in &c.latches {
                    if let Some(v) = l.init {
                        s.add_clause(&[sat_lit(l.state.with_polarity(v))]);
                    }
                }
                violate_some(&mut s, cert.clauses.iter().map(|cl| cl.iter().map(|&l| sat_lit(l)).collect()))
            }
            CertCheck::Consecution => {
                encode_frame(c, &mut s, 0);
                for cl in &cert.clauses {
                    s.add_clause(&clause(cl));
                }
                violate_some(&mut s, cert.clauses.iter().map(|cl| cl.iter().map(|&l| primed(l)).collect()))
            }
            CertCheck::Safety => {
                encode_frame(c, &mut s, 0);
                for cl in &cert.clauses {
                    s.add_clause(&clause(cl));
                }
                vec![sat_lit(c.bad)]
            }
        };
        if let SolveResult::Sat(m) = s.solve(&goal) {
            return Ok(witness(c, check, &m));
        }
    }
    Ok(Certification::Pass)
}

/// Assumption literal that holds only when some clause in `clauses` is false.
fn violate_some(s: &mut Solver, clauses: impl Iterator<Item = Vec<Lit>>) -> Vec<Lit> {
    let mut selectors = Vec::new();
    for cl in clauses {
        let d = s.new_var().lit(false);
        for l in cl {
            s.add_clause(&[!d, !l]);
        }
        selectors.push(d);
    }
    let any = s.new_var().lit(false);
    let mut big = vec![!any];
    big.extend(selectors);
    s.add_clause(&big);
    vec![any]
}

fn witness(c: &Circuit, check: CertCheck, m: &Model) -> Certification {
    Certification::Fail {
        check,
        state: c.latches.iter().map(|l| m.value(sat_lit(l.state))).collect(),
        inputs: c.inputs.iter().map(|&i| m.value(sat_lit(i))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::AigBuilder;

    /// Two latches that always hold equal values; bad when they differ.
    fn twin() -> Circuit {
        let mut b = AigBuilder::new();
        let x = b.input("x");
        let p = b.latch("p", Some(false));
        let q = b.latch("q", Some(false));
        b.set_next(p, x);
        b.set_next(q, x);
        let d = b.xor(p, q);
        b.bad(d);
        b.finish().unwrap()
    }

    #[test]
    fn empty_certificate_with_false_bad() {
        let mut b = AigBuilder::new();
        let q = b.latch("q", None);
        b.set_next(q, !q);
        let c = b.finish().unwrap();
        assert_eq!(certify(&c, &Certificate::default()).unwrap(), Certification::Pass);
    }

    #[test]
    fn empty_certificate_with_reachable_bad() {
        let c = twin();
        match certify(&c, &Certificate::default()).unwrap() {
            Certification::Fail { check: CertCheck::Safety, state, .. } => assert_ne!(state[0], state[1]),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn equality_invariant_passes() {
        let c = twin();
        let (p, q) = (c.latches[0].state, c.latches[1].state);
        let cert = Certificate { clauses: vec![vec![!p, q], vec![p, !q]] };
        assert_eq!(certify(&c, &cert).unwrap(), Certification::Pass);
        let back = Certificate::parse(&cert.write()).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn non_inductive_and_non_initial() {
        let c = twin();
        let p = c.latches[0].state;
        let cert = Certificate { clauses: vec![vec![p]] };
        assert!(matches!(certify(&c, &cert).unwrap(), Certification::Fail { check: CertCheck::Initiation, .. }));
        let cert = Certificate { clauses: vec![vec![!p]] };
        assert!(matches!(certify(&c, &cert).unwrap(), Certification::Fail { check: CertCheck::Consecution, .. }));
    }

    #[test]
    fn empty_clause_round_trip() {
        let cert = Certificate::parse("0\n2 5\n").unwrap();
        assert_eq!(cert.write(), "0\n2 5\n");
        assert_eq!(cert.clauses[0], vec![AigLit::FALSE]);
    }

    #[test]
    fn rejects_non_latch() {
        let c = twin();
        let x = c.inputs[0];
        assert_eq!(certify(&c, &Certificate { clauses: vec![vec![x]] }), Err(CertificateError::NotALatch(x.code())));
        assert!(matches!(Certificate::parse("2 x"), Err(CertificateError::Syntax { line: 1, .. })));
    }
}
