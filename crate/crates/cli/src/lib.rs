//! Driver functions behind the `nicheck` binary.

mod check;
mod matrix;
mod witness;

use std::fmt;
use std::path::Path;

use anyhow::{Context, Result};
use nicheck::circuit::{parse_aiger, parse_pairing, Circuit};

pub use check::{run_bmc, run_certify, run_check, Outcome, RunConfig};
pub use matrix::{run_matrix, Cell, MatrixConfig, CONFIGS};
pub use witness::{parse_witness, write_witness};

/// A problem with how the tool was invoked, as opposed to a failure while running.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub(crate) fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Exit status for an error: usage problems map to 10, everything else to 20.
pub fn error_exit_code(e: &anyhow::Error) -> i32 {
    if e.chain().any(|c| c.is::<UsageError>()) {
        10
    } else {
        20
    }
}

pub(crate) fn read_circuit(path: &Path) -> Result<Circuit> {
    let text = std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_aiger(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub(crate) fn read_pairing(path: &Path, c: &Circuit) -> Result<nicheck::SymmetryMap> {
    let text = std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_pairing(&text, c).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Writes `<prefix>.aag` and `<prefix>.pair` for a benchmark instance and
/// returns the expected verdict. `predicates` adds the inequivalence latches.
pub fn run_benchgen(
    family: &str,
    size: usize,
    constrained: bool,
    predicates: bool,
    prefix: &Path,
) -> Result<nicheck::selfcomp::Expected> {
    use nicheck::selfcomp::{compose_benchmark, BenchError, Family};
    let family: Family = family.parse().map_err(|e: BenchError| usage(e.to_string()))?;
    let b = compose_benchmark(family, size, constrained, predicates).map_err(|e| match e {
        BenchError::ZeroSize | BenchError::UnknownFamily(_) => usage(e.to_string()),
        other => anyhow::Error::new(other),
    })?;
    let with_ext = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        std::path::PathBuf::from(p)
    };
    write_file(&with_ext(".aag"), &nicheck::circuit::write_aiger(&b.circuit))?;
    write_file(&with_ext(".pair"), &nicheck::circuit::write_pairing(&b.map))?;
    Ok(b.expected)
}
