//! Counterexamples in the AIGER witness layout: `1`, the bad property `b0`,
//! the initial latch values, one input line per cycle, and a closing `.`.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use nicheck::ic3::Trace;
use nicheck::Circuit;

fn bits(v: &[bool]) -> String {
    v.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn write_witness(c: &Circuit, trace: &Trace) -> String {
    let mut free = trace.init.iter();
    let init: Vec<bool> = c.latches.iter().map(|l| l.init.unwrap_or_else(|| *free.next().unwrap())).collect();
    let mut s = String::from("1\nb0\n");
    writeln!(s, "{}", bits(&init)).unwrap();
    for v in &trace.inputs {
        writeln!(s, "{}", bits(v)).unwrap();
    }
    s.push_str(".\n");
    s
}

fn parse_bits(line: &str, len: usize, what: &str) -> Result<Vec<bool>> {
    if line.len() != len {
        bail!("{what}: expected {len} values, got {}", line.len());
    }
    line.chars()
        .map(|ch| match ch {
            '0' | 'x' => Ok(false),
            '1' => Ok(true),
            other => bail!("{what}: unexpected character '{other}'"),
        })
        .collect()
}

/// Reads a witness back into a trace for `c`. Unknown (`x`) values read as 0.
pub fn parse_witness(c: &Circuit, text: &str) -> Result<Trace> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('c'));
    if lines.next() != Some("1") {
        bail!("witness does not start with a SAT status line");
    }
    lines.next().context("missing property line")?;
    let init_line = lines.next().context("missing initial state line")?;
    let init_all = parse_bits(init_line, c.num_latches(), "initial state")?;
    let init = c.latches.iter().zip(&init_all).filter(|(l, _)| l.init.is_none()).map(|(_, &v)| v).collect();
    let mut inputs = Vec::new();
    for (i, line) in lines.by_ref().enumerate() {
        if line == "." {
            return Ok(Trace { init, inputs });
        }
        inputs.push(parse_bits(line, c.num_inputs(), &format!("cycle {i}"))?);
    }
    bail!("witness is not terminated by '.'")
}
