//! ASCII AIGER 1.9 (`aag`) reader and writer.

use std::fmt::Write as _;

use super::{AndGate, Circuit, Latch, Lit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("malformed header: {0}")]
    Header(String),
    #[error("unexpected end of file")]
    Truncated,
    #[error("malformed line: expected {0}")]
    Malformed(&'static str),
    #[error("literal {0} exceeds maximum variable index {1}")]
    LiteralOutOfRange(u32, u32),
    #[error("variable {0} is defined more than once")]
    DuplicateDefinition(u32),
    #[error("variable {0} is used but never defined")]
    UndefinedVariable(u32),
    #[error("cyclic AND definition through variable {0}")]
    Cycle(u32),
    #[error("invalid definition literal {0}")]
    BadDefinition(u32),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("malformed symbol table entry")]
    Symbol,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &'static str, min: usize, max: usize) -> Result<(usize, Vec<u32>), ParseError> {
        let (idx, text) = self.iter.next().ok_or(err(self.last + 1, ParseErrorKind::Truncated))?;
        self.last = idx + 1;
        let nums = text
            .split_whitespace()
            .map(str::parse::<u32>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err(idx + 1, ParseErrorKind::Malformed(what)))?;
        if nums.len() < min || nums.len() > max {
            return Err(err(idx + 1, ParseErrorKind::Malformed(what)));
        }
        Ok((idx + 1, nums))
    }
}

/// Parses an ASCII AIGER file.
///
/// The outputs section is kept as named outputs; the property is taken from the
/// single `B` entry (absent means the constant-false literal).
pub fn parse_aiger(text: &[u8]) -> Result<Circuit, ParseError> {
    let text = std::str::from_utf8(text).map_err(|_| err(0, ParseErrorKind::Utf8))?;
    let mut lines = Lines { iter: text.lines().enumerate(), last: 0 };
    let (_, header) = lines.iter.next().ok_or(err(1, ParseErrorKind::Header("empty file".into())))?;
    lines.last = 1;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("aag") {
        return Err(err(1, ParseErrorKind::Header("expected 'aag'".into())));
    }
    let counts = fields
        .map(str::parse::<u32>)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| err(1, ParseErrorKind::Header("non-numeric field".into())))?;
    if counts.len() < 5 || counts.len() > 9 {
        return Err(err(1, ParseErrorKind::Header(format!("expected 5 to 9 counts, found {}", counts.len()))));
    }
    let count = |i: usize| counts.get(i).copied().unwrap_or(0);
    let (max_var, ni, nl, no, na, nb, nc) = (count(0), count(1), count(2), count(3), count(4), count(5), count(6));
    if count(7) != 0 || count(8) != 0 {
        return Err(err(1, ParseErrorKind::Unsupported("justice and fairness sections")));
    }
    if nb > 1 {
        return Err(err(1, ParseErrorKind::Unsupported("more than one bad-state property")));
    }
    if (ni as u64) + (nl as u64) + (na as u64) > max_var as u64 {
        return Err(err(1, ParseErrorKind::Header("I + L + A exceeds M".into())));
    }

    let in_range = |line: usize, code: u32| -> Result<Lit, ParseError> {
        if code >> 1 > max_var {
            Err(err(line, ParseErrorKind::LiteralOutOfRange(code, max_var)))
        } else {
            Ok(Lit::from_code(code))
        }
    };
    // Line of definition per variable, 0 when undefined.
    let mut def_line = vec![0usize; max_var as usize + 1];
    let mut define = |line: usize, code: u32| -> Result<Lit, ParseError> {
        let lit = in_range(line, code)?;
        if lit.is_negated() || lit.is_const() {
            return Err(err(line, ParseErrorKind::BadDefinition(code)));
        }
        if def_line[lit.var() as usize] != 0 {
            return Err(err(line, ParseErrorKind::DuplicateDefinition(lit.var())));
        }
        def_line[lit.var() as usize] = line;
        Ok(lit)
    };
    let mut uses: Vec<(usize, Lit)> = Vec::new();

    let mut c = Circuit::empty();
    c.max_var = max_var;
    for _ in 0..ni {
        let (line, nums) = lines.next_numbers("input literal", 1, 1)?;
        c.inputs.push(define(line, nums[0])?);
    }
    for _ in 0..nl {
        let (line, nums) = lines.next_numbers("latch definition", 2, 3)?;
        let state = define(line, nums[0])?;
        let next = in_range(line, nums[1])?;
        uses.push((line, next));
        let init = match nums.get(2) {
            None | Some(0) => Some(false),
            Some(1) => Some(true),
            Some(&r) if r == nums[0] => None,
            Some(_) => return Err(err(line, ParseErrorKind::Malformed("latch reset 0, 1 or the latch literal"))),
        };
        c.latches.push(Latch { state, next, init });
    }
    for _ in 0..no {
        let (line, nums) = lines.next_numbers("output literal", 1, 1)?;
        let lit = in_range(line, nums[0])?;
        uses.push((line, lit));
        c.outputs.push(lit);
    }
    for _ in 0..nb {
        let (line, nums) = lines.next_numbers("bad literal", 1, 1)?;
        c.bad = in_range(line, nums[0])?;
        uses.push((line, c.bad));
    }
    for _ in 0..nc {
        let (line, nums) = lines.next_numbers("constraint literal", 1, 1)?;
        let lit = in_range(line, nums[0])?;
        uses.push((line, lit));
        c.constraints.push(lit);
    }
    let mut and_lines = Vec::with_capacity(na as usize);
    for _ in 0..na {
        let (line, nums) = lines.next_numbers("AND definition", 3, 3)?;
        let out = define(line, nums[0])?;
        let lhs = in_range(line, nums[1])?;
        let rhs = in_range(line, nums[2])?;
        uses.push((line, lhs));
        uses.push((line, rhs));
        c.ands.push(AndGate { out, lhs, rhs });
        and_lines.push(line);
    }
    for &(line, lit) in &uses {
        if lit.var() != 0 && def_line[lit.var() as usize] == 0 {
            return Err(err(line, ParseErrorKind::UndefinedVariable(lit.var())));
        }
    }

    for (idx, text) in lines.iter.by_ref() {
        let line = idx + 1;
        let text = text.trim_end();
        if text == "c" {
            break;
        }
        if text.is_empty() {
            continue;
        }
        let (tag, rest) = text.split_at(1);
        let (pos, name) = rest.split_once(' ').ok_or(err(line, ParseErrorKind::Symbol))?;
        let pos: usize = pos.parse().map_err(|_| err(line, ParseErrorKind::Symbol))?;
        let (table, limit) = match tag {
            "i" => (&mut c.symbols.inputs, ni),
            "l" => (&mut c.symbols.latches, nl),
            "o" => (&mut c.symbols.outputs, no),
            "b" | "c" => continue,
            _ => return Err(err(line, ParseErrorKind::Symbol)),
        };
        if pos >= limit as usize {
            return Err(err(line, ParseErrorKind::Symbol));
        }
        table.insert(pos, name.to_string());
    }

    topo_sort(&mut c, &and_lines)?;
    Ok(c)
}

/// Reorders AND gates so operands precede uses; already-ordered input is unchanged.
fn topo_sort(c: &mut Circuit, and_lines: &[usize]) -> Result<(), ParseError> {
    let mut gate_of = vec![usize::MAX; c.max_var as usize + 1];
    for (i, g) in c.ands.iter().enumerate() {
        gate_of[g.out.var() as usize] = i;
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; c.ands.len()];
    let mut order = Vec::with_capacity(c.ands.len());
    for root in 0..c.ands.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0u8)];
        state[root] = 1;
        while let Some(&mut (g, ref mut operand)) = stack.last_mut() {
            if *operand == 2 {
                state[g] = 2;
                order.push(g);
                stack.pop();
                continue;
            }
            let lit = if *operand == 0 { c.ands[g].lhs } else { c.ands[g].rhs };
            *operand += 1;
            let dep = gate_of[lit.var() as usize];
            if dep == usize::MAX {
                continue;
            }
            match state[dep] {
                0 => {
                    state[dep] = 1;
                    stack.push((dep, 0));
                }
                1 => return Err(err(and_lines[dep], ParseErrorKind::Cycle(c.ands[dep].out.var()))),
                _ => {}
            }
        }
    }
    let ands = std::mem::take(&mut c.ands);
    c.ands = order.into_iter().map(|i| ands[i]).collect();
    Ok(())
}

/// Writes the canonical ASCII form: latch resets are omitted when zero, and
/// the `B`/`C` header fields appear only when needed.
pub fn write_aiger(c: &Circuit) -> String {
    let nb = usize::from(c.bad != Lit::FALSE);
    let mut out = format!(
        "aag {} {} {} {} {}",
        c.max_var,
        c.inputs.len(),
        c.latches.len(),
        c.outputs.len(),
        c.ands.len()
    );
    if nb > 0 || !c.constraints.is_empty() {
        write!(out, " {nb}").unwrap();
    }
    if !c.constraints.is_empty() {
        write!(out, " {}", c.constraints.len()).unwrap();
    }
    out.push('\n');
    for i in &c.inputs {
        writeln!(out, "{i}").unwrap();
    }
    for l in &c.latches {
        match l.init {
            Some(false) => writeln!(out, "{} {}", l.state, l.next),
            Some(true) => writeln!(out, "{} {} 1", l.state, l.next),
            None => writeln!(out, "{} {} {}", l.state, l.next, l.state),
        }
        .unwrap();
    }
    for o in &c.outputs {
        writeln!(out, "{o}").unwrap();
    }
    if nb > 0 {
        writeln!(out, "{}", c.bad).unwrap();
    }
    for l in &c.constraints {
        writeln!(out, "{l}").unwrap();
    }
    for g in &c.ands {
        writeln!(out, "{} {} {}", g.out, g.lhs, g.rhs).unwrap();
    }
    write_symbols(&mut out, 'i', &c.symbols.inputs);
    write_symbols(&mut out, 'l', &c.symbols.latches);
    write_symbols(&mut out, 'o', &c.symbols.outputs);
    out
}

fn write_symbols(out: &mut String, tag: char, table: &std::collections::BTreeMap<usize, String>) {
    for (pos, name) in table {
        writeln!(out, "{tag}{pos} {name}").unwrap();
    }
}
