//! DIMACS CNF reading and writing, plus the variable map sidecar.

use std::io::{BufRead, Write};

use netrel_core::encode::{Block, CnfInstance, VarLayout};
use netrel_core::Lit;

use crate::error::{Error, ParseError, Result};

const COMMENT: &[&str] = &[
    "c netrel CNF: orthogonal Latin square pair with two net relations",
    "c variables: A_ijk = i*n^2 + j*n + k + 1, then B, then Z = A*B^-1, then auxiliaries",
];

/// Writes `instance` with the fixed comment block, header and one clause per line.
pub fn write_dimacs<W: Write>(instance: &CnfInstance, mut out: W) -> Result<()> {
    for line in COMMENT {
        writeln!(out, "{line}")?;
    }
    if let Some(layout) = instance.layout {
        writeln!(out, "c order {}", layout.order())?;
    }
    for span in &instance.families {
        writeln!(out, "c family {} {} {}", span.family.tag(), span.clauses.start, span.clauses.len())?;
    }
    writeln!(out, "p cnf {} {}", instance.var_count, instance.clauses.len())?;
    write_clauses(&instance.clauses, &mut out)?;
    out.flush()?;
    Ok(())
}

pub(crate) fn write_clauses<W: Write>(clauses: &[Vec<Lit>], out: &mut W) -> Result<()> {
    let mut line = String::new();
    for clause in clauses {
        line.clear();
        for lit in clause {
            line.push_str(&lit.to_dimacs().to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Reads a DIMACS file into a bare instance (no layout or family information).
///
/// Clauses may span lines; every clause must be closed by `0` and the clause
/// count must match the header.
pub fn read_dimacs<R: BufRead>(input: R) -> Result<CnfInstance> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last_line = 0;
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        let number = index + 1;
        last_line = number;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(number, "duplicate header").into());
            }
            header = Some(parse_header(trimmed).ok_or_else(|| ParseError::new(number, "malformed header"))?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(ParseError::new(number, "clause before header").into());
        };
        for token in trimmed.split_whitespace() {
            let value: i32 = token
                .parse()
                .map_err(|_| ParseError::new(number, format!("invalid literal `{token}`")))?;
            if value == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if value.unsigned_abs() > vars {
                return Err(ParseError::new(number, format!("literal {value} out of range 1..={vars}")).into());
            }
            current.push(Lit::from_dimacs(value).expect("nonzero literal"));
        }
    }
    let Some((vars, count)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing header").into());
    };
    if !current.is_empty() {
        return Err(ParseError::new(last_line, "clause without terminating 0").into());
    }
    if clauses.len() != count {
        return Err(ParseError::new(last_line, format!("header declares {count} clauses, found {}", clauses.len())).into());
    }
    Ok(CnfInstance::from_clauses(vars, clauses))
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let vars = parts.next()?.parse().ok()?;
    let clauses = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((vars, clauses))
}

/// Writes `<block> i j k <var>` for every cell variable of the layout.
pub fn write_map<W: Write>(layout: &VarLayout, mut out: W) -> Result<()> {
    let n = layout.order();
    for block in [Block::A, Block::B, Block::Z] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    writeln!(out, "{} {i} {j} {k} {}", block.name(), layout.var(block, i, j, k).id())?;
                }
            }
        }
    }
    out.flush().map_err(Error::from)
}
