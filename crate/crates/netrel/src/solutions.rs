//! One solution per line: case id, the symbols of A row-major, then those of B,
//! space-separated.

use std::io::{BufRead, Write};

use netrel_core::net::{Grid, MolsPair};

use crate::error::{ParseError, Result};

/// A parsed solution record. Case id 0 marks an instance without relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub case_id: u8,
    pub a: Grid,
    pub b: Grid,
}

pub fn format_grids(case_id: u8, a: &Grid, b: &Grid) -> String {
    let mut line = case_id.to_string();
    for &s in a.cells().iter().chain(b.cells()) {
        line.push(' ');
        line.push_str(&s.to_string());
    }
    line
}

pub fn format_solution(case_id: u8, pair: &MolsPair) -> String {
    format_grids(case_id, pair.a().grid(), pair.b().grid())
}

/// Parses one record; the order is inferred from the token count `1 + 2n^2`.
pub fn parse_solution(line: &str, number: usize) -> Result<SolutionRecord, ParseError> {
    let tokens: Vec<&str> = line.split(' ').collect();
    if line.ends_with(char::is_whitespace) || line.contains("  ") || line.contains('\t') {
        return Err(ParseError::new(number, "fields must be separated by single spaces"));
    }
    let cells = tokens.len().saturating_sub(1);
    let n = (1..=16).find(|n| 2 * n * n == cells).ok_or_else(|| {
        ParseError::new(number, format!("expected 1 + 2n^2 fields, found {}", tokens.len()))
    })?;
    let case_id: u8 = tokens[0]
        .parse()
        .ok()
        .filter(|&c| c <= 5)
        .ok_or_else(|| ParseError::new(number, format!("invalid case id `{}`", tokens[0])))?;
    let mut symbols = Vec::with_capacity(cells);
    for token in &tokens[1..] {
        let s: u8 = token
            .parse()
            .ok()
            .filter(|&s| (s as usize) < n)
            .ok_or_else(|| ParseError::new(number, format!("invalid symbol `{token}`")))?;
        symbols.push(s);
    }
    let b = symbols.split_off(n * n);
    let grid = |cells| Grid::new(n, cells).map_err(|e| ParseError::new(number, e.to_string()));
    Ok(SolutionRecord { case_id, a: grid(symbols)?, b: grid(b)? })
}

/// Reads every record; lines must end in LF only.
pub fn read_solutions<R: BufRead>(mut input: R) -> Result<Vec<SolutionRecord>> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut number = 0;
    loop {
        buf.clear();
        if input.read_line(&mut buf)? == 0 {
            break;
        }
        number += 1;
        let line = buf.strip_suffix('\n').unwrap_or(&buf);
        if line.is_empty() {
            continue;
        }
        out.push(parse_solution(line, number)?);
    }
    Ok(out)
}

/// Writes records sorted by their text form, one per line.
pub fn write_solutions<W: Write>(lines: &[String], mut out: W) -> Result<()> {
    let mut sorted: Vec<&String> = lines.iter().collect();
    sorted.sort();
    for line in sorted {
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
