//! Text proof format: `<lits> 0` additions, `d <lits> 0` deletions,
//! `t <lits> 0` trusted additions, `0` for the empty clause.

use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::Path;

use netrel_core::proof::{ProofSink, ProofStep, SinkError, StepKind};
use netrel_core::Lit;

use crate::error::{Error, ParseError, Result};

pub fn format_step(kind: StepKind, literals: &[Lit]) -> String {
    let mut line = String::new();
    match kind {
        StepKind::Addition => {}
        StepKind::Deletion => line.push_str("d "),
        StepKind::TrustedAddition => line.push_str("t "),
    }
    for lit in literals {
        line.push_str(&lit.to_dimacs().to_string());
        line.push(' ');
    }
    line.push('0');
    line
}

pub fn write_proof<W: Write>(steps: &[ProofStep], mut out: W) -> Result<()> {
    for step in steps {
        writeln!(out, "{}", format_step(step.kind, &step.literals))?;
    }
    out.flush()?;
    Ok(())
}

/// Parses one non-empty proof line.
pub fn parse_step(line: &str, number: usize) -> Result<ProofStep, ParseError> {
    let mut tokens = line.split_whitespace().peekable();
    let kind = match tokens.peek() {
        Some(&"d") => StepKind::Deletion,
        Some(&"t") => StepKind::TrustedAddition,
        Some(t) if t.starts_with(|c: char| c == '-' || c.is_ascii_digit()) => StepKind::Addition,
        Some(t) => return Err(ParseError::new(number, format!("unknown prefix `{t}`"))),
        None => return Err(ParseError::new(number, "empty step")),
    };
    if kind != StepKind::Addition {
        tokens.next();
    }
    let mut literals = Vec::new();
    let mut closed = false;
    for token in tokens {
        if closed {
            return Err(ParseError::new(number, "literal 0 inside a clause body"));
        }
        let value: i32 = token
            .parse()
            .map_err(|_| ParseError::new(number, format!("invalid literal `{token}`")))?;
        match Lit::from_dimacs(value) {
            Some(lit) => literals.push(lit),
            None => closed = true,
        }
    }
    if !closed {
        return Err(ParseError::new(number, "missing terminating 0"));
    }
    Ok(ProofStep { kind, literals })
}

/// Reads a whole proof; blank lines are skipped.
pub fn parse_proof<R: BufRead>(input: R) -> Result<Vec<ProofStep>> {
    let mut steps = Vec::new();
    for (index, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        steps.push(parse_step(&line, index + 1)?);
    }
    Ok(steps)
}

/// Streams proof steps to a writer, remembering the first I/O failure.
pub struct WriterSink<W: Write> {
    out: W,
    error: Option<io::Error>,
    steps: u64,
}

impl<W: Write> WriterSink<W> {
    pub fn new(out: W) -> Self {
        WriterSink { out, error: None, steps: 0 }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Flushes and returns the writer, or the first error seen.
    pub fn finish(mut self) -> Result<W> {
        if let Some(e) = self.error.take() {
            return Err(e.into());
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

impl<W: Write> ProofSink for WriterSink<W> {
    fn log(&mut self, kind: StepKind, literals: &[Lit]) -> Result<(), SinkError> {
        if self.error.is_some() {
            return Err(SinkError);
        }
        match writeln!(self.out, "{}", format_step(kind, literals)) {
            Ok(()) => {
                self.steps += 1;
                Ok(())
            }
            Err(e) => {
                self.error = Some(e);
                Err(SinkError)
            }
        }
    }
}

pub fn file_sink(path: &Path) -> Result<WriterSink<BufWriter<File>>> {
    let file = File::create(path).map_err(|e| Error::file(path, e))?;
    Ok(WriterSink::new(BufWriter::with_capacity(1 << 20, file)))
}
