//! Enumeration through an external DIMACS solver, one process per model.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::process::Command;

use netrel_core::encode::CnfInstance;
use netrel_core::solve::{EnumerationResult, EnumerationStatus, PairDecoder, SolverStats};
use netrel_core::Lit;

use crate::dimacs::write_dimacs;
use crate::error::{Error, Result};

/// Outcome of a single solver call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    Sat(Vec<bool>),
    Unsat,
}

/// Parses `s SATISFIABLE` / `s UNSATISFIABLE` and `v` lines. Variables missing
/// from the model are read as false.
pub fn parse_solver_output(output: &str, var_count: u32) -> Result<SolverAnswer> {
    let mut status = None;
    let mut model = vec![false; var_count as usize];
    let mut terminated = false;
    for line in output.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = match rest.trim() {
                "SATISFIABLE" => Some(true),
                "UNSATISFIABLE" => Some(false),
                other => return Err(Error::External(format!("unknown status `{other}`"))),
            };
        } else if let Some(rest) = line.strip_prefix("v") {
            for token in rest.split_whitespace() {
                let value: i32 = token
                    .parse()
                    .map_err(|_| Error::External(format!("bad model literal `{token}`")))?;
                match Lit::from_dimacs(value) {
                    None => terminated = true,
                    Some(lit) => {
                        let index = lit.var().index();
                        if index >= model.len() {
                            return Err(Error::External(format!("model literal {value} out of range")));
                        }
                        model[index] = !lit.is_negative();
                    }
                }
            }
        }
    }
    match status {
        Some(true) if terminated => Ok(SolverAnswer::Sat(model)),
        Some(true) => Err(Error::External("model not terminated by 0".into())),
        Some(false) => Ok(SolverAnswer::Unsat),
        None => Err(Error::External(format!("no status line in solver output:\n{output}"))),
    }
}

/// Runs `command <cnf>` through the shell and parses its answer.
pub fn run_solver(command: &str, cnf: &Path, var_count: u32) -> Result<SolverAnswer> {
    let output = Command::new("sh")
        .arg("-c")
        .arg(format!("{command} \"$0\""))
        .arg(cnf)
        .output()
        .map_err(|e| Error::External(format!("cannot start `{command}`: {e}")))?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    parse_solver_output(&stdout, var_count).map_err(|e| match e {
        Error::External(msg) if !output.status.success() => Error::External(format!(
            "{msg}\nexit status {}; stderr:\n{}",
            output.status,
            String::from_utf8_lossy(&output.stderr)
        )),
        other => other,
    })
}

/// Repeatedly solves a working copy of `instance`, appending the blocking clause of
/// each model, until the solver reports unsatisfiable or `max_solutions` is reached.
pub fn external_enumerate(
    instance: &CnfInstance,
    command: &str,
    decoder: &PairDecoder,
    max_solutions: Option<usize>,
) -> Result<EnumerationResult> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("work.cnf");
    let mut work = instance.clone();
    let mut solutions = Vec::new();
    let mut stats = SolverStats::default();
    loop {
        if max_solutions.is_some_and(|m| solutions.len() >= m) {
            return Ok(EnumerationResult { solutions, stats, status: EnumerationStatus::SolutionLimit });
        }
        let file = File::create(&path).map_err(|e| Error::file(&path, e))?;
        write_dimacs(&work, BufWriter::new(file))?;
        match run_solver(command, &path, work.var_count)? {
            SolverAnswer::Unsat => {
                return Ok(EnumerationResult { solutions, stats, status: EnumerationStatus::Exhausted });
            }
            SolverAnswer::Sat(model) => {
                if !work.is_satisfied_by(&model) {
                    return Err(Error::External("reported model violates the formula".into()));
                }
                let pair = decoder.decode(&model)?;
                work.clauses.push(decoder.blocking_clause(&pair));
                stats.models += 1;
                solutions.push(pair);
            }
        }
    }
}
