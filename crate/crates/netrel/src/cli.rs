//! The `netrel` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use netrel_core::analyze::{counting_verdict, verify_solution, CountingVerdict};
use netrel_core::encode::{build_instance, BuildOptions, CnfInstance};
use netrel_core::net::{grids_orthogonal, RelationForm};
use netrel_core::proof::{Checker, Verdict};
use netrel_core::solve::{
    self, enumerate, EnumerateOptions, EnumerationResult, EnumerationStatus, PairDecoder, RestartPolicy, SolveError,
    SolveResult, SolverConfig,
};

use crate::dimacs::{read_dimacs, write_dimacs, write_map};
use crate::error::{Error, Result};
use crate::external::external_enumerate;
use crate::proof_io::{file_sink, parse_step};
use crate::solutions::{format_solution, read_solutions, write_solutions, SolutionRecord};
use crate::stats::{append_rows, RunStats};

/// Environment variable naming the default external solver command.
pub const SOLVER_ENV: &str = "NETREL_SOLVER";

pub const EXIT_OK: u8 = 0;
pub const EXIT_REJECT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "netrel", version, about = "Orthogonal Latin square pairs whose 4-nets carry two F2 relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the CNF instance for a case (or a small-order pairs-only instance).
    Encode(EncodeArgs),
    /// Enumerate every solution with the built-in or an external solver.
    Enumerate(EnumerateArgs),
    /// Independently verify a solutions file.
    Verify(VerifyArgs),
    /// Check a proof with trusted additions against its formula.
    CheckProof(CheckProofArgs),
    /// Run the exact point-type counting argument.
    Counting(CountingArgs),
    /// Solve a DIMACS file and print `s`/`v` lines (usable as an external solver).
    Solve(SolveArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Relation case 1..=5 (order 10).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub case: Option<u8>,
    /// Square order; without `--case` this builds a pairs-only instance.
    #[arg(long)]
    pub order: Option<usize>,
    /// Omit the relation clauses.
    #[arg(long)]
    pub no_relations: bool,
    /// Omit the symmetry-breaking clauses.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Add the A00 = B00 clauses.
    #[arg(long)]
    pub a00b00: bool,
}

impl InstanceArgs {
    /// Case id (0 without a case) and the built instance.
    pub fn build(&self) -> Result<(u8, CnfInstance)> {
        match self.case {
            Some(case) => {
                if self.order.is_some_and(|n| n != 10) {
                    return Err(Error::Usage("cases are defined for order 10 only".into()));
                }
                let form = RelationForm::case(case)?;
                let options = BuildOptions {
                    relations: !self.no_relations,
                    symmetry_breaking: !self.no_symmetry,
                    a00_b00_equality: self.a00b00,
                };
                Ok((case, build_instance(10, Some(&form), options)?))
            }
            None => {
                let Some(order) = self.order else {
                    return Err(Error::Usage("either --case or --order is required".into()));
                };
                if !self.no_relations {
                    return Err(Error::Usage("--order without --case requires --no-relations".into()));
                }
                let options = BuildOptions { a00_b00_equality: self.a00b00, ..BuildOptions::pairs_only() };
                Ok((0, build_instance(order, None, options)?))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Output DIMACS path.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional variable map sidecar.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Solver seeds; several seeds run independently and each adds a CSV row.
    #[arg(long, num_args = 1.., default_value = "0")]
    pub seed: Vec<u64>,
    /// Worker threads for multi-seed runs.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Solutions output file.
    #[arg(long)]
    pub solutions: Option<PathBuf>,
    /// Proof output file (built-in solver only); several seeds get a `.<seed>` suffix.
    #[arg(long)]
    pub proof: Option<PathBuf>,
    /// Append one timing row per seed to this CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// External solver command, run as `<cmd> <file.cnf>`.
    #[arg(long, env = SOLVER_ENV)]
    pub external_solver: Option<String>,
    /// Force the built-in solver even if the environment names an external one.
    #[arg(long)]
    pub builtin: bool,
    /// Stop after this many solutions.
    #[arg(long)]
    pub max_solutions: Option<usize>,
    /// Abort (exit 3) after this many conflicts.
    #[arg(long)]
    pub conflict_budget: Option<u64>,
    /// Restart policy of the built-in solver.
    #[arg(long, value_enum, default_value_t = Restarts::Glucose)]
    pub restarts: Restarts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Restarts {
    Glucose,
    Luby,
    Alternating,
}

impl From<Restarts> for RestartPolicy {
    fn from(r: Restarts) -> Self {
        match r {
            Restarts::Glucose => RestartPolicy::Glucose,
            Restarts::Luby => RestartPolicy::Luby,
            Restarts::Alternating => RestartPolicy::Alternating,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Solutions file.
    pub solutions: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct CheckProofArgs {
    /// Proof file.
    #[arg(long)]
    pub proof: PathBuf,
    /// Formula as DIMACS; otherwise the instance is rebuilt from the instance flags.
    #[arg(long, conflicts_with_all = ["case", "order"])]
    pub cnf: Option<PathBuf>,
    #[command(flatten)]
    pub instance: InstanceArgs,
}

#[derive(Debug, Args)]
pub struct CountingArgs {
    /// Case 1..=5; all cases when omitted.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    pub case: Option<u8>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub cnf: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Parses arguments and runs the command, mapping outcomes to exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => EXIT_RESOURCE,
        Error::Decode(_) => EXIT_REJECT,
        _ => EXIT_USAGE,
    }
}

pub fn execute(command: Command) -> Result<u8> {
    match command {
        Command::Encode(args) => cmd_encode(&args),
        Command::Enumerate(args) => cmd_enumerate(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::CheckProof(args) => cmd_check_proof(&args),
        Command::Counting(args) => cmd_counting(&args),
        Command::Solve(args) => cmd_solve(&args),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::file(path, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::file(path, e))
}

fn cmd_encode(args: &EncodeArgs) -> Result<u8> {
    let (_, instance) = args.instance.build()?;
    write_dimacs(&instance, create(&args.out)?)?;
    if let Some(map) = &args.map {
        let layout = instance.layout.expect("built instances carry a layout");
        write_map(&layout, create(map)?)?;
    }
    println!("variables {}", instance.var_count);
    println!("clauses {}", instance.clauses.len());
    for span in &instance.families {
        println!("{} {}", span.family.tag(), span.clauses.len());
    }
    Ok(EXIT_OK)
}

struct SeedRun {
    seed: u64,
    result: EnumerationResult,
    seconds: f64,
}

fn proof_path(base: &Path, seed: u64, several: bool) -> PathBuf {
    if several {
        let mut name = base.as_os_str().to_owned();
        name.push(format!(".{seed}"));
        PathBuf::from(name)
    } else {
        base.to_path_buf()
    }
}

fn run_seed(args: &EnumerateArgs, instance: &CnfInstance, seed: u64, several: bool) -> Result<SeedRun> {
    let decoder = PairDecoder::new(instance.layout.expect("built instances carry a layout"));
    let start = Instant::now();
    let external = args.external_solver.as_deref().filter(|_| !args.builtin);
    let result = if let Some(command) = external {
        external_enumerate(instance, command, &decoder, args.max_solutions)?
    } else {
        let config = SolverConfig {
            conflict_budget: args.conflict_budget,
            restarts: args.restarts.into(),
            ..SolverConfig::with_seed(seed)
        };
        let options = EnumerateOptions { config, max_solutions: args.max_solutions };
        let mut sink = match &args.proof {
            Some(base) => Some(file_sink(&proof_path(base, seed, several))?),
            None => None,
        };
        let outcome = enumerate(instance, &decoder, options, sink.as_mut().map(|s| s as _));
        let sink_result = sink.map(|s| s.finish()).transpose();
        let result = match outcome {
            Ok(r) => r,
            Err(SolveError::BudgetExhausted { conflicts }) => return Err(Error::Budget { conflicts }),
            Err(SolveError::ProofSink) => {
                return Err(sink_result.err().unwrap_or_else(|| Error::Io(io::Error::other("proof sink failed"))))
            }
            Err(SolveError::Callback(e)) => return Err(e.into()),
        };
        sink_result?;
        result
    };
    Ok(SeedRun { seed, result, seconds: start.elapsed().as_secs_f64() })
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<u8> {
    let external = args.external_solver.is_some() && !args.builtin;
    if external && args.proof.is_some() {
        return Err(Error::Usage("proofs are only produced by the built-in solver".into()));
    }
    if args.jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    let (case_id, instance) = args.instance.build()?;
    let several = args.seed.len() > 1;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    let runs: Vec<Result<SeedRun>> =
        pool.install(|| args.seed.par_iter().map(|&seed| run_seed(args, &instance, seed, several)).collect());
    let runs: Vec<SeedRun> = runs.into_iter().collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut texts: Option<Vec<String>> = None;
    let mut consistent = true;
    for run in &runs {
        let status = match run.result.status {
            EnumerationStatus::Exhausted => "exhausted",
            EnumerationStatus::SolutionLimit => "limit",
        };
        let stats = run.result.stats;
        println!(
            "case {case_id} seed {}: {} solutions ({status}) conflicts={} decisions={} seconds={:.3}",
            run.seed,
            run.result.solutions.len(),
            stats.conflicts,
            stats.decisions,
            run.seconds
        );
        let mut lines: Vec<String> = run.result.solutions.iter().map(|p| format_solution(case_id, p)).collect();
        lines.sort();
        match &texts {
            None => texts = Some(lines),
            Some(first) => consistent &= run.result.status == EnumerationStatus::SolutionLimit || *first == lines,
        }
        rows.push(RunStats {
            case_id,
            seed: run.seed,
            solutions: run.result.solutions.len(),
            conflicts: stats.conflicts,
            decisions: stats.decisions,
            seconds: run.seconds,
        });
    }
    if let Some(path) = &args.solutions {
        write_solutions(texts.as_deref().unwrap_or(&[]), create(path)?)?;
    }
    if let Some(path) = &args.csv {
        append_rows(path, &rows)?;
    }
    if !consistent {
        eprintln!("error: seeds produced different solution sets");
        return Ok(EXIT_REJECT);
    }
    Ok(EXIT_OK)
}

/// One verification report line and whether the record passed.
fn verify_record(index: usize, record: &SolutionRecord) -> Result<(String, bool, Option<usize>)> {
    if record.case_id == 0 {
        let latin = record.a.is_latin() && record.b.is_latin();
        let ortho = grids_orthogonal(&record.a, &record.b)?;
        let line = format!("0,{index},{},{},-,-,-------", latin as u8, ortho as u8);
        return Ok((line, latin && ortho, None));
    }
    let form = RelationForm::case(record.case_id)?;
    if record.a.order() != form.order() {
        return Err(Error::Usage(format!("record {index}: case {} needs order 10", record.case_id)));
    }
    let report = verify_solution(&record.a, &record.b, &form)?;
    let line = format!(
        "{},{index},{},{},{},{},{}",
        record.case_id,
        (report.latin_a && report.latin_b) as u8,
        report.orthogonal as u8,
        report.relations_ok as u8,
        report.rank,
        report.minimality.bits()
    );
    Ok((line, report.passes(), Some(report.rank)))
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    if args.jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }
    let records = read_solutions(open(&args.solutions)?)?;
    if records.is_empty() {
        eprintln!("warning: {} contains no records", args.solutions.display());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    let results: Vec<Result<(String, bool, Option<usize>)>> =
        pool.install(|| records.par_iter().enumerate().map(|(i, r)| verify_record(i, r)).collect());

    let mut out: Box<dyn Write> = match &args.report {
        Some(path) => Box::new(create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut failures = Vec::new();
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    for (index, result) in results.into_iter().enumerate() {
        let (line, passed, rank) = result?;
        writeln!(out, "{line}")?;
        if !passed {
            failures.push(index);
        }
        if let Some(rank) = rank {
            *ranks.entry(rank).or_default() += 1;
        }
    }
    out.flush()?;
    let histogram: Vec<String> = ranks.iter().map(|(r, c)| format!("{r}:{c}")).collect();
    eprintln!("verified {} records, {} failed; ranks {}", records.len(), failures.len(), histogram.join(" "));
    for index in &failures {
        eprintln!("FAIL index {index}");
    }
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_REJECT })
}

fn cmd_check_proof(args: &CheckProofArgs) -> Result<u8> {
    let formula = match &args.cnf {
        Some(path) => read_dimacs(open(path)?)?,
        None => args.instance.build()?.1,
    };
    let mut checker = Checker::new(&formula);
    let reader = open(&args.proof)?;
    for (index, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::file(&args.proof, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let step = parse_step(&line, index + 1)?;
        if checker.apply(&step).is_err() {
            break;
        }
    }
    match checker.finish() {
        Verdict::Accept { trusted, steps } => {
            println!("VERIFIED trusted={trusted} steps={steps}");
            Ok(EXIT_OK)
        }
        Verdict::Reject { step, reason } => {
            println!("REJECTED step={step} reason={reason}");
            Ok(EXIT_REJECT)
        }
    }
}

pub fn format_verdict(case_id: u8, verdict: &CountingVerdict) -> String {
    let mut line = format!("case {case_id}: {} range={}", verdict.kind, verdict.range);
    if let Some(w) = &verdict.witness {
        line.push_str(" witness: ");
        line.push_str(w);
    }
    line
}

fn cmd_counting(args: &CountingArgs) -> Result<u8> {
    let cases: Vec<u8> = match args.case {
        Some(c) => vec![c],
        None => (1..=5).collect(),
    };
    for case in cases {
        let verdict = counting_verdict(&RelationForm::case(case)?);
        println!("{}", format_verdict(case, &verdict));
    }
    Ok(EXIT_OK)
}

fn cmd_solve(args: &SolveArgs) -> Result<u8> {
    let formula = read_dimacs(open(&args.cnf)?)?;
    let result = solve::solve(&formula, SolverConfig::with_seed(args.seed), None).map_err(|e| match e {
        SolveError::BudgetExhausted { conflicts } => Error::Budget { conflicts },
        other => Error::Io(io::Error::other(other.to_string())),
    })?;
    let mut out = io::stdout().lock();
    match result {
        SolveResult::Unsat => writeln!(out, "s UNSATISFIABLE")?,
        SolveResult::Sat(model) => {
            writeln!(out, "s SATISFIABLE")?;
            let mut line = String::from("v");
            for (i, &value) in model.iter().enumerate() {
                let v = i as i64 + 1;
                line.push(' ');
                line.push_str(&(if value { v } else { -v }).to_string());
                if line.len() > 72 {
                    writeln!(out, "{line}")?;
                    line = String::from("v");
                }
            }
            writeln!(out, "{line} 0")?;
        }
    }
    Ok(EXIT_OK)
}
