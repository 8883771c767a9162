//! CDCL search and all-solutions enumeration of orthogonal pairs.

mod cdcl;
mod heap;

use alloc::vec::Vec;

pub use cdcl::{luby, ModelAction, SearchEnd, SolveResult, Solver};

/// When to restart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestartPolicy {
    /// `restart_base` times the Luby sequence.
    Luby,
    /// Whenever the recent LBD average rises above the long-run average.
    Glucose,
    /// Phases of `Glucose` and of Luby with a 16x longer base, doubling in length.
    Alternating,
}

use crate::encode::{Block, CnfInstance, VarLayout};
use crate::lit::Lit;
use crate::net::{Grid, MolsPair, NetError};
use crate::proof::ProofSink;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    /// Multiplicative activity decay per conflict.
    pub var_decay: f64,
    pub restarts: RestartPolicy,
    /// Conflicts per Luby unit between restarts.
    pub restart_base: u64,
    /// Conflicts before the first learnt-clause reduction.
    pub first_reduce: u64,
    pub reduce_increment: u64,
    /// Learnt clauses with LBD at or below this are never deleted.
    pub keep_glue: u32,
    /// Give up after this many conflicts.
    pub conflict_budget: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            var_decay: 0.95,
            restarts: RestartPolicy::Glucose,
            restart_base: 64,
            first_reduce: 2000,
            reduce_increment: 300,
            keep_glue: 2,
            conflict_budget: None,
        }
    }
}

impl SolverConfig {
    pub fn with_seed(seed: u64) -> Self {
        SolverConfig { seed, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub models: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError<E = core::convert::Infallible> {
    #[error("conflict budget exhausted after {conflicts} conflicts")]
    BudgetExhausted { conflicts: u64 },
    #[error("proof sink failed")]
    ProofSink,
    #[error("model callback failed")]
    Callback(E),
}

/// A model that does not decode to an orthogonal pair: an internal soundness failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("cell ({row},{col}) of {block:?} has {count} symbols")]
    CellNotOneHot { block: Block, row: usize, col: usize, count: usize },
    #[error("decoded pair is invalid: {0}")]
    Invalid(#[from] NetError),
}

/// Reads `(A, B)` out of a model using the A and B blocks only.
#[derive(Debug, Clone, Copy)]
pub struct PairDecoder {
    layout: VarLayout,
}

impl PairDecoder {
    pub fn new(layout: VarLayout) -> Self {
        PairDecoder { layout }
    }

    pub fn layout(&self) -> &VarLayout {
        &self.layout
    }

    fn decode_block(&self, model: &[bool], block: Block) -> Result<Grid, DecodeError> {
        let n = self.layout.order();
        let mut cells = Vec::with_capacity(n * n);
        for row in 0..n {
            for col in 0..n {
                let symbols: Vec<usize> = (0..n)
                    .filter(|&k| model[self.layout.var(block, row, col, k).index()])
                    .collect();
                if symbols.len() != 1 {
                    return Err(DecodeError::CellNotOneHot { block, row, col, count: symbols.len() });
                }
                cells.push(symbols[0] as u8);
            }
        }
        Ok(Grid::new(n, cells)?)
    }

    pub fn decode(&self, model: &[bool]) -> Result<MolsPair, DecodeError> {
        let a = self.decode_block(model, Block::A)?;
        let b = self.decode_block(model, Block::B)?;
        Ok(MolsPair::from_grids(a, b)?)
    }

    /// Blocks `pair` on the upper-left `(n-1) x (n-1)` cells of both squares;
    /// the last row and column are forced by the Latin constraints.
    pub fn blocking_clause(&self, pair: &MolsPair) -> Vec<Lit> {
        let n = self.layout.order();
        let mut clause = Vec::with_capacity(2 * (n - 1) * (n - 1));
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                clause.push(self.layout.a(i, j, pair.a().get(i, j)).negative());
                clause.push(self.layout.b(i, j, pair.b().get(i, j)).negative());
            }
        }
        clause
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// The instance with all blocking clauses is unsatisfiable: every solution was found.
    Exhausted,
    /// Stopped after the requested number of solutions.
    SolutionLimit,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub solutions: Vec<MolsPair>,
    pub stats: SolverStats,
    pub status: EnumerationStatus,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    pub config: SolverConfig,
    pub max_solutions: Option<usize>,
}

/// Finds every orthogonal pair admitted by `instance`, adding a blocking clause
/// (logged as a trusted addition) after each one.
pub fn enumerate(
    instance: &CnfInstance,
    decoder: &PairDecoder,
    options: EnumerateOptions,
    proof: Option<&mut dyn ProofSink>,
) -> Result<EnumerationResult, SolveError<DecodeError>> {
    let mut solver = Solver::new(instance.var_count as usize, options.config);
    if let Some(sink) = proof {
        solver.set_proof_sink(sink);
    }
    for clause in &instance.clauses {
        if !solver.add_clause(clause) {
            break;
        }
    }
    let mut solutions = Vec::new();
    let end = solver.enumerate(|model| {
        let pair = decoder.decode(model)?;
        let block = decoder.blocking_clause(&pair);
        solutions.push(pair);
        if options.max_solutions.is_some_and(|m| solutions.len() >= m) {
            Ok(ModelAction::Stop)
        } else {
            Ok(ModelAction::Block(block))
        }
    })?;
    let status = match end {
        SearchEnd::Exhausted => EnumerationStatus::Exhausted,
        SearchEnd::Stopped => EnumerationStatus::SolutionLimit,
    };
    Ok(EnumerationResult { solutions, stats: *solver.stats(), status })
}

/// Plain satisfiability check of an instance.
pub fn solve(
    instance: &CnfInstance,
    config: SolverConfig,
    proof: Option<&mut dyn ProofSink>,
) -> Result<SolveResult, SolveError> {
    let mut solver = Solver::new(instance.var_count as usize, config);
    if let Some(sink) = proof {
        solver.set_proof_sink(sink);
    }
    for clause in &instance.clauses {
        if !solver.add_clause(clause) {
            break;
        }
    }
    solver.solve()
}
