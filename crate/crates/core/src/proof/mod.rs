//! DRAT certificates with trusted additions: step types, the solver-facing
//! sink, and an independent forward checker.

mod checker;
mod step;

pub use checker::{check, Checker, RejectReason, Verdict};
pub use step::{ProofSink, ProofStep, SinkError, StepKind};
