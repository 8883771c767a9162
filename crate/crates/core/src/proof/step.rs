use alloc::vec::Vec;

use crate::lit::Lit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// A clause that must follow by RUP or RAT.
    Addition,
    Deletion,
    /// A clause accepted without derivation (blocking clauses).
    TrustedAddition,
}

/// One line of a DRAT certificate with trusted additions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub kind: StepKind,
    pub literals: Vec<Lit>,
}

impl ProofStep {
    pub fn addition(literals: Vec<Lit>) -> Self {
        ProofStep { kind: StepKind::Addition, literals }
    }

    pub fn deletion(literals: Vec<Lit>) -> Self {
        ProofStep { kind: StepKind::Deletion, literals }
    }

    pub fn trusted(literals: Vec<Lit>) -> Self {
        ProofStep { kind: StepKind::TrustedAddition, literals }
    }

    pub fn is_empty_clause(&self) -> bool {
        self.kind == StepKind::Addition && self.literals.is_empty()
    }
}

/// The sink refused a step; the sink itself keeps the underlying cause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("proof sink failed")]
pub struct SinkError;

/// Receives proof steps as the solver produces them.
pub trait ProofSink {
    fn log(&mut self, kind: StepKind, literals: &[Lit]) -> Result<(), SinkError>;
}

impl ProofSink for Vec<ProofStep> {
    fn log(&mut self, kind: StepKind, literals: &[Lit]) -> Result<(), SinkError> {
        self.push(ProofStep { kind, literals: literals.to_vec() });
        Ok(())
    }
}
