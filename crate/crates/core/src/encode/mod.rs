//! CNF construction: Latin and orthogonality constraints, relation clauses and
//! symmetry breaking over a fixed variable layout.

mod cardinality;
mod families;
mod layout;

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

pub use cardinality::exactly_one;
pub use families::{
    a00_b00_equality, latin_constraints, orthogonality_constraints, relation_constraints, symmetry_breaking,
    OrthogonalityClauses,
};
pub use layout::{AuxAllocator, Block, VarLayout};

use crate::lit::Lit;
use crate::net::RelationForm;

/// A disjunction of literals.
pub type Clause = Vec<Lit>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodeError {
    #[error("exactly-one over an empty set of variables")]
    EmptyCardinality,
    #[error("layout order {layout} does not match form order {form}")]
    OrderMismatch { layout: usize, form: usize },
    #[error("symmetry breaking needs one of the five order-10 cases")]
    SymmetryWithoutCase,
    #[error("relation clauses requested without a relation form")]
    RelationsWithoutForm,
    #[error("order {0} is not supported")]
    UnsupportedOrder(usize),
    #[error("unknown case {0}; expected 1..=5")]
    UnknownCase(u8),
}

/// Provenance of a clause range in a [`CnfInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    LatinA,
    LatinB,
    LatinZ,
    Orthogonality,
    Relation,
    SymTranspose,
    SymSwap,
    SymSortColumn,
    SymSortRow,
    SymASymbols,
    SymBSymbols,
    A00EqualsB00,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::LatinA => "latin-A",
            Family::LatinB => "latin-B",
            Family::LatinZ => "latin-Z",
            Family::Orthogonality => "ortho",
            Family::Relation => "relation",
            Family::SymTranspose => "symbreak-F1",
            Family::SymSwap => "symbreak-F2",
            Family::SymSortColumn => "symbreak-F3",
            Family::SymSortRow => "symbreak-F4",
            Family::SymASymbols => "symbreak-F5",
            Family::SymBSymbols => "symbreak-F6",
            Family::A00EqualsB00 => "a00-b00",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpan {
    pub family: Family,
    pub clauses: Range<usize>,
}

/// A CNF formula, optionally carrying the layout and family spans it was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    pub var_count: u32,
    pub clauses: Vec<Clause>,
    pub layout: Option<VarLayout>,
    pub families: Vec<FamilySpan>,
}

impl CnfInstance {
    /// A bare formula with no layout information, as read back from DIMACS.
    pub fn from_clauses(var_count: u32, clauses: Vec<Clause>) -> Self {
        CnfInstance { var_count, clauses, layout: None, families: Vec::new() }
    }

    pub fn family(&self, family: Family) -> Option<&[Clause]> {
        self.families
            .iter()
            .find(|s| s.family == family)
            .map(|s| &self.clauses[s.clauses.clone()])
    }

    pub fn family_len(&self, family: Family) -> usize {
        self.family(family).map_or(0, <[_]>::len)
    }

    /// True if `assignment` (indexed by variable index) satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds_under(assignment[l.var().index()])))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub relations: bool,
    pub symmetry_breaking: bool,
    /// Adds `A_00 = B_00`; off by default so the clause set stays the published one.
    pub a00_b00_equality: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { relations: true, symmetry_breaking: true, a00_b00_equality: false }
    }
}

impl BuildOptions {
    /// Latin squares and orthogonality only.
    pub fn pairs_only() -> Self {
        BuildOptions { relations: false, symmetry_breaking: false, a00_b00_equality: false }
    }
}

struct Builder {
    clauses: Vec<Clause>,
    families: Vec<FamilySpan>,
}

impl Builder {
    fn push(&mut self, family: Family, clauses: Vec<Clause>) {
        let start = self.clauses.len();
        self.clauses.extend(clauses);
        self.families.push(FamilySpan { family, clauses: start..self.clauses.len() });
    }
}

/// Builds the instance: Latin(A), Latin(B), Latin(Z), linking, relation and
/// symmetry families, in that fixed order.
pub fn build_instance(
    order: usize,
    form: Option<&RelationForm>,
    options: BuildOptions,
) -> Result<CnfInstance, EncodeError> {
    if order < 2 || order > crate::net::MAX_ORDER {
        return Err(EncodeError::UnsupportedOrder(order));
    }
    if let Some(form) = form {
        if form.order() != order {
            return Err(EncodeError::OrderMismatch { layout: order, form: form.order() });
        }
    }
    if options.relations && form.is_none() {
        return Err(EncodeError::RelationsWithoutForm);
    }
    if options.symmetry_breaking && form.and_then(RelationForm::case_id).is_none() {
        return Err(EncodeError::SymmetryWithoutCase);
    }

    let layout = VarLayout::new(order);
    let mut aux = AuxAllocator::starting_after(&layout);
    let mut b = Builder { clauses: Vec::new(), families: Vec::new() };
    b.push(Family::LatinA, latin_constraints(Block::A, &layout, &mut aux));
    b.push(Family::LatinB, latin_constraints(Block::B, &layout, &mut aux));
    let ortho = orthogonality_constraints(&layout, &mut aux);
    b.push(Family::LatinZ, ortho.latin_z);
    b.push(Family::Orthogonality, ortho.linking);
    if let (true, Some(form)) = (options.relations, form) {
        b.push(Family::Relation, relation_constraints(form, &layout)?);
    }
    if let (true, Some(form)) = (options.symmetry_breaking, form) {
        for (family, clauses) in symmetry_breaking(form, &layout)? {
            b.push(family, clauses);
        }
    }
    if options.a00_b00_equality {
        b.push(Family::A00EqualsB00, a00_b00_equality(&layout));
    }
    Ok(CnfInstance {
        var_count: aux.last(),
        clauses: b.clauses,
        layout: Some(layout),
        families: b.families,
    })
}

/// The standard instance for one of the five order-10 cases.
pub fn build_case(case_id: u8, options: BuildOptions) -> Result<CnfInstance, EncodeError> {
    let form = RelationForm::case(case_id).map_err(|_| EncodeError::UnknownCase(case_id))?;
    build_instance(10, Some(&form), options)
}
