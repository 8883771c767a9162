//! Latin squares, orthogonal pairs, 4-net incidence and relation forms.

mod incidence;
mod relation;
mod square;

pub use incidence::{
    f2_rank, grid_incidence, grid_relations_hold, incidence_matrix, is_relation, verify_relations, BitMatrix, RelationSet,
};
pub use relation::{membership_of_code, ClassSplit, LineIndex, RelationForm, CLASSES};
pub use square::{
    all_latin_squares, are_orthogonal, compose_with_row_inverse, grids_orthogonal, is_latin, Grid,
    LatinSquare, MolsPair, MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetError {
    #[error("order {0} is not supported (1..={MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("symbol {symbol} is out of range for order {order}")]
    SymbolOutOfRange { symbol: usize, order: usize },
    #[error("line {line} is out of range for order {order}")]
    LineOutOfRange { line: usize, order: usize },
    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("square is not Latin")]
    NotLatin,
    #[error("squares are not orthogonal")]
    NotOrthogonal,
    #[error("class split exceeds the order")]
    InvalidForm,
    #[error("unknown case {0}; expected 1..=5")]
    UnknownCase(u8),
}
