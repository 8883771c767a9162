use super::minimality::{minimality, MinimalityReport};
use crate::net::{f2_rank, grid_incidence, grid_relations_hold, grids_orthogonal, Grid, NetError, RelationForm};

/// Independent checks of one claimed solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerificationReport {
    pub latin_a: bool,
    pub latin_b: bool,
    pub orthogonal: bool,
    /// `RC(i, j) = ST(a_ij, b_ij)` in every cell.
    pub relations_ok: bool,
    /// F2 rank of the point-by-line incidence matrix.
    pub rank: usize,
    pub minimality: MinimalityReport,
}

impl VerificationReport {
    /// Latin, orthogonal, relations and every applicable minimality condition.
    pub fn passes(&self) -> bool {
        self.latin_a && self.latin_b && self.orthogonal && self.relations_ok && self.minimality.all_satisfied()
    }

    /// Dimension of the F2 relation space, `4n - rank`.
    pub fn nullity(&self, order: usize) -> usize {
        4 * order - self.rank
    }
}

/// Verifies a pair of grids against `form` without trusting how they were produced.
pub fn verify_solution(a: &Grid, b: &Grid, form: &RelationForm) -> Result<VerificationReport, NetError> {
    let n = form.order();
    if a.order() != n || b.order() != n {
        return Err(NetError::OrderMismatch { left: a.order(), right: n });
    }
    let latin_a = a.is_latin();
    let latin_b = b.is_latin();
    let orthogonal = grids_orthogonal(a, b)?;
    let relations_ok = grid_relations_hold(a, b, form)?;
    let rank = f2_rank(&grid_incidence(a, b));
    let minimality = minimality(a, b, form)?;
    Ok(VerificationReport { latin_a, latin_b, orthogonal, relations_ok, rank, minimality })
}
