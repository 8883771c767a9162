use alloc::vec;
use alloc::vec::Vec;

use super::cardinality::exactly_one;
use super::layout::{AuxAllocator, Block, VarLayout};
use super::{Clause, EncodeError, Family};
use crate::net::RelationForm;

/// Cell, row-symbol and column-symbol exactly-one groups for one block, in that order.
pub fn latin_constraints(block: Block, layout: &VarLayout, aux: &mut AuxAllocator) -> Vec<Clause> {
    let n = layout.order();
    let mut out = Vec::with_capacity(3 * n * n * (4 * n).saturating_sub(4).max(1));
    let mut group = |vars: Vec<_>, out: &mut Vec<Clause>| {
        out.extend(exactly_one(&vars, aux).expect("order is positive"));
    };
    for i in 0..n {
        for j in 0..n {
            group((0..n).map(|k| layout.var(block, i, j, k)).collect(), &mut out);
        }
    }
    for i in 0..n {
        for k in 0..n {
            group((0..n).map(|j| layout.var(block, i, j, k)).collect(), &mut out);
        }
    }
    for j in 0..n {
        for k in 0..n {
            group((0..n).map(|i| layout.var(block, i, j, k)).collect(), &mut out);
        }
    }
    out
}

/// Clauses tying `Z = A B^{-1}` to the two squares.
pub struct OrthogonalityClauses {
    pub latin_z: Vec<Clause>,
    pub linking: Vec<Clause>,
}

/// Latin constraints on `Z` plus the three linking families
/// `A_ijk & B_ijl -> Z_ilk`, `Z_ilk & B_ijl -> A_ijk`, `Z_ilk & A_ijk -> B_ijl`.
pub fn orthogonality_constraints(layout: &VarLayout, aux: &mut AuxAllocator) -> OrthogonalityClauses {
    let latin_z = latin_constraints(Block::Z, layout, aux);
    let n = layout.order();
    let mut linking = Vec::with_capacity(3 * n.pow(4));
    for family in 0..3 {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let (a, b, z) = (layout.a(i, j, k), layout.b(i, j, l), layout.z(i, l, k));
                        linking.push(match family {
                            0 => vec![a.negative(), b.negative(), z.positive()],
                            1 => vec![z.negative(), b.negative(), a.positive()],
                            _ => vec![z.negative(), a.negative(), b.positive()],
                        });
                    }
                }
            }
        }
    }
    OrthogonalityClauses { latin_z, linking }
}

/// `¬A_ijs ∨ ¬B_ijt` whenever `RC(i,j) != ST(s,t)`, lexicographic in `(i, j, s, t)`.
pub fn relation_constraints(form: &RelationForm, layout: &VarLayout) -> Result<Vec<Clause>, EncodeError> {
    let n = layout.order();
    if form.order() != n {
        return Err(EncodeError::OrderMismatch { layout: n, form: form.order() });
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let rc = form.rc_label(i, j);
            for s in 0..n {
                for t in 0..n {
                    if form.st_label(s, t) != rc {
                        out.push(vec![layout.a(i, j, s).negative(), layout.b(i, j, t).negative()]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Index sets of each equivalence class minus its maximum.
fn trimmed_classes(form: &RelationForm, class: usize) -> [core::ops::Range<usize>; 4] {
    form.class(class)
        .offset_ranges(form.order())
        .map(|r| if r.is_empty() { r } else { r.start..r.end - 1 })
}

/// The six symmetry-breaking families for one of the five order-10 cases.
///
/// Returns the families in order F1..F6; a family that does not apply to the
/// case is returned empty.
pub fn symmetry_breaking(form: &RelationForm, layout: &VarLayout) -> Result<[(Family, Vec<Clause>); 6], EncodeError> {
    let case = form.case_id().ok_or(EncodeError::SymmetryWithoutCase)?;
    let n = layout.order();
    if form.order() != n {
        return Err(EncodeError::OrderMismatch { layout: n, form: form.order() });
    }
    let l = layout;

    // F1: (A10, B10) < (A01, B01), except case 4.
    let mut transpose = Vec::new();
    if case != 4 {
        for k in 0..n {
            for m in 0..k {
                transpose.push(vec![l.a(1, 0, k).negative(), l.a(0, 1, m).negative()]);
            }
        }
        for k in 0..n {
            for m in 0..=k {
                for s in 0..n {
                    transpose.push(vec![
                        l.a(1, 0, s).negative(),
                        l.a(0, 1, s).negative(),
                        l.b(1, 0, k).negative(),
                        l.b(0, 1, m).negative(),
                    ]);
                }
            }
        }
    }

    // F2: [A10, A20] <= [B10, B20], except case 2.
    let mut swap = Vec::new();
    if case != 2 {
        for k in 0..n {
            for m in 0..k {
                swap.push(vec![l.a(1, 0, k).negative(), l.b(1, 0, m).negative()]);
            }
        }
        for k in 0..n {
            for m in 0..k {
                for s in 0..n {
                    swap.push(vec![
                        l.a(1, 0, s).negative(),
                        l.b(1, 0, s).negative(),
                        l.a(2, 0, k).negative(),
                        l.b(2, 0, m).negative(),
                    ]);
                }
            }
        }
    }

    // F3: first column of A sorted within each row class.
    let mut sort_col = Vec::new();
    for rows in trimmed_classes(form, 0) {
        for i in rows {
            for k in 0..n {
                for m in 0..k {
                    sort_col.push(vec![l.a(i, 0, k).negative(), l.a(i + 1, 0, m).negative()]);
                }
            }
        }
    }

    // F4: first row of A sorted within each column class; case 4 skips the first class.
    let mut sort_row = Vec::new();
    for (c, cols) in trimmed_classes(form, 1).into_iter().enumerate() {
        if case == 4 && c == 0 {
            continue;
        }
        for j in cols {
            for k in 0..n {
                for m in 0..k {
                    sort_row.push(vec![l.a(0, j, k).negative(), l.a(0, j + 1, m).negative()]);
                }
            }
        }
    }

    // F5/F6: within each symbol class, the smaller symbol appears first in column 0.
    let symbol_order = |block: Block, class: usize| {
        let mut out = Vec::new();
        for symbols in trimmed_classes(form, class) {
            for s in symbols {
                for i in 0..n {
                    for earlier in 0..i {
                        out.push(vec![
                            l.var(block, i, 0, s).negative(),
                            l.var(block, earlier, 0, s + 1).negative(),
                        ]);
                    }
                }
            }
        }
        out
    };

    Ok([
        (Family::SymTranspose, transpose),
        (Family::SymSwap, swap),
        (Family::SymSortColumn, sort_col),
        (Family::SymSortRow, sort_row),
        (Family::SymASymbols, symbol_order(Block::A, 2)),
        (Family::SymBSymbols, symbol_order(Block::B, 3)),
    ])
}

/// `A_00k <-> B_00k` for every symbol `k`.
pub fn a00_b00_equality(layout: &VarLayout) -> Vec<Clause> {
    let mut out = Vec::new();
    for k in 0..layout.order() {
        let (a, b) = (layout.a(0, 0, k), layout.b(0, 0, k));
        out.push(vec![a.negative(), b.positive()]);
        out.push(vec![a.positive(), b.negative()]);
    }
    out
}
