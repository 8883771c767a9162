use alloc::vec;
use alloc::vec::Vec;

use super::relation::{RelationForm, CLASSES};
use super::square::{Grid, MolsPair};
use super::NetError;

/// A dense matrix over F2 with rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix { rows, cols, words_per_row, data: vec![0; rows * words_per_row] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = BitMatrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols);
        let word = &mut self.data[row * self.words_per_row + col / 64];
        if value {
            *word |= 1 << (col % 64);
        } else {
            *word &= !(1 << (col % 64));
        }
    }

    pub fn row_words(&self, row: usize) -> &[u64] {
        &self.data[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.row_words(row).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, col: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, col)).count()
    }

    /// Sum over F2 of the columns selected by `selected`, as one bit per row.
    pub fn column_sum(&self, selected: impl Fn(usize) -> bool) -> Vec<bool> {
        (0..self.rows)
            .map(|r| (0..self.cols).filter(|&c| selected(c) && self.get(r, c)).count() % 2 == 1)
            .collect()
    }
}

/// Rank over F2 by Gaussian elimination on packed rows.
///
/// Columns are scanned left to right; the pivot for a column is the first
/// remaining row with a one there.
pub fn f2_rank(matrix: &BitMatrix) -> usize {
    let w = matrix.words_per_row;
    let mut work = matrix.data.clone();
    let mut rank = 0;
    for col in 0..matrix.cols {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(pivot) = (rank..matrix.rows).find(|&r| work[r * w + word] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..w {
                work.swap(pivot * w + k, rank * w + k);
            }
        }
        for r in rank + 1..matrix.rows {
            if work[r * w + word] & bit != 0 {
                for k in word..w {
                    let p = work[rank * w + k];
                    work[r * w + k] ^= p;
                }
            }
        }
        rank += 1;
        if rank == matrix.rows {
            break;
        }
    }
    rank
}

/// Point-by-line incidence of the 4-net of `pair`: point `(i, j)` is row `i*n + j`
/// and lies on lines `i`, `n + j`, `2n + a_ij`, `3n + b_ij`.
pub fn incidence_matrix(pair: &MolsPair) -> BitMatrix {
    grid_incidence(pair.a().grid(), pair.b().grid())
}

/// Incidence built from raw grids; callers are responsible for the net axioms.
pub fn grid_incidence(a: &Grid, b: &Grid) -> BitMatrix {
    let n = a.order();
    let mut m = BitMatrix::zeros(n * n, CLASSES * n);
    for i in 0..n {
        for j in 0..n {
            let p = i * n + j;
            m.set(p, i, true);
            m.set(p, n + j, true);
            m.set(p, 2 * n + a.get(i, j), true);
            m.set(p, 3 * n + b.get(i, j), true);
        }
    }
    m
}

/// True iff `RC(i, j) = ST(a_ij, b_ij)` in every cell.
pub fn verify_relations(pair: &MolsPair, form: &RelationForm) -> Result<bool, NetError> {
    grid_relations_hold(pair.a().grid(), pair.b().grid(), form)
}

pub fn grid_relations_hold(a: &Grid, b: &Grid, form: &RelationForm) -> Result<bool, NetError> {
    let n = a.order();
    if n != form.order() || b.order() != n {
        return Err(NetError::OrderMismatch { left: n, right: form.order() });
    }
    Ok((0..n).all(|i| (0..n).all(|j| form.rc_label(i, j) == form.st_label(a.get(i, j), b.get(i, j)))))
}

/// Which relation a column selector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationSet {
    First,
    Second,
    /// Union of parallel class 0 and parallel class `k` (1..=3).
    Trivial(usize),
}

/// Checks that the incidence columns of `set` sum to zero over F2.
pub fn is_relation(incidence: &BitMatrix, form: &RelationForm, set: RelationSet) -> bool {
    let n = form.order();
    let selected = |c: usize| {
        let (class, offset) = (c / n, c % n);
        let code = form.code_at(class, offset);
        match set {
            RelationSet::First => code <= 1,
            RelationSet::Second => code == 0 || code == 2,
            RelationSet::Trivial(k) => class == 0 || class == k,
        }
    };
    incidence.column_sum(selected).iter().all(|&bit| !bit)
}
