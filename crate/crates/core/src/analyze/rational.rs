use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Augmented linear system over the rationals: each row holds `cols` coefficients
/// followed by one constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    cols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(cols: usize) -> Self {
        RationalMatrix { cols, rows: Vec::new() }
    }

    /// Builds from integer rows of length `cols + 1` (last entry is the constant).
    pub fn from_integers(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = RationalMatrix::new(cols);
        for row in rows {
            assert_eq!(row.len(), cols + 1, "row length must be cols + 1");
            m.rows.push(row.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect());
        }
        m
    }

    pub fn push_row(&mut self, coefficients: Vec<BigRational>, constant: BigRational) {
        assert_eq!(coefficients.len(), self.cols, "coefficient count");
        let mut row = coefficients;
        row.push(constant);
        self.rows.push(row);
    }

    /// Number of unknowns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn coefficients(&self, row: usize) -> &[BigRational] {
        &self.rows[row][..self.cols]
    }

    pub fn constant(&self, row: usize) -> &BigRational {
        &self.rows[row][self.cols]
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.rows[row][col]
    }

    /// Column of the leading nonzero coefficient of `row`, if any.
    pub fn pivot(&self, row: usize) -> Option<usize> {
        self.coefficients(row).iter().position(|v| !v.is_zero())
    }

    /// Reduced row echelon form. Pivots are taken among the coefficient columns only,
    /// scanning columns left to right; each pivot is normalized to 1 and cleared from
    /// every other row. Rows without a pivot follow the pivot rows in their reduced form.
    pub fn rref(&self) -> RationalMatrix {
        let mut rows = self.rows.clone();
        let mut lead = 0;
        for col in 0..self.cols {
            let Some(found) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(lead, found);
            let inv = rows[lead][col].recip();
            if !inv.is_one() {
                for v in rows[lead].iter_mut() {
                    *v *= &inv;
                }
            }
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == lead || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *v -= &factor * p;
                    }
                }
            }
            lead += 1;
            if lead == rows.len() {
                break;
            }
        }
        RationalMatrix { cols: self.cols, rows }
    }

    /// True when pivots strictly increase down the pivot rows, every pivot is 1 and is
    /// the only nonzero in its column.
    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_pivotless = false;
        for r in 0..self.rows.len() {
            match self.pivot(r) {
                None => seen_pivotless = true,
                Some(p) => {
                    if seen_pivotless || last.is_some_and(|l| p <= l) || !self.rows[r][p].is_one() {
                        return false;
                    }
                    if (0..self.rows.len()).any(|o| o != r && !self.rows[o][p].is_zero()) {
                        return false;
                    }
                    last = Some(p);
                }
            }
        }
        true
    }

    /// Rows reading `0 = c` with `c != 0`.
    pub fn inconsistent_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(|&r| self.pivot(r).is_none() && !self.constant(r).is_zero())
    }

    /// Rows with integral coefficients and a non-integral constant.
    pub fn fractional_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rows.len()).filter(|&r| {
            self.pivot(r).is_some()
                && self.coefficients(r).iter().all(|v| v.is_integer())
                && !self.constant(r).is_integer()
        })
    }

    /// Formats `row` as `coeff*name ... = constant`, skipping zero coefficients.
    pub fn format_row(&self, row: usize, name: impl Fn(usize) -> alloc::string::String) -> alloc::string::String {
        use core::fmt::Write;
        let mut out = alloc::string::String::new();
        let mut first = true;
        for (c, v) in self.coefficients(row).iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !first {
                out.push(' ');
                if v.is_positive() {
                    out.push('+');
                }
            }
            let _ = write!(out, "{}*{}", RationalDisplay(v), name(c));
            first = false;
        }
        if first {
            out.push('0');
        }
        let _ = write!(out, " = {}", RationalDisplay(self.constant(row)));
        out
    }
}

struct RationalDisplay<'a>(&'a BigRational);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
