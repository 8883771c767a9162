use core::fmt;

use crate::net::{Grid, NetError, RelationForm};

/// Outcome of one minimal-pair condition on a concrete pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    Holds,
    Fails,
    /// The condition does not apply to this case; counts as satisfied.
    NotApplicable,
}

impl Condition {
    fn from_bool(holds: bool) -> Self {
        if holds {
            Condition::Holds
        } else {
            Condition::Fails
        }
    }

    pub fn satisfied(self) -> bool {
        self != Condition::Fails
    }
}

/// Necessary conditions for `(A, B)` to be a minimal pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinimalityReport {
    /// `(A10, B10) < (A01, B01)`; not applicable in case 4.
    pub transpose: Condition,
    /// `[A00, A10, A20] <= [B00, B10, B20]`; not applicable in case 2.
    pub swap: Condition,
    /// First column of `A` increasing within each row class.
    pub sort_column: Condition,
    /// First row of `A` increasing within each column class (case 4 skips the class of column 0).
    pub sort_row: Condition,
    /// Within each A-symbol class, symbols appear in increasing order down column 0 of `A`.
    pub a_symbols: Condition,
    pub b_symbols: Condition,
    /// `A00 = B00`; not applicable in case 2.
    pub a00_equals_b00: Condition,
}

impl MinimalityReport {
    pub fn conditions(&self) -> [Condition; 7] {
        [
            self.transpose,
            self.swap,
            self.sort_column,
            self.sort_row,
            self.a_symbols,
            self.b_symbols,
            self.a00_equals_b00,
        ]
    }

    pub fn all_satisfied(&self) -> bool {
        self.conditions().iter().all(|c| c.satisfied())
    }

    /// Seven `0`/`1` characters in field order, not-applicable conditions as `1`.
    pub fn bits(&self) -> BitString {
        let mut bits = [b'0'; 7];
        for (b, c) in bits.iter_mut().zip(self.conditions()) {
            if c.satisfied() {
                *b = b'1';
            }
        }
        BitString(bits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitString([u8; 7]);

impl BitString {
    pub fn as_str(&self) -> &str {
        core::str::from_utf8(&self.0).unwrap_or("")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn increasing(values: impl Iterator<Item = usize>) -> bool {
    let mut last = None;
    for v in values {
        if last.is_some_and(|l| v <= l) {
            return false;
        }
        last = Some(v);
    }
    true
}

/// Whether the symbols of each class of `class_index` appear in increasing order
/// when column 0 of `grid` is read top to bottom.
fn symbols_sorted_in_first_column(grid: &Grid, form: &RelationForm, class_index: usize) -> bool {
    let n = grid.order();
    let split = form.class(class_index);
    (0..4u8).all(|code| {
        let in_class = |s: usize| split.code(s) == code;
        increasing((0..n).map(|i| grid.get(i, 0)).filter(|&s| in_class(s)))
    })
}

/// Evaluates the minimal-pair conditions for the relation form's case.
///
/// Forms without a case id are treated like cases 1, 3 and 5 (every condition applies).
pub fn minimality(a: &Grid, b: &Grid, form: &RelationForm) -> Result<MinimalityReport, NetError> {
    let n = form.order();
    if a.order() != n || b.order() != n {
        return Err(NetError::OrderMismatch { left: a.order(), right: n });
    }
    if n < 3 {
        return Err(NetError::UnsupportedOrder(n));
    }
    let case = form.case_id();

    let transpose = if case == Some(4) {
        Condition::NotApplicable
    } else {
        Condition::from_bool((a.get(1, 0), b.get(1, 0)) < (a.get(0, 1), b.get(0, 1)))
    };

    let swap = if case == Some(2) {
        Condition::NotApplicable
    } else {
        let col = |g: &Grid| [g.get(0, 0), g.get(1, 0), g.get(2, 0)];
        Condition::from_bool(col(a) <= col(b))
    };

    let rows = form.class(0);
    let sort_column = Condition::from_bool(
        (0..4u8).all(|code| increasing((0..n).filter(|&i| rows.code(i) == code).map(|i| a.get(i, 0)))),
    );

    let cols = form.class(1);
    let first_class = cols.code(0);
    let sort_row = Condition::from_bool((0..4u8).all(|code| {
        if case == Some(4) && code == first_class {
            return true;
        }
        increasing((0..n).filter(|&j| cols.code(j) == code).map(|j| a.get(0, j)))
    }));

    let a_symbols = Condition::from_bool(symbols_sorted_in_first_column(a, form, 2));
    let b_symbols = Condition::from_bool(symbols_sorted_in_first_column(b, form, 3));

    let a00_equals_b00 = if case == Some(2) {
        Condition::NotApplicable
    } else {
        Condition::from_bool(a.get(0, 0) == b.get(0, 0))
    };

    Ok(MinimalityReport { transpose, swap, sort_column, sort_row, a_symbols, b_symbols, a00_equals_b00 })
}
