use core::fmt;

use super::NetError;

/// Number of parallel classes in a 4-net: rows, columns, A-symbols, B-symbols.
pub const CLASSES: usize = 4;

/// Sizes of one parallel class's share of two relations `R1`, `R2`.
///
/// Lines are ordered `R1 ∩ R2` first, then `R1 \ R2`, then `R2 \ R1`, then the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassSplit {
    /// Lines in both relations.
    pub both: usize,
    /// Lines in `R1` only.
    pub only_first: usize,
    /// Lines in `R2` only.
    pub only_second: usize,
}

impl ClassSplit {
    pub const fn new(both: usize, only_first: usize, only_second: usize) -> Self {
        ClassSplit { both, only_first, only_second }
    }

    /// Relational code of a line at `offset` within its class:
    /// 0 in both, 1 in `R1` only, 2 in `R2` only, 3 in neither.
    pub fn code(&self, offset: usize) -> u8 {
        let (x, y, z) = (self.both, self.only_first, self.only_second);
        if offset < x {
            0
        } else if offset < x + y {
            1
        } else if offset < x + y + z {
            2
        } else {
            3
        }
    }

    /// Number of lines in this class carrying relational `code`.
    pub fn lines_with_code(&self, code: u8, order: usize) -> usize {
        match code {
            0 => self.both,
            1 => self.only_first,
            2 => self.only_second,
            _ => order - self.both - self.only_first - self.only_second,
        }
    }

    /// The four equivalence classes of offsets, as half-open ranges in code order.
    pub fn offset_ranges(&self, order: usize) -> [core::ops::Range<usize>; 4] {
        let a = self.both;
        let b = a + self.only_first;
        let c = b + self.only_second;
        [0..a, a..b, b..c, c..order]
    }
}

/// A line of a 4-net of order `n`: rows `[0,n)`, columns `[n,2n)`,
/// A-symbols `[2n,3n)`, B-symbols `[3n,4n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineIndex {
    value: usize,
    order: usize,
}

impl LineIndex {
    pub fn new(value: usize, order: usize) -> Result<Self, NetError> {
        if value >= CLASSES * order {
            return Err(NetError::LineOutOfRange { line: value, order });
        }
        Ok(LineIndex { value, order })
    }

    pub fn in_class(class: usize, offset: usize, order: usize) -> Result<Self, NetError> {
        if class >= CLASSES || offset >= order {
            return Err(NetError::LineOutOfRange {
                line: class * order + offset,
                order,
            });
        }
        Ok(LineIndex { value: class * order + offset, order })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn parallel_class(self) -> usize {
        self.value / self.order
    }

    pub fn offset(self) -> usize {
        self.value % self.order
    }
}

/// The joint shape of two relations `R1`, `R2` across the four parallel classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationForm {
    order: usize,
    case_id: Option<u8>,
    classes: [ClassSplit; CLASSES],
}

const WIDE: ClassSplit = ClassSplit::new(1, 3, 3);
const EVEN: ClassSplit = ClassSplit::new(2, 2, 2);

impl RelationForm {
    /// A form with arbitrary class splits; used for small-order experiments.
    pub fn new(order: usize, classes: [ClassSplit; CLASSES]) -> Result<Self, NetError> {
        if order == 0 || order > super::MAX_ORDER {
            return Err(NetError::UnsupportedOrder(order));
        }
        for split in &classes {
            if split.both + split.only_first + split.only_second > order {
                return Err(NetError::InvalidForm);
            }
        }
        Ok(RelationForm { order, case_id: None, classes })
    }

    /// One of the five order-10 cases: `k` leading `[1,3,3]` classes for `k = 5 - case`,
    /// the remainder `[2,2,2]`.
    pub fn case(case_id: u8) -> Result<Self, NetError> {
        if !(1..=5).contains(&case_id) {
            return Err(NetError::UnknownCase(case_id));
        }
        let wide = 5 - case_id as usize;
        let mut classes = [EVEN; CLASSES];
        for split in classes.iter_mut().take(wide) {
            *split = WIDE;
        }
        Ok(RelationForm { order: 10, case_id: Some(case_id), classes })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn case_id(&self) -> Option<u8> {
        self.case_id
    }

    pub fn classes(&self) -> &[ClassSplit; CLASSES] {
        &self.classes
    }

    pub fn class(&self, index: usize) -> &ClassSplit {
        &self.classes[index]
    }

    /// Relational code (0..=3) of `line`.
    pub fn code(&self, line: LineIndex) -> u8 {
        self.classes[line.parallel_class()].code(line.offset())
    }

    /// Code of the line at `offset` in parallel class `class`.
    pub fn code_at(&self, class: usize, offset: usize) -> u8 {
        self.classes[class].code(offset)
    }

    /// Whether `line` lies in `R1` and in `R2`.
    pub fn membership(&self, line: LineIndex) -> (bool, bool) {
        membership_of_code(self.code(line))
    }

    /// RC label of cell `(i, j)`, from the memberships of row line `i` and column line `j + n`.
    pub fn rc_label(&self, row: usize, col: usize) -> u8 {
        label(self.code_at(0, row), self.code_at(1, col))
    }

    /// ST label of symbol pair `(s, t)`, from the memberships of lines `s + 2n` and `t + 3n`.
    pub fn st_label(&self, a_symbol: usize, b_symbol: usize) -> u8 {
        label(self.code_at(2, a_symbol), self.code_at(3, b_symbol))
    }
}

impl fmt::Display for RelationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (c, split) in self.classes.iter().enumerate() {
            if c > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{},{},{}]", split.both, split.only_first, split.only_second)?;
        }
        f.write_str("]")
    }
}

/// Relation memberships `(in R1, in R2)` for a relational code.
pub fn membership_of_code(code: u8) -> (bool, bool) {
    (code <= 1, code == 0 || code == 2)
}

/// Four-way label: bit 1 set when `R1` memberships differ, bit 0 when `R2` memberships differ.
fn label(first: u8, second: u8) -> u8 {
    let (r1a, r2a) = membership_of_code(first);
    let (r1b, r2b) = membership_of_code(second);
    ((r1a != r1b) as u8) << 1 | (r2a != r2b) as u8
}
