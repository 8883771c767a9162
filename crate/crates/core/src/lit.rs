use core::fmt;

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on 0.
    pub fn new(id: u32) -> Self {
        assert!(id > 0, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// Zero-based index, for array lookups.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn from_index(index: usize) -> Self {
        Var(index as u32 + 1)
    }

    pub fn positive(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn negative(self) -> Lit {
        Lit(-(self.0 as i32))
    }
}

/// A signed literal in DIMACS convention: `v` or `-v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(i32);

impl Lit {
    /// Returns `None` for 0, which is the clause terminator and never a literal.
    pub fn from_dimacs(value: i32) -> Option<Self> {
        (value != 0 && value != i32::MIN).then_some(Lit(value))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Dense code `2 * index + sign`, used by the solver and checker tables.
    pub fn code(self) -> usize {
        self.var().index() * 2 + self.is_negative() as usize
    }

    pub fn from_code(code: usize) -> Self {
        let var = Var::from_index(code / 2);
        if code & 1 == 1 {
            var.negative()
        } else {
            var.positive()
        }
    }

    /// True if this literal is satisfied when its variable takes `value`.
    pub fn holds_under(self, value: bool) -> bool {
        value != self.is_negative()
    }
}

impl core::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
