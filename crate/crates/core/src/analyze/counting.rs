use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::RationalMatrix;
use crate::net::{Grid, NetError, RelationForm, CLASSES};

/// A point type: the relational codes of its row, column, A-symbol and B-symbol lines.
pub type PointType = [u8; CLASSES];

/// Number of point types `4^4`.
pub const POINT_TYPES: usize = 256;

pub fn type_index(t: PointType) -> usize {
    t.iter().fold(0, |acc, &c| acc * 4 + c as usize)
}

pub fn type_of_index(index: usize) -> PointType {
    [(index >> 6) as u8 & 3, (index >> 4) as u8 & 3, (index >> 2) as u8 & 3, index as u8 & 3]
}

/// Whether `t` can occur in a net with two relations: even code sum and an even
/// number of codes in `{2, 3}`.
pub fn is_admissible(t: PointType) -> bool {
    let sum: u32 = t.iter().map(|&c| c as u32).sum();
    let high: u32 = t.iter().map(|&c| (c / 2) as u32).sum();
    sum % 2 == 0 && high % 2 == 0
}

/// The 64 admissible point types in lexicographic order.
pub fn admissible_types() -> Vec<PointType> {
    (0..POINT_TYPES).map(type_of_index).filter(|&t| is_admissible(t)).collect()
}

pub fn type_name(t: PointType) -> String {
    format!("t{}{}{}{}", t[0], t[1], t[2], t[3])
}

/// Point counts `t_ijkl` of a net, indexed by [`type_index`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTypeCensus {
    counts: [u32; POINT_TYPES],
}

impl PointTypeCensus {
    pub fn get(&self, t: PointType) -> u32 {
        self.counts[type_index(t)]
    }

    pub fn counts(&self) -> &[u32; POINT_TYPES] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Counts of the admissible types, in the unknown order of [`counting_system`].
    pub fn admissible_counts(&self) -> Vec<u32> {
        admissible_types().into_iter().map(|t| self.get(t)).collect()
    }

    /// True if every inadmissible type has count zero.
    pub fn parity_holds(&self) -> bool {
        (0..POINT_TYPES).all(|i| self.counts[i] == 0 || is_admissible(type_of_index(i)))
    }

    /// Exact substitution of the admissible counts into every row of `system`.
    pub fn satisfies(&self, system: &RationalMatrix) -> bool {
        let values = self.admissible_counts();
        (0..system.row_count()).all(|r| {
            let lhs = system
                .coefficients(r)
                .iter()
                .zip(&values)
                .fold(BigRational::zero(), |acc, (c, &v)| acc + c * BigRational::from_integer(BigInt::from(v)));
            &lhs == system.constant(r)
        })
    }
}

/// Classifies every point `(i, j)` of the net of `(a, b)` by the codes of its four lines.
pub fn point_type_census(a: &Grid, b: &Grid, form: &RelationForm) -> Result<PointTypeCensus, NetError> {
    let n = form.order();
    if a.order() != n || b.order() != n {
        return Err(NetError::OrderMismatch { left: a.order(), right: n });
    }
    let mut counts = [0u32; POINT_TYPES];
    for i in 0..n {
        for j in 0..n {
            let t = [form.code_at(0, i), form.code_at(1, j), form.code_at(2, a.get(i, j)), form.code_at(3, b.get(i, j))];
            counts[type_index(t)] += 1;
        }
    }
    Ok(PointTypeCensus { counts })
}

/// Which relational codes the counting equations range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CodeRange {
    /// Codes `{0, 1, 2}`.
    Three,
    /// Codes `{0, 1, 2, 3}`.
    Four,
}

impl CodeRange {
    pub fn codes(self) -> core::ops::Range<u8> {
        match self {
            CodeRange::Three => 0..3,
            CodeRange::Four => 0..4,
        }
    }
}

impl fmt::Display for CodeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeRange::Three => "{0,1,2}",
            CodeRange::Four => "{0,1,2,3}",
        })
    }
}

/// Counting equations over the 64 admissible `t` unknowns: for each pair of
/// positions `p < q` and each code pair `(u, v)`, the points whose line in class `p`
/// has code `u` and whose line in class `q` has code `v` number exactly
/// `lines(p, u) * lines(q, v)`.
pub fn counting_system(form: &RelationForm, range: CodeRange) -> RationalMatrix {
    let n = form.order();
    let types = admissible_types();
    let mut m = RationalMatrix::new(types.len());
    for p in 0..CLASSES {
        for q in p + 1..CLASSES {
            for u in range.codes() {
                for v in range.codes() {
                    let coefficients = types
                        .iter()
                        .map(|t| if t[p] == u && t[q] == v { BigRational::one() } else { BigRational::zero() })
                        .collect();
                    let lines = form.class(p).lines_with_code(u, n) * form.class(q).lines_with_code(v, n);
                    m.push_row(coefficients, BigRational::from_integer(BigInt::from(lines)));
                }
            }
        }
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictKind {
    ConsistentOverIntegers,
    NoIntegerSolution,
    InconsistentOverRationals,
}

impl VerdictKind {
    pub fn token(self) -> &'static str {
        match self {
            VerdictKind::ConsistentOverIntegers => "ConsistentOverIntegers",
            VerdictKind::NoIntegerSolution => "NoIntegerSolution",
            VerdictKind::InconsistentOverRationals => "InconsistentOverRationals",
        }
    }

    pub fn is_impossibility(self) -> bool {
        self != VerdictKind::ConsistentOverIntegers
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingVerdict {
    pub kind: VerdictKind,
    /// The code range whose system produced the verdict.
    pub range: CodeRange,
    /// The offending RREF row, formatted as `coeff*var ... = constant`.
    pub witness: Option<String>,
}

/// Verdict of a single system after exact row reduction.
pub fn system_verdict(system: &RationalMatrix, range: CodeRange) -> CountingVerdict {
    let reduced = system.rref();
    let types = admissible_types();
    let name = |c: usize| type_name(types[c]);
    if let Some(r) = reduced.inconsistent_rows().next() {
        return CountingVerdict {
            kind: VerdictKind::InconsistentOverRationals,
            range,
            witness: Some(reduced.format_row(r, name)),
        };
    }
    if let Some(r) = reduced.fractional_rows().next() {
        return CountingVerdict { kind: VerdictKind::NoIntegerSolution, range, witness: Some(reduced.format_row(r, name)) };
    }
    CountingVerdict { kind: VerdictKind::ConsistentOverIntegers, range, witness: None }
}

/// Both code ranges, the one the case is normally argued with first.
pub fn ranges_for(form: &RelationForm) -> [CodeRange; 2] {
    match form.case_id() {
        Some(3) => [CodeRange::Three, CodeRange::Four],
        _ => [CodeRange::Four, CodeRange::Three],
    }
}

/// Runs the counting argument under both code ranges and keeps the strongest
/// verdict; ties go to the preferred range of [`ranges_for`].
pub fn counting_verdict(form: &RelationForm) -> CountingVerdict {
    let [first, second] = ranges_for(form);
    let a = system_verdict(&counting_system(form, first), first);
    let b = system_verdict(&counting_system(form, second), second);
    if b.kind > a.kind {
        b
    } else {
        a
    }
}

/// The all-code system used for census substitution checks.
pub fn full_system(form: &RelationForm) -> RationalMatrix {
    counting_system(form, CodeRange::Four)
}
