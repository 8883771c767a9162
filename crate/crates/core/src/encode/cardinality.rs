use alloc::vec;
use alloc::vec::Vec;

use super::layout::AuxAllocator;
use super::EncodeError;
use crate::lit::{Lit, Var};

/// Sequential-counter encoding of `x_1 + ... + x_m = 1`.
///
/// Auxiliary `s_i` means "some `x_1..x_i` is true". `s_m` is fixed true and
/// substituted away, which drops the two clauses it satisfies, so `m - 1`
/// auxiliaries and `4m - 4` clauses are emitted. A single variable becomes a
/// unit clause.
pub fn exactly_one(vars: &[Var], aux: &mut AuxAllocator) -> Result<Vec<Vec<Lit>>, EncodeError> {
    let m = vars.len();
    match m {
        0 => return Err(EncodeError::EmptyCardinality),
        1 => return Ok(vec![vec![vars[0].positive()]]),
        _ => {}
    }
    // s[i] for i in 1..m; s[0] and s[m] are never materialised.
    let s: Vec<Option<Var>> = (0..=m).map(|i| (1..m).contains(&i).then(|| aux.fresh())).collect();
    let mut out = Vec::with_capacity(4 * m - 4);
    for i in 1..=m {
        let x = vars[i - 1];
        if i < m {
            let si = s[i].unwrap();
            // x_i -> s_i
            out.push(vec![x.negative(), si.positive()]);
            // s_{i-1} -> s_i
            if i > 1 {
                out.push(vec![s[i - 1].unwrap().negative(), si.positive()]);
            }
        }
        // not both x_i and s_{i-1}
        if i > 1 {
            out.push(vec![x.negative(), s[i - 1].unwrap().negative()]);
        }
        // s_i -> s_{i-1} or x_i, with s_0 dropped and s_m true
        let mut clause = Vec::with_capacity(3);
        if i < m {
            clause.push(s[i].unwrap().negative());
        }
        if i > 1 {
            clause.push(s[i - 1].unwrap().positive());
        }
        clause.push(x.positive());
        out.push(clause);
    }
    debug_assert_eq!(out.len(), 4 * m - 4);
    Ok(out)
}
