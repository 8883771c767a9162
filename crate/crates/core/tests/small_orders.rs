use std::collections::BTreeSet;

use netrel_core::encode::{build_instance, BuildOptions};
use netrel_core::net::{all_latin_squares, compose_with_row_inverse, LatinSquare};
use netrel_core::solve::{enumerate, EnumerateOptions, EnumerationStatus, PairDecoder, SolverConfig};

/// Every Latin square of order `n`, built row by row from permutations.
fn oracle_latin_squares(n: usize) -> Vec<Vec<u8>> {
    fn permutations(n: usize) -> Vec<Vec<u8>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, (n - 1) as u8);
                out.push(q);
            }
        }
        out
    }
    let perms = permutations(n);
    let mut squares = vec![Vec::<u8>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for sq in &squares {
            for p in &perms {
                let clash = sq.chunks(n).any(|row| row.iter().zip(p).any(|(a, b)| a == b));
                if !clash {
                    let mut s = sq.clone();
                    s.extend_from_slice(p);
                    next.push(s);
                }
            }
        }
        squares = next;
    }
    squares
}

fn oracle_orthogonal(n: usize, a: &[u8], b: &[u8]) -> bool {
    let pairs: BTreeSet<(u8, u8)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.len() == n * n
}

fn oracle_pairs(n: usize) -> BTreeSet<(Vec<u8>, Vec<u8>)> {
    let squares = oracle_latin_squares(n);
    let mut out = BTreeSet::new();
    for a in &squares {
        for b in &squares {
            if oracle_orthogonal(n, a, b) {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn enumerated_pairs(n: usize, seed: u64) -> BTreeSet<(Vec<u8>, Vec<u8>)> {
    let inst = build_instance(n, None, BuildOptions::pairs_only()).unwrap();
    let decoder = PairDecoder::new(inst.layout.unwrap());
    let options = EnumerateOptions { config: SolverConfig::with_seed(seed), max_solutions: None };
    let result = enumerate(&inst, &decoder, options, None).unwrap();
    assert_eq!(result.status, EnumerationStatus::Exhausted);
    let set: BTreeSet<_> = result
        .solutions
        .iter()
        .map(|p| (p.a().grid().cells().to_vec(), p.b().grid().cells().to_vec()))
        .collect();
    assert_eq!(set.len(), result.solutions.len(), "duplicate solutions");
    set
}

#[test]
fn latin_square_counts() {
    assert_eq!(oracle_latin_squares(3).len(), 12);
    assert_eq!(oracle_latin_squares(4).len(), 576);
    assert_eq!(all_latin_squares(4).len(), 576);
}

#[test]
fn order_two_has_no_pairs() {
    assert!(oracle_pairs(2).is_empty());
    assert!(enumerated_pairs(2, 0).is_empty());
}

#[test]
fn order_three_matches_oracle() {
    let oracle = oracle_pairs(3);
    assert!(!oracle.is_empty());
    assert_eq!(enumerated_pairs(3, 0), oracle);
}

#[test]
fn order_four_matches_oracle() {
    let oracle = oracle_pairs(4);
    assert_eq!(enumerated_pairs(4, 11), oracle);
}

#[test]
fn mann_equivalence() {
    for n in 3..=4 {
        let squares: Vec<LatinSquare> = all_latin_squares(n);
        for a in &squares {
            for b in &squares {
                let composition = compose_with_row_inverse(a, b).unwrap();
                let orthogonal = oracle_orthogonal(n, a.grid().cells(), b.grid().cells());
                assert_eq!(composition.is_latin(), orthogonal);
            }
        }
    }
}
