use netrel_core::encode::{
    a00_b00_equality, build_case, build_instance, exactly_one, AuxAllocator, BuildOptions, CnfInstance, EncodeError,
    Family, VarLayout,
};
use netrel_core::net::{Grid, RelationForm};
use netrel_core::solve::{solve, SolveResult, SolverConfig};
use netrel_core::{Lit, Var};

/// Relational code of offset `o` in a class `[x, y, z]`, transcribed directly.
fn code(x: usize, y: usize, z: usize, o: usize) -> u8 {
    if o < x {
        0
    } else if o < x + y {
        1
    } else if o < x + y + z {
        2
    } else {
        3
    }
}

fn case_classes(case: usize) -> [(usize, usize, usize); 4] {
    let mut out = [(2, 2, 2); 4];
    for c in out.iter_mut().take(5 - case) {
        *c = (1, 3, 3);
    }
    out
}

fn oracle_relation_clauses(case: usize) -> usize {
    let cl = case_classes(case);
    let member = |c: u8| (c <= 1, c == 0 || c == 2);
    let label = |a: u8, b: u8| {
        let (p, q) = (member(a), member(b));
        2 * (p.0 != q.0) as u8 + (p.1 != q.1) as u8
    };
    let mut count = 0;
    for i in 0..10 {
        for j in 0..10 {
            let rc = label(code(cl[0].0, cl[0].1, cl[0].2, i), code(cl[1].0, cl[1].1, cl[1].2, j));
            for s in 0..10 {
                for t in 0..10 {
                    let st = label(code(cl[2].0, cl[2].1, cl[2].2, s), code(cl[3].0, cl[3].1, cl[3].2, t));
                    count += (rc != st) as usize;
                }
            }
        }
    }
    count
}

#[test]
fn exactly_one_clause_counts() {
    for m in 2..=12u32 {
        let vars: Vec<Var> = (1..=m).map(Var::new).collect();
        let mut aux = AuxAllocator::new(m + 1);
        let clauses = exactly_one(&vars, &mut aux).unwrap();
        assert_eq!(clauses.len() as u32, 4 * m - 4, "m = {m}");
        assert_eq!(aux.last(), 2 * m - 1);
    }
}

#[test]
fn exactly_one_projected_model_count() {
    for m in 2..=8u32 {
        let vars: Vec<Var> = (1..=m).map(Var::new).collect();
        let mut aux = AuxAllocator::new(m + 1);
        let clauses = exactly_one(&vars, &mut aux).unwrap();
        let total = aux.last();
        let mut projections = std::collections::BTreeSet::new();
        for bits in 0u32..(1 << total) {
            let value = |l: &Lit| ((bits >> l.var().index()) & 1 == 1) != l.is_negative();
            if clauses.iter().all(|c| c.iter().any(value)) {
                projections.insert(bits & ((1 << m) - 1));
            }
        }
        let expected: std::collections::BTreeSet<u32> = (0..m).map(|i| 1 << i).collect();
        assert_eq!(projections, expected, "m = {m}");
    }
}

#[test]
fn block_and_variable_counts() {
    let inst = build_instance(10, None, BuildOptions::pairs_only()).unwrap();
    assert_eq!(inst.family_len(Family::LatinA), 10_800);
    assert_eq!(inst.family_len(Family::LatinB), 10_800);
    assert_eq!(inst.family_len(Family::LatinZ), 10_800);
    assert_eq!(inst.family_len(Family::Orthogonality), 30_000);
    // 3 blocks x 300 groups x 9 auxiliaries.
    assert_eq!(inst.var_count, 3 * 1000 + 3 * 300 * 9);
}

#[test]
fn relation_clause_counts_match_direct_count() {
    for case in 1..=5u8 {
        let inst = build_case(case, BuildOptions::default()).unwrap();
        assert_eq!(inst.family_len(Family::Relation), oracle_relation_clauses(case as usize), "case {case}");
    }
}

#[test]
fn symmetry_family_exceptions() {
    let c1 = build_case(1, BuildOptions::default()).unwrap();
    // Row classes [1,3,3,3]: six consecutive pairs, 45 clauses each.
    assert_eq!(c1.family_len(Family::SymSortColumn), 270);
    assert!(c1.family_len(Family::SymTranspose) > 0);
    let c4 = build_case(4, BuildOptions::default()).unwrap();
    assert_eq!(c4.family_len(Family::SymTranspose), 0);
    let c2 = build_case(2, BuildOptions::default()).unwrap();
    assert_eq!(c2.family_len(Family::SymSwap), 0);
    // Case 4 drops the first column class from the sorted-row family.
    let c5 = build_case(5, BuildOptions::default()).unwrap();
    assert!(c4.family_len(Family::SymSortRow) < c5.family_len(Family::SymSortRow));
    assert_eq!(c1.family_len(Family::A00EqualsB00), 0);
    let with = build_case(1, BuildOptions { a00_b00_equality: true, ..BuildOptions::default() }).unwrap();
    assert_eq!(with.family(Family::A00EqualsB00).unwrap(), a00_b00_equality(&VarLayout::new(10)).as_slice());
}

#[test]
fn builds_are_deterministic() {
    for case in 1..=5 {
        assert_eq!(build_case(case, BuildOptions::default()), build_case(case, BuildOptions::default()));
    }
}

#[test]
fn rejects_bad_requests() {
    assert_eq!(build_case(6, BuildOptions::default()), Err(EncodeError::UnknownCase(6)));
    assert_eq!(build_instance(4, None, BuildOptions::default()), Err(EncodeError::RelationsWithoutForm));
    let form = RelationForm::case(1).unwrap();
    assert!(matches!(build_instance(9, Some(&form), BuildOptions::default()), Err(EncodeError::OrderMismatch { .. })));
}

fn with_cells_fixed(inst: &CnfInstance, a: &Grid, b: &Grid) -> CnfInstance {
    let layout = inst.layout.unwrap();
    let mut out = inst.clone();
    let n = a.order();
    for i in 0..n {
        for j in 0..n {
            out.clauses.push(vec![layout.a(i, j, a.get(i, j)).positive()]);
            out.clauses.push(vec![layout.b(i, j, b.get(i, j)).positive()]);
        }
    }
    out
}

#[test]
fn orthogonal_pairs_satisfy_the_pair_clauses() {
    let inst = build_instance(5, None, BuildOptions::pairs_only()).unwrap();
    let a = Grid::from_fn(5, |i, j| (i + j) % 5).unwrap();
    let b = Grid::from_fn(5, |i, j| (2 * i + j) % 5).unwrap();
    let fixed = with_cells_fixed(&inst, &a, &b);
    assert!(matches!(solve(&fixed, SolverConfig::default(), None).unwrap(), SolveResult::Sat(_)));

    let not_orthogonal = Grid::from_fn(5, |i, j| (3 * i + 3 * j) % 5).unwrap();
    let fixed = with_cells_fixed(&inst, &a, &not_orthogonal);
    assert_eq!(solve(&fixed, SolverConfig::default(), None).unwrap(), SolveResult::Unsat);
}

#[test]
fn models_satisfy_their_instance() {
    let inst = build_instance(5, None, BuildOptions::pairs_only()).unwrap();
    match solve(&inst, SolverConfig::with_seed(3), None).unwrap() {
        SolveResult::Sat(model) => assert!(inst.is_satisfied_by(&model)),
        SolveResult::Unsat => panic!("order 5 has orthogonal pairs"),
    }
}
