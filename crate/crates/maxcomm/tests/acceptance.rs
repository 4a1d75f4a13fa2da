//! Acceptance suite: one test per acceptance criterion, in order. Each
//! test is self-contained, exact, and runs at desk scale; the slowest is
//! the full reference-table reproduction with its fifteen centralizer
//! solves.

use maxcomm::algebra::{polynomial_algebra, MatrixAlgebra};
use maxcomm::bounds::{
    d_r, deg2_min_dim, f3, f4, first_exceptional, laffey_bound, stack_class_bound,
};
use maxcomm::bricks::{
    brick_d, brick_d_appendix, brick_e, build_courter, build_stacked, courter_dim, courter_spec,
    mixed_rigidity_rank, realize, stack, StackSpec,
};
use maxcomm::exactlinalg::{in_span, inverse, matmul};
use maxcomm::{Rational, RationalMatrix};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn criterion_01_brick_e_certification() {
    let e = realize(&brick_e());
    assert_eq!(e.ambient_size(), 9);
    assert_eq!(e.dimension(), 9);
    assert_eq!(e.centralizer().dimension(), 9);
    assert!(e.is_local().unwrap());
    assert_eq!(e.loewy_signature().unwrap().layers(), &[2, 5, 2]);
    assert_eq!(e.nilpotency_degree().unwrap(), 3);
}

#[test]
fn criterion_02_brick_d_certification() {
    for d in [realize(&brick_d()), realize(&brick_d_appendix())] {
        assert_eq!(d.ambient_size(), 5);
        assert_eq!(d.dimension(), 6);
        assert!(d.is_local().unwrap());
        let c = d.centralizer();
        assert_eq!(c.dimension(), 6);
        // C(D) = D as subspaces, not merely in dimension.
        for x in c.basis() {
            assert!(in_span(x, d.basis()).is_some());
        }
        for x in d.basis() {
            assert!(in_span(x, c.basis()).is_some());
        }
    }

    // The display form and the appendix form are conjugate by the
    // permutation swapping the two bottom coordinates.
    let disp = realize(&brick_d());
    let app = realize(&brick_d_appendix());
    let mut p = RationalMatrix::identity(5);
    p.set(3, 3, Rational::zero());
    p.set(4, 4, Rational::zero());
    p.set(3, 4, Rational::one());
    p.set(4, 3, Rational::one());
    let p_inv = inverse(&p).unwrap().unwrap();
    for b in disp.basis() {
        let conj = matmul(&matmul(&p, b).unwrap(), &p_inv).unwrap();
        assert!(in_span(&conj, app.basis()).is_some());
    }
}

#[test]
fn criterion_03_appendix_rigidity_ranks() {
    let e = brick_e();
    let d = brick_d();
    assert_eq!(mixed_rigidity_rank(&e, &e), 25);
    assert_eq!(mixed_rigidity_rank(&e, &d), 5);
    assert_eq!(mixed_rigidity_rank(&d, &e), 5);
    assert_eq!(mixed_rigidity_rank(&d, &d), 1);
}

/// The reference table rows: n, bound, E exponent, D exponent, dim.
const REFERENCE_TABLE: [(usize, u64, usize, usize, usize); 15] = [
    (14, 13, 2, 0, 13),
    (15, 14, 2, 1, 14),
    (16, 15, 2, 2, 15),
    (17, 16, 2, 3, 16),
    (18, 17, 2, 4, 17),
    (19, 17, 3, 0, 17),
    (20, 18, 3, 1, 18),
    (21, 19, 3, 2, 19),
    (22, 20, 3, 3, 20),
    (23, 21, 3, 4, 21),
    (24, 21, 4, 0, 21),
    (25, 22, 4, 1, 22),
    (26, 23, 4, 2, 23),
    (27, 24, 4, 3, 24),
    (28, 25, 4, 4, 25),
];

#[test]
fn criterion_04_reference_table_reproduction() {
    for &(n, bound, q, r, dim) in &REFERENCE_TABLE {
        // The bound column is the degree-3 bound of the signature class
        // (2, n-4, 2) the construction inhabits.
        assert_eq!(stack_class_bound(n as u64).unwrap(), bound, "bound at n={n}");
        let spec = courter_spec(n).unwrap();
        assert_eq!((spec.e_count, spec.d_count), (q, r), "stack spec at n={n}");
        let algebra = build_courter(n).unwrap();
        assert_eq!(algebra.dimension(), dim, "dimension at n={n}");
        assert!(
            algebra.is_maximal_commutative(),
            "centralizer verification at n={n}"
        );
    }
}

/// Not a criterion, a documented discrepancy: the reference bound column
/// is the class bound for (2, n-4, 2); the signature-free minimum over
/// all admissible signatures is strictly smaller on four of the fifteen
/// rows, where outer layers of size 3 or 4 win. The two columns agree on
/// every other row.
#[test]
fn signature_free_minimum_vs_reference_bound_column() {
    let strictly_smaller = [23u64, 26, 27, 28];
    for n in 14..=28u64 {
        let free = d_r(n, 3).unwrap();
        let class = stack_class_bound(n).unwrap();
        if strictly_smaller.contains(&n) {
            assert_eq!(free.value + 1, class, "n={n}");
        } else {
            assert_eq!(free.value, class, "n={n}");
        }
    }
    let witness = d_r(23, 3).unwrap();
    assert_eq!(witness.value, 20);
    assert_eq!(witness.argmin, vec![2, 18, 3]);
}

#[test]
fn criterion_05_first_exceptional_anchors() {
    assert_eq!(first_exceptional(3).unwrap(), (14, 13));
    assert_eq!(first_exceptional(4).unwrap(), (23, 22));
    assert_eq!(first_exceptional(5).unwrap(), (29, 28));
    assert_eq!(first_exceptional(6).unwrap(), (36, 35));
}

#[test]
fn criterion_06_no_courter_below_14() {
    for n in 2..=13u64 {
        assert!(deg2_min_dim(n).unwrap() >= n, "degree 2, n={n}");
        for r in 3..=6usize {
            if n >= r as u64 + 2 {
                assert!(d_r(n, r).unwrap().value >= n, "degree {r}, n={n}");
            }
        }
    }
}

#[test]
fn criterion_07_outer_layer_one_collapses_to_n() {
    // Degree 3: every signature with total at most 30 and an outer layer
    // of 1 has bound at least n.
    for n1 in 1..=28u64 {
        for n2 in 1..=28u64 {
            for n3 in 1..=28u64 {
                let n = n1 + n2 + n3;
                if n > 30 || (n1 != 1 && n3 != 1) {
                    continue;
                }
                assert!(f3(n1, n2, n3).unwrap() >= n, "({n1},{n2},{n3})");
            }
        }
    }
    // Degree 4 likewise.
    for n1 in 1..=27u64 {
        for n2 in 1..=27u64 {
            for n3 in 1..=27u64 {
                for n4 in 1..=27u64 {
                    let n = n1 + n2 + n3 + n4;
                    if n > 30 || (n1 != 1 && n4 != 1) {
                        continue;
                    }
                    assert!(f4(n1, n2, n3, n4).unwrap() >= n, "({n1},{n2},{n3},{n4})");
                }
            }
        }
    }
}

#[test]
fn criterion_08_dimension_formula_identity() {
    for n in 14..=40usize {
        let expected = 5 + (4 * (n - 4)).div_ceil(5);
        assert_eq!(courter_dim(n).unwrap(), expected, "formula at n={n}");
        let algebra = build_courter(n).unwrap();
        assert_eq!(algebra.ambient_size(), n);
        assert_eq!(algebra.dimension(), expected, "construction at n={n}");
    }
}

// ---------------------------------------------------------------------
// Criterion 9: oracle-based property suites
// ---------------------------------------------------------------------

/// Plain dense Gaussian elimination over the rationals, written without
/// any of the library's elimination machinery so the two solvers share
/// no code path.
fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &lead;
                for c in col..width {
                    let delta = &rows[rank][c] * &factor;
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Independent centralizer dimension: one dense system for all basis
/// elements, unknowns indexed row-major (the library vectorizes
/// column-major, so even the variable order differs).
fn oracle_centralizer_dim(n: usize, basis: &[RationalMatrix]) -> usize {
    let mut rows = Vec::new();
    for b in basis {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    // (XB - BX)_{ij} = sum_k x_{ik} b_{kj} - b_{ik} x_{kj}
                    row[i * n + k] = &row[i * n + k] + b.get(k, j);
                    row[k * n + j] = &row[k * n + j] - b.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    n * n - dense_rank(rows)
}

fn random_integer_matrix(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    RationalMatrix::from_i64_rows(&refs).unwrap()
}

/// A random product of integer shear matrices; determinant 1, so the
/// exact inverse exists and is integral.
fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> RationalMatrix {
    let mut g = RationalMatrix::identity(n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c = Rational::from_integer(BigInt::from(rng.gen_range(-2..=2i64)));
        for col in 0..n {
            let bumped = g.get(i, col) + &c * g.get(j, col);
            g.set(i, col, bumped);
        }
    }
    g
}

fn conjugated(algebra: &MatrixAlgebra, g: &RationalMatrix) -> MatrixAlgebra {
    let g_inv = inverse(g).unwrap().expect("unimodular matrices invert");
    let basis = algebra
        .basis()
        .iter()
        .map(|b| matmul(&matmul(g, b).unwrap(), &g_inv).unwrap())
        .collect();
    MatrixAlgebra::from_span(algebra.ambient_size(), basis).unwrap()
}

#[test]
fn criterion_09_oracle_property_suites() {
    // Thirty random closed commutative algebras with n <= 4: the sparse
    // incremental centralizer dimension matches a single-shot dense
    // solve. Polynomial algebras K[M] are closed by the characteristic
    // polynomial and commutative by construction; every fifth case is a
    // block-diagonal direct sum instead.
    let mut rng = ChaCha8Rng::seed_from_u64(90210);
    for case in 0..30 {
        let algebra = if case % 5 == 4 {
            let a = random_integer_matrix(2, &mut rng);
            let b = random_integer_matrix(2, &mut rng);
            let pa = polynomial_algebra(&a).unwrap();
            let pb = polynomial_algebra(&b).unwrap();
            let mut span = Vec::new();
            for x in pa.basis() {
                let mut big = RationalMatrix::zeros(4, 4);
                for (i, j, v) in x.nonzero_entries() {
                    big.set(i, j, v.clone());
                }
                span.push(big);
            }
            for y in pb.basis() {
                let mut big = RationalMatrix::zeros(4, 4);
                for (i, j, v) in y.nonzero_entries() {
                    big.set(2 + i, 2 + j, v.clone());
                }
                span.push(big);
            }
            MatrixAlgebra::from_span(4, span).unwrap()
        } else {
            let n = 1 + case % 4;
            polynomial_algebra(&random_integer_matrix(n, &mut rng)).unwrap()
        };
        assert!(algebra.closure_failure().is_none(), "case {case} is closed");
        assert!(algebra.is_commutative(), "case {case} commutes");
        let fast = algebra.centralizer().dimension();
        let slow = oracle_centralizer_dim(algebra.ambient_size(), algebra.basis());
        assert_eq!(fast, slow, "case {case}");
    }

    // Loewy signatures are conjugation invariants: ten random unimodular
    // conjugations of each brick leave them unchanged.
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    for brick in [realize(&brick_e()), realize(&brick_d())] {
        let reference = brick.loewy_signature().unwrap();
        for _ in 0..10 {
            let g = random_unimodular(brick.ambient_size(), &mut rng);
            let moved = conjugated(&brick, &g);
            assert_eq!(moved.dimension(), brick.dimension());
            assert_eq!(
                moved.loewy_signature().unwrap().layers(),
                reference.layers()
            );
        }
    }

    // The stack dimension identity for all four ordered pairs:
    // dim(A * B) = dim A + dim B - (1 + n1*n3).
    let e = brick_e();
    let d = brick_d();
    for (b1, b2) in [(&e, &e), (&e, &d), (&d, &e), (&d, &d)] {
        let stacked = realize(&stack(b1, b2).unwrap());
        let lhs = stacked.dimension();
        let rhs = realize(b1).dimension() + realize(b2).dimension() - (1 + b1.n1() * b1.n3());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn criterion_10_bound_beats_laffey() {
    for n in 6..=60u64 {
        let d3 = Rational::from_integer(BigInt::from(d_r(n, 3).unwrap().value));
        let laffey = laffey_bound(n);
        assert!(laffey.width() < Rational::new(BigInt::one(), BigInt::from(1_000_000_000u64)));
        assert!(d3 > *laffey.hi(), "n={n}");
    }
}

/// Sanity floor under the acceptance criteria: the stacked grid from the
/// construction section stays maximal for every exponent pair that the
/// table rows exercise indirectly.
#[test]
fn stacked_specs_from_the_table_are_maximal() {
    for &(_, _, q, r, dim) in &REFERENCE_TABLE {
        let algebra = build_stacked(StackSpec::new(q, r).unwrap()).unwrap();
        assert_eq!(algebra.dimension(), dim);
        assert!(algebra.is_maximal_commutative());
    }
}
