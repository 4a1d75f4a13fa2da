//! The explicit brick algebras E and D, the stack operator that glues
//! bricks along shared outer layers, the mixed-rigidity rank systems, and
//! the Courter-like construction that produces a maximal commutative
//! subalgebra of dimension below n inside every matrix algebra of size
//! n >= 14.
//!
//! A brick is a local algebra of nilpotency degree 3 in block Loewy form
//! K.I + Lambda + Sigma with respect to K^{n1} (+) K^s (+) K^{n3}: each
//! generator lambda_i places a block A_i (s x n1) in position (2, 1) and a
//! block B_i (n3 x s) in position (3, 2), and Sigma is the full n3 x n1
//! bottom-left socle block. Commutativity of the lambda's modulo the socle
//! is exactly the relation B_i A_j = B_j A_i.

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::exactlinalg::elim::Echelon;
use crate::exactlinalg::{matmul, RationalMatrix};

/// A brick presented by outer sizes, middle size, and generator block
/// pairs. The commutation relations B_i A_j = B_j A_i are checked at
/// construction.
#[derive(Clone, Debug)]
pub struct BrickForm {
    n1: usize,
    n3: usize,
    s: usize,
    gens: Vec<(RationalMatrix, RationalMatrix)>,
}

impl BrickForm {
    /// Validates shapes and the pairwise commutation relations.
    pub fn new(
        n1: usize,
        n3: usize,
        s: usize,
        gens: Vec<(RationalMatrix, RationalMatrix)>,
    ) -> Result<Self> {
        for (k, (a, b)) in gens.iter().enumerate() {
            if a.rows() != s || a.cols() != n1 {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k}: A block is {}x{}, expected {s}x{n1}",
                    a.rows(),
                    a.cols()
                )));
            }
            if b.rows() != n3 || b.cols() != s {
                return Err(Error::DimensionMismatch(format!(
                    "generator {k}: B block is {}x{}, expected {n3}x{s}",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let bi_aj = matmul(&gens[i].1, &gens[j].0)?;
                let bj_ai = matmul(&gens[j].1, &gens[i].0)?;
                if bi_aj != bj_ai {
                    return Err(Error::BrickCommutation { i, j });
                }
            }
        }
        Ok(BrickForm { n1, n3, s, gens })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n3(&self) -> usize {
        self.n3
    }

    /// Middle layer size.
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn gens(&self) -> &[(RationalMatrix, RationalMatrix)] {
        &self.gens
    }

    /// Ambient size of the realized algebra.
    pub fn ambient(&self) -> usize {
        self.n1 + self.s + self.n3
    }
}

fn int_matrix(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_i64_rows(rows).expect("static block data")
}

/// The brick E: outer layers of size 2, middle layer of size 5, four
/// generators with integer blocks. Realizes to a maximal commutative
/// algebra of dimension 9 in M_9 with Loewy signature (2, 5, 2).
pub fn brick_e() -> BrickForm {
    let a1 = int_matrix(&[&[1, -1], &[0, 0], &[-1, 0], &[1, 0], &[0, -1]]);
    let a2 = int_matrix(&[&[0, 0], &[0, 1], &[0, 0], &[0, 1], &[-1, 2]]);
    let a3 = int_matrix(&[&[1, 0], &[0, 1], &[0, 1], &[0, -1], &[1, 0]]);
    let a4 = int_matrix(&[&[0, 1], &[-1, -1], &[0, -1], &[0, 2], &[0, 0]]);

    let b1 = int_matrix(&[&[0, 0, 1, 0, 0], &[1, 0, -1, -1, 0]]);
    let b2 = int_matrix(&[&[-1, 0, 0, 1, 1], &[-1, 0, 1, 2, 2]]);
    let b3 = int_matrix(&[&[-1, -1, -1, 0, 0], &[1, 0, 1, 1, -1]]);
    let b4 = int_matrix(&[&[1, 0, 2, 1, 0], &[0, 2, 0, 0, 0]]);

    BrickForm::new(2, 2, 5, vec![(a1, b1), (a2, b2), (a3, b3), (a4, b4)])
        .expect("brick E satisfies the commutation relations")
}

/// The brick D: one middle dimension between outer layers of size 2, a
/// single generator with A = (1 0) and B = (0, 1)^T. Realizes to a maximal
/// commutative algebra of dimension 6 in M_5.
pub fn brick_d() -> BrickForm {
    let a = int_matrix(&[&[1, 0]]);
    let b = int_matrix(&[&[0], &[1]]);
    BrickForm::new(2, 2, 1, vec![(a, b)]).expect("brick D is a valid brick")
}

/// The variant of D with B = (1, 0)^T. Conjugate to [`brick_d`] by the
/// permutation swapping the two bottom coordinates; kept separate so both
/// presentations stay available and their equivalence can be certified.
pub fn brick_d_appendix() -> BrickForm {
    let a = int_matrix(&[&[1, 0]]);
    let b = int_matrix(&[&[1], &[0]]);
    BrickForm::new(2, 2, 1, vec![(a, b)]).expect("appendix D is a valid brick")
}

/// Realizes a brick as a unital matrix algebra: the span of the identity,
/// the generators lambda_i (A_i in block (2, 1), B_i in block (3, 2)), and
/// the n1*n3 socle matrix units in block (3, 1), listed in row-major order
/// of that block. The dimension is 1 + #generators + n1*n3 whenever the
/// generators are independent.
pub fn realize(b: &BrickForm) -> MatrixAlgebra {
    let (n1, n3, s) = (b.n1, b.n3, b.s);
    let n = b.ambient();
    let mut span = Vec::with_capacity(1 + b.gens.len() + n1 * n3);
    span.push(RationalMatrix::identity(n));
    for (a_blk, b_blk) in &b.gens {
        let mut lambda = RationalMatrix::zeros(n, n);
        for (i, j, v) in a_blk.nonzero_entries() {
            lambda.set(n1 + i, j, v.clone());
        }
        for (i, j, v) in b_blk.nonzero_entries() {
            lambda.set(n1 + s + i, n1 + j, v.clone());
        }
        span.push(lambda);
    }
    for i in 0..n3 {
        for j in 0..n1 {
            span.push(RationalMatrix::unit(n, n, n1 + s + i, j));
        }
    }
    MatrixAlgebra::from_span(n, span).expect("brick blocks have the ambient shape")
}

/// Stacks two bricks with matching outer layers: the middle layers are
/// laid out as K^{s1} above K^{s2}, the first brick's generators are
/// zero-padded below, the second brick's above, and the generator list is
/// concatenated first-brick-first.
pub fn stack(b1: &BrickForm, b2: &BrickForm) -> Result<BrickForm> {
    if b1.n1 != b2.n1 || b1.n3 != b2.n3 {
        return Err(Error::OuterLayerMismatch(b1.n1, b1.n3, b2.n1, b2.n3));
    }
    let (n1, n3) = (b1.n1, b1.n3);
    let s = b1.s + b2.s;
    let mut gens = Vec::with_capacity(b1.gens.len() + b2.gens.len());
    for (a, b) in &b1.gens {
        let mut a_pad = RationalMatrix::zeros(s, n1);
        for (i, j, v) in a.nonzero_entries() {
            a_pad.set(i, j, v.clone());
        }
        let mut b_pad = RationalMatrix::zeros(n3, s);
        for (i, j, v) in b.nonzero_entries() {
            b_pad.set(i, j, v.clone());
        }
        gens.push((a_pad, b_pad));
    }
    for (a, b) in &b2.gens {
        let mut a_pad = RationalMatrix::zeros(s, n1);
        for (i, j, v) in a.nonzero_entries() {
            a_pad.set(b1.s + i, j, v.clone());
        }
        let mut b_pad = RationalMatrix::zeros(n3, s);
        for (i, j, v) in b.nonzero_entries() {
            b_pad.set(i, b1.s + j, v.clone());
        }
        gens.push((a_pad, b_pad));
    }
    BrickForm::new(n1, n3, s, gens)
}

/// Rank of the mixed-rigidity system for the ordered pair (P, Q): the
/// linear conditions T A_j^Q = 0 (all j) followed by B_i^P T = 0 (all i)
/// on the s_P x s_Q unknown matrix T, flattened row-major. Rank equal to
/// s_P * s_Q means T = 0 is the only solution.
pub fn mixed_rigidity_rank(p: &BrickForm, q: &BrickForm) -> usize {
    let (sp, sq) = (p.s, q.s);
    let unknowns = sp * sq;
    let mut echelon = Echelon::new(unknowns);
    // T A_j^Q = 0: entry (a, c) of the product gives
    //   sum_k T[a, k] * A_j[k, c] = 0.
    for (a_q, _) in &q.gens {
        for a in 0..sp {
            for c in 0..q.n1 {
                let entries = (0..sq)
                    .map(|k| (a * sq + k, a_q.get(k, c).clone()))
                    .collect::<Vec<_>>();
                echelon.insert_rational(entries);
            }
        }
    }
    // B_i^P T = 0: entry (r, k) of the product gives
    //   sum_a B_i[r, a] * T[a, k] = 0.
    for (_, b_p) in &p.gens {
        for r in 0..p.n3 {
            for k in 0..sq {
                let entries = (0..sp)
                    .map(|a| (a * sq + k, b_p.get(r, a).clone()))
                    .collect::<Vec<_>>();
                echelon.insert_rational(entries);
            }
        }
    }
    echelon.rank()
}

/// How many copies of E and D to stack, E's first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StackSpec {
    pub e_count: usize,
    pub d_count: usize,
}

impl StackSpec {
    pub fn new(e_count: usize, d_count: usize) -> Result<Self> {
        if e_count + d_count == 0 {
            return Err(Error::EmptyStack);
        }
        Ok(StackSpec { e_count, d_count })
    }
}

/// Builds the stacked brick E^(*q) * D^(*r) and realizes it: an algebra of
/// dimension 5 + 4q + r in the matrix algebra of size 4 + 5q + r.
pub fn build_stacked(spec: StackSpec) -> Result<MatrixAlgebra> {
    let mut bricks: Vec<BrickForm> = Vec::new();
    bricks.extend(std::iter::repeat_with(brick_e).take(spec.e_count));
    bricks.extend(std::iter::repeat_with(brick_d).take(spec.d_count));
    let mut iter = bricks.into_iter();
    let mut acc = iter.next().ok_or(Error::EmptyStack)?;
    for b in iter {
        acc = stack(&acc, &b)?;
    }
    Ok(realize(&acc))
}

/// Minimum ambient size for the Courter-like construction.
pub const COURTER_MIN_N: usize = 14;

/// Dimension of the constructed algebra: 5 + ceil(4(n - 4) / 5).
pub fn courter_dim(n: usize) -> Result<usize> {
    if n < COURTER_MIN_N {
        return Err(Error::AmbientTooSmall {
            min: COURTER_MIN_N as u64,
            got: n as u64,
        });
    }
    Ok(5 + (4 * (n - 4)).div_ceil(5))
}

/// The Courter-like algebra in the matrix algebra of size n >= 14: with
/// n - 4 = 5q + r (Euclidean division, so q >= 2 and 0 <= r < 5), stacks
/// q copies of E and r copies of D. The result is maximal commutative of
/// dimension `courter_dim(n)` < n.
pub fn build_courter(n: usize) -> Result<MatrixAlgebra> {
    if n < COURTER_MIN_N {
        return Err(Error::AmbientTooSmall {
            min: COURTER_MIN_N as u64,
            got: n as u64,
        });
    }
    let q = (n - 4) / 5;
    let r = (n - 4) % 5;
    build_stacked(StackSpec::new(q, r)?)
}

/// The stack specification used by [`build_courter`].
pub fn courter_spec(n: usize) -> Result<StackSpec> {
    if n < COURTER_MIN_N {
        return Err(Error::AmbientTooSmall {
            min: COURTER_MIN_N as u64,
            got: n as u64,
        });
    }
    StackSpec::new((n - 4) / 5, (n - 4) % 5)
}
