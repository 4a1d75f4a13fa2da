//! Unital matrix subalgebras given by spanning sets, and the structural
//! machinery built on them: centralizer, closure and commutativity checks,
//! Jacobson radical, Loewy filtration and signature, locality, and the
//! maximal-commutativity certificate C(A) = A.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlinalg::elim::{Echelon, SparseRow};
use crate::exactlinalg::{in_span, matmul, nullspace_basis, Rational, RationalMatrix};

/// A unital subalgebra of the n-by-n matrices, represented by a linearly
/// independent spanning set.
///
/// Construction reduces an arbitrary spanning family to a basis by rank
/// filtering, keeping the first element that introduces each new pivot, so
/// parametric families may be passed in redundantly.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    n: usize,
    basis: Vec<RationalMatrix>,
    contains_identity: bool,
}

/// The Loewy signature (n_1, ..., n_r): successive quotient dimensions of
/// the radical filtration of the column space. The layers are positive and
/// sum to the ambient size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoewySignature {
    layers: Vec<usize>,
}

impl LoewySignature {
    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    /// Nilpotency degree r: the number of layers.
    pub fn degree(&self) -> usize {
        self.layers.len()
    }
}

impl std::fmt::Display for LoewySignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.layers.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl PartialEq<&[usize]> for LoewySignature {
    fn eq(&self, other: &&[usize]) -> bool {
        self.layers == *other
    }
}

/// Column-major vectorization index of entry (i, j) of an n-by-n matrix.
#[inline]
fn vec_index(i: usize, j: usize, n: usize) -> usize {
    i + j * n
}

impl MatrixAlgebra {
    /// Builds an algebra from a spanning family of n-by-n matrices.
    ///
    /// The family is reduced to a linearly independent basis (first
    /// occurrence of each pivot wins). Whether the identity lies in the
    /// span is recorded; all constructions in this crate are unital.
    pub fn from_span(n: usize, span: Vec<RationalMatrix>) -> Result<Self> {
        let mut echelon = Echelon::new(n * n);
        let mut basis = Vec::new();
        for (k, m) in span.into_iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "span element {k} is {}x{}, expected {n}x{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            let entries = m
                .nonzero_entries()
                .map(|(i, j, v)| (vec_index(i, j, n), v.clone()))
                .collect::<Vec<_>>();
            if echelon.insert_rational(entries) {
                basis.push(m);
            }
        }
        let contains_identity = if n == 0 {
            false
        } else {
            in_span(&RationalMatrix::identity(n), &basis).is_some()
        };
        Ok(MatrixAlgebra {
            n,
            basis,
            contains_identity,
        })
    }

    /// Internal constructor for spans already known to be independent.
    fn from_basis_unchecked(n: usize, basis: Vec<RationalMatrix>, contains_identity: bool) -> Self {
        MatrixAlgebra {
            n,
            basis,
            contains_identity,
        }
    }

    pub fn ambient_size(&self) -> usize {
        self.n
    }

    /// Size of the independent basis.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    /// The full centralizer C(A) = {X : XB = BX for every basis element B}.
    ///
    /// For each basis element B the commutation constraint is the linear
    /// operator X -> BX - XB on column-major vectorized X, i.e. the matrix
    /// `I (x) B - B^T (x) I`; the constraints for all basis elements are
    /// stacked and the kernel is read off in canonical form. The result
    /// always contains the identity, and contains A itself whenever A is
    /// commutative.
    pub fn centralizer(&self) -> MatrixAlgebra {
        let n = self.n;
        let mut echelon = Echelon::new(n * n);
        for b in &self.basis {
            // Sparse views of B: nonzeros by row and by column.
            let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
            let mut by_col: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
            for (i, j, v) in b.nonzero_entries() {
                by_row[i].push((j, v));
                by_col[j].push((i, v));
            }
            // Equation r = i + j*n constrains entry (i, j) of BX - XB:
            //   (I (x) B) row:   + B[i, k] at unknown (k, j)
            //   (B^T (x) I) row: - B[l, j] at unknown (i, l)
            for r in 0..n * n {
                let i = r % n;
                let j = r / n;
                let mut entries: Vec<(usize, Rational)> =
                    Vec::with_capacity(by_row[i].len() + by_col[j].len());
                for &(k, v) in &by_row[i] {
                    entries.push((vec_index(k, j, n), v.clone()));
                }
                for &(l, v) in &by_col[j] {
                    entries.push((vec_index(i, l, n), -v));
                }
                echelon.insert(SparseRow::from_rational_entries(entries));
            }
        }
        let basis: Vec<RationalMatrix> = echelon
            .kernel_basis()
            .into_iter()
            .map(|v| {
                let mut m = RationalMatrix::zeros(n, n);
                for (idx, val) in v.into_iter().enumerate() {
                    if !val.is_zero() {
                        m.set(idx % n, idx / n, val);
                    }
                }
                m
            })
            .collect();
        debug_assert!(
            n == 0 || in_span(&RationalMatrix::identity(n), &basis).is_some(),
            "centralizer must contain the identity"
        );
        MatrixAlgebra::from_basis_unchecked(n, basis, n > 0)
    }

    /// True iff all basis elements commute pairwise.
    pub fn is_commutative(&self) -> bool {
        for (i, x) in self.basis.iter().enumerate() {
            for y in &self.basis[i + 1..] {
                let xy = matmul(x, y).expect("square basis elements");
                let yx = matmul(y, x).expect("square basis elements");
                if xy != yx {
                    return false;
                }
            }
        }
        true
    }

    /// Index pair (i, j) of the first basis product that falls outside the
    /// span, or `None` when the span is multiplicatively closed.
    pub fn closure_failure(&self) -> Option<(usize, usize)> {
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                let p = matmul(&self.basis[i], &self.basis[j]).expect("square basis elements");
                if in_span(&p, &self.basis).is_none() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// True iff every pairwise product of basis elements lies in the span.
    pub fn is_closed(&self) -> bool {
        self.closure_failure().is_none()
    }

    /// True iff A is commutative and equals its own centralizer.
    ///
    /// For commutative A the inclusion A into C(A) is automatic, so the
    /// dimensions decide; equality of the two spans is asserted as a
    /// cross-check on top of the dimension comparison.
    pub fn is_maximal_commutative(&self) -> bool {
        if !self.is_commutative() {
            return false;
        }
        let c = self.centralizer();
        let maximal = c.dimension() == self.dimension();
        if maximal {
            assert!(
                c.basis.iter().all(|x| in_span(x, &self.basis).is_some()),
                "centralizer of equal dimension must coincide with the algebra"
            );
        }
        maximal
    }

    /// Basis of the Jacobson radical via the characteristic-zero trace
    /// form: rad(A) is the kernel of the Gram matrix G[i][j] =
    /// tr(B_i B_j) pulled back to A.
    ///
    /// Expects a closed, commutative, unital input. Every returned element
    /// is checked to be nilpotent; a non-nilpotent kernel element proves
    /// the input was not closed and is reported as an error.
    pub fn radical(&self) -> Result<Vec<RationalMatrix>> {
        let d = self.basis.len();
        let mut gram = RationalMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let t = trace_of_product(&self.basis[i], &self.basis[j]);
                gram.set(i, j, t.clone());
                if i != j {
                    gram.set(j, i, t);
                }
            }
        }
        let mut rad = Vec::new();
        for (k, coeffs) in nullspace_basis(&gram).into_iter().enumerate() {
            let mut elem = RationalMatrix::zeros(self.n, self.n);
            for (t, b) in self.basis.iter().enumerate() {
                let c = coeffs.get(t, 0);
                if !c.is_zero() {
                    elem = elem.add(&b.scaled(c)).expect("equal shapes");
                }
            }
            if !is_nilpotent(&elem) {
                return Err(Error::NonNilpotentRadical(k));
            }
            rad.push(elem);
        }
        Ok(rad)
    }

    /// True iff A is local, i.e. A = K.I + rad(A) (the quotient by the
    /// radical is one-dimensional).
    pub fn is_local(&self) -> Result<bool> {
        Ok(self.dimension() - self.radical()?.len() == 1)
    }

    /// Bases of the subspace chain K^n > J K^n > J^2 K^n > ... > 0, where
    /// J is the radical acting on the column space. The last entry is the
    /// first zero subspace (empty basis). Requires a local algebra.
    pub fn loewy_filtration(&self) -> Result<Vec<Vec<RationalMatrix>>> {
        let rad = self.radical()?;
        if self.dimension() - rad.len() != 1 {
            return Err(Error::NotLocal);
        }
        let n = self.n;
        let mut chain: Vec<Vec<RationalMatrix>> = Vec::new();
        let mut current: Vec<RationalMatrix> =
            (0..n).map(|i| RationalMatrix::unit(n, 1, i, 0)).collect();
        chain.push(current.clone());
        while !current.is_empty() {
            let mut echelon = Echelon::new(n);
            let mut next = Vec::new();
            for m in &rad {
                for u in &current {
                    let image = matmul(m, u).expect("n x n times n x 1");
                    let entries = image
                        .nonzero_entries()
                        .map(|(i, _, v)| (i, v.clone()))
                        .collect::<Vec<_>>();
                    if echelon.insert_rational(entries) {
                        next.push(image);
                    }
                }
            }
            assert!(
                next.len() < current.len(),
                "radical action must strictly shrink the filtration"
            );
            chain.push(next.clone());
            current = next;
        }
        Ok(chain)
    }

    /// The Loewy signature: consecutive differences of the filtration
    /// dimensions. Requires a local algebra. The scalar algebra K.I gets
    /// the one-layer signature (n).
    pub fn loewy_signature(&self) -> Result<LoewySignature> {
        let chain = self.loewy_filtration()?;
        let layers: Vec<usize> = chain.windows(2).map(|w| w[0].len() - w[1].len()).collect();
        debug_assert_eq!(layers.iter().sum::<usize>(), self.n);
        debug_assert!(layers.iter().all(|&l| l > 0));
        Ok(LoewySignature { layers })
    }

    /// The nilpotency degree r (smallest r with J^r K^n = 0); degree 1
    /// means the radical is zero.
    pub fn nilpotency_degree(&self) -> Result<usize> {
        Ok(self.loewy_signature()?.degree())
    }
}

/// tr(X Y) computed entrywise without forming the product.
fn trace_of_product(x: &RationalMatrix, y: &RationalMatrix) -> Rational {
    let mut acc = Rational::zero();
    for (a, b, v) in x.nonzero_entries() {
        let w = y.get(b, a);
        if !w.is_zero() {
            acc += v * w;
        }
    }
    acc
}

/// True iff the square matrix is nilpotent, by repeated squaring up to
/// exponent >= n.
fn is_nilpotent(m: &RationalMatrix) -> bool {
    let n = m.rows();
    let mut power = m.clone();
    let mut exponent = 1usize;
    loop {
        if power.is_zero() {
            return true;
        }
        if exponent >= n {
            return false;
        }
        power = matmul(&power, &power).expect("square");
        exponent *= 2;
    }
}

/// Convenience: the algebra generated by the powers of one matrix,
/// span {I, M, M^2, ...} inside the n-by-n matrices. Always commutative,
/// closed, and unital.
pub fn polynomial_algebra(m: &RationalMatrix) -> Result<MatrixAlgebra> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "polynomial algebra of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut span = Vec::with_capacity(n);
    let mut power = RationalMatrix::identity(n);
    // Powers beyond n - 1 are dependent by Cayley-Hamilton.
    for _ in 0..n {
        span.push(power.clone());
        power = matmul(&power, m)?;
    }
    MatrixAlgebra::from_span(n, span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rank;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    fn diagonal_algebra(n: usize) -> MatrixAlgebra {
        let span = (0..n).map(|i| RationalMatrix::unit(n, n, i, i)).collect();
        MatrixAlgebra::from_span(n, span).unwrap()
    }

    fn scalar_algebra(n: usize) -> MatrixAlgebra {
        MatrixAlgebra::from_span(n, vec![RationalMatrix::identity(n)]).unwrap()
    }

    fn full_matrix_algebra(n: usize) -> MatrixAlgebra {
        let mut span = Vec::new();
        for i in 0..n {
            for j in 0..n {
                span.push(RationalMatrix::unit(n, n, i, j));
            }
        }
        MatrixAlgebra::from_span(n, span).unwrap()
    }

    #[test]
    fn span_is_reduced_to_first_occurrence_basis() {
        let i2 = RationalMatrix::identity(2);
        let twice = i2.scaled(&Rational::from(BigInt::from(2)));
        let e12 = RationalMatrix::unit(2, 2, 0, 1);
        let a = MatrixAlgebra::from_span(2, vec![i2.clone(), twice, e12.clone()]).unwrap();
        assert_eq!(a.dimension(), 2);
        assert_eq!(a.basis()[0], i2);
        assert_eq!(a.basis()[1], e12);
        assert!(a.contains_identity());
    }

    #[test]
    fn diagonal_algebra_has_dimension_n() {
        assert_eq!(diagonal_algebra(4).dimension(), 4);
    }

    #[test]
    fn centralizer_of_scalars_is_everything() {
        let c = scalar_algebra(3).centralizer();
        assert_eq!(c.dimension(), 9);
    }

    #[test]
    fn centralizer_of_diagonal_is_itself() {
        let d = diagonal_algebra(4);
        let c = d.centralizer();
        assert_eq!(c.dimension(), 4);
        for x in c.basis() {
            assert!(in_span(x, d.basis()).is_some());
        }
    }

    #[test]
    fn nullspace_of_diagonal_commutator_system_has_three_vectors() {
        // The stacked commutator system for the diagonal algebra in M_3
        // has nullity 3: the diagonal matrices centralize themselves.
        let c = diagonal_algebra(3).centralizer();
        assert_eq!(c.dimension(), 3);
    }

    #[test]
    fn full_matrix_algebra_is_not_commutative_but_closed() {
        let a = full_matrix_algebra(2);
        assert!(!a.is_commutative());
        assert!(a.is_closed());
        assert_eq!(a.centralizer().dimension(), 1);
    }

    #[test]
    fn closure_failure_reports_first_offending_product() {
        let span = vec![
            RationalMatrix::identity(2),
            RationalMatrix::unit(2, 2, 0, 1),
            RationalMatrix::unit(2, 2, 1, 0),
        ];
        let a = MatrixAlgebra::from_span(2, span).unwrap();
        // E_12 * E_21 = E_11 is outside the span.
        assert_eq!(a.closure_failure(), Some((1, 2)));
        assert!(!a.is_closed());
    }

    #[test]
    fn diagonal_is_maximal_commutative_scalars_are_not() {
        assert!(diagonal_algebra(3).is_maximal_commutative());
        assert!(!scalar_algebra(2).is_maximal_commutative());
    }

    #[test]
    fn radical_of_diagonal_is_zero() {
        assert!(diagonal_algebra(3).radical().unwrap().is_empty());
    }

    #[test]
    fn jordan_block_algebra_structure() {
        // span {I, N} with N^2 = 0 is local with filtration 2 > 1 > 0.
        let n2 = RationalMatrix::unit(2, 2, 0, 1);
        let a = MatrixAlgebra::from_span(2, vec![RationalMatrix::identity(2), n2.clone()]).unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], n2.scaled(rad[0].get(0, 1)));
        assert!(a.is_local().unwrap());
        let chain = a.loewy_filtration().unwrap();
        let dims: Vec<usize> = chain.iter().map(Vec::len).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(a.loewy_signature().unwrap(), &[1, 1][..]);
        assert_eq!(a.nilpotency_degree().unwrap(), 2);
        assert!(a.is_maximal_commutative());
    }

    #[test]
    fn scalar_algebra_is_local_with_one_layer() {
        let a = scalar_algebra(3);
        assert!(a.is_local().unwrap());
        assert_eq!(a.loewy_signature().unwrap(), &[3][..]);
        assert_eq!(a.nilpotency_degree().unwrap(), 1);
    }

    #[test]
    fn diagonal_algebra_is_not_local() {
        let a = diagonal_algebra(2);
        assert!(!a.is_local().unwrap());
        assert!(matches!(a.loewy_signature(), Err(Error::NotLocal)));
    }

    #[test]
    fn centralizer_dimension_adds_over_block_diagonal_sums() {
        // A = A_1 (+) A_2 block-diagonally embedded; C(A) = C(A_1) (+) C(A_2).
        let pairs = [
            (scalar_algebra(2), diagonal_algebra(2)),
            (diagonal_algebra(2), scalar_algebra(3)),
            (scalar_algebra(2), scalar_algebra(2)),
        ];
        for (a1, a2) in pairs {
            let n1 = a1.ambient_size();
            let n2 = a2.ambient_size();
            let n = n1 + n2;
            let mut span = Vec::new();
            for b in a1.basis() {
                let mut big = RationalMatrix::zeros(n, n);
                for (i, j, v) in b.nonzero_entries() {
                    big.set(i, j, v.clone());
                }
                span.push(big);
            }
            for b in a2.basis() {
                let mut big = RationalMatrix::zeros(n, n);
                for (i, j, v) in b.nonzero_entries() {
                    big.set(n1 + i, n1 + j, v.clone());
                }
                span.push(big);
            }
            let sum = MatrixAlgebra::from_span(n, span).unwrap();
            assert_eq!(
                sum.centralizer().dimension(),
                a1.centralizer().dimension() + a2.centralizer().dimension()
            );
        }
    }

    #[test]
    fn polynomial_algebra_of_jordan_block() {
        let j = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let a = polynomial_algebra(&j).unwrap();
        assert_eq!(a.dimension(), 3);
        assert!(a.is_commutative());
        assert!(a.is_closed());
        assert!(a.is_maximal_commutative());
        assert_eq!(a.loewy_signature().unwrap(), &[1, 1, 1][..]);
    }

    #[test]
    fn radical_elements_are_nilpotent_and_annihilate_at_degree() {
        let j = m(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let a = polynomial_algebra(&j).unwrap();
        let rad = a.radical().unwrap();
        assert_eq!(rad.len(), 2);
        let r = a.nilpotency_degree().unwrap();
        assert_eq!(r, 3);
        // The product of any r radical elements is zero.
        for x in &rad {
            let mut p = x.clone();
            for y in std::iter::repeat(&rad[0]).take(r - 1) {
                p = matmul(&p, y).unwrap();
            }
            assert!(p.is_zero());
        }
    }

    #[test]
    fn centralizer_contains_algebra_when_commutative() {
        let j = m(&[&[2, 1], &[0, 2]]);
        let a = polynomial_algebra(&j).unwrap();
        let c = a.centralizer();
        for b in a.basis() {
            assert!(in_span(b, c.basis()).is_some());
        }
        assert!(c.contains_identity());
    }

    #[test]
    fn rank_filter_matches_rank_of_stacked_vectorization() {
        let mats = vec![
            m(&[&[1, 2], &[3, 4]]),
            m(&[&[2, 4], &[6, 8]]),
            m(&[&[0, 1], &[1, 0]]),
        ];
        let stacked = RationalMatrix::from_rows(
            mats.iter()
                .map(|x| {
                    (0..4)
                        .map(|p| x.get(p % 2, p / 2).clone())
                        .collect::<Vec<_>>()
                })
                .collect(),
        )
        .unwrap();
        let a = MatrixAlgebra::from_span(2, mats).unwrap();
        assert_eq!(a.dimension(), rank(&stacked));
    }
}
