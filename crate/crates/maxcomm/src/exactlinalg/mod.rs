//! Exact dense linear algebra over the rationals.
//!
//! Everything downstream (centralizers, radicals, Loewy filtrations, rank
//! certificates) reduces to the handful of primitives in this module:
//! exact products, commutators, rank, nullspace bases, and span membership.
//! All arithmetic is arbitrary-precision rational; results are always in
//! canonical form (reduced, positive denominator), which the `num_rational`
//! representation guarantees after every operation.
//!
//! Rank-style computations run on an incremental fraction-free integer
//! echelon (see [`elim`]): each row is cleared of denominators and
//! gcd-reduced, so coefficients stay small even on systems with tens of
//! thousands of equations.

pub(crate) mod elim;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use elim::Echelon;

/// Arbitrary-precision rational number, always in canonical form.
pub type Rational = num_rational::BigRational;

/// Parses a rational from a decimal integer literal or a `p/q` fraction.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("invalid rational {s:?}: {e}")))
}

/// Formats a rational as `p` (denominator one) or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Dense row-major matrix over [`Rational`].
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// Builds a matrix from a row-major entry list.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix unit with a single one at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, Rational::one());
        m
    }

    /// Builds a matrix from integer row slices; rows must share one length.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MalformedMatrix("ragged integer rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Rational::from(BigInt::from(v))))
            .collect();
        Self::new(r, c, entries)
    }

    /// Builds a matrix from rational row vectors; rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::MalformedMatrix("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row-major iterator over `(row, col, entry)` for nonzero entries.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(p, v)| (p / self.cols, p % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.nonzero_entries() {
            out.set(j, i, v.clone());
        }
        out
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, entries)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `self` raised to `k` by repeated squaring; requires a square matrix.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = matmul(&result, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = matmul(&base, &base)?;
            }
        }
        Ok(result)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Exact matrix product. Skips zero factors, so products of the sparse
/// structured matrices used throughout stay cheap.
pub fn matmul(x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
    if x.cols != y.rows {
        return Err(Error::DimensionMismatch(format!(
            "multiply {}x{} by {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    let mut out = RationalMatrix::zeros(x.rows, y.cols);
    for i in 0..x.rows {
        for k in 0..x.cols {
            let xv = x.get(i, k);
            if xv.is_zero() {
                continue;
            }
            for j in 0..y.cols {
                let yv = y.get(k, j);
                if yv.is_zero() {
                    continue;
                }
                let p = i * y.cols + j;
                out.entries[p] += xv * yv;
            }
        }
    }
    Ok(out)
}

/// Commutator `XY - YX` of two square matrices of equal size.
pub fn commutator(x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
    if !x.is_square() || x.rows != y.rows || x.cols != y.cols {
        return Err(Error::DimensionMismatch(format!(
            "commutator of {}x{} and {}x{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    matmul(x, y)?.sub(&matmul(y, x)?)
}

fn echelon_of_rows(m: &RationalMatrix) -> Echelon {
    let mut e = Echelon::new(m.cols);
    for i in 0..m.rows {
        e.insert_rational((0..m.cols).map(|j| (j, m.get(i, j).clone())));
    }
    e
}

/// Exact rank via fraction-free elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    echelon_of_rows(m).rank()
}

/// Canonical basis of the right nullspace `{v : Mv = 0}` as column
/// vectors. One vector per pivot-free column, in ascending column order,
/// with that free coordinate set to one: the reduced-echelon
/// parameterization.
pub fn nullspace_basis(m: &RationalMatrix) -> Vec<RationalMatrix> {
    echelon_of_rows(m)
        .kernel_basis()
        .into_iter()
        .map(|v| RationalMatrix::new(m.cols, 1, v).expect("kernel vector length"))
        .collect()
}

/// Exact coefficients `c` with `M = sum c_k basis_k`, or `None` when `M`
/// is outside the span. Free coefficients (redundant basis directions) are
/// set to zero, so the result is canonical.
///
/// All matrices must share one shape.
pub fn in_span(m: &RationalMatrix, basis: &[RationalMatrix]) -> Option<Vec<Rational>> {
    for b in basis {
        assert_eq!(
            (b.rows, b.cols),
            (m.rows, m.cols),
            "in_span requires equal shapes"
        );
    }
    let k = basis.len();
    let mut e = Echelon::new(k + 1);
    for p in 0..m.rows * m.cols {
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(k + 1);
        for (t, b) in basis.iter().enumerate() {
            entries.push((t, b.entries[p].clone()));
        }
        entries.push((k, m.entries[p].clone()));
        e.insert_rational(entries);
    }
    e.solve_augmented()
}

/// Exact inverse; `Ok(None)` when the matrix is singular.
pub fn inverse(m: &RationalMatrix) -> Result<Option<RationalMatrix>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut e = Echelon::new(2 * n);
    for i in 0..n {
        let mut entries: Vec<(usize, Rational)> =
            (0..n).map(|j| (j, m.get(i, j).clone())).collect();
        entries.push((n + i, Rational::one()));
        e.insert_rational(entries);
    }
    if (0..n).any(|c| !e.has_pivot(c)) {
        return Ok(None);
    }
    let mut out = RationalMatrix::zeros(n, n);
    for j in 0..n {
        let col = e.back_solve(&[(n + j, -Rational::one())]);
        for i in 0..n {
            out.set(i, j, col[i].clone());
        }
    }
    Ok(Some(out))
}
