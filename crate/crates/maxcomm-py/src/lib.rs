//! Python bindings for the maxcomm library.
//!
//! The module mirrors the core Rust API: exact rational matrices, matrix
//! algebras with centralizer and Loewy machinery, the brick constructions
//! with their stacking operation, and the dimension bounds. All arithmetic
//! stays exact; entries cross the boundary as Python ints or "p/q" strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use maxcomm::algebra::{polynomial_algebra, MatrixAlgebra};
use maxcomm::bounds;
use maxcomm::bricks;
use maxcomm::exactlinalg::{format_rational, matmul, parse_rational, Rational};
use maxcomm::io::{certify, AlgebraDocument};
use maxcomm::{Error, RationalMatrix};

fn value_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A matrix entry arriving from Python: an int, or a "p/q" string for
/// fractions and integers beyond the machine range.
#[derive(FromPyObject)]
enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn to_rational(&self) -> Result<Rational, Error> {
        match self {
            Entry::Int(v) => parse_rational(&v.to_string()),
            Entry::Text(s) => parse_rational(s),
        }
    }
}

/// An exact matrix over the rationals.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Matrix {
    inner: RationalMatrix,
}

#[pymethods]
impl Matrix {
    /// Build a matrix from rows of ints or "p/q" strings.
    #[new]
    fn new(rows: Vec<Vec<Entry>>) -> PyResult<Self> {
        let mut converted = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut out = Vec::with_capacity(row.len());
            for entry in row {
                out.push(entry.to_rational().map_err(value_err)?);
            }
            converted.push(out);
        }
        let inner = RationalMatrix::from_rows(converted).map_err(value_err)?;
        Ok(Matrix { inner })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Matrix {
            inner: RationalMatrix::identity(n),
        }
    }

    /// The matrix unit with a single 1 at position (i, j).
    #[staticmethod]
    fn unit(rows: usize, cols: usize, i: usize, j: usize) -> PyResult<Self> {
        if i >= rows || j >= cols {
            return Err(PyValueError::new_err(format!(
                "position ({i}, {j}) is outside a {rows}x{cols} matrix"
            )));
        }
        Ok(Matrix {
            inner: RationalMatrix::unit(rows, cols, i, j),
        })
    }

    fn rows(&self) -> usize {
        self.inner.rows()
    }

    fn cols(&self) -> usize {
        self.inner.cols()
    }

    /// All entries as strings, row by row.
    fn entries(&self) -> Vec<Vec<String>> {
        (0..self.inner.rows())
            .map(|i| {
                (0..self.inner.cols())
                    .map(|j| format_rational(self.inner.get(i, j)))
                    .collect()
            })
            .collect()
    }

    fn transpose(&self) -> Self {
        Matrix {
            inner: self.inner.transpose(),
        }
    }

    fn trace(&self) -> PyResult<String> {
        self.inner
            .trace()
            .map(|t| format_rational(&t))
            .map_err(value_err)
    }

    fn __add__(&self, other: &Matrix) -> PyResult<Matrix> {
        self.inner
            .add(&other.inner)
            .map(|inner| Matrix { inner })
            .map_err(value_err)
    }

    fn __mul__(&self, other: &Matrix) -> PyResult<Matrix> {
        matmul(&self.inner, &other.inner)
            .map(|inner| Matrix { inner })
            .map_err(value_err)
    }

    fn __eq__(&self, other: &Matrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Matrix({}x{})", self.inner.rows(), self.inner.cols())
    }
}

/// A unital subalgebra of M_n held by an echelonized basis.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Algebra {
    inner: MatrixAlgebra,
}

impl Algebra {
    fn wrap(inner: MatrixAlgebra) -> Self {
        Algebra { inner }
    }
}

#[pymethods]
impl Algebra {
    /// Span the given matrices together with whatever they already
    /// contain; the basis is reduced to echelon form.
    #[staticmethod]
    fn from_span(n: usize, span: Vec<Matrix>) -> PyResult<Self> {
        let mats = span.into_iter().map(|m| m.inner).collect();
        MatrixAlgebra::from_span(n, mats)
            .map(Algebra::wrap)
            .map_err(value_err)
    }

    fn ambient_size(&self) -> usize {
        self.inner.ambient_size()
    }

    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn basis(&self) -> Vec<Matrix> {
        self.inner
            .basis()
            .iter()
            .map(|m| Matrix { inner: m.clone() })
            .collect()
    }

    fn contains_identity(&self) -> bool {
        self.inner.contains_identity()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_closed(&self) -> bool {
        self.inner.is_closed()
    }

    fn centralizer(&self) -> Self {
        Algebra::wrap(self.inner.centralizer())
    }

    fn centralizer_dimension(&self) -> usize {
        self.inner.centralizer().dimension()
    }

    fn is_maximal_commutative(&self) -> bool {
        self.inner.is_maximal_commutative()
    }

    fn is_local(&self) -> PyResult<bool> {
        self.inner.is_local().map_err(value_err)
    }

    fn loewy_signature(&self) -> PyResult<Vec<usize>> {
        self.inner
            .loewy_signature()
            .map(|s| s.layers().to_vec())
            .map_err(value_err)
    }

    fn nilpotency_degree(&self) -> PyResult<usize> {
        self.inner.nilpotency_degree().map_err(value_err)
    }

    /// Full certificate as a JSON string, centralizer solve included.
    fn certificate(&self, name: &str) -> PyResult<String> {
        certify(name, &self.inner)
            .map(|c| c.to_json())
            .map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(dim {} in M_{})",
            self.inner.dimension(),
            self.inner.ambient_size()
        )
    }
}

/// The unital algebra generated by a single matrix.
#[pyfunction(name = "polynomial_algebra")]
fn polynomial_algebra_py(m: &Matrix) -> PyResult<Algebra> {
    polynomial_algebra(&m.inner).map(Algebra::wrap).map_err(value_err)
}

/// The 9-dimensional brick E in M_9.
#[pyfunction]
fn brick_e() -> Algebra {
    Algebra::wrap(bricks::realize(&bricks::brick_e()))
}

/// The 6-dimensional brick D in M_6.
#[pyfunction]
fn brick_d() -> Algebra {
    Algebra::wrap(bricks::realize(&bricks::brick_d()))
}

/// The conjugate variant of D with the transposed socle column.
#[pyfunction]
fn brick_d_appendix() -> Algebra {
    Algebra::wrap(bricks::realize(&bricks::brick_d_appendix()))
}

/// Stack e_count copies of E and d_count copies of D.
#[pyfunction]
fn build_stacked(e_count: usize, d_count: usize) -> PyResult<Algebra> {
    let spec = bricks::StackSpec::new(e_count, d_count).map_err(value_err)?;
    bricks::build_stacked(spec).map(Algebra::wrap).map_err(value_err)
}

/// The Courter-like algebra in M_n for n >= 14.
#[pyfunction]
fn build_courter(n: usize) -> PyResult<Algebra> {
    bricks::build_courter(n).map(Algebra::wrap).map_err(value_err)
}

/// Dimension of the Courter-like algebra in M_n.
#[pyfunction]
fn courter_dim(n: usize) -> PyResult<usize> {
    bricks::courter_dim(n).map_err(value_err)
}

/// Rank of the mixed rigidity system for a pair of bricks, each named
/// "e", "d", or "d-appendix".
#[pyfunction]
fn rigidity_rank(p: &str, q: &str) -> PyResult<usize> {
    let form = |name: &str| -> PyResult<bricks::BrickForm> {
        match name {
            "e" => Ok(bricks::brick_e()),
            "d" => Ok(bricks::brick_d()),
            "d-appendix" => Ok(bricks::brick_d_appendix()),
            other => Err(PyValueError::new_err(format!(
                "unknown brick {other:?}; expected \"e\", \"d\", or \"d-appendix\""
            ))),
        }
    };
    Ok(bricks::mixed_rigidity_rank(&form(p)?, &form(q)?))
}

/// The dimension formula for a three-layer signature.
#[pyfunction]
fn f3(n1: u64, n2: u64, n3: u64) -> PyResult<u64> {
    bounds::f3(n1, n2, n3).map_err(value_err)
}

/// The dimension formula for a four-layer signature.
#[pyfunction]
fn f4(n1: u64, n2: u64, n3: u64, n4: u64) -> PyResult<u64> {
    bounds::f4(n1, n2, n3, n4).map_err(value_err)
}

/// The dimension formula for an arbitrary signature of length >= 3.
#[pyfunction]
fn f_general(signature: Vec<u64>) -> PyResult<u64> {
    bounds::f_general(&signature).map(|b| b.value).map_err(value_err)
}

/// Minimum of the dimension formula over degree-r signatures of n,
/// returned as (value, argmin signature).
#[pyfunction]
fn d_r(n: u64, r: usize) -> PyResult<(u64, Vec<u64>)> {
    bounds::d_r(n, r).map(|e| (e.value, e.argmin)).map_err(value_err)
}

/// The dimension of the stacked family member in M_n, the bound column
/// of the reference table.
#[pyfunction]
fn stack_class_bound(n: u64) -> PyResult<u64> {
    bounds::stack_class_bound(n).map_err(value_err)
}

/// Smallest n with D_r(n) < n, returned as (n, D_r(n)).
#[pyfunction]
fn first_exceptional(r: usize) -> PyResult<(u64, u64)> {
    bounds::first_exceptional(r).map_err(value_err)
}

/// The comparison value (2n)^(2/3) - 1 rounded to nine decimal digits.
#[pyfunction]
fn laffey(n: u64) -> PyResult<String> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    Ok(bounds::laffey_bound(n).to_decimal_9())
}

/// Exact integer floor of (2n)^(2/3) - 1.
#[pyfunction]
fn laffey_floor(n: u64) -> PyResult<u64> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    Ok(bounds::laffey_floor(n))
}

/// Minimal dimension over nilpotency degree 2, which is n itself.
#[pyfunction]
fn deg2_min_dim(n: u64) -> PyResult<u64> {
    bounds::deg2_min_dim(n).map_err(value_err)
}

/// Parse an algebra document, returning (name, algebra).
#[pyfunction]
fn load_document(text: &str) -> PyResult<(String, Algebra)> {
    let doc = AlgebraDocument::from_json(text).map_err(value_err)?;
    let algebra = doc.to_algebra().map_err(value_err)?;
    Ok((doc.name, Algebra::wrap(algebra)))
}

/// Serialize an algebra to the document format.
#[pyfunction]
fn dump_document(name: &str, algebra: &Algebra) -> String {
    AlgebraDocument::from_algebra(name, &algebra.inner).to_json()
}

#[pymodule]
fn maxcomm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Matrix>()?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(polynomial_algebra_py, m)?)?;
    m.add_function(wrap_pyfunction!(brick_e, m)?)?;
    m.add_function(wrap_pyfunction!(brick_d, m)?)?;
    m.add_function(wrap_pyfunction!(brick_d_appendix, m)?)?;
    m.add_function(wrap_pyfunction!(build_stacked, m)?)?;
    m.add_function(wrap_pyfunction!(build_courter, m)?)?;
    m.add_function(wrap_pyfunction!(courter_dim, m)?)?;
    m.add_function(wrap_pyfunction!(rigidity_rank, m)?)?;
    m.add_function(wrap_pyfunction!(f3, m)?)?;
    m.add_function(wrap_pyfunction!(f4, m)?)?;
    m.add_function(wrap_pyfunction!(f_general, m)?)?;
    m.add_function(wrap_pyfunction!(d_r, m)?)?;
    m.add_function(wrap_pyfunction!(stack_class_bound, m)?)?;
    m.add_function(wrap_pyfunction!(first_exceptional, m)?)?;
    m.add_function(wrap_pyfunction!(laffey, m)?)?;
    m.add_function(wrap_pyfunction!(laffey_floor, m)?)?;
    m.add_function(wrap_pyfunction!(deg2_min_dim, m)?)?;
    m.add_function(wrap_pyfunction!(load_document, m)?)?;
    m.add_function(wrap_pyfunction!(dump_document, m)?)?;
    Ok(())
}
