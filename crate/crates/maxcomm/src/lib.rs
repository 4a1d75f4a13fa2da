//! Exact-arithmetic toolkit for maximal commutative subalgebras of the
//! n-by-n matrix algebra.
//!
//! The crate certifies whether a unital subalgebra given by a spanning set
//! equals its own centralizer, computes structural data (Jacobson radical,
//! Loewy filtration, nilpotency degree), evaluates the dimension lower
//! bounds attached to Loewy signatures, and constructs the stacked brick
//! families that realize maximal commutative algebras of dimension below
//! the ambient size for every n >= 14.
//!
//! Modules:
//! - [`exactlinalg`]: rational matrices, rank, nullspace, span membership.
//! - [`algebra`]: [`algebra::MatrixAlgebra`], centralizers, radicals,
//!   Loewy machinery, maximal-commutativity certification.
//! - [`bounds`]: signature bound formulas, signature-free minima, the
//!   Laffey comparison value, first-exceptional-dimension searches.
//! - [`bricks`]: the explicit bricks E and D, the stack operator, mixed
//!   rigidity ranks, and the Courter-like construction for n >= 14.
//! - [`io`]: JSON algebra documents and verification certificates.
//! - [`cli`]: the `maxcomm` command-line front end.
//!
//! Everything is computed over the rationals. Each verdict the crate
//! produces (rank, nullspace dimension, span membership) is a rank
//! statement about a matrix with rational entries, and rank is invariant
//! under field extension, so the certificates remain valid over any
//! algebraically closed field of characteristic zero.

pub mod algebra;
pub mod bounds;
pub mod bricks;
pub mod cli;
mod error;
pub mod exactlinalg;
pub mod io;

pub use error::{Error, Result};
pub use exactlinalg::{Rational, RationalMatrix};
