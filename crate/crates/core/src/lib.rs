//! Exact Grassmann algebra over the rationals, graded supermatrices, band
//! semigroups of odd-reduced supermatrices, and brute-force Green's
//! relations on finite samples of them.

pub mod band;
pub mod cayley;
pub mod cli;
pub mod error;
pub mod expr;
pub mod grassmann;
pub mod green;
pub mod linalg;
pub mod semigroup;
pub mod supermatrix;
pub mod verify;

pub use error::{Error, Result};
pub use grassmann::{GrassmannElement, Parity, Rational};
pub use supermatrix::Supermatrix;
