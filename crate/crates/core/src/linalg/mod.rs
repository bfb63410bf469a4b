//! Exact linear algebra over ℚ or a single number field.

pub mod matrix;
pub mod poly;
pub mod qpoly;
pub mod scalar;
pub mod subspace;

pub use matrix::{Matrix, Vector};
pub use qpoly::Rational;
pub use scalar::{NumberField, Scalar};
pub use subspace::Subspace;
