//! Exact finite-dimensional algebra toolkit: radicals, idempotents, symmetric
//! functionals, pseudo-traces and the q-series built from them.

pub mod algebra;
pub mod characters;
pub mod error;
pub mod io;
pub mod linalg;
pub mod module;
pub mod pseudotrace;
pub mod qseries;
pub mod symfun;

pub use error::{Error, Result};
