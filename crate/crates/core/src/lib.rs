//! Exact and numeric tools for Heisenberg-symmetric quadratic algebras.

pub mod arith;
pub mod clifford;
pub mod error;
pub mod gradedalg;
pub mod heisenberg;
pub mod koszul;
pub mod linalg;
pub mod poly;
pub mod selftest;
pub mod shioda5;
pub mod sklyanin2;

pub use error::{Error, Result};
