//! Exact integer linear algebra: Smith normal form, elementary divisors,
//! and homology of integer chain complexes.
//!
//! All values are immutable once built and use arbitrary-precision
//! integers, so no computation here can overflow.

mod group;
mod matrix;
mod snf;

pub use group::{cokernel, homology, kernel, FgAbelianGroup, HomologyError, ParseGroupError};
pub use matrix::IntMatrix;
pub use snf::{elementary_divisors, rank, snf, SnfResult};
