//! Exact integer matrices and their Smith / homogeneous Smith normal forms.
//!
//! Entries are `i128` and every arithmetic step is checked; a step that
//! would overflow surfaces as [`Error::Overflow`](crate::Error::Overflow).

mod homogeneous;
mod matrix;
mod minors;
mod smith;

pub use homogeneous::{hsnf, is_hsnf, superdiagonal, HsnfResult};
pub use matrix::{rank, IntMat};
pub use minors::minor_gcd;
pub use smith::{invariant_factors, is_snf, snf, SnfResult};

pub(crate) use matrix::gcd;
