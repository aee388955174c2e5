//! Exact arithmetic: base rings, residue fields, matrices and normal forms.

pub mod dense;
pub mod factor;
pub(crate) mod format;
pub(crate) mod fp_poly;
pub mod hnf;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod qpoly;
pub mod ring;
pub mod subspace;

pub use hnf::{hnf, snf, Hnf, Snf};
pub use matrix::Matrix;
pub use poly::Poly;
pub use ring::{ExtField, Ring, Scalar};
