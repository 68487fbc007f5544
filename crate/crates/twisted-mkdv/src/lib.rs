//! Exact symbolic engine for the critical-point populations of a family of
//! master functions and the mKdV/KdV hierarchies of twisted affine type on
//! rank 2n+1 (n ≥ 2).
//!
//! The crate builds tuples of polynomials representing critical points by
//! Wronskian generation, maps them to Miura opers, computes mKdV flows by
//! dressing in graded loop-algebra coordinates and KdV flows by formal
//! pseudodifferential calculus, and machine-verifies the exact identities
//! tying all of these together.  Every computation is over the rationals
//! (or dual numbers over them); every comparison in the test suites is an
//! exact identity.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod ratfn;
pub mod linalg;
pub mod loop_algebra;

pub use error::{Error, Result};
pub use scalar::{Dual, DualRat, Rat};
