//! Exact verification of double Dirichlet series identities over the
//! rational function field F_q(t).
//!
//! The library constructs, by brute-force summation with exact cyclotomic
//! arithmetic, two families of double Dirichlet series built from n-th order
//! residue symbols and Gauss sums, and verifies their closed rational forms,
//! functional equations, and the supporting character identities with zero
//! numerical tolerance.

pub mod error;
pub mod chars;
pub mod cyclo;
pub mod formal;
pub mod lfun;
pub mod mds;
pub mod poly;
pub mod report;
pub mod series;

pub use error::{Error, Result};
