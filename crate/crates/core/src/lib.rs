//! Exact computer algebra for the admissibility conditions on the parameters
//! of cyclotomic BMW algebras.
//!
//! The crate computes the generating function `Z(t)`, the universal
//! coefficients `xi_a = (q - q^-1) eta_a`, the closed-form `gamma_j`, and
//! checks the weak, Wilcox-Yu and u-admissibility conditions on exact
//! numeric parameter sets. All arithmetic is exact.

pub mod admissibility;
pub mod cli;
pub mod error;
pub mod exact;
pub mod series;
pub mod symfun;

pub use error::{Error, Result};
