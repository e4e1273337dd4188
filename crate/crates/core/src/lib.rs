//! Symmetric functions in superspace with exact arithmetic.
//!
//! The crate covers superpartitions and their orders, concrete
//! superpolynomials in commuting and anticommuting variables, the classical
//! bases `m`, `e`, `h`, `p`, `g` with their transition matrices, the
//! combinatorial and physical scalar products with Cauchy kernels, the
//! Dunkl-Cherednik conserved charges, and Jack superpolynomials built by two
//! independent routes.

pub mod bases;
pub mod checks;
pub mod coefficients;
pub mod error;
pub mod inner;
pub mod jack;
pub mod operators;
pub mod report;
pub mod superpartition;
pub mod superpoly;

pub use coefficients::{BigRat, RatFunc};
pub use error::*;
pub use report::Report;
pub use superpartition::SuperPartition;
pub use superpoly::SuperPoly;
