//! Hecke-Baxter operators on GL1 and GL2 and the special functions they act on.

pub mod error;
pub mod gl1;
pub mod gl2_analytic;
pub mod gl2_arith;
pub mod gl2_operators;
pub mod numerics;
pub mod specfun;

pub use error::{Error, Result};
pub use numerics::Estimate;
pub use specfun::{ComplexScalar, Precision};
