//! Exact valuations of `J(d1, d2) = prod (j(tau1) - j(tau2))` over pairs of
//! imaginary quadratic discriminants, computed by closed formulas and checked
//! against an independent high-precision evaluation of the product.

pub mod arith;
pub mod error;
pub mod oracle;
pub mod quadratic;
pub mod quaternion;
pub mod report;
pub mod valuation;

pub use error::{Error, Result};
