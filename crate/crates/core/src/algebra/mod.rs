//! Exact coefficient fields and sparse multivariate polynomials.

mod field;
pub mod parse;
mod poly;

pub use field::{Field, GaloisField, Scalar};
pub use parse::{parse_polynomial, parse_scalar};
pub use poly::{Degree, Monomial, PolyRing, Polynomial};
