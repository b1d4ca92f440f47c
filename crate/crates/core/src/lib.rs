//! Exact computer algebra for polynomial automorphisms of affine space.
//!
//! The crate works over the rationals and small Galois fields and covers:
//! sparse polynomials and their parser ([`algebra`]), polynomial maps and
//! words in tame generators ([`maps`]), derivations and exponentials of
//! locally nilpotent ones ([`derivations`]), monomial gradings
//! ([`gradings`]), conjugation of exponentials by diagonal maps
//! ([`linearize`]), bounded-degree eigenspaces ([`fixedspace`]) and
//! permutation parity of maps over finite fields ([`ffperm`]).

pub mod algebra;
pub mod derivations;
mod error;
pub mod ffperm;
pub mod fixedspace;
pub mod gradings;
pub mod linalg;
pub mod linearize;
pub mod maps;
pub mod rng;

pub use algebra::{Degree, Field, Monomial, PolyRing, Polynomial, Scalar};
pub use derivations::Derivation;
pub use error::{Error, Result};
pub use maps::{AutWord, PolyMap, Token};
