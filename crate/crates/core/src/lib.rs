//! Holonomy Lie algebras of finitely presented groups.
//!
//! The pipeline runs from a [`FinitePresentation`] through the Fox Jacobian,
//! its Hermite form and echelon approximation, the relative Magnus expansion,
//! the cup-product map of the presentation 2-complex, and finally to graded
//! dimensions of the holonomy Lie algebra, its solvable quotients, the
//! initial-form Lie algebra `L(G)` and the closed-form rank tables of the
//! standard families (one-relator, surface, link and Seifert groups).
//!
//! All arithmetic is exact: integers are [`num::BigInt`] and rationals are
//! [`num::BigRational`]. Generator and multi-index positions are 0-based
//! throughout the API.

pub mod cupprod;
pub mod echelon;
mod error;
pub mod foxcalc;
pub mod freelie;
pub mod linalg;
pub mod matrix;
pub mod ncseries;
pub mod presentation;
pub mod ranks;

pub use error::{Error, Result};
pub use presentation::{FinitePresentation, Word};

/// Exact rational scalar used everywhere.
pub type Q = num::BigRational;
/// Arbitrary precision integer.
pub type Z = num::BigInt;

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

/// Shorthand for the integer-valued rational `n`.
pub fn qi(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}
