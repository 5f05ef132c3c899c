//! Exact invariant rings of unipotent affine automorphisms.
//!
//! Two families of automorphisms of a polynomial algebra over the rationals
//! are covered:
//!
//! * the affine map `x -> J_n(1) x - e_1`, whose invariants form a polynomial
//!   ring freely generated by explicit quadratics `u_k` and cubics `v_k`;
//! * the graded map `x -> J_{n+1}(1) x`, whose invariants are studied through
//!   the localization at `x1` and the explicit elements `p_k`, `q_k`.
//!
//! Every closed form is checked against a brute-force exact nullspace solver.

pub mod automorphism;
pub mod cli;
pub mod error;
pub mod exponential;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Polynomial with exact rational coefficients.
pub type Poly = poly::Polynomial<Rational>;
/// Laurent polynomial in `x1` with exact rational coefficients.
pub type Laurent = poly::LaurentPolynomial<Rational>;
/// Affine map with exact rational entries.
pub type AffineMap = automorphism::UnipotentAffineMap<Rational>;
