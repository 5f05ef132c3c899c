//! Exact sparse multivariate polynomials.

pub mod filtration;
pub mod jacobian;
pub mod laurent;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod print;

pub use jacobian::{jacobian_independent, jacobian_rank, JacobianRank, RankCertificate};
pub use laurent::{parse_laurent, LaurentPolynomial};
pub use monomial::Monomial;
pub use parse::{parse, parse_with};
pub use polynomial::{Degree, Polynomial};
pub use print::VarNames;
