//! Exact arithmetic substrate: rationals, monomials, polynomials, matrices.

pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod sparse;
pub mod unipoly;

pub use matrix::ExactMatrix;
pub use monomial::{mono_basis, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use rational::Rational;
