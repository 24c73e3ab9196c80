//! Polynomial rings, monomials and sparse polynomials with exact coefficients.

mod monomial;
pub mod parse;
mod polynomial;
mod ring;

pub use monomial::{monomials_of_degree, Monomial};
pub use polynomial::{rat, Polynomial, Term};
pub use ring::{Field, PolyRing, TermOrder};
