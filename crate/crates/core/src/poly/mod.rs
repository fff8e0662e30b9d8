//! Exact polynomial arithmetic over the rationals.

mod monomial;
mod parse;
mod polynomial;
mod univariate;

pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::{CompiledPolynomial, Degree, MultivariatePolynomial};
pub use univariate::{univariate_common_roots, UnivariatePolynomial};
