//! Computational tools for polynomial vector fields whose singular set
//! contains a smooth complete intersection `W`: exact polynomial algebra,
//! Groebner bases, an eigenvalue solver for zero-dimensional systems,
//! invariants of the field along `W`, and a deformation lab that tracks where
//! isolated singularities go as a perturbation is switched off.

pub mod deform;
pub mod error;
pub mod foliation;
pub mod groebner;
pub mod invariants;
pub mod poly;
pub mod rational;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use poly::{parse_poly, Degree, Monomial, MultivariatePolynomial, UnivariatePolynomial};
pub use rational::Rational;
