//! Exact arithmetic kernel: rationals, multivariate Laurent polynomials over
//! the integers, and reduced rational functions.

mod gcd;
mod monomial;
mod parse;
mod poly;
mod ratfun;
mod rational;

pub use gcd::gcd;
pub use monomial::{Monomial, Variable};
pub use poly::{LaurentPolynomial, Point};
pub use ratfun::{Bindings, RationalFunction};
pub use rational::Rational;
