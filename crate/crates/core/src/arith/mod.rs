//! Exact arithmetic: rationals, multilinear polynomials, relations and
//! one-variable satisfying domains.

mod domain;
mod poly;
mod rational;
mod relation;

pub use domain::{solve_relation, Bound, SatDomain};
pub use poly::{Monomial, Polynomial, VarId};
pub use rational::{denominator_of, mediant, ParseRationalError, Rational};
pub use relation::Relation;
