//! Local search for satisfiable SMT instances over quantifier-free linear
//! real arithmetic and its multilinear nonlinear fragment.
//!
//! The pipeline is: [`smtlib::parse_script`] → [`smtlib::compile`] (desugar,
//! atom normalization, clausification) → [`search::solve`] → model printing
//! and validation against the original assertions.

pub mod arith;
pub mod harness;
pub mod search;
pub mod smtlib;

pub use arith::{Rational, Relation, VarId};
