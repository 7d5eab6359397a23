//! Exact arithmetic: rationals, sparse polynomials, products of linear
//! forms, rational functions and linear algebra over them.

pub mod json;
pub mod linear;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod qsolve;
pub mod ratfun;
pub mod rational;
pub mod var;

pub use linear::{divides_linear, linear_multiplicity, Expanded, LinearFactorProduct, LinearForm, Normalized, SubstOutcome};
pub use matrix::{rf_solve, RFMatrix};
pub use parse::{parse_poly, parse_rf};
pub use poly::Polynomial;
pub use qsolve::{QSolver, SparseRow};
pub use ratfun::RationalFunction;
pub use rational::Rational;
pub use var::{Monomial, VarId};
