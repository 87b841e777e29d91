//! Exact arithmetic over Q: matrices, polynomials, truncated series,
//! resultants and rational root search.

pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod series;

pub use matrix::{Matrix, Rref};
pub use mpoly::MPoly;
pub use poly::Poly;
pub use rational::{fmt_rational, parse_rational, q, qf, Rational};
pub use series::{implicit_lift, Series};
