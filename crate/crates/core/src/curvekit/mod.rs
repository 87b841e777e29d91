//! Curve models, points, divisors, linear systems and the jet engine.

pub mod curve;
pub mod divisor;
pub mod file;
pub mod jets;
pub mod parse;
pub mod point;
pub mod sample;
pub mod system;

pub use curve::{Curve, HyperellipticCurve, NodalUnion, ParametricCurve, PlaneCurve, SpaceCurve};
pub use divisor::Divisor;
pub use jets::{basis_series, jet_block, tangent_line, TangentLine};
pub use point::{CurvePoint, HyperPoint, Ordinate, ParamValue, ProjectivePoint};
pub use sample::{sample_point, weierstrass_points, Sampler};
pub use system::LinearSystem;
