//! Exact Terracini calculus for projective curves.
//!
//! Given a curve, a linear system `V` on it and a finite set `S` of smooth
//! points, the doubled scheme `2S` imposes `rank` conditions on `V`, where
//! `rank` is the rank of the stacked jet matrix. `S` is in the Terracini
//! locus when `2S` fails to impose independent conditions
//! (`rank < 2·#S`) while some element of `V` still vanishes on it
//! (`rank < dim V`). Everything is computed over Q.
//!
//! * [`qlinalg`]: exact matrices, polynomials, truncated series, resultants.
//! * [`curvekit`]: curve models, points, divisors and the jet engine.
//! * [`terracini`]: defects, membership, Riemann-Roch bookkeeping and the
//!   hyperelliptic predictor.
//! * [`witness`]: explicit curves with prescribed Terracini behaviour.
//! * [`searchlab`]: seeded probes, the coplanar-tangent locus, exhaustive
//!   Weierstrass suites and bitangent scans.
//! * [`suites`]: named verification suites used by the CLI.

pub mod curvekit;
pub mod error;
pub mod qlinalg;
pub mod searchlab;
pub mod suites;
pub mod terracini;
pub mod witness;

pub use error::{Error, Result};
