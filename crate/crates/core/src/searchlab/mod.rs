//! Seeded probes and bounded searches. Probe verdicts are evidence, not
//! theorems: a probe that passes only reports that no counterexample was
//! drawn.

pub mod bitangent;
pub mod coplanar;
pub mod probe;
pub mod weierstrass;

pub use bitangent::{bitangent_search, BitangentFindings};
pub use coplanar::{coplanar_tangent_locus, CoplanarLocus};
pub use probe::{emptiness_probe, generic_rank_probe, ProbeResult, Verdict};
pub use weierstrass::{weierstrass_subset_sample, weierstrass_subset_suite, SubsetCaps, SubsetRow, SubsetTable};
