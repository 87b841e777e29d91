use serde::Serialize;

use crate::curvekit::divisor::as_display;
use crate::curvekit::sample::Sampler;
use crate::curvekit::{Curve, Divisor, LinearSystem};
use crate::error::Result;
use crate::terracini::{defect_report, jet_matrix, TerraciniReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllPassed,
    CounterexampleFound,
}

/// A failing draw: its seed and the offending divisor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    #[serde(rename = "S", serialize_with = "as_display")]
    pub divisor: Divisor,
    pub detail: String,
}

/// A divisor supplied by the caller and checked alongside the random draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlantedCheck {
    #[serde(rename = "S", serialize_with = "as_display")]
    pub divisor: Divisor,
    pub report: TerraciniReport,
    pub counterexample: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub trials: usize,
    pub failures: usize,
    pub failing_seeds: Vec<u64>,
    pub failing: Vec<Failure>,
    pub planted: Vec<PlantedCheck>,
    pub verdict: Verdict,
}

impl ProbeResult {
    fn new(trials: usize, failing: Vec<Failure>, planted: Vec<PlantedCheck>) -> Self {
        let failing_seeds: Vec<u64> = failing.iter().map(|f| f.seed).collect();
        let verdict = if failing.is_empty() && planted.iter().all(|p| !p.counterexample) {
            Verdict::AllPassed
        } else {
            Verdict::CounterexampleFound
        };
        ProbeResult {
            trials,
            failures: failing.len(),
            failing_seeds,
            failing,
            planted,
            verdict,
        }
    }
}

/// Seed of trial `i` in a probe started from `seed`.
pub fn trial_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

/// Draws `trials` random sets of `x` points and asserts defect 0 for each.
/// `planted` sets are checked first; a planted set with positive defect is
/// reported as a counterexample.
pub fn emptiness_probe(
    curve: &Curve,
    system: LinearSystem,
    x: usize,
    trials: usize,
    seed: u64,
    planted: &[Divisor],
) -> Result<ProbeResult> {
    let mut checks = Vec::new();
    for s in planted {
        let report = defect_report(curve, system, s)?;
        checks.push(PlantedCheck {
            divisor: s.clone(),
            counterexample: report.defect != 0,
            report,
        });
    }
    let mut failing = Vec::new();
    for i in 0..trials {
        let ts = trial_seed(seed, i);
        let s = Divisor::reduced(Sampler::new(curve, ts).take(x)?)?;
        let report = defect_report(curve, system, &s)?;
        if report.defect != 0 {
            failing.push(Failure {
                seed: ts,
                divisor: s,
                detail: format!("defect {} (rank {})", report.defect, report.rank),
            });
        }
    }
    Ok(ProbeResult::new(trials, failing, checks))
}

/// Draws `Z = Σ e_i p_i` at random distinct points and asserts
/// `dim V(-Z) = max(0, dim V - Σ e_i)`.
pub fn generic_rank_probe(
    curve: &Curve,
    system: LinearSystem,
    lengths: &[u32],
    trials: usize,
    seed: u64,
) -> Result<ProbeResult> {
    let dim_v = system.dim_v(curve)?;
    let total: usize = lengths.iter().map(|&e| e as usize).sum();
    let expected = dim_v.saturating_sub(total);
    let mut failing = Vec::new();
    for i in 0..trials {
        let ts = trial_seed(seed, i);
        let pts = Sampler::new(curve, ts).take(lengths.len())?;
        let z = Divisor::new(pts.into_iter().zip(lengths.iter().copied()).collect())?;
        let got = dim_v - jet_matrix(curve, system, &z)?.rank();
        if got != expected {
            failing.push(Failure {
                seed: ts,
                divisor: z,
                detail: format!("dim V(-Z) = {got}, expected {expected}"),
            });
        }
    }
    Ok(ProbeResult::new(trials, failing, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::{CurvePoint, HyperellipticCurve, ParametricCurve};
    use crate::qlinalg::{q, Poly};

    fn rnc(r: u32) -> Curve {
        ParametricCurve::new((0..=r).map(|i| Poly::t().pow(i)).collect())
            .unwrap()
            .into()
    }

    #[test]
    fn rational_normal_cubic_is_empty() {
        let p = emptiness_probe(&rnc(3), LinearSystem::Hyperplane, 2, 30, 1, &[]).unwrap();
        assert_eq!((p.failures, p.verdict), (0, Verdict::AllPassed));
    }

    #[test]
    fn planted_pair_is_found() {
        let t = Poly::t();
        let quartic: Curve = ParametricCurve::new(vec![
            Poly::one(),
            t.clone(),
            t.pow(2),
            &t.pow(2) * &(&t - &Poly::one()).pow(2),
        ])
        .unwrap()
        .into();
        let planted = Divisor::reduced(vec![CurvePoint::t_int(0), CurvePoint::t_int(1)]).unwrap();
        let p = emptiness_probe(&quartic, LinearSystem::Hyperplane, 2, 20, 5, &[planted]).unwrap();
        assert_eq!(p.failures, 0);
        assert!(p.planted[0].counterexample);
        assert_eq!(p.verdict, Verdict::CounterexampleFound);
    }

    #[test]
    fn generic_ranks() {
        let c = rnc(3);
        for lengths in [&[2u32, 2][..], &[1, 1, 1]] {
            let p = generic_rank_probe(&c, LinearSystem::Hyperplane, lengths, 10, 3).unwrap();
            assert_eq!(p.verdict, Verdict::AllPassed);
        }
        let h: Curve = HyperellipticCurve::split((1..=8).map(q).collect()).unwrap().into();
        let p = generic_rank_probe(&h, LinearSystem::Canonical, &[1, 1], 10, 3).unwrap();
        assert_eq!(p.verdict, Verdict::AllPassed);
    }
}
