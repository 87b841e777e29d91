//! Bitangent lines and hyperflexes of smooth plane curves.
//!
//! Exact findings come from the bounded rational point search: two points
//! with the same tangent line form a bitangent pair, and a point whose double
//! scheme has degenerate span is a hyperflex. A float scan over seeded
//! coordinate changes proposes further pairs; a proposal becomes a finding
//! only after it is rationalized and confirmed exactly, and otherwise stays
//! a hint.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvekit::sample::{plane_points, SCAN_DEN, SCAN_WINDOW};
use crate::curvekit::{Curve, CurvePoint, Divisor, LinearSystem, PlaneCurve, ProjectivePoint};
use crate::error::{Error, Result};
use crate::qlinalg::rational::approximate;
use crate::qlinalg::roots::real_root_hints;
use crate::qlinalg::rational::to_f64;
use crate::qlinalg::{q, qf, MPoly, Matrix, Rational};
use crate::searchlab::coplanar::MAX_HINTS;
use crate::searchlab::probe::trial_seed;
use crate::terracini::{defect_report, scheme_report, TerraciniReport};
use crate::witness::flex::{random_change, transform};

/// Two tangent directions closer than this are proposed as one line.
const LINE_TOLERANCE: f64 = 1e-3;
/// Proposals closer than this in the chart are treated as the same point.
const MIN_SEPARATION: f64 = 0.25;
/// Largest denominator tried when rationalizing a float coordinate.
const MAX_DEN: i64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BitangentPair {
    pub p: ProjectivePoint,
    pub q: ProjectivePoint,
    /// Coefficients `(a : b : c)` of the line `ax + by + cz = 0`.
    pub line: ProjectivePoint,
    pub report: TerraciniReport,
    /// Found by the float scan rather than the rational point search.
    pub from_scan: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperflex {
    pub p: ProjectivePoint,
    pub line: ProjectivePoint,
    pub report: TerraciniReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BitangentHint {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BitangentFindings {
    pub degree: u32,
    pub points_searched: usize,
    pub trials: usize,
    pub seed: u64,
    pub pairs: Vec<BitangentPair>,
    pub hyperflexes: Vec<Hyperflex>,
    pub hints: Vec<BitangentHint>,
}

impl BitangentFindings {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.hyperflexes.is_empty() && self.hints.is_empty()
    }
}

fn tangent(f: &MPoly, p: &ProjectivePoint) -> Option<ProjectivePoint> {
    let grad: Vec<Rational> = f.gradient().iter().map(|g| g.eval(p.coords())).collect();
    ProjectivePoint::new(grad).ok()
}

fn confirm_pair(
    curve: &Curve,
    p: &ProjectivePoint,
    q: &ProjectivePoint,
    line: ProjectivePoint,
    from_scan: bool,
) -> Result<BitangentPair> {
    let s = Divisor::reduced(vec![CurvePoint::Plane(p.clone()), CurvePoint::Plane(q.clone())])?;
    let report = defect_report(curve, LinearSystem::Hyperplane, &s)?;
    if !report.member || report.rank > 2 {
        return Err(Error::SelfCheck(format!(
            "shared tangent at {p} and {q} but rank {}",
            report.rank
        )));
    }
    Ok(BitangentPair {
        p: p.clone(),
        q: q.clone(),
        line,
        report,
        from_scan,
    })
}

fn same_pair(b: &BitangentPair, p: &ProjectivePoint, q: &ProjectivePoint) -> bool {
    (&b.p == p && &b.q == q) || (&b.p == q && &b.q == p)
}

fn apply(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    (0..3)
        .map(|i| (0..3).fold(Rational::zero(), |acc, j| acc + &a[(i, j)] * &v[j]))
        .collect()
}

fn apply_f64(a: &Matrix, v: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|j| to_f64(&a[(i, j)]) * v[j]).sum();
    }
    out
}

struct Sample {
    x: Rational,
    y: f64,
    line: [f64; 3],
}

fn unit_line(g: &[MPoly], x: f64, y: f64) -> Option<[f64; 3]> {
    let v: Vec<f64> = g.iter().map(|d| d.eval_f64(&[x, y, 1.0])).collect();
    let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if n < 1e-12 {
        return None;
    }
    let k = (0..3).max_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs()))?;
    let s = if v[k] < 0.0 { -n } else { n };
    Some([v[0] / s, v[1] / s, v[2] / s])
}

/// Real points of `g` on the vertical grid lines of the chart `z = 1`.
fn scan_chart(g: &MPoly) -> Vec<Sample> {
    let grad = g.gradient();
    let wy = (4 * SCAN_WINDOW) as f64;
    let steps = (8 * 4 * SCAN_WINDOW * SCAN_DEN) as usize;
    let mut out = Vec::new();
    for a in -SCAN_WINDOW * SCAN_DEN..=SCAN_WINDOW * SCAN_DEN {
        let x = qf(a, SCAN_DEN);
        let uni = g
            .substitute(&[MPoly::constant(1, x.clone()), MPoly::var(1, 0), MPoly::one(1)])
            .to_univariate(0)
            .expect("one variable");
        if uni.is_zero() {
            continue;
        }
        let xf = to_f64(&x);
        for y in real_root_hints(&uni, -wy, wy, steps) {
            if let Some(line) = unit_line(&grad, xf, y) {
                out.push(Sample { x: x.clone(), y, line });
            }
        }
    }
    out
}

/// Exact point of `g` near the sample, if one rationalizes.
fn exactify(g: &MPoly, s: &Sample) -> Option<ProjectivePoint> {
    let y = approximate(s.y, MAX_DEN)?;
    let v = vec![s.x.clone(), y, q(1)];
    if g.eval(&v).is_zero() {
        ProjectivePoint::new(v).ok()
    } else {
        None
    }
}

/// Searches for bitangent pairs and hyperflexes; `trials` float scans are run,
/// the first in the given coordinates and the others after seeded changes.
pub fn bitangent_search(c: &PlaneCurve, trials: usize, seed: u64) -> Result<BitangentFindings> {
    let f = c.equation();
    let curve: Curve = c.clone().into();
    let mut out = BitangentFindings {
        degree: c.degree(),
        points_searched: 0,
        trials,
        seed,
        pairs: Vec::new(),
        hyperflexes: Vec::new(),
        hints: Vec::new(),
    };
    // distinct points of a smooth conic have distinct tangents
    if c.degree() < 3 {
        return Ok(out);
    }

    let pts = plane_points(c);
    out.points_searched = pts.len();
    let lines: Vec<Option<ProjectivePoint>> = pts.iter().map(|p| tangent(f, p)).collect();
    for (i, p) in pts.iter().enumerate() {
        let Some(line) = &lines[i] else { continue };
        let z = Divisor::new(vec![(CurvePoint::Plane(p.clone()), 2)])?;
        let report = scheme_report(&curve, &z)?;
        if report.member_scheme {
            out.hyperflexes.push(Hyperflex {
                p: p.clone(),
                line: line.clone(),
                report,
            });
        }
        for (j, qp) in pts.iter().enumerate().skip(i + 1) {
            if lines[j].as_ref() == Some(line) {
                out.pairs.push(confirm_pair(&curve, p, qp, line.clone(), false)?);
            }
        }
    }

    for trial in 0..trials {
        let a = if trial == 0 {
            Matrix::identity(3)
        } else {
            random_change(&mut ChaCha8Rng::seed_from_u64(trial_seed(seed, trial)))
        };
        let g = transform(f, &a);
        let samples = scan_chart(&g);
        for (i, s) in samples.iter().enumerate() {
            for t in &samples[i + 1..] {
                let dx = to_f64(&s.x) - to_f64(&t.x);
                let dy = s.y - t.y;
                if (dx * dx + dy * dy).sqrt() < MIN_SEPARATION {
                    continue;
                }
                let gap = (0..3).map(|k| (s.line[k] - t.line[k]).abs()).fold(0.0, f64::max);
                if gap >= LINE_TOLERANCE {
                    continue;
                }
                let exact = match (exactify(&g, s), exactify(&g, t)) {
                    (Some(u), Some(v)) => {
                        let p = ProjectivePoint::new(apply(&a, u.coords()))?;
                        let qp = ProjectivePoint::new(apply(&a, v.coords()))?;
                        match (tangent(f, &p), tangent(f, &qp)) {
                            (Some(l), Some(m)) if l == m => Some((p, qp, l)),
                            _ => None,
                        }
                    }
                    _ => None,
                };
                match exact {
                    Some((p, qp, l)) => {
                        if !out.pairs.iter().any(|b| same_pair(b, &p, &qp)) {
                            out.pairs.push(confirm_pair(&curve, &p, &qp, l, true)?);
                        }
                    }
                    None if out.hints.len() < MAX_HINTS => out.hints.push(BitangentHint {
                        p: apply_f64(&a, &[to_f64(&s.x), s.y, 1.0]),
                        q: apply_f64(&a, &[to_f64(&t.x), t.y, 1.0]),
                        gap,
                    }),
                    None => {}
                }
            }
        }
    }
    Ok(out)
}
