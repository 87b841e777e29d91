//! Pairs of points on a rational space curve with coplanar tangent lines.
//!
//! `D(s, t) = det[φ(s), φ'(s), φ(t), φ'(t)]` vanishes exactly when the two
//! tangent lines span at most a plane. Swapping `s` and `t` is an even row
//! permutation, so `D` is symmetric and `Dred = D / (s - t)^k` picks up the
//! sign `(-1)^k`.

use serde::Serialize;

use crate::curvekit::sample::{height_ordered, SCAN_DEN, SCAN_WINDOW, SEARCH_DEN, SEARCH_NUM};
use crate::curvekit::{Curve, CurvePoint, Divisor, LinearSystem, ParametricCurve};
use crate::error::{Error, Result};
use crate::qlinalg::mpoly::determinant;
use crate::qlinalg::roots::{rational_roots, real_root_hints};
use crate::qlinalg::rational::to_f64;
use crate::qlinalg::{qf, MPoly, Rational};
use crate::terracini::{defect_report, TerraciniReport};

/// Float hints kept per call.
pub const MAX_HINTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoplanarHit {
    pub s: CurvePoint,
    pub t: CurvePoint,
    pub report: TerraciniReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoplanarLocus {
    #[serde(skip)]
    pub d: MPoly,
    #[serde(skip)]
    pub dred: MPoly,
    #[serde(rename = "D")]
    pub d_text: String,
    #[serde(rename = "Dred")]
    pub dred_text: String,
    /// Order of vanishing of `D` along the diagonal.
    pub k: u32,
    /// `Dred(t, s) = sign * Dred(s, t)`.
    pub sign: i32,
    /// `Dred` is a nonzero constant: no two distinct tangent lines meet.
    pub constant: bool,
    /// Exact rational zeros off the diagonal, `s < t`, each verified a member.
    pub hits: Vec<CoplanarHit>,
    /// Values `s0` with `Dred(s0, t) = 0` identically.
    pub vanishing_lines: Vec<String>,
    /// Approximate zeros `(s, t)`. Search hints only.
    pub hints: Vec<(f64, f64)>,
}

fn lift(p: &crate::qlinalg::Poly, var: usize) -> MPoly {
    MPoly::from_univariate(p, 2, var)
}

/// `D(s, t)` for a curve in P^3.
pub fn tangent_determinant(c: &ParametricCurve) -> Result<MPoly> {
    if c.ambient() != 3 {
        return Err(Error::NotSpaceCurve(format!(
            "coplanar tangents need a curve in P^3, got P^{}",
            c.ambient()
        )));
    }
    let rows: Vec<Vec<MPoly>> = [(0, false), (0, true), (1, false), (1, true)]
        .iter()
        .map(|&(var, deriv)| {
            c.coords()
                .iter()
                .map(|p| if deriv { lift(&p.derivative(), var) } else { lift(p, var) })
                .collect()
        })
        .collect();
    Ok(determinant(&rows, 2))
}

/// Divides out the largest power of `s - t`.
pub fn strip_diagonal(d: &MPoly) -> (MPoly, u32) {
    let diag = MPoly::var(2, 1);
    let mut cur = d.clone();
    let mut k = 0;
    while !cur.is_zero() {
        let (quot, rem) = cur.div_rem_linear(0, &diag);
        if !rem.is_zero() {
            break;
        }
        cur = quot;
        k += 1;
    }
    (cur, k)
}

fn swapped(p: &MPoly) -> MPoly {
    p.substitute(&[MPoly::var(2, 1), MPoly::var(2, 0)])
}

fn restrict_s(p: &MPoly, s0: &Rational) -> crate::qlinalg::Poly {
    p.substitute(&[MPoly::constant(1, s0.clone()), MPoly::var(1, 0)])
        .to_univariate(0)
        .expect("one variable")
}

pub fn coplanar_tangent_locus(curve: &ParametricCurve) -> Result<CoplanarLocus> {
    let d = tangent_determinant(curve)?;
    let (dred, k) = strip_diagonal(&d);
    let sign = if swapped(&dred) == dred {
        1
    } else if swapped(&dred) == -&dred {
        -1
    } else {
        return Err(Error::SelfCheck("Dred is not symmetric up to sign".into()));
    };
    let constant = dred.is_constant() && !dred.is_zero();
    let whole: Curve = curve.clone().into();

    let mut hits: Vec<CoplanarHit> = Vec::new();
    let mut vanishing_lines = Vec::new();
    let mut seen: Vec<(Rational, Rational)> = Vec::new();
    if !constant {
        for s0 in height_ordered(SEARCH_NUM, SEARCH_DEN) {
            let uni = restrict_s(&dred, &s0);
            if uni.is_zero() {
                vanishing_lines.push(crate::qlinalg::fmt_rational(&s0));
                continue;
            }
            for t0 in rational_roots(&uni).unwrap_or_default() {
                if t0 == s0 {
                    continue;
                }
                let pair = if s0 < t0 { (s0.clone(), t0) } else { (t0, s0.clone()) };
                if seen.contains(&pair) {
                    continue;
                }
                let pts = vec![CurvePoint::t(pair.0.clone()), CurvePoint::t(pair.1.clone())];
                let s = Divisor::reduced(pts.clone())?;
                let report = defect_report(&whole, LinearSystem::Hyperplane, &s)?;
                if !report.member {
                    return Err(Error::SelfCheck(format!(
                        "Dred vanishes at {s} but the pair is not a member"
                    )));
                }
                seen.push(pair);
                hits.push(CoplanarHit {
                    s: pts[0].clone(),
                    t: pts[1].clone(),
                    report,
                });
            }
        }
    }

    let mut hints = Vec::new();
    if !constant {
        let w = SCAN_WINDOW as f64;
        'scan: for a in -SCAN_WINDOW * SCAN_DEN..=SCAN_WINDOW * SCAN_DEN {
            let s0 = qf(a, SCAN_DEN);
            let uni = restrict_s(&dred, &s0);
            if uni.is_zero() {
                continue;
            }
            let sf = to_f64(&s0);
            let steps = (8 * SCAN_WINDOW * SCAN_DEN) as usize;
            for tf in real_root_hints(&uni, -w, w, steps) {
                if tf <= sf + 1e-9 {
                    continue;
                }
                let near_exact = seen
                    .iter()
                    .any(|(x, y)| (to_f64(x) - sf).abs() < 1e-6 && (to_f64(y) - tf).abs() < 1e-6);
                if !near_exact {
                    hints.push((sf, tf));
                    if hints.len() >= MAX_HINTS {
                        break 'scan;
                    }
                }
            }
        }
    }

    Ok(CoplanarLocus {
        d_text: d.to_string_with(&["s", "t"]),
        dred_text: dred.to_string_with(&["s", "t"]),
        d,
        dred,
        k,
        sign,
        constant,
        hits,
        vanishing_lines,
        hints,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, Poly};
    use num_traits::Zero;

    fn rnc3() -> ParametricCurve {
        ParametricCurve::new((0..=3).map(|i| Poly::t().pow(i)).collect()).unwrap()
    }

    fn quartic() -> ParametricCurve {
        let t = Poly::t();
        ParametricCurve::new(vec![
            Poly::one(),
            t.clone(),
            t.pow(2),
            &t.pow(2) * &(&t - &Poly::one()).pow(2),
        ])
        .unwrap()
    }

    #[test]
    fn twisted_cubic_has_constant_dred() {
        let l = coplanar_tangent_locus(&rnc3()).unwrap();
        // det = (s - t)^4 by direct expansion
        assert_eq!(l.k, 4);
        assert!(l.constant);
        assert_eq!(l.dred, MPoly::one(2));
        assert!(l.hits.is_empty() && l.hints.is_empty());
    }

    #[test]
    fn quartic_recovers_planted_pair() {
        let l = coplanar_tangent_locus(&quartic()).unwrap();
        assert!(l.dred.eval(&[q(0), q(1)]).is_zero());
        assert!(l
            .hits
            .iter()
            .any(|h| h.s == CurvePoint::t_int(0) && h.t == CurvePoint::t_int(1)));
        assert!(l.hits.iter().all(|h| h.report.member));
        for s0 in -3..=3 {
            assert!(l.d.eval(&[q(s0), q(s0)]).is_zero());
        }
    }

    #[test]
    fn symmetry_sign_matches_k() {
        for c in [rnc3(), quartic()] {
            let l = coplanar_tangent_locus(&c).unwrap();
            assert_eq!(l.sign, if l.k.is_multiple_of(2) { 1 } else { -1 });
        }
    }

    #[test]
    fn rejects_other_ambients() {
        let c = ParametricCurve::new((0..=4).map(|i| Poly::t().pow(i)).collect()).unwrap();
        assert!(matches!(coplanar_tangent_locus(&c), Err(Error::NotSpaceCurve(_))));
    }
}
