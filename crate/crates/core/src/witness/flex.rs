//! Smoothness certificates and flex weights of plane curves by elimination.
//!
//! After a seeded random change of coordinates `A`, write `G = F∘A` and
//! `g(x, y) = G(x, y, 1)`. When `(0:1:0)` lies on neither `G` nor its
//! Hessian, the leading coefficients in `y` of `g`, `g_x`, `g_y` and
//! `h = Hess(G)(x, y, 1)` are constants (generically nonzero), so
//! `Res_y` specializes correctly and:
//!
//! * `gcd(Res_y(g, g_x), Res_y(g, g_y))` constant certifies that the chart
//!   `z = 1` has no singular point, and a gcd of the four partials on
//!   `z = 0` certifies the line at infinity;
//! * `deg Res_y(g, h)` counts the intersections of `G` and its Hessian in the
//!   chart with multiplicity, and all of them lie in the chart once the
//!   restrictions to `z = 0` are coprime.
//!
//! A change that violates a leading-coefficient condition is discarded and
//! another is drawn.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvekit::jets::basis_series;
use crate::curvekit::{CurvePoint, LinearSystem, PlaneCurve, ProjectivePoint};
use crate::error::{Error, Result};
use crate::qlinalg::mpoly::determinant;
use crate::qlinalg::resultant::resultant_y;
use crate::qlinalg::{q, MPoly, Matrix, Poly};

/// Coordinate changes tried before giving up.
pub const MAX_CHANGES: usize = 12;
/// Entries of random coordinate changes are drawn from `[-CHANGE_BOUND, CHANGE_BOUND]`.
pub const CHANGE_BOUND: i64 = 3;

pub fn hessian(f: &MPoly) -> MPoly {
    let grad = f.gradient();
    let rows: Vec<Vec<MPoly>> = grad.iter().map(|g| g.gradient()).collect();
    determinant(&rows, f.nvars())
}

pub fn random_change(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let rows: Vec<Vec<_>> = (0..3)
            .map(|_| (0..3).map(|_| q(rng.gen_range(-CHANGE_BOUND..=CHANGE_BOUND))).collect())
            .collect();
        let a = Matrix::from_rows(rows);
        if !a.determinant().is_zero() {
            return a;
        }
    }
}

/// `F(A (x, y, z)^T)`.
pub fn transform(f: &MPoly, a: &Matrix) -> MPoly {
    let vars: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i)).collect();
    let subs: Vec<MPoly> = (0..3)
        .map(|i| {
            (0..3).fold(MPoly::zero(3), |acc, j| &acc + &vars[j].scale(&a[(i, j)]))
        })
        .collect();
    f.substitute(&subs)
}

fn chart(f: &MPoly) -> MPoly {
    f.substitute(&[MPoly::var(2, 0), MPoly::var(2, 1), MPoly::one(2)])
}

/// Restriction to `z = 0` in the coordinate `b` of `(1 : b : 0)`.
fn at_infinity(f: &MPoly) -> Poly {
    f.substitute(&[MPoly::one(1), MPoly::var(1, 0), MPoly::zero(1)])
        .to_univariate(0)
        .expect("one variable")
}

fn y_leading_ok(f: &MPoly) -> bool {
    !f.eval(&[q(0), q(1), q(0)]).is_zero()
}

enum Attempt<T> {
    Done(T),
    Retry,
}

/// Certifies in the coordinates `G = F∘A`; `Retry` when `A` is unsuitable.
fn certify_in(g: &MPoly) -> Result<Attempt<bool>> {
    if !y_leading_ok(g) {
        return Ok(Attempt::Retry);
    }
    let grad = g.gradient();
    // line at infinity
    let inf: Vec<Poly> = grad.iter().map(at_infinity).collect();
    let common = inf.iter().fold(Poly::zero(), |acc, p| acc.gcd(p));
    if !common.is_constant() {
        return Ok(Attempt::Done(false));
    }
    let gc = chart(g);
    let rx = match resultant_y(&gc, &gc.derivative(0)) {
        Ok(r) => r,
        Err(Error::PreconditionNotMet(_)) => return Ok(Attempt::Retry),
        Err(e) => return Err(e),
    };
    let ry = resultant_y(&gc, &gc.derivative(1))?;
    if rx.is_zero() || ry.is_zero() {
        // a repeated component: certainly not smooth
        return Ok(Attempt::Done(false));
    }
    if rx.gcd(&ry).is_constant() {
        Ok(Attempt::Done(true))
    } else {
        // a common projection could come from two different points; retry
        Ok(Attempt::Retry)
    }
}

/// `Ok(())` when the curve is certified smooth; `SingularCurve` when no
/// coordinate change produced a certificate.
pub fn smoothness_certificate(c: &PlaneCurve, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_CHANGES {
        let g = transform(c.equation(), &random_change(&mut rng));
        match certify_in(&g)? {
            Attempt::Done(true) => return Ok(()),
            Attempt::Done(false) => return Err(Error::SingularCurve),
            Attempt::Retry => {}
        }
    }
    Err(Error::SingularCurve)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlexWeight {
    pub degree: u32,
    /// Degree of `Res_y(F, Hess F)` in the chosen chart.
    pub total: usize,
    /// `3d(d-2)`.
    pub expected: usize,
    pub seed: u64,
    /// Coordinate changes drawn before one satisfied all conditions.
    pub changes_tried: usize,
}

/// Total intersection multiplicity of a smooth plane curve with its Hessian.
pub fn flex_weight_total(c: &PlaneCurve, seed: u64) -> Result<FlexWeight> {
    let d = c.degree();
    if d < 3 {
        return Err(Error::BadDegree(format!("flex weight needs d >= 3, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certified = false;
    for attempt in 1..=MAX_CHANGES {
        let g = transform(c.equation(), &random_change(&mut rng));
        if !certified {
            match certify_in(&g)? {
                Attempt::Done(true) => certified = true,
                Attempt::Done(false) => return Err(Error::SingularCurve),
                Attempt::Retry => continue,
            }
        }
        let h = hessian(&g);
        if h.is_zero() || !y_leading_ok(&h) {
            continue;
        }
        if !at_infinity(&g).gcd(&at_infinity(&h)).is_constant() {
            continue;
        }
        let res = match resultant_y(&chart(&g), &chart(&h)) {
            Ok(r) => r,
            Err(Error::PreconditionNotMet(_)) => continue,
            Err(e) => return Err(e),
        };
        let Some(total) = res.degree() else {
            return Err(Error::EliminationDegenerate(attempt));
        };
        let d = d as usize;
        return Ok(FlexWeight {
            degree: d as u32,
            total,
            expected: 3 * d * (d - 2),
            seed,
            changes_tried: attempt,
        });
    }
    if certified {
        Err(Error::EliminationDegenerate(MAX_CHANGES))
    } else {
        Err(Error::SingularCurve)
    }
}

/// Local intersection multiplicity of the curve with its Hessian at a smooth
/// point: the order of vanishing of the Hessian along the local branch.
pub fn flex_weight_at(c: &PlaneCurve, p: &ProjectivePoint) -> Result<usize> {
    let d = c.degree() as usize;
    let n = 3 * d * d.saturating_sub(2) + 2;
    let curve = c.clone().into();
    let branch = basis_series(&curve, LinearSystem::Hyperplane, &CurvePoint::Plane(p.clone()), n)?;
    let along = hessian(c.equation()).eval_series(&branch);
    along
        .valuation()
        .ok_or_else(|| Error::SelfCheck(format!("Hessian vanishes to order >= {n} at {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (MPoly, MPoly, MPoly) {
        (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2))
    }

    #[test]
    fn fermat_cubic_weight() {
        let (x, y, z) = xyz();
        let c = PlaneCurve::new(&(&x.pow(3) + &y.pow(3)) + &z.pow(3)).unwrap();
        let w = flex_weight_total(&c, 1).unwrap();
        assert_eq!((w.total, w.expected), (9, 9));
    }

    #[test]
    fn nodal_cubic_is_rejected() {
        // y^2 z = x^3 + x^2 z has a node at (0:0:1)
        let (x, y, z) = xyz();
        let f = &(&y.pow(2) * &z) - &(&x.pow(3) + &(&x.pow(2) * &z));
        let c = PlaneCurve::new(f).unwrap();
        assert_eq!(smoothness_certificate(&c, 3), Err(Error::SingularCurve));
        assert_eq!(flex_weight_total(&c, 3), Err(Error::SingularCurve));
    }

    #[test]
    fn hyperflex_carries_weight_two() {
        let (x, y, z) = xyz();
        let f = &(&x.pow(4) + &y.pow(4)) - &(&y * &z.pow(3));
        let c = PlaneCurve::new(f).unwrap();
        let p = ProjectivePoint::new(vec![q(0), q(0), q(1)]).unwrap();
        assert_eq!(flex_weight_at(&c, &p).unwrap(), 2);
        // (0:1:1) is a second hyperflex, with tangent x = 0
        let o = ProjectivePoint::new(vec![q(0), q(1), q(1)]).unwrap();
        assert_eq!(flex_weight_at(&c, &o).unwrap(), 2);
    }
}
