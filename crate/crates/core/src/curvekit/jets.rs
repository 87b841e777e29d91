//! The jet engine: truncated local expansions of a linear system's basis at
//! a point, in a local parameter chosen per curve model.
//!
//! Local parameters and frames:
//!
//! * parametrized curves: `t - t0`, or `u = 1/t` at infinity (coordinates
//!   multiplied by `u^d`);
//! * plane curves: in the affine chart of the first nonzero coordinate, the
//!   coordinate whose partial derivative of the other one does not vanish is
//!   the parameter and the other is lifted with [`implicit_lift`];
//! * hyperelliptic curves, canonical system: `x - a` with frame `dx/y` away
//!   from the branch points (the expansion of `x^i dx/y` is that of `x^i`),
//!   and `y` with frame `dy` at a Weierstrass point, where
//!   `x^i dx/y = 2 x(y)^i / f'(x(y)) dy` and `x(y)` solves `f(x) = y^2`;
//! * curves cut out by equations: only the point and a tangent vector from
//!   the kernel of the Jacobian (multiplicity at most 2).
//!
//! Changing the parameter or the frame multiplies a stacked jet matrix on
//! the left by an invertible matrix, so ranks do not depend on these choices.

use num_traits::Zero;

use super::curve::{Curve, HyperellipticCurve, ParametricCurve, PlaneCurve, SpaceCurve};
use super::point::{CurvePoint, HyperPoint, ParamValue, ProjectivePoint};
use super::system::LinearSystem;
use crate::error::{Error, Result};
use crate::qlinalg::{implicit_lift, q, MPoly, Matrix, Rational, Series};

/// Maximum multiplicity supported on curves given by equations in P^r.
pub const SPACE_JET_LIMIT: u32 = 2;

/// Basis expansions of `system` at `p`, each truncated to `n` terms.
pub fn basis_series(
    curve: &Curve,
    system: LinearSystem,
    p: &CurvePoint,
    n: usize,
) -> Result<Vec<Series>> {
    basis_series_in(curve, system, p, n, Chart::Default)
}

/// Which local chart the engine uses on plane curves. `Alternate` picks the
/// last nonzero coordinate as the affine chart and prefers lifting the other
/// coordinate; it exists so invariance tests can force a different choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Default,
    Alternate,
}

pub fn basis_series_in(
    curve: &Curve,
    system: LinearSystem,
    p: &CurvePoint,
    n: usize,
    chart: Chart,
) -> Result<Vec<Series>> {
    assert!(n >= 1, "jet order must be at least 1");
    // validates the system/curve pairing
    system.dim_v(curve)?;
    curve.check_point(p)?;
    match (curve, p) {
        (Curve::Parametric(c), CurvePoint::Param(v)) => Ok(parametric_series(c, v, n)),
        (Curve::Plane(c), CurvePoint::Plane(pt)) => plane_series(c, pt, n, chart),
        (Curve::Hyperelliptic(h), CurvePoint::Hyper(hp)) => canonical_series(h, hp, n),
        (Curve::Space(c), CurvePoint::Space(pt)) => space_series(c, pt, n),
        (Curve::Nodal(u), CurvePoint::OnComponent { component, point }) => {
            basis_series_in(&u.components()[*component], system, point, n, chart)
        }
        _ => unreachable!("check_point accepted a mismatched point"),
    }
}

/// The `m × dim V` block whose row `j` holds the coefficients of `t^j`:
/// the conditions imposed on `V` by the length-`m` scheme at `p`.
pub fn jet_block(curve: &Curve, system: LinearSystem, p: &CurvePoint, m: u32) -> Result<Matrix> {
    jet_block_with(curve, system, p, m, Chart::Default, None)
}

/// [`jet_block`] in a forced chart and, when `c` is given, in the local
/// parameter `s` with `t = s(1 + c s)`.
pub fn jet_block_with(
    curve: &Curve,
    system: LinearSystem,
    p: &CurvePoint,
    m: u32,
    chart: Chart,
    c: Option<&Rational>,
) -> Result<Matrix> {
    if m == 0 {
        return Err(Error::UnsupportedMultiplicity { mult: 0, limit: 0 });
    }
    if on_space_model(curve, p) && m > SPACE_JET_LIMIT {
        return Err(Error::UnsupportedMultiplicity {
            mult: m,
            limit: SPACE_JET_LIMIT,
        });
    }
    let n = m as usize;
    let mut series = basis_series_in(curve, system, p, n, chart)?;
    if let Some(c) = c {
        let mut inner = vec![Rational::zero(); n];
        if n > 1 {
            inner[1] = q(1);
        }
        if n > 2 {
            inner[2] = c.clone();
        }
        let inner = Series::new(inner);
        series = series
            .iter()
            .map(|s| s.compose(&inner))
            .collect::<Result<_>>()?;
    }
    Ok(block_from_series(&series, n))
}

pub fn block_from_series(series: &[Series], m: usize) -> Matrix {
    Matrix::from_rows(
        (0..m)
            .map(|j| series.iter().map(|s| s.coeff(j).clone()).collect())
            .collect(),
    )
}

fn on_space_model(curve: &Curve, p: &CurvePoint) -> bool {
    match (curve, p) {
        (Curve::Space(_), _) => true,
        (Curve::Nodal(u), CurvePoint::OnComponent { component, point }) => u
            .components()
            .get(*component)
            .is_some_and(|c| on_space_model(c, point)),
        _ => false,
    }
}

/// Point and tangent direction at a smooth point of an embedded curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentLine {
    pub point: ProjectivePoint,
    pub direction: ProjectivePoint,
}

impl TangentLine {
    /// True when both spanning points lie in `{Σ h_i X_i = 0}`.
    pub fn lies_in(&self, hyperplane: &[Rational]) -> bool {
        [&self.point, &self.direction].iter().all(|p| {
            p.coords()
                .iter()
                .zip(hyperplane)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    }
}

pub fn tangent_line(curve: &Curve, p: &CurvePoint) -> Result<TangentLine> {
    let block = jet_block(curve, LinearSystem::Hyperplane, p, 2)?;
    if block.rank() < 2 {
        return Err(Error::SingularPoint(format!(
            "first-order jet at {p} does not span a line"
        )));
    }
    Ok(TangentLine {
        point: ProjectivePoint::new(block.row(0).to_vec())?,
        direction: ProjectivePoint::new(block.row(1).to_vec())?,
    })
}

fn parametric_series(c: &ParametricCurve, v: &ParamValue, n: usize) -> Vec<Series> {
    match v {
        ParamValue::Finite(t0) => c
            .coords()
            .iter()
            .map(|phi| Series::from_poly(&phi.shift(t0), n))
            .collect(),
        ParamValue::Infinity => c
            .coords()
            .iter()
            .map(|phi| Series::from_poly(&phi.reversed(c.degree()), n))
            .collect(),
    }
}

fn plane_series(
    c: &PlaneCurve,
    pt: &ProjectivePoint,
    n: usize,
    chart: Chart,
) -> Result<Vec<Series>> {
    let k = match chart {
        Chart::Default => pt.chart(),
        Chart::Alternate => (0..3).rev().find(|&i| !pt.coords()[i].is_zero()).unwrap(),
    };
    // rescale so that X_k = 1 in the chosen chart
    let scale = pt.coords()[k].recip();
    let affine_pt: Vec<Rational> = pt.coords().iter().map(|a| a * &scale).collect();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (i, j) = (others[0], others[1]);
    let (alpha, beta) = (affine_pt[i].clone(), affine_pt[j].clone());

    // affine equation in (X_i, X_j) with X_k = 1
    let mut subs = vec![MPoly::one(2); 3];
    subs[i] = MPoly::var(2, 0);
    subs[j] = MPoly::var(2, 1);
    let affine = c.equation().substitute(&subs);
    let at = [alpha.clone(), beta.clone()];
    let d_i = affine.derivative(0).eval(&at);
    let d_j = affine.derivative(1).eval(&at);

    // lift the coordinate whose partial is nonzero, parametrize by the other
    let prefer_j = chart == Chart::Default || d_i.is_zero();
    let (param_idx, lifted_idx, param_val, lifted_val, lifted_is_second) =
        if prefer_j && !d_j.is_zero() {
            (i, j, alpha, beta, true)
        } else if !d_i.is_zero() {
            (j, i, beta, alpha, false)
        } else {
            return Err(Error::SingularPoint(format!("gradient of F vanishes at {pt}")));
        };
    // G(u, t) = affine(param_val + t, u) in the right argument order
    let u = MPoly::var(2, 0);
    let shifted_t = &MPoly::constant(2, param_val.clone()) + &MPoly::var(2, 1);
    let g = if lifted_is_second {
        affine.substitute(&[shifted_t, u])
    } else {
        affine.substitute(&[u, shifted_t])
    };
    let lifted = implicit_lift(&g, &lifted_val, n)?;
    let mut out = vec![Series::one(n); 3];
    out[param_idx] = Series::variable_at(param_val, n);
    out[lifted_idx] = lifted;
    Ok(out)
}

fn canonical_series(h: &HyperellipticCurve, p: &HyperPoint, n: usize) -> Result<Vec<Series>> {
    let g = h.genus();
    if p.is_weierstrass() {
        // f(x) - t^2 = 0 near x = a, parameter t = y
        let fx = MPoly::from_univariate(h.f(), 2, 0);
        let eq = &fx - &MPoly::var(2, 1).pow(2);
        let x = implicit_lift(&eq, &p.x, n)?;
        let fprime = Series::compose_poly(&h.f().derivative(), &x);
        let frame = fprime.inverse()?.scale(&q(2));
        let mut power = Series::one(n);
        let mut out = Vec::with_capacity(g);
        for _ in 0..g {
            out.push(power.mul(&frame));
            power = power.mul(&x);
        }
        Ok(out)
    } else {
        let x = Series::variable_at(p.x.clone(), n);
        Ok((0..g).map(|i| x.pow(i as u32)).collect())
    }
}

fn space_series(c: &SpaceCurve, pt: &ProjectivePoint, n: usize) -> Result<Vec<Series>> {
    if n as u32 > SPACE_JET_LIMIT {
        return Err(Error::UnsupportedMultiplicity {
            mult: n as u32,
            limit: SPACE_JET_LIMIT,
        });
    }
    let r = c.ambient();
    let jac = c.jacobian(pt.coords());
    if jac.rank() != r - 1 {
        return Err(Error::SingularPoint(format!(
            "Jacobian rank {} at {pt}, expected {}",
            jac.rank(),
            r - 1
        )));
    }
    let p = pt.coords();
    let mut out: Vec<Series> = p.iter().map(|c| Series::constant(c.clone(), n)).collect();
    if n == 2 {
        // the kernel is the affine cone's tangent plane; it contains p itself
        let with_p = |v: &Vec<Rational>| {
            Matrix::from_rows(vec![p.to_vec(), v.clone()]).rank() == 2
        };
        let dir = jac
            .kernel_basis()
            .into_iter()
            .find(with_p)
            .expect("tangent plane of the cone is two-dimensional");
        out = p
            .iter()
            .zip(dir)
            .map(|(a, b)| Series::new(vec![a.clone(), b]))
            .collect();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{qf, Poly};

    fn rnc3() -> Curve {
        ParametricCurve::new((0..4).map(|i| Poly::t().pow(i)).collect())
            .unwrap()
            .into()
    }

    fn genus3() -> Curve {
        HyperellipticCurve::split((1..=8).map(q).collect()).unwrap().into()
    }

    fn total_flex_quartic() -> Curve {
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let f = &(&x.pow(4) + &y.pow(4)) - &(&y * &z.pow(3));
        PlaneCurve::new(f).unwrap().into()
    }

    #[test]
    fn taylor_rows_of_cubic_at_zero() {
        let b = jet_block(&rnc3(), LinearSystem::Hyperplane, &CurvePoint::t_int(0), 2).unwrap();
        assert_eq!(b, Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
    }

    #[test]
    fn weierstrass_block_has_rank_one() {
        let c = genus3();
        let w = CurvePoint::Hyper(HyperPoint::rational(q(1), q(0)));
        let b = jet_block(&c, LinearSystem::Canonical, &w, 2).unwrap();
        assert_eq!(b.rank(), 1);
        // first row is 2/f'(1) (1, 1, 1); the second row vanishes since x'(0) = 0
        let c0 = qf(2, -5040);
        assert_eq!(b.row(0), &[c0.clone(), c0.clone(), c0]);
        assert!(b.row(1).iter().all(Zero::is_zero));
    }

    #[test]
    fn hyperflex_jet_has_rank_two() {
        let c = total_flex_quartic();
        let p = CurvePoint::plane(vec![q(0), q(0), q(1)]).unwrap();
        let series = basis_series(&c, LinearSystem::Hyperplane, &p, 8).unwrap();
        // x = t, y = t^4 + O(t^8), z = 1
        assert_eq!(series[1].valuation(), Some(4));
        assert_eq!(series[1].coeff(4), &q(1));
        let b = jet_block(&c, LinearSystem::Hyperplane, &p, 4).unwrap();
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn plane_point_off_curve_is_rejected() {
        let c = total_flex_quartic();
        let p = CurvePoint::plane(vec![q(1), q(0), q(1)]).unwrap();
        assert!(matches!(
            jet_block(&c, LinearSystem::Hyperplane, &p, 2),
            Err(Error::PointNotOnCurve(_))
        ));
    }

    #[test]
    fn tangent_of_cubic_at_zero() {
        let l = tangent_line(&rnc3(), &CurvePoint::t_int(0)).unwrap();
        assert_eq!(l.point.coords(), &[q(1), q(0), q(0), q(0)]);
        assert_eq!(l.direction.coords(), &[q(0), q(1), q(0), q(0)]);
    }

    #[test]
    fn point_at_infinity_uses_reversed_coordinates() {
        let b = jet_block(&rnc3(), LinearSystem::Hyperplane, &CurvePoint::infinity(), 2).unwrap();
        assert_eq!(b, Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, 1, 0]]));
    }

    #[test]
    fn canonical_needs_hyperelliptic() {
        assert!(matches!(
            jet_block(&rnc3(), LinearSystem::Canonical, &CurvePoint::t_int(0), 1),
            Err(Error::UnsupportedSystem(_))
        ));
    }
}
