//! Seeded random points. "General point" always means a point drawn here
//! from an explicit seed; callers re-check whatever genericity they rely on.
//!
//! Sampling windows (the only place they are defined):
//!
//! * parametrized curves: integer `t` in `[-PARAM_WINDOW, PARAM_WINDOW]`;
//! * hyperelliptic curves: integer `x` in `[-HYPER_WINDOW, HYPER_WINDOW]`
//!   avoiding the roots of `f`, branch chosen at random;
//! * plane curves: `x = a/b` with `|a| <= PLANE_NUM`, `1 <= b <= PLANE_DEN`
//!   in the chart `z = 1`, plus the points on `z = 0`, keeping rational
//!   solutions in `y` at which the gradient does not vanish;
//! * bounded rational searches in `searchlab`: `a/b` with
//!   `|a| <= SEARCH_NUM`, `1 <= b <= SEARCH_DEN`, and float scans with step
//!   `1/SCAN_DEN` over `[-SCAN_WINDOW, SCAN_WINDOW]`.
//!
//! Seed 0 is the degenerate seed of [`sample_point`]: `t = 0`, `x = 0`
//! (positive branch), or the first plane point in height order.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::{Curve, HyperellipticCurve, PlaneCurve};
use super::point::{CurvePoint, HyperPoint, ProjectivePoint};
use crate::error::{Error, Result};
use crate::qlinalg::roots::rational_roots;
use crate::qlinalg::{q, qf, MPoly, Rational};

pub const PARAM_WINDOW: i64 = 1000;
pub const HYPER_WINDOW: i64 = 1000;
pub const PLANE_NUM: i64 = 12;
pub const PLANE_DEN: i64 = 4;
pub const SEARCH_NUM: i64 = 12;
pub const SEARCH_DEN: i64 = 4;
pub const SCAN_WINDOW: i64 = 4;
pub const SCAN_DEN: i64 = 16;
/// Draws attempted before a sampler gives up on finding a new point.
pub const MAX_DRAWS: usize = 10_000;

pub fn sample_point(curve: &Curve, seed: u64) -> Result<CurvePoint> {
    if seed == 0 {
        match curve {
            Curve::Parametric(_) => return Ok(CurvePoint::t_int(0)),
            Curve::Hyperelliptic(h) if !h.f().eval(&q(0)).is_zero() => {
                return Ok(CurvePoint::Hyper(HyperPoint::above(h.f(), q(0), true)))
            }
            Curve::Plane(c) => {
                return plane_points(c)
                    .into_iter()
                    .next()
                    .map(CurvePoint::Plane)
                    .ok_or(Error::NoRationalPointFound(plane_search_size()))
            }
            _ => {}
        }
    }
    Sampler::new(curve, seed).next_point()
}

/// Draws pairwise distinct points from one seeded stream. On hyperelliptic
/// curves two draws never share an `x`-coordinate, so no fiber pair and no
/// Weierstrass point is produced.
pub struct Sampler<'a> {
    curve: &'a Curve,
    rng: ChaCha8Rng,
    used: Vec<CurvePoint>,
    plane_pool: Option<Vec<ProjectivePoint>>,
}

impl<'a> Sampler<'a> {
    pub fn new(curve: &'a Curve, seed: u64) -> Self {
        Sampler {
            curve,
            rng: ChaCha8Rng::seed_from_u64(seed),
            used: Vec::new(),
            plane_pool: None,
        }
    }

    /// Marks points that later draws must avoid.
    pub fn avoid<'p>(&mut self, points: impl IntoIterator<Item = &'p CurvePoint>) {
        self.used.extend(points.into_iter().cloned());
    }

    pub fn next_point(&mut self) -> Result<CurvePoint> {
        for _ in 0..MAX_DRAWS {
            let candidate = self.draw(self.curve)?;
            if !self.clashes(&candidate) {
                self.used.push(candidate.clone());
                return Ok(candidate);
            }
        }
        Err(Error::NoRationalPointFound(MAX_DRAWS))
    }

    pub fn take(&mut self, k: usize) -> Result<Vec<CurvePoint>> {
        (0..k).map(|_| self.next_point()).collect()
    }

    fn clashes(&self, p: &CurvePoint) -> bool {
        self.used.iter().any(|u| match (u, p) {
            (CurvePoint::Hyper(a), CurvePoint::Hyper(b)) => a.x == b.x,
            _ => u == p,
        })
    }

    fn draw(&mut self, curve: &Curve) -> Result<CurvePoint> {
        match curve {
            Curve::Parametric(_) => Ok(CurvePoint::t_int(
                self.rng.gen_range(-PARAM_WINDOW..=PARAM_WINDOW),
            )),
            Curve::Hyperelliptic(h) => Ok(CurvePoint::Hyper(self.draw_hyper(h)?)),
            Curve::Plane(c) => {
                let pool = self.plane_pool.get_or_insert_with(|| plane_points(c));
                pool.choose(&mut self.rng)
                    .cloned()
                    .map(CurvePoint::Plane)
                    .ok_or(Error::NoRationalPointFound(plane_search_size()))
            }
            Curve::Nodal(u) => {
                let k = self.rng.gen_range(0..u.components().len());
                let inner = self.draw(&u.components()[k])?;
                Ok(CurvePoint::on_component(k, inner))
            }
            Curve::Space(_) => Err(Error::NoRationalPointFound(0)),
        }
    }

    fn draw_hyper(&mut self, h: &HyperellipticCurve) -> Result<HyperPoint> {
        for _ in 0..MAX_DRAWS {
            let x = q(self.rng.gen_range(-HYPER_WINDOW..=HYPER_WINDOW));
            if h.f().eval(&x).is_zero() {
                continue;
            }
            let positive = self.rng.gen_bool(0.5);
            return Ok(HyperPoint::above(h.f(), x, positive));
        }
        Err(Error::NoRationalPointFound(MAX_DRAWS))
    }
}

fn plane_search_size() -> usize {
    ((2 * PLANE_NUM + 1) * PLANE_DEN) as usize
}

/// Rationals `a/b` with `|a| <= num`, `1 <= b <= den`, each once, by
/// height `max(|a|, b)` and then nonnegative before negative.
pub fn height_ordered(num: i64, den: i64) -> Vec<Rational> {
    let mut xs: Vec<Rational> = Vec::new();
    for b in 1..=den {
        for a in -num..=num {
            let v = qf(a, b);
            if !xs.contains(&v) {
                xs.push(v);
            }
        }
    }
    xs.sort_by_key(|v| {
        let n: i64 = v.numer().try_into().unwrap_or(i64::MAX);
        let d: i64 = v.denom().try_into().unwrap_or(i64::MAX);
        (n.abs().max(d), n < 0, n.abs())
    });
    xs
}

/// Smooth rational points found by the bounded search, in height order.
pub fn plane_points(c: &PlaneCurve) -> Vec<ProjectivePoint> {
    let f = c.equation();
    let xs = height_ordered(PLANE_NUM, PLANE_DEN);
    let mut out: Vec<ProjectivePoint> = Vec::new();
    let mut push = |coords: Vec<Rational>| {
        if let Ok(p) = ProjectivePoint::new(coords) {
            let grad_zero = f.gradient().iter().all(|g| g.eval(p.coords()).is_zero());
            if !grad_zero && !out.contains(&p) {
                out.push(p);
            }
        }
    };
    // y-roots of F(a, y, 1)
    for a in &xs {
        let line = f.substitute(&[
            MPoly::constant(1, a.clone()),
            MPoly::var(1, 0),
            MPoly::one(1),
        ]);
        if line.is_zero() {
            continue;
        }
        let uni = line.to_univariate(0).expect("one variable");
        for y in rational_roots(&uni).unwrap_or_default() {
            push(vec![a.clone(), y, q(1)]);
        }
    }
    // points on z = 0: (x : 1 : 0) and (1 : 0 : 0)
    let at_infinity = f.substitute(&[MPoly::var(1, 0), MPoly::one(1), MPoly::zero(1)]);
    if !at_infinity.is_zero() {
        let uni = at_infinity.to_univariate(0).expect("one variable");
        for x in rational_roots(&uni).unwrap_or_default() {
            push(vec![x, q(1), q(0)]);
        }
    }
    if f.eval(&[q(1), q(0), q(0)]).is_zero() {
        push(vec![q(1), q(0), q(0)]);
    }
    out
}

/// The affine Weierstrass points `(root, 0)`; the point at infinity of an
/// odd-degree model is not included.
pub fn weierstrass_points(h: &HyperellipticCurve) -> Result<Vec<CurvePoint>> {
    let roots = h.roots().ok_or(Error::NotSplit)?;
    let mut roots = roots.to_vec();
    roots.sort();
    Ok(roots
        .into_iter()
        .map(|r| CurvePoint::Hyper(HyperPoint::rational(r, q(0))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::curve::ParametricCurve;
    use crate::qlinalg::Poly;

    fn genus3() -> HyperellipticCurve {
        HyperellipticCurve::split((1..=8).map(q).collect()).unwrap()
    }

    #[test]
    fn deterministic_in_seed() {
        let c: Curve = ParametricCurve::new((0..4).map(|i| Poly::t().pow(i)).collect())
            .unwrap()
            .into();
        for seed in 1..20 {
            assert_eq!(sample_point(&c, seed).unwrap(), sample_point(&c, seed).unwrap());
        }
        assert_eq!(sample_point(&c, 0).unwrap(), CurvePoint::t_int(0));
    }

    #[test]
    fn hyperelliptic_draws_are_on_the_curve_and_distinct() {
        let h = genus3();
        let c: Curve = h.clone().into();
        let pts = Sampler::new(&c, 7).take(6).unwrap();
        for p in &pts {
            c.check_point(p).unwrap();
            assert!(!p.as_hyper().unwrap().is_weierstrass());
        }
        let mut xs: Vec<_> = pts.iter().map(|p| p.as_hyper().unwrap().x.clone()).collect();
        xs.dedup();
        assert_eq!(xs.len(), 6);
    }

    #[test]
    fn square_value_at_zero_gives_rational_point() {
        let roots: Vec<Rational> = (1..=6).flat_map(|i| [q(i), q(-i)]).collect();
        let c: Curve = HyperellipticCurve::split(roots).unwrap().into();
        let p = sample_point(&c, 0).unwrap();
        assert_eq!(p, CurvePoint::Hyper(HyperPoint::rational(q(0), q(720))));
    }

    #[test]
    fn plane_seed_zero_is_lowest_height_point() {
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let f = &(&x.pow(4) + &y.pow(4)) - &(&y * &z.pow(3));
        let c: Curve = PlaneCurve::new(f).unwrap().into();
        let p = sample_point(&c, 0).unwrap();
        assert_eq!(p, CurvePoint::plane(vec![q(0), q(0), q(1)]).unwrap());
        for s in 1..10 {
            c.check_point(&sample_point(&c, s).unwrap()).unwrap();
        }
    }

    #[test]
    fn weierstrass_points_need_split_structure() {
        assert_eq!(weierstrass_points(&genus3()).unwrap().len(), 8);
        let odd = HyperellipticCurve::split((1..=7).map(q).collect()).unwrap();
        assert_eq!(weierstrass_points(&odd).unwrap().len(), 7);
        // x^5 - 2 has a single real root, irrational
        let f = Poly::new(vec![q(-2), q(0), q(0), q(0), q(0), q(1)]);
        let h = HyperellipticCurve::new(f).unwrap();
        assert_eq!(weierstrass_points(&h), Err(Error::NotSplit));
    }
}
