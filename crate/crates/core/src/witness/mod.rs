//! Explicit curves with prescribed Terracini behaviour.
//!
//! Each recipe builds a curve over Q together with a designated divisor and
//! the facts expected of it, and re-derives those facts with
//! [`crate::terracini`] before returning. A recipe whose facts fail to
//! verify is an error. These families realize the same Terracini phenomena
//! as the existence results they mirror, by direct construction rather than
//! by the smoothing arguments used there.

pub mod flex;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::curvekit::file::CurveSpec;
use crate::curvekit::sample::weierstrass_points;
use crate::curvekit::{
    Curve, CurvePoint, Divisor, HyperPoint, HyperellipticCurve, LinearSystem, NodalUnion,
    ParametricCurve, PlaneCurve, SpaceCurve,
};
use crate::error::{Error, Result};
use crate::qlinalg::rational::rational_sqrt;
use crate::qlinalg::{fmt_rational, q, qf, MPoly, Poly, Rational};
use crate::terracini::{defect_report, jet_matrix, scheme_report, TerraciniReport};

pub use flex::{flex_weight_at, flex_weight_total, smoothness_certificate, FlexWeight};

/// Facts a recipe promises about its designated divisor. `None` fields are
/// not asserted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_at_most: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member_scheme: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_dim: Option<i64>,
    /// Index of a basis element that must vanish on the doubled divisor
    /// (for the hyperplane system: a coordinate hyperplane containing all
    /// the tangent data).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_coordinate: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessRecipe {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub curve: Curve,
    pub system: LinearSystem,
    pub divisor: Divisor,
    /// Whether `divisor` is read as a scheme (scheme report) or a reduced set.
    pub scheme: bool,
    pub expected: Expected,
    pub report: TerraciniReport,
}

impl Serialize for WitnessRecipe {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            name: &'a str,
            params: &'a BTreeMap<String, String>,
            curve: CurveSpec,
            system: LinearSystem,
            divisor: &'a Divisor,
            scheme: bool,
            expected: &'a Expected,
            report: &'a TerraciniReport,
        }
        View {
            name: &self.name,
            params: &self.params,
            curve: CurveSpec::from_curve(&self.curve, Some(self.name.clone())),
            system: self.system,
            divisor: &self.divisor,
            scheme: self.scheme,
            expected: &self.expected,
            report: &self.report,
        }
        .serialize(s)
    }
}

fn build(
    name: &str,
    params: BTreeMap<String, String>,
    curve: Curve,
    system: LinearSystem,
    divisor: Divisor,
    scheme: bool,
    expected: Expected,
) -> Result<WitnessRecipe> {
    let report = if scheme {
        scheme_report(&curve, &divisor)?
    } else {
        defect_report(&curve, system, &divisor)?
    };
    let fail = |what: &str| Err(Error::SelfCheck(format!("{name}: {what} ({report:?})")));
    if expected.rank.is_some_and(|r| r != report.rank) {
        return fail("rank differs from the expected value");
    }
    if expected.rank_at_most.is_some_and(|r| report.rank > r) {
        return fail("rank exceeds the expected bound");
    }
    if expected.member.is_some_and(|m| m != report.member) {
        return fail("membership differs");
    }
    if expected.member_scheme.is_some_and(|m| m != report.member_scheme) {
        return fail("scheme membership differs");
    }
    if expected.span_dim.is_some_and(|s| s != report.span_dim) {
        return fail("span dimension differs");
    }
    if let Some(k) = expected.vanishing_coordinate {
        let m = jet_matrix(&curve, system, &divisor.doubled())?;
        if m.column(k).iter().any(|c| !c.is_zero()) {
            return fail("designated coordinate does not vanish on the doubled divisor");
        }
    }
    Ok(WitnessRecipe {
        name: name.into(),
        params,
        curve,
        system,
        divisor,
        scheme,
        expected,
        report,
    })
}

fn params<const N: usize>(items: [(&str, String); N]) -> BTreeMap<String, String> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn list(values: &[Rational]) -> String {
    values.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
}

/// A rational curve of degree `d` in P^r tangent to the hyperplane
/// `X_r = 0` at the `k` parameter values `contacts`.
///
/// With `P = ∏ (t - t_i)^2`, `c = d - 2k + 1` and `free = r + 1 - c` the
/// coordinates are
///
/// `(1, t, ..., t^(free-1), P, tP, ..., t^(c-1) P)`.
///
/// The `c` multiples of `P` vanish to order two at every contact, so the
/// jet matrix of `2S` has rank `min(free, 2k)` and the last coordinate lies
/// in its kernel. The coordinates have distinct degrees, so the curve is
/// nondegenerate of degree `d`; it is smooth on the affine line (the second
/// coordinate is `t`) and the point at infinity may be a cusp.
///
/// Requirements: `r >= 3`, `2k <= d`, `d >= r`, `free >= 2` (that is
/// `d <= r + 2k - 2`). `S` is a member exactly when `d > r`; for `d = r` the
/// coordinates span all polynomials of degree `<= r`, the curve is a
/// rational normal curve and the locus is empty.
pub fn tangent_rational_curve(r: usize, d: usize, contacts: &[Rational]) -> Result<WitnessRecipe> {
    let k = contacts.len();
    if r < 3 {
        return Err(Error::DegreeMismatch(format!("need r >= 3, got {r}")));
    }
    if k == 0 || 2 * k > d || d < r {
        return Err(Error::DegreeMismatch(format!(
            "need 1 <= k, 2k <= d and d >= r; got r = {r}, d = {d}, k = {k}"
        )));
    }
    let c = d - 2 * k + 1;
    if c + 2 > r + 1 {
        return Err(Error::DegreeMismatch(format!(
            "need d <= r + 2k - 2 = {}, got d = {d}",
            r + 2 * k - 2
        )));
    }
    let free = r + 1 - c;
    let t = Poly::t();
    let p = Poly::from_roots(contacts).pow(2);
    let mut coords: Vec<Poly> = (0..free).map(|i| t.pow(i as u32)).collect();
    coords.extend((0..c).map(|j| &t.pow(j as u32) * &p));
    let curve = ParametricCurve::new(coords)?;
    if !curve.is_nondegenerate() || curve.degree() != d {
        return Err(Error::DegenerateImage(format!(
            "r = {r}, d = {d}, contacts = [{}]",
            list(contacts)
        )));
    }
    let s = Divisor::reduced(contacts.iter().cloned().map(CurvePoint::t).collect())
        .map_err(|e| Error::DegreeMismatch(format!("contacts must be distinct: {e}")))?;
    let rank = free.min(2 * k);
    build(
        "tangent-rational",
        params([
            ("r", r.to_string()),
            ("d", d.to_string()),
            ("contacts", list(contacts)),
        ]),
        curve.into(),
        LinearSystem::Hyperplane,
        s,
        false,
        Expected {
            rank: Some(rank),
            member: Some(d > r),
            vanishing_coordinate: Some(r),
            ..Expected::default()
        },
    )
}

/// The quartic `(1 : t : t^2 : t^2 (t-1)^2)` with `S = {0, 1}`.
pub fn witness_quartic() -> Result<WitnessRecipe> {
    let mut w = tangent_rational_curve(3, 4, &[q(0), q(1)])?;
    w.name = "witness-quartic".into();
    Ok(w)
}

fn xyz() -> (MPoly, MPoly, MPoly) {
    (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2))
}

/// `x^d + y^d - y z^(d-1)` with `Z = (d/2) p` at the total ramification
/// point `p = (0:0:1)`; the line `y = 0` meets the curve only at `p`.
pub fn total_flex_plane_curve(d: u32) -> Result<WitnessRecipe> {
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if d < 4 {
        return Err(Error::DegreeMismatch(format!("need even d >= 4, got {d}")));
    }
    let (x, y, z) = xyz();
    let f = &(&x.pow(d) + &y.pow(d)) - &(&y * &z.pow(d - 1));
    let curve = PlaneCurve::new(f)?;
    let p = CurvePoint::plane(vec![q(0), q(0), q(1)])?;
    let z_div = Divisor::new(vec![(p, d / 2)])?;
    build(
        "total-flex",
        params([("d", d.to_string())]),
        curve.into(),
        LinearSystem::Hyperplane,
        z_div,
        true,
        Expected {
            rank: Some(2),
            member_scheme: Some(true),
            span_dim: Some(1),
            vanishing_coordinate: Some(1),
            ..Expected::default()
        },
    )
}

/// `x^2 + y^2 - z^2 + wx = x^2 + 2y^2 - z^2 - wx = 0` in P^3. The pencil
/// contains `2wx - y^2`, a cone with vertex `(0:0:0:1)`, and the curve is
/// singular there (Jacobian rank 1), so it is a rational quartic rather than
/// a smooth elliptic one. All jets used by the witnesses sit at smooth points.
pub fn elliptic_quartic_curve() -> SpaceCurve {
    let x = MPoly::var(4, 0);
    let y = MPoly::var(4, 1);
    let z = MPoly::var(4, 2);
    let w = MPoly::var(4, 3);
    let q1 = &(&(&x.pow(2) + &y.pow(2)) - &z.pow(2)) + &(&w * &x);
    let q2 = &(&(&x.pow(2) + &y.pow(2).scale(&q(2))) - &z.pow(2)) - &(&w * &x);
    SpaceCurve::new(3, vec![q1, q2]).expect("two quadrics in P^3")
}

fn q12() -> Result<(CurvePoint, CurvePoint)> {
    Ok((
        CurvePoint::space(vec![q(1), q(0), q(1), q(0)])?,
        CurvePoint::space(vec![q(1), q(0), q(-1), q(0)])?,
    ))
}

/// The complete intersection of `x^2 + y^2 - z^2 + wx` and
/// `x^2 + 2y^2 - z^2 - wx` in P^3; the plane `w = 0` cuts `2 q1 + 2 q2`
/// with `q1, q2 = (1:0:±1:0)`.
pub fn tangent_elliptic_quartic() -> Result<WitnessRecipe> {
    let (q1, q2) = q12()?;
    build(
        "elliptic-quartic",
        BTreeMap::new(),
        elliptic_quartic_curve().into(),
        LinearSystem::Hyperplane,
        Divisor::reduced(vec![q1, q2])?,
        false,
        Expected {
            rank_at_most: Some(3),
            member: Some(true),
            vanishing_coordinate: Some(3),
            ..Expected::default()
        },
    )
}

/// The conic `(1 : 0 : t : t^2)` in the plane `y = 0`, tangent to `w = 0`
/// at `q3 = (1:0:0:0)`.
pub fn tangent_conic() -> ParametricCurve {
    let t = Poly::t();
    ParametricCurve::new(vec![Poly::one(), Poly::zero(), t.clone(), t.pow(2)])
        .expect("conic coordinates are coprime")
}

/// The elliptic quartic together with the conic above, `S = {q1, q2, q3}`
/// with each point taken on its own component.
pub fn tangent_nodal_union() -> Result<WitnessRecipe> {
    let (q1, q2) = q12()?;
    let curve = NodalUnion::new(vec![elliptic_quartic_curve().into(), tangent_conic().into()])?;
    let s = Divisor::reduced(vec![
        CurvePoint::on_component(0, q1),
        CurvePoint::on_component(0, q2),
        CurvePoint::on_component(1, CurvePoint::t_int(0)),
    ])?;
    build(
        "nodal-union",
        BTreeMap::new(),
        curve.into(),
        LinearSystem::Hyperplane,
        s,
        false,
        Expected {
            rank_at_most: Some(3),
            member: Some(true),
            vanishing_coordinate: Some(3),
            ..Expected::default()
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberChoice {
    /// Designate two Weierstrass points.
    None,
    /// Designate the fiber pair above this `x`; `f(x)` must be a nonzero square.
    At(Rational),
    /// Search small rationals for a rational fiber pair.
    Search,
}

/// Numerators and denominators bounding the fiber search.
pub const FIBER_SEARCH_NUM: i64 = 60;
pub const FIBER_SEARCH_DEN: i64 = 12;

/// A rational `a` with `f(a)` a nonzero square, in order of height.
pub fn find_rational_fiber(f: &Poly) -> Option<Rational> {
    let mut cands: Vec<(i64, Rational)> = Vec::new();
    for den in 1..=FIBER_SEARCH_DEN {
        for num in -FIBER_SEARCH_NUM..=FIBER_SEARCH_NUM {
            let v = qf(num, den);
            if *v.denom() == den.into() {
                cands.push((num.abs().max(den), v));
            }
        }
    }
    cands.sort();
    cands.into_iter().map(|(_, v)| v).find(|a| {
        let y2 = f.eval(a);
        !y2.is_zero() && rational_sqrt(&y2).is_some()
    })
}

/// `y^2 = ∏ (x - root)` of genus `g`, with either two Weierstrass points or a
/// rational fiber pair `{(a, b), (a, -b)}` of the hyperelliptic double cover
/// as designated divisor. Both have `rank 2`, hence are members once `g >= 3`.
pub fn split_hyperelliptic(g: usize, roots: &[Rational], fiber: FiberChoice) -> Result<WitnessRecipe> {
    if g < 2 {
        return Err(Error::BadDegree(format!("need g >= 2, got {g}")));
    }
    if roots.len() != 2 * g + 2 && roots.len() != 2 * g + 1 {
        return Err(Error::BadDegree(format!(
            "genus {g} needs 2g+1 or 2g+2 = {} roots, got {}",
            2 * g + 2,
            roots.len()
        )));
    }
    let h = HyperellipticCurve::split(Vec::from(roots))?;
    let a = match &fiber {
        FiberChoice::None => None,
        FiberChoice::At(a) => {
            let y2 = h.f().eval(a);
            if y2.is_zero() || rational_sqrt(&y2).is_none() {
                return Err(Error::NotASquare(format!(
                    "f({}) = {}",
                    fmt_rational(a),
                    fmt_rational(&y2)
                )));
            }
            Some(a.clone())
        }
        FiberChoice::Search => Some(find_rational_fiber(h.f()).ok_or(Error::NoRationalPointFound(
            ((2 * FIBER_SEARCH_NUM + 1) * FIBER_SEARCH_DEN) as usize,
        ))?),
    };
    let divisor = match &a {
        Some(a) => {
            let p = HyperPoint::above(h.f(), a.clone(), true);
            Divisor::reduced(vec![CurvePoint::Hyper(p.conjugate()), CurvePoint::Hyper(p)])?
        }
        None => Divisor::reduced(weierstrass_points(&h)?.into_iter().take(2).collect())?,
    };
    let mut p = params([("g", g.to_string()), ("roots", list(roots))]);
    if let Some(a) = &a {
        p.insert("fiber_x".into(), fmt_rational(a));
    }
    build(
        "split-hyperelliptic",
        p,
        h.into(),
        LinearSystem::Canonical,
        divisor,
        false,
        Expected {
            rank: Some(2),
            member: Some(g >= 3),
            ..Expected::default()
        },
    )
}

/// The genus-5 fixture: roots `±1, ..., ±6`; `f` is even and `f(0) = (6!)^2`,
/// giving the fiber pair `(0, ±720)`.
pub fn genus5_fiber() -> Result<WitnessRecipe> {
    let roots: Vec<Rational> = (1..=6).flat_map(|i| [q(-i), q(i)]).collect();
    split_hyperelliptic(5, &roots, FiberChoice::At(q(0)))
}

/// `(x^2 - z^2)^2 + y (x^3 + xyz + 2y^3 + 3z^3)`. The line `y = 0` is
/// tangent at `(1:0:1)` and `(-1:0:1)`; the curve is smooth (certified by
/// elimination in the tests).
pub fn planted_bitangent_quartic() -> PlaneCurve {
    let (x, y, z) = xyz();
    let conic = &x.pow(2) - &z.pow(2);
    let xyz_term = &(&x * &y) * &z;
    let cubic = &(&(&x.pow(3) + &xyz_term) + &y.pow(3).scale(&q(2))) + &z.pow(3).scale(&q(3));
    PlaneCurve::new(&conic.pow(2) + &(&y * &cubic)).expect("homogeneous quartic")
}

pub fn fermat(d: u32) -> PlaneCurve {
    let (x, y, z) = xyz();
    PlaneCurve::new(&(&x.pow(d) + &y.pow(d)) + &z.pow(d)).expect("homogeneous")
}

/// Recipe names accepted by [`construct`].
pub const RECIPES: &[&str] = &[
    "witness-quartic",
    "tangent-rational",
    "total-flex",
    "elliptic-quartic",
    "nodal-union",
    "split-hyperelliptic",
    "genus5-fiber",
];

/// Builds a recipe from a name and string parameters:
/// `tangent-rational` takes `r`, `d`, `contacts` (comma separated);
/// `total-flex` takes `d`; `split-hyperelliptic` takes `g`, `roots` and
/// optionally `fiber_x` (a rational or `search`).
pub fn construct(name: &str, args: &BTreeMap<String, String>) -> Result<WitnessRecipe> {
    let get = |k: &str| {
        args.get(k)
            .ok_or_else(|| Error::Shape(format!("recipe {name} needs parameter `{k}`")))
    };
    let int = |k: &str| -> Result<usize> {
        get(k)?
            .trim()
            .parse()
            .map_err(|_| Error::Shape(format!("parameter `{k}` must be a non-negative integer")))
    };
    let rationals = |k: &str| -> Result<Vec<Rational>> {
        get(k)?
            .split(',')
            .map(|s| {
                crate::qlinalg::parse_rational(s.trim())
                    .map_err(|m| Error::Shape(format!("parameter `{k}`: {m}")))
            })
            .collect()
    };
    match name {
        "witness-quartic" => witness_quartic(),
        "tangent-rational" => tangent_rational_curve(int("r")?, int("d")?, &rationals("contacts")?),
        "total-flex" => total_flex_plane_curve(int("d")? as u32),
        "elliptic-quartic" => tangent_elliptic_quartic(),
        "nodal-union" => tangent_nodal_union(),
        "split-hyperelliptic" => {
            let fiber = match args.get("fiber_x").map(String::as_str) {
                None => FiberChoice::None,
                Some("search") => FiberChoice::Search,
                Some(_) => FiberChoice::At(rationals("fiber_x")?[0].clone()),
            };
            split_hyperelliptic(int("g")?, &rationals("roots")?, fiber)
        }
        "genus5-fiber" => genus5_fiber(),
        other => Err(Error::Shape(format!(
            "unknown recipe `{other}` (expected one of {})",
            RECIPES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::jets::tangent_line;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&i| q(i)).collect()
    }

    #[test]
    fn witness_quartic_facts() {
        let w = witness_quartic().unwrap();
        let Curve::Parametric(c) = &w.curve else { panic!() };
        let t = Poly::t();
        assert_eq!(c.coords()[3], &t.pow(2) * &(&t - &Poly::one()).pow(2));
        assert_eq!((w.report.rank, w.report.defect, w.report.member), (3, 1, true));
        let l = tangent_line(&w.curve, &CurvePoint::t_int(0)).unwrap();
        assert!(l.lies_in(&ints(&[0, 0, 0, 1])));
    }

    #[test]
    fn tangent_family_examples() {
        let w = tangent_rational_curve(5, 6, &ints(&[0, 1])).unwrap();
        assert_eq!((w.report.rank, w.report.member), (3, true));
        let w = tangent_rational_curve(3, 6, &ints(&[0, 1, 2])).unwrap();
        assert_eq!((w.report.x, w.report.member), (3, true));
        // d = r gives a rational normal curve and an empty locus
        let w = tangent_rational_curve(4, 4, &ints(&[0, 1])).unwrap();
        assert!(!w.report.member);
        assert!(matches!(
            tangent_rational_curve(3, 7, &ints(&[0, 1])),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(tangent_rational_curve(3, 4, &ints(&[0, 0])).is_err());
    }

    #[test]
    fn total_flex_family() {
        for d in [4, 6] {
            let w = total_flex_plane_curve(d).unwrap();
            assert!(w.report.member_scheme);
            assert_eq!(w.report.span_dim, 1);
        }
        assert_eq!(total_flex_plane_curve(5), Err(Error::OddDegree(5)));
    }

    #[test]
    fn total_flex_curves_are_smooth() {
        for d in [4, 6] {
            let Curve::Plane(c) = total_flex_plane_curve(d).unwrap().curve else { panic!() };
            smoothness_certificate(&c, 0).unwrap();
        }
    }

    #[test]
    fn elliptic_quartic_and_union() {
        let w = tangent_elliptic_quartic().unwrap();
        assert!(w.report.member && w.report.defect >= 1);
        let Curve::Space(c) = &w.curve else { panic!() };
        assert_eq!(c.jacobian(&ints(&[1, 0, 1, 0])).rank(), 2);
        let u = tangent_nodal_union().unwrap();
        assert!(u.report.member);
        assert_eq!(u.report.x, 3);
        let conic: Curve = tangent_conic().into();
        assert!(tangent_line(&conic, &CurvePoint::t_int(0))
            .unwrap()
            .lies_in(&ints(&[0, 0, 0, 1])));
    }

    #[test]
    fn hyperelliptic_fixtures() {
        let w = split_hyperelliptic(3, &ints(&[1, 2, 3, 4, 5, 6, 7, 8]), FiberChoice::None).unwrap();
        assert_eq!(w.report.h0_v_minus_2s, 1);
        let w = split_hyperelliptic(3, &ints(&[1, 2, 3, 4, 5, 6, 7, 8]), FiberChoice::Search).unwrap();
        assert_eq!(w.params["fiber_x"], "9/2");
        let g5 = genus5_fiber().unwrap();
        assert!(g5.report.member);
        assert!(matches!(
            split_hyperelliptic(3, &ints(&[1, 2, 3, 4, 5, 6, 7, 8]), FiberChoice::At(q(0))),
            Err(Error::NotASquare(_))
        ));
        assert_eq!(
            split_hyperelliptic(3, &ints(&[1, 1, 3, 4, 5, 6, 7, 8]), FiberChoice::None),
            Err(Error::NonSquarefree)
        );
        // thirteen roots cannot define a genus-5 curve
        let thirteen = ints(&[1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, 7, 8]);
        assert!(matches!(
            split_hyperelliptic(5, &thirteen, FiberChoice::Search),
            Err(Error::BadDegree(_))
        ));
    }

    #[test]
    fn planted_bitangent_is_smooth_with_a_bitangent() {
        let c = planted_bitangent_quartic();
        smoothness_certificate(&c, 0).unwrap();
        let curve: Curve = c.into();
        let s = Divisor::reduced(vec![
            CurvePoint::plane(ints(&[1, 0, 1])).unwrap(),
            CurvePoint::plane(ints(&[-1, 0, 1])).unwrap(),
        ])
        .unwrap();
        let r = defect_report(&curve, LinearSystem::Hyperplane, &s).unwrap();
        assert_eq!((r.rank, r.member), (2, true));
        // simple tangency at a bitangent point: no flex weight
        let Curve::Plane(c) = &curve else { panic!() };
        let p = crate::curvekit::ProjectivePoint::new(ints(&[1, 0, 1])).unwrap();
        assert_eq!(flex_weight_at(c, &p).unwrap(), 0);
    }

    #[test]
    fn flex_weights() {
        for seed in 0..3 {
            assert_eq!(flex_weight_total(&fermat(4), seed).unwrap().total, 24);
            assert_eq!(flex_weight_total(&fermat(3), seed).unwrap().total, 9);
        }
    }
}
