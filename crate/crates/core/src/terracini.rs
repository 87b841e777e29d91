//! Terracini defects and membership from jet-matrix ranks.
//!
//! For a divisor `S` of degree `x` and a linear system `V`, let `rank` be the
//! rank of the jet matrix of `2S`. Then `dim V(-2S) = dim V - rank` and the
//! defect is `2x - rank`. `S` is a member of the Terracini locus when
//! `rank < dim V` and `rank < 2x`. The scheme variant tests
//! `dim <2Z> = rank - 1 <= 2x - 2` together with `V(-2Z) != 0`; the literal
//! condition `<2Z> != ∅` is vacuous, so it is read as `rank < dim V`.

use serde::Serialize;

use crate::curvekit::jets::jet_block;
use crate::curvekit::sample::Sampler;
use crate::curvekit::{Curve, CurvePoint, Divisor, HyperellipticCurve, LinearSystem};
use crate::error::{Error, Result};
use crate::qlinalg::{Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerraciniReport {
    /// Degree of `S` (or `Z`).
    pub x: u32,
    pub dim_v: usize,
    pub rank: usize,
    pub h0_v_minus_2s: usize,
    pub defect: i64,
    pub span_dim: i64,
    pub member: bool,
    pub member_scheme: bool,
}

impl TerraciniReport {
    pub fn from_rank(x: u32, dim_v: usize, rank: usize) -> Self {
        let two_x = 2 * x as i64;
        let r = rank as i64;
        let report = TerraciniReport {
            x,
            dim_v,
            rank,
            h0_v_minus_2s: dim_v - rank,
            defect: two_x - r,
            span_dim: r - 1,
            member: rank < dim_v && r < two_x,
            member_scheme: r < two_x && rank < dim_v,
        };
        debug_assert!(report.check().is_ok());
        report
    }

    /// Re-checks the bookkeeping identities.
    pub fn check(&self) -> Result<()> {
        let two_x = 2 * self.x as i64;
        let r = self.rank as i64;
        let ok = self.rank <= self.dim_v
            && self.h0_v_minus_2s + self.rank == self.dim_v
            && self.defect == two_x - r
            && self.span_dim == r - 1
            && self.member == (self.rank < self.dim_v && r < two_x)
            && self.member_scheme == (r < two_x && self.rank < self.dim_v);
        if ok {
            Ok(())
        } else {
            Err(Error::SelfCheck(format!("inconsistent report {self:?}")))
        }
    }
}

/// Stacked jet blocks of the entries of `z`; one row per unit of degree.
pub fn jet_matrix(curve: &Curve, system: LinearSystem, z: &Divisor) -> Result<Matrix> {
    let dim_v = system.dim_v(curve)?;
    let mut m = Matrix::zeros(0, dim_v);
    for (p, mult) in z.entries() {
        m = m.vstack(&jet_block(curve, system, p, *mult)?);
    }
    Ok(m)
}

fn report_for(curve: &Curve, system: LinearSystem, z: &Divisor) -> Result<TerraciniReport> {
    let dim_v = system.dim_v(curve)?;
    let rank = jet_matrix(curve, system, &z.doubled())?.rank();
    let report = TerraciniReport::from_rank(z.degree(), dim_v, rank);
    report.check()?;
    Ok(report)
}

/// Report for a reduced set `S`.
pub fn defect_report(curve: &Curve, system: LinearSystem, s: &Divisor) -> Result<TerraciniReport> {
    if !s.is_reduced() {
        return Err(Error::NonReducedInput);
    }
    report_for(curve, system, s)
}

/// Report for a curvilinear scheme `Z` on an embedded curve.
pub fn scheme_report(curve: &Curve, z: &Divisor) -> Result<TerraciniReport> {
    report_for(curve, LinearSystem::Hyperplane, z)
}

/// Elements of `V(-2S)`, as coefficient vectors in the system's basis.
pub fn vanishing_sections(curve: &Curve, system: LinearSystem, z: &Divisor) -> Result<Vec<Vec<Rational>>> {
    Ok(jet_matrix(curve, system, &z.doubled())?.kernel_basis())
}

fn require_affine_reduced(h: &HyperellipticCurve, s: &Divisor) -> Result<()> {
    if !s.is_reduced() {
        return Err(Error::NonReducedInput);
    }
    for p in s.points() {
        let hp = p.as_hyper().ok_or_else(|| {
            Error::InvalidDivisor(format!("{p} is not a point of a hyperelliptic curve"))
        })?;
        hp.check(h.f())?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiemannRoch {
    pub x: u32,
    pub g: usize,
    pub h0_k_minus_2s: usize,
    /// `h0(2S) = 2x - g + 1 + h0(K - 2S)`.
    pub h0_2s: i64,
}

pub fn rr_h0(h: &HyperellipticCurve, s: &Divisor) -> Result<RiemannRoch> {
    require_affine_reduced(h, s)?;
    let curve = Curve::Hyperelliptic(h.clone());
    let report = defect_report(&curve, LinearSystem::Canonical, s)?;
    Ok(rr_from_report(h.genus(), &report))
}

fn rr_from_report(g: usize, report: &TerraciniReport) -> RiemannRoch {
    RiemannRoch {
        x: report.x,
        g,
        h0_k_minus_2s: report.h0_v_minus_2s,
        h0_2s: 2 * report.x as i64 - g as i64 + 1 + report.h0_v_minus_2s as i64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RrBranch {
    /// `2x < g`: member iff `h0(2S) > 1`.
    LowDegree,
    /// `2x >= g`: member iff `h0(K - 2S) > 0`.
    HighDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalVerdict {
    pub member: bool,
    pub branch: RrBranch,
    pub rr: RiemannRoch,
    /// Membership read directly from the rank criterion of the same matrix.
    pub rank_member: bool,
}

impl CanonicalVerdict {
    pub fn agrees(&self) -> bool {
        self.member == self.rank_member
    }
}

/// Membership through the Riemann-Roch dichotomy, alongside the rank verdict
/// computed from the same jet matrix.
pub fn canonical_membership(h: &HyperellipticCurve, s: &Divisor) -> Result<CanonicalVerdict> {
    require_affine_reduced(h, s)?;
    let curve = Curve::Hyperelliptic(h.clone());
    let report = defect_report(&curve, LinearSystem::Canonical, s)?;
    let rr = rr_from_report(h.genus(), &report);
    let (branch, member) = if 2 * (rr.x as usize) < rr.g {
        (RrBranch::LowDegree, rr.h0_2s > 1)
    } else {
        (RrBranch::HighDegree, rr.h0_k_minus_2s > 0)
    };
    Ok(CanonicalVerdict {
        member,
        branch,
        rr,
        rank_member: report.member,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleFinding {
    /// Number of Weierstrass points in `S`.
    pub e: usize,
    /// Number of pairs `{p, q}` in `S` exchanged by the hyperelliptic involution.
    pub f: usize,
    /// `g - 2x + e + f`.
    pub predicted_h0: i64,
    /// `e > 0` or `f > 0`: positive defect, equivalently `h0(K - 2S) > g - 2x`.
    pub defect_predicted: bool,
    /// Membership read off the predicted count: `h0 > 0` and `h0 > g - 2x`.
    pub membership_predicted: bool,
    pub actual_h0: usize,
    pub actual_member: bool,
    pub agrees: bool,
}

/// Combinatorial prediction of `h0(K - 2S)` compared against linear algebra.
/// Disagreements are reported in the finding, never corrected.
pub fn hyperelliptic_oracle(h: &HyperellipticCurve, s: &Divisor) -> Result<OracleFinding> {
    require_affine_reduced(h, s)?;
    let g = h.genus();
    let x = s.degree() as usize;
    if x + 1 > g {
        return Err(Error::PreconditionNotMet(format!(
            "oracle needs x <= g - 1, got x = {x}, g = {g}"
        )));
    }
    let pts: Vec<_> = s.points().filter_map(CurvePoint::as_hyper).collect();
    let e = pts.iter().filter(|p| p.is_weierstrass()).count();
    let mut f = 0;
    for (i, p) in pts.iter().enumerate() {
        if p.is_weierstrass() {
            continue;
        }
        let c = p.conjugate();
        f += pts[i + 1..].iter().filter(|q| ***q == c).count();
    }
    let predicted_h0 = g as i64 - 2 * x as i64 + (e + f) as i64;
    let report = defect_report(&Curve::Hyperelliptic(h.clone()), LinearSystem::Canonical, s)?;
    let defect_predicted = e > 0 || f > 0;
    let membership_predicted = predicted_h0 > 0 && predicted_h0 > g as i64 - 2 * x as i64;
    Ok(OracleFinding {
        e,
        f,
        predicted_h0,
        defect_predicted,
        membership_predicted,
        actual_h0: report.h0_v_minus_2s,
        actual_member: report.member,
        agrees: predicted_h0 == report.h0_v_minus_2s as i64
            && membership_predicted == report.member,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub point: CurvePoint,
    pub base: TerraciniReport,
    pub extended: TerraciniReport,
}

/// Adds one seeded random point to a member `S` and reports on `S ∪ {p}`.
///
/// Degree bounds: `2x < r` for the hyperplane system of a curve in P^r, and
/// `2x <= g - 2` for the canonical system. Under these bounds the rank of
/// `2(S ∪ {p})` is at most `rank(2S) + 2 <= 2x + 1`, which stays below both
/// `dim V` and `2(x + 1)`, so membership is inherited.
pub fn extend_by_general_point(
    curve: &Curve,
    system: LinearSystem,
    s: &Divisor,
    seed: u64,
) -> Result<Extension> {
    let x = s.degree() as usize;
    match system {
        LinearSystem::Hyperplane => {
            let r = curve.ambient().ok_or_else(|| {
                Error::UnsupportedSystem("hyperplane system on a non-embedded model".into())
            })?;
            if 2 * x >= r {
                return Err(Error::PreconditionNotMet(format!(
                    "extension needs 2x < r, got x = {x}, r = {r}"
                )));
            }
        }
        LinearSystem::Canonical => {
            let g = system.dim_v(curve)?;
            if 2 * x + 2 > g {
                return Err(Error::PreconditionNotMet(format!(
                    "extension needs 2x <= g - 2, got x = {x}, g = {g}"
                )));
            }
        }
    }
    let base = defect_report(curve, system, s)?;
    if !base.member {
        return Err(Error::PreconditionNotMet(format!("{s} is not a member")));
    }
    let mut sampler = Sampler::new(curve, seed);
    sampler.avoid(s.points());
    let point = sampler.next_point()?;
    let extended = defect_report(curve, system, &s.with_point(point.clone())?)?;
    Ok(Extension {
        point,
        base,
        extended,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::{HyperPoint, ParametricCurve};
    use crate::qlinalg::{q, Poly};

    fn rnc3() -> Curve {
        ParametricCurve::new((0..4).map(|i| Poly::t().pow(i)).collect())
            .unwrap()
            .into()
    }

    fn witness_quartic() -> Curve {
        let t = Poly::t();
        let last = &t.pow(2) * &(&t - &Poly::one()).pow(2);
        ParametricCurve::new(vec![Poly::one(), t.clone(), t.pow(2), last])
            .unwrap()
            .into()
    }

    fn split(roots: impl IntoIterator<Item = i64>) -> HyperellipticCurve {
        HyperellipticCurve::split(roots.into_iter().map(q).collect()).unwrap()
    }

    fn wpt(a: i64) -> CurvePoint {
        CurvePoint::Hyper(HyperPoint::rational(q(a), q(0)))
    }

    fn params(ts: &[i64]) -> Divisor {
        Divisor::reduced(ts.iter().map(|&t| CurvePoint::t_int(t)).collect()).unwrap()
    }

    #[test]
    fn rational_normal_cubic_pair() {
        let m = jet_matrix(&rnc3(), LinearSystem::Hyperplane, &params(&[0, 1]).doubled()).unwrap();
        assert_eq!(
            m,
            Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 1, 1], &[0, 1, 2, 3]])
        );
        let r = defect_report(&rnc3(), LinearSystem::Hyperplane, &params(&[0, 1])).unwrap();
        assert_eq!((r.rank, r.defect, r.member), (4, 0, false));
    }

    #[test]
    fn witness_quartic_pair() {
        let c = witness_quartic();
        let s = params(&[0, 1]);
        let r = defect_report(&c, LinearSystem::Hyperplane, &s).unwrap();
        assert_eq!((r.rank, r.defect, r.member, r.h0_v_minus_2s), (3, 1, true, 1));
        let k = vanishing_sections(&c, LinearSystem::Hyperplane, &s).unwrap();
        assert_eq!(k, vec![vec![q(0), q(0), q(0), q(1)]]);
    }

    #[test]
    fn weierstrass_pair_genus_three() {
        let h = split(1..=8);
        let c: Curve = h.clone().into();
        let s = Divisor::reduced(vec![wpt(1), wpt(2)]).unwrap();
        assert_eq!(jet_matrix(&c, LinearSystem::Canonical, &s.doubled()).unwrap().rank(), 2);
        let r = defect_report(&c, LinearSystem::Canonical, &s).unwrap();
        assert_eq!((r.h0_v_minus_2s, r.defect, r.member), (1, 2, true));
        assert_eq!(rr_h0(&h, &s).unwrap().h0_2s, 3);
        let v = canonical_membership(&h, &s).unwrap();
        assert_eq!((v.member, v.branch), (true, RrBranch::HighDegree));
        let o = hyperelliptic_oracle(&h, &s).unwrap();
        assert_eq!((o.e, o.f, o.predicted_h0, o.actual_h0, o.agrees), (2, 0, 1, 1, true));
    }

    #[test]
    fn genus_seven_single_weierstrass_point() {
        let h = split(1..=16);
        let s = Divisor::reduced(vec![wpt(1)]).unwrap();
        let rr = rr_h0(&h, &s).unwrap();
        assert_eq!((rr.h0_k_minus_2s, rr.h0_2s), (6, 2));
        let v = canonical_membership(&h, &s).unwrap();
        assert_eq!((v.member, v.branch), (true, RrBranch::LowDegree));
        let s3 = Divisor::reduced(vec![wpt(1), wpt(5), wpt(9)]).unwrap();
        let o = hyperelliptic_oracle(&h, &s3).unwrap();
        assert_eq!((o.e, o.predicted_h0, o.actual_h0), (3, 4, 4));
    }

    #[test]
    fn generic_points_genus_three() {
        let h = split(1..=8);
        let one = Divisor::reduced(vec![CurvePoint::Hyper(HyperPoint::above(h.f(), q(0), true))]).unwrap();
        assert_eq!(rr_h0(&h, &one).unwrap().h0_2s, 1);
        let two = one
            .with_point(CurvePoint::Hyper(HyperPoint::above(h.f(), q(-1), false)))
            .unwrap();
        let v = canonical_membership(&h, &two).unwrap();
        assert!(!v.member && v.agrees());
        assert_eq!(v.rr.h0_k_minus_2s, 0);
    }

    #[test]
    fn fiber_pair_mismatch_is_surfaced() {
        let h = split(1..=8);
        let p = HyperPoint::above(h.f(), q(0), true);
        let s = Divisor::reduced(vec![CurvePoint::Hyper(p.clone()), CurvePoint::Hyper(p.conjugate())])
            .unwrap();
        let o = hyperelliptic_oracle(&h, &s).unwrap();
        assert_eq!((o.e, o.f, o.predicted_h0, o.actual_h0), (0, 1, 0, 1));
        assert!(!o.agrees);
        assert!(o.actual_member);
    }

    #[test]
    fn oracle_precondition() {
        let h = split(1..=8);
        let s = Divisor::reduced(vec![wpt(1), wpt(2), wpt(3)]).unwrap();
        assert!(matches!(hyperelliptic_oracle(&h, &s), Err(Error::PreconditionNotMet(_))));
    }

    #[test]
    fn scheme_reports() {
        let z = Divisor::new(vec![(CurvePoint::t_int(0), 2)]).unwrap();
        let r = scheme_report(&rnc3(), &z).unwrap();
        assert_eq!((r.rank, r.member_scheme), (4, false));
        for t in [0, 3, -7] {
            let r = scheme_report(&rnc3(), &params(&[t])).unwrap();
            assert!(!r.member_scheme && !r.member);
        }
        assert_eq!(
            defect_report(&rnc3(), LinearSystem::Hyperplane, &z),
            Err(Error::NonReducedInput)
        );
    }

    #[test]
    fn extension_guard() {
        let err = extend_by_general_point(&witness_quartic(), LinearSystem::Hyperplane, &params(&[0, 1]), 1);
        assert!(matches!(err, Err(Error::PreconditionNotMet(_))));
    }

    #[test]
    fn genus_seven_extension() {
        let c: Curve = split(1..=16).into();
        let s = Divisor::reduced(vec![wpt(1), wpt(2)]).unwrap();
        for seed in 0..5 {
            let e = extend_by_general_point(&c, LinearSystem::Canonical, &s, seed).unwrap();
            assert!(e.extended.member);
            assert_eq!(e.extended.x, 3);
        }
    }

    #[test]
    fn vacuity_at_and_above_genus() {
        let h = split(1..=8);
        let c: Curve = h.clone().into();
        for x in [3usize, 4] {
            let s = Divisor::reduced((1..=x as i64).map(wpt).collect()).unwrap();
            let r = defect_report(&c, LinearSystem::Canonical, &s).unwrap();
            assert_eq!((r.h0_v_minus_2s, r.member), (0, false));
        }
    }
}
