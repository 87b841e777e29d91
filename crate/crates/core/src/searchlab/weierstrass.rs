//! Canonical queries on subsets of the affine Weierstrass points of a split
//! hyperelliptic curve, optionally mixed with one rational fiber pair.

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvekit::divisor::as_display;
use crate::curvekit::{weierstrass_points, Curve, CurvePoint, Divisor, HyperPoint, HyperellipticCurve, LinearSystem};
use crate::error::{Error, Result};
use crate::qlinalg::Rational;
use crate::searchlab::probe::trial_seed;
use crate::terracini::{defect_report, hyperelliptic_oracle};

/// Default bounds on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubsetCaps {
    pub max_g: usize,
    pub max_x: usize,
}

impl Default for SubsetCaps {
    fn default() -> Self {
        SubsetCaps { max_g: 4, max_x: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetRow {
    #[serde(rename = "S", serialize_with = "as_display")]
    pub s: Divisor,
    pub e: usize,
    pub f: usize,
    /// `g - 2x + e + f`; absent when `x >= g`, where the count does not apply.
    pub predicted_h0: Option<i64>,
    pub actual_h0: usize,
    pub rank: usize,
    pub member: bool,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetTable {
    pub g: usize,
    pub x: usize,
    pub rows: Vec<SubsetRow>,
    pub count: usize,
    pub members: usize,
    /// Rows where the prediction and the rank computation differ.
    pub disagreements: usize,
}

impl SubsetTable {
    fn new(g: usize, x: usize, rows: Vec<SubsetRow>) -> Self {
        SubsetTable {
            g,
            x,
            count: rows.len(),
            members: rows.iter().filter(|r| r.member).count(),
            disagreements: rows.iter().filter(|r| r.agrees == Some(false)).count(),
            rows,
        }
    }

    pub fn all_members(&self) -> bool {
        self.members == self.count
    }
}

fn row(h: &HyperellipticCurve, pts: Vec<CurvePoint>) -> Result<SubsetRow> {
    let s = Divisor::reduced(pts)?;
    let x = s.degree() as usize;
    let report = defect_report(&Curve::Hyperelliptic(h.clone()), LinearSystem::Canonical, &s)?;
    if x < h.genus() {
        let o = hyperelliptic_oracle(h, &s)?;
        Ok(SubsetRow {
            s,
            e: o.e,
            f: o.f,
            predicted_h0: Some(o.predicted_h0),
            actual_h0: report.h0_v_minus_2s,
            rank: report.rank,
            member: report.member,
            agrees: Some(o.agrees),
        })
    } else {
        let pts: Vec<&HyperPoint> = s.points().filter_map(CurvePoint::as_hyper).collect();
        let e = pts.iter().filter(|p| p.is_weierstrass()).count();
        let f = pts
            .iter()
            .filter(|p| !p.is_weierstrass() && pts.contains(&&p.conjugate()))
            .count()
            / 2;
        Ok(SubsetRow {
            s,
            e,
            f,
            predicted_h0: None,
            actual_h0: report.h0_v_minus_2s,
            rank: report.rank,
            member: report.member,
            agrees: None,
        })
    }
}

/// All `x`-subsets of the affine Weierstrass points. With `fiber = Some(a)`
/// the pair above `a` joins the pool and only subsets meeting it are added
/// as extra rows.
pub fn weierstrass_subset_suite(
    h: &HyperellipticCurve,
    x: usize,
    caps: SubsetCaps,
    fiber: Option<&Rational>,
) -> Result<SubsetTable> {
    let g = h.genus();
    if g > caps.max_g || x > caps.max_x {
        return Err(Error::PreconditionNotMet(format!(
            "exhaustive enumeration capped at g <= {}, x <= {}; got g = {g}, x = {x}",
            caps.max_g, caps.max_x
        )));
    }
    if x == 0 {
        return Err(Error::PreconditionNotMet("x must be positive".into()));
    }
    let b = weierstrass_points(h)?;
    let mut rows = Vec::new();
    for combo in b.iter().cloned().combinations(x) {
        rows.push(row(h, combo)?);
    }
    if let Some(a) = fiber {
        let p = HyperPoint::above(h.f(), a.clone(), true);
        p.check(h.f())?;
        if p.is_weierstrass() {
            return Err(Error::PreconditionNotMet("the fiber point is a Weierstrass point".into()));
        }
        let pair = [CurvePoint::Hyper(p.clone()), CurvePoint::Hyper(p.conjugate())];
        for used in 1..=2.min(x) {
            for fib in pair.iter().cloned().combinations(used) {
                for rest in b.iter().cloned().combinations(x - used) {
                    rows.push(row(h, fib.iter().cloned().chain(rest).collect())?);
                }
            }
        }
    }
    Ok(SubsetTable::new(g, x, rows))
}

/// `trials` random `x`-subsets of the affine Weierstrass points, one per
/// trial seed, with no cap on the genus.
pub fn weierstrass_subset_sample(
    h: &HyperellipticCurve,
    x: usize,
    trials: usize,
    seed: u64,
) -> Result<SubsetTable> {
    let b = weierstrass_points(h)?;
    if x == 0 || x > b.len() {
        return Err(Error::PreconditionNotMet(format!(
            "need 1 <= x <= {}, got {x}",
            b.len()
        )));
    }
    let mut rows = Vec::new();
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, i));
        let mut idx = sample(&mut rng, b.len(), x).into_vec();
        idx.sort_unstable();
        rows.push(row(h, idx.into_iter().map(|j| b[j].clone()).collect())?);
    }
    Ok(SubsetTable::new(h.genus(), x, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{q, qf};

    fn g3() -> HyperellipticCurve {
        HyperellipticCurve::split((1..=8).map(q).collect()).unwrap()
    }

    #[test]
    fn genus_three_pairs() {
        let t = weierstrass_subset_suite(&g3(), 2, SubsetCaps::default(), None).unwrap();
        assert_eq!(t.count, 28);
        assert_eq!(t.count, (1 << 2) * ((1 << 3) - 1));
        assert!(t.all_members());
        assert!(t.rows.iter().all(|r| r.actual_h0 == 1 && r.agrees == Some(true)));
    }

    #[test]
    fn genus_three_singletons_and_triples() {
        let t1 = weierstrass_subset_suite(&g3(), 1, SubsetCaps::default(), None).unwrap();
        assert_eq!((t1.count, t1.members), (8, 8));
        let t3 = weierstrass_subset_suite(&g3(), 3, SubsetCaps::default(), None).unwrap();
        assert_eq!((t3.count, t3.members), (56, 0));
        assert!(t3.rows.iter().all(|r| r.predicted_h0.is_none() && r.actual_h0 == 0 && r.rank == 3));
    }

    #[test]
    fn fiber_pair_rows() {
        // f(9/2) is a square for roots 1..8
        let t = weierstrass_subset_suite(&g3(), 2, SubsetCaps::default(), Some(&qf(9, 2))).unwrap();
        assert_eq!(t.count, 28 + 2 * 8 + 1);
        let pair: Vec<_> = t.rows.iter().filter(|r| r.f == 1).collect();
        assert_eq!(pair.len(), 1);
        assert_eq!((pair[0].predicted_h0, pair[0].actual_h0), (Some(0), 1));
        assert_eq!(pair[0].agrees, Some(false));
        assert_eq!(t.disagreements, 1);
    }

    #[test]
    fn caps_are_enforced() {
        let h = HyperellipticCurve::split((1..=12).map(q).collect()).unwrap();
        assert!(weierstrass_subset_suite(&h, 2, SubsetCaps::default(), None).is_err());
        let wide = SubsetCaps { max_g: 5, max_x: 4 };
        assert_eq!(weierstrass_subset_suite(&h, 1, wide, None).unwrap().count, 12);
    }

    #[test]
    fn sampled_is_reproducible() {
        let h = HyperellipticCurve::split((1..=16).map(q).collect()).unwrap();
        let a = weierstrass_subset_sample(&h, 3, 5, 11).unwrap();
        assert_eq!(a, weierstrass_subset_sample(&h, 3, 5, 11).unwrap());
        assert_eq!(a.disagreements, 0);
    }
}
