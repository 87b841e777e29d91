use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use terracini_core::curvekit::{Curve, CurvePoint, Divisor, HyperellipticCurve, LinearSystem, ParamValue, Sampler, SpaceCurve};
use terracini_core::qlinalg::resultant::resultant_y;
use terracini_core::qlinalg::roots::rational_roots;
use terracini_core::qlinalg::{implicit_lift, q, qf, MPoly, Matrix, Poly, Rational, Series};
use terracini_core::searchlab::{coplanar_tangent_locus, emptiness_probe, weierstrass_subset_suite, SubsetCaps};
use terracini_core::suites::{random_lift_problem, rational_normal_curve, reparametrize};
use terracini_core::terracini::{defect_report, jet_matrix, scheme_report};
use terracini_core::witness::{elliptic_quartic_curve, tangent_rational_curve};

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(small(), c), r)
            .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect()))
    })
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small(), 1..=max_deg + 1).prop_map(|c| Poly::from_i64(&c))
}

fn distinct_params(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set((-12i64..=12, 1i64..=3), n)
        .prop_map(|s| s.into_iter().map(|(a, b)| qf(a, b)).collect::<Vec<_>>())
        .prop_filter("distinct values", |v| {
            let mut w = v.clone();
            w.sort();
            w.dedup();
            w.len() == v.len()
        })
}

fn params_divisor(ts: &[Rational]) -> Divisor {
    Divisor::reduced(ts.iter().cloned().map(CurvePoint::t).collect()).unwrap()
}

fn quartic_witness() -> Curve {
    tangent_rational_curve(3, 4, &[q(0), q(1)]).unwrap().curve
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !k.is_empty() {
            let kt = Matrix::from_rows(k.clone());
            prop_assert_eq!(kt.rank(), k.len());
        }
    }

    #[test]
    fn determinant_matches_rank(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(small(), n), n))) {
        let a = Matrix::from_rows(m.into_iter().map(|r| r.into_iter().map(q).collect()).collect());
        let full = a.rank() == a.rows();
        prop_assert_eq!(!a.determinant().is_zero(), full);
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv), Matrix::identity(a.rows()));
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in poly(3), b in poly(3), shared in prop::option::of(small())) {
        prop_assume!(a.degree().unwrap_or(0) + b.degree().unwrap_or(0) > 0);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (a, b) = match shared {
            Some(r) => {
                let f = Poly::from_roots(&[q(r)]);
                (&a * &f, &b * &f)
            }
            None => (a, b),
        };
        let res = a.resultant(&b).unwrap();
        let g = a.gcd(&b);
        prop_assert_eq!(res.is_zero(), !g.is_constant());
    }

    #[test]
    fn rational_roots_are_roots(roots in prop::collection::vec((-9i64..=9, 1i64..=4), 1..=4), c in 1i64..=5) {
        let rs: Vec<Rational> = roots.iter().map(|&(a, b)| qf(a, b)).collect();
        let p = Poly::from_roots(&rs).scale(&q(c));
        let found = rational_roots(&p).unwrap();
        for r in &rs {
            prop_assert!(found.contains(r));
        }
        for r in &found {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn implicit_lift_has_zero_residual(seed in any::<u64>()) {
        let (f, u0, n) = random_lift_problem(seed);
        let u = implicit_lift(&f, &u0, n).unwrap();
        prop_assert!(f.eval_series(&[u, Series::variable_at(q(0), n)]).is_zero());
    }
}

#[test]
fn bivariate_resultant_detects_common_roots() {
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    // y^2 - x and y - x meet where x^2 = x
    let f = &y.pow(2) - &x;
    let g = &y - &x;
    let r = resultant_y(&f, &g).unwrap();
    assert!(r.eval(&q(0)).is_zero() && r.eval(&q(1)).is_zero());
    assert!(!r.eval(&q(2)).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adding_a_point_raises_rank_by_at_most_two(ts in distinct_params(4)) {
        let c = quartic_witness();
        let (s, p) = ts.split_at(3);
        let base = params_divisor(s);
        let r0 = defect_report(&c, LinearSystem::Hyperplane, &base).unwrap().rank;
        let more = base.with_point(CurvePoint::t(p[0].clone())).unwrap();
        let r1 = defect_report(&c, LinearSystem::Hyperplane, &more).unwrap().rank;
        prop_assert!(r0 <= r1 && r1 <= r0 + 2);
        let sub = params_divisor(&s[..2]);
        let r_sub = defect_report(&c, LinearSystem::Hyperplane, &sub).unwrap().rank;
        prop_assert!(r_sub <= r0);
    }

    #[test]
    fn scheme_and_set_membership_agree(ts in distinct_params(2), r in 3u32..=5) {
        for c in [quartic_witness(), rational_normal_curve(r).into()] {
            let s = params_divisor(&ts);
            let a = defect_report(&c, LinearSystem::Hyperplane, &s).unwrap();
            let b = scheme_report(&c, &s).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.member, b.member_scheme);
        }
    }

    #[test]
    fn rank_survives_reparametrization(ts in distinct_params(2), a in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), b in -5i64..=5) {
        let w = tangent_rational_curve(4, 6, &[q(0), q(1)]).unwrap();
        let Curve::Parametric(c) = &w.curve else { unreachable!() };
        let s = params_divisor(&ts);
        let base = defect_report(&w.curve, LinearSystem::Hyperplane, &s).unwrap();
        let (a, b) = (q(a), q(b));
        let moved: Curve = reparametrize(c, &a, &b).unwrap().into();
        let pre: Vec<Rational> = ts.iter().map(|t| (t - &b) / &a).collect();
        let r = defect_report(&moved, LinearSystem::Hyperplane, &params_divisor(&pre)).unwrap();
        prop_assert_eq!(base, r);
    }

    #[test]
    fn rank_survives_projective_change(ts in distinct_params(2), seed in any::<u64>()) {
        let w = tangent_rational_curve(4, 6, &[q(0), q(1)]).unwrap();
        let Curve::Parametric(c) = &w.curve else { unreachable!() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = loop {
            let rows: Vec<Vec<Rational>> = (0..5).map(|_| (0..5).map(|_| q(rng.gen_range(-3..=3))).collect()).collect();
            let m = Matrix::from_rows(rows);
            if !m.determinant().is_zero() {
                break m;
            }
        };
        let s = params_divisor(&ts);
        let a = defect_report(&w.curve, LinearSystem::Hyperplane, &s).unwrap();
        let b = defect_report(&c.transformed(&m).unwrap().into(), LinearSystem::Hyperplane, &s).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn probes_are_deterministic(seed in any::<u64>()) {
        let c = quartic_witness();
        let a = emptiness_probe(&c, LinearSystem::Hyperplane, 2, 4, seed, &[]).unwrap();
        let b = emptiness_probe(&c, LinearSystem::Hyperplane, 2, 4, seed, &[]).unwrap();
        prop_assert_eq!(a, b);
        let mut s1 = Sampler::new(&c, seed);
        let mut s2 = Sampler::new(&c, seed);
        prop_assert_eq!(s1.take(3).unwrap(), s2.take(3).unwrap());
    }

    #[test]
    fn reduced_coplanar_determinant_has_diagonal_sign(s in -8i64..=8, t in -8i64..=8, d in 4usize..=5) {
        let w = tangent_rational_curve(3, d, &[q(0), q(1)]).unwrap();
        let Curve::Parametric(c) = &w.curve else { unreachable!() };
        let locus = coplanar_tangent_locus(c).unwrap();
        let (s, t) = (q(s), q(t));
        let st = locus.dred.eval(&[s.clone(), t.clone()]);
        let ts = locus.dred.eval(&[t.clone(), s.clone()]);
        prop_assert_eq!(ts, st.clone() * q(locus.sign as i64));
        let diff = (&s - &t).pow(locus.k as i32);
        prop_assert_eq!(locus.d.eval(&[s, t]), st * diff);
    }
}

#[test]
fn coplanar_locus_of_cubic_is_constant() {
    let locus = coplanar_tangent_locus(&rational_normal_curve(3)).unwrap();
    assert!(locus.constant);
    assert_eq!(locus.k, 4);
    assert_eq!(locus.sign, 1);
    assert!(locus.hits.is_empty());
}

fn split(g: usize) -> HyperellipticCurve {
    HyperellipticCurve::split((1..=(2 * g + 2) as i64).map(q).collect()).unwrap()
}

#[test]
fn weierstrass_subsets_have_h0_g_minus_x() {
    for g in [3usize, 4] {
        let h = split(g);
        for x in 1..g {
            let t = weierstrass_subset_suite(&h, x, SubsetCaps::default(), None).unwrap();
            assert!(t.rows.iter().all(|r| r.actual_h0 == g - x), "g = {g}, x = {x}");
            assert!(t.all_members());
            assert_eq!(t.disagreements, 0);
        }
        let caps = SubsetCaps { max_g: 4, max_x: 5 };
        for x in [g, g + 1] {
            let t = weierstrass_subset_suite(&h, x, caps, None).unwrap();
            assert_eq!(t.members, 0, "g = {g}, x = {x}");
            assert!(t.rows.iter().all(|r| r.predicted_h0.is_none()));
        }
    }
}

#[test]
fn canonical_rank_of_generic_pairs() {
    let h: Curve = split(3).into();
    let mut sampler = Sampler::new(&h, 17);
    for _ in 0..5 {
        let s = Divisor::reduced(sampler.take(2).unwrap()).unwrap();
        let r = defect_report(&h, LinearSystem::Canonical, &s).unwrap();
        if !r.member {
            assert_eq!(r.rank, 3);
        }
    }
}

fn swap_first_and_last(c: &SpaceCurve) -> SpaceCurve {
    let n = c.ambient() + 1;
    let subs: Vec<MPoly> = (0..n)
        .map(|i| MPoly::var(n, if i == 0 { n - 1 } else if i == n - 1 { 0 } else { i }))
        .collect();
    SpaceCurve::new(c.ambient(), c.equations().iter().map(|f| f.substitute(&subs)).collect()).unwrap()
}

#[test]
fn chart_choice_does_not_change_rank() {
    let c = elliptic_quartic_curve();
    let origin = CurvePoint::space(vec![q(0), q(0), q(0), q(1)]).unwrap();
    let at_origin = defect_report(&c.clone().into(), LinearSystem::Hyperplane, &Divisor::reduced(vec![origin]).unwrap());
    assert!(matches!(at_origin, Err(terracini_core::Error::SingularPoint(_))));
    let swapped = swap_first_and_last(&c);
    let p = |v: [i64; 4]| CurvePoint::space(v.iter().copied().map(q).collect()).unwrap();
    let swap = |v: [i64; 4]| [v[3], v[1], v[2], v[0]];
    // every smooth point has x != 0, so after the swap none lies in the first chart
    for set in [vec![[1, 4, 5, 8]], vec![[1, 4, 5, 8], [1, -4, -5, 8]], vec![[1, 0, 1, 0], [1, 0, -1, 0]]] {
        let a = Divisor::reduced(set.iter().map(|&v| p(v)).collect()).unwrap();
        let b = Divisor::reduced(set.iter().map(|&v| p(swap(v))).collect()).unwrap();
        let ra = defect_report(&c.clone().into(), LinearSystem::Hyperplane, &a).unwrap();
        let rb = defect_report(&swapped.clone().into(), LinearSystem::Hyperplane, &b).unwrap();
        assert_eq!(ra, rb, "{a}");
    }
}

#[test]
fn jet_rows_match_degree() {
    let c: Curve = rational_normal_curve(4).into();
    let z = Divisor::new(vec![(CurvePoint::t_int(0), 3), (CurvePoint::Param(ParamValue::Infinity), 2)]).unwrap();
    let m = jet_matrix(&c, LinearSystem::Hyperplane, &z).unwrap();
    assert_eq!((m.rows(), m.cols(), m.rank()), (5, 5, 5));
    assert!(Rational::one() == m.row(0)[0]);
}
