//! Named verification suites. Each suite builds its fixtures, runs exact
//! checks and returns a report with one record per examined set; the
//! manifest lists the checks with the basis of each expected fact.

use std::fmt::Display;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::curvekit::{
    weierstrass_points, Curve, CurvePoint, Divisor, HyperellipticCurve, LinearSystem,
    ParamValue, ParametricCurve, PlaneCurve, ProjectivePoint, Sampler,
};
use crate::error::{Error, Result};
use crate::qlinalg::{implicit_lift, q, MPoly, Matrix, Poly, Rational, Series};
use crate::searchlab::{
    bitangent_search, coplanar_tangent_locus, emptiness_probe, weierstrass_subset_sample,
    weierstrass_subset_suite, SubsetCaps, Verdict,
};
use crate::terracini::{canonical_membership, defect_report, extend_by_general_point, scheme_report};
use crate::witness::flex::{random_change, transform};
use crate::witness::{
    fermat, flex_weight_total, genus5_fiber, planted_bitangent_quartic, split_hyperelliptic,
    tangent_elliptic_quartic, tangent_nodal_union, tangent_rational_curve, total_flex_plane_curve,
    find_rational_fiber, witness_quartic, FiberChoice,
};

/// Why an expected fact is expected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A consequence of a published theorem or example.
    Theorem,
    /// Established by an independent computation on the fixture.
    Computed,
    /// Immediate from the definitions.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSpec {
    pub name: &'static str,
    pub operation: &'static str,
    pub expected: &'static str,
    pub basis: Basis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub fixtures: Vec<&'static str>,
    pub checks: Vec<CheckSpec>,
    /// Always `exact`: no verdict uses a numeric tolerance.
    pub tolerance: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides every trial count of the suite.
    pub trials: Option<usize>,
}

/// Default seed for suites and probes.
pub const DEFAULT_SEED: u64 = 1;

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: DEFAULT_SEED,
            trials: None,
        }
    }
}

impl SuiteOptions {
    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub basis: Basis,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub options: SuiteOptions,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    pub records: Vec<Value>,
    pub counterexamples: Vec<Value>,
}

fn check(name: &'static str, operation: &'static str, expected: &'static str, basis: Basis) -> CheckSpec {
    CheckSpec {
        name,
        operation,
        expected,
        basis,
    }
}

fn spec(name: &'static str, summary: &'static str, fixtures: Vec<&'static str>, checks: Vec<CheckSpec>) -> SuiteSpec {
    SuiteSpec {
        name,
        summary,
        fixtures,
        checks,
        tolerance: "exact",
    }
}

/// Every shipped suite, in run order.
pub fn manifest() -> Vec<SuiteSpec> {
    use Basis::*;
    vec![
        spec(
            "rnc-emptiness",
            "random sets on rational normal curves have defect 0",
            vec!["rnc r=3", "rnc r=5"],
            vec![
                check("rnc3-x2", "emptiness_probe", "200 trials, 0 failures", Theorem),
                check("rnc5-x3", "emptiness_probe", "200 trials, 0 failures", Theorem),
                check("rnc3-dred", "coplanar_tangent_locus", "Dred nonzero constant", Computed),
            ],
        ),
        spec(
            "witness-quartic",
            "the quartic (1 : t : t^2 : t^2(t-1)^2) and its planted pair {0, 1}",
            vec!["witness-quartic"],
            vec![
                check("pair-report", "defect_report", "rank 3, defect 1, member", Computed),
                check("dred-hit", "coplanar_tangent_locus", "Dred(0,1) = 0, pair among exact hits", Computed),
                check("planted-probe", "emptiness_probe", "planted {0,1} reported as counterexample", Computed),
            ],
        ),
        spec(
            "hyperelliptic-g3",
            "Weierstrass subsets of y^2 = (x-1)...(x-8)",
            vec!["split-hyperelliptic g=3 roots=1..8"],
            vec![
                check("pairs", "weierstrass_subset_suite", "28 pairs, all members, h0(K-2S) = 1", Theorem),
                check("pair-count", "weierstrass_subset_suite", "28 = 2^(g-1)(2^g - 1)", Theorem),
                check("singletons", "weierstrass_subset_suite", "8 singletons, all members", Theorem),
                check("x-at-least-g", "defect_report", "no member for x >= 3", Theorem),
            ],
        ),
        spec(
            "oracle",
            "the count g - 2x + e + f against linear algebra",
            vec!["split-hyperelliptic g=3 roots=1..8", "split-hyperelliptic g=7 roots=1..16"],
            vec![
                check("g3-exhaustive", "hyperelliptic_oracle", "agreement on every Weierstrass subset, x <= g-1", Theorem),
                check("g7-sampled", "hyperelliptic_oracle", "agreement on 100 seeded subsets", Theorem),
                check("fiber-pair", "hyperelliptic_oracle", "predicted 0, actual 1, flagged", Computed),
            ],
        ),
        spec(
            "riemann-roch",
            "Riemann-Roch dichotomy against the rank criterion",
            vec!["g=3 roots 1..8", "g=5 roots ±1..±6", "g=7 roots 1..16"],
            vec![check("agreement", "canonical_membership", "500 queries, 0 disagreements", Theorem)],
        ),
        spec(
            "gonality-g5",
            "a rational fiber pair of the g^1_2 on a genus-5 curve",
            vec!["genus5-fiber"],
            vec![
                check("fiber-member", "defect_report", "member, x = 2 < g/2", Theorem),
                check("low-degree-branch", "canonical_membership", "2x < g and h0(2S) > 1", Theorem),
            ],
        ),
        spec(
            "extension",
            "adding a seeded point to a member keeps it a member",
            vec!["split-hyperelliptic g=7", "tangent-rational r=5 d=6 contacts=0,1"],
            vec![
                check("canonical-g7", "extend_by_general_point", "50 extensions, all members", Theorem),
                check("hyperplane-r5", "extend_by_general_point", "50 extensions, all members", Theorem),
            ],
        ),
        spec(
            "total-flex",
            "Z = (d/2) p at a total flex",
            vec!["total-flex d=4", "total-flex d=6"],
            vec![
                check("d4", "scheme_report", "member_scheme, span_dim 1", Theorem),
                check("d6", "scheme_report", "member_scheme, span_dim 1", Theorem),
            ],
        ),
        spec(
            "flex-weight",
            "total intersection with the Hessian",
            vec!["fermat d=4", "total-flex d=4", "fermat d=3"],
            vec![
                check("fermat-quartic", "flex_weight_total", "24 under 3 coordinate changes", Theorem),
                check("total-flex-quartic", "flex_weight_total", "24 under 3 coordinate changes", Theorem),
                check("smooth-cubic", "flex_weight_total", "9 under 3 coordinate changes", Theorem),
            ],
        ),
        spec(
            "tangency",
            "curves tangent to a hyperplane at prescribed points",
            vec!["elliptic-quartic", "nodal-union"],
            vec![
                check("elliptic-quartic", "defect_report", "member at x = 2", Computed),
                check("nodal-union", "defect_report", "member at x = 3", Computed),
            ],
        ),
        spec(
            "infrastructure",
            "invariance of ranks, series lifting and report determinism",
            vec!["tangent-rational r=4 d=6 contacts=0,1"],
            vec![
                check("reparametrization", "defect_report", "rank unchanged, 20 seeds", Trivial),
                check("projective", "defect_report", "rank unchanged, 20 seeds", Trivial),
                check("lift-residual", "implicit_lift", "residual 0 mod t^N, 50 lifts", Trivial),
                check("deterministic", "suite", "identical serialized reports", Trivial),
            ],
        ),
        spec(
            "bitangent",
            "exact bitangent pairs and hyperflexes of plane quartics",
            vec!["planted-bitangent quartic", "total-flex d=4", "conic"],
            vec![
                check("planted-pair", "bitangent_search", "(1:0:1), (-1:0:1) on y = 0", Computed),
                check("hyperflex", "bitangent_search", "(0:0:1) on y = 0", Computed),
                check("conic", "bitangent_search", "no findings", Trivial),
            ],
        ),
    ]
}

pub fn find(name: &str) -> Option<SuiteSpec> {
    manifest().into_iter().find(|s| s.name == name)
}

#[derive(Default)]
struct Run {
    checks: Vec<(String, String, String, bool)>,
    records: Vec<Value>,
    counterexamples: Vec<Value>,
}

impl Run {
    fn check(&mut self, name: &str, expected: impl Display, observed: impl Display, passed: bool) {
        self.checks
            .push((name.into(), expected.to_string(), observed.to_string(), passed));
    }

    fn record(&mut self, v: Value) {
        self.records.push(v);
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

pub fn run(name: &str, opts: SuiteOptions) -> Result<SuiteReport> {
    let spec = find(name).ok_or_else(|| {
        let names: Vec<_> = manifest().iter().map(|s| s.name).collect();
        Error::Shape(format!("unknown suite `{name}` (expected one of {})", names.join(", ")))
    })?;
    let mut run = Run::default();
    match name {
        "rnc-emptiness" => rnc_emptiness(&mut run, opts)?,
        "witness-quartic" => witness_quartic_suite(&mut run, opts)?,
        "hyperelliptic-g3" => hyperelliptic_g3(&mut run, opts)?,
        "oracle" => oracle(&mut run, opts)?,
        "riemann-roch" => riemann_roch(&mut run, opts)?,
        "gonality-g5" => gonality(&mut run)?,
        "extension" => extension(&mut run, opts)?,
        "total-flex" => total_flex(&mut run)?,
        "flex-weight" => flex_weight(&mut run, opts)?,
        "tangency" => tangency(&mut run)?,
        "infrastructure" => infrastructure(&mut run, opts)?,
        "bitangent" => bitangent(&mut run, opts)?,
        _ => unreachable!("manifest and runner disagree"),
    }
    let mut checks = Vec::new();
    for (name, expected, observed, passed) in run.checks {
        let basis = spec
            .checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.basis)
            .ok_or_else(|| Error::SelfCheck(format!("check `{name}` missing from the manifest")))?;
        checks.push(CheckOutcome {
            name,
            basis,
            expected,
            observed,
            passed,
        });
    }
    Ok(SuiteReport {
        suite: spec.name.into(),
        options: opts,
        passed: checks.iter().all(|c| c.passed),
        checks,
        records: run.records,
        counterexamples: run.counterexamples,
    })
}

pub fn rational_normal_curve(r: u32) -> ParametricCurve {
    ParametricCurve::new((0..=r).map(|i| Poly::t().pow(i)).collect()).expect("nondegenerate")
}

fn split(roots: impl IntoIterator<Item = i64>) -> HyperellipticCurve {
    HyperellipticCurve::split(roots.into_iter().map(q).collect()).expect("distinct roots")
}

pub fn genus3() -> HyperellipticCurve {
    split(1..=8)
}

pub fn genus5() -> HyperellipticCurve {
    split((1..=6).flat_map(|i| [-i, i]))
}

pub fn genus7() -> HyperellipticCurve {
    split(1..=16)
}

fn rnc_emptiness(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let trials = opts.trials(200);
    for (r, x, name) in [(3, 2, "rnc3-x2"), (5, 3, "rnc5-x3")] {
        let c: Curve = rational_normal_curve(r).into();
        let p = emptiness_probe(&c, LinearSystem::Hyperplane, x, trials, opts.seed, &[])?;
        for f in &p.failing {
            run.counterexamples.push(json!({"r": r, "x": x, "failure": to_value(f)}));
        }
        run.record(json!({"S": format!("rnc r={r}, x={x}"), "trials": p.trials, "failures": p.failures, "verdict": to_value(&p.verdict)}));
        run.check(
            name,
            format!("{trials} trials, 0 failures"),
            format!("{} trials, {} failures", p.trials, p.failures),
            p.verdict == Verdict::AllPassed,
        );
    }
    let l = coplanar_tangent_locus(&rational_normal_curve(3))?;
    run.check("rnc3-dred", "Dred nonzero constant", format!("Dred = {}, k = {}", l.dred_text, l.k), l.constant);
    Ok(())
}

fn witness_quartic_suite(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let w = witness_quartic()?;
    let r = &w.report;
    run.record(json!({"S": w.divisor.to_string(), "report": to_value(r)}));
    run.check(
        "pair-report",
        "rank 3, defect 1, member",
        format!("rank {}, defect {}, member {}", r.rank, r.defect, r.member),
        r.rank == 3 && r.defect == 1 && r.member,
    );
    let Curve::Parametric(c) = &w.curve else {
        return Err(Error::SelfCheck("witness quartic is parametric".into()));
    };
    let l = coplanar_tangent_locus(c)?;
    let at = l.dred.eval(&[q(0), q(1)]);
    let hit = l
        .hits
        .iter()
        .any(|h| h.s == CurvePoint::t_int(0) && h.t == CurvePoint::t_int(1));
    run.check(
        "dred-hit",
        "Dred(0,1) = 0, pair among exact hits",
        format!("Dred(0,1) = {at}, {} exact hits", l.hits.len()),
        at.is_zero() && hit,
    );
    let p = emptiness_probe(&w.curve, LinearSystem::Hyperplane, 2, opts.trials(20), opts.seed, std::slice::from_ref(&w.divisor))?;
    let planted = p.planted.first().is_some_and(|c| c.counterexample);
    run.check(
        "planted-probe",
        "planted {0,1} reported as counterexample",
        format!("verdict {:?}, planted counterexample {planted}, random failures {}", p.verdict, p.failures),
        planted && p.verdict == Verdict::CounterexampleFound,
    );
    Ok(())
}

fn hyperelliptic_g3(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let h = genus3();
    let g = h.genus();
    let pairs = weierstrass_subset_suite(&h, 2, SubsetCaps::default(), None)?;
    for row in &pairs.rows {
        run.record(to_value(row));
    }
    let all_h0 = pairs.rows.iter().all(|r| r.actual_h0 == 1);
    run.check(
        "pairs",
        "28 pairs, all members, h0(K-2S) = 1",
        format!("{} pairs, {} members, all h0 = 1: {all_h0}", pairs.count, pairs.members),
        pairs.count == 28 && pairs.all_members() && all_h0,
    );
    let formula = (1usize << (g - 1)) * ((1usize << g) - 1);
    run.check(
        "pair-count",
        format!("{formula} = 2^(g-1)(2^g - 1)"),
        pairs.count,
        pairs.count == formula,
    );
    let singles = weierstrass_subset_suite(&h, 1, SubsetCaps::default(), None)?;
    run.check(
        "singletons",
        "8 singletons, all members",
        format!("{} singletons, {} members", singles.count, singles.members),
        singles.count == 8 && singles.all_members(),
    );
    // x >= g: exhaustive Weierstrass subsets plus seeded random sets
    let curve: Curve = h.clone().into();
    let mut tested = 0;
    let mut members = 0;
    for x in [3, 4] {
        let t = weierstrass_subset_suite(&h, x, SubsetCaps::default(), None)?;
        tested += t.count;
        members += t.members;
    }
    for i in 0..opts.trials(20) {
        for x in [3, 4] {
            let s = Divisor::reduced(Sampler::new(&curve, opts.seed.wrapping_add(i as u64)).take(x)?)?;
            let rep = defect_report(&curve, LinearSystem::Canonical, &s)?;
            tested += 1;
            if rep.member {
                members += 1;
                run.counterexamples.push(json!({"S": s.to_string(), "report": to_value(&rep)}));
            }
        }
    }
    run.check(
        "x-at-least-g",
        "no member for x >= 3",
        format!("{tested} queries, {members} members"),
        members == 0,
    );
    Ok(())
}

fn oracle(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let h3 = genus3();
    let mut rows = 0;
    let mut bad = 0;
    for x in 1..h3.genus() {
        let t = weierstrass_subset_suite(&h3, x, SubsetCaps::default(), None)?;
        rows += t.count;
        bad += t.disagreements;
    }
    run.check(
        "g3-exhaustive",
        "agreement on every Weierstrass subset, x <= g-1",
        format!("{rows} subsets, {bad} disagreements"),
        bad == 0 && rows > 0,
    );
    let h7 = genus7();
    let trials = opts.trials(100);
    let mut bad7 = 0;
    for i in 0..trials {
        let x = 1 + i % (h7.genus() - 1);
        let t = weierstrass_subset_sample(&h7, x, 1, opts.seed.wrapping_add(i as u64))?;
        for row in t.rows.iter().filter(|r| r.agrees != Some(true)) {
            bad7 += 1;
            run.counterexamples.push(to_value(row));
        }
    }
    run.check(
        "g7-sampled",
        format!("agreement on {trials} seeded subsets"),
        format!("{trials} subsets, {bad7} disagreements"),
        bad7 == 0,
    );
    let fiber = find_rational_fiber(h3.f())
        .ok_or_else(|| Error::SelfCheck("genus-3 fixture has no rational fiber".into()))?;
    let mixed = weierstrass_subset_suite(&h3, 2, SubsetCaps::default(), Some(&fiber))?;
    for row in mixed.rows.iter().filter(|r| r.e + r.f < 2) {
        run.record(to_value(row));
    }
    let pair = mixed.rows.iter().find(|r| r.f == 1);
    let observed = match pair {
        Some(r) => format!(
            "S = {}, predicted {:?}, actual {}, agrees {:?}",
            r.s, r.predicted_h0, r.actual_h0, r.agrees
        ),
        None => "no fiber-pair row".into(),
    };
    let reproduced = pair.is_some_and(|r| {
        r.predicted_h0 == Some(0) && r.actual_h0 == 1 && r.agrees == Some(false)
    });
    run.check("fiber-pair", "predicted 0, actual 1, flagged", observed, reproduced);
    Ok(())
}

/// A seeded canonical query mixing Weierstrass points, general points and
/// fiber pairs, of size `1..=g+1`.
pub fn hyperelliptic_query(h: &HyperellipticCurve, seed: u64) -> Result<Divisor> {
    let curve: Curve = h.clone().into();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = Sampler::new(&curve, seed);
    let mut b = weierstrass_points(h)?;
    let x = rng.gen_range(1..=h.genus() + 1);
    let mut pts: Vec<CurvePoint> = Vec::new();
    while pts.len() < x {
        match rng.gen_range(0..3) {
            0 if !b.is_empty() => pts.push(b.swap_remove(rng.gen_range(0..b.len()))),
            2 if pts.len() + 2 <= x => {
                let p = sampler.next_point()?;
                let c = p.as_hyper().expect("hyperelliptic sampler").conjugate();
                pts.push(p);
                pts.push(CurvePoint::Hyper(c));
            }
            _ => pts.push(sampler.next_point()?),
        }
    }
    Divisor::reduced(pts)
}

fn riemann_roch(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let curves = [genus3(), genus5(), genus7()];
    let trials = opts.trials(500);
    let mut bad = 0;
    for i in 0..trials {
        let h = &curves[i % curves.len()];
        let seed = opts.seed.wrapping_add(i as u64);
        let s = hyperelliptic_query(h, seed)?;
        let v = canonical_membership(h, &s)?;
        if !v.agrees() {
            bad += 1;
            run.counterexamples.push(json!({"g": h.genus(), "seed": seed, "S": s.to_string(), "verdict": to_value(&v)}));
        }
    }
    run.check(
        "agreement",
        format!("{trials} queries, 0 disagreements"),
        format!("{trials} queries, {bad} disagreements"),
        bad == 0,
    );
    Ok(())
}

fn gonality(run: &mut Run) -> Result<()> {
    let w = genus5_fiber()?;
    let h = w
        .curve
        .as_hyperelliptic()
        .ok_or_else(|| Error::SelfCheck("genus-5 fixture is hyperelliptic".into()))?;
    let g = h.genus();
    let x = w.divisor.degree() as usize;
    run.record(json!({"S": w.divisor.to_string(), "report": to_value(&w.report)}));
    run.check(
        "fiber-member",
        "member, x = 2 < g/2",
        format!("member {}, x = {x}, g = {g}", w.report.member),
        w.report.member && x == 2 && 2 * x < g,
    );
    let v = canonical_membership(h, &w.divisor)?;
    run.check(
        "low-degree-branch",
        "2x < g and h0(2S) > 1",
        format!("branch {:?}, h0(2S) = {}", v.branch, v.rr.h0_2s),
        v.branch == crate::terracini::RrBranch::LowDegree && v.rr.h0_2s > 1 && v.member && v.agrees(),
    );
    Ok(())
}

fn extension(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let trials = opts.trials(50);
    let hyper = split_hyperelliptic(7, &(1..=16).map(q).collect::<Vec<_>>(), FiberChoice::None)?;
    let rational = tangent_rational_curve(5, 6, &[q(0), q(1)])?;
    for (name, w) in [("canonical-g7", hyper), ("hyperplane-r5", rational)] {
        let mut failures = 0;
        for i in 0..trials {
            let seed = opts.seed.wrapping_add(i as u64);
            let e = extend_by_general_point(&w.curve, w.system, &w.divisor, seed)?;
            if !e.extended.member {
                failures += 1;
                run.counterexamples.push(json!({"fixture": name, "seed": seed, "S": w.divisor.to_string(), "point": e.point.to_string(), "report": to_value(&e.extended)}));
            }
        }
        run.record(json!({"S": w.divisor.to_string(), "fixture": name, "base": to_value(&w.report), "extensions": trials, "failures": failures}));
        run.check(
            name,
            format!("{trials} extensions, all members"),
            format!("{trials} extensions, {failures} failures"),
            failures == 0,
        );
    }
    Ok(())
}

fn total_flex(run: &mut Run) -> Result<()> {
    for (d, name) in [(4, "d4"), (6, "d6")] {
        let w = total_flex_plane_curve(d)?;
        let r = scheme_report(&w.curve, &w.divisor)?;
        run.record(json!({"S": w.divisor.to_string(), "d": d, "report": to_value(&r)}));
        run.check(
            name,
            "member_scheme, span_dim 1",
            format!("member_scheme {}, span_dim {}", r.member_scheme, r.span_dim),
            r.member_scheme && r.span_dim == 1,
        );
    }
    Ok(())
}

fn flex_weight(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let (x, y, z) = (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
    let total_flex = PlaneCurve::new(&(&x.pow(4) + &y.pow(4)) - &(&y * &z.pow(3)))?;
    let changes = opts.trials(3);
    for (name, c, expected) in [
        ("fermat-quartic", fermat(4), 24),
        ("total-flex-quartic", total_flex, 24),
        ("smooth-cubic", fermat(3), 9),
    ] {
        let mut weights = vec![flex_weight_total(&c, opts.seed)?.total];
        for k in 1..=changes as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(k));
            let moved = PlaneCurve::new(transform(c.equation(), &random_change(&mut rng)))?;
            weights.push(flex_weight_total(&moved, opts.seed.wrapping_add(k))?.total);
        }
        run.record(json!({"S": name, "weights": weights}));
        run.check(
            name,
            format!("{expected} under {changes} coordinate changes"),
            format!("{weights:?}"),
            weights.iter().all(|&w| w == expected),
        );
    }
    Ok(())
}

fn tangency(run: &mut Run) -> Result<()> {
    for (name, w, x) in [
        ("elliptic-quartic", tangent_elliptic_quartic()?, 2),
        ("nodal-union", tangent_nodal_union()?, 3),
    ] {
        run.record(json!({"S": w.divisor.to_string(), "fixture": name, "report": to_value(&w.report)}));
        run.check(
            name,
            format!("member at x = {x}"),
            format!("member {} at x = {}", w.report.member, w.report.x),
            w.report.member && w.report.x as usize == x,
        );
    }
    Ok(())
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect())
            .collect();
        let a = Matrix::from_rows(rows);
        if !a.determinant().is_zero() {
            return a;
        }
    }
}

/// `φ(a t + b)`.
pub fn reparametrize(c: &ParametricCurve, a: &Rational, b: &Rational) -> Result<ParametricCurve> {
    let inner = Poly::new(vec![b.clone(), a.clone()]);
    ParametricCurve::new(c.coords().iter().map(|p| p.compose(&inner)).collect())
}

fn infrastructure(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let trials = opts.trials(20);
    let w = tangent_rational_curve(4, 6, &[q(0), q(1)])?;
    let Curve::Parametric(c) = &w.curve else {
        return Err(Error::SelfCheck("tangent-rational curve is parametric".into()));
    };
    let curve: Curve = c.clone().into();
    let mut reparam_bad = 0;
    let mut proj_bad = 0;
    for i in 0..trials {
        let seed = opts.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = rng.gen_range(1..=3);
        let s = Divisor::reduced(Sampler::new(&curve, seed).take(x)?)?;
        let base = defect_report(&curve, LinearSystem::Hyperplane, &s)?.rank;

        let a = q(*[-3i64, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).expect("index"));
        let b = q(rng.gen_range(-5..=5));
        let moved: Curve = reparametrize(c, &a, &b)?.into();
        let pre: Vec<CurvePoint> = s
            .points()
            .map(|p| match p {
                CurvePoint::Param(ParamValue::Finite(t)) => CurvePoint::t((t - &b) / &a),
                other => other.clone(),
            })
            .collect();
        let r1 = defect_report(&moved, LinearSystem::Hyperplane, &Divisor::reduced(pre)?)?.rank;
        if r1 != base {
            reparam_bad += 1;
            run.counterexamples.push(json!({"check": "reparametrization", "seed": seed, "S": s.to_string()}));
        }

        let m = random_invertible(c.ambient() + 1, &mut rng);
        let image: Curve = c.transformed(&m)?.into();
        let r2 = defect_report(&image, LinearSystem::Hyperplane, &s)?.rank;
        if r2 != base {
            proj_bad += 1;
            run.counterexamples.push(json!({"check": "projective", "seed": seed, "S": s.to_string()}));
        }
        run.record(json!({"S": s.to_string(), "seed": seed, "rank": base, "reparametrized": r1, "projected": r2}));
    }
    run.check("reparametrization", format!("rank unchanged, {trials} seeds"), format!("{reparam_bad} mismatches"), reparam_bad == 0);
    run.check("projective", format!("rank unchanged, {trials} seeds"), format!("{proj_bad} mismatches"), proj_bad == 0);

    let lifts = opts.trials(50);
    let mut lift_bad = 0;
    for i in 0..lifts {
        let seed = opts.seed.wrapping_add(i as u64);
        let (f, u0, n) = random_lift_problem(seed);
        let u = implicit_lift(&f, &u0, n)?;
        let residual = f.eval_series(&[u, Series::variable_at(q(0), n)]);
        if !residual.is_zero() {
            lift_bad += 1;
            run.counterexamples.push(json!({"check": "lift-residual", "seed": seed}));
        }
    }
    run.check("lift-residual", format!("residual 0 mod t^N, {lifts} lifts"), format!("{lift_bad} nonzero residuals"), lift_bad == 0);

    let small = SuiteOptions {
        seed: opts.seed,
        trials: Some(3),
    };
    let a = serde_json::to_string(&self::run("witness-quartic", small)?).expect("serializes");
    let b = serde_json::to_string(&self::run("witness-quartic", small)?).expect("serializes");
    run.check("deterministic", "identical serialized reports", format!("{} bytes, equal {}", a.len(), a == b), a == b);
    Ok(())
}

/// A random `F(u, t)` with integer coefficients, a simple root `u0` of
/// `F(u, 0)` and a precision `n`.
pub fn random_lift_problem(seed: u64) -> (MPoly, Rational, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let u0 = q(rng.gen_range(-4..=4));
        let mut f = MPoly::zero(2);
        for i in 0..=3u32 {
            for j in 0..=3u32 {
                if i + j > 0 && i + j <= 4 {
                    let c = q(rng.gen_range(-5..=5));
                    f = &f + &MPoly::from_terms(2, [(vec![i, j], c)]);
                }
            }
        }
        let at = f.eval(&[u0.clone(), q(0)]);
        f = &f - &MPoly::constant(2, at);
        if !f.derivative(0).eval(&[u0.clone(), q(0)]).is_zero() {
            return (f, u0, rng.gen_range(4..=12));
        }
    }
}

fn bitangent(run: &mut Run, opts: SuiteOptions) -> Result<()> {
    let trials = opts.trials(2);
    let planted = bitangent_search(&planted_bitangent_quartic(), trials, opts.seed)?;
    let p = ProjectivePoint::new(vec![q(1), q(0), q(1)])?;
    let m = ProjectivePoint::new(vec![q(-1), q(0), q(1)])?;
    let line = ProjectivePoint::new(vec![q(0), q(1), q(0)])?;
    for pair in &planted.pairs {
        run.record(json!({"S": format!("{}, {}", pair.p, pair.q), "line": pair.line.to_string(), "report": to_value(&pair.report)}));
    }
    let found = planted
        .pairs
        .iter()
        .any(|b| ((b.p == p && b.q == m) || (b.p == m && b.q == p)) && b.line == line);
    run.check(
        "planted-pair",
        "(1:0:1), (-1:0:1) on y = 0",
        format!("{} exact pairs, {} hints, planted found {found}", planted.pairs.len(), planted.hints.len()),
        found,
    );
    let w = total_flex_plane_curve(4)?;
    let Curve::Plane(c) = &w.curve else {
        return Err(Error::SelfCheck("total-flex curve is planar".into()));
    };
    let tf = bitangent_search(c, trials, opts.seed)?;
    let origin = ProjectivePoint::new(vec![q(0), q(0), q(1)])?;
    let flex = tf.hyperflexes.iter().any(|h| h.p == origin && h.line == line);
    for h in &tf.hyperflexes {
        run.record(json!({"S": format!("2 {}", h.p), "line": h.line.to_string(), "report": to_value(&h.report)}));
    }
    run.check(
        "hyperflex",
        "(0:0:1) on y = 0",
        format!("{} hyperflexes, {} pairs, origin found {flex}", tf.hyperflexes.len(), tf.pairs.len()),
        flex,
    );
    let (x, y, z) = (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2));
    let conic = PlaneCurve::new(&(&x * &z) - &y.pow(2))?;
    let cf = bitangent_search(&conic, trials, opts.seed)?;
    run.check("conic", "no findings", format!("empty {}", cf.is_empty()), cf.is_empty());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_names_are_unique_and_exact() {
        let m = manifest();
        let mut names: Vec<_> = m.iter().map(|s| s.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), m.len());
        assert!(m.iter().all(|s| s.tolerance == "exact"));
    }

    #[test]
    fn checks_match_manifest() {
        let quick = SuiteOptions {
            seed: 3,
            trials: Some(2),
        };
        for s in manifest() {
            let r = run(s.name, quick).unwrap();
            let got: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
            let want: Vec<_> = s.checks.iter().map(|c| c.name).collect();
            assert_eq!(got, want, "suite {}", s.name);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", SuiteOptions::default()).is_err());
    }

    #[test]
    fn lift_problems_are_regular() {
        for seed in 0..10 {
            let (f, u0, _) = random_lift_problem(seed);
            assert!(f.eval(&[u0.clone(), q(0)]).is_zero());
        }
    }
}
