//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! Each criterion runs its named suite at the default seed and trial counts
//! and then re-derives the headline numbers directly.

use std::process::ExitCode;
use std::time::Instant;

use terracini_core::curvekit::{CurvePoint, Divisor, LinearSystem};
use terracini_core::suites::{self, genus3, SuiteOptions, SuiteReport};
use terracini_core::terracini::{defect_report, scheme_report};
use terracini_core::witness::{
    genus5_fiber, tangent_elliptic_quartic, tangent_nodal_union, total_flex_plane_curve,
    witness_quartic,
};
use terracini_core::searchlab::{coplanar_tangent_locus, weierstrass_subset_suite, SubsetCaps};

type Outcome = Result<(), String>;

fn suite(name: &str) -> Result<SuiteReport, String> {
    let r = suites::run(name, SuiteOptions::default()).map_err(|e| format!("{name}: {e}"))?;
    if r.passed {
        Ok(r)
    } else {
        let failed: Vec<String> = r
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: expected {}, observed {}", c.name, c.expected, c.observed))
            .collect();
        Err(failed.join("; "))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c1() -> Outcome {
    suite("rnc-emptiness")?;
    let l = coplanar_tangent_locus(&suites::rational_normal_curve(3)).map_err(|e| e.to_string())?;
    ensure(l.constant, format!("Dred = {}", l.dred_text))
}

fn c2() -> Outcome {
    suite("witness-quartic")?;
    let w = witness_quartic().map_err(|e| e.to_string())?;
    let r = defect_report(&w.curve, LinearSystem::Hyperplane, &w.divisor).map_err(|e| e.to_string())?;
    let expected = Divisor::reduced(vec![CurvePoint::t_int(0), CurvePoint::t_int(1)]).map_err(|e| e.to_string())?;
    ensure(w.divisor == expected, format!("divisor {}", w.divisor))?;
    ensure(
        (r.rank, r.defect, r.member) == (3, 1, true),
        format!("rank {}, defect {}, member {}", r.rank, r.defect, r.member),
    )
}

fn c3() -> Outcome {
    suite("hyperelliptic-g3")?;
    let h = genus3();
    let t = weierstrass_subset_suite(&h, 2, SubsetCaps::default(), None).map_err(|e| e.to_string())?;
    let g = h.genus();
    ensure(t.count == binomial(8, 2), format!("{} pairs", t.count))?;
    ensure(t.count == (1 << (g - 1)) * ((1 << g) - 1), "odd theta count")?;
    ensure(t.all_members() && t.rows.iter().all(|r| r.actual_h0 == 1), "pair membership")
}

fn c4() -> Outcome {
    suite("oracle").map(|_| ())
}

fn c5() -> Outcome {
    suite("riemann-roch").map(|_| ())
}

fn c6() -> Outcome {
    suite("gonality-g5")?;
    let w = genus5_fiber().map_err(|e| e.to_string())?;
    let g = w.curve.genus().unwrap_or(0);
    ensure(g == 5 && 2 * w.divisor.len() < g && w.report.member, "genus-5 fiber pair")
}

fn c7() -> Outcome {
    suite("extension").map(|_| ())
}

fn c8() -> Outcome {
    suite("total-flex")?;
    for d in [4, 6] {
        let w = total_flex_plane_curve(d).map_err(|e| e.to_string())?;
        let r = scheme_report(&w.curve, &w.divisor).map_err(|e| e.to_string())?;
        ensure(r.member_scheme && r.span_dim == 1, format!("d = {d}: {r:?}"))?;
    }
    Ok(())
}

fn c9() -> Outcome {
    let r = suite("flex-weight")?;
    // 3d(d - 2)
    for (name, d) in [("fermat-quartic", 4), ("total-flex-quartic", 4), ("smooth-cubic", 3)] {
        let expected = 3 * d * (d - 2);
        let c = r.checks.iter().find(|c| c.name == name).ok_or("missing check")?;
        ensure(c.expected.starts_with(&expected.to_string()), format!("{name}: {}", c.expected))?;
    }
    Ok(())
}

fn c10() -> Outcome {
    suite("tangency")?;
    let e = tangent_elliptic_quartic().map_err(|e| e.to_string())?;
    let n = tangent_nodal_union().map_err(|e| e.to_string())?;
    ensure(e.report.member && e.report.x == 2, "elliptic quartic")?;
    ensure(n.report.member && n.report.x == 3, "nodal union")
}

fn c11() -> Outcome {
    suite("infrastructure")?;
    let a = serde_json::to_string(&suites::run("rnc-emptiness", SuiteOptions::default()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let b = serde_json::to_string(&suites::run("rnc-emptiness", SuiteOptions::default()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(a == b, "repeated runs differ")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rational normal curves: random sets have defect 0, Dred constant", c1),
        ("witness quartic: S = {0, 1} has rank 3, defect 1, member", c2),
        ("genus 3: 28 Weierstrass pairs, 8 singletons, no member at x >= g", c3),
        ("oracle agreement on Weierstrass subsets, fiber-pair exception flagged", c4),
        ("Riemann-Roch dichotomy agrees on 500 queries", c5),
        ("genus 5: rational fiber pair is a member at x = 2", c6),
        ("extensions of members stay members (canonical g = 7, hyperplane r = 5)", c7),
        ("total flex: (d/2) p is a scheme member with span_dim 1, d = 4, 6", c8),
        ("flex weights 24, 24, 9 under coordinate changes", c9),
        ("tangency fixtures: elliptic quartic x = 2, nodal union x = 3", c10),
        ("invariance, lifting residuals and deterministic reports", c11),
    ];
    let mut failures = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {label} ({secs:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {label} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
