//! Root finding: exact rational roots and floating-point hints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::{to_f64, Rational};

/// Largest |coefficient| whose divisors we are willing to enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT || n == 0 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots, ascending. Uses the rational root theorem on the
/// primitive integer model; returns `None` if the extreme coefficients are
/// too large to factor by trial division.
pub fn rational_roots(p: &Poly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return None;
    }
    // integer model
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    // strip the root at zero
    let lead_zero = ints.iter().take_while(|c| c.is_zero()).count();
    if lead_zero > 0 {
        roots.push(Rational::zero());
        ints.drain(..lead_zero);
    }
    if ints.len() > 1 {
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        let reduced = Poly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
        for num in divisors(&a0)? {
            for den in divisors(&an)? {
                if num.gcd(&den) != 1 {
                    continue;
                }
                for sgn in [1i64, -1] {
                    let r = Rational::new(BigInt::from(num) * sgn, BigInt::from(den));
                    if reduced.eval(&r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Approximate real roots in `[lo, hi]` found by sign changes on a uniform
/// grid followed by bisection, plus near-zero grid points for even-order
/// roots. These are search hints, never verdicts.
pub fn real_root_hints(p: &Poly, lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if p.is_zero() || steps == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1e-300);
    let h = (hi - lo) / steps as f64;
    let mut out: Vec<f64> = Vec::new();
    let mut prev_x = lo;
    let mut prev_v = eval(lo);
    for k in 1..=steps {
        let x = lo + h * k as f64;
        let v = eval(x);
        if prev_v == 0.0 {
            out.push(prev_x);
        } else if prev_v.signum() != v.signum() && v != 0.0 {
            let (mut a, mut b, mut fa) = (prev_x, x, prev_v);
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                let fm = eval(m);
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        } else if v.abs() < 1e-9 * scale {
            out.push(x);
        }
        prev_x = x;
        prev_v = v;
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out
}

#[cfg(test)]
mod tests {
    use super::super::rational::{q, qf};
    use super::*;

    #[test]
    fn finds_all_rational_roots() {
        let p = Poly::from_roots(&[qf(1, 2), q(-3), q(0), q(0)]);
        let p = &p * &Poly::from_i64(&[2, 0, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![q(-3), q(0), qf(1, 2)]);
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        assert!(rational_roots(&Poly::from_i64(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn float_hints_bracket_roots() {
        let hints = real_root_hints(&Poly::from_i64(&[-2, 0, 1]), -3.0, 3.0, 600);
        assert_eq!(hints.len(), 2);
        assert!((hints[1] - 2f64.sqrt()).abs() < 1e-9);
    }
}
