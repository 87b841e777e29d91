//! Truncated power series `Σ_{i<N} a_i t^i` over Q.
//!
//! Binary operations truncate to the smaller precision of their operands, so
//! a result never claims more correct terms than its inputs carry.

use std::fmt;

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::poly::Poly;
use super::rational::{fmt_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Panics if `coeffs` is empty (precision must be at least one).
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series precision must be at least 1");
        Series { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[0] = c;
        s
    }

    /// `a + t` truncated to `n` terms.
    pub fn variable_at(a: Rational, n: usize) -> Self {
        let mut s = Self::constant(a, n);
        if n > 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &Poly, n: usize) -> Self {
        Self::new((0..n).map(|i| p.coeff(i)).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, n: usize) -> Series {
        assert!(n >= 1 && n <= self.precision(), "cannot extend precision by truncation");
        Series::new(self.coeffs[..n].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any within precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.precision().min(other.precision());
        Series::new((0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &Series) -> Series {
        let n = self.precision().min(other.precision());
        Series::new((0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect())
    }

    pub fn neg(&self) -> Series {
        Series::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.precision().min(other.precision());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series::new(out)
    }

    pub fn pow(&self, k: u32) -> Series {
        (0..k).fold(Series::one(self.precision()), |acc, _| acc.mul(self))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let n = self.precision();
        let inv0 = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let s = (1..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &b[k - i]);
            b.push(-s * &inv0);
        }
        Ok(Series::new(b))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `p(self)` for a univariate polynomial `p`.
    pub fn compose_poly(p: &Poly, inner: &Series) -> Series {
        let n = inner.precision();
        p.coeffs()
            .iter()
            .rev()
            .fold(Series::zero(n), |acc, c| acc.mul(inner).add(&Series::constant(c.clone(), n)))
    }

    /// `self(inner(t))` where `inner(0) = 0`.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonUnit);
        }
        let n = self.precision().min(inner.precision());
        let mut out = Series::zero(n);
        let mut power = Series::one(n);
        for c in self.coeffs.iter().take(n) {
            out = out.add(&power.scale(c));
            power = power.mul(inner);
        }
        Ok(out)
    }

    pub fn derivative(&self) -> Series {
        let n = self.precision();
        if n == 1 {
            return Series::zero(1);
        }
        Series::new(
            (1..n)
                .map(|i| &self.coeffs[i] * Rational::from_integer(i.into()))
                .collect(),
        )
    }
}

/// Solves `F(u(t), t) ≡ 0 mod t^n` with `u(0) = u0` by Newton iteration on
/// truncated series. `f` has two variables, `u` first and `t` second.
pub fn implicit_lift(f: &MPoly, u0: &Rational, n: usize) -> Result<Series> {
    assert_eq!(f.nvars(), 2, "implicit_lift expects F(u, t)");
    assert!(n >= 1, "series precision must be at least 1");
    let base = [u0.clone(), Rational::zero()];
    let value = f.eval(&base);
    if !value.is_zero() {
        return Err(Error::NotARoot(fmt_rational(&value)));
    }
    let fu = f.derivative(0);
    if fu.eval(&base).is_zero() {
        return Err(Error::NonRegularPoint);
    }
    let t = Series::variable_at(Rational::zero(), n);
    let mut u = Series::constant(u0.clone(), n);
    // each step doubles the number of correct coefficients
    let mut correct = 1;
    while correct < n {
        correct = (2 * correct).min(n);
        let residual = f.eval_series(&[u.clone(), t.clone()]);
        let slope = fu.eval_series(&[u.clone(), t.clone()]);
        u = u.sub(&residual.div(&slope)?);
    }
    debug_assert!(f.eval_series(&[u.clone(), t]).is_zero());
    Ok(u)
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        write!(f, "Series[{}; O(t^{})]", terms.join(", "), self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::{q, qf};
    use super::*;

    fn s(v: &[Rational]) -> Series {
        Series::new(v.to_vec())
    }

    fn ut() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    #[test]
    fn product_and_inverse() {
        let a = s(&[q(1), q(1), q(0)]);
        let b = s(&[q(1), q(-1), q(0)]);
        assert_eq!(a.mul(&b), s(&[q(1), q(0), q(-1)]));
        assert_eq!(a.inverse().unwrap(), s(&[q(1), q(-1), q(1)]));
        assert_eq!(Series::variable_at(q(0), 3).inverse(), Err(Error::NonUnit));
    }

    #[test]
    fn compose_polynomial_with_series() {
        let p = Poly::t().pow(2);
        let u = Series::variable_at(q(1), 2);
        assert_eq!(Series::compose_poly(&p, &u), s(&[q(1), q(2)]));
    }

    #[test]
    fn mixed_precision_truncates() {
        let a = Series::one(5);
        let b = Series::one(2);
        assert_eq!(a.mul(&b).precision(), 2);
        assert_eq!(a.add(&b).precision(), 2);
    }

    #[test]
    fn lift_identity() {
        let (u, t) = ut();
        let lifted = implicit_lift(&(&u - &t), &q(0), 4).unwrap();
        assert_eq!(lifted, s(&[q(0), q(1), q(0), q(0)]));
    }

    #[test]
    fn lift_square_root() {
        // u^2 = 1 + t  =>  u = 1 + t/2 - t^2/8
        let (u, t) = ut();
        let f = &(&u.pow(2) - &MPoly::one(2)) - &t;
        let lifted = implicit_lift(&f, &q(1), 3).unwrap();
        assert_eq!(lifted, s(&[q(1), qf(1, 2), qf(-1, 8)]));
    }

    #[test]
    fn lift_weierstrass_chart() {
        // f(u) - t^2 with f = ∏(u - i), i = 1..8, at u = 1: u = 1 + t^2/f'(1) + O(t^3)
        let roots: Vec<Rational> = (1..=8).map(q).collect();
        let fp = Poly::from_roots(&roots);
        let (_, t) = ut();
        let f = &MPoly::from_univariate(&fp, 2, 0) - &t.pow(2);
        let lifted = implicit_lift(&f, &q(1), 3).unwrap();
        let d1 = fp.derivative().eval(&q(1));
        assert_eq!(d1, q(-5040));
        assert_eq!(lifted, s(&[q(1), q(0), d1.recip()]));
    }

    #[test]
    fn lift_errors() {
        let (u, t) = ut();
        assert_eq!(implicit_lift(&(&u.pow(2) - &t), &q(0), 3), Err(Error::NonRegularPoint));
        assert!(matches!(implicit_lift(&(&u - &t), &q(1), 3), Err(Error::NotARoot(_))));
    }

    #[test]
    fn compose_with_nilpotent() {
        // 1/(1-t) composed with t + t^2
        let geo = Series::new(vec![q(1); 4]);
        let inner = s(&[q(0), q(1), q(1), q(0)]);
        let c = geo.compose(&inner).unwrap();
        // 1 + (t+t^2) + (t+t^2)^2 + (t+t^2)^3 = 1 + t + 2t^2 + 3t^3 + ...
        assert_eq!(c, s(&[q(1), q(1), q(2), q(3)]));
    }
}
