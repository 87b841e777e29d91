//! Dense univariate polynomials over Q, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::rational::{fmt_rational, q, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Trailing zero coefficients are stripped.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// `∏ (t - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), Rational::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// `self(t + a)`.
    pub fn shift(&self, a: &Rational) -> Poly {
        self.compose(&Poly::new(vec![a.clone(), Rational::one()]))
    }

    /// `t^deg · self(1/t)` for a chosen `deg ≥ degree`.
    pub fn reversed(&self, deg: usize) -> Poly {
        let mut v = vec![Rational::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        Poly::new(v)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = divisor.leading().recip();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when `gcd(p, p')` is constant. The zero polynomial is not squarefree.
    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Multiplicity of `a` as a root (0 when `p(a) ≠ 0`). Panics on zero.
    pub fn root_multiplicity(&self, a: &Rational) -> usize {
        assert!(!self.is_zero(), "root multiplicity of the zero polynomial");
        let lin = Poly::new(vec![-a.clone(), Rational::one()]);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (quot, rem) = p.div_rem(&lin).expect("nonzero divisor");
            if !rem.is_zero() {
                return m;
            }
            p = quot;
            m += 1;
        }
    }

    /// Resultant as the determinant of the Sylvester matrix whose first
    /// `deg q` rows carry the coefficients of `p` (highest first). With this
    /// layout `Res(p, q) = lc(p)^deg(q) · ∏ q(α)` over the roots `α` of `p`.
    pub fn resultant(&self, other: &Poly) -> Result<Rational> {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return Err(Error::ZeroPolynomial);
        };
        if m + n == 0 {
            return Ok(Rational::one());
        }
        let size = m + n;
        let mut syl = Matrix::zeros(size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                syl[(i, i + j)] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                syl[(n + i, i + j)] = c.clone();
            }
        }
        Ok(syl.determinant())
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = fmt_rational(c);
            let cs = if cs.contains('/') || cs.starts_with('-') {
                format!("({cs})")
            } else {
                cs
            };
            match i {
                0 => write!(f, "{cs}")?,
                1 => write!(f, "{cs}*t")?,
                _ => write!(f, "{cs}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::qf;
    use super::*;

    fn roots_1_to(n: i64) -> Poly {
        Poly::from_roots(&(1..=n).map(q).collect::<Vec<_>>())
    }

    #[test]
    fn derivative_of_square() {
        assert_eq!(Poly::t().pow(2).derivative(), Poly::from_i64(&[0, 2]));
    }

    #[test]
    fn gcd_picks_common_factor() {
        let a = Poly::from_i64(&[-1, 0, 1]);
        let b = Poly::from_i64(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn squarefree_products() {
        assert!(roots_1_to(8).is_squarefree());
        let doubled = &roots_1_to(3) * &Poly::from_i64(&[-2, 1]);
        assert!(!doubled.is_squarefree());
        assert!(!Poly::zero().is_squarefree());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(Poly::t().resultant(&Poly::t()).unwrap(), q(0));
        // lc(p)^1 · q(1) q(-1) = (-1)(-3)
        let p = Poly::from_i64(&[-1, 0, 1]);
        let r = p.resultant(&Poly::from_i64(&[-2, 1])).unwrap();
        assert_eq!(r, q(3));
        let (a, b) = (qf(2, 3), q(5));
        let ta = Poly::new(vec![-a.clone(), q(1)]);
        let tb = Poly::new(vec![-b.clone(), q(1)]);
        assert_eq!(ta.resultant(&tb).unwrap(), &a - &b);
        assert_eq!(Poly::zero().resultant(&ta), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn constant_resultants() {
        let c = Poly::constant(q(3));
        let p = Poly::from_i64(&[1, 1, 1]);
        assert_eq!(c.resultant(&p).unwrap(), q(9));
        assert_eq!(c.resultant(&c).unwrap(), q(1));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = roots_1_to(5);
        let b = Poly::from_i64(&[3, 0, 2]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(&(&quot * &b) + &rem, a);
        assert!(rem.degree().unwrap() < 2);
    }

    #[test]
    fn root_multiplicity_counts() {
        let p = &Poly::from_i64(&[-1, 1]).pow(3) * &Poly::from_i64(&[2, 1]);
        assert_eq!(p.root_multiplicity(&q(1)), 3);
        assert_eq!(p.root_multiplicity(&q(-2)), 1);
        assert_eq!(p.root_multiplicity(&q(0)), 0);
    }

    #[test]
    fn shift_and_reverse() {
        let p = Poly::from_i64(&[0, 0, 1]);
        assert_eq!(p.shift(&q(1)), Poly::from_i64(&[1, 2, 1]));
        assert_eq!(Poly::from_i64(&[1, 2]).reversed(3), Poly::from_i64(&[0, 0, 2, 1]));
    }
}
