//! Sparse multivariate polynomials over Q with a fixed number of variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{fmt_rational, q, to_f64, Rational};
use super::series::Series;

/// Exponent vector to coefficient. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    /// Embeds a univariate polynomial as a polynomial in variable `i`.
    pub fn from_univariate(p: &Poly, nvars: usize, i: usize) -> Self {
        Self::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c.clone())
            }),
        )
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|k| k == d),
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        (0..k).fold(MPoly::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * q(e[i] as i64))
            }),
        )
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation arity mismatch");
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e
                .iter()
                .zip(point)
                .fold(Rational::one(), |m, (&k, x)| m * num_traits::pow(x.clone(), k as usize));
            acc + c * mono
        })
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                to_f64(c)
                    * e.iter()
                        .zip(point)
                        .map(|(&k, x)| x.powi(k as i32))
                        .product::<f64>()
            })
            .sum()
    }

    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Replaces variable `k` by `subs[k]`; all substitutes share one arity,
    /// which becomes the arity of the result.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "substitution arity mismatch");
        let target = subs.first().map_or(0, MPoly::nvars);
        let mut cache: Vec<Vec<MPoly>> = subs.iter().map(|s| vec![MPoly::one(s.nvars)]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut mono = MPoly::constant(target, c.clone());
            for (k, &p) in e.iter().enumerate() {
                while cache[k].len() <= p as usize {
                    let next = cache[k].last().unwrap() * &subs[k];
                    cache[k].push(next);
                }
                mono = &mono * &cache[k][p as usize];
            }
            out = &out + &mono;
        }
        out
    }

    /// Evaluates at truncated power series (all of one precision).
    pub fn eval_series(&self, args: &[Series]) -> Series {
        assert_eq!(args.len(), self.nvars, "series evaluation arity mismatch");
        let n = args.iter().map(Series::precision).min().expect("at least one argument");
        let mut cache: Vec<Vec<Series>> = args.iter().map(|_| vec![Series::one(n)]).collect();
        let mut out = Series::zero(n);
        for (e, c) in &self.terms {
            let mut mono = Series::constant(c.clone(), n);
            for (k, &p) in e.iter().enumerate() {
                while cache[k].len() <= p as usize {
                    let next = cache[k].last().unwrap().mul(&args[k]);
                    cache[k].push(next);
                }
                mono = mono.mul(&cache[k][p as usize]);
            }
            out = out.add(&mono);
        }
        out
    }

    /// Coefficients of powers of variable `i`: `self = Σ_k c_k · x_i^k`,
    /// where no `c_k` involves `x_i`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MPoly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Converts a polynomial that only involves variable `i` to a `Poly`.
    pub fn to_univariate(&self, i: usize) -> Option<Poly> {
        let deg = self.degree_in(i).unwrap_or(0) as usize;
        let mut v = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(k, &p)| k != i && p > 0) {
                return None;
            }
            v[e[i] as usize] = c.clone();
        }
        Some(Poly::new(v))
    }

    /// Divides by `x_i - g`, where `g` does not involve `x_i`. Returns
    /// quotient and remainder (the remainder is `self` with `x_i := g`).
    pub fn div_rem_linear(&self, i: usize, g: &MPoly) -> (MPoly, MPoly) {
        let coeffs = self.coefficients_in(i);
        let xi = MPoly::var(self.nvars, i);
        let n = coeffs.len();
        if n <= 1 {
            return (MPoly::zero(self.nvars), self.clone());
        }
        // synthetic division, highest coefficient first
        let mut b = vec![MPoly::zero(self.nvars); n - 1];
        b[n - 2] = coeffs[n - 1].clone();
        for k in (0..n - 2).rev() {
            b[k] = &coeffs[k + 1] + &(g * &b[k + 1]);
        }
        let rem = &coeffs[0] + &(g * &b[0]);
        let quot = b
            .iter()
            .enumerate()
            .fold(MPoly::zero(self.nvars), |acc, (k, bk)| &acc + &(bk * &xi.pow(k as u32)));
        (quot, rem)
    }

    /// Renders with the supplied variable names.
    pub fn to_string_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(names[k].to_string()),
                    _ => factors.push(format!("{}^{}", names[k], p)),
                }
            }
            let cs = fmt_rational(c);
            let cs = if cs.contains('/') || cs.starts_with('-') {
                format!("({cs})")
            } else {
                cs
            };
            if factors.is_empty() {
                parts.push(cs);
            } else if c.is_one() {
                parts.push(factors.join("*"));
            } else {
                parts.push(format!("{cs}*{}", factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl Add for &MPoly {
    type Output = MPoly;

    fn add(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in add");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;

    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;

    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;

    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch in mul");
        let mut acc: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "MPoly({})", self.to_string_with(&refs))
    }
}

/// Determinant of a square matrix of polynomials (cofactor expansion along
/// the first row; intended for small sizes).
pub fn determinant(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    match n {
        0 => MPoly::one(nvars),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MPoly::zero(nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, nvars);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (MPoly, MPoly) {
        (MPoly::var(2, 0), MPoly::var(2, 1))
    }

    #[test]
    fn add_cancels_terms() {
        let (x, y) = xy();
        let p = &(&x + &y) - &x;
        assert_eq!(p, y);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let (x, y) = xy();
        let p = &(&x.pow(3) * &y) + &y.pow(2);
        assert_eq!(p.derivative(0), &x.pow(2).scale(&q(3)) * &y);
        assert_eq!(p.eval(&[q(2), q(3)]), q(24 + 9));
        assert_eq!(p.total_degree(), Some(4));
        assert!(!p.is_homogeneous());
    }

    #[test]
    fn substitution_composes() {
        let (x, y) = xy();
        let p = &x.pow(2) - &y;
        // x := x + y, y := x*y
        let s = p.substitute(&[&x + &y, &x * &y]);
        let expected = &(&x.pow(2) + &y.pow(2)) + &(&x * &y);
        assert_eq!(s, expected);
    }

    #[test]
    fn linear_division_by_diagonal() {
        let (s, t) = xy();
        let p = &(&s - &t).pow(3) * &(&s + &t);
        let (quot, rem) = p.div_rem_linear(0, &t);
        assert!(rem.is_zero());
        assert_eq!(quot, &(&s - &t).pow(2) * &(&s + &t));
        let (_, rem) = (&s + &t).div_rem_linear(0, &t);
        assert_eq!(rem, t.scale(&q(2)));
    }

    #[test]
    fn small_determinant() {
        let (x, y) = xy();
        let m = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        assert_eq!(determinant(&m, 2), &x.pow(2) - &y.pow(2));
    }
}
