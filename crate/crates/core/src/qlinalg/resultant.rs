//! Elimination of one variable from a pair of bivariate polynomials.

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::poly::Poly;
use super::rational::{q, Rational};
use crate::error::{Error, Result};

/// `Res_y(f, g)` as a polynomial in `x`, for `f, g ∈ Q[x, y]` (x is
/// variable 0, y is variable 1). Both inputs must have constant leading
/// coefficients in `y`, so that the resultant commutes with specializing
/// `x`; it is then recovered by evaluation at `deg f · deg g + 1` points and
/// Newton interpolation. Uses the Sylvester convention of [`Poly::resultant`].
pub fn resultant_y(f: &MPoly, g: &MPoly) -> Result<Poly> {
    assert!(f.nvars() == 2 && g.nvars() == 2, "resultant_y expects bivariate input");
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lead_is_constant = |p: &MPoly| {
        let cs = p.coefficients_in(1);
        cs.last().is_some_and(|c| c.is_constant() && !c.is_zero())
    };
    if !lead_is_constant(f) || !lead_is_constant(g) {
        return Err(Error::PreconditionNotMet(
            "leading coefficients in y must be nonzero constants".into(),
        ));
    }
    let bound = (f.total_degree().unwrap() * g.total_degree().unwrap()) as usize;
    let xs: Vec<Rational> = (0..=bound as i64).map(q).collect();
    let mut ys = Vec::with_capacity(xs.len());
    for x in &xs {
        let fx = specialize_x(f, x);
        let gx = specialize_x(g, x);
        ys.push(fx.resultant(&gx)?);
    }
    Ok(interpolate(&xs, &ys))
}

fn specialize_x(p: &MPoly, x: &Rational) -> Poly {
    let sub = p.substitute(&[MPoly::constant(1, x.clone()), MPoly::var(1, 0)]);
    sub.to_univariate(0).expect("univariate after specialization")
}

/// Newton divided-difference interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
    assert_eq!(xs.len(), ys.len(), "interpolation data mismatch");
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = Poly::zero();
    let mut basis = Poly::one();
    for i in 0..n {
        if !dd[i].is_zero() {
            out = &out + &basis.scale(&dd[i]);
        }
        basis = &basis * &Poly::new(vec![-xs[i].clone(), Rational::one()]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_cubic() {
        let p = Poly::from_i64(&[1, -2, 0, 3]);
        let xs: Vec<Rational> = (0..6).map(q).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), p);
    }

    #[test]
    fn circle_and_line() {
        // y^2 + x^2 - 1 and y - x: Res_y = 2x^2 - 1 up to the Sylvester sign
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let circle = &(&y.pow(2) + &x.pow(2)) - &MPoly::one(2);
        let line = &y - &x;
        let r = resultant_y(&circle, &line).unwrap();
        assert_eq!(r.degree(), Some(2));
        assert!(r.eval(&q(1)) != Rational::zero());
        assert_eq!(r.monic(), Poly::new(vec![Rational::new((-1).into(), 2.into()), q(0), q(1)]));
    }

    #[test]
    fn non_monic_leading_coefficient_is_rejected() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = &x * &y;
        assert!(resultant_y(&f, &y).is_err());
    }
}
