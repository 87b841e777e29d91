use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qlinalg::rational::rational_sqrt;
use crate::qlinalg::{fmt_rational, Poly, Rational};

/// A point of P^r, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::PointNotOnCurve(
                "all homogeneous coordinates are zero".into(),
            ));
        };
        let inv = first.recip();
        Ok(ProjectivePoint {
            coords: coords.into_iter().map(|c| c * &inv).collect(),
        })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Index of the first nonzero coordinate (which equals 1).
    pub fn chart(&self) -> usize {
        self.coords
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized point has a nonzero coordinate")
    }

    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParamValue {
    Finite(Rational),
    Infinity,
}

/// The y-coordinate of an affine point of `y^2 = f(x)`. When `f(x)` is a
/// square in Q the value is rational; otherwise the point is one of the two
/// conjugate points `(x, ±√f(x))`, identified by its sign. Jets never need
/// the value itself, only whether the point is a Weierstrass point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ordinate {
    Rational(Rational),
    Surd { positive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperPoint {
    pub x: Rational,
    pub y: Ordinate,
}

impl HyperPoint {
    /// The point above `x` on the branch selected by `positive`; the
    /// ordinate is stored as a rational whenever `f(x)` is a square.
    pub fn above(f: &Poly, x: Rational, positive: bool) -> HyperPoint {
        let v = f.eval(&x);
        let y = match rational_sqrt(&v) {
            Some(r) if positive => Ordinate::Rational(r),
            Some(r) => Ordinate::Rational(-r),
            None => Ordinate::Surd { positive },
        };
        HyperPoint { x, y }
    }

    pub fn rational(x: Rational, y: Rational) -> HyperPoint {
        HyperPoint {
            x,
            y: Ordinate::Rational(y),
        }
    }

    pub fn is_weierstrass(&self) -> bool {
        matches!(&self.y, Ordinate::Rational(y) if y.is_zero())
    }

    /// The other point of the fiber of the hyperelliptic double cover.
    pub fn conjugate(&self) -> HyperPoint {
        let y = match &self.y {
            Ordinate::Rational(y) => Ordinate::Rational(-y),
            Ordinate::Surd { positive } => Ordinate::Surd {
                positive: !positive,
            },
        };
        HyperPoint {
            x: self.x.clone(),
            y,
        }
    }

    pub fn check(&self, f: &Poly) -> Result<()> {
        let v = f.eval(&self.x);
        let ok = match &self.y {
            Ordinate::Rational(y) => y * y == v,
            Ordinate::Surd { .. } => rational_sqrt(&v).is_none(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PointNotOnCurve(format!("{self} with f(x) = {}", fmt_rational(&v))))
        }
    }
}

impl fmt::Display for HyperPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.y {
            Ordinate::Rational(y) => write!(f, "({}, {})", fmt_rational(&self.x), fmt_rational(y)),
            Ordinate::Surd { positive } => write!(
                f,
                "({}, {}sqrt(f({})))",
                fmt_rational(&self.x),
                if *positive { "+" } else { "-" },
                fmt_rational(&self.x)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Param(ParamValue),
    Plane(ProjectivePoint),
    Hyper(HyperPoint),
    Space(ProjectivePoint),
    /// A point on one component of a nodal union.
    OnComponent {
        component: usize,
        point: Box<CurvePoint>,
    },
}

impl CurvePoint {
    pub fn t(v: Rational) -> Self {
        CurvePoint::Param(ParamValue::Finite(v))
    }

    pub fn t_int(v: i64) -> Self {
        CurvePoint::t(crate::qlinalg::q(v))
    }

    pub fn infinity() -> Self {
        CurvePoint::Param(ParamValue::Infinity)
    }

    pub fn plane(coords: Vec<Rational>) -> Result<Self> {
        Ok(CurvePoint::Plane(ProjectivePoint::new(coords)?))
    }

    pub fn space(coords: Vec<Rational>) -> Result<Self> {
        Ok(CurvePoint::Space(ProjectivePoint::new(coords)?))
    }

    pub fn on_component(component: usize, point: CurvePoint) -> Self {
        CurvePoint::OnComponent {
            component,
            point: Box::new(point),
        }
    }

    pub fn as_hyper(&self) -> Option<&HyperPoint> {
        match self {
            CurvePoint::Hyper(h) => Some(h),
            _ => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Param(ParamValue::Finite(t)) => write!(f, "t={}", fmt_rational(t)),
            CurvePoint::Param(ParamValue::Infinity) => write!(f, "t=inf"),
            CurvePoint::Plane(p) | CurvePoint::Space(p) => write!(f, "{p}"),
            CurvePoint::Hyper(h) => write!(f, "{h}"),
            CurvePoint::OnComponent { component, point } => write!(f, "{component}@{point}"),
        }
    }
}

/// Serialized form used in reports: the display string is unambiguous and
/// exact.
impl Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
