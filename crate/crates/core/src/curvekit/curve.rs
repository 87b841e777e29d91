//! The five curve models and their validated constructors.

use num_traits::Zero;

use super::point::CurvePoint;
use crate::error::{Error, Result};
use crate::qlinalg::roots::rational_roots;
use crate::qlinalg::{MPoly, Matrix, Poly, Rational};

/// `t ↦ (φ_0(t) : … : φ_r(t))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricCurve {
    coords: Vec<Poly>,
    degree: usize,
}

impl ParametricCurve {
    pub fn new(coords: Vec<Poly>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::AmbientMismatch(format!(
                "a parametrized curve needs at least 3 coordinates, got {}",
                coords.len()
            )));
        }
        let degree = coords.iter().filter_map(Poly::degree).max().unwrap_or(0);
        if degree == 0 {
            return Err(Error::BadDegree("all coordinates are constant".into()));
        }
        let common = coords
            .iter()
            .fold(Poly::zero(), |g, c| g.gcd(c));
        if let Some(d) = common.degree() {
            if d > 0 {
                return Err(Error::CommonFactor(d));
            }
        }
        Ok(ParametricCurve { coords, degree })
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// True when no hyperplane contains the image.
    pub fn is_nondegenerate(&self) -> bool {
        let rows: Vec<Vec<Rational>> = self
            .coords
            .iter()
            .map(|c| (0..=self.degree).map(|i| c.coeff(i)).collect())
            .collect();
        Matrix::from_rows(rows).rank() == self.coords.len()
    }

    /// Applies `A` to the coordinate vector: `φ ↦ A·φ`.
    pub fn transformed(&self, a: &Matrix) -> Result<Self> {
        if a.rows() != self.coords.len() || a.cols() != self.coords.len() {
            return Err(Error::Shape("transform must be (r+1)x(r+1)".into()));
        }
        let coords = (0..a.rows())
            .map(|i| {
                self.coords
                    .iter()
                    .enumerate()
                    .fold(Poly::zero(), |acc, (j, c)| &acc + &c.scale(&a[(i, j)]))
            })
            .collect();
        ParametricCurve::new(coords)
    }
}

/// A plane curve `F(x, y, z) = 0`, `F` homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    f: MPoly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(f: MPoly) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::AmbientMismatch(format!(
                "plane curve equation needs 3 variables, got {}",
                f.nvars()
            )));
        }
        let Some(degree) = f.total_degree() else {
            return Err(Error::ZeroPolynomial);
        };
        if degree == 0 || !f.is_homogeneous() {
            return Err(Error::BadDegree(
                "plane curve equation must be a homogeneous form of positive degree".into(),
            ));
        }
        Ok(PlaneCurve { f, degree })
    }

    pub fn equation(&self) -> &MPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Arithmetic genus `(d-1)(d-2)/2`, the genus when the curve is smooth.
    pub fn genus(&self) -> u32 {
        (self.degree - 1) * (self.degree - 2) / 2
    }
}

/// `y^2 = f(x)` with `f` squarefree of degree `2g+1` or `2g+2`, `g ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticCurve {
    f: Poly,
    genus: usize,
    roots: Option<Vec<Rational>>,
}

impl HyperellipticCurve {
    /// Validates `f` and records its roots when all of them are rational.
    pub fn new(f: Poly) -> Result<Self> {
        let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
        if deg < 5 {
            return Err(Error::BadDegree(format!(
                "deg f = {deg}; genus >= 2 needs deg f >= 5"
            )));
        }
        if !f.is_squarefree() {
            return Err(Error::NonSquarefree);
        }
        let genus = (deg - 1) / 2;
        let roots = rational_roots(&f).filter(|r| r.len() == deg);
        Ok(HyperellipticCurve { f, genus, roots })
    }

    /// `f = ∏ (x - root)`; the roots must be distinct.
    pub fn split(roots: Vec<Rational>) -> Result<Self> {
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != roots.len() {
            return Err(Error::NonSquarefree);
        }
        let mut c = HyperellipticCurve::new(Poly::from_roots(&roots))?;
        c.roots = Some(roots);
        Ok(c)
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn roots(&self) -> Option<&[Rational]> {
        self.roots.as_deref()
    }

    pub fn is_split(&self) -> bool {
        self.roots.is_some()
    }
}

/// A curve in P^r cut out by homogeneous forms in `r+1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceCurve {
    ambient: usize,
    polys: Vec<MPoly>,
}

impl SpaceCurve {
    pub fn new(ambient: usize, polys: Vec<MPoly>) -> Result<Self> {
        if ambient < 2 || polys.len() < ambient - 1 {
            return Err(Error::AmbientMismatch(format!(
                "need at least {} equations in P^{ambient}",
                ambient.saturating_sub(1)
            )));
        }
        for p in &polys {
            if p.nvars() != ambient + 1 {
                return Err(Error::AmbientMismatch(format!(
                    "equation has {} variables, expected {}",
                    p.nvars(),
                    ambient + 1
                )));
            }
            if p.is_zero() || !p.is_homogeneous() || p.total_degree() == Some(0) {
                return Err(Error::BadDegree("equations must be nonconstant forms".into()));
            }
        }
        Ok(SpaceCurve { ambient, polys })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn equations(&self) -> &[MPoly] {
        &self.polys
    }

    /// Rows `∇Q_i(p)`.
    pub fn jacobian(&self, p: &[Rational]) -> Matrix {
        Matrix::from_rows(
            self.polys
                .iter()
                .map(|q| q.gradient().iter().map(|g| g.eval(p)).collect())
                .collect(),
        )
    }
}

/// A union of curves in one P^r. Node geometry is not validated; jets are
/// always taken on the component a point declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalUnion {
    ambient: usize,
    components: Vec<Curve>,
}

impl NodalUnion {
    pub fn new(components: Vec<Curve>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::AmbientMismatch("empty union".into()));
        };
        let ambient = first.ambient().ok_or_else(|| {
            Error::AmbientMismatch("components must be embedded curves".into())
        })?;
        for c in &components {
            if matches!(c, Curve::Nodal(_)) {
                return Err(Error::AmbientMismatch("nested unions are not supported".into()));
            }
            if c.ambient() != Some(ambient) {
                return Err(Error::AmbientMismatch(format!(
                    "component in P^{:?}, expected P^{ambient}",
                    c.ambient()
                )));
            }
        }
        Ok(NodalUnion {
            ambient,
            components,
        })
    }

    pub fn components(&self) -> &[Curve] {
        &self.components
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Curve {
    Parametric(ParametricCurve),
    Plane(PlaneCurve),
    Hyperelliptic(HyperellipticCurve),
    Space(SpaceCurve),
    Nodal(NodalUnion),
}

impl Curve {
    /// Ambient projective dimension of the given model; `None` for the
    /// hyperelliptic model, which is not embedded.
    pub fn ambient(&self) -> Option<usize> {
        match self {
            Curve::Parametric(c) => Some(c.ambient()),
            Curve::Plane(_) => Some(2),
            Curve::Hyperelliptic(_) => None,
            Curve::Space(c) => Some(c.ambient()),
            Curve::Nodal(c) => Some(c.ambient()),
        }
    }

    /// Stored genus metadata: 0 for parametrized curves, `(d-1)(d-2)/2` for
    /// plane curves, `g` for hyperelliptic ones.
    pub fn genus(&self) -> Option<usize> {
        match self {
            Curve::Parametric(_) => Some(0),
            Curve::Plane(c) => Some(c.genus() as usize),
            Curve::Hyperelliptic(c) => Some(c.genus()),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Curve::Parametric(_) => "parametric",
            Curve::Plane(_) => "plane",
            Curve::Hyperelliptic(_) => "hyperelliptic",
            Curve::Space(_) => "space",
            Curve::Nodal(_) => "nodal",
        }
    }

    pub fn as_hyperelliptic(&self) -> Option<&HyperellipticCurve> {
        match self {
            Curve::Hyperelliptic(h) => Some(h),
            _ => None,
        }
    }

    /// Checks that `p` has the right kind for this model and satisfies its
    /// equations exactly.
    pub fn check_point(&self, p: &CurvePoint) -> Result<()> {
        match (self, p) {
            (Curve::Parametric(_), CurvePoint::Param(_)) => Ok(()),
            (Curve::Plane(c), CurvePoint::Plane(pt)) => {
                let v = c.f.eval(pt.coords());
                if v.is_zero() {
                    Ok(())
                } else {
                    Err(Error::PointNotOnCurve(format!("F{pt} = {v}")))
                }
            }
            (Curve::Hyperelliptic(c), CurvePoint::Hyper(h)) => h.check(&c.f),
            (Curve::Space(c), CurvePoint::Space(pt)) => {
                if pt.ambient() != c.ambient {
                    return Err(Error::AmbientMismatch(format!(
                        "point in P^{}, curve in P^{}",
                        pt.ambient(),
                        c.ambient
                    )));
                }
                match c.polys.iter().find(|q| !q.eval(pt.coords()).is_zero()) {
                    None => Ok(()),
                    Some(_) => Err(Error::PointNotOnCurve(format!("{pt}"))),
                }
            }
            (Curve::Nodal(u), CurvePoint::OnComponent { component, point }) => {
                let c = u.components.get(*component).ok_or_else(|| {
                    Error::PointNotOnCurve(format!("no component {component}"))
                })?;
                c.check_point(point)
            }
            (Curve::Plane(_), CurvePoint::Space(pt)) if pt.ambient() == 2 => {
                self.check_point(&CurvePoint::Plane(pt.clone()))
            }
            _ => Err(Error::PointNotOnCurve(format!(
                "point {p} does not belong to a {} curve",
                self.kind()
            ))),
        }
    }
}

impl From<ParametricCurve> for Curve {
    fn from(c: ParametricCurve) -> Self {
        Curve::Parametric(c)
    }
}

impl From<PlaneCurve> for Curve {
    fn from(c: PlaneCurve) -> Self {
        Curve::Plane(c)
    }
}

impl From<HyperellipticCurve> for Curve {
    fn from(c: HyperellipticCurve) -> Self {
        Curve::Hyperelliptic(c)
    }
}

impl From<SpaceCurve> for Curve {
    fn from(c: SpaceCurve) -> Self {
        Curve::Space(c)
    }
}

impl From<NodalUnion> for Curve {
    fn from(c: NodalUnion) -> Self {
        Curve::Nodal(c)
    }
}
