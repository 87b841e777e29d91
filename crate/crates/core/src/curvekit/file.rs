//! JSON curve and divisor files, and the compact point-list syntax.
//!
//! Curve files:
//!
//! ```json
//! {"type": "parametric", "coords": ["1", "t", "t^2", "t^3"]}
//! {"type": "plane", "F": "x^4 + y^4 - y*z^3"}
//! {"type": "hyperelliptic", "f": "x^5 - 2"}
//! {"type": "hyperelliptic", "roots": ["1", "2", "3", "4", "5", "6", "7", "8"]}
//! {"type": "space", "r": 3, "polys": ["x^2 + y^2 - z^2 + w*x", "..."]}
//! {"type": "nodal", "components": [{...}, {...}]}
//! ```
//!
//! Variables: `t` for parametrizations, `x` for `f`, `x, y, z` in the plane,
//! `x, y, z, w` in P^3 and `x0, ..., xr` otherwise; a space curve may name
//! its own with `"vars"`. An optional `"name"` is carried into reports.
//!
//! Point lists (`--points`): items separated by `,` or `;` outside brackets.
//!
//! * `0`, `-1/2`, `inf`: parameter values;
//! * `(1,0)`: a hyperelliptic point with rational `y`; `(3,+)`, `(3,-)`:
//!   the point above `x = 3` on the given branch of `±sqrt f(3)`;
//! * `(1:0:1)`: homogeneous coordinates;
//! * `k@item`: the item on component `k` of a nodal union;
//! * `item*m`: multiplicity `m`.
//!
//! Divisor files: `{"points": [entry, ...]}` where an entry is a point-list
//! item as a string, `{"t": "0"}`, `{"x": "1", "y": "0"}`,
//! `{"x": "3", "branch": "+"}`, a homogeneous array `["1", "0", "1"]`,
//! `{"component": k, "point": entry}`, or `{"point": entry, "mult": m}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::curve::{Curve, HyperellipticCurve, NodalUnion, ParametricCurve, PlaneCurve, SpaceCurve};
use super::divisor::Divisor;
use super::parse::{parse_mpoly, parse_poly};
use super::point::{CurvePoint, HyperPoint, ParamValue};
use crate::error::{Error, Result};
use crate::qlinalg::{parse_rational, MPoly, Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", try_from = "CurveFile")]
pub enum CurveSpec {
    Parametric {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<usize>,
        coords: Vec<String>,
    },
    Plane {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(rename = "F")]
        f: String,
    },
    Hyperelliptic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        f: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        roots: Option<Vec<String>>,
    },
    Space {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        r: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<Vec<String>>,
        polys: Vec<String>,
    },
    Nodal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        components: Vec<CurveSpec>,
    },
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Parametric,
    Plane,
    Hyperelliptic,
    Space,
    Nodal,
}

/// On-disk shape: one flat record, so serde_json keeps error positions
/// (internally tagged enums buffer their input and lose them).
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    #[serde(rename = "type")]
    kind: Kind,
    name: Option<String>,
    r: Option<usize>,
    coords: Option<Vec<String>>,
    #[serde(rename = "F")]
    big_f: Option<String>,
    f: Option<String>,
    roots: Option<Vec<String>>,
    vars: Option<Vec<String>>,
    polys: Option<Vec<String>>,
    components: Option<Vec<CurveSpec>>,
}

impl TryFrom<CurveFile> for CurveSpec {
    type Error = String;

    fn try_from(c: CurveFile) -> std::result::Result<Self, String> {
        fn need<T>(v: Option<T>, field: &str, kind: &str) -> std::result::Result<T, String> {
            v.ok_or_else(|| format!("{kind} curve needs `{field}`"))
        }
        let stray = |allowed: &[&str]| -> std::result::Result<(), String> {
            let present = [
                ("r", c.r.is_some()),
                ("coords", c.coords.is_some()),
                ("F", c.big_f.is_some()),
                ("f", c.f.is_some()),
                ("roots", c.roots.is_some()),
                ("vars", c.vars.is_some()),
                ("polys", c.polys.is_some()),
                ("components", c.components.is_some()),
            ];
            match present.iter().find(|(k, p)| *p && !allowed.contains(k)) {
                Some((k, _)) => Err(format!("field `{k}` does not apply to this curve type")),
                None => Ok(()),
            }
        };
        Ok(match c.kind {
            Kind::Parametric => {
                stray(&["r", "coords"])?;
                CurveSpec::Parametric {
                    name: c.name,
                    r: c.r,
                    coords: need(c.coords, "coords", "parametric")?,
                }
            }
            Kind::Plane => {
                stray(&["F"])?;
                CurveSpec::Plane {
                    name: c.name,
                    f: need(c.big_f, "F", "plane")?,
                }
            }
            Kind::Hyperelliptic => {
                stray(&["f", "roots"])?;
                CurveSpec::Hyperelliptic {
                    name: c.name,
                    f: c.f,
                    roots: c.roots,
                }
            }
            Kind::Space => {
                stray(&["r", "vars", "polys"])?;
                CurveSpec::Space {
                    name: c.name,
                    r: need(c.r, "r", "space")?,
                    vars: c.vars,
                    polys: need(c.polys, "polys", "space")?,
                }
            }
            Kind::Nodal => {
                stray(&["components"])?;
                CurveSpec::Nodal {
                    name: c.name,
                    components: need(c.components, "components", "nodal")?,
                }
            }
        })
    }
}

pub fn default_vars(r: usize) -> Vec<String> {
    match r {
        2 => vec!["x".into(), "y".into(), "z".into()],
        3 => vec!["x".into(), "y".into(), "z".into(), "w".into()],
        _ => (0..=r).map(|i| format!("x{i}")).collect(),
    }
}

fn field_error(field: &str, e: Error) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("in `{field}`: {message}"),
        },
        other => other,
    }
}

impl CurveSpec {
    pub fn name(&self) -> Option<&str> {
        match self {
            CurveSpec::Parametric { name, .. }
            | CurveSpec::Plane { name, .. }
            | CurveSpec::Hyperelliptic { name, .. }
            | CurveSpec::Space { name, .. }
            | CurveSpec::Nodal { name, .. } => name.as_deref(),
        }
    }

    pub fn build(&self) -> Result<Curve> {
        match self {
            CurveSpec::Parametric { r, coords, .. } => {
                if let Some(r) = r {
                    if *r + 1 != coords.len() {
                        return Err(Error::AmbientMismatch(format!(
                            "r = {r} but {} coordinates given",
                            coords.len()
                        )));
                    }
                }
                let polys = coords
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_poly(s, "t").map_err(|e| field_error(&format!("coords[{i}]"), e)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ParametricCurve::new(polys)?.into())
            }
            CurveSpec::Plane { f, .. } => {
                let f = parse_mpoly(f, &["x", "y", "z"]).map_err(|e| field_error("F", e))?;
                Ok(PlaneCurve::new(f)?.into())
            }
            CurveSpec::Hyperelliptic { f, roots, .. } => match (f, roots) {
                (Some(f), None) => {
                    let f = parse_poly(f, "x").map_err(|e| field_error("f", e))?;
                    Ok(HyperellipticCurve::new(f)?.into())
                }
                (None, Some(roots)) => {
                    let roots = roots
                        .iter()
                        .map(|s| {
                            parse_rational(s).map_err(|m| Error::parse(1, 1, format!("in `roots`: {m}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(HyperellipticCurve::split(roots)?.into())
                }
                _ => Err(Error::Shape(
                    "hyperelliptic curve needs exactly one of `f` and `roots`".into(),
                )),
            },
            CurveSpec::Space { r, vars, polys, .. } => {
                let names = vars.clone().unwrap_or_else(|| default_vars(*r));
                if names.len() != r + 1 {
                    return Err(Error::AmbientMismatch(format!(
                        "r = {r} needs {} variable names, got {}",
                        r + 1,
                        names.len()
                    )));
                }
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                let polys = polys
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_mpoly(s, &names).map_err(|e| field_error(&format!("polys[{i}]"), e)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SpaceCurve::new(*r, polys)?.into())
            }
            CurveSpec::Nodal { components, .. } => {
                let comps = components
                    .iter()
                    .map(CurveSpec::build)
                    .collect::<Result<Vec<_>>>()?;
                Ok(NodalUnion::new(comps)?.into())
            }
        }
    }

    /// A spec that rebuilds `curve` exactly.
    pub fn from_curve(curve: &Curve, name: Option<String>) -> CurveSpec {
        let render_t = |p: &Poly| MPoly::from_univariate(p, 1, 0).to_string_with(&["t"]);
        match curve {
            Curve::Parametric(c) => CurveSpec::Parametric {
                name,
                r: Some(c.ambient()),
                coords: c.coords().iter().map(render_t).collect(),
            },
            Curve::Plane(c) => CurveSpec::Plane {
                name,
                f: c.equation().to_string_with(&["x", "y", "z"]),
            },
            Curve::Hyperelliptic(h) => match h.roots() {
                Some(roots) if h.f().leading() == crate::qlinalg::q(1) => {
                    CurveSpec::Hyperelliptic {
                        name,
                        f: None,
                        roots: Some(roots.iter().map(crate::qlinalg::fmt_rational).collect()),
                    }
                }
                _ => CurveSpec::Hyperelliptic {
                    name,
                    f: Some(MPoly::from_univariate(h.f(), 1, 0).to_string_with(&["x"])),
                    roots: None,
                },
            },
            Curve::Space(c) => {
                let names = default_vars(c.ambient());
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                CurveSpec::Space {
                    name,
                    r: c.ambient(),
                    vars: None,
                    polys: c.equations().iter().map(|p| p.to_string_with(&names)).collect(),
                }
            }
            Curve::Nodal(u) => CurveSpec::Nodal {
                name,
                components: u
                    .components()
                    .iter()
                    .map(|c| CurveSpec::from_curve(c, None))
                    .collect(),
            },
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

pub fn parse_curve_json(text: &str) -> Result<(CurveSpec, Curve)> {
    let spec: CurveSpec = serde_json::from_str(text).map_err(json_error)?;
    let curve = spec.build()?;
    Ok((spec, curve))
}

/// Splits at `,`/`;` outside parentheses.
fn split_top_level(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            ',' | ';' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    out.push(cur);
    out
}

fn item_error(item: &str, msg: impl std::fmt::Display) -> Error {
    Error::InvalidDivisor(format!("point `{item}`: {msg}"))
}

fn rational(item: &str, s: &str) -> Result<Rational> {
    parse_rational(s.trim()).map_err(|m| item_error(item, m))
}

/// Parses a single point literal for `curve`.
pub fn parse_point(src: &str, curve: &Curve) -> Result<CurvePoint> {
    let item = src.trim();
    if let Some((k, rest)) = item.split_once('@') {
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| item_error(item, "component index must be a non-negative integer"))?;
        let Curve::Nodal(u) = curve else {
            return Err(item_error(item, "component prefix on a curve with one component"));
        };
        let comp = u
            .components()
            .get(k)
            .ok_or_else(|| item_error(item, format!("no component {k}")))?;
        return Ok(CurvePoint::on_component(k, parse_point(rest, comp)?));
    }
    let point = if let Some(inner) = item.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        if inner.contains(':') {
            let coords = inner
                .split(':')
                .map(|s| rational(item, s))
                .collect::<Result<Vec<_>>>()?;
            match curve {
                Curve::Plane(_) => CurvePoint::plane(coords)?,
                Curve::Space(_) => CurvePoint::space(coords)?,
                _ => return Err(item_error(item, format!("homogeneous point on a {} curve", curve.kind()))),
            }
        } else {
            let Some(h) = curve.as_hyperelliptic() else {
                return Err(item_error(item, format!("(x, y) point on a {} curve", curve.kind())));
            };
            let (xs, ys) = inner
                .split_once(',')
                .ok_or_else(|| item_error(item, "expected (x, y), (x, +) or (x, -)"))?;
            let x = rational(item, xs)?;
            match ys.trim() {
                "+" => CurvePoint::Hyper(HyperPoint::above(h.f(), x, true)),
                "-" => CurvePoint::Hyper(HyperPoint::above(h.f(), x, false)),
                y => CurvePoint::Hyper(HyperPoint::rational(x, rational(item, y)?)),
            }
        }
    } else {
        if !matches!(curve, Curve::Parametric(_)) {
            return Err(item_error(item, format!("parameter value on a {} curve", curve.kind())));
        }
        if item == "inf" || item == "\u{221e}" {
            CurvePoint::infinity()
        } else {
            CurvePoint::t(rational(item, item)?)
        }
    };
    curve.check_point(&point)?;
    Ok(point)
}

/// Parses a point list into a divisor on `curve`.
pub fn parse_points(src: &str, curve: &Curve) -> Result<Divisor> {
    let mut entries = Vec::new();
    for raw in split_top_level(src) {
        let item = raw.trim();
        if item.is_empty() {
            return Err(Error::InvalidDivisor(format!("empty item in `{src}`")));
        }
        let (body, mult) = match item.rsplit_once('*') {
            Some((body, m)) => {
                let m: u32 = m
                    .trim()
                    .parse()
                    .map_err(|_| item_error(item, "multiplicity must be a positive integer"))?;
                (body, m)
            }
            None => (item, 1),
        };
        entries.push((parse_point(body, curve)?, mult));
    }
    Divisor::new(entries)
}

fn entry_point(v: &Value, curve: &Curve) -> Result<CurvePoint> {
    let bad = || Error::InvalidDivisor(format!("unrecognised point entry {v}"));
    match v {
        Value::String(s) => parse_point(s, curve),
        Value::Array(items) => {
            let coords: Vec<&str> = items.iter().map(|c| c.as_str().ok_or_else(bad)).collect::<Result<_>>()?;
            parse_point(&format!("({})", coords.join(":")), curve)
        }
        Value::Object(map) => {
            if let (Some(k), Some(p)) = (map.get("component"), map.get("point")) {
                let k = k.as_u64().ok_or_else(bad)? as usize;
                let Curve::Nodal(u) = curve else {
                    return Err(Error::InvalidDivisor("component index on a single curve".into()));
                };
                let comp = u
                    .components()
                    .get(k)
                    .ok_or_else(|| Error::InvalidDivisor(format!("no component {k}")))?;
                return Ok(CurvePoint::on_component(k, entry_point(p, comp)?));
            }
            let text = |key: &str| map.get(key).and_then(Value::as_str);
            if let Some(t) = text("t") {
                return parse_point(t, curve);
            }
            if let Some(x) = text("x") {
                let second = text("y").or_else(|| text("branch")).ok_or_else(bad)?;
                return parse_point(&format!("({x},{second})"), curve);
            }
            Err(bad())
        }
        _ => Err(bad()),
    }
}

pub fn parse_divisor_json(text: &str, curve: &Curve) -> Result<Divisor> {
    let v: Value = serde_json::from_str(text).map_err(json_error)?;
    let points = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidDivisor("divisor file needs a `points` array".into()))?;
    let mut entries = Vec::new();
    for e in points {
        match e.as_object() {
            Some(map) if map.contains_key("mult") => {
                let m = map["mult"]
                    .as_u64()
                    .ok_or_else(|| Error::InvalidDivisor("`mult` must be a positive integer".into()))?;
                let p = map
                    .get("point")
                    .ok_or_else(|| Error::InvalidDivisor("`mult` without `point`".into()))?;
                entries.push((entry_point(p, curve)?, m as u32));
            }
            _ => entries.push((entry_point(e, curve)?, 1)),
        }
    }
    Divisor::new(entries)
}

/// Renders a point in the point-list syntax accepted by [`parse_point`].
pub fn point_literal(p: &CurvePoint) -> String {
    use super::point::Ordinate;
    match p {
        CurvePoint::Param(ParamValue::Finite(t)) => crate::qlinalg::fmt_rational(t),
        CurvePoint::Param(ParamValue::Infinity) => "inf".into(),
        CurvePoint::Plane(pt) | CurvePoint::Space(pt) => pt.to_string(),
        CurvePoint::Hyper(h) => {
            let x = crate::qlinalg::fmt_rational(&h.x);
            match &h.y {
                Ordinate::Rational(y) => format!("({x},{})", crate::qlinalg::fmt_rational(y)),
                Ordinate::Surd { positive } => format!("({x},{})", if *positive { "+" } else { "-" }),
            }
        }
        CurvePoint::OnComponent { component, point } => format!("{component}@{}", point_literal(point)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const QUARTIC: &str = r#"{"type": "parametric", "coords": ["1", "t", "t^2", "t^2*(t-1)^2"]}"#;

    #[test]
    fn curve_round_trip() {
        let (_, c) = parse_curve_json(QUARTIC).unwrap();
        let spec = CurveSpec::from_curve(&c, None);
        assert_eq!(spec.build().unwrap(), c);
        let g3 = r#"{"type": "hyperelliptic", "roots": ["1","2","3","4","5","6","7","8"]}"#;
        let (_, h) = parse_curve_json(g3).unwrap();
        assert_eq!(CurveSpec::from_curve(&h, None).build().unwrap(), h);
    }

    #[test]
    fn json_errors_have_positions() {
        let err = parse_curve_json("{\"type\": \"plane\",\n \"F\": 3}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let err = parse_curve_json(r#"{"type": "plane", "F": "x^2 + 0.5*y^2 - z^2"}"#).unwrap_err();
        match err {
            Error::Parse { message, .. } => assert!(message.contains("floating-point")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn point_lists() {
        let (_, c) = parse_curve_json(QUARTIC).unwrap();
        let d = parse_points("0, 1; inf*2", &c).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.entries()[2].0, CurvePoint::infinity());
        let g3 = r#"{"type": "hyperelliptic", "roots": ["1","2","3","4","5","6","7","8"]}"#;
        let (_, h) = parse_curve_json(g3).unwrap();
        let d = parse_points("(1,0), (0,+), (0,-)*2", &h).unwrap();
        assert_eq!(d.len(), 3);
        assert!(parse_points("(1,1)", &h).is_err());
        for (p, _) in d.entries() {
            assert_eq!(&parse_point(&point_literal(p), &h).unwrap(), p);
        }
    }

    #[test]
    fn divisor_files() {
        let space = r#"{"type": "space", "r": 3, "polys": ["x^2 + y^2 - z^2 + w*x", "x^2 + 2*y^2 - z^2 - w*x"]}"#;
        let (_, c) = parse_curve_json(space).unwrap();
        let d = parse_divisor_json(
            r#"{"points": [["1","0","1","0"], {"point": "(1:0:-1:0)", "mult": 2}]}"#,
            &c,
        )
        .unwrap();
        assert_eq!(d.degree(), 3);
        let p = parse_divisor_json(r#"{"points": [{"t": "1/2"}]}"#, &parse_curve_json(QUARTIC).unwrap().1)
            .unwrap();
        assert_eq!(p.entries()[0].0, CurvePoint::t(crate::qlinalg::qf(1, 2)));
        assert!(parse_divisor_json(r#"{"points": [["2","0","1","0"]]}"#, &c).is_err());
    }
}
