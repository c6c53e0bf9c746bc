//! JSON input formats for regions and curves.
//!
//! Real numbers may be JSON numbers or strings holding a decimal or an exact
//! fraction `"p/q"`; complex numbers may also be `[re, im]` pairs.

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::curves::{builtin_curve, ComplexCircle, CurveError, ParametricCurve, Poly, RationalFunction};
use crate::geometry::{convex_hull, GeometryError, Point, PolytopalRegion, Polytope};
use crate::transform::ComplexVector;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad number {0:?}")]
    Number(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Real {
    Number(f64),
    Text(String),
}

impl Real {
    fn value(&self) -> Result<f64, InputError> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Text(s) => parse_real(s),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Complex {
    Real(Real),
    Pair([Real; 2]),
}

impl Complex {
    fn value(&self) -> Result<Complex64, InputError> {
        match self {
            Complex::Real(r) => Ok(Complex64::new(r.value()?, 0.0)),
            Complex::Pair([re, im]) => Ok(Complex64::new(re.value()?, im.value()?)),
        }
    }
}

/// Parses a decimal or a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64, InputError> {
    let bad = || InputError::Number(s.to_string());
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionFile {
    dim: usize,
    parts: Vec<PartFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartFile {
    vertices: Vec<Vec<Real>>,
    edges: Option<Vec<[usize; 2]>>,
}

pub fn parse_region(json: &str) -> Result<PolytopalRegion, InputError> {
    let file: RegionFile = serde_json::from_str(json)?;
    if file.parts.is_empty() {
        return Err(InputError::Invalid("region has no parts".into()));
    }
    let mut parts = Vec::with_capacity(file.parts.len());
    for (k, part) in file.parts.iter().enumerate() {
        let mut vertices = Vec::with_capacity(part.vertices.len());
        for v in &part.vertices {
            if v.len() != file.dim {
                return Err(InputError::Invalid(format!("part {k}: vertex of length {} in dimension {}", v.len(), file.dim)));
            }
            let coords = v.iter().map(Real::value).collect::<Result<Vec<_>, _>>()?;
            vertices.push(Point::from_vec(coords));
        }
        let polytope = match &part.edges {
            Some(edges) => Polytope::new(vertices, edges.iter().map(|e| (e[0], e[1])).collect())?,
            None if file.dim <= 3 => convex_hull(&vertices)?,
            None => return Err(InputError::Invalid(format!("part {k}: edges are required in dimension {}", file.dim))),
        };
        parts.push(polytope);
    }
    Ok(PolytopalRegion::new(parts)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalFile {
    num: Vec<Complex>,
    den: Vec<Complex>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    kind: String,
    center: Option<Vec<Complex>>,
    radius: Option<Complex>,
    axes: Option<[usize; 2]>,
    components: Option<Vec<RationalFile>>,
    name: Option<String>,
    rho: Option<f64>,
}

fn coeffs(list: &[Complex]) -> Result<Poly, InputError> {
    if list.is_empty() {
        return Err(InputError::Invalid("empty coefficient list".into()));
    }
    Ok(Poly::new(list.iter().map(Complex::value).collect::<Result<_, _>>()?))
}

pub fn parse_curve(json: &str) -> Result<ParametricCurve, InputError> {
    let file: CurveFile = serde_json::from_str(json)?;
    let missing = |field: &str| InputError::Invalid(format!("{} curve needs {field:?}", file.kind));
    let circle = || -> Result<ComplexCircle, InputError> {
        let center = file.center.as_ref().ok_or_else(|| missing("center"))?;
        let center = ComplexVector::from_vec(center.iter().map(Complex::value).collect::<Result<_, _>>()?);
        let radius = file.radius.as_ref().ok_or_else(|| missing("radius"))?.value()?;
        let axes = file.axes.map(|a| (a[0], a[1])).unwrap_or((0, 1));
        Ok(ComplexCircle::with_axes(center, radius, axes)?)
    };
    let curve = match file.kind.as_str() {
        "trig_circle" => ParametricCurve::trig_circle(circle()?),
        "rational_circle" => ParametricCurve::rational_circle(circle()?),
        "rational" => {
            let comps = file.components.as_ref().ok_or_else(|| missing("components"))?;
            let comps = comps
                .iter()
                .map(|c| Ok(RationalFunction::new(coeffs(&c.num)?, coeffs(&c.den)?)))
                .collect::<Result<Vec<_>, InputError>>()?;
            ParametricCurve::rational(comps)?
        }
        "builtin" => builtin_curve(file.name.as_deref().ok_or_else(|| missing("name"))?)?,
        other => return Err(InputError::Invalid(format!("unknown curve kind {other:?}"))),
    };
    Ok(match file.rho {
        Some(rho) if rho >= 0.0 && rho.is_finite() => curve.with_order(rho),
        Some(rho) => return Err(InputError::Invalid(format!("order must be a nonnegative real, got {rho}"))),
        None => curve,
    })
}

/// Parses `"re,im;re,im;…"` into a complex vector.
pub fn parse_complex_list(s: &str) -> Result<ComplexVector, InputError> {
    let entries = s
        .split(';')
        .map(|pair| {
            let (re, im) = pair.split_once(',').unwrap_or((pair, "0"));
            Ok(Complex64::new(parse_real(re)?, parse_real(im)?))
        })
        .collect::<Result<Vec<_>, InputError>>()?;
    Ok(ComplexVector::from_vec(entries))
}
