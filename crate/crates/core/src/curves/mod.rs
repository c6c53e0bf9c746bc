//! Complex circles and parametrized curves in `C^d`.

mod poly;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::expsum::{Coefficient, ExpTerm, ExponentialSum};
use crate::geometry::VertexConeDecomposition;
use crate::transform::ComplexVector;

pub use poly::{Poly, RationalFunction};

/// Denominators below this modulus are treated as poles.
pub const POLE_TOL: f64 = 1e-12;

/// Relative singular-value threshold for numerical rank.
pub const RANK_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("circle radius must be nonzero")]
    ZeroRadius,
    #[error("plane axes ({0}, {1}) are not two distinct coordinates of C^{2}")]
    BadAxes(usize, usize, usize),
    #[error("parameter {0} is a pole of the curve")]
    PoleAtParameter(Complex64),
    #[error("need at least {needed} usable samples, got {found}")]
    InsufficientSamples { needed: usize, found: usize },
    #[error("unknown built-in curve {0:?}")]
    UnknownName(String),
    #[error("rational curve has no components")]
    NoComponents,
    #[error("every denominator vanishes on the sample grid")]
    VanishingDenominator,
    #[error("curve lives in C^{found}, expected C^{expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Circle `{a + R cos t e_i + R sin t e_j}` on the complex sphere
/// `Σ (z_k - a_k)^2 = R^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexCircle {
    #[serde(serialize_with = "crate::flat::vector")]
    pub center: ComplexVector,
    pub radius: Complex64,
    /// Zero-based coordinate axes spanning the circle's plane.
    pub axes: (usize, usize),
}

impl ComplexCircle {
    pub fn new(center: ComplexVector, radius: Complex64) -> Result<Self, CurveError> {
        Self::with_axes(center, radius, (0, 1))
    }

    pub fn with_axes(center: ComplexVector, radius: Complex64, axes: (usize, usize)) -> Result<Self, CurveError> {
        if radius.norm() == 0.0 {
            return Err(CurveError::ZeroRadius);
        }
        let d = center.len();
        if axes.0 == axes.1 || axes.0 >= d || axes.1 >= d {
            return Err(CurveError::BadAxes(axes.0, axes.1, d));
        }
        Ok(Self { center, radius, axes })
    }

    /// Circle centred at the origin of `C^d`.
    pub fn centered(d: usize, radius: Complex64) -> Result<Self, CurveError> {
        Self::new(ComplexVector::zeros(d), radius)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// The circle's coordinates as rational functions of the stereographic
    /// parameter.
    pub fn rational_components(&self) -> Vec<RationalFunction> {
        let den = Poly::real(&[1.0, 0.0, 1.0]);
        let r = self.radius;
        (0..self.dim())
            .map(|k| {
                let a = self.center[k];
                let num = if k == self.axes.0 {
                    Poly::new(vec![a + r, Complex64::new(0.0, 0.0), a - r])
                } else if k == self.axes.1 {
                    Poly::new(vec![a, r * 2.0, a])
                } else {
                    Poly::new(vec![a, Complex64::new(0.0, 0.0), a])
                };
                RationalFunction::new(num, den.clone())
            })
            .collect()
    }
}

/// `a + R cos t e_1 + R sin t e_2`.
pub fn circle_point_trig(c: &ComplexCircle, t: Complex64) -> ComplexVector {
    let mut z = c.center.clone();
    z[c.axes.0] += c.radius * t.cos();
    z[c.axes.1] += c.radius * t.sin();
    z
}

/// `a + R (1-t^2)/(1+t^2) e_1 + R 2t/(1+t^2) e_2`.
pub fn circle_point_rational(c: &ComplexCircle, t: Complex64) -> Result<ComplexVector, CurveError> {
    let den = t * t + 1.0;
    if den.norm() < POLE_TOL {
        return Err(CurveError::PoleAtParameter(t));
    }
    let mut z = c.center.clone();
    z[c.axes.0] += c.radius * (1.0 - t * t) / den;
    z[c.axes.1] += c.radius * 2.0 * t / den;
    Ok(z)
}

/// `Σ (z_k - a_k)^2 - R^2`.
pub fn sphere_membership(center: &ComplexVector, radius: Complex64, z: &ComplexVector) -> Complex64 {
    z.iter().zip(center.iter()).map(|(zk, ak)| (zk - ak) * (zk - ak)).sum::<Complex64>() - radius * radius
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `(t^2, sin t)`.
    T2Sin,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::T2Sin => "t2_sin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CurveShape {
    TrigCircle(ComplexCircle),
    RationalCircle(ComplexCircle),
    Rational(Vec<RationalFunction>),
    Analytic(Builtin),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    TrigCircle,
    RationalCircle,
    Rational,
    Analytic,
}

/// A map `t ↦ γ(t) ∈ C^d` with a declared order `ρ` (maximum order of the
/// entire functions in its components).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricCurve {
    pub shape: CurveShape,
    pub order: f64,
}

impl ParametricCurve {
    pub fn trig_circle(c: ComplexCircle) -> Self {
        Self { shape: CurveShape::TrigCircle(c), order: 1.0 }
    }

    pub fn rational_circle(c: ComplexCircle) -> Self {
        Self { shape: CurveShape::RationalCircle(c), order: 0.0 }
    }

    /// Rational curve; some sample of `[0, 1]` must avoid every pole.
    pub fn rational(components: Vec<RationalFunction>) -> Result<Self, CurveError> {
        if components.is_empty() {
            return Err(CurveError::NoComponents);
        }
        let ok = (0..64).any(|i| {
            let t = Complex64::new(i as f64 / 63.0, 0.0);
            components.iter().all(|r| r.den.eval(t).norm() >= POLE_TOL)
        });
        if !ok {
            return Err(CurveError::VanishingDenominator);
        }
        Ok(Self { shape: CurveShape::Rational(components), order: 0.0 })
    }

    pub fn with_order(mut self, rho: f64) -> Self {
        self.order = rho;
        self
    }

    pub fn kind(&self) -> CurveKind {
        match self.shape {
            CurveShape::TrigCircle(_) => CurveKind::TrigCircle,
            CurveShape::RationalCircle(_) => CurveKind::RationalCircle,
            CurveShape::Rational(_) => CurveKind::Rational,
            CurveShape::Analytic(_) => CurveKind::Analytic,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            CurveShape::TrigCircle(c) | CurveShape::RationalCircle(c) => c.dim(),
            CurveShape::Rational(r) => r.len(),
            CurveShape::Analytic(Builtin::T2Sin) => 2,
        }
    }

    pub fn circle(&self) -> Option<&ComplexCircle> {
        match &self.shape {
            CurveShape::TrigCircle(c) | CurveShape::RationalCircle(c) => Some(c),
            _ => None,
        }
    }

    /// Components as rational functions, when the curve is rational.
    pub fn rational_components(&self) -> Option<Vec<RationalFunction>> {
        match &self.shape {
            CurveShape::RationalCircle(c) => Some(c.rational_components()),
            CurveShape::Rational(r) => Some(r.clone()),
            _ => None,
        }
    }

    pub fn eval(&self, t: Complex64) -> Result<ComplexVector, CurveError> {
        match &self.shape {
            CurveShape::TrigCircle(c) => Ok(circle_point_trig(c, t)),
            CurveShape::RationalCircle(c) => circle_point_rational(c, t),
            CurveShape::Rational(r) => {
                let vals: Option<Vec<Complex64>> = r.iter().map(|f| f.eval(t, POLE_TOL)).collect();
                vals.map(ComplexVector::from_vec).ok_or(CurveError::PoleAtParameter(t))
            }
            CurveShape::Analytic(Builtin::T2Sin) => Ok(ComplexVector::from_vec(vec![t * t, t.sin()])),
        }
    }

    /// Natural real parameter window used by scans: `[0, 2π)` for trig
    /// circles, `[0, 1)` otherwise.
    pub fn default_window(&self) -> (f64, f64) {
        match self.shape {
            CurveShape::TrigCircle(_) => (0.0, 2.0 * PI),
            _ => (0.0, 1.0),
        }
    }
}

pub fn builtin_curve(name: &str) -> Result<ParametricCurve, CurveError> {
    match name {
        "t2_sin" => Ok(ParametricCurve { shape: CurveShape::Analytic(Builtin::T2Sin), order: 1.0 }),
        other => Err(CurveError::UnknownName(other.to_string())),
    }
}

/// Outcome of [`affine_hull_containment`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum HullVerdict {
    /// The curve lies in the hyperplane `normal · z = const`; the normal is
    /// scaled so its largest entry is 1.
    Contained { normal: Vec<Complex64>, singular_ratio: f64 },
    NotContained { min_singular_value: f64, singular_ratio: f64 },
}

impl HullVerdict {
    pub fn is_contained(&self) -> bool {
        matches!(self, HullVerdict::Contained { .. })
    }
}

/// Chebyshev points of the first kind on `[0, 1]`.
pub fn chebyshev_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.5 - 0.5 * (PI * (i as f64 + 0.5) / n as f64).cos()).collect()
}

/// Decides whether the curve lies in a complex affine hyperplane, from the
/// numerical rank of `γ(t_i) - γ(t_0)` over `max(n_samples, 4d)` Chebyshev
/// parameters in `[0, 1]`.
pub fn affine_hull_containment(curve: &ParametricCurve, n_samples: usize) -> Result<HullVerdict, CurveError> {
    affine_hull_containment_with(curve, n_samples, RANK_THRESHOLD)
}

pub fn affine_hull_containment_with(curve: &ParametricCurve, n_samples: usize, rel_threshold: f64) -> Result<HullVerdict, CurveError> {
    let d = curve.dim();
    let n = n_samples.max(4 * d);
    let points: Vec<ComplexVector> =
        chebyshev_nodes(n).into_iter().filter_map(|t| curve.eval(Complex64::new(t, 0.0)).ok()).collect();
    if points.len() < d + 1 {
        return Err(CurveError::InsufficientSamples { needed: d + 1, found: points.len() });
    }
    let m = DMatrix::from_fn(points.len() - 1, d, |r, c| points[r + 1][c] - points[0][c]);
    let svd = m.svd(false, true);
    let s = &svd.singular_values;
    let (imin, smin) = s.iter().copied().enumerate().fold((0, f64::INFINITY), |a, (i, v)| if v < a.1 { (i, v) } else { a });
    let smax = s.max();
    let deficient = s.len() < d;
    let ratio = if smax > 0.0 { smin / smax } else { 0.0 };
    if !deficient && smin > rel_threshold * smax {
        return Ok(HullVerdict::NotContained { min_singular_value: smin, singular_ratio: ratio });
    }
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut normal: Vec<Complex64> = v_t.row(imin).iter().map(|c| c.conj()).collect();
    let pivot = normal.iter().copied().fold(Complex64::new(0.0, 0.0), |a, c| if c.norm() > a.norm() { c } else { a });
    for c in normal.iter_mut() {
        *c /= pivot;
    }
    Ok(HullVerdict::Contained { normal, singular_ratio: ratio })
}

/// Number of monomials in `vars` variables of total degree at most `deg`.
fn monomial_exponents(vars: usize, deg: usize) -> Vec<Vec<usize>> {
    if vars == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in monomial_exponents(vars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Smallest singular value of the column-normalized matrix of monomials
/// (total degree `<= max_degree`) sampled on `γ(t_i)`, `t_i` equispaced on
/// `[0, 1]`. A value near zero exhibits a polynomial vanishing on the curve.
pub fn vanishing_polynomial_rank(curve: &ParametricCurve, max_degree: usize, n_samples: usize) -> Result<f64, CurveError> {
    let exps = monomial_exponents(curve.dim(), max_degree);
    let needed = 2 * exps.len();
    let denom = (n_samples.max(2) - 1) as f64;
    let points: Vec<ComplexVector> =
        (0..n_samples).filter_map(|i| curve.eval(Complex64::new(i as f64 / denom, 0.0)).ok()).collect();
    if points.len() < needed {
        return Err(CurveError::InsufficientSamples { needed, found: points.len() });
    }
    let mut m = DMatrix::from_fn(points.len(), exps.len(), |r, c| {
        exps[c].iter().zip(points[r].iter()).map(|(&e, x)| x.powu(e as u32)).product::<Complex64>()
    });
    for mut col in m.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= Complex64::new(norm, 0.0);
        }
    }
    Ok(m.singular_values().min())
}

/// Restricts the vertex-cone expansion to `z = γ(t)`: one exponential term
/// per merged vertex, with the vertex's cone sum as coefficient.
pub fn restrict_bb_to_curve(dec: &VertexConeDecomposition, curve: &ParametricCurve) -> Result<ExponentialSum, CurveError> {
    if curve.dim() != dec.dim() {
        return Err(CurveError::DimensionMismatch { expected: dec.dim(), found: curve.dim() });
    }
    let terms = dec
        .entries()
        .iter()
        .map(|e| ExpTerm { frequency: e.vertex.clone(), coefficient: Coefficient::ConeSum(e.cones.clone()) })
        .collect();
    Ok(ExponentialSum::new(terms, curve.clone()))
}
