//! Fourier–Laplace transform of polytopal regions,
//!
//! ```text
//! F(z) = ∫_R exp(-2πi z·x) dx,   z ∈ C^d,
//! ```
//!
//! evaluated through the vertex-cone (Brion–Barvinok) expansion
//!
//! ```text
//! F(z) = Σ_v exp(-2πi v·z) Σ_j |det K_{v,j}| / ((2πi)^d Π_k (w_{j,k}·z))
//! ```
//!
//! which is valid off the hyperplanes `w·z = 0`. The pairing `x·z` is the
//! bilinear one (no conjugation) everywhere in this crate.
//!
//! [`quadrature_transform`] is an independent numerical oracle for the same
//! integral.

mod quadrature;

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{GeometryError, Point, PolytopalRegion, SimplicialCone, VertexConeDecomposition};

pub use quadrature::{quadrature_transform, quadrature_transform_with, QuadratureConfig};

/// Complex frequency vector `z ∈ C^d`.
pub type ComplexVector = DVector<Complex64>;

/// Denominator factors `|w·z|` below `SINGULAR_REL_TOL * max(1, |z|)` are
/// treated as singular.
pub const SINGULAR_REL_TOL: f64 = 1e-10;

/// Largest admissible `|Re(-2πi v·z)|`; beyond it `exp` leaves double range.
pub const EXPONENT_CAP: f64 = 700.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("near-singular denominator at vertex {vertex}, cone {cone}, generator {generator} (|w·z| = {modulus:e})")]
    NearSingular { vertex: usize, cone: usize, generator: usize, modulus: f64 },
    #[error("exponent real part {exponent} exceeds the overflow guard")]
    OverflowGuard { exponent: f64 },
    #[error("frequency has dimension {found}, region has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("quadrature did not reach tolerance (estimate {estimate}, error {error:e})")]
    ToleranceNotReached { estimate: Complex64, error: f64 },
    #[error("|Im z| = {0} is outside the quadrature range")]
    ImaginaryPartTooLarge(f64),
    #[error("no non-singular averaging circle found around the requested point")]
    NoRegularCircle,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Value of the vertex-cone expansion together with how close the
/// evaluation came to a singular hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvaluationResult {
    pub value: Complex64,
    /// Smallest `|w·z|` over all generators.
    pub min_denominator_factor: f64,
    pub singular_flag: bool,
}

/// Bilinear pairing of a real and a complex vector.
pub fn pair(w: &Point, z: &ComplexVector) -> Complex64 {
    w.iter().zip(z.iter()).map(|(a, b)| b * a).sum()
}

/// Euclidean norm of a complex vector.
pub fn cnorm(z: &ComplexVector) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn to_complex(x: &Point) -> ComplexVector {
    x.map(|c| Complex64::new(c, 0.0))
}

/// Singular threshold for `z` at relative tolerance `rel`.
pub fn singular_threshold(z: &ComplexVector, rel: f64) -> f64 {
    rel * cnorm(z).max(1.0)
}

/// `Σ_j |det K_j| / ((2πi)^d Π_k (w_{j,k}·z))` for the cones at one vertex.
/// On failure returns `(cone, generator, |w·z|)` of the first factor below
/// `threshold`.
pub fn cone_sum(cones: &[SimplicialCone], z: &ComplexVector, threshold: f64) -> Result<(Complex64, f64), (usize, usize, f64)> {
    let d = z.len() as i32;
    let scale = Complex64::new(0.0, 2.0 * PI).powi(d);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut min_factor = f64::INFINITY;
    for (j, cone) in cones.iter().enumerate() {
        let mut prod = scale;
        for (k, w) in cone.generators.iter().enumerate() {
            let f = pair(w, z);
            let m = f.norm();
            min_factor = min_factor.min(m);
            if m < threshold {
                return Err((j, k, m));
            }
            prod *= f;
        }
        acc += cone.abs_det / prod;
    }
    Ok((acc, min_factor))
}

/// `exp(-2πi v·z)`, refusing exponents outside double range.
pub fn vertex_phase(v: &Point, z: &ComplexVector) -> Result<Complex64, TransformError> {
    let e = Complex64::new(0.0, -2.0 * PI) * pair(v, z);
    if e.re.abs() > EXPONENT_CAP {
        return Err(TransformError::OverflowGuard { exponent: e.re });
    }
    Ok(e.exp())
}

fn check_dim(dec: &VertexConeDecomposition, z: &ComplexVector) -> Result<(), TransformError> {
    if z.len() != dec.dim() {
        return Err(TransformError::DimensionMismatch { expected: dec.dim(), found: z.len() });
    }
    Ok(())
}

/// Vertex-cone evaluation at `z`; fails with `NearSingular` when some
/// `|w·z| < 1e-10 * max(1, |z|)`.
pub fn bb_transform(dec: &VertexConeDecomposition, z: &ComplexVector) -> Result<EvaluationResult, TransformError> {
    bb_transform_with(dec, z, SINGULAR_REL_TOL)
}

pub fn bb_transform_with(dec: &VertexConeDecomposition, z: &ComplexVector, singular_rel: f64) -> Result<EvaluationResult, TransformError> {
    check_dim(dec, z)?;
    let threshold = singular_threshold(z, singular_rel);
    let mut value = Complex64::new(0.0, 0.0);
    let mut min_factor = f64::INFINITY;
    for (i, entry) in dec.entries().iter().enumerate() {
        let (coef, m) = cone_sum(&entry.cones, z, threshold)
            .map_err(|(cone, generator, modulus)| TransformError::NearSingular { vertex: i, cone, generator, modulus })?;
        min_factor = min_factor.min(m);
        value += coef * vertex_phase(&entry.vertex, z)?;
    }
    Ok(EvaluationResult { value, min_denominator_factor: min_factor, singular_flag: false })
}

/// Smallest `|w·z|` over every generator of the decomposition.
pub fn min_denominator_factor(dec: &VertexConeDecomposition, z: &ComplexVector) -> f64 {
    dec.entries()
        .iter()
        .flat_map(|e| e.cones.iter())
        .flat_map(|c| c.generators.iter())
        .map(|w| pair(w, z).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Evaluates the transform at any `z`, including points on the singular
/// hyperplanes where the expansion itself is undefined.
///
/// Off the hyperplanes this is [`bb_transform`]. Near them the transform,
/// being entire, equals its mean over a small circle `z + δ e^{iθ} u` in a
/// complex line through `z`; the mean is computed with a trapezoid rule on
/// 32 nodes, which is exact up to the 32nd Taylor term.
pub fn bb_transform_continued(dec: &VertexConeDecomposition, z: &ComplexVector) -> Result<Complex64, TransformError> {
    check_dim(dec, z)?;
    let switch = singular_threshold(z, 1e-6);
    if min_denominator_factor(dec, z) >= switch {
        return bb_transform(dec, z).map(|r| r.value);
    }
    let reach = dec.entries().iter().map(|e| e.vertex.norm()).fold(0.0, f64::max);
    let base = 0.02_f64.min(0.5 / (2.0 * PI * reach.max(1e-300)));
    let d = z.len();
    const NODES: usize = 32;
    for attempt in 0..6 {
        let u = averaging_direction(d, attempt);
        let delta = base * [1.0, 0.73, 0.61, 0.87, 0.53, 0.79][attempt];
        let points: Vec<ComplexVector> = (0..NODES)
            .map(|k| {
                let theta = 2.0 * PI * (k as f64 + 0.5) / NODES as f64;
                let shift = Complex64::from_polar(delta, theta);
                z + u.map(|c| shift * c)
            })
            .collect();
        if points.iter().any(|p| min_denominator_factor(dec, p) < 1e-3 * delta) {
            continue;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for p in &points {
            acc += bb_transform_with(dec, p, 0.0)?.value;
        }
        return Ok(acc / NODES as f64);
    }
    Err(TransformError::NoRegularCircle)
}

/// Fixed real unit directions in general position, indexed by `attempt`.
fn averaging_direction(d: usize, attempt: usize) -> ComplexVector {
    let v = Point::from_fn(d, |k, _| (1.3 + 2.17 * k as f64 + 0.91 * attempt as f64 * (k + 1) as f64).sin() + 0.1);
    to_complex(&v.normalize())
}

/// Limit of the expansion as `z → 0` along `z = h·direction`, `h` halving
/// from `h0` over `steps` points, extrapolated to `h = 0` with Neville's
/// scheme. Returns the extrapolated value and the sampled values.
pub fn limit_at_origin(
    dec: &VertexConeDecomposition,
    direction: &ComplexVector,
    h0: f64,
    steps: usize,
) -> Result<(Complex64, Vec<(f64, Complex64)>), TransformError> {
    let mut samples = Vec::with_capacity(steps);
    let mut h = h0;
    for _ in 0..steps {
        let z = direction.map(|c| c * h);
        samples.push((h, bb_transform(dec, &z)?.value));
        h *= 0.5;
    }
    Ok((neville_at_zero(&samples), samples))
}

/// Value at 0 of the polynomial interpolating `(h_i, f_i)`.
pub(crate) fn neville_at_zero(samples: &[(f64, Complex64)]) -> Complex64 {
    let n = samples.len();
    let mut p: Vec<Complex64> = samples.iter().map(|s| s.1).collect();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hj) = (samples[i].0, samples[i + m].0);
            p[i] = (p[i] * (-hj) + p[i + 1] * hi) / (hi - hj);
        }
    }
    p[0]
}

/// Relative residual `|F_R(z) - Σ_parts F_part(z)| / max(1, |F_R(z)|)`.
pub fn transform_additivity_check(region: &PolytopalRegion, z: &ComplexVector) -> Result<f64, TransformError> {
    let whole = bb_transform(&VertexConeDecomposition::new(region)?, z)?.value;
    let mut sum = Complex64::new(0.0, 0.0);
    for part in region.parts() {
        let dec = VertexConeDecomposition::new(&PolytopalRegion::single(part.clone()))?;
        sum += bb_transform(&dec, z)?.value;
    }
    Ok((whole - sum).norm() / whole.norm().max(1.0))
}
