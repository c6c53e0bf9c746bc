//! Direct numerical integration of `exp(-2πi z·x)` over a region.
//!
//! Each part is cut into simplices, each simplex is pulled back to the unit
//! cube by the collapsed-coordinate (Duffy) map, and the cube is integrated
//! with a tensor Gauss–Legendre rule under dyadic adaptive subdivision. The
//! integrand is entire and the domain bounded, so this works verbatim for
//! complex `z`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ComplexVector, TransformError};
use crate::geometry::{pulling_triangulation, Point, PolytopalRegion};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Mixed tolerance: error target is `tol * max(1, ∫|f|)`.
    pub tol: f64,
    pub max_depth: usize,
    /// Cap on `|Im z|` (Euclidean norm of the imaginary part).
    pub max_imag: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { tol: 1e-10, max_depth: 8, max_imag: 8.0 }
    }
}

const ORDER: usize = 16;

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push(((1.0 - x) / 2.0, w / 2.0));
        }
        out
    })
}

struct Simplex {
    origin: Point,
    edges: DMatrix<f64>,
    abs_det: f64,
}

impl Simplex {
    fn new(vertices: &[&Point]) -> Self {
        let d = vertices.len() - 1;
        let edges = DMatrix::from_fn(d, d, |r, c| vertices[c + 1][r] - vertices[0][r]);
        let abs_det = edges.determinant().abs();
        Self { origin: vertices[0].clone(), edges, abs_det }
    }

    /// Collapsed coordinates: `λ_1 = u_1`, `λ_k = u_k Π_{j<k} (1 - u_j)`.
    /// Returns the point and the Jacobian of `u ↦ x`.
    fn map(&self, u: &[f64]) -> (Point, f64) {
        let d = u.len();
        let mut lambda = vec![0.0; d];
        let mut rest = 1.0;
        let mut jac = self.abs_det;
        for k in 0..d {
            lambda[k] = u[k] * rest;
            jac *= (1.0 - u[k]).powi((d - k - 1) as i32);
            rest *= 1.0 - u[k];
        }
        let x = &self.origin + &self.edges * Point::from_vec(lambda);
        (x, jac)
    }
}

struct Integrand<'a> {
    simplex: Simplex,
    z: &'a ComplexVector,
}

impl Integrand<'_> {
    /// Tensor rule on the box `[lo, lo + width]`: returns `(∫f, ∫|f|)`.
    fn rule(&self, lo: &[f64], width: f64) -> (Complex64, f64) {
        let rule = gauss_legendre();
        let d = lo.len();
        let mut idx = vec![0usize; d];
        let mut u = vec![0.0; d];
        let mut acc = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        let vol = width.powi(d as i32);
        loop {
            let mut w = vol;
            for k in 0..d {
                let (node, weight) = rule[idx[k]];
                u[k] = lo[k] + width * node;
                w *= weight;
            }
            let (x, jac) = self.simplex.map(&u);
            let phase: Complex64 = self.z.iter().zip(x.iter()).map(|(zk, xk)| zk * xk).sum();
            let f = (Complex64::new(0.0, -2.0 * PI) * phase).exp() * jac;
            acc += f * w;
            abs += f.norm() * w;
            // odometer over the tensor grid
            let mut k = 0;
            loop {
                if k == d {
                    return (acc, abs);
                }
                idx[k] += 1;
                if idx[k] < ORDER {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn children(lo: &[f64], width: f64) -> Vec<Vec<f64>> {
        let d = lo.len();
        let half = width / 2.0;
        (0..1usize << d)
            .map(|m| (0..d).map(|k| lo[k] + if m >> k & 1 == 1 { half } else { 0.0 }).collect())
            .collect()
    }

    /// Refines `box` until the coarse estimate agrees with the sum over its
    /// children to within `tol * (box volume)`.
    fn adapt(&self, lo: &[f64], width: f64, coarse: Complex64, tol: f64, depth: usize, max_depth: usize) -> Result<Complex64, f64> {
        let half = width / 2.0;
        let kids: Vec<(Vec<f64>, Complex64)> = Self::children(lo, width)
            .into_iter()
            .map(|c| {
                let est = self.rule(&c, half).0;
                (c, est)
            })
            .collect();
        let fine: Complex64 = kids.iter().map(|k| k.1).sum();
        let err = (fine - coarse).norm();
        let vol = width.powi(lo.len() as i32);
        if err <= tol * vol {
            return Ok(fine);
        }
        if depth >= max_depth {
            return Err(err);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, est) in kids {
            acc += self.adapt(&c, half, est, tol, depth + 1, max_depth)?;
        }
        Ok(acc)
    }
}

/// `∫_R exp(-2πi z·x) dx` by adaptive quadrature with the default
/// configuration and the given tolerance.
pub fn quadrature_transform(region: &PolytopalRegion, z: &ComplexVector, tol: f64) -> Result<Complex64, TransformError> {
    quadrature_transform_with(region, z, &QuadratureConfig { tol, ..QuadratureConfig::default() })
}

pub fn quadrature_transform_with(region: &PolytopalRegion, z: &ComplexVector, cfg: &QuadratureConfig) -> Result<Complex64, TransformError> {
    let d = region.dim();
    if z.len() != d {
        return Err(TransformError::DimensionMismatch { expected: d, found: z.len() });
    }
    let imag = z.iter().map(|c| c.im * c.im).sum::<f64>().sqrt();
    if imag > cfg.max_imag {
        return Err(TransformError::ImaginaryPartTooLarge(imag));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for part in region.parts() {
        let verts = part.vertices();
        for s in pulling_triangulation(verts, 1e-10) {
            let simplex = Simplex::new(&s.iter().map(|&i| &verts[i]).collect::<Vec<_>>());
            let integrand = Integrand { simplex, z };
            let lo = vec![0.0; d];
            let (coarse, abs) = integrand.rule(&lo, 1.0);
            let tol = cfg.tol * abs.max(1.0);
            total += integrand
                .adapt(&lo, 1.0, coarse, tol, 0, cfg.max_depth)
                .map_err(|error| TransformError::ToleranceNotReached { estimate: coarse, error })?;
        }
    }
    Ok(total)
}
