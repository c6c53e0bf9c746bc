//! Planar reduction: directional derivatives of polygon indicators as
//! complex combinations of segment arc-length measures, and their Fourier
//! transforms.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{circle_point_trig, ComplexCircle};
use crate::geometry::{PolytopalRegion, VertexConeDecomposition};
use crate::transform::{bb_transform, ComplexVector, TransformError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlanarError {
    #[error("direction is parallel to edge ({0}, {1}) of part {2}")]
    DirectionParallelToEdge(usize, usize, usize),
    #[error("planar reduction needs a 2-dimensional region, got dimension {0}")]
    NotPlanar(usize),
    #[error("direction must be a nonzero 2-vector")]
    BadDirection,
    #[error("segment endpoints coincide")]
    ZeroLengthSegment,
    #[error("polynomial has no nonzero coefficient")]
    ZeroPolynomial,
    #[error(transparent)]
    Transform(#[from] TransformError),
}

pub type P2 = [f64; 2];

fn lex(a: &P2, b: &P2) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

fn dot_c(u: &P2, x: &ComplexVector) -> Complex64 {
    x[0] * u[0] + x[1] * u[1]
}

/// `c · δ_[a,b]`, arc-length measure on a segment, stored with `a ≺ b`
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    pub a: P2,
    pub b: P2,
    pub coefficient: Complex64,
}

impl Segment {
    pub fn new(a: P2, b: P2, coefficient: Complex64) -> Result<Self, PlanarError> {
        if a == b {
            return Err(PlanarError::ZeroLengthSegment);
        }
        let (a, b) = if lex(&a, &b) == Ordering::Greater { (b, a) } else { (a, b) };
        Ok(Self { a, b, coefficient })
    }

    pub fn length(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    /// Unit direction from `a` to `b`.
    pub fn direction(&self) -> P2 {
        let l = self.length();
        [(self.b[0] - self.a[0]) / l, (self.b[1] - self.a[1]) / l]
    }
}

/// Finite sum of segment measures together with its set of distinct
/// directions (up to sign).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentMeasure {
    pub segments: Vec<Segment>,
    pub directions: Vec<P2>,
}

const DIRECTION_TOL: f64 = 1e-12;

impl SegmentMeasure {
    pub fn new(segments: Vec<Segment>) -> Self {
        let mut directions: Vec<P2> = Vec::new();
        for s in &segments {
            let u = s.direction();
            if !directions.iter().any(|d| (d[0] - u[0]).hypot(d[1] - u[1]) < DIRECTION_TOL) {
                directions.push(u);
            }
        }
        directions.sort_by(lex);
        Self { segments, directions }
    }

    fn direction_index(&self, s: &Segment) -> usize {
        let u = s.direction();
        self.directions
            .iter()
            .position(|d| (d[0] - u[0]).hypot(d[1] - u[1]) < DIRECTION_TOL)
            .expect("segment direction is in the direction set")
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let segments = self.segments.iter().map(|s| Segment { coefficient: s.coefficient * c, ..s.clone() }).collect();
        Self { segments, directions: self.directions.clone() }
    }

    pub fn concat(&self, other: &SegmentMeasure) -> Self {
        Self::new(self.segments.iter().chain(&other.segments).cloned().collect())
    }
}

fn derivative_impl(region: &PolytopalRegion, u: P2, allow_parallel: bool) -> Result<SegmentMeasure, PlanarError> {
    if region.dim() != 2 {
        return Err(PlanarError::NotPlanar(region.dim()));
    }
    let norm = u[0].hypot(u[1]);
    if !norm.is_finite() || norm <= 0.0 {
        return Err(PlanarError::BadDirection);
    }
    let u = [u[0] / norm, u[1] / norm];
    let mut segments = Vec::new();
    for (pi, part) in region.parts().iter().enumerate() {
        let centroid = part.centroid();
        let vs = part.vertices();
        for &(i, j) in part.edges() {
            let a = [vs[i][0], vs[i][1]];
            let b = [vs[j][0], vs[j][1]];
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            let e = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
            let mut n = [e[1], -e[0]];
            if n[0] * (a[0] - centroid[0]) + n[1] * (a[1] - centroid[1]) < 0.0 {
                n = [-n[0], -n[1]];
            }
            // |sin| of the angle between u and the edge
            if (u[0] * e[1] - u[1] * e[0]).abs() < 1e-9 {
                if allow_parallel {
                    continue;
                }
                return Err(PlanarError::DirectionParallelToEdge(i, j, pi));
            }
            let c = -(u[0] * n[0] + u[1] * n[1]);
            segments.push(Segment::new(a, b, Complex64::new(c, 0.0))?);
        }
    }
    Ok(SegmentMeasure::new(segments))
}

/// Distributional derivative `∂_u 1_R` of a planar region: every edge with
/// outward unit normal `n` carries coefficient `-(u·n)`. Fails when `u` is
/// parallel to an edge.
pub fn polygon_directional_derivative(region: &PolytopalRegion, u: P2) -> Result<SegmentMeasure, PlanarError> {
    derivative_impl(region, u, false)
}

/// As [`polygon_directional_derivative`], but edges parallel to `u` (whose
/// coefficient vanishes) are omitted instead of rejected.
pub fn polygon_directional_derivative_allow_parallel(region: &PolytopalRegion, u: P2) -> Result<SegmentMeasure, PlanarError> {
    derivative_impl(region, u, true)
}

/// `(e^{-2πis} - 1) / (-2πis)`, with a Taylor branch near `s = 0`.
fn segment_kernel(s: Complex64) -> Complex64 {
    let w = Complex64::new(0.0, -2.0 * PI) * s;
    if w.norm() < 1e-4 {
        1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0
    } else {
        (w.exp() - 1.0) / w
    }
}

/// Fourier–Laplace transform of a segment measure at `x ∈ C^2`.
pub fn segment_measure_transform(mu: &SegmentMeasure, x: &ComplexVector) -> Complex64 {
    mu.segments
        .iter()
        .map(|s| {
            let d = [s.b[0] - s.a[0], s.b[1] - s.a[1]];
            let phase = (Complex64::new(0.0, -2.0 * PI) * dot_c(&s.a, x)).exp();
            s.coefficient * s.length() * phase * segment_kernel(dot_c(&d, x))
        })
        .sum()
}

/// `|μ̂(x) - 2πi (u·x) F_R(x)|` for `μ = ∂_u 1_R` and real `x`.
pub fn derivative_transform_identity_residual(region: &PolytopalRegion, u: P2, x: [f64; 2]) -> Result<f64, PlanarError> {
    let mu = polygon_directional_derivative(region, u)?;
    let norm = u[0].hypot(u[1]);
    let xc = ComplexVector::from_vec(vec![Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)]);
    let ux = (u[0] * x[0] + u[1] * x[1]) / norm;
    let rhs = if ux == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        let dec = VertexConeDecomposition::new(region).map_err(TransformError::from)?;
        Complex64::new(0.0, 2.0 * PI * ux) * bb_transform(&dec, &xc)?.value
    };
    Ok((segment_measure_transform(&mu, &xc) - rhs).norm())
}

/// Homogeneous polynomial in two variables; `coeffs[j]` multiplies
/// `x_1^{deg-j} x_2^j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneousPoly {
    pub coeffs: Vec<Complex64>,
}

impl HomogeneousPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &ComplexVector) -> Complex64 {
        let deg = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * x[0].powu((deg - j) as u32) * x[1].powu(j as u32))
            .sum()
    }

    fn linear(u: &P2) -> Self {
        Self { coeffs: vec![Complex64::new(u[0], 0.0), Complex64::new(u[1], 0.0)] }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexPolynomial {
    pub vertex: P2,
    pub polynomial: HomogeneousPoly,
}

/// `D μ̂(x) = Σ_v p_v(x) e^{-2πi v·x}` with `D = Π_k ∂_{u_k}` over the
/// direction set; every `p_v` is homogeneous of degree `K - 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexPolynomialSum {
    pub degree: usize,
    pub directions: Vec<P2>,
    /// Sorted lexicographically by vertex.
    pub entries: Vec<VertexPolynomial>,
}

impl VertexPolynomialSum {
    pub fn eval(&self, x: &ComplexVector) -> Complex64 {
        self.entries
            .iter()
            .map(|e| e.polynomial.eval(x) * (Complex64::new(0.0, -2.0 * PI) * dot_c(&e.vertex, x)).exp())
            .sum()
    }
}

/// Applies `D` on the Fourier side: a segment `c δ_[a,b]` with direction
/// `u_s` contributes `± c (2πi)^{K-1} Π_{k≠s} (u_k·x)` at `a` (plus) and
/// `b` (minus).
pub fn vertex_polynomial_sum(mu: &SegmentMeasure) -> VertexPolynomialSum {
    let k = mu.directions.len();
    let lead = Complex64::new(0.0, 2.0 * PI).powu(k.saturating_sub(1) as u32);
    let scale = mu
        .segments
        .iter()
        .flat_map(|s| [s.a, s.b])
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(1.0, f64::max);
    let mut acc: Vec<(P2, HomogeneousPoly)> = Vec::new();
    for s in &mu.segments {
        let own = mu.direction_index(s);
        let mut p = HomogeneousPoly { coeffs: vec![lead * s.coefficient] };
        for (j, u) in mu.directions.iter().enumerate() {
            if j != own {
                p = p.mul(&HomogeneousPoly::linear(u));
            }
        }
        for (vertex, sign) in [(s.a, 1.0), (s.b, -1.0)] {
            let term = HomogeneousPoly { coeffs: p.coeffs.iter().map(|c| c * sign).collect() };
            match acc.iter_mut().find(|(v, _)| (v[0] - vertex[0]).hypot(v[1] - vertex[1]) <= 1e-12 * scale) {
                Some((_, q)) => q.coeffs.iter_mut().zip(&term.coeffs).for_each(|(a, b)| *a += b),
                None => acc.push((vertex, term)),
            }
        }
    }
    let biggest = acc.iter().map(|(_, p)| p.scale()).fold(0.0, f64::max);
    let mut entries: Vec<VertexPolynomial> = acc
        .into_iter()
        .filter(|(_, p)| p.scale() > 1e-12 * biggest)
        .map(|(vertex, polynomial)| VertexPolynomial { vertex, polynomial })
        .collect();
    entries.sort_by(|a, b| lex(&a.vertex, &b.vertex));
    VertexPolynomialSum { degree: k.saturating_sub(1), directions: mu.directions.clone(), entries }
}

/// `Π_k 2πi (u_k·x)` over the direction set.
pub fn derivative_symbol(mu: &SegmentMeasure, x: &ComplexVector) -> Complex64 {
    mu.directions.iter().map(|u| Complex64::new(0.0, 2.0 * PI) * dot_c(u, x)).product()
}

/// Largest `|p(γ(t))|` over 256 equispaced real `t` on the trig circle.
pub fn homogeneous_circle_vanishing_check(p: &HomogeneousPoly, circle: &ComplexCircle) -> Result<f64, PlanarError> {
    if p.coeffs.iter().all(|c| c.norm() == 0.0) {
        return Err(PlanarError::ZeroPolynomial);
    }
    if circle.dim() != 2 {
        return Err(PlanarError::NotPlanar(circle.dim()));
    }
    Ok((0..256)
        .map(|k| p.eval(&circle_point_trig(circle, Complex64::new(2.0 * PI * k as f64 / 256.0, 0.0))).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hypercube, polygon, Point};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cv(a: Complex64, b: Complex64) -> ComplexVector {
        ComplexVector::from_vec(vec![a, b])
    }

    fn square() -> PolytopalRegion {
        PolytopalRegion::single(hypercube(2, 0.0, 1.0))
    }

    fn unit_segment() -> SegmentMeasure {
        SegmentMeasure::new(vec![Segment::new([0.0, 0.0], [1.0, 0.0], c(1.0, 0.0)).unwrap()])
    }

    fn coefficient_on(mu: &SegmentMeasure, a: P2, b: P2) -> Option<Complex64> {
        mu.segments.iter().find(|s| s.a == a && s.b == b).map(|s| s.coefficient)
    }

    #[test]
    fn square_derivative_along_axis() {
        let mu = polygon_directional_derivative_allow_parallel(&square(), [1.0, 0.0]).unwrap();
        assert_eq!(mu.segments.len(), 2);
        assert_eq!(coefficient_on(&mu, [0.0, 0.0], [0.0, 1.0]), Some(c(1.0, 0.0)));
        assert_eq!(coefficient_on(&mu, [1.0, 0.0], [1.0, 1.0]), Some(c(-1.0, 0.0)));
        assert!(matches!(
            polygon_directional_derivative(&square(), [1.0, 0.0]),
            Err(PlanarError::DirectionParallelToEdge(..))
        ));
    }

    #[test]
    fn square_derivative_along_diagonal() {
        let mu = polygon_directional_derivative(&square(), [1.0, 1.0]).unwrap();
        assert_eq!(mu.segments.len(), 4);
        for s in &mu.segments {
            assert!((s.coefficient.norm() - 0.5f64.sqrt()).abs() < 1e-15);
        }
        assert_eq!(mu.directions.len(), 2);
    }

    #[test]
    fn unit_segment_transform() {
        let mu = unit_segment();
        let v = segment_measure_transform(&mu, &cv(c(0.5, 0.0), c(0.0, 0.0)));
        assert!((v - c(0.0, -2.0 / PI)).norm() < 1e-15);
        assert!(segment_measure_transform(&mu, &cv(c(1.0, 0.0), c(0.0, 0.0))).norm() < 1e-15);
        assert_eq!(segment_measure_transform(&mu, &cv(c(0.0, 0.0), c(1.0, 0.0))), c(1.0, 0.0));
        // Taylor branch agrees with the direct formula across the switch
        let s = c(1.6e-5, 0.0);
        let w = Complex64::new(0.0, -2.0 * PI) * s;
        assert!((segment_kernel(s) - (w.exp() - 1.0) / w).norm() < 1e-11);
    }

    #[test]
    fn identity_residual_examples() {
        let r = derivative_transform_identity_residual(&square(), [1.0, 1e-3], [0.3, 0.7]).unwrap();
        assert!(r <= 1e-8, "{r}");
        let r = derivative_transform_identity_residual(&square(), [1.0, 1.0], [0.4, -0.4]).unwrap();
        assert!(r <= 1e-8, "{r}");
    }

    #[test]
    fn single_segment_vertex_sum() {
        let s = vertex_polynomial_sum(&unit_segment());
        assert_eq!(s.degree, 0);
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].vertex, [0.0, 0.0]);
        assert_eq!(s.entries[0].polynomial.coeffs, vec![c(1.0, 0.0)]);
        assert_eq!(s.entries[1].polynomial.coeffs, vec![c(-1.0, 0.0)]);
    }

    #[test]
    fn square_vertex_sum_is_homogeneous() {
        let mu = polygon_directional_derivative(&square(), [1.0, 1.0]).unwrap();
        let s = vertex_polynomial_sum(&mu);
        assert_eq!(s.entries.len(), 4);
        assert_eq!(s.degree, 1);
        let x = cv(c(0.3, 0.1), c(-0.7, 0.2));
        let lam = c(1.7, -0.4);
        for e in &s.entries {
            let p = &e.polynomial;
            let scaled = p.eval(&x.map(|v| v * lam));
            assert!((scaled - lam * p.eval(&x)).norm() <= 1e-10 * scaled.norm().max(1e-300));
        }
        let lhs = s.eval(&x);
        let rhs = derivative_symbol(&mu, &x) * segment_measure_transform(&mu, &x);
        assert!((lhs - rhs).norm() < 1e-10, "{lhs} {rhs}");
    }

    #[test]
    fn circle_check_examples() {
        let circle = ComplexCircle::centered(2, c(1.0, 0.0)).unwrap();
        let x1 = HomogeneousPoly { coeffs: vec![c(1.0, 0.0), c(0.0, 0.0)] };
        assert!((homogeneous_circle_vanishing_check(&x1, &circle).unwrap() - 1.0).abs() < 1e-15);
        let sphere = HomogeneousPoly { coeffs: vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)] };
        assert!((homogeneous_circle_vanishing_check(&sphere, &circle).unwrap() - 1.0).abs() < 1e-14);
        let g = circle_point_trig(&circle, c(0.4, 1.3));
        assert!((sphere.eval(&g) - c(1.0, 0.0)).norm() < 1e-13);
        let zero = HomogeneousPoly { coeffs: vec![c(0.0, 0.0); 3] };
        assert_eq!(homogeneous_circle_vanishing_check(&zero, &circle), Err(PlanarError::ZeroPolynomial));
    }

    #[test]
    fn square_measure_nonvanishing_on_circles() {
        let mu = polygon_directional_derivative(&square(), [1.0, 0.37]).unwrap();
        for r in [0.3, 0.5, 1.0, 1.7] {
            let circle = ComplexCircle::centered(2, c(r, 0.0)).unwrap();
            let min = (0..1024)
                .map(|k| segment_measure_transform(&mu, &circle_point_trig(&circle, c(2.0 * PI * k as f64 / 1024.0, 0.0))).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(min > 0.0, "radius {r}");
        }
    }

    fn triangle(p: [f64; 6]) -> Option<PolytopalRegion> {
        let pts = vec![Point::from_vec(vec![p[0], p[1]]), Point::from_vec(vec![p[2], p[3]]), Point::from_vec(vec![p[4], p[5]])];
        let area = ((p[2] - p[0]) * (p[5] - p[1]) - (p[4] - p[0]) * (p[3] - p[1])).abs() / 2.0;
        if area < 0.05 {
            return None;
        }
        polygon(pts).ok().map(PolytopalRegion::single)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn identity_on_random_triangles(p in proptest::array::uniform6(-1.5..1.5f64), theta in 0.0..PI, x in proptest::array::uniform2(-2.0..2.0f64)) {
            if let Some(region) = triangle(p) {
                let u = [theta.cos(), theta.sin()];
                match derivative_transform_identity_residual(&region, u, x) {
                    Ok(r) => prop_assert!(r <= 1e-8, "residual {}", r),
                    Err(PlanarError::Transform(TransformError::NearSingular { .. })) | Err(PlanarError::DirectionParallelToEdge(..)) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }

        #[test]
        fn vertex_sum_matches_fourier_side(p in proptest::array::uniform6(-1.5..1.5f64), theta in 0.0..PI, xr in proptest::array::uniform2(-2.0..2.0f64), xi in proptest::array::uniform2(-0.5..0.5f64)) {
            if let Some(region) = triangle(p) {
                if let Ok(mu) = polygon_directional_derivative(&region, [theta.cos(), theta.sin()]) {
                    let s = vertex_polynomial_sum(&mu);
                    prop_assert_eq!(s.degree, mu.directions.len() - 1);
                    let x = cv(c(xr[0], xi[0]), c(xr[1], xi[1]));
                    let rhs = derivative_symbol(&mu, &x) * segment_measure_transform(&mu, &x);
                    prop_assert!((s.eval(&x) - rhs).norm() <= 1e-8 * rhs.norm().max(1.0));
                    let lam = 0.3 + theta;
                    for e in &s.entries {
                        let a = e.polynomial.eval(&x.map(|v| v * lam));
                        let b = e.polynomial.eval(&x) * lam.powi(s.degree as i32);
                        prop_assert!((a - b).norm() <= 1e-10 * b.norm().max(1e-12));
                    }
                }
            }
        }

        #[test]
        fn segment_transform_is_entire(x0 in -2.0..2.0f64, y0 in -1.0..1.0f64, x1 in -2.0..2.0f64, y1 in -1.0..1.0f64) {
            let mu = polygon_directional_derivative(&square(), [0.8, 0.6]).unwrap();
            let z = cv(c(x0, y0), c(x1, y1));
            let h = 1e-5;
            for k in 0..2 {
                let mut e = cv(c(0.0, 0.0), c(0.0, 0.0));
                e[k] = c(h, 0.0);
                let dx = (segment_measure_transform(&mu, &(&z + &e)) - segment_measure_transform(&mu, &(&z - &e))) / (2.0 * h);
                e[k] = c(0.0, h);
                let dy = (segment_measure_transform(&mu, &(&z + &e)) - segment_measure_transform(&mu, &(&z - &e))) / (2.0 * h);
                prop_assert!((dy - c(0.0, 1.0) * dx).norm() <= 1e-6 * dx.norm().max(1.0));
            }
        }

        #[test]
        fn linearity(cr in -2.0..2.0f64, ci in -2.0..2.0f64, x0 in -2.0..2.0f64, x1 in -2.0..2.0f64) {
            let a = polygon_directional_derivative(&square(), [0.8, 0.6]).unwrap();
            let b = unit_segment();
            let x = cv(c(x0, 0.1), c(x1, -0.2));
            let k = c(cr, ci);
            let lhs = segment_measure_transform(&a.scaled(k), &x);
            prop_assert!((lhs - k * segment_measure_transform(&a, &x)).norm() <= 1e-12 * lhs.norm().max(1.0));
            let sum = segment_measure_transform(&a.concat(&b), &x);
            let parts = segment_measure_transform(&a, &x) + segment_measure_transform(&b, &x);
            prop_assert!((sum - parts).norm() <= 1e-12 * sum.norm().max(1.0));
        }
    }
}
