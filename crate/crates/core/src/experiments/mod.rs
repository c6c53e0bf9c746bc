//! End-to-end experiments: circle and curve scans, dominance runs, the disk
//! versus polygon contrast, and curve classification reports.

mod bessel;

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{
    affine_hull_containment_with, restrict_bb_to_curve, vanishing_polynomial_rank, ComplexCircle, CurveError, CurveKind, HullVerdict,
    ParametricCurve,
};
use crate::expsum::{brownawell_pair_check, min_modulus_scan, verify_dominance, DominanceReport, ExpSumError, FlaggedPair, ScanResult};
use crate::geometry::{apply_rotation, hypercube, polygon, random_rotation, regular_polygon, GeometryError, Point, PolytopalRegion, VertexConeDecomposition};
use crate::transform::{quadrature_transform, ComplexVector, TransformError};

pub use bessel::{bessel_j1, disk_transform_profile, first_zero_j1, SpecialError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    ExpSum(#[from] ExpSumError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("{0}")]
    InvalidInput(String),
}

/// Smallest `|φ|` a non-vanishing scan must exhibit.
pub const SCAN_FLOOR: f64 = 1e-6;
/// Floor for the square on the disk's vanishing sphere.
pub const DEMO_FLOOR: f64 = 1e-4;
/// Ceiling for the disk profile at its zero.
pub const DISK_CEILING: f64 = 1e-10;

pub fn unit_square() -> PolytopalRegion {
    PolytopalRegion::single(hypercube(2, 0.0, 1.0))
}

/// `[0,2]×[0,1] ∪ [0,1]×[1,2]`.
pub fn l_shape() -> PolytopalRegion {
    let p = |x: f64, y: f64| Point::from_vec(vec![x, y]);
    let a = polygon(vec![p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(0.0, 1.0)]).expect("rectangle");
    let b = polygon(vec![p(0.0, 1.0), p(1.0, 1.0), p(1.0, 2.0), p(0.0, 2.0)]).expect("square");
    PolytopalRegion::new(vec![a, b]).expect("interior-disjoint parts")
}

/// Regular `n`-gon inscribed in the unit circle.
pub fn disk_polygon(n: usize) -> PolytopalRegion {
    PolytopalRegion::single(regular_polygon(n, 1.0))
}

/// Equispaced parameters `lo + (hi - lo) i / n`, `i < n`.
pub fn real_grid(lo: f64, hi: f64, n: usize) -> Vec<Complex64> {
    (0..n).map(|i| Complex64::new(lo + (hi - lo) * i as f64 / n as f64, 0.0)).collect()
}

/// Summary of one scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub label: String,
    pub points: usize,
    pub skipped: usize,
    pub continued: usize,
    pub min_modulus: f64,
    pub t_min: Complex64,
}

impl ScanSummary {
    pub fn new(label: impl Into<String>, scan: &ScanResult) -> Self {
        Self {
            label: label.into(),
            points: scan.records.len() + scan.skipped.len(),
            skipped: scan.skipped.len(),
            continued: scan.records.iter().filter(|r| r.continued).count(),
            min_modulus: scan.min_modulus,
            t_min: scan.t_min,
        }
    }
}

/// A labelled scan, kept whole for trace output.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledScan {
    pub summary: ScanSummary,
    pub scan: ScanResult,
}

/// Scans the region's transform over `n` points of the real slice
/// `t ∈ [0, 2π)` of a trigonometric circle.
pub fn circle_scan(region: &PolytopalRegion, circle: &ComplexCircle, n: usize) -> Result<ScanResult, ExperimentError> {
    curve_scan(region, &ParametricCurve::trig_circle(circle.clone()), n)
}

/// Scans the region's transform over `n` points of the curve's natural real
/// window.
pub fn curve_scan(region: &PolytopalRegion, curve: &ParametricCurve, n: usize) -> Result<ScanResult, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::InvalidInput("grid needs at least 2 points".into()));
    }
    let dec = VertexConeDecomposition::new(region)?;
    let sum = restrict_bb_to_curve(&dec, curve)?;
    let (lo, hi) = curve.default_window();
    Ok(min_modulus_scan(&sum, &real_grid(lo, hi, n))?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceExperiment {
    /// Seed of the rotation applied when the raw region had no unique
    /// dominant vertex.
    pub rotation_seed: Option<u64>,
    pub report: DominanceReport,
    /// Frequencies of the (possibly rotated) region, in term order.
    pub frequencies: Vec<Vec<f64>>,
}

/// Runs [`verify_dominance`] on `y_grid`. If the region's vertices do not
/// have a unique dominant projection, the region is rotated with
/// `random_rotation(seed + k, d)` for `k = 0, 1, …` until they do.
pub fn dominance_experiment(region: &PolytopalRegion, circle: &ComplexCircle, y_grid: &[f64], seed: u64) -> Result<DominanceExperiment, ExperimentError> {
    let curve = ParametricCurve::trig_circle(circle.clone());
    let run = |r: &PolytopalRegion| -> Result<(DominanceReport, Vec<Vec<f64>>), ExperimentError> {
        let sum = restrict_bb_to_curve(&VertexConeDecomposition::new(r)?, &curve)?;
        let freqs = sum.frequencies().iter().map(|v| v.iter().copied().collect()).collect();
        Ok((verify_dominance(&sum, y_grid)?, freqs))
    };
    match run(region) {
        Ok((report, frequencies)) => return Ok(DominanceExperiment { rotation_seed: None, report, frequencies }),
        Err(ExperimentError::ExpSum(ExpSumError::NoUniqueDominant { .. })) => {}
        Err(e) => return Err(e),
    }
    let mut last = None;
    for k in 0..16 {
        let s = seed.wrapping_add(k);
        let rotated = apply_rotation(region, &random_rotation(s, region.dim()));
        match run(&rotated) {
            Ok((report, frequencies)) => return Ok(DominanceExperiment { rotation_seed: Some(s), report, frequencies }),
            Err(e @ ExperimentError::ExpSum(ExpSumError::NoUniqueDominant { .. })) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one rotation tried"))
}

/// `n` equispaced heights from `min(0.5, y_max)` to `y_max`.
pub fn y_grid(y_max: f64, n: usize) -> Vec<f64> {
    let start = 0.5f64.min(y_max);
    if n < 2 {
        return vec![y_max];
    }
    (0..n).map(|i| start + (y_max - start) * i as f64 / (n - 1) as f64).collect()
}

/// Disk profile against the transform of the inscribed polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolygonCrossCheck {
    pub sides: usize,
    pub rho: f64,
    pub disk_profile: f64,
    pub polygon_value: Complex64,
    pub difference: f64,
}

pub fn polygon_disk_cross_check(sides: usize, rho: f64) -> Result<PolygonCrossCheck, ExperimentError> {
    let disk_profile = disk_transform_profile(rho)?;
    let z = ComplexVector::from_vec(vec![Complex64::new(rho, 0.0), Complex64::new(0.0, 0.0)]);
    let polygon_value = quadrature_transform(&disk_polygon(sides), &z, 1e-10)?;
    Ok(PolygonCrossCheck { sides, rho, disk_profile, polygon_value, difference: (polygon_value - disk_profile).norm() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoConfig {
    pub seed: u64,
    pub real_points: usize,
    pub complex_circles: usize,
    pub complex_points: usize,
    /// Whether the region's scan floor is asserted (false for the polygonal
    /// disk approximation, whose transform nearly vanishes there).
    pub assert_region: bool,
}

impl Default for DemoConfig {
    fn default() -> Self {
        Self { seed: 0, real_points: 4096, complex_circles: 8, complex_points: 512, assert_region: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PompeiuReport {
    pub region: String,
    pub seed: u64,
    pub j1_first_zero: f64,
    pub rho_star: f64,
    pub disk_profile_at_rho_star: f64,
    pub disk_ceiling: f64,
    pub polygon_cross_check: PolygonCrossCheck,
    pub scans: Vec<ScanSummary>,
    pub radii: Vec<Complex64>,
    pub min_modulus: f64,
    pub floor: f64,
    pub region_asserted: bool,
    pub passed: bool,
}

/// Contrasts the disk, whose transform vanishes on the real circle of radius
/// `ρ* = j_{1,1} / 2π`, with a polytopal region scanned on that circle and on
/// complex circles of radius `ρ* e^{iθ}` with seeded random `θ`.
pub fn pompeiu_demo(region: &PolytopalRegion, label: &str, cfg: &DemoConfig) -> Result<(PompeiuReport, Vec<LabeledScan>), ExperimentError> {
    if region.dim() != 2 {
        return Err(ExperimentError::InvalidInput(format!("demo needs a planar region, got dimension {}", region.dim())));
    }
    let j11 = first_zero_j1();
    let rho_star = j11 / (2.0 * PI);
    let disk = disk_transform_profile(rho_star)?;
    let cross = polygon_disk_cross_check(64, 0.3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut radii = vec![Complex64::new(rho_star, 0.0)];
    radii.extend((0..cfg.complex_circles).map(|_| Complex64::from_polar(rho_star, rng.gen_range(0.0..2.0 * PI))));
    let mut scans = Vec::with_capacity(radii.len());
    for (k, r) in radii.iter().enumerate() {
        let circle = ComplexCircle::centered(2, *r)?;
        let n = if k == 0 { cfg.real_points } else { cfg.complex_points };
        let scan = circle_scan(region, &circle, n)?;
        let name = if k == 0 { "real".to_string() } else { format!("complex_{k}") };
        scans.push(LabeledScan { summary: ScanSummary::new(name, &scan), scan });
    }
    let min_modulus = scans.iter().map(|s| s.summary.min_modulus).fold(f64::INFINITY, f64::min);
    let disk_ok = disk.abs() <= DISK_CEILING;
    let passed = disk_ok && (!cfg.assert_region || min_modulus >= DEMO_FLOOR);
    let report = PompeiuReport {
        region: label.to_string(),
        seed: cfg.seed,
        j1_first_zero: j11,
        rho_star,
        disk_profile_at_rho_star: disk,
        disk_ceiling: DISK_CEILING,
        polygon_cross_check: cross,
        scans: scans.iter().map(|s| s.summary.clone()).collect(),
        radii,
        min_modulus,
        floor: DEMO_FLOOR,
        region_asserted: cfg.assert_region,
        passed,
    };
    Ok((report, scans))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingRank {
    pub degree: usize,
    pub samples: usize,
    pub min_singular_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveCheckReport {
    pub curve_kind: CurveKind,
    /// Declared order of the parametrization (taken on trust).
    pub declared_order: f64,
    pub hull: HullVerdict,
    pub brownawell_pairs: Vec<FlaggedPair>,
    /// Whether the curve avoids affine hyperplanes and no exponent
    /// difference is a low-degree polynomial; without this the scan is
    /// informational only.
    pub hypothesis_holds: bool,
    pub vanishing_rank: Option<VanishingRank>,
    pub scan: ScanSummary,
    pub floor: f64,
    pub passed: bool,
}

/// Degree probed by the vanishing-polynomial witness for built-in curves.
pub const VANISHING_DEGREE: usize = 5;

/// Classifies the curve, then scans the region's restricted transform on
/// `n` points of `t ∈ [0, 1)`.
pub fn curve_check(region: &PolytopalRegion, curve: &ParametricCurve, n: usize, rank_threshold: f64) -> Result<(CurveCheckReport, ScanResult), ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::InvalidInput("grid needs at least 2 points".into()));
    }
    let hull = affine_hull_containment_with(curve, 8 * curve.dim(), rank_threshold)?;
    let dec = VertexConeDecomposition::new(region)?;
    let frequencies: Vec<Point> = dec.entries().iter().map(|e| e.vertex.clone()).collect();
    let brownawell_pairs = brownawell_pair_check(curve, &frequencies, curve.order)?;
    let vanishing_rank = match curve.kind() {
        CurveKind::Analytic => {
            let monomials = (VANISHING_DEGREE + 1) * (VANISHING_DEGREE + 2) / 2;
            let samples = 4 * monomials;
            Some(VanishingRank {
                degree: VANISHING_DEGREE,
                samples,
                min_singular_value: vanishing_polynomial_rank(curve, VANISHING_DEGREE, samples)?,
            })
        }
        _ => None,
    };
    let sum = restrict_bb_to_curve(&dec, curve)?;
    let scan = min_modulus_scan(&sum, &real_grid(0.0, 1.0, n))?;
    let hypothesis_holds = !hull.is_contained() && brownawell_pairs.is_empty();
    let summary = ScanSummary::new("curve", &scan);
    let passed = !hypothesis_holds || summary.min_modulus >= SCAN_FLOOR;
    Ok((
        CurveCheckReport {
            curve_kind: curve.kind(),
            declared_order: curve.order,
            hull,
            brownawell_pairs,
            hypothesis_holds,
            vanishing_rank,
            scan: summary,
            floor: SCAN_FLOOR,
            passed,
        },
        scan,
    ))
}
