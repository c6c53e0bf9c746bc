use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate_continued, ExpSumError, ExponentialSum};
use crate::curves::{Builtin, CurveShape, ParametricCurve, Poly};
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub index: usize,
    pub t: Complex64,
    pub value: Complex64,
    pub modulus: f64,
    /// Per-term moduli; empty where the value came from a circle mean.
    pub term_moduli: Vec<f64>,
    pub continued: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub t_min: Complex64,
    pub min_modulus: f64,
    pub records: Vec<ScanRecord>,
    /// Grid indices skipped as poles.
    pub skipped: Vec<usize>,
}

/// Evaluates `φ` on every grid point (in parallel), skipping poles, and
/// reports the smallest modulus. Records keep grid order.
pub fn min_modulus_scan(s: &ExponentialSum, t_grid: &[Complex64]) -> Result<ScanResult, ExpSumError> {
    let results: Vec<Result<Option<ScanRecord>, ExpSumError>> = t_grid
        .par_iter()
        .enumerate()
        .map(|(index, &t)| match evaluate_continued(s, t) {
            Ok(v) => Ok(Some(ScanRecord {
                index,
                t,
                value: v.value,
                modulus: v.value.norm(),
                continued: v.terms.is_none(),
                term_moduli: v.terms.map(|ts| ts.iter().map(|c| c.norm()).collect()).unwrap_or_default(),
            })),
            Err(ExpSumError::PoleAtParameter(_)) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut records = Vec::with_capacity(t_grid.len());
    let mut skipped = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r? {
            Some(rec) => records.push(rec),
            None => skipped.push(i),
        }
    }
    let best = records
        .iter()
        .min_by(|a, b| a.modulus.total_cmp(&b.modulus))
        .ok_or(ExpSumError::AllPoles)?;
    Ok(ScanResult { t_min: best.t, min_modulus: best.modulus, records: records.clone(), skipped })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayWitness {
    /// Rate `c = -max_j Re(μ_j a)`.
    pub rate: f64,
    /// Largest `e^{ct} |S(b + ta)|` over the top decade of the grid.
    pub witness: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Lower-bound witness for `limsup e^{ct} |S(b + ta)|` where
/// `S(w) = Σ c_j e^{μ_j w}`: the maximum over grid points in
/// `[t_max / 10, t_max]`.
pub fn decay_lower_bound_check(
    coefficients: &[Complex64],
    exponents: &[Complex64],
    a: Complex64,
    b: Complex64,
    t_grid: &[f64],
) -> Result<DecayWitness, ExpSumError> {
    if coefficients.len() != exponents.len() || coefficients.is_empty() {
        return Err(ExpSumError::InvalidInput("coefficients and exponents must be nonempty and of equal length".into()));
    }
    if t_grid.is_empty() {
        return Err(ExpSumError::InvalidInput("empty grid".into()));
    }
    let slopes: Vec<Complex64> = exponents.iter().map(|m| m * a).collect();
    // absorb the offset into the coefficients
    let absorbed: Vec<Complex64> = coefficients.iter().zip(exponents).map(|(c, m)| c * (m * b).exp()).collect();
    let rate = -slopes.iter().map(|s| s.re).fold(f64::NEG_INFINITY, f64::max);
    let scaled = |t: f64| -> f64 {
        absorbed.iter().zip(&slopes).map(|(c, s)| c * ((s + rate) * t).exp()).sum::<Complex64>().norm()
    };
    let values: Vec<f64> = t_grid.iter().map(|&t| scaled(t)).collect();
    let mass: f64 = absorbed.iter().map(|c| c.norm()).sum();
    if values.iter().all(|&v| v <= 1e-14 * mass) {
        return Err(ExpSumError::IdenticallyZeroOnGrid);
    }
    let t_max = t_grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let witness = t_grid
        .iter()
        .zip(&values)
        .filter(|(&t, _)| t >= t_max / 10.0)
        .map(|(_, &v)| v)
        .fold(0.0, f64::max);
    let threshold = 1e-8 * coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
    Ok(DecayWitness { rate, witness, threshold, passed: witness > threshold })
}

/// A pair of frequencies whose exponent difference `-2πi (v_k - v_l)·γ(t)` is
/// a polynomial in `t` of degree at most `ρ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlaggedPair {
    pub k: usize,
    pub l: usize,
    /// Polynomial coefficients, lowest degree first.
    pub polynomial: Vec<Complex64>,
}

const COEFF_TOL: f64 = 1e-10;

/// Tests every pair of frequencies for a polynomial exponent difference of
/// degree at most `rho`.
pub fn brownawell_pair_check(curve: &ParametricCurve, frequencies: &[Point], rho: f64) -> Result<Vec<FlaggedPair>, ExpSumError> {
    let n = frequencies.len();
    let minus_two_pi_i = Complex64::new(0.0, -2.0 * PI);
    let diameter = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (&frequencies[i] - &frequencies[j]).norm())
        .fold(0.0, f64::max);
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            let delta = &frequencies[k] - &frequencies[l];
            let poly = match &curve.shape {
                CurveShape::TrigCircle(c) => {
                    let planar = delta[c.axes.0].hypot(delta[c.axes.1]);
                    if planar < crate::geometry::MERGE_TOL * diameter || planar == 0.0 {
                        let constant: Complex64 = delta.iter().zip(c.center.iter()).map(|(d, a)| a * *d).sum();
                        Some(Poly::constant(minus_two_pi_i * constant))
                    } else {
                        None
                    }
                }
                CurveShape::Analytic(Builtin::T2Sin) => {
                    (delta.amax() <= 1e-12 * diameter.max(1.0)).then(|| Poly::constant(Complex64::new(0.0, 0.0)))
                }
                CurveShape::RationalCircle(_) | CurveShape::Rational(_) => {
                    let comps = curve.rational_components().expect("rational curve");
                    let mut num = Poly::constant(Complex64::new(0.0, 0.0));
                    let mut den = Poly::real(&[1.0]);
                    for (j, r) in comps.iter().enumerate() {
                        // num/den + Δ_j N_j/D_j
                        num = num.mul(&r.den).add(&den.mul(&r.num).scaled(Complex64::new(delta[j], 0.0)));
                        den = den.mul(&r.den);
                    }
                    let num = num.scaled(minus_two_pi_i);
                    if num.scale() == 0.0 {
                        Some(Poly::constant(Complex64::new(0.0, 0.0)))
                    } else {
                        let (q, r) = num.divrem(&den, COEFF_TOL);
                        let exact = r.scale() <= COEFF_TOL * num.scale();
                        let q = q.trimmed(COEFF_TOL);
                        let deg = q.degree(COEFF_TOL).unwrap_or(0);
                        (exact && deg as f64 <= rho).then_some(q)
                    }
                }
            };
            if let Some(p) = poly {
                out.push(FlaggedPair { k, l, polynomial: p.coeffs });
            }
        }
    }
    Ok(out)
}
