//! Exponential sums `φ(t) = Σ_j c_j(t) exp(-2πi v_j·γ(t))` along a curve.

mod checks;
mod dominance;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::curves::{CurveError, CurveKind, ParametricCurve, RationalFunction, POLE_TOL};
use crate::geometry::{Point, SimplicialCone};
use crate::transform::{cone_sum, pair, singular_threshold, ComplexVector, EXPONENT_CAP, SINGULAR_REL_TOL};

pub use checks::{
    brownawell_pair_check, decay_lower_bound_check, min_modulus_scan, DecayWitness, FlaggedPair, ScanRecord, ScanResult,
};
pub use dominance::{
    cosine_asymptotics, cosine_sine_asymptotics, dominant_term, growth_model_ratio, growth_rates, verify_dominance, AsymptoticModel,
    Dominance, DominanceReport, RatioSample,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpSumError {
    #[error("parameter {0} is a pole")]
    PoleAtParameter(Complex64),
    #[error("coefficient of term {term} is near-singular at t = {t} (|w·γ(t)| = {modulus:e})")]
    NearSingular { term: usize, t: Complex64, modulus: f64 },
    #[error("exponent real part {exponent} exceeds the overflow guard")]
    OverflowGuard { exponent: f64 },
    #[error("growth analysis needs a trigonometric circle, got {0:?}")]
    WrongCurveKind(CurveKind),
    #[error("no unique dominant growth rate (margin {margin:e})")]
    NoUniqueDominant { margin: f64 },
    #[error("every grid point is a pole")]
    AllPoles,
    #[error("sum vanishes identically on the grid")]
    IdenticallyZeroOnGrid,
    #[error("no regular averaging circle around t = {0}")]
    NoRegularCircle(Complex64),
    #[error("{0}")]
    InvalidInput(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Coefficient of one exponential term.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Constant(Complex64),
    /// Function of the curve parameter `t`.
    Rational(RationalFunction),
    /// Vertex cone sum `Σ_j |det K_j| / ((2πi)^d Π_k (w·z))` at `z = γ(t)`.
    ConeSum(Vec<SimplicialCone>),
}

impl Coefficient {
    /// Value at parameter `t` with `z = γ(t)`. A near-singular cone sum
    /// reports the smallest factor as `Err(Some(modulus))`, a pole as
    /// `Err(None)`.
    fn eval(&self, t: Complex64, z: &ComplexVector, singular_rel: f64) -> Result<Complex64, Option<f64>> {
        match self {
            Coefficient::Constant(c) => Ok(*c),
            Coefficient::Rational(r) => r.eval(t, POLE_TOL).ok_or(None),
            Coefficient::ConeSum(cones) => {
                cone_sum(cones, z, singular_threshold(z, singular_rel)).map(|(v, _)| v).map_err(|(_, _, m)| Some(m))
            }
        }
    }

    fn min_factor(&self, z: &ComplexVector) -> f64 {
        match self {
            Coefficient::ConeSum(cones) => cones
                .iter()
                .flat_map(|c| c.generators.iter())
                .map(|w| pair(w, z).norm())
                .fold(f64::INFINITY, f64::min),
            _ => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpTerm {
    pub frequency: Point,
    pub coefficient: Coefficient,
}

/// Term removed at construction because its coefficient vanished on the
/// sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DroppedTerm {
    pub frequency: Point,
    pub max_modulus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialSum {
    terms: Vec<ExpTerm>,
    curve: ParametricCurve,
    dropped: Vec<DroppedTerm>,
}

const ZERO_SAMPLES: usize = 256;

impl ExponentialSum {
    /// Builds the sum, dropping terms whose coefficient has modulus below
    /// `1e-12 * scale` at every one of 256 samples of the curve's window.
    pub fn new(terms: Vec<ExpTerm>, curve: ParametricCurve) -> Self {
        let (lo, hi) = curve.default_window();
        let samples: Vec<(Complex64, ComplexVector)> = (0..ZERO_SAMPLES)
            .filter_map(|i| {
                let t = Complex64::new(lo + (hi - lo) * (i as f64 + 0.5) / ZERO_SAMPLES as f64, 0.0);
                curve.eval(t).ok().map(|z| (t, z))
            })
            .collect();
        let maxima: Vec<f64> = terms
            .iter()
            .map(|term| {
                samples
                    .iter()
                    .filter_map(|(t, z)| term.coefficient.eval(*t, z, SINGULAR_REL_TOL).ok())
                    .map(|c| c.norm())
                    .fold(0.0, f64::max)
            })
            .collect();
        let scale = maxima.iter().copied().fold(0.0, f64::max);
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for (term, m) in terms.into_iter().zip(maxima) {
            if !samples.is_empty() && m < 1e-12 * scale {
                dropped.push(DroppedTerm { frequency: term.frequency, max_modulus: m });
            } else {
                kept.push(term);
            }
        }
        Self { terms: kept, curve, dropped }
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn curve(&self) -> &ParametricCurve {
        &self.curve
    }

    pub fn dropped(&self) -> &[DroppedTerm] {
        &self.dropped
    }

    pub fn frequencies(&self) -> Vec<Point> {
        self.terms.iter().map(|t| t.frequency.clone()).collect()
    }

    pub fn has_distinct_frequencies(&self) -> bool {
        let f = self.frequencies();
        (0..f.len()).all(|i| (i + 1..f.len()).all(|j| (&f[i] - &f[j]).norm() > 1e-12 * (1.0 + f[i].norm())))
    }

    fn point(&self, t: Complex64) -> Result<ComplexVector, ExpSumError> {
        self.curve.eval(t).map_err(|e| match e {
            CurveError::PoleAtParameter(t) => ExpSumError::PoleAtParameter(t),
            other => ExpSumError::Curve(other),
        })
    }

    /// `-2πi v·z`.
    fn exponent(v: &Point, z: &ComplexVector) -> Complex64 {
        Complex64::new(0.0, -2.0 * PI) * pair(v, z)
    }

    /// Logarithms of the term moduli, `ln|c_j(t)| + Re(-2πi v_j·γ(t))`,
    /// which stay finite where the terms themselves would overflow.
    pub(crate) fn log_moduli(&self, t: Complex64) -> Result<Vec<f64>, ExpSumError> {
        let z = self.point(t)?;
        self.terms
            .iter()
            .enumerate()
            .map(|(j, term)| {
                let c = term.coefficient.eval(t, &z, SINGULAR_REL_TOL).map_err(|e| self.coef_error(j, t, e))?;
                Ok(c.norm().ln() + Self::exponent(&term.frequency, &z).re)
            })
            .collect()
    }

    fn coef_error(&self, term: usize, t: Complex64, e: Option<f64>) -> ExpSumError {
        match e {
            Some(modulus) => ExpSumError::NearSingular { term, t, modulus },
            None => ExpSumError::PoleAtParameter(t),
        }
    }

    fn terms_at(&self, t: Complex64, z: &ComplexVector, singular_rel: f64) -> Result<Vec<Complex64>, ExpSumError> {
        self.terms
            .iter()
            .enumerate()
            .map(|(j, term)| {
                let c = term.coefficient.eval(t, z, singular_rel).map_err(|e| self.coef_error(j, t, e))?;
                let e = Self::exponent(&term.frequency, z);
                if e.re.abs() > EXPONENT_CAP {
                    return Err(ExpSumError::OverflowGuard { exponent: e.re });
                }
                Ok(c * e.exp())
            })
            .collect()
    }

    /// Individual term values `c_j(t) exp(-2πi v_j·γ(t))`.
    pub fn evaluate_terms(&self, t: Complex64) -> Result<Vec<Complex64>, ExpSumError> {
        let z = self.point(t)?;
        self.terms_at(t, &z, SINGULAR_REL_TOL)
    }

    fn min_factor(&self, z: &ComplexVector) -> f64 {
        self.terms.iter().map(|t| t.coefficient.min_factor(z)).fold(f64::INFINITY, f64::min)
    }
}

/// `φ(t)`.
pub fn evaluate(s: &ExponentialSum, t: Complex64) -> Result<Complex64, ExpSumError> {
    Ok(s.evaluate_terms(t)?.into_iter().sum())
}

/// Value of `φ` that is valid also where individual cone-sum coefficients
/// are singular.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuedValue {
    pub value: Complex64,
    /// Term values; `None` where the value came from a circle mean, since
    /// single terms are not defined there.
    pub terms: Option<Vec<Complex64>>,
}

/// Like [`evaluate`], but near a singular hyperplane of some cone sum the
/// value is the trapezoid mean of `φ` over a small circle around `t` in the
/// parameter plane (`φ` itself is analytic there when the sum comes from a
/// polytopal region).
pub fn evaluate_continued(s: &ExponentialSum, t: Complex64) -> Result<ContinuedValue, ExpSumError> {
    let z = s.point(t)?;
    let switch = singular_threshold(&z, 1e-6);
    if s.min_factor(&z) >= switch {
        let terms = s.terms_at(t, &z, SINGULAR_REL_TOL)?;
        return Ok(ContinuedValue { value: terms.iter().sum(), terms: Some(terms) });
    }
    const NODES: usize = 32;
    for attempt in 0..6 {
        let delta = 0.01 * [1.0, 0.73, 0.61, 0.87, 0.53, 0.79][attempt];
        let rot = 0.37 * attempt as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut ok = true;
        for k in 0..NODES {
            let tk = t + Complex64::from_polar(delta, rot + 2.0 * PI * (k as f64 + 0.5) / NODES as f64);
            let zk = match s.curve.eval(tk) {
                Ok(zk) => zk,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            if s.min_factor(&zk) < switch {
                ok = false;
                break;
            }
            acc += s.terms_at(tk, &zk, 0.0)?.into_iter().sum::<Complex64>();
        }
        if ok {
            return Ok(ContinuedValue { value: acc / NODES as f64, terms: None });
        }
    }
    Err(ExpSumError::NoRegularCircle(t))
}
