use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{evaluate, ExpSumError, ExponentialSum};
use crate::curves::{ComplexCircle, CurveShape};
use crate::geometry::Point;

/// Leading-order model of a trigonometric expression in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticModel {
    pub modulus: f64,
    pub phase: f64,
}

/// `|cos t| ≈ e^y / 2`, `Arg cos t ≈ -x` for `t = x + iy`, `y → +∞`.
pub fn cosine_asymptotics(t: Complex64) -> AsymptoticModel {
    AsymptoticModel { modulus: t.im.exp() / 2.0, phase: -t.re }
}

/// Model for `A sin t + B cos t`: modulus `|B + iA| e^y / 2`, phase
/// `-x + Arg(B + iA)`.
pub fn cosine_sine_asymptotics(a: Complex64, b: Complex64, t: Complex64) -> AsymptoticModel {
    let k = b + Complex64::new(0.0, 1.0) * a;
    AsymptoticModel { modulus: k.norm() * t.im.exp() / 2.0, phase: -t.re + k.arg() }
}

fn trig_circle(s: &ExponentialSum) -> Result<&ComplexCircle, ExpSumError> {
    match &s.curve().shape {
        CurveShape::TrigCircle(c) => Ok(c),
        _ => Err(ExpSumError::WrongCurveKind(s.curve().kind())),
    }
}

/// `v·e_1 + i v·e_2` for the circle's plane.
fn planar(v: &Point, c: &ComplexCircle) -> Complex64 {
    Complex64::new(v[c.axes.0], v[c.axes.1])
}

fn rates_for(freqs: &[Point], c: &ComplexCircle) -> Vec<f64> {
    freqs.iter().map(|v| PI * c.radius.norm() * planar(v, c).norm()).collect()
}

/// Exponential growth rates `π|R| |v_j·e_1 + i v_j·e_2|` of the terms along
/// vertical lines of a trigonometric circle.
pub fn growth_rates(s: &ExponentialSum) -> Result<Vec<f64>, ExpSumError> {
    let c = trig_circle(s)?;
    Ok(rates_for(&s.frequencies(), c))
}

/// Index of the largest rate and the margin `1 - second / largest`.
fn top(rates: &[f64]) -> (usize, f64) {
    let (mut best, mut second) = (0usize, f64::NEG_INFINITY);
    for (j, &r) in rates.iter().enumerate().skip(1) {
        if r > rates[best] {
            second = rates[best];
            best = j;
        } else if r > second {
            second = r;
        }
    }
    let margin = if rates.len() < 2 {
        1.0
    } else if rates[best] > 0.0 {
        1.0 - second / rates[best]
    } else {
        0.0
    };
    (best, margin)
}

/// Outcome of [`dominant_term`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dominance {
    pub index: usize,
    /// Real part aligning the dominant exponent with the positive reals.
    pub x_star: f64,
    pub epsilon: f64,
    /// Common shift applied to the frequencies before ranking (zero when the
    /// raw rates already have a unique maximum).
    pub translation: Vec<f64>,
    /// Rates of the translated frequencies.
    pub rates: Vec<f64>,
}

const MARGIN_TOL: f64 = 1e-9;

/// Finds the term of strictly largest growth rate. When the raw rates tie,
/// the frequencies are first translated by a common vector (which multiplies
/// `φ` by a factor that never vanishes) chosen to make the maximum unique.
pub fn dominant_term(s: &ExponentialSum) -> Result<Dominance, ExpSumError> {
    let c = trig_circle(s)?;
    let freqs = s.frequencies();
    if freqs.is_empty() {
        return Err(ExpSumError::NoUniqueDominant { margin: 0.0 });
    }
    let d = freqs[0].len();
    let raw = rates_for(&freqs, c);
    let (idx, eps) = top(&raw);
    let mut best = (idx, eps, Point::zeros(d), raw);
    if eps <= MARGIN_TOL {
        let proj: Vec<Complex64> = freqs.iter().map(|v| planar(v, c)).collect();
        let centroid = proj.iter().sum::<Complex64>() / proj.len() as f64;
        let spread = proj.iter().map(|p| (p - centroid).norm()).fold(0.0, f64::max);
        for k in 0..16 {
            for scale in [1.5, 3.0] {
                let theta = 0.4142 + 2.0 * PI * k as f64 / 16.0;
                let origin = centroid + Complex64::from_polar(scale * spread.max(1.0), theta);
                let mut tau = Point::zeros(d);
                tau[c.axes.0] = -origin.re;
                tau[c.axes.1] = -origin.im;
                let shifted: Vec<Point> = freqs.iter().map(|v| v + &tau).collect();
                let rates = rates_for(&shifted, c);
                let (i, e) = top(&rates);
                if e > best.1 {
                    best = (i, e, tau, rates);
                }
            }
        }
    }
    let (index, epsilon, tau, rates) = best;
    if epsilon <= MARGIN_TOL {
        return Err(ExpSumError::NoUniqueDominant { margin: epsilon });
    }
    let v = &freqs[index] + &tau;
    let aligned = Complex64::new(0.0, -2.0 * PI) * c.radius * planar(&v, c);
    Ok(Dominance { index, x_star: aligned.arg(), epsilon, translation: tau.iter().copied().collect(), rates })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSample {
    pub y: f64,
    /// `|dominant term| / Σ_{j≠dom} |term_j|` at `t = x* + iy`.
    pub ratio: f64,
    pub log_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub raw_rates: Vec<f64>,
    pub dominance: Dominance,
    /// First grid value where the ratio exceeds 2.
    pub y0: Option<f64>,
    pub ratio_trace: Vec<RatioSample>,
    pub final_ratio: f64,
    pub increasing_top_half: bool,
    /// `|φ(x* + i y_max)|`, when representable.
    pub phi_modulus_at_top: Option<f64>,
    pub passed: bool,
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Tracks the dominant term against the rest along `t = x* + iy` over the
/// increasing grid `y_grid`. Passes when the final ratio exceeds 10, the
/// ratio increases over the top half of the grid and `φ` is nonzero at the
/// top.
pub fn verify_dominance(s: &ExponentialSum, y_grid: &[f64]) -> Result<DominanceReport, ExpSumError> {
    if y_grid.is_empty() || y_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(ExpSumError::InvalidInput("y grid must be nonempty and increasing".into()));
    }
    let raw_rates = growth_rates(s)?;
    let dom = dominant_term(s)?;
    let mut trace = Vec::with_capacity(y_grid.len());
    for &y in y_grid {
        let t = Complex64::new(dom.x_star, y);
        let logs = s.log_moduli(t)?;
        let z = s.curve().eval(t)?;
        let e = super::ExponentialSum::exponent(&s.terms()[dom.index].frequency, &z).re;
        if e.abs() > crate::transform::EXPONENT_CAP {
            return Err(ExpSumError::OverflowGuard { exponent: e });
        }
        let others: Vec<f64> = logs.iter().enumerate().filter(|(j, _)| *j != dom.index).map(|(_, &l)| l).collect();
        let log_ratio = logs[dom.index] - log_sum_exp(&others);
        trace.push(RatioSample { y, ratio: log_ratio.exp(), log_ratio });
    }
    let y0 = trace.iter().find(|r| r.ratio > 2.0).map(|r| r.y);
    let half = trace.len() / 2;
    let increasing_top_half = trace[half..]
        .windows(2)
        .all(|w| w[1].log_ratio > w[0].log_ratio || (w[0].log_ratio.is_infinite() && w[1].log_ratio.is_infinite()));
    let final_ratio = trace.last().map(|r| r.ratio).unwrap_or(f64::NAN);
    let top = Complex64::new(dom.x_star, *y_grid.last().unwrap());
    let phi_modulus_at_top = evaluate(s, top).ok().map(|v| v.norm());
    let passed = final_ratio > 10.0 && increasing_top_half && phi_modulus_at_top.map_or(final_ratio > 10.0, |m| m > 0.0);
    Ok(DominanceReport { raw_rates, dominance: dom, y0, ratio_trace: trace, final_ratio, increasing_top_half, phi_modulus_at_top, passed })
}

/// `log|dominant term(x* + iy)| / (rate · e^y)`, which tends to 1.
pub fn growth_model_ratio(s: &ExponentialSum, dom: &Dominance, y: f64) -> Result<f64, ExpSumError> {
    let t = Complex64::new(dom.x_star, y);
    let logs = s.log_moduli(t)?;
    let shift = Point::from_vec(dom.translation.clone());
    // the translation multiplies every term by exp(-2πi τ·γ(t))
    let z = s.curve().eval(t)?;
    let extra = super::ExponentialSum::exponent(&shift, &z).re;
    Ok((logs[dom.index] + extra) / (dom.rates[dom.index] * y.exp()))
}
