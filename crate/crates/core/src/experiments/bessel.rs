use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecialError {
    #[error("|x| = {0} is outside the supported range [0, 50]")]
    RangeExceeded(f64),
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
}

const SERIES_LIMIT: f64 = 12.0;
const RANGE: f64 = 50.0;

/// Bessel function of the first kind of order one, for `|x| <= 50`.
///
/// Power series up to `|x| = 12`; beyond that Miller's backward recurrence
/// normalized by `J_0 + 2 Σ J_{2k} = 1`.
pub fn bessel_j1(x: f64) -> Result<f64, SpecialError> {
    let ax = x.abs();
    if ax.is_nan() || ax > RANGE {
        return Err(SpecialError::RangeExceeded(ax));
    }
    let v = if ax <= SERIES_LIMIT { series(ax) } else { miller(ax) };
    Ok(if x < 0.0 { -v } else { v })
}

fn series(x: f64) -> f64 {
    let h = x / 2.0;
    let h2 = h * h;
    let mut term = h;
    let mut sum = term;
    for k in 1..60 {
        term *= -h2 / (k as f64 * (k + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn miller(x: f64) -> f64 {
    let start = 2 * ((x as usize + 40) / 2);
    let (mut next, mut cur) = (0.0f64, 1e-30f64);
    let mut j1 = 0.0;
    let mut norm = 0.0;
    for n in (1..=start).rev() {
        // J_{n-1} = (2n/x) J_n - J_{n+1}
        let prev = 2.0 * n as f64 / x * cur - next;
        next = cur;
        cur = prev;
        let m = n - 1;
        if m == 1 {
            j1 = cur;
        }
        if m % 2 == 0 && m > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            j1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += cur;
    j1 / norm
}

/// First positive zero of `J_1`, by bisection on `[3, 4.5]`.
pub fn first_zero_j1() -> f64 {
    let (mut lo, mut hi) = (3.0f64, 4.5f64);
    let flo = series(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (series(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Transform of the unit disk at frequency modulus `rho`: `J_1(2πρ) / ρ`.
pub fn disk_transform_profile(rho: f64) -> Result<f64, SpecialError> {
    if rho.is_nan() || rho <= 0.0 {
        return Err(SpecialError::NonPositiveRadius(rho));
    }
    Ok(bessel_j1(2.0 * std::f64::consts::PI * rho)? / rho)
}
