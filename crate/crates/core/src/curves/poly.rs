use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Dense univariate polynomial with complex coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    pub coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn real(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect() }
    }

    /// Largest coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Degree after discarding leading coefficients below `tol * scale`;
    /// `None` for the (numerically) zero polynomial.
    pub fn degree(&self, rel_tol: f64) -> Option<usize> {
        let cut = rel_tol * self.scale();
        self.coeffs.iter().rposition(|c| c.norm() > cut)
    }

    pub fn trimmed(&self, rel_tol: f64) -> Poly {
        match self.degree(rel_tol) {
            Some(d) => Poly { coeffs: self.coeffs[..=d].to_vec() },
            None => Poly { coeffs: vec![Complex64::new(0.0, 0.0)] },
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly {
            coeffs: (0..n)
                .map(|k| self.coeffs.get(k).copied().unwrap_or(zero) + other.coeffs.get(k).copied().unwrap_or(zero))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Poly { coeffs: vec![] };
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly { coeffs: out }
    }

    pub fn scaled(&self, c: Complex64) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    /// `p(alpha t + beta)`.
    pub fn compose_affine(&self, alpha: Complex64, beta: Complex64) -> Poly {
        let lin = Poly::new(vec![beta, alpha]);
        self.coeffs.iter().rev().fold(Poly::new(vec![]), |acc, &c| acc.mul(&lin).add(&Poly::constant(c)))
    }

    /// Quotient and remainder of division by `divisor`, whose leading
    /// coefficient is taken after trimming at `rel_tol`.
    pub fn divrem(&self, divisor: &Poly, rel_tol: f64) -> (Poly, Poly) {
        let dd = divisor.degree(rel_tol).expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::constant(Complex64::new(0.0, 0.0)), Poly::new(rem));
        }
        let mut quot = vec![Complex64::new(0.0, 0.0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for j in 0..=dd {
                rem[k + j] -= q * divisor.coeffs[j];
            }
        }
        rem.truncate(dd.max(1));
        (Poly::new(quot), Poly::new(rem))
    }
}

/// Quotient of two polynomials in the curve parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Self {
        Self { num, den }
    }

    pub fn polynomial(p: Poly) -> Self {
        Self { num: p, den: Poly::real(&[1.0]) }
    }

    /// Evaluates, or returns `None` when the denominator is below `pole_tol`.
    pub fn eval(&self, t: Complex64, pole_tol: f64) -> Option<Complex64> {
        let den = self.den.eval(t);
        if den.norm() < pole_tol {
            return None;
        }
        Some(self.num.eval(t) / den)
    }

    pub fn compose_affine(&self, alpha: Complex64, beta: Complex64) -> Self {
        Self { num: self.num.compose_affine(alpha, beta), den: self.den.compose_affine(alpha, beta) }
    }
}
