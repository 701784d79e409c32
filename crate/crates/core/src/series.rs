//! Generalized power series `Σ_k c_k w^(γ0 + kδ)` and the multi-index
//! Mittag-Leffler function.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{gamma_sign, is_nonpositive_integer, ln_gamma, reciprocal_gamma};
use crate::sum::CompensatedSum;

/// Tolerance used when two exponent grids are compared.
pub const GRID_TOLERANCE: f64 = 1e-12;

/// A truncated series `Σ_{k=0}^{K} c_k w^(gamma0 + k delta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedPowerSeries {
    gamma0: f64,
    delta: f64,
    coeffs: Vec<f64>,
}

impl GeneralizedPowerSeries {
    pub fn new(gamma0: f64, delta: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !gamma0.is_finite() {
            return Err(Error::InvalidParameter(format!("leading exponent {gamma0}")));
        }
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "exponent step must be positive, got {delta}"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("series needs at least one coefficient".into()));
        }
        Ok(Self { gamma0, delta, coeffs })
    }

    /// Single term `coeff * w^exponent`.
    pub fn monomial(coeff: f64, exponent: f64) -> Self {
        Self { gamma0: exponent, delta: 1.0, coeffs: vec![coeff] }
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// K, the index of the last retained term.
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn exponent(&self, k: usize) -> f64 {
        self.gamma0 + k as f64 * self.delta
    }

    /// `(exponent, coefficient)` pairs in ascending k.
    pub fn terms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(k, &c)| (self.exponent(k), c))
    }

    /// Same grid, new coefficients.
    pub(crate) fn with_coeffs(&self, gamma0: f64, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), self.coeffs.len());
        Self { gamma0, delta: self.delta, coeffs }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        self.with_coeffs(self.gamma0, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// True when both series sit on the same exponent grid.
    pub fn grid_matches(&self, other: &Self) -> bool {
        (self.gamma0 - other.gamma0).abs() <= GRID_TOLERANCE
            && (self.delta - other.delta).abs() <= GRID_TOLERANCE
    }

    /// `a * self + b * other` on a shared grid; the shorter series is
    /// padded with zeros.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if !self.grid_matches(other) {
            return Err(Error::InvalidParameter(format!(
                "exponent grids differ: ({}, {}) vs ({}, {})",
                self.gamma0, self.delta, other.gamma0, other.delta
            )));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let at = |v: &[f64], k: usize| v.get(k).copied().unwrap_or(0.0);
        let coeffs = (0..len)
            .map(|k| a * at(&self.coeffs, k) + b * at(&other.coeffs, k))
            .collect();
        Ok(Self { gamma0: self.gamma0, delta: self.delta, coeffs })
    }

    /// Evaluates the series at `w` with compensated summation in ascending k.
    pub fn eval(&self, w: f64) -> Result<f64> {
        if !(w >= 0.0) {
            return Err(Error::Domain(format!("series evaluated at w = {w}")));
        }
        if w == 0.0 && self.gamma0 < 0.0 {
            return Err(Error::SingularAtOrigin { exponent: self.gamma0 });
        }
        let sum: CompensatedSum = self.terms().map(|(e, c)| term_value(c, e, w)).collect();
        Ok(sum.value())
    }
}

/// `coeff * w^exponent`, with zero coefficients contributing exactly zero
/// and a log-space fallback when the power alone would overflow.
pub fn term_value(coeff: f64, exponent: f64, w: f64) -> f64 {
    if coeff == 0.0 {
        return 0.0;
    }
    let direct = coeff * w.powf(exponent);
    if direct.is_finite() || w == 0.0 {
        return direct;
    }
    coeff.signum() * (coeff.abs().ln() + exponent * w.ln()).exp()
}

/// Rigorous bound on the magnitude of an omitted tail from its first two
/// terms.
///
/// Valid for tails whose consecutive-term ratio is non-increasing in
/// magnitude, which holds for every gamma-ratio series built here once the
/// gamma arguments are positive (log-convexity of Γ). Alternating tails are
/// bounded by their first term, same-sign tails by the geometric sum.
pub fn tail_bound(first: f64, second: f64) -> f64 {
    let (a, b) = (first.abs(), second.abs());
    if a == 0.0 && b == 0.0 {
        return 0.0;
    }
    if b >= a {
        return f64::INFINITY;
    }
    if first.signum() != second.signum() && b != 0.0 {
        a
    } else {
        a / (1.0 - b / a)
    }
}

/// Parameters `(α_i, μ_i)` of `E^(n)(z) = Σ_k z^k / Π_i Γ(α_i k + μ_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiIndexMl {
    alphas: Vec<f64>,
    mus: Vec<f64>,
}

pub const ML_RELATIVE_TOLERANCE: f64 = 1e-15;
pub const ML_CONFIRMATIONS: usize = 3;
pub const ML_MAX_TERMS: usize = 10_000;

impl MultiIndexMl {
    pub fn new(alphas: Vec<f64>, mus: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != mus.len() {
            return Err(Error::InvalidParameter(format!(
                "need equal, non-zero numbers of alphas and mus (got {} and {})",
                alphas.len(),
                mus.len()
            )));
        }
        if alphas.iter().chain(&mus).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite Mittag-Leffler index".into()));
        }
        let total: f64 = alphas.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sum of alphas must be positive, got {total}"
            )));
        }
        Ok(Self { alphas, mus })
    }

    /// Convenience constructor from `(α_i, μ_i)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
    }

    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn mus(&self) -> &[f64] {
        &self.mus
    }

    fn gamma_args(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        let kf = k as f64;
        self.alphas.iter().zip(&self.mus).map(move |(a, m)| a * kf + m)
    }

    /// `scale^k / Π_i Γ(α_i k + μ_i)`; exactly zero when any argument is a
    /// gamma pole.
    pub fn coefficient(&self, scale: f64, k: usize) -> f64 {
        if self.gamma_args(k).any(is_nonpositive_integer) {
            return 0.0;
        }
        let power = if k == 0 { 1.0 } else { scale.powi(k as i32) };
        let direct = self.gamma_args(k).fold(power, |acc, x| acc * reciprocal_gamma(x));
        if (direct.is_finite() && direct != 0.0) || scale == 0.0 {
            return direct;
        }
        // overflow or underflow in one of the factors; redo in logs
        let mut ln = k as f64 * scale.abs().ln();
        let mut sign = if scale < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
        for x in self.gamma_args(k) {
            ln -= ln_gamma(x);
            sign *= gamma_sign(x);
        }
        sign * ln.exp()
    }

    /// First index from which every gamma argument with a positive α is
    /// itself positive.
    fn settled_index(&self) -> usize {
        self.alphas
            .iter()
            .zip(&self.mus)
            .filter(|(a, _)| **a > 0.0)
            .map(|(a, m)| if *m > 0.0 { 0 } else { (-m / a).floor() as usize + 1 })
            .max()
            .unwrap_or(0)
    }

    /// Sums the series until `|term| <= 1e-15 |partial sum|` holds for three
    /// consecutive terms, capped at 10 000 terms.
    pub fn eval(&self, z: f64) -> Result<f64> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("Mittag-Leffler argument {z}")));
        }
        let settled = self.settled_index();
        let mut acc = CompensatedSum::new();
        let mut quiet = 0;
        for k in 0..ML_MAX_TERMS {
            let term = self.coefficient(z, k);
            if !term.is_finite() {
                return Err(Error::SeriesNonConvergence { terms: k, z: z.abs() });
            }
            acc.add(term);
            if k >= settled && term.abs() <= ML_RELATIVE_TOLERANCE * acc.value().abs() {
                quiet += 1;
                if quiet == ML_CONFIRMATIONS {
                    return Ok(acc.value());
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::SeriesNonConvergence { terms: ML_MAX_TERMS, z: z.abs() })
    }

    /// Truncated series with `c_k = scale^k / Π_i Γ(α_i k + μ_i)`, k = 0..=K,
    /// on the grid `w^(gamma0 + k delta)`.
    pub fn series(&self, gamma0: f64, delta: f64, scale: f64, order: usize) -> Result<GeneralizedPowerSeries> {
        let coeffs = (0..=order).map(|k| self.coefficient(scale, k)).collect();
        GeneralizedPowerSeries::new(gamma0, delta, coeffs)
    }
}
