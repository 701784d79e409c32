//! Erdélyi-Kober operators and fractional powers of hyper-Bessel operators.
//!
//! The Erdélyi-Kober integral
//!
//! ```text
//! I_m^{η,α} f(x) = x^{-mη-mα} / Γ(α) ∫_0^x (x^m - u^m)^{α-1} u^{mη} f(u) d(u^m)
//! ```
//!
//! maps `x^β` to `Γ(η + β/m + 1) / Γ(α + η + β/m + 1) · x^β`. Two backends
//! are provided: that exact gamma ratio on monomials (and so, termwise, on
//! [`GeneralizedPowerSeries`]), and Gauss-Jacobi quadrature of the integral
//! for `α > 0` on arbitrary callables.
//!
//! A hyper-Bessel operator `L = x^{a_1} D x^{a_2} ... D x^{a_{n+1}}` with
//! `m = n - Σa > 0` has the fractional power
//!
//! ```text
//! L^α f = m^{nα} x^{-mα} Π_k I_m^{b_k,-α} f,   b_k = (Σ_{i>k} a_i + k - n) / m.
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::GaussJacobi;
use crate::series::GeneralizedPowerSeries;
use crate::special::{gamma_ratio, is_nonpositive_integer, reciprocal_gamma};

/// One Erdélyi-Kober operator `I_m^{η,α}`. A non-positive `order` is the
/// derivative-type operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EkParams {
    pub m: f64,
    pub eta: f64,
    pub order: f64,
}

/// Largest Gauss-Jacobi order tried by [`EkParams::quadrature`].
pub const QUADRATURE_MAX_ORDER: usize = 512;
/// Relative agreement required between two successive orders.
pub const QUADRATURE_AGREEMENT: f64 = 1e-10;
const QUADRATURE_START_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// Gauss-Jacobi order of the accepted estimate.
    pub order: usize,
    /// |difference| to the estimate at half the order.
    pub last_change: f64,
}

impl EkParams {
    pub fn new(m: f64, eta: f64, order: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidParameter(format!("E-K parameter m must be positive, got {m}")));
        }
        if !eta.is_finite() || !order.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "E-K parameters must be finite (eta = {eta}, order = {order})"
            )));
        }
        Ok(Self { m, eta, order })
    }

    /// `η + β/m + 1`, which must be positive for the monomial action.
    pub fn regularity(&self, beta: f64) -> f64 {
        self.eta + beta / self.m + 1.0
    }

    /// C such that `I_m^{η,α} x^β = C x^β`.
    ///
    /// Uses the gamma ratio when `η + β/m + 1 > 0`. Outside that range the
    /// only case with a meaning is an integer derivative order, where the
    /// ratio is the finite product produced by the `α <= 0` recursion.
    pub fn monomial_coefficient(&self, beta: f64) -> Result<f64> {
        let v = self.regularity(beta);
        if v > 0.0 {
            return gamma_ratio(v, self.order + v);
        }
        if is_nonpositive_integer(self.order) {
            return Ok(self.integer_derivative_product(beta));
        }
        Err(Error::Precondition { term: 0, value: v })
    }

    /// `Π_{j=1}^{r} (η + β/m + 1 - j)` for `order = -r`.
    fn integer_derivative_product(&self, beta: f64) -> f64 {
        let v = self.regularity(beta);
        let r = (-self.order) as u64;
        (1..=r).map(|j| v - j as f64).product()
    }

    /// Monomial coefficient computed with the derivative recursion
    ///
    /// ```text
    /// I^{η,α} f = (η + α + 1) I^{η,α+1} f + (1/m) I^{η,α+1}(x f'),   α <= 0,
    /// ```
    ///
    /// which on `x^β` reads `C(α) = (η + α + 1 + β/m) C(α + 1)`. The
    /// recursion is stepped up until the order is positive (or exactly zero,
    /// the identity), where the gamma ratio takes over.
    pub fn recursion_coefficient(&self, beta: f64) -> Result<f64> {
        let mut order = self.order;
        let mut factor = 1.0;
        while order <= 0.0 {
            if order == 0.0 {
                return Ok(factor);
            }
            factor *= self.eta + order + 1.0 + beta / self.m;
            order += 1.0;
        }
        let v = self.regularity(beta);
        if !(v > 0.0) {
            return Err(Error::Precondition { term: 0, value: v });
        }
        Ok(factor * gamma_ratio(v, order + v)?)
    }

    /// Applies the operator term by term; exponents are unchanged.
    pub fn apply_series(&self, s: &GeneralizedPowerSeries) -> Result<GeneralizedPowerSeries> {
        let coeffs = s
            .terms()
            .enumerate()
            .map(|(k, (e, c))| match self.monomial_coefficient(e) {
                Ok(factor) => Ok(c * factor),
                Err(Error::Precondition { value, .. }) => Err(Error::Precondition { term: k, value }),
                Err(other) => Err(other),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(s.with_coeffs(s.gamma0(), coeffs))
    }

    /// Evaluates `I_m^{η,α} f (x)` for `α > 0` by quadrature.
    ///
    /// With `s = (u/x)^m` the integral becomes
    /// `Γ(α)^{-1} ∫_0^1 (1-s)^{α-1} s^η f(x s^{1/m}) ds`. A further
    /// substitution `s = τ^{2m}` turns `f(x s^{1/m})` into `f(x τ^2)` and
    /// raises the weight exponent at the origin to `2m(η + 1) - 1`, which
    /// keeps integrands like `u^β` with fractional β smooth enough for the
    /// Gauss-Jacobi rule. The factor `((1 - τ^q)/(1 - τ))^{α-1}` left over
    /// at τ = 1 is smooth and positive.
    ///
    /// The order starts at 8 and doubles until two successive estimates
    /// agree to 1e-10 (relative), up to order 512.
    pub fn quadrature<F>(&self, f: F, x: f64) -> Result<QuadratureOutcome>
    where
        F: Fn(f64) -> f64,
    {
        if !(self.order > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs a positive E-K order, got {}",
                self.order
            )));
        }
        if !(self.eta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs eta > -1, got {}",
                self.eta
            )));
        }
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain(format!("E-K quadrature at x = {x}")));
        }
        let q = 2.0 * self.m;
        let a = self.order - 1.0;
        let b = q * (self.eta + 1.0) - 1.0;
        let prefactor = q * reciprocal_gamma(self.order);
        let power = q / self.m;
        let integrand = |t: f64, one_minus_t: f64| {
            let jac = ratio_one_minus_power(t, one_minus_t, q);
            let j_factor = if a == 0.0 { 1.0 } else { jac.powf(a) };
            j_factor * f(x * t.powf(power))
        };

        let mut order = QUADRATURE_START_ORDER;
        let mut previous = prefactor * GaussJacobi::new(order, a, b)?.integrate(integrand);
        let mut change = f64::INFINITY;
        while order < QUADRATURE_MAX_ORDER {
            order *= 2;
            let current = prefactor * GaussJacobi::new(order, a, b)?.integrate(integrand);
            if !current.is_finite() {
                return Err(Error::QuadratureNonConvergence { order, achieved: f64::NAN });
            }
            change = (current - previous).abs();
            if change <= QUADRATURE_AGREEMENT * current.abs() || change == 0.0 {
                return Ok(QuadratureOutcome { value: current, order, last_change: change });
            }
            previous = current;
        }
        Err(Error::QuadratureNonConvergence { order, achieved: change })
    }
}

/// `(1 - t^q) / (1 - t)` on [0, 1], equal to q at t = 1.
fn ratio_one_minus_power(t: f64, one_minus_t: f64, q: f64) -> f64 {
    if q.fract() == 0.0 && q <= 64.0 {
        // 1 + t + ... + t^(q-1)
        let n = q as usize;
        return (0..n).fold(0.0, |acc, _| acc * t + 1.0);
    }
    if one_minus_t == 0.0 {
        return q;
    }
    let ln_t = if t > 0.5 { (-one_minus_t).ln_1p() } else { t.ln() };
    -(q * ln_t).exp_m1() / one_minus_t
}

/// Hyper-Bessel operator `x^{a_1} D x^{a_2} ... D x^{a_{n+1}}` with its
/// derived constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperBessel {
    a_coeffs: Vec<f64>,
    a_sum: f64,
    m: f64,
    b: Vec<f64>,
}

/// A `b_k` that lands on the excluded lattice of the admissibility set for
/// `(p, μ) = (2, 0)`, i.e. `m b_k + m = 1/2 - m l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityWarning {
    /// 1-based index k of the offending `b_k`.
    pub k: usize,
    pub b_k: f64,
    pub l: u64,
}

const ADMISSIBILITY_TOLERANCE: f64 = 1e-9;

impl HyperBessel {
    /// Derives `a`, `m` and `b_k` from `a_1..a_{n+1}`.
    pub fn new(a_coeffs: Vec<f64>) -> Result<Self> {
        if a_coeffs.len() < 2 {
            return Err(Error::InvalidParameter(
                "a hyper-Bessel operator needs at least two coefficients".into(),
            ));
        }
        if a_coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidParameter("non-finite hyper-Bessel coefficient".into()));
        }
        let n = a_coeffs.len() - 1;
        let a_sum: f64 = a_coeffs.iter().sum();
        if !(a_sum < n as f64) {
            return Err(Error::InvalidParameter(format!(
                "fractional powers need a = Σa_k < n; got a = {a_sum}, n = {n}"
            )));
        }
        let m = n as f64 - a_sum;
        let b = (1..=n)
            .map(|k| {
                let tail: f64 = a_coeffs[k..].iter().sum();
                (tail + k as f64 - n as f64) / m
            })
            .collect();
        Ok(Self { a_coeffs, a_sum, m, b })
    }

    /// `d²/dw² + (N/w) d/dw`, i.e. coefficients `(-N, N, 0)`.
    pub fn radial(dim: usize) -> Self {
        let n = dim as f64;
        Self::new(vec![-n, n, 0.0]).expect("radial operator is always admissible")
    }

    /// Plain derivative `D`, the Riemann-Liouville case `(0, 0)`.
    pub fn derivative() -> Self {
        Self::new(vec![0.0, 0.0]).expect("D is always admissible")
    }

    pub fn n(&self) -> usize {
        self.a_coeffs.len() - 1
    }

    pub fn a_coeffs(&self) -> &[f64] {
        &self.a_coeffs
    }

    pub fn a_sum(&self) -> f64 {
        self.a_sum
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn admissibility_warnings(&self) -> Vec<AdmissibilityWarning> {
        let target = 0.5 / self.m;
        self.b
            .iter()
            .enumerate()
            .filter_map(|(i, &b_k)| {
                // m b_k + m = 1/2 - m l  <=>  l = 1/(2m) - b_k - 1
                let l = target - b_k - 1.0;
                let nearest = l.round();
                (nearest >= 0.0 && (l - nearest).abs() <= ADMISSIBILITY_TOLERANCE)
                    .then_some(AdmissibilityWarning { k: i + 1, b_k, l: nearest as u64 })
            })
            .collect()
    }

    /// The k-th Erdélyi-Kober factor `I_m^{b_k, -α}` (k is 0-based).
    pub fn factor(&self, k: usize, alpha: f64) -> EkParams {
        EkParams { m: self.m, eta: self.b[k], order: -alpha }
    }

    /// C with `L^α w^e = C w^{e - mα}`.
    pub fn power_coefficient(&self, alpha: f64, exponent: f64) -> Result<f64> {
        let mut coeff = self.m.powf(self.n() as f64 * alpha);
        for k in 0..self.n() {
            coeff *= self.factor(k, alpha).monomial_coefficient(exponent)?;
        }
        Ok(coeff)
    }

    /// `L^α` applied termwise: the grid moves down by `mα` and each
    /// coefficient picks up `m^{nα} Π_k Γ(b_k + e/m + 1)/Γ(b_k + e/m + 1 - α)`.
    /// Terms whose factor vanishes stay on the grid as explicit zeros.
    pub fn frac_power_apply(&self, alpha: f64, s: &GeneralizedPowerSeries) -> Result<GeneralizedPowerSeries> {
        let coeffs = s
            .terms()
            .enumerate()
            .map(|(k, (e, c))| match self.power_coefficient(alpha, e) {
                Ok(factor) => Ok(c * factor),
                Err(Error::Precondition { value, .. }) => Err(Error::Precondition { term: k, value }),
                Err(other) => Err(other),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(s.with_coeffs(s.gamma0() - self.m * alpha, coeffs))
    }

    /// `L^r` by literal differentiation of the chain
    /// `x^{a_1} D x^{a_2} ... D x^{a_{n+1}}`, r times, on each monomial.
    pub fn integer_power_oracle(&self, r: u32, s: &GeneralizedPowerSeries) -> GeneralizedPowerSeries {
        let apply_once = |(mut coeff, mut exponent): (f64, f64)| {
            for (j, a) in self.a_coeffs.iter().enumerate().rev() {
                exponent += a;
                if j > 0 {
                    coeff *= exponent;
                    exponent -= 1.0;
                }
            }
            (coeff, exponent)
        };
        let mut gamma0 = s.gamma0();
        let coeffs = s
            .terms()
            .enumerate()
            .map(|(k, (e, c))| {
                let (coeff, exponent) = (0..r).fold((c, e), |acc, _| apply_once(acc));
                if k == 0 {
                    gamma0 = exponent;
                }
                coeff
            })
            .collect();
        s.with_coeffs(gamma0, coeffs)
    }

    /// Particular solution of `L^α u = source_coeff · w^{source_exponent}`:
    /// `u = (source_coeff / C) w^{source_exponent + mα}` with C the power
    /// coefficient at the shifted exponent.
    pub fn invert_on_monomial(
        &self,
        alpha: f64,
        source_coeff: f64,
        source_exponent: f64,
    ) -> Result<GeneralizedPowerSeries> {
        let exponent = source_exponent + self.m * alpha;
        let c = self.power_coefficient(alpha, exponent)?;
        if c == 0.0 {
            return Err(Error::Resonance { exponent });
        }
        Ok(GeneralizedPowerSeries::monomial(source_coeff / c, exponent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            (a - b).abs() / b.abs()
        }
    }

    #[test]
    fn derive_coefficients_examples() {
        let lb = HyperBessel::new(vec![-1.0, 1.0, 0.0]).unwrap();
        assert_eq!((lb.n(), lb.a_sum(), lb.m()), (2, 0.0, 2.0));
        assert_eq!(lb.b(), &[0.0, 0.0]);
        for dim in [1usize, 2, 3, 5, 8] {
            let h = HyperBessel::radial(dim);
            assert_eq!((h.n(), h.m()), (2, 2.0));
            assert_eq!(h.b(), &[(dim as f64 - 1.0) / 2.0, 0.0]);
        }
        let rl = HyperBessel::new(vec![0.0, 0.0]).unwrap();
        assert_eq!((rl.n(), rl.a_sum(), rl.m()), (1, 0.0, 1.0));
        assert_eq!(rl.b(), &[0.0]);
    }

    #[test]
    fn derive_coefficients_rejects_a_at_least_n() {
        assert!(HyperBessel::new(vec![1.0, 1.0]).is_err());
        assert!(HyperBessel::new(vec![2.5, 0.0, 0.0]).is_err());
        assert!(HyperBessel::new(vec![1.0]).is_err());
    }

    #[test]
    fn admissibility_lattice() {
        assert!(HyperBessel::radial(3).admissibility_warnings().is_empty());
        let h = HyperBessel::new(vec![0.5, -1.5]).unwrap();
        assert_eq!(h.m(), 2.0);
        // b_1 = (a_2 + 1 - 1)/2 = -0.75; target 1/(2m) = 0.25 -> l = 0.25 + 0.75 - 1 = 0
        let w = h.admissibility_warnings();
        assert_eq!(w.len(), 1);
        assert_eq!((w[0].k, w[0].l), (1, 0));
    }

    #[test]
    fn ek_monomial_examples() {
        let id = EkParams::new(2.0, 0.0, 0.0).unwrap();
        assert_eq!(id.monomial_coefficient(4.0).unwrap(), 1.0);
        let int1 = EkParams::new(2.0, 0.0, 1.0).unwrap();
        assert!(rel(int1.monomial_coefficient(2.0).unwrap(), 0.5) < 1e-15);
        // I^{0,-1} f = (1/m) x f' on x^2 is x^2; this is also the only
        // value for which 4 x^{-2} I^{0,-1} I^{0,-1} x^2 reproduces L_B x^2 = 4
        let der1 = EkParams::new(2.0, 0.0, -1.0).unwrap();
        assert_eq!(der1.monomial_coefficient(2.0).unwrap(), 1.0);
        assert_eq!(der1.recursion_coefficient(2.0).unwrap(), 1.0);
        let der1 = EkParams::new(1.0, 0.0, -1.0).unwrap();
        assert_eq!(der1.monomial_coefficient(2.0).unwrap(), 2.0);
        let bad = EkParams::new(2.0, 0.0, 0.5).unwrap();
        assert!(matches!(bad.monomial_coefficient(-3.0), Err(Error::Precondition { .. })));
        // integer derivative orders are defined for every β
        let der1 = EkParams::new(2.0, 0.0, -1.0).unwrap();
        assert_eq!(der1.monomial_coefficient(-4.0).unwrap(), -2.0);
    }

    #[test]
    fn recursion_matches_gamma_ratio_on_monomials() {
        for &(m, eta, order, beta) in &[
            (2.0, 0.0, -0.5, 1.3),
            (1.0, 0.3, -1.7, 2.0),
            (3.0, 1.5, -2.0, 0.4),
            (2.0, 0.5, -0.25, 0.0),
            (1.0, 0.0, -3.4, 5.5),
        ] {
            let p = EkParams::new(m, eta, order).unwrap();
            let a = p.monomial_coefficient(beta).unwrap();
            let b = p.recursion_coefficient(beta).unwrap();
            assert!(rel(b, a) < 1e-13, "{m} {eta} {order} {beta}: {a} vs {b}");
        }
    }

    #[test]
    fn apply_series_examples() {
        let s = GeneralizedPowerSeries::new(0.5, 1.5, vec![1.0, -2.0, 0.25]).unwrap();
        let id = EkParams::new(2.0, 0.7, 0.0).unwrap();
        assert_eq!(id.apply_series(&s).unwrap(), s);
        let int1 = EkParams::new(2.0, 0.0, 1.0).unwrap();
        let out = int1.apply_series(&GeneralizedPowerSeries::new(2.0, 2.0, vec![1.0]).unwrap()).unwrap();
        assert_eq!((out.gamma0(), out.delta()), (2.0, 2.0));
        assert!(rel(out.coeffs()[0], 0.5) < 1e-15);
        // the error names the offending term
        let s2 = GeneralizedPowerSeries::new(-4.5, 2.0, vec![1.0, 1.0, 1.0]).unwrap();
        let frac = EkParams::new(2.0, 0.0, 0.5).unwrap();
        assert!(matches!(frac.apply_series(&s2), Err(Error::Precondition { term: 0, .. })));
        let s3 = GeneralizedPowerSeries::new(-4.5, 1.0, vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        let shifted = EkParams::new(2.0, 1.0, 0.5).unwrap();
        assert!(matches!(shifted.apply_series(&s3), Err(Error::Precondition { term: 0, .. })));
    }

    #[test]
    fn series_action_gains_reciprocal_gamma_of_alpha_k() {
        // two E-K derivatives of order α turn 1/Γ(αk+α)^2 into 1/Γ(αk)^2,
        // and the k = 0 term vanishes
        let alpha = 0.7;
        let scale = -1.0 / 4f64.powf(alpha);
        let coeffs: Vec<f64> = (0..12)
            .map(|k| {
                let g = gamma(alpha * k as f64 + alpha).unwrap();
                scale.powi(k) / (g * g)
            })
            .collect();
        let s = GeneralizedPowerSeries::new(2.0 * alpha - 2.0, 2.0 * alpha, coeffs).unwrap();
        let d = EkParams::new(2.0, 0.0, -alpha).unwrap();
        let out = d.apply_series(&d.apply_series(&s).unwrap()).unwrap();
        assert_eq!(out.coeffs()[0], 0.0);
        for k in 1..12 {
            let g = gamma(alpha * k as f64).unwrap();
            let expected = scale.powi(k as i32) / (g * g);
            assert!(rel(out.coeffs()[k], expected) < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn quadrature_examples() {
        let p = EkParams::new(2.0, 0.0, 1.0).unwrap();
        let r = p.quadrature(|u| u * u, 1.0).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        let p = EkParams::new(2.0, 0.0, 0.5).unwrap();
        let r = p.quadrature(|_| 1.0, 1.0).unwrap();
        assert!((r.value - 2.0 / PI.sqrt()).abs() < 1e-12);
        assert!((r.value - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);
        let p = EkParams::new(1.0, 0.0, 1.0).unwrap();
        let r = p.quadrature(|_| 1.0, 2.0).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_rejects_derivative_orders() {
        let p = EkParams::new(2.0, 0.0, -0.5).unwrap();
        assert!(p.quadrature(|u| u, 1.0).is_err());
        let p = EkParams::new(2.0, -1.5, 0.5).unwrap();
        assert!(p.quadrature(|u| u, 1.0).is_err());
    }

    #[test]
    fn quadrature_non_convergence_reports_change() {
        // jump discontinuity: Gauss rules converge only algebraically
        let p = EkParams::new(1.0, 0.0, 1.0).unwrap();
        let err = p.quadrature(|u| if u < 0.37 { 1.0 } else { 0.0 }, 1.0).unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { order: 512, achieved } if achieved > 0.0));
    }

    #[test]
    fn frac_power_examples() {
        let lb = HyperBessel::radial(1);
        let out = lb.frac_power_apply(1.0, &GeneralizedPowerSeries::monomial(1.0, 2.0)).unwrap();
        assert_eq!(out.gamma0(), 0.0);
        assert!(rel(out.coeffs()[0], 4.0) < 1e-14);
        for &alpha in &[0.2, 0.5, 0.9, 1.0] {
            for &beta in &[0.5, 1.0, 2.7] {
                let out = lb.frac_power_apply(alpha, &GeneralizedPowerSeries::monomial(1.0, beta)).unwrap();
                let ratio = gamma(beta / 2.0 + 1.0).unwrap() / gamma(1.0 - alpha + beta / 2.0).unwrap();
                let expected = 4f64.powf(alpha) * ratio * ratio;
                assert!(rel(out.coeffs()[0], expected) < 1e-13);
                assert!((out.gamma0() - (beta - 2.0 * alpha)).abs() < 1e-15);
            }
        }
        // u'' + (3/w) u' on w^2 is 2 + 6 = 8
        let h3 = HyperBessel::radial(3);
        let out = h3.frac_power_apply(1.0, &GeneralizedPowerSeries::monomial(1.0, 2.0)).unwrap();
        assert!(rel(out.coeffs()[0], 8.0) < 1e-14);
    }

    #[test]
    fn integer_power_oracle_examples() {
        let lb = HyperBessel::radial(1);
        let once = lb.integer_power_oracle(1, &GeneralizedPowerSeries::monomial(1.0, 2.0));
        assert_eq!((once.coeffs()[0], once.gamma0()), (4.0, 0.0));
        let twice = lb.integer_power_oracle(2, &GeneralizedPowerSeries::monomial(1.0, 4.0));
        assert_eq!((twice.coeffs()[0], twice.gamma0()), (64.0, 0.0));
        let d = HyperBessel::derivative();
        let out = d.integer_power_oracle(1, &GeneralizedPowerSeries::monomial(1.0, 3.0));
        assert_eq!((out.coeffs()[0], out.gamma0()), (3.0, 2.0));
    }

    #[test]
    fn invert_examples() {
        let lb = HyperBessel::radial(1);
        let u = lb.invert_on_monomial(1.0, 4.0, 0.0).unwrap();
        assert!((u.gamma0() - 2.0).abs() < 1e-15);
        assert!(rel(u.coeffs()[0], 1.0) < 1e-14);
        let u = lb.invert_on_monomial(0.5, 1.0, 0.0).unwrap();
        assert!((u.gamma0() - 1.0).abs() < 1e-15);
        assert!(rel(u.coeffs()[0], 2.0 / PI) < 1e-14);
        let back = lb.frac_power_apply(0.5, &u).unwrap();
        assert!(back.gamma0().abs() < 1e-15);
        assert!(rel(back.coeffs()[0], 1.0) < 1e-12);
        // w^0 is annihilated by L_B: source w^{-2} at α = 1 is resonant
        assert!(matches!(lb.invert_on_monomial(1.0, 1.0, -2.0), Err(Error::Resonance { .. })));
    }

    #[test]
    fn riemann_liouville_reduction() {
        let d = HyperBessel::derivative();
        for &alpha in &[0.1, 0.35, 0.5, 0.8] {
            for &beta in &[0.0, 0.5, 1.0, 2.25, 4.0] {
                let out = d.frac_power_apply(alpha, &GeneralizedPowerSeries::monomial(1.0, beta)).unwrap();
                let expected = gamma(beta + 1.0).unwrap() / gamma(beta + 1.0 - alpha).unwrap();
                assert!(rel(out.coeffs()[0], expected) < 1e-13);
                assert!((out.gamma0() - (beta - alpha)).abs() < 1e-15);
            }
        }
    }

    proptest! {
        #[test]
        fn semigroup_on_monomials(
            dim in 1usize..6,
            a1 in 0.05f64..1.0,
            a2 in 0.05f64..1.0,
            beta in 0.0f64..6.0,
        ) {
            let h = HyperBessel::radial(dim);
            let mono = GeneralizedPowerSeries::monomial(1.0, beta);
            let inner = h.frac_power_apply(a2, &mono).unwrap();
            // the intermediate exponent must still satisfy the monomial precondition
            prop_assume!(h.b().iter().all(|b| b + inner.gamma0() / h.m() + 1.0 > 0.0));
            let two_step = h.frac_power_apply(a1, &inner).unwrap();
            let one_step = h.frac_power_apply(a1 + a2, &mono).unwrap();
            prop_assert!((two_step.gamma0() - one_step.gamma0()).abs() < 1e-12);
            let (x, y) = (two_step.coeffs()[0], one_step.coeffs()[0]);
            prop_assert!((x - y).abs() <= 1e-10 * y.abs().max(1e-300), "{} vs {}", x, y);
        }
    }
}
