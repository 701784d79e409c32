//! Closed-form solutions of the fractional Klein-Gordon equation
//! `(∂_t² - c²Δ)^α u = -λ² u` and of its power-law nonlinear variant, all
//! expressed in the light-cone variable `w = sqrt(c²t² - |x|²)`.
//!
//! On functions of `w` the d'Alembertian acts as `c²(d²/dw² + (N/w) d/dw)`,
//! so the equation reduces to `L^α u = -(λ²/c^{2α}) u` with `L` the radial
//! hyper-Bessel operator with coefficients `(-N, N, 0)`.

use serde::Serialize;

use crate::ek::HyperBessel;
use crate::error::{Error, Result};
use crate::series::{tail_bound, term_value, GeneralizedPowerSeries, MultiIndexMl};
use crate::special::gamma_ratio;

/// Tail bound targeted by [`Truncation::Auto`].
pub const AUTO_TAIL_TARGET: f64 = 1e-12;
pub const AUTO_MIN_ORDER: usize = 10;
pub const AUTO_MAX_ORDER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Keep terms `k = 0..=K`.
    Fixed(usize),
    /// Smallest K in `[10, 500]` whose tail bound at `w_max` is below 1e-12.
    Auto { w_max: f64 },
}

/// Linear solution
/// `u(w) = w^{2α-2} Σ_k (-1)^k (λ/(2^α c^α))^{2k} / [Γ(αk+α) Γ(αk+α+(N-1)/2)] w^{2αk}`.
#[derive(Debug, Clone, Serialize)]
pub struct KgSolution {
    alpha: f64,
    lambda: f64,
    c: f64,
    dim: usize,
    #[serde(skip)]
    ml: MultiIndexMl,
    scale: f64,
    series: GeneralizedPowerSeries,
}

impl KgSolution {
    pub fn new(alpha: f64, lambda: f64, c: f64, dim: usize, truncation: Truncation) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        let half_dim = (dim as f64 - 1.0) / 2.0;
        let ml = MultiIndexMl::from_pairs(&[(alpha, alpha), (alpha, alpha + half_dim)])?;
        let scale = -lambda * lambda / (4f64.powf(alpha) * c.powf(2.0 * alpha));
        let gamma0 = 2.0 * alpha - 2.0;
        let delta = 2.0 * alpha;
        let order = match truncation {
            Truncation::Fixed(k) => k,
            Truncation::Auto { w_max } => {
                if !(w_max >= 0.0) || !w_max.is_finite() {
                    return Err(Error::Domain(format!("truncation target w_max = {w_max}")));
                }
                let tail_at = |k: usize| {
                    let t = |j: usize| series_term(&ml, scale, gamma0, delta, j, w_max);
                    tail_bound(t(k + 1), t(k + 2))
                };
                (AUTO_MIN_ORDER..=AUTO_MAX_ORDER)
                    .find(|&k| tail_at(k) < AUTO_TAIL_TARGET)
                    .ok_or(Error::SeriesNonConvergence { terms: AUTO_MAX_ORDER, z: w_max })?
            }
        };
        let series = ml.series(gamma0, delta, scale, order)?;
        Ok(Self { alpha, lambda, c, dim, ml, scale, series })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn series(&self) -> &GeneralizedPowerSeries {
        &self.series
    }

    pub fn generator(&self) -> &MultiIndexMl {
        &self.ml
    }

    /// `scale` in `c_k = scale^k / (...)`, i.e. `-λ²/(4^α c^{2α})`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The reduced operator `d²/dw² + (N/w) d/dw`.
    pub fn operator(&self) -> HyperBessel {
        HyperBessel::radial(self.dim)
    }

    /// `λ²/c^{2α}`, the eigenvalue magnitude in `L^α u = -μ u`.
    pub fn mu(&self) -> f64 {
        self.lambda * self.lambda / self.c.powf(2.0 * self.alpha)
    }

    /// Untruncated coefficient `c_k` for any k.
    pub fn coefficient(&self, k: usize) -> f64 {
        self.ml.coefficient(self.scale, k)
    }

    /// Term `c_j w^{e_j}` of the untruncated series, for any j.
    pub fn term(&self, j: usize, w: f64) -> f64 {
        series_term(&self.ml, self.scale, self.series.gamma0(), self.series.delta(), j, w)
    }

    /// Bound on `|Σ_{k>K} c_k w^{e_k}|`.
    pub fn tail_bound(&self, w: f64) -> f64 {
        let k = self.series.truncation_order();
        tail_bound(self.term(k + 1, w), self.term(k + 2, w))
    }

    pub fn eval_w(&self, w: f64) -> Result<f64> {
        self.series.eval(w)
    }

    pub fn eval(&self, pt: &LightConePoint) -> Result<f64> {
        if pt.dim() != self.dim {
            return Err(Error::InvalidParameter(format!(
                "point has {} space coordinates, solution is {}-dimensional",
                pt.dim(),
                self.dim
            )));
        }
        self.eval_w(pt.w())
    }
}

/// `c_j w^{γ0 + jδ}`, with `w^δ` folded into the generator's argument so
/// that a huge power and an underflowing coefficient are combined in logs.
fn series_term(ml: &MultiIndexMl, scale: f64, gamma0: f64, delta: f64, j: usize, w: f64) -> f64 {
    let c = ml.coefficient(scale * w.powf(delta), j);
    if c == 0.0 {
        0.0
    } else {
        term_value(c, gamma0, w)
    }
}

/// A space-time point inside (or on) the light cone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LightConePoint {
    x: Vec<f64>,
    t: f64,
    w: f64,
}

impl LightConePoint {
    pub fn new(x: Vec<f64>, t: f64, c: f64) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InvalidParameter("a point needs at least one space coordinate".into()));
        }
        if !(t >= 0.0) || !t.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("point x = {x:?}, t = {t}")));
        }
        let ct = c * t;
        let w_squared = x.iter().fold(ct * ct, |acc, v| acc - v * v);
        if w_squared < 0.0 {
            return Err(Error::OutsideLightCone { w_squared });
        }
        Ok(Self { w: w_squared.sqrt(), x, t })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }
}

/// `u = e^{-σt} v` for `u_tt - u_xx + 2σ u_t + u = 0`, with v the α = 1,
/// c = 1 solution for `λ = sqrt(1 - σ²)`.
#[derive(Debug, Clone)]
pub struct DampedWave {
    sigma: f64,
    inner: KgSolution,
}

impl DampedWave {
    /// `w_max` is the largest light-cone variable the caller will evaluate at.
    pub fn new(sigma: f64, w_max: f64) -> Result<Self> {
        if !sigma.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma = {sigma}")));
        }
        if sigma * sigma >= 1.0 {
            return Err(Error::UnsupportedRegime(format!(
                "sigma^2 = {} >= 1 is the Helmholtz/telegraph regime",
                sigma * sigma
            )));
        }
        let lambda = (1.0 - sigma * sigma).sqrt();
        let inner = KgSolution::new(1.0, lambda, 1.0, 1, Truncation::Auto { w_max })?;
        Ok(Self { sigma, inner })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn inner(&self) -> &KgSolution {
        &self.inner
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        let pt = LightConePoint::new(vec![x], t, 1.0)?;
        Ok((-self.sigma * t).exp() * self.inner.eval(&pt)?)
    }
}

/// `u = k w^β`, `β = 2α/(1-s)`, solving `L_B^α u = λ u^s + γ_src w^{βs}` in
/// the light-cone variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TravellingWave {
    pub alpha: f64,
    pub lambda: f64,
    pub c: f64,
    pub s: f64,
    pub gamma_src: f64,
    pub beta: f64,
    /// `4^α [Γ(1 + α/(1-s)) / Γ(1 - α + α/(1-s))]²`
    pub a_coeff: f64,
    pub k: f64,
}

fn validate_wave(alpha: f64, lambda: f64, c: f64, s: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be non-zero, got {lambda}")));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    if s == 1.0 || !s.is_finite() {
        return Err(Error::InvalidParameter(format!("s must differ from 1, got {s}")));
    }
    Ok(())
}

/// `4^α [Γ(1 + α/(1-s)) / Γ(1 - α + α/(1-s))]²`, the L_B^α coefficient at
/// `β = 2α/(1-s)`.
pub fn balance_coefficient(alpha: f64, s: f64) -> Result<f64> {
    let p = alpha / (1.0 - s);
    let r = gamma_ratio(1.0 + p, 1.0 - alpha + p)?;
    Ok(4f64.powf(alpha) * r * r)
}

/// `base^exponent` for real results only.
fn real_power(base: f64, exponent: f64) -> Result<f64> {
    if base >= 0.0 {
        return Ok(base.powf(exponent));
    }
    if exponent.fract() == 0.0 && exponent.abs() < i32::MAX as f64 {
        return Ok(base.powi(exponent as i32));
    }
    Err(Error::ComplexResult(format!("({base})^({exponent}) has no real value")))
}

impl TravellingWave {
    /// The homogeneous solution, `k = (A/λ)^{1/(s-1)}`.
    ///
    /// When A vanishes (a pole of the denominator gamma) and `1/(s-1) > 0`,
    /// the balance only admits `k = 0` and the trivial wave is returned.
    pub fn new(alpha: f64, lambda: f64, c: f64, s: f64) -> Result<Self> {
        validate_wave(alpha, lambda, c, s)?;
        let beta = 2.0 * alpha / (1.0 - s);
        let a_coeff = balance_coefficient(alpha, s)?;
        let exponent = 1.0 / (s - 1.0);
        let base = a_coeff / lambda;
        if base == 0.0 && exponent < 0.0 {
            return Err(Error::Domain(format!(
                "balance coefficient vanishes for alpha = {alpha}, s = {s}; k would be infinite"
            )));
        }
        let k = real_power(base, exponent)?;
        Ok(Self { alpha, lambda, c, s, gamma_src: 0.0, beta, a_coeff, k })
    }

    /// All positive roots of `A k = λ k^s + γ_src`, one wave per root, in
    /// increasing k.
    ///
    /// Roots are bracketed by a log-spaced scan of `(10^-9 k_max, k_max]`
    /// and refined by bisection with a final guarded Newton step. Roots
    /// where the scalar function touches zero without changing sign are
    /// not detected.
    pub fn nonhomogeneous(alpha: f64, lambda: f64, gamma_src: f64, c: f64, s: f64) -> Result<Vec<Self>> {
        validate_wave(alpha, lambda, c, s)?;
        if !gamma_src.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma_src = {gamma_src}")));
        }
        let beta = 2.0 * alpha / (1.0 - s);
        let a = balance_coefficient(alpha, s)?;
        let k_max = root_scan_limit(a, lambda, gamma_src, s);
        let f = |k: f64| a * k - lambda * k.powf(s) - gamma_src;
        let df = |k: f64| a - lambda * s * k.powf(s - 1.0);
        let roots = positive_roots(f, df, k_max);
        if roots.is_empty() {
            return Err(Error::NoPositiveRoot { k_max });
        }
        Ok(roots
            .into_iter()
            .map(|k| Self { alpha, lambda, c, s, gamma_src, beta, a_coeff: a, k })
            .collect())
    }

    /// Value of `A k - λ k^s - γ_src` at the stored k.
    pub fn balance_residual(&self) -> f64 {
        self.a_coeff * self.k - self.lambda * self.k.powf(self.s) - self.gamma_src
    }

    pub fn eval_w(&self, w: f64) -> Result<f64> {
        if !(w >= 0.0) {
            return Err(Error::Domain(format!("wave evaluated at w = {w}")));
        }
        if w == 0.0 && self.beta < 0.0 && self.k != 0.0 {
            return Err(Error::SingularAtOrigin { exponent: self.beta });
        }
        Ok(term_value(self.k, self.beta, w))
    }

    pub fn eval(&self, pt: &LightConePoint) -> Result<f64> {
        self.eval_w(pt.w())
    }
}

/// Upper end of the root scan: ten times the largest natural scale of
/// `A k = λ k^s + γ`.
fn root_scan_limit(a: f64, lambda: f64, gamma_src: f64, s: f64) -> f64 {
    let candidates = [
        (a / lambda).abs().powf(1.0 / (s - 1.0)),
        (gamma_src / a).abs(),
        (gamma_src / lambda).abs().powf(1.0 / s),
    ];
    let scale = candidates
        .iter()
        .copied()
        .filter(|v| v.is_finite() && *v > 0.0)
        .fold(0.0, f64::max);
    10.0 * if scale > 0.0 { scale } else { 1.0 }
}

const ROOT_SCAN_POINTS: usize = 4000;
const ROOT_SCAN_DECADES: f64 = 9.0;

fn positive_roots<F, D>(f: F, df: D, k_max: f64) -> Vec<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let k_at = |i: usize| k_max * 10f64.powf(-ROOT_SCAN_DECADES * (1.0 - i as f64 / ROOT_SCAN_POINTS as f64));
    let mut roots = Vec::new();
    let mut lo = k_at(0);
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        roots.push(lo);
    }
    for i in 1..=ROOT_SCAN_POINTS {
        let hi = k_at(i);
        let f_hi = f(hi);
        if f_hi == 0.0 {
            roots.push(hi);
        } else if f_lo != 0.0 && f_lo.signum() != f_hi.signum() && f_lo.is_finite() && f_hi.is_finite() {
            roots.push(refine_root(&f, &df, lo, hi, f_lo));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}

fn refine_root<F, D>(f: &F, df: &D, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let best = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let slope = df(best);
    if slope != 0.0 && slope.is_finite() {
        let newton = best - f(best) / slope;
        if newton > 0.0 && f(newton).abs() < f(best).abs() {
            return newton;
        }
    }
    best
}
