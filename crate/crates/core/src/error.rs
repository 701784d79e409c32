use thiserror::Error;

/// Errors raised by the numerical kernels, operators and solution builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function has a pole at x = {0}")]
    GammaPole(f64),

    #[error("|gamma({0})| exceeds the double-precision range")]
    GammaOverflow(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (|z| = {z})")]
    SeriesNonConvergence { terms: usize, z: f64 },

    #[error(
        "Erdélyi-Kober precondition violated at term {term}: eta + beta/m + 1 = {value} is not positive"
    )]
    Precondition { term: usize, value: f64 },

    #[error("quadrature did not converge: order {order}, last change {achieved:e}")]
    QuadratureNonConvergence { order: usize, achieved: f64 },

    #[error("resonance: the fractional power annihilates w^{exponent}, the source cannot be inverted")]
    Resonance { exponent: f64 },

    #[error("point lies outside the light cone (c^2 t^2 - |x|^2 = {w_squared})")]
    OutsideLightCone { w_squared: f64 },

    #[error("solution is singular at w = 0 (leading exponent {exponent})")]
    SingularAtOrigin { exponent: f64 },

    #[error("amplitude is not real: {0}")]
    ComplexResult(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("no positive root of the amplitude equation on (0, {k_max}]")]
    NoPositiveRoot { k_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
