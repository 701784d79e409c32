use hyperkg::ek::{EkParams, HyperBessel};
use hyperkg::error::Result;
use hyperkg::kg::{KgSolution, TravellingWave, Truncation};
use hyperkg::series::GeneralizedPowerSeries;
use hyperkg::special::gamma_ratio;
use hyperkg::verify::{
    classical_limit_check, damped_report, linear_residual, nonlinear_residual, ResidualReport,
};

use crate::args::Suite;

const RESIDUAL_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const LINEAR_TOLERANCE: f64 = 1e-10;
const LINEAR_ORDER: usize = 40;

pub fn name(suite: Suite) -> &'static str {
    match suite {
        Suite::Linear => "linear",
        Suite::Nd => "nd",
        Suite::Nonlinear => "nonlinear",
        Suite::ClassicalLimits => "classical-limits",
        Suite::Damped => "damped",
        Suite::Ek => "ek",
        Suite::All => "all",
    }
}

pub fn run(suite: Suite) -> Result<Vec<ResidualReport>> {
    match suite {
        Suite::Linear => linear(&[1], &[0.3, 0.5, 0.7, 1.0]),
        Suite::Nd => linear(&[2, 3, 5], &[0.5, 1.0]),
        Suite::Nonlinear => nonlinear(),
        Suite::ClassicalLimits => classical_limits(),
        Suite::Damped => damped(),
        Suite::Ek => ek(),
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Linear, Suite::Nd, Suite::Nonlinear, Suite::ClassicalLimits, Suite::Damped, Suite::Ek] {
                all.extend(run(s)?);
            }
            Ok(all)
        }
    }
}

fn linear(dims: &[usize], alphas: &[f64]) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for &dim in dims {
        for &alpha in alphas {
            let sol = KgSolution::new(alpha, 1.0, 1.0, dim, Truncation::Fixed(LINEAR_ORDER))?;
            out.push(linear_residual(&sol, &RESIDUAL_GRID, LINEAR_TOLERANCE)?);
        }
    }
    Ok(out)
}

fn nonlinear() -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    for alpha in [0.5, 1.0] {
        for s in [0.5, 2.0, 3.0] {
            for lambda in [0.5, 1.0, 2.0] {
                let tw = TravellingWave::new(alpha, lambda, 1.0, s)?;
                out.push(nonlinear_residual(&tw, &RESIDUAL_GRID)?);
            }
        }
    }
    for &(alpha, s, gamma_src) in &[(1.0, 3.0, 0.2), (0.5, 3.0, -0.3), (1.0, 0.5, 0.7)] {
        for tw in TravellingWave::nonhomogeneous(alpha, 1.0, gamma_src, 1.0, s)? {
            out.push(nonlinear_residual(&tw, &RESIDUAL_GRID)?);
        }
    }
    Ok(out)
}

fn classical_limits() -> Result<Vec<ResidualReport>> {
    let grid: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    [(1usize, 1e-10), (2, 1e-9), (3, 1e-9), (5, 1e-9)]
        .iter()
        .map(|&(dim, tol)| Ok(classical_limit_check(dim, 1.0, 1.0, &grid, tol)?.report))
        .collect()
}

fn damped() -> Result<Vec<ResidualReport>> {
    let points: Vec<(f64, f64)> = [-0.5, 0.0, 0.5]
        .iter()
        .flat_map(|&x| [1.5, 2.0, 2.5].map(|t| (x, t)))
        .collect();
    [0.3, 0.6]
        .iter()
        .map(|&sigma| damped_report(sigma, &points, &[1e-2, 5e-3, 2.5e-3]))
        .collect()
}

fn relative(got: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        got.abs()
    } else {
        (got - expected).abs() / expected.abs()
    }
}

/// Residual columns hold relative errors for these checks.
fn ek() -> Result<Vec<ResidualReport>> {
    let mut quadrature = Vec::new();
    for m in [1.0, 2.0, 3.0] {
        for eta in [0.0, 0.7, 1.9, 3.0] {
            for order in [0.25, 0.9, 1.6, 2.0] {
                let p = EkParams::new(m, eta, order)?;
                for beta in [0.0, 1.3, 3.7, 6.0] {
                    let coeff = p.monomial_coefficient(beta)?;
                    for x in [0.5, 1.0, 2.0] {
                        let got = p.quadrature(|u| u.powf(beta), x)?.value;
                        quadrature.push((x, relative(got, coeff * f64::powf(x, beta))));
                    }
                }
            }
        }
    }

    let mut integer = Vec::new();
    let mut specs = vec![HyperBessel::new(vec![-1.0, 1.0, 0.0])?];
    specs.extend([2, 3, 5].map(HyperBessel::radial));
    for h in &specs {
        for r in [1u32, 2] {
            for beta in [2.0, 4.0, 6.0] {
                let mono = GeneralizedPowerSeries::monomial(1.0, beta);
                let frac = h.frac_power_apply(r as f64, &mono)?;
                let oracle = h.integer_power_oracle(r, &mono);
                integer.push((beta, relative(frac.coeffs()[0], oracle.coeffs()[0])));
            }
        }
    }

    let mut rl = Vec::new();
    let d = HyperBessel::derivative();
    for alpha in [0.1, 0.35, 0.5, 0.8] {
        for beta in [0.0, 0.5, 1.0, 2.25, 4.0] {
            let got = d.frac_power_apply(alpha, &GeneralizedPowerSeries::monomial(1.0, beta))?;
            rl.push((beta, relative(got.coeffs()[0], gamma_ratio(beta + 1.0, beta + 1.0 - alpha)?)));
        }
    }

    Ok(vec![
        ResidualReport::new("ek quadrature vs gamma ratio", quadrature, 0.0, 1e-8)
            .with_detail("relative error, 192 parameter sets at x = 0.5, 1, 2"),
        ResidualReport::new("ek integer powers vs differentiation", integer, 0.0, 1e-11)
            .with_detail("relative error, alpha = 1, 2"),
        ResidualReport::new("ek riemann-liouville reduction", rl, 0.0, 1e-13).with_detail("relative error"),
    ])
}
