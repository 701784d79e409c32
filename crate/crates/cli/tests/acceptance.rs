//! Acceptance criteria, one line per criterion. Exits non-zero if any fail.

use std::process::{Command, ExitCode};

use hyperkg::ek::{EkParams, HyperBessel};
use hyperkg::error::Result;
use hyperkg::kg::{DampedWave, KgSolution, LightConePoint, TravellingWave, Truncation};
use hyperkg::series::GeneralizedPowerSeries;
use hyperkg::special::bessel_j;
use hyperkg::verify::{classical_limit_check, damped_convergence, linear_residual, nonlinear_residual, DAMPED_MIN_ORDER};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: pass flag plus a one-line summary.
type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(got: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        got.abs()
    } else {
        (got - expected).abs() / expected.abs()
    }
}

fn backend_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for _ in 0..200 {
        let m = [1.0, 2.0, 3.0][rng.gen_range(0..3)];
        let eta = rng.gen_range(0.0..3.0);
        let order = 2.0 - rng.gen_range(0.0..2.0);
        let beta = rng.gen_range(0.0..6.0);
        let x = rng.gen_range(0.1..3.0);
        let p = EkParams::new(m, eta, order)?;
        let exact = p.monomial_coefficient(beta)? * f64::powf(x, beta);
        let got = p.quadrature(|u| u.powf(beta), x)?.value;
        worst = worst.max(rel(got, exact));
        cases += 1;
    }
    Ok((worst <= 1e-8, format!("{cases} random cases, worst relative error {worst:e} (tol 1e-8)")))
}

fn integer_powers() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for h in [1, 2, 3, 5].map(HyperBessel::radial) {
        for r in [1u32, 2] {
            for beta in [2.0, 3.5, 4.0, 6.0] {
                let mono = GeneralizedPowerSeries::monomial(1.0, beta);
                let frac = h.frac_power_apply(r as f64, &mono)?;
                let oracle = h.integer_power_oracle(r, &mono);
                let err = rel(frac.coeffs()[0], oracle.coeffs()[0]).max((frac.gamma0() - oracle.gamma0()).abs());
                worst = worst.max(err);
                cases += 1;
            }
        }
    }
    Ok((worst <= 1e-11, format!("{cases} cases over N = 1, 2, 3, 5, worst relative error {worst:e} (tol 1e-11)")))
}

const GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

fn linear_cases(dims: &[usize], alphas: &[f64]) -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for &dim in dims {
        for &alpha in alphas {
            let sol = KgSolution::new(alpha, 1.0, 1.0, dim, Truncation::Fixed(40))?;
            let report = linear_residual(&sol, &GRID, 1e-10)?;
            ok &= report.passed();
            worst = worst.max(report.max_abs_residual);
            cases += 1;
        }
    }
    Ok((ok, format!("{cases} cases, K = 40, worst residual {worst:e} (tol max(1e-10, 10 tail))")))
}

fn bessel_j0() -> Outcome {
    let sol = KgSolution::new(1.0, 1.0, 1.0, 1, Truncation::Auto { w_max: 10.0 })?;
    let mut worst: f64 = 0.0;
    for i in 0..=20 {
        let w = 0.5 * i as f64;
        worst = worst.max((sol.eval_w(w)? - bessel_j(0.0, w)?).abs());
    }
    Ok((worst <= 1e-10, format!("21 points on [0, 10], max |u - J0| = {worst:e} (tol 1e-10)")))
}

fn classical_n3() -> Outcome {
    let grid: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    let check = classical_limit_check(3, 1.0, 1.0, &grid, 1e-9)?;
    let detail = check.report.detail.clone().unwrap_or_default();
    let ok = check.report.passed() && check.half_power.passes && detail.contains("w^(N-1)");
    Ok((
        ok,
        format!(
            "w^((N-1)/2) residual {:e}, w^(N-1) residual {:e} recorded in detail",
            check.half_power.max_abs_residual, check.full_power.max_abs_residual
        ),
    ))
}

fn nonlinear() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for alpha in [0.5, 1.0] {
        for s in [0.5, 2.0, 3.0] {
            for lambda in [0.5, 1.0, 2.0] {
                let report = nonlinear_residual(&TravellingWave::new(alpha, lambda, 1.0, s)?, &GRID)?;
                ok &= report.passed();
                worst = worst.max(report.max_abs_residual);
            }
        }
    }
    let mut meron_worst: f64 = 0.0;
    for lambda in [0.5, 2.0] {
        let tw = TravellingWave::new(1.0, lambda, 1.0, 3.0)?;
        for (x, t) in [(0.0, 1.0), (0.3, 1.0), (-0.5, 2.0), (1.2, 1.5), (-2.0, 3.0)] {
            let got = tw.eval(&LightConePoint::new(vec![x], t, 1.0)?)?;
            meron_worst = meron_worst.max(rel(got, (lambda * (t * t - x * x)).powf(-0.5)));
        }
    }
    ok &= meron_worst <= 1e-14;
    Ok((ok, format!("18 residual cases, worst {worst:e}; meron worst relative error {meron_worst:e} (tol 1e-14)")))
}

fn closed_form_k() -> Outcome {
    let mut worst: f64 = 0.0;
    for s in [0.5, 2.0, 3.0, 5.0] {
        for lambda in [0.5, 1.0, 2.0] {
            let p = 1.0 / (1.0 - s);
            let expected = f64::powf(4.0 * p * p / lambda, 1.0 / (s - 1.0));
            worst = worst.max(rel(TravellingWave::new(1.0, lambda, 1.0, s)?.k, expected));
        }
    }
    Ok((worst <= 1e-12, format!("s = 0.5, 2, 3, 5, worst relative error in k {worst:e} (tol 1e-12)")))
}

fn damped() -> Outcome {
    let points: Vec<(f64, f64)> =
        [-0.5, 0.0, 0.5].iter().flat_map(|&x| [1.5, 2.0, 2.5].map(|t| (x, t))).collect();
    let mut lowest = f64::INFINITY;
    for sigma in [0.3, 0.6] {
        let wave = DampedWave::new(sigma, 2.6)?;
        let (_, orders) = damped_convergence(&wave, &points, &[1e-2, 5e-3, 2.5e-3])?;
        lowest = orders.iter().copied().fold(lowest, f64::min);
    }
    Ok((lowest >= DAMPED_MIN_ORDER, format!("lowest observed order {lowest:.4} (need >= {DAMPED_MIN_ORDER})")))
}

fn nonhomogeneous() -> Outcome {
    let mut ok = true;
    let mut zero_worst: f64 = 0.0;
    for (alpha, s) in [(1.0, 3.0), (0.5, 0.5), (1.0, 0.5), (0.5, 3.0), (1.0, 2.0)] {
        let k = TravellingWave::new(alpha, 1.0, 1.0, s)?.k;
        let roots = TravellingWave::nonhomogeneous(alpha, 1.0, 0.0, 1.0, s)?;
        let best = roots.iter().map(|r| rel(r.k, k)).fold(f64::INFINITY, f64::min);
        zero_worst = zero_worst.max(best);
    }
    ok &= zero_worst <= 1e-12;
    let mut balance_worst: f64 = 0.0;
    let mut roots = 0;
    for &(alpha, s, g) in &[(1.0, 3.0, 0.2), (0.5, 3.0, -0.3), (1.0, 0.5, 0.7), (1.0, 2.0, 0.5)] {
        for tw in TravellingWave::nonhomogeneous(alpha, 1.0, g, 1.0, s)? {
            balance_worst = balance_worst.max(tw.balance_residual().abs());
            roots += 1;
        }
    }
    ok &= balance_worst <= 1e-11;
    Ok((
        ok,
        format!("gamma = 0 worst relative k error {zero_worst:e}; {roots} roots, worst balance {balance_worst:e}"),
    ))
}

fn run_binary(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperkg")).args(args).output().expect("binary runs");
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    bytes.extend(out.status.code().unwrap_or(-1).to_le_bytes());
    bytes
}

fn determinism() -> Outcome {
    let configs: [&[&str]; 3] = [
        &["verify", "--suite", "all"],
        &["eval-nd", "--dim", "3", "--alpha", "0.4", "--x=-1:1:11", "--t", "1.5:4:6"],
        &["eval-nonlinear", "--s", "3", "--gamma-src", "0.2", "--root", "1", "--x=-1:1:5", "--t", "2"],
    ];
    let ok = configs.iter().all(|args| run_binary(args) == run_binary(args));
    Ok((ok, format!("{} configurations run twice, outputs byte-identical", configs.len())))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("quadrature and gamma-ratio backends agree", backend_equivalence),
        ("fractional powers at integer order match differentiation", integer_powers),
        ("1-D linear residuals", || linear_cases(&[1], &[0.3, 0.5, 0.7, 1.0])),
        ("N-D linear residuals", || linear_cases(&[2, 3, 5], &[0.5, 1.0])),
        ("alpha = 1 reproduces J0", bessel_j0),
        ("N = 3 classical limit normalization", classical_n3),
        ("nonlinear travelling waves and meron", nonlinear),
        ("alpha = 1 amplitude closed form", closed_form_k),
        ("damped wave second-order convergence", damped),
        ("non-homogeneous roots", nonhomogeneous),
        ("CLI determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (ok, summary) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failures += 1;
        }
        println!("{} {:>2} {name}: {summary}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
