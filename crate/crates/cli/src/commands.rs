use hyperkg::ek::EkParams;
use hyperkg::kg::{DampedWave, KgSolution, LightConePoint, TravellingWave, Truncation};

use crate::args::{EkTable, EvalDamped, EvalLinear, EvalNd, EvalNonlinear, Grid};
use crate::error::CliError;
use crate::output::{emit, Table};

/// Grid points in row order: t outer, x inner.
fn grid_points(grid: &Grid, c: f64, rest: &[f64]) -> Result<Vec<LightConePoint>, CliError> {
    let xs = grid.x.values();
    let mut points = Vec::with_capacity(xs.len() * grid.t.count);
    for t in grid.t.values() {
        for &x in &xs {
            let mut coords = Vec::with_capacity(1 + rest.len());
            coords.push(x);
            coords.extend_from_slice(rest);
            points.push(LightConePoint::new(coords, t, c)?);
        }
    }
    Ok(points)
}

fn max_w(points: &[LightConePoint]) -> f64 {
    points.iter().map(LightConePoint::w).fold(0.0, f64::max)
}

fn truncation(fixed: Option<usize>, points: &[LightConePoint]) -> Truncation {
    fixed.map_or(Truncation::Auto { w_max: max_w(points) }, Truncation::Fixed)
}

fn table_for<F>(points: &[LightConePoint], names: Vec<String>, eval: F) -> Result<Table, CliError>
where
    F: Fn(&LightConePoint) -> hyperkg::error::Result<f64>,
{
    let mut table = Table::new(names);
    for pt in points {
        let mut row = pt.x().to_vec();
        row.extend([pt.t(), pt.w(), eval(pt)?]);
        table.push(row);
    }
    Ok(table)
}

fn simple_columns() -> Vec<String> {
    ["x", "t", "w", "u"].map(String::from).to_vec()
}

pub fn eval_linear(args: &EvalLinear) -> Result<(), CliError> {
    let p = &args.physical;
    let points = grid_points(&args.grid, p.c, &[])?;
    let sol = KgSolution::new(p.alpha, p.lambda, p.c, 1, truncation(args.truncation, &points))?;
    let table = table_for(&points, simple_columns(), |pt| sol.eval(pt))?;
    emit(args.out.output.as_deref(), |w| table.write(args.out.format, w))
}

pub fn eval_nd(args: &EvalNd) -> Result<(), CliError> {
    let p = &args.physical;
    if args.dim == 0 {
        return Err(CliError::Usage("--dim must be at least 1".into()));
    }
    let rest = if args.x_fixed.is_empty() {
        vec![0.0; args.dim - 1]
    } else if args.x_fixed.len() == args.dim - 1 {
        args.x_fixed.clone()
    } else {
        return Err(CliError::Usage(format!(
            "--x-fixed needs {} values for --dim {}, got {}",
            args.dim - 1,
            args.dim,
            args.x_fixed.len()
        )));
    };
    let points = grid_points(&args.grid, p.c, &rest)?;
    let sol = KgSolution::new(p.alpha, p.lambda, p.c, args.dim, truncation(args.truncation, &points))?;
    let mut names: Vec<String> = (1..=args.dim).map(|i| format!("x{i}")).collect();
    names.extend(["t", "w", "u"].map(String::from));
    let table = table_for(&points, names, |pt| sol.eval(pt))?;
    emit(args.out.output.as_deref(), |w| table.write(args.out.format, w))
}

pub fn eval_nonlinear(args: &EvalNonlinear) -> Result<(), CliError> {
    let p = &args.physical;
    let wave = match args.gamma_src {
        None => TravellingWave::new(p.alpha, p.lambda, p.c, args.s)?,
        Some(g) => {
            let roots = TravellingWave::nonhomogeneous(p.alpha, p.lambda, g, p.c, args.s)?;
            let index = args.root.unwrap_or(0);
            let count = roots.len();
            roots.into_iter().nth(index).ok_or_else(|| {
                CliError::Usage(format!("--root {index} requested but only {count} positive root(s) exist"))
            })?
        }
    };
    let points = grid_points(&args.grid, p.c, &[])?;
    let table = table_for(&points, simple_columns(), |pt| wave.eval(pt))?;
    emit(args.out.output.as_deref(), |w| table.write(args.out.format, w))
}

pub fn eval_damped(args: &EvalDamped) -> Result<(), CliError> {
    let points = grid_points(&args.grid, 1.0, &[])?;
    let wave = DampedWave::new(args.sigma, max_w(&points))?;
    let table = table_for(&points, simple_columns(), |pt| wave.eval(pt.x()[0], pt.t()))?;
    emit(args.out.output.as_deref(), |w| table.write(args.out.format, w))
}

pub fn ek_table(args: &EkTable) -> Result<(), CliError> {
    let mut table = Table::new(["m", "eta", "alpha_ek", "beta", "coefficient"]);
    for &m in &args.m {
        for &eta in &args.eta {
            for &order in &args.alpha_ek {
                let p = EkParams::new(m, eta, order)?;
                for &beta in &args.beta {
                    table.push(vec![m, eta, order, beta, p.monomial_coefficient(beta)?]);
                }
            }
        }
    }
    emit(args.out.output.as_deref(), |w| table.write(args.out.format, w))
}
