use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hyperkg", version, about = "Fractional Klein-Gordon solutions and their residual checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the linear 1-D solution on an (x, t) grid.
    EvalLinear(EvalLinear),
    /// Evaluate the linear N-dimensional solution along x_1.
    EvalNd(EvalNd),
    /// Evaluate a travelling-wave solution of the power-law equation.
    EvalNonlinear(EvalNonlinear),
    /// Evaluate the damped-wave solution (c = 1, alpha = 1).
    EvalDamped(EvalDamped),
    /// Run a residual verification suite and print its report.
    Verify(Verify),
    /// Tabulate Erdelyi-Kober monomial coefficients.
    EkTable(EkTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// A single value `v` or an inclusive range `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    let f = i as f64 / last;
                    // symmetric ranges hit 0 exactly
                    self.min * (1.0 - f) + self.max * f
                }
            })
            .collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}"));
        let parts: Vec<&str> = s.split(':').collect();
        let range = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Range { min: v, max: v, count: 1 }
            }
            [a, b, n] => {
                let count = n.trim().parse::<usize>().map_err(|e| format!("bad count {n:?}: {e}"))?;
                Range { min: num(a)?, max: num(b)?, count }
            }
            _ => return Err(format!("expected VALUE or MIN:MAX:COUNT, got {s:?}")),
        };
        if !range.min.is_finite() || !range.max.is_finite() {
            return Err(format!("range bounds must be finite, got {s:?}"));
        }
        if range.count == 0 {
            return Err("range count must be at least 1".into());
        }
        if range.count == 1 && range.min != range.max {
            return Err(format!("a one-point range needs min == max, got {s:?}"));
        }
        Ok(range)
    }
}

#[derive(Debug, Args)]
pub struct Grid {
    /// Space coordinate: VALUE or MIN:MAX:COUNT.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub x: Range,
    /// Time: VALUE or MIN:MAX:COUNT.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Range,
}

#[derive(Debug, Args)]
pub struct Physical {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct EvalLinear {
    #[command(flatten)]
    pub physical: Physical,
    #[command(flatten)]
    pub grid: Grid,
    /// Fixed truncation order K; chosen from the grid when omitted.
    #[arg(long)]
    pub truncation: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalNd {
    #[command(flatten)]
    pub physical: Physical,
    #[arg(long)]
    pub dim: usize,
    #[command(flatten)]
    pub grid: Grid,
    /// Comma-separated x_2..x_N; zeros when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x_fixed: Vec<f64>,
    #[arg(long)]
    pub truncation: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalNonlinear {
    #[command(flatten)]
    pub physical: Physical,
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// Source strength of the non-homogeneous equation.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_src: Option<f64>,
    /// Which positive root (0 = smallest) when the source admits several.
    #[arg(long, requires = "gamma_src")]
    pub root: Option<usize>,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalDamped {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    #[command(flatten)]
    pub grid: Grid,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Linear,
    Nd,
    Nonlinear,
    ClassicalLimits,
    Damped,
    Ek,
    All,
}

#[derive(Debug, Args)]
pub struct Verify {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EkTable {
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub m: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
    pub eta: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,-0.5,0.5,1")]
    pub alpha_ek: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1,2,3,4")]
    pub beta: Vec<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}
