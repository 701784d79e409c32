//! Gauss-Jacobi rules on [0, 1] for the weight `(1 - τ)^a τ^b`.
//!
//! Nodes and weights come from the Golub-Welsch construction: eigenvalues
//! of the Jacobi matrix of the monic recurrence, and weights from the
//! first component of each eigenvector. Only that first row of the
//! eigenvector matrix is carried through the implicit QL sweeps, so a rule
//! of order n costs O(n^2).

use crate::error::{Error, Result};
use crate::special::{gamma, reciprocal_gamma};

#[derive(Debug, Clone)]
pub struct GaussJacobi {
    /// `(τ, 1 - τ, weight)`, with `1 - τ` carried separately so the
    /// `(1 - τ)^(a)` factor stays accurate next to τ = 1.
    nodes: Vec<(f64, f64, f64)>,
    a: f64,
    b: f64,
}

impl GaussJacobi {
    pub fn new(order: usize, a: f64, b: f64) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidParameter("Gauss-Jacobi order must be >= 1".into()));
        }
        if !(a > -1.0) || !(b > -1.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gauss-Jacobi exponents must exceed -1, got a = {a}, b = {b}"
            )));
        }
        let (mut diag, mut off) = jacobi_matrix(order, a, b);
        let mut first_row = vec![0.0; order];
        first_row[0] = 1.0;
        if !tridiagonal_ql(&mut diag, &mut off, &mut first_row) {
            return Err(Error::QuadratureNonConvergence { order, achieved: f64::NAN });
        }
        // total mass on [0, 1] is B(a + 1, b + 1)
        let mass = gamma(a + 1.0)? * gamma(b + 1.0)? * reciprocal_gamma(a + b + 2.0);
        let mut nodes: Vec<(f64, f64, f64)> = diag
            .iter()
            .zip(&first_row)
            .map(|(&t, &v)| (0.5 * (1.0 + t), 0.5 * (1.0 - t), mass * v * v))
            .collect();
        nodes.sort_by(|x, y| x.0.total_cmp(&y.0));
        Ok(Self { nodes, a, b })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    /// `Σ w_i g(τ_i, 1 - τ_i)`, i.e. `∫_0^1 (1 - τ)^a τ^b g dτ`.
    pub fn integrate<F>(&self, g: F) -> f64
    where
        F: Fn(f64, f64) -> f64,
    {
        self.nodes.iter().map(|&(t, omt, w)| w * g(t, omt)).sum()
    }
}

/// Recurrence coefficients on [-1, 1] for the weight `(1 - t)^a (1 + t)^b`.
fn jacobi_matrix(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = vec![0.0; n];
    diag.push((b - a) / (ab + 2.0));
    for k in 1..n {
        let kf = k as f64;
        let s = 2.0 * kf + ab;
        diag.push((b * b - a * a) / (s * (s + 2.0)));
        let beta = if k == 1 {
            // (1 + a + b) cancels, which matters when a + b = -1
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            4.0 * kf * (kf + a) * (kf + b) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off[k - 1] = beta.sqrt();
    }
    (diag, off)
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
///
/// `off[i]` couples rows i and i + 1; `off[n - 1]` is scratch. On return
/// `diag` holds the eigenvalues and `first_row` the first components of the
/// matching eigenvectors.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], first_row: &mut [f64]) -> bool {
    let n = diag.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 100 {
                return false;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let bb = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - bb;
                let z = first_row[i + 1];
                first_row[i + 1] = s * first_row[i] + c * z;
                first_row[i] = c * first_row[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    true
}
