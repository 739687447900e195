//! Fixed-effects logistic regression by iteratively reweighted least
//! squares (Newton-Raphson on the Bernoulli log-likelihood).

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 100;
pub const TOLERANCE: f64 = 1e-10;
/// Any coefficient beyond this magnitude is taken as a sign of (quasi-)
/// complete separation: the likelihood has no finite maximum.
pub const SEPARATION_BOUND: f64 = 30.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticFit {
    pub coefficients: Vec<f64>,
    /// From the diagonal of the inverse observed information; NaN when
    /// separation left the information matrix unusable.
    pub standard_errors: Vec<f64>,
    pub converged: bool,
    pub separated: bool,
    pub iterations: usize,
    pub log_likelihood: f64,
}

fn eta(row: &[f64], beta: &[f64]) -> f64 {
    row.iter().zip(beta).map(|(x, b)| x * b).sum()
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `log(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

pub fn log_likelihood(x: &[Vec<f64>], y: &[bool], beta: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(row, &yi)| {
            let z = eta(row, beta);
            if yi {
                -softplus(-z)
            } else {
                -softplus(z)
            }
        })
        .sum()
}

/// Gradient of [`log_likelihood`] with respect to `beta`.
pub fn score(x: &[Vec<f64>], y: &[bool], beta: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; beta.len()];
    for (row, &yi) in x.iter().zip(y) {
        let resid = f64::from(u8::from(yi)) - sigmoid(eta(row, beta));
        for (gj, xj) in g.iter_mut().zip(row) {
            *gj += resid * xj;
        }
    }
    g
}

/// Observed (= expected, for the canonical link) information `X'WX`.
fn information(x: &[Vec<f64>], beta: &[f64]) -> DMatrix<f64> {
    let k = beta.len();
    let mut h = DMatrix::zeros(k, k);
    for row in x {
        let p = sigmoid(eta(row, beta));
        let w = p * (1.0 - p);
        for i in 0..k {
            for j in 0..=i {
                h[(i, j)] += w * row[i] * row[j];
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            h[(j, i)] = h[(i, j)];
        }
    }
    h
}

/// Cholesky factor of the information matrix, refusing numerically
/// rank-deficient matrices: a pivot that keeps less than 1e-10 of its
/// diagonal entry means the column is (nearly) a combination of earlier
/// ones.
fn factor(h: DMatrix<f64>) -> Option<nalgebra::Cholesky<f64, nalgebra::Dyn>> {
    let diag: Vec<f64> = h.diagonal().iter().copied().collect();
    let chol = h.cholesky()?;
    let l = chol.l_dirty();
    let full_rank = diag
        .iter()
        .enumerate()
        .all(|(i, d)| l[(i, i)] * l[(i, i)] > 1e-10 * d);
    full_rank.then_some(chol)
}

fn check_shape(x: &[Vec<f64>], y: &[bool]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let k = x.first().map(Vec::len).unwrap_or(0);
    if k == 0 {
        return Err(Error::InvalidArgument(
            "design matrix has no columns".into(),
        ));
    }
    if let Some(i) = x.iter().position(|r| r.len() != k) {
        return Err(Error::InvalidArgument(format!(
            "design row {i} has {} columns, expected {k}",
            x[i].len()
        )));
    }
    if x.len() < k {
        return Err(Error::InvalidArgument(format!(
            "{} rows cannot identify {k} coefficients",
            x.len()
        )));
    }
    if x.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(
            "design matrix contains a non-finite value".into(),
        ));
    }
    Ok(k)
}

/// Maximum-likelihood fit. Iterates until the largest coefficient update
/// is below [`TOLERANCE`] or [`MAX_ITERATIONS`] is reached; separation is
/// flagged (with `converged = false`) rather than raised.
pub fn logistic_fit(x: &[Vec<f64>], y: &[bool]) -> Result<LogisticFit> {
    let k = check_shape(x, y)?;
    let mut beta = vec![0.0; k];
    let mut converged = false;
    let mut separated = false;
    let mut iterations = 0;

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let h = information(x, &beta);
        let g = DVector::from_vec(score(x, y, &beta));
        let Some(chol) = factor(h) else {
            if iterations == 1 {
                return Err(Error::SingularInformation);
            }
            // weights collapsed on the way to infinity
            separated = true;
            break;
        };
        let step = chol.solve(&g);
        let mut max_step: f64 = 0.0;
        for (b, s) in beta.iter_mut().zip(step.iter()) {
            *b += s;
            max_step = max_step.max(s.abs());
        }
        if !max_step.is_finite() {
            return Err(Error::SingularInformation);
        }
        if beta.iter().any(|b| b.abs() > SEPARATION_BOUND) {
            separated = true;
            break;
        }
        if max_step < TOLERANCE {
            converged = true;
            break;
        }
    }

    let standard_errors = match factor(information(x, &beta)) {
        Some(chol) => chol.inverse().diagonal().iter().map(|v| v.sqrt()).collect(),
        None if separated => vec![f64::NAN; k],
        None => return Err(Error::SingularInformation),
    };
    Ok(LogisticFit {
        log_likelihood: log_likelihood(x, y, &beta),
        coefficients: beta,
        standard_errors,
        converged,
        separated,
        iterations,
    })
}
