//! Perron eigenpair of a complete positive matrix by power iteration.

use serde::{Deserialize, Serialize};

use super::WeightVector;
use crate::error::{PcmError, Result};
use crate::pcm::IncompletePcm;

/// Max-norm change between successive normalized iterates.
pub const POWER_TOL: f64 = 1e-12;
pub const POWER_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub lambda_max: f64,
    pub vector: WeightVector,
    pub iterations: usize,
}

/// Principal eigenvalue and right eigenvector of a complete PCM.
pub fn perron_vector(pcm: &IncompletePcm, tol: f64, max_iter: usize) -> Result<EigenResult> {
    let n = pcm.n();
    if n == 0 {
        return Err(PcmError::EmptyProblem);
    }
    let values = pcm
        .dense_values()
        .ok_or(PcmError::Undefined("power iteration needs a complete matrix"))?;
    let mut v = vec![1.0 / n as f64; n];
    let mut scratch = vec![0.0; n];
    match power_iterate(&values, n, &mut v, &mut scratch, tol, max_iter) {
        Ok((lambda_max, iterations)) => Ok(EigenResult {
            lambda_max,
            vector: WeightVector::normalized(v)?,
            iterations,
        }),
        Err(lambda) => Err(PcmError::NoConvergence {
            stage: "power iteration",
            iterations: max_iter,
            best_lambda: lambda,
            best: None,
        }),
    }
}

/// Runs power iteration on the row-major `n × n` positive matrix `a`,
/// starting from (and overwriting) `v`, which must be positive with sum 1.
///
/// Returns `(lambda, iterations)`, or the last estimate on failure.
pub(crate) fn power_iterate(
    a: &[f64],
    n: usize,
    v: &mut [f64],
    next: &mut [f64],
    tol: f64,
    max_iter: usize,
) -> std::result::Result<(f64, usize), f64> {
    let mut lambda = f64::NAN;
    for iter in 1..=max_iter {
        for (row, out) in a.chunks_exact(n).zip(next.iter_mut()) {
            *out = row.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
        }
        // With Σ v = 1, Σ (A v) estimates λ.
        lambda = next.iter().sum();
        let mut delta: f64 = 0.0;
        for (cur, nx) in v.iter_mut().zip(next.iter()) {
            let updated = nx / lambda;
            delta = delta.max((updated - *cur).abs());
            *cur = updated;
        }
        if delta < tol {
            return Ok((lambda, iter));
        }
    }
    Err(lambda)
}

/// `(λ_max − n) / (n − 1)`, clamped at zero.
pub fn consistency_index(lambda_max: f64, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(PcmError::Undefined("consistency index needs n >= 2"));
    }
    let n = n as f64;
    Ok(((lambda_max - n) / (n - 1.0)).max(0.0))
}
