//! Incomplete logarithmic least squares.
//!
//! With `s_i = ln w_i` the stationarity conditions of
//! `Σ (ln a_ij − s_i + s_j)²` over known ordered pairs read `L s = r`, where
//! `L` is the Laplacian of the comparison graph and `r_i = Σ_j ln a_ij` over
//! the neighbours of `i`. `L` is singular (constant shifts), so one log-weight
//! is pinned to zero and the remaining system is solved directly.

use nalgebra::{DMatrix, DVector};

use super::{disconnected, WeightVector};
use crate::error::{PcmError, Result};
use crate::graph::{graph_of, is_connected};
use crate::pcm::IncompletePcm;

/// LLSM weights with the first log-weight pinned.
pub fn llsm_weights(pcm: &IncompletePcm) -> Result<WeightVector> {
    llsm_weights_with_gauge(pcm, 0)
}

/// LLSM weights with `s_gauge = 0`; the normalized result does not depend on
/// the gauge choice.
pub fn llsm_weights_with_gauge(pcm: &IncompletePcm, gauge: usize) -> Result<WeightVector> {
    let n = pcm.n();
    if n == 0 {
        return Err(PcmError::EmptyProblem);
    }
    if gauge >= n {
        return Err(PcmError::Shape(format!("gauge index {gauge} out of range")));
    }
    let g = graph_of(pcm);
    if !is_connected(&g) {
        return Err(disconnected(pcm, &g));
    }
    if n == 1 {
        return WeightVector::normalized(vec![1.0]);
    }

    // Maps full index to reduced index, skipping the gauge vertex.
    let reduced = |i: usize| if i < gauge { i } else { i - 1 };
    let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
    let mut rhs = DVector::<f64>::zeros(n - 1);
    for (i, j, a) in pcm.known_upper() {
        let log_a = a.ln();
        if i != gauge {
            let ri = reduced(i);
            lap[(ri, ri)] += 1.0;
            rhs[ri] += log_a;
        }
        if j != gauge {
            let rj = reduced(j);
            lap[(rj, rj)] += 1.0;
            rhs[rj] -= log_a;
        }
        if i != gauge && j != gauge {
            lap[(reduced(i), reduced(j))] -= 1.0;
            lap[(reduced(j), reduced(i))] -= 1.0;
        }
    }

    // Connectedness makes the reduced Laplacian positive definite.
    let solution = match lap.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => lap
            .lu()
            .solve(&rhs)
            .ok_or(PcmError::Undefined("singular reduced Laplacian"))?,
    };

    let mut log_w = Vec::with_capacity(n);
    for i in 0..n {
        log_w.push(if i == gauge { 0.0 } else { solution[reduced(i)] });
    }
    // Shift before exponentiating so the largest weight is 1.
    let top = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    WeightVector::normalized(log_w.into_iter().map(|s| (s - top).exp()).collect())
}

/// `Σ (ln a_ij − s_i + s_j)²` over all known ordered pairs `i ≠ j`.
pub fn llsm_objective(pcm: &IncompletePcm, log_weights: &[f64]) -> f64 {
    pcm.known_upper()
        .map(|(i, j, a)| {
            let r = a.ln() - log_weights[i] + log_weights[j];
            2.0 * r * r
        })
        .sum()
}
