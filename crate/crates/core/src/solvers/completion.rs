//! Eigenvector method for incomplete matrices.
//!
//! Each missing upper-triangle cell becomes a variable `x_k = exp(t_k)` and
//! `λ_max(A(exp t))` is minimized over `t`. The objective is convex in `t`, so
//! cyclic coordinate descent with a bracketed golden-section search on each
//! coordinate reaches the global minimum. The completed matrix is then fed
//! to the ordinary eigenvector method.

use serde::{Deserialize, Serialize};

use super::eigen::{perron_vector, power_iterate, POWER_MAX_ITER, POWER_TOL};
use super::{disconnected, WeightVector};
use crate::error::{PcmError, Result};
use crate::graph::{graph_of, is_connected};
use crate::pcm::IncompletePcm;

/// Relative λ_max improvement per cycle below which descent stops.
pub const COMPLETION_TOL: f64 = 1e-10;
pub const COMPLETION_MAX_ITER: usize = 10_000;

/// Width of the final golden-section interval in log space. λ_max is only
/// resolved to about `POWER_TOL`, which flattens the slice below roughly this
/// scale.
const LINE_TOL: f64 = 1e-7;
const MIN_STEP: f64 = 1e-4;
const MAX_BRACKET_STEPS: usize = 60;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionResult {
    pub completed: IncompletePcm,
    /// Upper-triangle cells that were missing, in row-major order.
    pub cells: Vec<(usize, usize)>,
    /// Optimal value of each cell in `cells`.
    pub variables: Vec<f64>,
    pub lambda_max: f64,
    /// Coordinate-descent cycles performed.
    pub iterations: usize,
}

/// λ_max-minimizing completion of `pcm`.
pub fn em_complete(pcm: &IncompletePcm, tol: f64, max_iter: usize) -> Result<CompletionResult> {
    let n = pcm.n();
    if n == 0 {
        return Err(PcmError::EmptyProblem);
    }
    let g = graph_of(pcm);
    if !is_connected(&g) {
        return Err(disconnected(pcm, &g));
    }
    let cells = pcm.missing_upper();
    if cells.is_empty() {
        let eig = perron_vector(pcm, POWER_TOL, POWER_MAX_ITER)?;
        return Ok(CompletionResult {
            completed: pcm.clone(),
            cells,
            variables: Vec::new(),
            lambda_max: eig.lambda_max,
            iterations: 0,
        });
    }

    let mut slice = Slice::new(pcm, &cells);
    let mut t = vec![0.0; cells.len()];
    let mut steps = vec![1.0; cells.len()];
    let mut current = slice.eval(&t, None)?;
    let mut cycles = 0;
    let mut converged = false;

    while cycles < max_iter {
        cycles += 1;
        let start = current;
        for k in 0..cells.len() {
            let (tk, lambda) = slice.minimize_coordinate(&t, k, current, steps[k])?;
            steps[k] = (2.0 * (tk - t[k]).abs()).clamp(MIN_STEP, 1.0);
            t[k] = tk;
            current = lambda;
        }
        if (start - current) <= tol * start.abs() {
            converged = true;
            break;
        }
    }

    let completed = completed_matrix(pcm, &cells, &t)?;
    if !converged {
        return Err(PcmError::NoConvergence {
            stage: "lambda_max completion",
            iterations: cycles,
            best_lambda: current,
            best: Some(Box::new(completed)),
        });
    }
    // Re-evaluate from a uniform start so the reported value does not depend
    // on the warm-start history.
    let eig = perron_vector(&completed, POWER_TOL, POWER_MAX_ITER)?;
    Ok(CompletionResult {
        completed,
        cells,
        variables: t.iter().map(|x| x.exp()).collect(),
        lambda_max: eig.lambda_max,
        iterations: cycles,
    })
}

/// Normalized Perron vector of the λ_max-minimizing completion.
pub fn em_weights(pcm: &IncompletePcm, tol: f64, max_iter: usize) -> Result<WeightVector> {
    let completion = em_complete(pcm, tol, max_iter)?;
    Ok(perron_vector(&completion.completed, POWER_TOL, POWER_MAX_ITER)?.vector)
}

fn completed_matrix(pcm: &IncompletePcm, cells: &[(usize, usize)], t: &[f64]) -> Result<IncompletePcm> {
    let mut out = pcm.clone();
    for (&(i, j), tk) in cells.iter().zip(t) {
        out.set_pair(i, j, tk.exp())?;
    }
    Ok(out)
}

/// Dense working copy of `A(exp t)` plus a warm-started eigenvector.
struct Slice {
    n: usize,
    values: Vec<f64>,
    cells: Vec<(usize, usize)>,
    vector: Vec<f64>,
    scratch: Vec<f64>,
}

impl Slice {
    fn new(pcm: &IncompletePcm, cells: &[(usize, usize)]) -> Self {
        let n = pcm.n();
        let values = pcm
            .to_rows()
            .into_iter()
            .flatten()
            .map(|v| v.unwrap_or(1.0))
            .collect();
        Self {
            n,
            values,
            cells: cells.to_vec(),
            vector: vec![1.0 / n as f64; n],
            scratch: vec![0.0; n],
        }
    }

    fn set(&mut self, k: usize, tk: f64) {
        let (i, j) = self.cells[k];
        let x = tk.exp();
        self.values[i * self.n + j] = x;
        self.values[j * self.n + i] = 1.0 / x;
    }

    /// λ_max with every coordinate from `t`, or only coordinate `k` changed.
    fn eval(&mut self, t: &[f64], only: Option<(usize, f64)>) -> Result<f64> {
        match only {
            Some((k, tk)) => self.set(k, tk),
            None => {
                for (k, &tk) in t.iter().enumerate() {
                    self.set(k, tk);
                }
            }
        }
        power_iterate(
            &self.values,
            self.n,
            &mut self.vector,
            &mut self.scratch,
            POWER_TOL,
            POWER_MAX_ITER,
        )
        .map(|(lambda, _)| lambda)
        .map_err(|lambda| PcmError::NoConvergence {
            stage: "power iteration",
            iterations: POWER_MAX_ITER,
            best_lambda: lambda,
            best: None,
        })
    }

    /// Brackets and golden-section minimizes λ_max along coordinate `k`.
    /// Leaves the matrix at the returned point.
    fn minimize_coordinate(
        &mut self,
        t: &[f64],
        k: usize,
        f0: f64,
        step: f64,
    ) -> Result<(f64, f64)> {
        let x0 = t[k];
        let f = |s: &mut Self, x: f64| s.eval(t, Some((k, x)));

        // Downhill direction.
        let fr = f(self, x0 + step)?;
        let (dir, mut f1) = if fr < f0 {
            (1.0, fr)
        } else {
            let fl = f(self, x0 - step)?;
            if fl < f0 {
                (-1.0, fl)
            } else {
                // x0 already brackets the minimum.
                return self.golden(t, k, x0 - step, x0 + step, x0, f0);
            }
        };

        // Expand until the slice turns upward.
        let mut a = x0;
        let mut b = x0 + dir * step;
        let mut h = step;
        for _ in 0..MAX_BRACKET_STEPS {
            h *= 2.0;
            let c = b + dir * h;
            let fc = f(self, c)?;
            if fc >= f1 {
                let (lo, hi) = if dir > 0.0 { (a, c) } else { (c, a) };
                return self.golden(t, k, lo, hi, b, f1);
            }
            a = b;
            b = c;
            f1 = fc;
        }
        // The slice keeps decreasing; settle at the furthest point reached.
        self.set(k, b);
        Ok((b, f1))
    }

    fn golden(
        &mut self,
        t: &[f64],
        k: usize,
        mut lo: f64,
        mut hi: f64,
        mut best_x: f64,
        mut best_f: f64,
    ) -> Result<(f64, f64)> {
        let mut c = hi - INV_PHI * (hi - lo);
        let mut d = lo + INV_PHI * (hi - lo);
        let mut fc = self.eval(t, Some((k, c)))?;
        let mut fd = self.eval(t, Some((k, d)))?;
        while hi - lo > LINE_TOL {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - INV_PHI * (hi - lo);
                fc = self.eval(t, Some((k, c)))?;
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + INV_PHI * (hi - lo);
                fd = self.eval(t, Some((k, d)))?;
            }
        }
        for (x, fx) in [(c, fc), (d, fd)] {
            if fx < best_f {
                best_x = x;
                best_f = fx;
            }
        }
        // Leave the working matrix (and warm start) at the chosen point.
        let lambda = self.eval(t, Some((k, best_x)))?;
        Ok((best_x, lambda.min(best_f)))
    }
}
