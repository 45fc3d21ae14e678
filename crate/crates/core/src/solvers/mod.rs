//! Weight estimation from incomplete pairwise comparison matrices.

mod completion;
mod eigen;
mod llsm;

use serde::{Deserialize, Serialize};

pub use completion::{em_complete, em_weights, CompletionResult, COMPLETION_MAX_ITER, COMPLETION_TOL};
pub use eigen::{consistency_index, perron_vector, EigenResult, POWER_MAX_ITER, POWER_TOL};
pub use llsm::{llsm_objective, llsm_weights, llsm_weights_with_gauge};

use crate::error::{PcmError, Result};
use crate::graph::ComparisonGraph;
use crate::pcm::IncompletePcm;

/// Positive weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Normalizes `raw` to sum one. Every component must be positive and finite.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if raw.is_empty() {
            return Err(PcmError::EmptyProblem);
        }
        if raw.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(PcmError::Shape("weights must be positive and finite".into()));
        }
        let sum: f64 = raw.iter().sum();
        Ok(Self(raw.into_iter().map(|w| w / sum).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

pub(crate) fn disconnected(pcm: &IncompletePcm, g: &ComparisonGraph) -> PcmError {
    PcmError::GraphDisconnected {
        components: g
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| pcm.labels()[v].clone()).collect())
            .collect(),
    }
}
