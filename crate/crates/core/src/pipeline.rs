//! End-to-end ranking: build → correct → transform → solve → rank.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::analysis::{ranking_from_weights, Ranking};
use crate::error::{PcmError, Result};
use crate::pcm::{apply_correction, apply_transformation, build_raw_pcm, CorrectionPolicy, HeadToHead, IncompletePcm, MatchCounts};
use crate::solvers::{em_complete, llsm_weights, perron_vector, WeightVector, COMPLETION_MAX_ITER, COMPLETION_TOL, POWER_MAX_ITER, POWER_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Em,
    Llsm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Em => "EM",
            Method::Llsm => "LLSM",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub method: Method,
    pub correction: CorrectionPolicy,
    pub transform: bool,
    pub tol: f64,
    pub max_iter: usize,
}

impl PipelineConfig {
    pub fn new(method: Method, correction: CorrectionPolicy, transform: bool) -> Self {
        Self {
            method,
            correction,
            transform,
            tol: COMPLETION_TOL,
            max_iter: COMPLETION_MAX_ITER,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(PcmError::Shape(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(PcmError::Shape("max_iter must be at least 1".into()));
        }
        Ok(())
    }

    /// Short name such as `EM_2` or `LLSM_W1`.
    pub fn name(&self) -> String {
        let correction = match self.correction {
            CorrectionPolicy::METHOD_1 => "1".to_string(),
            CorrectionPolicy::METHOD_2 => "2".to_string(),
            CorrectionPolicy::Bucketed { width } => format!("b{width}"),
            CorrectionPolicy::WinsPlus { offset } => format!("p{offset}"),
        };
        let w = if self.transform { "W" } else { "" };
        format!("{}_{w}{correction}", self.method)
    }

    /// The eight method × correction × transformation variants, in the order
    /// EM_1, EM_2, LLSM_1, LLSM_2, EM_W1, EM_W2, LLSM_W1, LLSM_W2.
    pub fn all_variants() -> Vec<Self> {
        let mut out = Vec::with_capacity(8);
        for transform in [false, true] {
            for method in [Method::Em, Method::Llsm] {
                for correction in [CorrectionPolicy::METHOD_1, CorrectionPolicy::METHOD_2] {
                    out.push(Self::new(method, correction, transform));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineOutput {
    /// Matrix the solver ran on, after correction and transformation.
    pub pcm: IncompletePcm,
    pub weights: WeightVector,
    pub ranking: Ranking,
    /// λ_max of the completed matrix (eigenvector method only).
    pub lambda_max: Option<f64>,
}

/// Corrected and optionally transformed matrix for `records`.
pub fn prepare_matrix(
    records: &[HeadToHead],
    labels: &[String],
    correction: CorrectionPolicy,
    transform: bool,
) -> Result<IncompletePcm> {
    let (raw, zero_loss) = build_raw_pcm(records, labels)?;
    let corrected = apply_correction(&raw, &zero_loss, correction)?;
    if transform {
        let counts = MatchCounts::from_records(records, labels)?;
        apply_transformation(&corrected, &counts)
    } else {
        Ok(corrected)
    }
}

pub fn run_pipeline(records: &[HeadToHead], labels: &[String], config: &PipelineConfig) -> Result<PipelineOutput> {
    config.validate()?;
    let pcm = prepare_matrix(records, labels, config.correction, config.transform)?;
    let (weights, lambda_max) = match config.method {
        Method::Llsm => (llsm_weights(&pcm)?, None),
        Method::Em => {
            let completion = em_complete(&pcm, config.tol, config.max_iter)?;
            let eig = perron_vector(&completion.completed, POWER_TOL, POWER_MAX_ITER)?;
            (eig.vector, Some(completion.lambda_max))
        }
    };
    let ranking = ranking_from_weights(&weights, labels)?;
    Ok(PipelineOutput {
        pcm,
        weights,
        ranking,
        lambda_max,
    })
}
