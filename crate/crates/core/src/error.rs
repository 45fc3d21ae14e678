use thiserror::Error;

use crate::pcm::IncompletePcm;

/// Errors produced anywhere in the build → solve → analyse pipeline.
#[derive(Debug, Error)]
pub enum PcmError {
    #[error("duplicate record for pair {a}–{b}")]
    DuplicatePair { a: String, b: String },

    #[error("unknown player `{0}`")]
    UnknownPlayer(String),

    #[error("pair {a}–{b} is not a zero-loss pair")]
    NotZeroLoss { a: String, b: String },

    #[error("match count missing for present entry ({row}, {col})")]
    CountMismatch { row: usize, col: usize },

    #[error("comparison graph is disconnected into {} components: {}", .components.len(), format_components(.components))]
    GraphDisconnected { components: Vec<Vec<String>> },

    #[error("empty problem")]
    EmptyProblem,

    #[error("{stage} did not converge after {iterations} iterations")]
    NoConvergence {
        stage: &'static str,
        iterations: usize,
        /// Best estimate reached before giving up.
        best_lambda: f64,
        best: Option<Box<IncompletePcm>>,
    },

    #[error("undefined: {0}")]
    Undefined(&'static str),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("no matches recorded for `{0}`")]
    NoData(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: negative match count")]
    NegativeCount { line: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_components(components: &[Vec<String>]) -> String {
    components
        .iter()
        .map(|c| format!("{{{}}}", c.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

pub type Result<T> = std::result::Result<T, PcmError>;
