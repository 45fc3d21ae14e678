//! Rankings from incomplete pairwise comparison matrices.
//!
//! Head-to-head records become a reciprocal ratio matrix with missing cells
//! for pairs that never met ([`pcm`]). Weights come from incomplete
//! logarithmic least squares or from the eigenvector method applied to the
//! λ_max-minimizing completion ([`solvers`]). [`analysis`] turns weights
//! into rankings and compares them; [`report`] and [`dataset`] carry the
//! command-line surface.

pub mod analysis;
pub mod dataset;
pub mod error;
pub mod graph;
pub mod pcm;
pub mod pipeline;
pub mod report;
pub mod solvers;

pub use analysis::{Ranking, TriadReport};
pub use error::{PcmError, Result};
pub use graph::{graph_of, is_connected, ComparisonGraph};
pub use pcm::{CorrectionPolicy, HeadToHead, IncompletePcm, MatchCounts, ZeroLossPair};
pub use pipeline::{run_pipeline, Method, PipelineConfig, PipelineOutput};
pub use solvers::{CompletionResult, EigenResult, WeightVector};
