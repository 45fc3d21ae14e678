//! Rankings, rank correlation, matrix/graph statistics and what-if studies.

mod perturb;
mod ranking;
mod stats;
mod triads;

pub use perturb::{perturb_add_match, perturb_remove_player, with_extra_match, AddMatchOutcome, RankChange, RemovalOutcome};
pub use ranking::{correlation_matrix, ranking_from_weights, spearman, win_loss_ranking, Ranking};
pub use stats::{degree_distribution, density};
pub use triads::{intransitive_triads, majority_relation, TriadReport};
