//! What-if studies: one extra match, or one player fewer.
//!
//! Both re-run the full pipeline. An extra match can change `max z` and so
//! every transformed entry, which rules out local updates.

use serde::Serialize;

use super::ranking::{spearman, Ranking};
use crate::error::{PcmError, Result};
use crate::pcm::HeadToHead;
use crate::pipeline::{run_pipeline, PipelineConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankChange {
    pub label: String,
    pub before: f64,
    pub after: f64,
    /// `after − before`; negative means the player moved up.
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AddMatchOutcome {
    pub before: Ranking,
    pub after: Ranking,
    pub changes: Vec<RankChange>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemovalOutcome {
    pub before: Ranking,
    pub after: Ranking,
    /// Spearman between `after` and `before` restricted to the remaining players.
    pub spearman: f64,
}

/// Records with one more match between `pair`, won by `winner`.
pub fn with_extra_match(records: &[HeadToHead], pair: (&str, &str), winner: &str) -> Result<Vec<HeadToHead>> {
    let (a, b) = pair;
    if a == b {
        return Err(PcmError::Shape(format!("self-pair {a}–{b}")));
    }
    if winner != a && winner != b {
        return Err(PcmError::Shape(format!("winner `{winner}` is not in the pair {a}–{b}")));
    }
    let mut out = records.to_vec();
    let existing = out.iter_mut().find(|r| {
        (r.player_a == a && r.player_b == b) || (r.player_a == b && r.player_b == a)
    });
    match existing {
        Some(r) if r.player_a == winner => r.wins_a += 1,
        Some(r) => r.wins_b += 1,
        None => {
            let loser = if winner == a { b } else { a };
            out.push(HeadToHead::new(winner, loser, 1, 0)?);
        }
    }
    Ok(out)
}

pub fn perturb_add_match(
    records: &[HeadToHead],
    labels: &[String],
    pair: (&str, &str),
    winner: &str,
    config: &PipelineConfig,
) -> Result<AddMatchOutcome> {
    for p in [pair.0, pair.1] {
        if !labels.iter().any(|l| l == p) {
            return Err(PcmError::UnknownPlayer(p.to_string()));
        }
    }
    let before = run_pipeline(records, labels, config)?.ranking;
    let extended = with_extra_match(records, pair, winner)?;
    let after = run_pipeline(&extended, labels, config)?.ranking;
    let changes = labels
        .iter()
        .zip(before.ranks.iter().zip(&after.ranks))
        .map(|(l, (&b, &a))| RankChange {
            label: l.clone(),
            before: b,
            after: a,
            delta: a - b,
        })
        .collect();
    Ok(AddMatchOutcome { before, after, changes })
}

pub fn perturb_remove_player(
    records: &[HeadToHead],
    labels: &[String],
    player: &str,
    config: &PipelineConfig,
) -> Result<RemovalOutcome> {
    if !labels.iter().any(|l| l == player) {
        return Err(PcmError::UnknownPlayer(player.to_string()));
    }
    let before = run_pipeline(records, labels, config)?.ranking;
    let remaining: Vec<String> = labels.iter().filter(|l| *l != player).cloned().collect();
    let kept: Vec<HeadToHead> = records
        .iter()
        .filter(|r| r.player_a != player && r.player_b != player)
        .cloned()
        .collect();
    let after = run_pipeline(&kept, &remaining, config)?.ranking;
    let spearman = if remaining.len() >= 2 {
        spearman(&before.restricted_to(&remaining)?, &after)?
    } else {
        1.0
    };
    Ok(RemovalOutcome { before, after, spearman })
}
