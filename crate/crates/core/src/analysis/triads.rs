use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};
use crate::pcm::HeadToHead;

/// Directed 3-cycles of the head-to-head majority relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriadReport {
    /// `(i, j, k)`: `i` beats `j`, `j` beats `k`, `k` beats `i`. Rotated so
    /// that `i` is the smallest index; sorted.
    pub triads: Vec<(usize, usize, usize)>,
    pub count: usize,
}

/// `beats[i * n + j]` iff `i` won more head-to-head matches against `j`.
pub fn majority_relation(records: &[HeadToHead], labels: &[String]) -> Result<Vec<bool>> {
    let n = labels.len();
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut beats = vec![false; n * n];
    for r in records {
        let a = *index
            .get(r.player_a.as_str())
            .ok_or_else(|| PcmError::UnknownPlayer(r.player_a.clone()))?;
        let b = *index
            .get(r.player_b.as_str())
            .ok_or_else(|| PcmError::UnknownPlayer(r.player_b.clone()))?;
        match r.wins_a.cmp(&r.wins_b) {
            std::cmp::Ordering::Greater => beats[a * n + b] = true,
            std::cmp::Ordering::Less => beats[b * n + a] = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    Ok(beats)
}

/// Enumerates intransitive triads from raw win counts; corrections play no
/// part here.
pub fn intransitive_triads(records: &[HeadToHead], labels: &[String]) -> Result<TriadReport> {
    let n = labels.len();
    let beats = majority_relation(records, labels)?;
    let b = |i: usize, j: usize| beats[i * n + j];
    let mut triads = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if b(i, j) && b(j, k) && b(k, i) {
                    triads.push((i, j, k));
                } else if b(i, k) && b(k, j) && b(j, i) {
                    triads.push((i, k, j));
                }
            }
        }
    }
    Ok(TriadReport { count: triads.len(), triads })
}
