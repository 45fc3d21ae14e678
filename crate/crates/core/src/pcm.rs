//! Incomplete pairwise comparison matrices built from head-to-head records.
//!
//! An [`IncompletePcm`] is a dense `n × n` grid where every off-diagonal cell
//! is either a positive ratio or missing. Reciprocity is kept exact: only one
//! triangle is ever computed, the mirrored cell is written as its inverse.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};

/// Match record between two players.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeadToHead {
    pub player_a: String,
    pub player_b: String,
    pub wins_a: u32,
    pub wins_b: u32,
}

impl HeadToHead {
    pub fn new(
        player_a: impl Into<String>,
        player_b: impl Into<String>,
        wins_a: u32,
        wins_b: u32,
    ) -> Result<Self> {
        let record = Self {
            player_a: player_a.into(),
            player_b: player_b.into(),
            wins_a,
            wins_b,
        };
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<()> {
        if self.player_a == self.player_b {
            return Err(PcmError::Shape(format!(
                "self-pair record for `{}`",
                self.player_a
            )));
        }
        if self.total() == 0 {
            return Err(PcmError::Shape(format!(
                "record {}–{} has no matches",
                self.player_a, self.player_b
            )));
        }
        Ok(())
    }

    /// Number of matches played, `z`.
    pub fn total(&self) -> u32 {
        self.wins_a + self.wins_b
    }

    /// Wins of `player` in this record, if they take part in it.
    pub fn wins_of(&self, player: &str) -> Option<u32> {
        if player == self.player_a {
            Some(self.wins_a)
        } else if player == self.player_b {
            Some(self.wins_b)
        } else {
            None
        }
    }
}

/// Square reciprocal matrix with possibly missing entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncompletePcm {
    labels: Vec<String>,
    entries: Vec<Option<f64>>,
}

impl IncompletePcm {
    /// Diagonal-only matrix over `labels`.
    pub fn empty(labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut entries = vec![None; n * n];
        for i in 0..n {
            entries[i * n + i] = Some(1.0);
        }
        Self { labels, entries }
    }

    /// Builds a matrix from its upper triangle; `upper[i][j]` for `j > i` is
    /// read, everything else is ignored and derived.
    pub fn from_upper(labels: Vec<String>, upper: &[Vec<Option<f64>>]) -> Result<Self> {
        let n = labels.len();
        if upper.len() != n || upper.iter().any(|row| row.len() != n) {
            return Err(PcmError::Shape(format!("expected a {n}×{n} grid")));
        }
        let mut pcm = Self::empty(labels);
        for (i, row) in upper.iter().enumerate() {
            for (j, cell) in row.iter().enumerate().skip(i + 1) {
                if let Some(v) = *cell {
                    pcm.set_pair(i, j, v)?;
                }
            }
        }
        Ok(pcm)
    }

    /// Complete matrix `a_ij = w_i / w_j`.
    pub fn consistent_from_weights(labels: Vec<String>, weights: &[f64]) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(PcmError::Shape("labels and weights differ in length".into()));
        }
        let mut pcm = Self::empty(labels);
        for i in 0..weights.len() {
            for j in i + 1..weights.len() {
                pcm.set_pair(i, j, weights[i] / weights[j])?;
            }
        }
        Ok(pcm)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.entries[i * self.n() + j]
    }

    /// Sets `a_ij = value` and `a_ji = 1 / value`.
    pub fn set_pair(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        let n = self.n();
        if i >= n || j >= n || i == j {
            return Err(PcmError::Shape(format!("invalid off-diagonal cell ({i}, {j})")));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(PcmError::Shape(format!(
                "entry ({i}, {j}) must be positive and finite, got {value}"
            )));
        }
        self.entries[i * n + j] = Some(value);
        self.entries[j * n + i] = Some(1.0 / value);
        Ok(())
    }

    pub fn clear_pair(&mut self, i: usize, j: usize) {
        let n = self.n();
        if i != j {
            self.entries[i * n + j] = None;
            self.entries[j * n + i] = None;
        }
    }

    /// Cells present, diagonal included.
    pub fn present_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }

    /// Missing cells `(i, j)` with `i < j`, in row-major order.
    pub fn missing_upper(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j).is_none())
            .collect()
    }

    /// Present cells `(i, j, a_ij)` with `i < j`.
    pub fn known_upper(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.get(i, j).map(|v| (i, j, v)))
    }

    /// Row-major dense copy, `None` for missing cells.
    pub fn to_rows(&self) -> Vec<Vec<Option<f64>>> {
        self.entries.chunks(self.n().max(1)).map(<[_]>::to_vec).collect()
    }

    /// Row-major values of a complete matrix.
    pub fn dense_values(&self) -> Option<Vec<f64>> {
        self.entries.iter().copied().collect()
    }

    /// Matrix with rows/columns reordered so that new index `k` holds old
    /// index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        check_permutation(perm, n)?;
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let mut entries = vec![None; n * n];
        for (a, &pa) in perm.iter().enumerate() {
            for (b, &pb) in perm.iter().enumerate() {
                entries[a * n + b] = self.entries[pa * n + pb];
            }
        }
        Ok(Self { labels, entries })
    }

    /// Checks the diagonal, positivity and reciprocity invariants.
    pub fn check_invariants(&self, rel_tol: f64) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.get(i, i) != Some(1.0) {
                return Err(PcmError::Shape(format!("diagonal ({i}, {i}) is not 1")));
            }
            for j in i + 1..n {
                match (self.get(i, j), self.get(j, i)) {
                    (None, None) => {}
                    (Some(a), Some(b)) => {
                        if a <= 0.0 || b <= 0.0 || (a * b - 1.0).abs() > rel_tol {
                            return Err(PcmError::Shape(format!(
                                "cells ({i}, {j}) and ({j}, {i}) are not reciprocal"
                            )));
                        }
                    }
                    _ => {
                        return Err(PcmError::Shape(format!(
                            "cell ({i}, {j}) present on one side only"
                        )))
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(PcmError::Shape(format!("permutation of length {} for n = {n}", perm.len())));
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(PcmError::Shape("not a permutation".into()));
        }
    }
    Ok(())
}

/// A pair where one side never lost; its raw entry is missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroLossPair {
    pub winner: usize,
    pub loser: usize,
    /// `x`: wins of the winner.
    pub wins: u32,
    /// `z`: matches played.
    pub matches: u32,
}

/// How artificial entries are chosen for zero-loss pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrectionPolicy {
    /// Matches played rounded up to the next multiple of `width`.
    Bucketed { width: u32 },
    /// Wins of the unbeaten side plus `offset`.
    WinsPlus { offset: u32 },
}

impl CorrectionPolicy {
    pub const METHOD_1: Self = Self::Bucketed { width: 5 };
    pub const METHOD_2: Self = Self::WinsPlus { offset: 2 };

    /// `1` or `2` for the two standard policies.
    pub fn from_index(index: u8) -> Option<Self> {
        match index {
            1 => Some(Self::METHOD_1),
            2 => Some(Self::METHOD_2),
            _ => None,
        }
    }

    /// Artificial ratio for a winner with `wins` of `matches` and no losses.
    pub fn value(&self, wins: u32, matches: u32) -> f64 {
        match *self {
            Self::Bucketed { width } => {
                let width = width.max(1);
                (matches.div_ceil(width).max(1) * width) as f64
            }
            Self::WinsPlus { offset } => (wins + offset) as f64,
        }
    }
}

fn label_index(labels: &[String]) -> HashMap<&str, usize> {
    labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

/// Builds the raw ratio matrix `p_ij = x_ij / y_ij`.
///
/// Pairs where one side has zero wins stay missing and are returned in the
/// second element so a correction pass can fill them.
pub fn build_raw_pcm(
    records: &[HeadToHead],
    labels: &[String],
) -> Result<(IncompletePcm, Vec<ZeroLossPair>)> {
    let index = label_index(labels);
    let mut pcm = IncompletePcm::empty(labels.to_vec());
    let mut zero_loss = Vec::new();
    let mut seen = HashSet::new();
    for r in records {
        r.validate()?;
        let a = *index
            .get(r.player_a.as_str())
            .ok_or_else(|| PcmError::UnknownPlayer(r.player_a.clone()))?;
        let b = *index
            .get(r.player_b.as_str())
            .ok_or_else(|| PcmError::UnknownPlayer(r.player_b.clone()))?;
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(PcmError::DuplicatePair {
                a: r.player_a.clone(),
                b: r.player_b.clone(),
            });
        }
        match (r.wins_a, r.wins_b) {
            (0, wins) => zero_loss.push(ZeroLossPair { winner: b, loser: a, wins, matches: wins }),
            (wins, 0) => zero_loss.push(ZeroLossPair { winner: a, loser: b, wins, matches: wins }),
            (x, y) => pcm.set_pair(a, b, f64::from(x) / f64::from(y))?,
        }
    }
    Ok((pcm, zero_loss))
}

/// Fills zero-loss pairs with artificial ratios chosen by `policy`.
pub fn apply_correction(
    pcm: &IncompletePcm,
    zero_loss: &[ZeroLossPair],
    policy: CorrectionPolicy,
) -> Result<IncompletePcm> {
    let mut out = pcm.clone();
    for pair in zero_loss {
        let n = pcm.n();
        let valid = pair.winner < n
            && pair.loser < n
            && pair.winner != pair.loser
            && pair.wins > 0
            && pair.wins == pair.matches
            && pcm.get(pair.winner, pair.loser).is_none();
        if !valid {
            let name = |i: usize| pcm.labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            return Err(PcmError::NotZeroLoss {
                a: name(pair.winner),
                b: name(pair.loser),
            });
        }
        out.set_pair(pair.winner, pair.loser, policy.value(pair.wins, pair.matches))?;
    }
    Ok(out)
}

/// Symmetric grid of matches played, `z_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCounts {
    n: usize,
    counts: Vec<u32>,
}

impl MatchCounts {
    pub fn zeros(n: usize) -> Self {
        Self { n, counts: vec![0; n * n] }
    }

    pub fn from_records(records: &[HeadToHead], labels: &[String]) -> Result<Self> {
        let index = label_index(labels);
        let mut counts = Self::zeros(labels.len());
        for r in records {
            let a = *index
                .get(r.player_a.as_str())
                .ok_or_else(|| PcmError::UnknownPlayer(r.player_a.clone()))?;
            let b = *index
                .get(r.player_b.as_str())
                .ok_or_else(|| PcmError::UnknownPlayer(r.player_b.clone()))?;
            counts.set(a, b, r.total());
        }
        Ok(counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.counts[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: u32) {
        self.counts[i * self.n + j] = z;
        self.counts[j * self.n + i] = z;
    }
}

/// Damps each present entry towards 1 by `t_ij = p_ij^(z_ij / max z)`.
pub fn apply_transformation(pcm: &IncompletePcm, counts: &MatchCounts) -> Result<IncompletePcm> {
    if counts.n() != pcm.n() {
        return Err(PcmError::Shape(format!(
            "match counts are {}×{} but the matrix is {}×{}",
            counts.n(),
            counts.n(),
            pcm.n(),
            pcm.n()
        )));
    }
    let known: Vec<_> = pcm.known_upper().collect();
    let mut max_z = 0;
    for &(i, j, _) in &known {
        let z = counts.get(i, j);
        if z == 0 {
            return Err(PcmError::CountMismatch { row: i, col: j });
        }
        max_z = max_z.max(z);
    }
    let mut out = pcm.clone();
    for (i, j, p) in known {
        let exponent = f64::from(counts.get(i, j)) / f64::from(max_z);
        out.set_pair(i, j, p.powf(exponent))?;
    }
    Ok(out)
}
