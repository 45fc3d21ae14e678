use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{PcmError, Result};
use crate::pcm::HeadToHead;
use crate::solvers::WeightVector;

/// Rank numbers per label; 1 is best, ties share the average rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub labels: Vec<String>,
    pub ranks: Vec<f64>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank_of(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.ranks[i])
    }

    /// Labels from best to worst; equal ranks are listed alphabetically.
    pub fn order(&self) -> Vec<&str> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| {
            self.ranks[a]
                .total_cmp(&self.ranks[b])
                .then_with(|| self.labels[a].cmp(&self.labels[b]))
        });
        idx.into_iter().map(|i| self.labels[i].as_str()).collect()
    }

    /// Ranking of the listed labels only, re-numbered from 1.
    pub fn restricted_to(&self, keep: &[String]) -> Result<Ranking> {
        let scores = keep
            .iter()
            .map(|l| {
                self.rank_of(l)
                    .map(|r| -r)
                    .ok_or_else(|| PcmError::Shape(format!("label `{l}` not in ranking")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(rank_descending(keep.to_vec(), &scores, f64::total_cmp))
    }
}

/// Assigns average ranks by descending `scores` under `cmp`.
fn rank_descending<T>(labels: Vec<String>, scores: &[T], cmp: impl Fn(&T, &T) -> Ordering) -> Ranking {
    let n = scores.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| cmp(&scores[b], &scores[a]).then_with(|| labels[a].cmp(&labels[b])));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cmp(&scores[idx[end]], &scores[idx[start]]) == Ordering::Equal {
            end += 1;
        }
        // Positions start+1 ..= end share their mean.
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    Ranking { labels, ranks }
}

/// Ranks by descending weight.
pub fn ranking_from_weights(weights: &WeightVector, labels: &[String]) -> Result<Ranking> {
    if weights.len() != labels.len() {
        return Err(PcmError::Shape(format!(
            "{} weights for {} labels",
            weights.len(),
            labels.len()
        )));
    }
    Ok(rank_descending(labels.to_vec(), weights.as_slice(), f64::total_cmp))
}

/// Ranks by total wins over total losses. Unbeaten players come first,
/// ordered among themselves by wins.
pub fn win_loss_ranking(records: &[HeadToHead], labels: &[String]) -> Result<Ranking> {
    let mut tally: HashMap<&str, (u64, u64)> = labels.iter().map(|l| (l.as_str(), (0, 0))).collect();
    for r in records {
        for (me, won, lost) in [
            (&r.player_a, r.wins_a, r.wins_b),
            (&r.player_b, r.wins_b, r.wins_a),
        ] {
            let entry = tally
                .get_mut(me.as_str())
                .ok_or_else(|| PcmError::UnknownPlayer(me.clone()))?;
            entry.0 += u64::from(won);
            entry.1 += u64::from(lost);
        }
    }
    let mut keys = Vec::with_capacity(labels.len());
    for l in labels {
        let (w, lost) = tally[l.as_str()];
        if w + lost == 0 {
            return Err(PcmError::NoData(l.clone()));
        }
        keys.push(if lost == 0 {
            (true, w as f64)
        } else {
            (false, w as f64 / lost as f64)
        });
    }
    Ok(rank_descending(labels.to_vec(), &keys, |a, b| {
        a.0.cmp(&b.0).then_with(|| a.1.total_cmp(&b.1))
    }))
}

/// Spearman's rho: Pearson correlation of the (tie-averaged) ranks.
pub fn spearman(r1: &Ranking, r2: &Ranking) -> Result<f64> {
    let n = r1.len();
    if r2.len() != n {
        return Err(PcmError::Shape("rankings cover different label sets".into()));
    }
    if n < 2 {
        return Err(PcmError::Undefined("spearman needs at least two items"));
    }
    let other: HashMap<&str, f64> = r2
        .labels
        .iter()
        .map(String::as_str)
        .zip(r2.ranks.iter().copied())
        .collect();
    let paired = r1
        .labels
        .iter()
        .zip(&r1.ranks)
        .map(|(l, &a)| {
            other
                .get(l.as_str())
                .map(|&b| (a, b))
                .ok_or_else(|| PcmError::Shape(format!("label `{l}` missing from second ranking")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in paired {
        let (dx, dy) = (a - mean, b - mean);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(PcmError::Undefined("spearman of a constant ranking"));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pairwise Spearman coefficients; symmetric with unit diagonal.
pub fn correlation_matrix(rankings: &[Ranking]) -> Result<Vec<Vec<f64>>> {
    if rankings.len() < 2 {
        return Err(PcmError::Undefined("correlation matrix needs at least two rankings"));
    }
    let m = rankings.len();
    let mut out = vec![vec![1.0; m]; m];
    for p in 0..m {
        for q in p + 1..m {
            let rho = spearman(&rankings[p], &rankings[q])?;
            out[p][q] = rho;
            out[q][p] = rho;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn weights(w: &[f64]) -> WeightVector {
        WeightVector::normalized(w.to_vec()).unwrap()
    }

    #[test]
    fn descending_weights() {
        let r = ranking_from_weights(&weights(&[0.5, 0.3, 0.2]), &labels(&["a", "b", "c"])).unwrap();
        assert_eq!(r.ranks, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn ties_share_average_rank() {
        let r = ranking_from_weights(&weights(&[0.4, 0.4, 0.2]), &labels(&["b", "a", "c"])).unwrap();
        assert_eq!(r.ranks, vec![1.5, 1.5, 3.0]);
        assert_eq!(r.order(), vec!["a", "b", "c"]);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            ranking_from_weights(&weights(&[0.5, 0.5]), &labels(&["a"])),
            Err(PcmError::Shape(_))
        ));
    }

    #[test]
    fn win_loss_simple() {
        let recs = [HeadToHead::new("A", "B", 3, 1).unwrap()];
        let r = win_loss_ranking(&recs, &labels(&["A", "B"])).unwrap();
        assert_eq!(r.ranks, vec![1.0, 2.0]);
    }

    #[test]
    fn unbeaten_ranks_above_finite_ratios() {
        let recs = [
            HeadToHead::new("A", "C", 2, 0).unwrap(),
            HeadToHead::new("B", "C", 10, 5).unwrap(),
        ];
        let r = win_loss_ranking(&recs, &labels(&["A", "B", "C"])).unwrap();
        assert_eq!(r.rank_of("A"), Some(1.0));
        assert_eq!(r.rank_of("B"), Some(2.0));
    }

    #[test]
    fn unbeaten_ties_broken_by_wins() {
        let recs = [
            HeadToHead::new("A", "C", 2, 0).unwrap(),
            HeadToHead::new("B", "D", 5, 0).unwrap(),
            HeadToHead::new("E", "F", 5, 0).unwrap(),
        ];
        let l = labels(&["A", "B", "C", "D", "E", "F"]);
        let r = win_loss_ranking(&recs, &l).unwrap();
        assert_eq!(r.rank_of("B"), Some(1.5));
        assert_eq!(r.rank_of("E"), Some(1.5));
        assert_eq!(r.rank_of("A"), Some(3.0));
    }

    #[test]
    fn win_loss_needs_data() {
        let recs = [HeadToHead::new("A", "B", 1, 1).unwrap()];
        assert!(matches!(
            win_loss_ranking(&recs, &labels(&["A", "B", "C"])),
            Err(PcmError::NoData(l)) if l == "C"
        ));
    }

    #[test]
    fn spearman_extremes() {
        let l = labels(&["a", "b", "c"]);
        let r = Ranking { labels: l.clone(), ranks: vec![1.0, 2.0, 3.0] };
        let rev = Ranking { labels: l, ranks: vec![3.0, 2.0, 1.0] };
        assert!((spearman(&r, &r).unwrap() - 1.0).abs() < 1e-15);
        assert!((spearman(&r, &rev).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn spearman_matches_d_squared_formula_without_ties() {
        let l = labels(&["a", "b", "c", "d", "e"]);
        let r1 = Ranking { labels: l.clone(), ranks: vec![1.0, 2.0, 3.0, 4.0, 5.0] };
        let r2 = Ranking { labels: l, ranks: vec![2.0, 1.0, 4.0, 3.0, 5.0] };
        // d² sum = 4, rho = 1 − 6·4 / (5·24) = 0.8
        assert!((spearman(&r1, &r2).unwrap() - 0.8).abs() < 1e-12);
    }

    #[test]
    fn spearman_aligns_by_label() {
        let r1 = Ranking { labels: labels(&["a", "b", "c"]), ranks: vec![1.0, 2.0, 3.0] };
        let r2 = Ranking { labels: labels(&["c", "b", "a"]), ranks: vec![3.0, 2.0, 1.0] };
        assert!((spearman(&r1, &r2).unwrap() - 1.0).abs() < 1e-15);
        let r3 = Ranking { labels: labels(&["a", "b", "x"]), ranks: vec![1.0, 2.0, 3.0] };
        assert!(spearman(&r1, &r3).is_err());
        let one = Ranking { labels: labels(&["a"]), ranks: vec![1.0] };
        assert!(matches!(spearman(&one, &one), Err(PcmError::Undefined(_))));
    }

    #[test]
    fn correlation_matrix_shape() {
        let r = Ranking { labels: labels(&["a", "b", "c"]), ranks: vec![1.0, 2.0, 3.0] };
        let m = correlation_matrix(&[r.clone(), r]).unwrap();
        assert_eq!(m, vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn restriction_renumbers() {
        let r = Ranking { labels: labels(&["a", "b", "c"]), ranks: vec![3.0, 1.0, 2.0] };
        let s = r.restricted_to(&labels(&["a", "c"])).unwrap();
        assert_eq!(s.ranks, vec![2.0, 1.0]);
    }
}
