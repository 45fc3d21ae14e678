//! Test-only oracles and reference data, shared by the integration tests
//! here and by the cli acceptance suite (included by path).
#![allow(dead_code)]

use nalgebra::DMatrix;
use pcm_core::analysis::Ranking;
use pcm_core::{graph_of, is_connected, IncompletePcm};
use rand::Rng;

/// Reference rank columns for the bundled dataset:
/// `(player, EM_2, LLSM_2, EM_W2, LLSM_W2, W/L)`.
pub const REFERENCE_RANKS: [(&str, u8, u8, u8, u8, u8); 25] = [
    ("Nadal", 1, 1, 1, 1, 2),
    ("Federer", 2, 2, 2, 2, 3),
    ("Sampras", 3, 3, 3, 3, 1),
    ("Lendl", 11, 8, 4, 4, 6),
    ("Borg", 13, 11, 6, 5, 4),
    ("Becker", 4, 4, 5, 6, 5),
    ("Djokovic", 5, 5, 7, 7, 10),
    ("Agassi", 9, 9, 8, 8, 7),
    ("Hewitt", 6, 7, 9, 9, 9),
    ("Kuerten", 16, 15, 10, 10, 8),
    ("Safin", 12, 10, 11, 11, 15),
    ("McEnroe", 20, 18, 12, 12, 11),
    ("Nastase", 22, 20, 14, 13, 13),
    ("Ferrero", 17, 16, 16, 14, 20),
    ("Roddick", 8, 6, 13, 15, 18),
    ("Wilander", 15, 14, 17, 16, 16),
    ("Rios", 21, 22, 18, 17, 22),
    ("Rafter", 7, 13, 15, 18, 19),
    ("Newcombe", 23, 21, 21, 19, 14),
    ("Kafelnikov", 14, 17, 19, 20, 17),
    ("Moya", 19, 19, 22, 21, 23),
    ("Edberg", 10, 12, 20, 22, 12),
    ("Courier", 18, 23, 23, 23, 21),
    ("Muster", 24, 24, 24, 24, 25),
    ("Connors", 25, 25, 25, 25, 24),
];

/// Reference Spearman coefficients, order EM_1, EM_2, LLSM_1, LLSM_2,
/// EM_W1, EM_W2, LLSM_W1, LLSM_W2.
pub const REFERENCE_SPEARMAN: [[f64; 8]; 8] = [
    [1.0, 0.9715, 0.9269, 0.9154, 0.7546, 0.7423, 0.6869, 0.6631],
    [0.9715, 1.0, 0.9677, 0.9569, 0.8015, 0.7908, 0.7385, 0.7177],
    [0.9269, 0.9677, 1.0, 0.9915, 0.8638, 0.8469, 0.8085, 0.7946],
    [0.9154, 0.9569, 0.9915, 1.0, 0.8931, 0.8831, 0.8446, 0.8338],
    [0.7546, 0.8015, 0.8638, 0.8931, 1.0, 0.9962, 0.9908, 0.9854],
    [0.7423, 0.7908, 0.8469, 0.8831, 0.9962, 1.0, 0.9900, 0.9877],
    [0.6869, 0.7385, 0.8085, 0.8446, 0.9908, 0.9900, 1.0, 0.9969],
    [0.6631, 0.7177, 0.7946, 0.8338, 0.9854, 0.9877, 0.9969, 1.0],
];

/// Per-player `(wins, matches)` totals of the dataset.
pub const PLAYER_TOTALS: [(&str, u32, u32); 25] = [
    ("Agassi", 97, 182),
    ("Becker", 88, 146),
    ("Borg", 40, 65),
    ("Connors", 55, 152),
    ("Courier", 35, 90),
    ("Djokovic", 46, 95),
    ("Edberg", 74, 158),
    ("Federer", 106, 171),
    ("Ferrero", 36, 86),
    ("Hewitt", 65, 132),
    ("Kafelnikov", 43, 99),
    ("Kuerten", 35, 70),
    ("Lendl", 101, 175),
    ("McEnroe", 68, 141),
    ("Moya", 40, 105),
    ("Muster", 24, 76),
    ("Nadal", 74, 112),
    ("Nastase", 28, 60),
    ("Newcombe", 7, 15),
    ("Rafter", 33, 78),
    ("Rios", 22, 57),
    ("Roddick", 37, 87),
    ("Safin", 41, 89),
    ("Sampras", 115, 172),
    ("Wilander", 41, 89),
];

/// Column index into [`REFERENCE_RANKS`] rows (0-based after the name).
pub fn reference_ranking(column: usize) -> Ranking {
    let (labels, ranks) = REFERENCE_RANKS
        .iter()
        .map(|row| {
            let r = [row.1, row.2, row.3, row.4, row.5][column];
            (row.0.to_string(), f64::from(r))
        })
        .unzip();
    Ranking { labels, ranks }
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// `Σ (ln a_ij − s_i + s_j)²` over known ordered pairs, written out
/// directly from the definition.
pub fn llsm_objective_direct(pcm: &IncompletePcm, s: &[f64]) -> f64 {
    let n = pcm.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if let Some(a) = pcm.get(i, j) {
                let r = a.ln() - (s[i] - s[j]);
                total += r * r;
            }
        }
    }
    total
}

pub fn central_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|k| {
            probe[k] = x[k] + h;
            let up = f(&probe);
            probe[k] = x[k] - h;
            let down = f(&probe);
            probe[k] = x[k];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Numeric LLSM minimizer: steepest descent on the definition with
/// finite-difference gradients, pinned `s_0 = 0`. Returns normalized weights.
pub fn brute_force_llsm(pcm: &IncompletePcm) -> Vec<f64> {
    let n = pcm.n();
    let f = |s: &[f64]| llsm_objective_direct(pcm, s);
    let mut s = vec![0.0; n];
    // Hessian of the objective is 4L with λ_max(L) ≤ 2(n − 1).
    let step = 1.0 / (8.0 * n as f64);
    for _ in 0..200_000 {
        let g = central_gradient(f, &s, 1e-5);
        let norm = g.iter().skip(1).map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-13 {
            break;
        }
        for k in 1..n {
            s[k] -= step * g[k];
        }
    }
    let w: Vec<f64> = s.iter().map(|x| x.exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// λ_max through nalgebra's Schur decomposition.
pub fn dense_lambda_max(values: &[f64], n: usize) -> f64 {
    let m = DMatrix::from_row_slice(n, n, values);
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Minimizes λ_max over the missing cells of `pcm` (log-parametrized) by
/// refining a dense grid around the best point. Only practical for d ≤ 2.
pub fn grid_search_completion(pcm: &IncompletePcm, half_width: f64, points: usize, rounds: usize) -> (Vec<f64>, f64) {
    let n = pcm.n();
    let cells = pcm.missing_upper();
    let d = cells.len();
    assert!(d <= 2, "grid oracle limited to two variables");
    let base: Vec<f64> = pcm.to_rows().into_iter().flatten().map(|v| v.unwrap_or(1.0)).collect();
    let eval = |t: &[f64]| {
        let mut a = base.clone();
        for (&(i, j), &tk) in cells.iter().zip(t) {
            a[i * n + j] = tk.exp();
            a[j * n + i] = (-tk).exp();
        }
        dense_lambda_max(&a, n)
    };
    let mut centre = vec![0.0; d];
    let mut width = half_width;
    let mut best = (centre.clone(), eval(&centre));
    for _ in 0..rounds {
        let offsets: Vec<f64> = (0..points)
            .map(|p| -width + 2.0 * width * p as f64 / (points - 1) as f64)
            .collect();
        let mut candidates = vec![centre.clone()];
        for &a in &offsets {
            if d == 1 {
                candidates.push(vec![centre[0] + a]);
            } else {
                for &b in &offsets {
                    candidates.push(vec![centre[0] + a, centre[1] + b]);
                }
            }
        }
        for c in candidates {
            let v = eval(&c);
            if v < best.1 {
                best = (c, v);
            }
        }
        centre = best.0.clone();
        width /= 4.0;
    }
    (best.0.iter().map(|t| t.exp()).collect(), best.1)
}

/// Random connected PCM with entries drawn from `values`.
pub fn random_connected_pcm(rng: &mut impl Rng, n: usize, values: &[f64], edge_prob: f64) -> IncompletePcm {
    loop {
        let mut pcm = IncompletePcm::empty(labels(n));
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(edge_prob) {
                    let v = values[rng.random_range(0..values.len())];
                    pcm.set_pair(i, j, v).unwrap();
                }
            }
        }
        if is_connected(&graph_of(&pcm)) {
            return pcm;
        }
    }
}

/// Random connected PCM with at least one missing cell and log-uniform entries.
pub fn random_incomplete_pcm(rng: &mut impl Rng, n: usize) -> IncompletePcm {
    loop {
        let mut pcm = IncompletePcm::empty(labels(n));
        for i in 0..n {
            for j in i + 1..n {
                if rng.random_bool(0.6) {
                    pcm.set_pair(i, j, rng.random_range(-2.0f64..2.0).exp()).unwrap();
                }
            }
        }
        if !pcm.is_complete() && is_connected(&graph_of(&pcm)) {
            return pcm;
        }
    }
}

pub fn random_weights(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(-2.5f64..2.5).exp()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.random_range(0..=i));
    }
    p
}

pub fn max_rel_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| ((x - y) / y).abs())
        .fold(0.0, f64::max)
}

/// Brute-force triad count: every unordered triple, both cycle orientations.
pub fn brute_force_triads(beats: &dyn Fn(usize, usize) -> bool, n: usize) -> usize {
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a < b && a < c && b != c && beats(a, b) && beats(b, c) && beats(c, a) {
                    count += 1;
                }
            }
        }
    }
    count
}
