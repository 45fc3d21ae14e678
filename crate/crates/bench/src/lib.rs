//! Inputs shared by the benchmarks.

use pcm_core::dataset::{atp_fixture, labels_of};
use pcm_core::pipeline::prepare_matrix;
use pcm_core::{CorrectionPolicy, HeadToHead, IncompletePcm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture() -> (Vec<HeadToHead>, Vec<String>) {
    let records = atp_fixture();
    let labels = labels_of(&records);
    (records, labels)
}

pub fn fixture_matrix(transform: bool) -> IncompletePcm {
    let (records, labels) = fixture();
    prepare_matrix(&records, &labels, CorrectionPolicy::METHOD_2, transform).expect("fixture builds")
}

/// Spanning path plus random extra pairs, entries `exp(N(0, 1))`-ish.
pub fn random_connected(n: usize, extra_density: f64, seed: u64) -> IncompletePcm {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut pcm = IncompletePcm::empty(labels);
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || rng.random_bool(extra_density) {
                let v: f64 = rng.random_range(-2.0..2.0);
                pcm.set_pair(i, j, v.exp()).expect("valid cell");
            }
        }
    }
    pcm
}
