//! Prints every ranking variant on the bundled fixture with timings.

use std::time::Instant;

use pcm_core::dataset::{atp_fixture, labels_of};
use pcm_core::{run_pipeline, PipelineConfig};

fn main() {
    let records = atp_fixture();
    let labels = labels_of(&records);
    for config in PipelineConfig::all_variants() {
        let start = Instant::now();
        let out = run_pipeline(&records, &labels, &config).expect("pipeline");
        let order = out.ranking.order();
        println!(
            "{:<8} {:>8.3}s lambda={:?} top={:?} bottom={:?}",
            config.name(),
            start.elapsed().as_secs_f64(),
            out.lambda_max,
            &order[..3],
            &order[order.len() - 3..]
        );
    }
}
