use crate::error::{PcmError, Result};
use crate::graph::ComparisonGraph;
use crate::pcm::IncompletePcm;

/// Fraction of known cells, diagonal included.
pub fn density(pcm: &IncompletePcm) -> Result<f64> {
    let n = pcm.n();
    if n == 0 {
        return Err(PcmError::Undefined("density of an empty matrix"));
    }
    Ok(pcm.present_count() as f64 / (n * n) as f64)
}

/// `(label, degree)` sorted by descending degree, then label.
pub fn degree_distribution(g: &ComparisonGraph, labels: &[String]) -> Result<Vec<(String, usize)>> {
    if labels.len() != g.vertex_count() {
        return Err(PcmError::Shape(format!(
            "{} labels for {} vertices",
            labels.len(),
            g.vertex_count()
        )));
    }
    let mut out: Vec<_> = labels.iter().cloned().zip(g.degrees()).collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}
