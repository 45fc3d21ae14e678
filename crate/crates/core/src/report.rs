//! Reports behind the CLI: ranking tables, the analysis summary and DOT export.
//!
//! Every report is a plain serializable struct; the text form is rendered
//! from the same struct so both outputs always agree.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::analysis::{correlation_matrix, degree_distribution, density, intransitive_triads, win_loss_ranking, Ranking};
use crate::dataset::labels_of;
use crate::error::{PcmError, Result};
use crate::graph::{graph_of, ComparisonGraph};
use crate::pcm::{CorrectionPolicy, HeadToHead};
use crate::pipeline::{prepare_matrix, run_pipeline, Method, PipelineConfig};
use crate::solvers::consistency_index;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub name: String,
    pub method: Method,
    pub correction: String,
    pub transform: bool,
    pub tol: f64,
    pub max_iter: usize,
}

impl From<&PipelineConfig> for ConfigEcho {
    fn from(c: &PipelineConfig) -> Self {
        let correction = match c.correction {
            CorrectionPolicy::METHOD_1 => "1".to_string(),
            CorrectionPolicy::METHOD_2 => "2".to_string(),
            other => format!("{other:?}"),
        };
        Self {
            name: c.name(),
            method: c.method,
            correction,
            transform: c.transform,
            tol: c.tol,
            max_iter: c.max_iter,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingRow {
    pub rank: f64,
    pub label: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingReport {
    pub config: ConfigEcho,
    pub players: usize,
    pub lambda_max: Option<f64>,
    pub consistency_index: Option<f64>,
    /// Best first.
    pub rows: Vec<RankingRow>,
}

pub fn run_ranking(config: &PipelineConfig, records: &[HeadToHead]) -> Result<RankingReport> {
    let labels = labels_of(records);
    let out = run_pipeline(records, &labels, config)?;
    let mut rows: Vec<_> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| RankingRow {
            rank: out.ranking.ranks[i],
            label: l.clone(),
            weight: out.weights.get(i),
        })
        .collect();
    rows.sort_by(|a, b| a.rank.total_cmp(&b.rank).then_with(|| a.label.cmp(&b.label)));
    let consistency_index = match out.lambda_max {
        Some(l) if labels.len() >= 2 => Some(consistency_index(l, labels.len())?),
        _ => None,
    };
    Ok(RankingReport {
        config: config.into(),
        players: labels.len(),
        lambda_max: out.lambda_max,
        consistency_index,
        rows,
    })
}

impl RankingReport {
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# {} method={} correction={} transform={} tol={:e} max_iter={}",
            c.name,
            c.method,
            c.correction,
            if c.transform { "on" } else { "off" },
            c.tol,
            c.max_iter
        );
        if let (Some(l), Some(ci)) = (self.lambda_max, self.consistency_index) {
            let _ = writeln!(s, "# lambda_max={} CI={}", sig(l, 8), sig(ci, 6));
        }
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(6).max(6);
        let _ = writeln!(s, "{:<5} {:<width$} weight", "rank", "player");
        for r in &self.rows {
            let _ = writeln!(s, "{:<5} {:<width$} {}", fmt_rank(r.rank), r.label, sig(r.weight, 6));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedRanking {
    pub name: String,
    /// Aligned with `AnalysisReport::players`.
    pub ranks: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationTable {
    pub names: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityStat {
    pub known: usize,
    pub cells: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeRow {
    pub label: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriadSummary {
    pub count: usize,
    pub triads: Vec<[String; 3]>,
}

/// Sections to keep in an [`AnalysisReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sections {
    pub rankings: bool,
    pub correlations: bool,
    pub density: bool,
    pub degrees: bool,
    pub triads: bool,
}

impl Sections {
    pub const ALL: Self = Self {
        rankings: true,
        correlations: true,
        density: true,
        degrees: true,
        triads: true,
    };
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub players: Vec<String>,
    pub edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rankings: Option<Vec<NamedRanking>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlations: Option<CorrelationTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<DensityStat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<DegreeRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triads: Option<TriadSummary>,
}

pub const WIN_LOSS: &str = "W/L";

/// Runs every configuration (concurrently) and collects the statistics.
/// The win/loss ranking is appended after the configured rankings.
pub fn run_analysis(records: &[HeadToHead], configs: &[PipelineConfig]) -> Result<AnalysisReport> {
    let labels = labels_of(records);
    let outputs: Vec<Result<Ranking>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| {
                let labels = &labels;
                scope.spawn(move || run_pipeline(records, labels, c).map(|o| o.ranking))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("pipeline thread panicked"))
            .collect()
    });
    let rankings = outputs.into_iter().collect::<Result<Vec<_>>>()?;

    let correlations = if rankings.len() >= 2 {
        Some(CorrelationTable {
            names: configs.iter().map(PipelineConfig::name).collect(),
            matrix: correlation_matrix(&rankings)?,
        })
    } else {
        None
    };

    let mut named: Vec<NamedRanking> = configs
        .iter()
        .zip(rankings)
        .map(|(c, r)| NamedRanking { name: c.name(), ranks: r.ranks })
        .collect();
    named.push(NamedRanking {
        name: WIN_LOSS.to_string(),
        ranks: win_loss_ranking(records, &labels)?.ranks,
    });

    // Correction only adds entries for pairs that have records, so either
    // policy yields the same structure.
    let pcm = prepare_matrix(records, &labels, CorrectionPolicy::METHOD_2, false)?;
    let g = graph_of(&pcm);
    let n = labels.len();
    let density = if n > 0 {
        Some(DensityStat {
            known: pcm.present_count(),
            cells: n * n,
            value: density(&pcm)?,
        })
    } else {
        None
    };
    let degrees = degree_distribution(&g, &labels)?
        .into_iter()
        .map(|(label, degree)| DegreeRow { label, degree })
        .collect();
    let triads = intransitive_triads(records, &labels)?;
    let triads = TriadSummary {
        count: triads.count,
        triads: triads
            .triads
            .iter()
            .map(|&(i, j, k)| [labels[i].clone(), labels[j].clone(), labels[k].clone()])
            .collect(),
    };

    Ok(AnalysisReport {
        edges: g.edge_count(),
        players: labels,
        rankings: Some(named),
        correlations,
        density,
        degrees: Some(degrees),
        triads: Some(triads),
    })
}

impl AnalysisReport {
    pub fn retain(mut self, keep: Sections) -> Self {
        if !keep.rankings {
            self.rankings = None;
        }
        if !keep.correlations {
            self.correlations = None;
        }
        if !keep.density {
            self.density = None;
        }
        if !keep.degrees {
            self.degrees = None;
        }
        if !keep.triads {
            self.triads = None;
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "players: {}  edges: {}", self.players.len(), self.edges);
        let width = self.players.iter().map(String::len).max().unwrap_or(6).max(6);

        if let Some(rankings) = &self.rankings {
            let _ = writeln!(s, "\nrankings");
            let _ = write!(s, "{:<width$}", "player");
            for r in rankings {
                let _ = write!(s, " {:>8}", r.name);
            }
            s.push('\n');
            for (i, p) in self.players.iter().enumerate() {
                let _ = write!(s, "{p:<width$}");
                for r in rankings {
                    let _ = write!(s, " {:>8}", fmt_rank(r.ranks[i]));
                }
                s.push('\n');
            }
        }
        if let Some(c) = &self.correlations {
            let _ = writeln!(s, "\nspearman correlations");
            let _ = write!(s, "{:<8}", "");
            for name in &c.names {
                let _ = write!(s, " {name:>8}");
            }
            s.push('\n');
            for (name, row) in c.names.iter().zip(&c.matrix) {
                let _ = write!(s, "{name:<8}");
                for v in row {
                    let _ = write!(s, " {v:>8.4}");
                }
                s.push('\n');
            }
        }
        if let Some(d) = &self.density {
            let _ = writeln!(s, "\ndensity: {:.4} ({}/{})", d.value, d.known, d.cells);
        }
        if let Some(degrees) = &self.degrees {
            let _ = writeln!(s, "\ndegrees");
            for d in degrees {
                let _ = writeln!(s, "{:<width$} {}", d.label, d.degree);
            }
        }
        if let Some(t) = &self.triads {
            let _ = writeln!(s, "\nintransitive triads: {}", t.count);
            for [a, b, c] in &t.triads {
                let _ = writeln!(s, "{a} > {b} > {c} > {a}");
            }
        }
        s
    }
}

/// DOT rendering: `winner -> loser` for decided pairs, a dashed undirected
/// edge for tied pairs. Edges are sorted by label pair.
pub fn render_dot(g: &ComparisonGraph, records: &[HeadToHead], labels: &[String]) -> Result<String> {
    if labels.len() != g.vertex_count() {
        return Err(PcmError::Shape(format!(
            "{} labels for {} vertices",
            labels.len(),
            g.vertex_count()
        )));
    }
    let by_pair: HashMap<(&str, &str), &HeadToHead> = records
        .iter()
        .flat_map(|r| {
            [
                ((r.player_a.as_str(), r.player_b.as_str()), r),
                ((r.player_b.as_str(), r.player_a.as_str()), r),
            ]
        })
        .collect();

    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .map(|(i, j)| {
            let (a, b) = (labels[i].as_str(), labels[j].as_str());
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    edges.sort_unstable();

    let mut nodes: Vec<&str> = labels.iter().map(String::as_str).collect();
    nodes.sort_unstable();

    let mut s = String::from("digraph comparisons {\n  node [shape=ellipse];\n");
    for v in nodes {
        let _ = writeln!(s, "  {};", quote(v));
    }
    for (a, b) in edges {
        match by_pair.get(&(a, b)) {
            Some(r) => {
                let wa = r.wins_of(a).unwrap_or(0);
                let wb = r.wins_of(b).unwrap_or(0);
                if wa == wb {
                    let _ = writeln!(s, "  {} -> {} [label=\"{wa}-{wb}\", dir=none, style=dashed];", quote(a), quote(b));
                } else if wa > wb {
                    let _ = writeln!(s, "  {} -> {} [label=\"{wa}-{wb}\"];", quote(a), quote(b));
                } else {
                    let _ = writeln!(s, "  {} -> {} [label=\"{wb}-{wa}\"];", quote(b), quote(a));
                }
            }
            None => {
                let _ = writeln!(s, "  {} -> {} [dir=none];", quote(a), quote(b));
            }
        }
    }
    s.push_str("}\n");
    Ok(s)
}

pub fn export_graph_dot(
    g: &ComparisonGraph,
    records: &[HeadToHead],
    labels: &[String],
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    let dot = render_dot(g, records, labels)?;
    std::fs::write(path, dot).map_err(|source| PcmError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

fn fmt_rank(r: f64) -> String {
    if r.fract() == 0.0 {
        format!("{r:.0}")
    } else {
        format!("{r}")
    }
}

/// `x` with `digits` significant digits.
fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}
