//! `pcmrank`: rankings from head-to-head records.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 disconnected
//! comparison graph, 4 solver non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pcm_core::analysis::{perturb_add_match, perturb_remove_player};
use pcm_core::dataset::{labels_of, load_dataset};
use pcm_core::pipeline::prepare_matrix;
use pcm_core::report::{export_graph_dot, run_analysis, run_ranking, Sections};
use pcm_core::solvers::{COMPLETION_MAX_ITER, COMPLETION_TOL};
use pcm_core::{graph_of, CorrectionPolicy, Method, PcmError, PipelineConfig};

#[derive(Parser)]
#[command(name = "pcmrank", version, about = "Rank players from incomplete pairwise comparison matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weights and ranks for one method.
    Rank(RankArgs),
    /// Side-by-side rankings, rank correlations and graph statistics.
    Analyze(AnalyzeArgs),
    /// Write the comparison graph as Graphviz DOT.
    Graph(GraphArgs),
    /// Re-rank after adding one match or removing one player.
    Perturb(PerturbArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Em,
    Llsm,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrectionArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(long, value_enum)]
    correction: CorrectionArg,
    /// Damp ratios by the share of matches played.
    #[arg(long)]
    transform: bool,
    #[arg(long, default_value_t = COMPLETION_TOL)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = COMPLETION_MAX_ITER)]
    max_iter: usize,
}

impl PipelineArgs {
    fn config(&self) -> PipelineConfig {
        let method = match self.method {
            MethodArg::Em => Method::Em,
            MethodArg::Llsm => Method::Llsm,
        };
        let correction = match self.correction {
            CorrectionArg::One => CorrectionPolicy::METHOD_1,
            CorrectionArg::Two => CorrectionPolicy::METHOD_2,
        };
        PipelineConfig {
            method,
            correction,
            transform: self.transform,
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// All eight method × correction × transformation variants instead of
    /// the four second-correction ones.
    #[arg(long = "all-methods")]
    all_methods: bool,
    #[arg(long)]
    triads: bool,
    #[arg(long)]
    degrees: bool,
    #[arg(long)]
    density: bool,
    #[arg(long)]
    correlations: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    dot: PathBuf,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("edit").required(true).args(["add_match", "remove_player"])))]
struct PerturbArgs {
    #[arg(long)]
    input: PathBuf,
    /// Players of the extra match.
    #[arg(long = "add-match", num_args = 2, value_names = ["A", "B"], requires = "winner")]
    add_match: Option<Vec<String>>,
    #[arg(long)]
    winner: Option<String>,
    #[arg(long = "remove-player", value_name = "X")]
    remove_player: Option<String>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &PcmError) -> u8 {
    match err {
        PcmError::GraphDisconnected { .. } => 3,
        PcmError::NoConvergence { .. } => 4,
        _ => 2,
    }
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Text => print!("{}", text(value)),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
    }
}

fn run(command: Command) -> Result<(), PcmError> {
    match command {
        Command::Rank(args) => {
            let records = load_dataset(&args.input)?;
            let report = run_ranking(&args.pipeline.config(), &records)?;
            emit(args.format, &report, |r| r.to_text());
        }
        Command::Analyze(args) => {
            let records = load_dataset(&args.input)?;
            let configs = if args.all_methods {
                PipelineConfig::all_variants()
            } else {
                PipelineConfig::all_variants()
                    .into_iter()
                    .filter(|c| c.correction == CorrectionPolicy::METHOD_2)
                    .collect()
            };
            let any_section = args.triads || args.degrees || args.density || args.correlations;
            let sections = if any_section {
                Sections {
                    rankings: args.all_methods,
                    correlations: args.correlations,
                    density: args.density,
                    degrees: args.degrees,
                    triads: args.triads,
                }
            } else {
                Sections::ALL
            };
            let report = run_analysis(&records, &configs)?.retain(sections);
            emit(args.format, &report, |r| r.to_text());
        }
        Command::Graph(args) => {
            let records = load_dataset(&args.input)?;
            let labels = labels_of(&records);
            let pcm = prepare_matrix(&records, &labels, CorrectionPolicy::METHOD_2, false)?;
            export_graph_dot(&graph_of(&pcm), &records, &labels, &args.dot)?;
        }
        Command::Perturb(args) => {
            let records = load_dataset(&args.input)?;
            let labels = labels_of(&records);
            let config = args.pipeline.config();
            if let Some(pair) = &args.add_match {
                let winner = args.winner.as_deref().unwrap_or_default();
                let outcome = perturb_add_match(&records, &labels, (&pair[0], &pair[1]), winner, &config)?;
                emit(args.format, &outcome, |o| {
                    let mut s = format!(
                        "# {} with one more {}–{} match won by {winner}\n",
                        config.name(),
                        pair[0],
                        pair[1]
                    );
                    s.push_str("player before after delta\n");
                    let mut rows: Vec<_> = o.changes.iter().collect();
                    rows.sort_by(|a, b| a.after.total_cmp(&b.after).then_with(|| a.label.cmp(&b.label)));
                    for c in rows {
                        s.push_str(&format!("{} {} {} {:+}\n", c.label, c.before, c.after, c.delta));
                    }
                    s
                });
            } else if let Some(player) = &args.remove_player {
                let outcome = perturb_remove_player(&records, &labels, player, &config)?;
                emit(args.format, &outcome, |o| {
                    let mut s = format!("# {} without {player}\n", config.name());
                    s.push_str(&format!("spearman on remaining players: {:.4}\n", o.spearman));
                    s.push_str("rank player\n");
                    for p in o.after.order() {
                        s.push_str(&format!("{} {p}\n", o.after.rank_of(p).unwrap_or(f64::NAN)));
                    }
                    s
                });
            }
        }
    }
    Ok(())
}
