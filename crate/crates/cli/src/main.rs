//! `dynnet`: build snapshots, sample walks, train dynamic embeddings and
//! evaluate them from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Sweep;

/// Bad flag combination or invalid parameter value.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

#[derive(Parser)]
#[command(name = "dynnet", version, about = "Dynamic network embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slice an edge list into snapshots.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        construct: ConstructArgs,
    },
    /// Sample random walks on every snapshot.
    Walk {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        construct: ConstructArgs,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Train dynamic embeddings.
    Train {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        construct: ConstructArgs,
        #[command(flatten)]
        walk: WalkArgs,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Evaluate embeddings.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Generate a synthetic network with planted evolving nodes.
    Synth(SynthArgs),
    /// Write per-node embedding trajectories as CSV.
    Export(ExportArgs),
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Time-ordered link prediction.
    Link(Box<LinkCommand>),
    /// Rank nodes by embedding movement and score against planted labels.
    Evolving(EvolvingArgs),
}

#[derive(Args)]
struct LinkCommand {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    construct: ConstructArgs,
    #[command(flatten)]
    walk: WalkArgs,
    #[command(flatten)]
    train: TrainArgs,
    #[command(flatten)]
    link: LinkArgs,
}

#[derive(Args)]
struct InputArgs {
    /// Whitespace-separated edge list.
    #[arg(short, long)]
    input: Option<PathBuf>,
    /// JSON pipeline config (e.g. a previous run.json); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<Sweep<u64>>,
    /// Zero-based column of the source node.
    #[arg(long)]
    source_col: Option<usize>,
    #[arg(long)]
    target_col: Option<usize>,
    #[arg(long)]
    time_col: Option<usize>,
    #[arg(long, conflicts_with = "no_weight")]
    weight_col: Option<usize>,
    /// Treat every edge as weight 1.
    #[arg(long)]
    no_weight: bool,
}

#[derive(Args)]
struct ConstructArgs {
    /// Time-window length.
    #[arg(short = 'w', long)]
    window: Option<Sweep<f64>>,
    /// Event-window length in edges.
    #[arg(long)]
    events: Option<Sweep<usize>>,
    /// Offset between consecutive windows (time units or edges).
    #[arg(long)]
    stride: Option<Sweep<f64>>,
}

#[derive(Args)]
struct WalkArgs {
    /// Maximum walk length L.
    #[arg(long)]
    walk_len: Option<Sweep<usize>>,
    /// Walks per node r.
    #[arg(long)]
    walks: Option<Sweep<usize>>,
}

#[derive(Args)]
struct TrainArgs {
    /// Embedding dimension D.
    #[arg(long)]
    dim: Option<Sweep<usize>>,
    /// Context size cs.
    #[arg(long)]
    context: Option<Sweep<usize>>,
    /// Negative samples ns.
    #[arg(long)]
    negatives: Option<Sweep<usize>>,
    /// Prior precision of the context vectors and first timestep.
    #[arg(long)]
    lambda1: Option<Sweep<f64>>,
    /// Drift precision between timesteps.
    #[arg(long)]
    lambda: Option<Sweep<f64>>,
    #[arg(long)]
    epochs: Option<Sweep<usize>>,
    #[arg(long)]
    learning_rate: Option<Sweep<f64>>,
    /// Training threads; more than one trades reproducibility for speed.
    #[arg(long, env = "DYNNET_WORKERS")]
    workers: Option<usize>,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long)]
    train_fraction: Option<Sweep<f64>>,
    /// Use these embeddings instead of training on the training split.
    #[arg(long)]
    embeddings: Option<PathBuf>,
}

#[derive(Args)]
struct EvolvingArgs {
    /// Directory written by `train`.
    #[arg(long)]
    embeddings: PathBuf,
    /// `node is_evolving ...` lines, as written by `synth`.
    #[arg(long)]
    ground_truth: PathBuf,
    /// Cut-off of TOP-K; defaults to the number of planted nodes.
    #[arg(long)]
    k: Option<usize>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// JSON synth config; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short, long)]
    out: PathBuf,
    /// Number of nodes.
    #[arg(short, long)]
    n: Option<usize>,
    /// Power-law exponent of the degree distribution.
    #[arg(long)]
    alpha: Option<f64>,
    /// Power-law scale.
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    communities: Option<usize>,
    #[arg(long)]
    evolving_fraction: Option<f64>,
    #[arg(long)]
    timesteps: Option<usize>,
    #[arg(long)]
    intra_ratio: Option<f64>,
    #[arg(long)]
    stable_rewire: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ExportArgs {
    /// Directory written by `train`.
    #[arg(long)]
    embeddings: PathBuf,
    /// Node ids to export; all nodes by default.
    #[arg(long)]
    nodes: Option<Sweep<u64>>,
    #[arg(short, long)]
    out: PathBuf,
}

/// 1 for usage errors, 3 for numeric failures, 2 for anything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<dynnet::Error>() {
            return match e {
                dynnet::Error::NumericFailure { .. } => 3,
                dynnet::Error::InvalidConfig(_) | dynnet::Error::InvalidStride(_) | dynnet::Error::Split(_) => 1,
                _ => 2,
            };
        }
    }
    2
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
