use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write as _};
use std::path::Path;

use anyhow::{Context as _, Result};
use dynnet::eval::{detect_evolving, export_trajectories, link_prediction, ranking_metrics, EvalReport};
use dynnet::io;
use dynnet::synth::{generate, SynthConfig};
use dynnet::temporal_graph::{read_edge_list, time_split, Strategy};
use dynnet::{build_by_events, build_by_time, random_walks, train, DynamicNetwork, EmbeddingSet, EventStream, NodeId};
use serde::Serialize;

use crate::config::{expand, Axis, PipelineConfig, Run};
use crate::{
    Command, ConstructArgs, EvalCommand, EvolvingArgs, ExportArgs, InputArgs, LinkArgs, LinkCommand, SynthArgs,
    TrainArgs, UsageError, WalkArgs,
};

const RUN_MANIFEST: &str = "run.json";

#[derive(Serialize)]
struct RunManifest<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    config: &'a T,
}

fn write_run_manifest<T: Serialize>(dir: &Path, command: &str, config: &T) -> Result<()> {
    fs::create_dir_all(dir)?;
    let manifest = RunManifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config,
    };
    io::write_json(dir.join(RUN_MANIFEST), &manifest)?;
    Ok(())
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Construct { input, construct } => sweep(
            "construct",
            resolve(&input, Some(&construct), None, None, None)?,
            construct_one,
        ),
        Command::Walk { input, construct, walk } => sweep(
            "walk",
            resolve(&input, Some(&construct), Some(&walk), None, None)?,
            walk_one,
        ),
        Command::Train {
            input,
            construct,
            walk,
            train,
        } => {
            let runs = resolve(&input, Some(&construct), Some(&walk), Some(&train), None)?;
            sweep("train", runs, train_one)
        }
        Command::Eval(EvalCommand::Link(cmd)) => {
            let LinkCommand {
                input,
                construct,
                walk,
                train,
                link,
            } = *cmd;
            let runs = resolve(&input, Some(&construct), Some(&walk), Some(&train), Some(&link))?;
            sweep("eval link", runs, link_one)
        }
        Command::Eval(EvalCommand::Evolving(args)) => evolving(&args),
        Command::Synth(args) => synth(&args),
        Command::Export(args) => export(&args),
    }
}

/// Base config from `--config` (or defaults) with the plain flags applied,
/// then expanded over every swept flag.
fn resolve(
    input: &InputArgs,
    construct: Option<&ConstructArgs>,
    walk: Option<&WalkArgs>,
    train: Option<&TrainArgs>,
    link: Option<&LinkArgs>,
) -> Result<Vec<Run>> {
    let mut base = match &input.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(p) = &input.input {
        base.input = Some(p.clone());
    }
    if let Some(o) = &input.out {
        base.out = Some(o.clone());
    }
    let schema = &mut base.schema;
    schema.source = input.source_col.unwrap_or(schema.source);
    schema.target = input.target_col.unwrap_or(schema.target);
    schema.timestamp = input.time_col.unwrap_or(schema.timestamp);
    if input.no_weight {
        schema.weight = None;
    } else if let Some(w) = input.weight_col {
        schema.weight = Some(w);
    }

    let mut axes = Vec::new();
    axes.extend(Axis::new("seed", &input.seed, |c, v| c.seed = v));
    if let Some(a) = construct {
        axes.extend(Axis::new("window", &a.window, |c, v| {
            c.construction.window = Some(v);
            c.construction.events = None;
        }));
        axes.extend(Axis::new("events", &a.events, |c, v| {
            c.construction.events = Some(v);
            c.construction.window = None;
        }));
        axes.extend(Axis::new("stride", &a.stride, |c, v| c.construction.stride = Some(v)));
    }
    if let Some(a) = walk {
        axes.extend(Axis::new("walk_len", &a.walk_len, |c, v| c.walk.walk_length = v));
        axes.extend(Axis::new("walks", &a.walks, |c, v| c.walk.walks_per_node = v));
    }
    if let Some(a) = train {
        if let Some(w) = a.workers {
            base.train.workers = w;
        }
        axes.extend(Axis::new("dim", &a.dim, |c, v| c.train.dim = v));
        axes.extend(Axis::new("context", &a.context, |c, v| c.train.context_size = v));
        axes.extend(Axis::new("negatives", &a.negatives, |c, v| c.train.negatives = v));
        axes.extend(Axis::new("lambda1", &a.lambda1, |c, v| c.train.lambda1 = v));
        axes.extend(Axis::new("lambda", &a.lambda, |c, v| c.train.lambda = v));
        axes.extend(Axis::new("epochs", &a.epochs, |c, v| c.train.epochs = v));
        axes.extend(Axis::new("learning_rate", &a.learning_rate, |c, v| {
            c.train.learning_rate = v
        }));
    }
    if let Some(a) = link {
        if let Some(e) = &a.embeddings {
            base.embeddings = Some(e.clone());
        }
        axes.extend(Axis::new("train_fraction", &a.train_fraction, |c, v| {
            c.train_fraction = v
        }));
    }
    let runs = expand(&base, &axes);
    if runs.len() > 1 && base.out.is_none() {
        return Err(UsageError("a sweep needs --out".into()).into());
    }
    Ok(runs)
}

/// Runs every grid point; a swept parent directory gets an index of its runs.
fn sweep(name: &str, runs: Vec<Run>, one: fn(&PipelineConfig) -> Result<()>) -> Result<()> {
    if runs.len() > 1 {
        let labels: Vec<&str> = runs.iter().map(|r| r.label.as_str()).collect();
        let parent = runs[0]
            .config
            .out
            .as_deref()
            .and_then(Path::parent)
            .expect("swept runs have an output directory");
        fs::create_dir_all(parent)?;
        io::write_json(
            parent.join("sweep.json"),
            &serde_json::json!({ "command": name, "runs": labels }),
        )?;
    }
    for run in &runs {
        if !run.label.is_empty() {
            log::info!("run {}", run.label);
        }
        one(&run.config).with_context(|| {
            if run.label.is_empty() {
                name.to_string()
            } else {
                format!("{name} [{}]", run.label)
            }
        })?;
    }
    Ok(())
}

fn load_stream(config: &PipelineConfig) -> Result<EventStream> {
    let path = config.input()?;
    let stream = read_edge_list(path, &config.schema).with_context(|| format!("reading {}", path.display()))?;
    log::info!(
        "{} edges over {} nodes ({} self loops skipped)",
        stream.len(),
        stream.node_count(),
        stream.skipped_self_loops()
    );
    Ok(stream)
}

fn build(stream: &EventStream, config: &PipelineConfig) -> Result<DynamicNetwork> {
    let network = match config.construction.strategy()? {
        Strategy::Time { window, stride } => build_by_time(stream, window, stride)?,
        Strategy::Events { window, stride } => build_by_events(stream, window, stride)?,
    };
    log::info!("{} snapshots, overlap {:.3}", network.len(), network.overlap());
    Ok(network)
}

fn construct_one(config: &PipelineConfig) -> Result<()> {
    let out = config.out()?;
    let network = build(&load_stream(config)?, config)?;
    io::save_network(out, &network)?;
    write_run_manifest(out, "construct", config)
}

fn walk_one(config: &PipelineConfig) -> Result<()> {
    let out = config.out()?;
    let network = build(&load_stream(config)?, config)?;
    let walks = random_walks(&network, &config.walk, config.stream_seed("walk"))?;
    io::save_walks(out, &walks, network.vocabulary())?;
    write_run_manifest(out, "walk", config)
}

/// Walks and trains on `stream`.
fn fit(stream: &EventStream, config: &PipelineConfig) -> Result<(EmbeddingSet, dynnet::TrainReport)> {
    let network = build(stream, config)?;
    let walks = random_walks(&network, &config.walk, config.stream_seed("walk"))?;
    let train_config = config.train_config();
    let t = &train_config;
    eprintln!(
        "hyperparameters: D={} L={} r={} cs={} ns={} lambda1={} lambda={} epochs={} workers={}",
        t.dim,
        config.walk.walk_length,
        config.walk.walks_per_node,
        t.context_size,
        t.negatives,
        t.lambda1,
        t.lambda,
        t.epochs,
        t.workers
    );
    let (embeddings, report) = train(&network, &walks, &train_config)?;
    if let Some(last) = report.objective.last() {
        log::info!("final objective {last:.6e}");
    }
    Ok((embeddings, report))
}

fn train_one(config: &PipelineConfig) -> Result<()> {
    let out = config.out()?;
    let stream = load_stream(config)?;
    let (embeddings, report) = fit(&stream, config)?;
    io::save_embeddings(
        out,
        &embeddings,
        stream.vocabulary(),
        &config.train_config(),
        Some(&report),
    )?;
    write_run_manifest(out, "train", config)
}

fn emit_report(report: &EvalReport, out: Option<&Path>) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(report)?);
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
        io::write_json(dir.join("report.json"), report)?;
    }
    Ok(())
}

fn link_one(config: &PipelineConfig) -> Result<()> {
    let stream = load_stream(config)?;
    let (train_stream, test_stream) = time_split(&stream, config.train_fraction)?;
    let embeddings = match &config.embeddings {
        Some(dir) => {
            let (embeddings, manifest) = io::load_embeddings(dir)?;
            if manifest.vocabulary != stream.vocabulary() {
                return Err(UsageError(format!(
                    "embeddings in {} were trained on a different node set",
                    dir.display()
                ))
                .into());
            }
            embeddings
        }
        None => fit(&train_stream, config)?.0,
    };
    let report =
        link_prediction(&embeddings, &train_stream, &test_stream, config.stream_seed("eval"))?.with_config(config)?;
    emit_report(&report, config.out.as_deref())?;
    if let Some(out) = &config.out {
        write_run_manifest(out, "eval link", config)?;
    }
    Ok(())
}

/// Dense ids of raw node ids under `vocabulary`.
fn dense_ids(vocabulary: &[u64], raw: &[u64]) -> Result<Vec<NodeId>> {
    let index: HashMap<u64, NodeId> = vocabulary.iter().enumerate().map(|(i, &v)| (v, i as NodeId)).collect();
    let unknown: Vec<u64> = raw.iter().copied().filter(|r| !index.contains_key(r)).collect();
    if !unknown.is_empty() {
        return Err(dynnet::Error::UnknownNodes(unknown).into());
    }
    Ok(raw.iter().map(|r| index[r]).collect())
}

fn evolving(args: &EvolvingArgs) -> Result<()> {
    let (embeddings, manifest) = io::load_embeddings(&args.embeddings)?;
    let raw = io::read_ground_truth(&args.ground_truth)
        .with_context(|| format!("reading {}", args.ground_truth.display()))?;
    let truth = dense_ids(&manifest.vocabulary, &raw)?;
    let ranking = detect_evolving(&embeddings)?;
    let report = ranking_metrics(&ranking, &truth, args.k)?.with_config(&manifest.config)?;
    emit_report(&report, args.out.as_deref())?;
    if let Some(out) = &args.out {
        let config = serde_json::json!({
            "embeddings": args.embeddings,
            "ground_truth": args.ground_truth,
            "k": args.k,
        });
        write_run_manifest(out, "eval evolving", &config)?;
    }
    Ok(())
}

fn synth(args: &SynthArgs) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<SynthConfig>(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?
        }
        None => SynthConfig::default(),
    };
    config.nodes = args.n.unwrap_or(config.nodes);
    config.alpha = args.alpha.unwrap_or(config.alpha);
    config.c = args.c.unwrap_or(config.c);
    config.communities = args.communities.unwrap_or(config.communities);
    config.evolving_fraction = args.evolving_fraction.unwrap_or(config.evolving_fraction);
    config.timesteps = args.timesteps.unwrap_or(config.timesteps);
    config.intra_ratio = args.intra_ratio.unwrap_or(config.intra_ratio);
    config.stable_rewire = args.stable_rewire.unwrap_or(config.stable_rewire);
    config.seed = args.seed.unwrap_or(config.seed);

    let network = generate(&config)?;
    io::save_synth(&args.out, &network, &config)?;
    write_run_manifest(&args.out, "synth", &config)?;
    log::info!(
        "{} nodes, {} evolving, {} edges over {} timesteps",
        config.nodes,
        network.evolving_nodes.len(),
        network.edge_volume(),
        config.timesteps
    );
    Ok(())
}

fn export(args: &ExportArgs) -> Result<()> {
    let (embeddings, manifest) = io::load_embeddings(&args.embeddings)?;
    let nodes = match &args.nodes {
        Some(list) => dense_ids(&manifest.vocabulary, &list.0)?,
        None => (0..manifest.vocabulary.len() as NodeId).collect(),
    };
    let rows = export_trajectories(&embeddings, &nodes)?;
    fs::create_dir_all(&args.out)?;
    let mut w = BufWriter::new(File::create(args.out.join("trajectories.csv"))?);
    io::write_trajectories(&mut w, &rows, &manifest.vocabulary)?;
    w.flush()?;

    if embeddings.timesteps() >= 2 {
        let ranking = detect_evolving(&embeddings)?;
        let mut w = BufWriter::new(File::create(args.out.join("summary.csv"))?);
        writeln!(w, "node,active_timesteps,summed_displacement")?;
        for &g in &nodes {
            let i = g as usize;
            writeln!(
                w,
                "{},{},{}",
                manifest.vocabulary[i], ranking.active_counts[i], ranking.summed_displacement[i]
            )?;
        }
        w.flush()?;
    }
    let config = serde_json::json!({
        "embeddings": args.embeddings,
        "nodes": args.nodes.as_ref().map(|n| &n.0),
    });
    write_run_manifest(&args.out, "export", &config)
}
