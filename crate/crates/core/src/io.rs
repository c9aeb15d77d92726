//! On-disk formats.
//!
//! Matrices are plain text: a `rows dim` header, then one `node_id v1 .. vD`
//! line per row with raw node ids. Values use the shortest representation
//! that parses back to the same `f64`, so a save/load round trip is exact.
//! Every output directory also gets a `manifest.json`.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dbe::{EmbeddingSet, Matrix, TrainConfig, TrainReport};
use crate::error::{Error, Result};
use crate::eval::TrajectoryRow;
use crate::synth::{SynthConfig, SynthNetwork};
use crate::temporal_graph::{DynamicNetwork, Strategy};
use crate::walks::WalkSet;
use crate::NodeId;

pub const MANIFEST: &str = "manifest.json";

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    let reader = BufReader::new(File::open(path)?);
    Ok(serde_json::from_reader(reader)?)
}

/// Writes `matrix` with row `i` labelled `ids[i]`.
pub fn write_matrix<W: Write>(mut w: W, matrix: &Matrix, ids: &[u64]) -> Result<()> {
    if ids.len() != matrix.rows() {
        return Err(Error::Shape(format!(
            "{} row labels for {} rows",
            ids.len(),
            matrix.rows()
        )));
    }
    writeln!(w, "{} {}", matrix.rows(), matrix.cols())?;
    for (r, id) in ids.iter().enumerate() {
        write!(w, "{id}")?;
        for v in matrix.row(r) {
            write!(w, " {v}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Reads a matrix and its row labels.
pub fn read_matrix<R: BufRead>(r: R) -> Result<(Vec<u64>, Matrix)> {
    let mut lines = r.lines().enumerate();
    let (rows, cols) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(Error::EmptyInput);
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::parse(i + 1, format!("bad header: {e}")))
        };
        if fields.len() != 2 {
            return Err(Error::parse(i + 1, "header must be `rows dim`"));
        }
        break (parse(fields[0])?, parse(fields[1])?);
    };
    let mut ids = Vec::with_capacity(rows);
    let mut data = Vec::with_capacity(rows * cols);
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let id = fields
            .next()
            .and_then(|s| s.parse::<u64>().ok())
            .ok_or_else(|| Error::parse(i + 1, "missing node id"))?;
        let before = data.len();
        for f in fields {
            data.push(
                f.parse::<f64>()
                    .map_err(|e| Error::parse(i + 1, format!("bad value {f:?}: {e}")))?,
            );
        }
        if data.len() - before != cols {
            return Err(Error::parse(
                i + 1,
                format!("expected {cols} values, found {}", data.len() - before),
            ));
        }
        ids.push(id);
    }
    if ids.len() != rows {
        return Err(Error::Shape(format!(
            "header promises {rows} rows, found {}",
            ids.len()
        )));
    }
    Ok((ids, Matrix::from_vec(rows, cols, data)))
}

pub fn save_matrix(path: impl AsRef<Path>, matrix: &Matrix, ids: &[u64]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_matrix(&mut w, matrix, ids)?;
    w.flush()?;
    Ok(())
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<(Vec<u64>, Matrix)> {
    read_matrix(BufReader::new(File::open(path)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotSummary {
    /// One based.
    pub t: usize,
    pub start: f64,
    pub end: f64,
    pub nodes: usize,
    pub edges: usize,
    pub raw_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkManifest {
    pub timesteps: usize,
    pub strategy: Strategy,
    pub overlap: f64,
    pub vocabulary_size: usize,
    pub snapshots: Vec<SnapshotSummary>,
}

impl NetworkManifest {
    pub fn of(network: &DynamicNetwork) -> Self {
        NetworkManifest {
            timesteps: network.len(),
            strategy: network.strategy(),
            overlap: network.overlap(),
            vocabulary_size: network.node_count(),
            snapshots: network
                .snapshots()
                .iter()
                .map(|s| SnapshotSummary {
                    t: s.index(),
                    start: s.span().start,
                    end: s.span().end,
                    nodes: s.nodes().len(),
                    edges: s.edge_count(),
                    raw_edges: s.raw_edge_count(),
                })
                .collect(),
        }
    }
}

/// `snapshot_0001.txt ..` with `u v weight` lines (raw ids) plus a manifest.
pub fn save_network(dir: impl AsRef<Path>, network: &DynamicNetwork) -> Result<NetworkManifest> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let vocab = network.vocabulary();
    for s in network.snapshots() {
        let mut w = BufWriter::new(File::create(dir.join(format!("snapshot_{:04}.txt", s.index())))?);
        for (u, v, weight) in s.edges() {
            writeln!(w, "{} {} {}", vocab[u as usize], vocab[v as usize], weight)?;
        }
        w.flush()?;
    }
    let manifest = NetworkManifest::of(network);
    write_json(dir.join(MANIFEST), &manifest)?;
    Ok(manifest)
}

/// `walks_0001.txt ..`, one walk of raw ids per line.
pub fn save_walks(dir: impl AsRef<Path>, walks: &[WalkSet], vocabulary: &[u64]) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    for set in walks {
        let mut w = BufWriter::new(File::create(dir.join(format!("walks_{:04}.txt", set.timestep)))?);
        for walk in &set.walks {
            let line: Vec<String> = walk.iter().map(|&g| vocabulary[g as usize].to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        w.flush()?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingManifest {
    pub timesteps: usize,
    pub dim: usize,
    pub vocabulary: Vec<u64>,
    pub config: TrainConfig,
    pub objective: Vec<f64>,
    /// Dense ids present at every timestep.
    pub present: Vec<Vec<NodeId>>,
}

/// `m_0001.txt ..`, `alpha.txt` and a manifest.
pub fn save_embeddings(
    dir: impl AsRef<Path>,
    embeddings: &EmbeddingSet,
    vocabulary: &[u64],
    config: &TrainConfig,
    report: Option<&TrainReport>,
) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    for (t, m) in embeddings.steps().iter().enumerate() {
        save_matrix(dir.join(format!("m_{:04}.txt", t + 1)), m, vocabulary)?;
    }
    save_matrix(dir.join("alpha.txt"), embeddings.alpha(), vocabulary)?;
    let manifest = EmbeddingManifest {
        timesteps: embeddings.timesteps(),
        dim: embeddings.dim(),
        vocabulary: vocabulary.to_vec(),
        config: config.clone(),
        objective: report.map(|r| r.objective.clone()).unwrap_or_default(),
        present: (0..embeddings.timesteps())
            .map(|t| embeddings.present(t).to_vec())
            .collect(),
    };
    write_json(dir.join(MANIFEST), &manifest)
}

pub fn load_embeddings(dir: impl AsRef<Path>) -> Result<(EmbeddingSet, EmbeddingManifest)> {
    let dir = dir.as_ref();
    let manifest: EmbeddingManifest = read_json(dir.join(MANIFEST))?;
    let check = |name: &str, ids: &[u64], m: &Matrix| -> Result<()> {
        if ids != manifest.vocabulary.as_slice() || m.cols() != manifest.dim {
            return Err(Error::Shape(format!("{name} does not match the manifest")));
        }
        Ok(())
    };
    let mut steps = Vec::with_capacity(manifest.timesteps);
    for t in 0..manifest.timesteps {
        let name = format!("m_{:04}.txt", t + 1);
        let (ids, m) = load_matrix(dir.join(&name))?;
        check(&name, &ids, &m)?;
        steps.push(m);
    }
    let (ids, alpha) = load_matrix(dir.join("alpha.txt"))?;
    check("alpha.txt", &ids, &alpha)?;
    let set = EmbeddingSet::with_presence(steps, alpha, manifest.present.clone())?;
    Ok((set, manifest))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthManifest {
    pub config: SynthConfig,
    pub edges_per_timestep: Vec<usize>,
    pub edge_volume: usize,
    pub evolving_nodes: Vec<NodeId>,
    pub regenerations: usize,
    pub migrations: Vec<crate::synth::Migration>,
}

/// `edges.txt` (`u v t`), `ground_truth.txt`
/// (`node is_evolving community_t1 .. community_tT`) and a manifest.
pub fn save_synth(dir: impl AsRef<Path>, synth: &SynthNetwork, config: &SynthConfig) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let mut w = BufWriter::new(File::create(dir.join("edges.txt"))?);
    for (t, edges) in synth.edges.iter().enumerate() {
        for &(u, v) in edges {
            writeln!(w, "{u} {v} {}", t + 1)?;
        }
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join("ground_truth.txt"))?);
    for (node, communities) in synth.community_of.iter().enumerate() {
        write!(w, "{node} {}", u8::from(synth.is_evolving(node as NodeId)))?;
        for c in communities {
            write!(w, " {c}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;

    write_json(
        dir.join(MANIFEST),
        &SynthManifest {
            config: config.clone(),
            edges_per_timestep: synth.edges.iter().map(Vec::len).collect(),
            edge_volume: synth.edge_volume(),
            evolving_nodes: synth.evolving_nodes.clone(),
            regenerations: synth.regenerations,
            migrations: synth.migrations.clone(),
        },
    )
}

/// Reads the evolving flags of a `ground_truth.txt`; returns the raw ids
/// marked evolving.
pub fn read_ground_truth(path: impl AsRef<Path>) -> Result<Vec<u64>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let mut fields = line.split_whitespace();
        let Some(id) = fields.next() else { continue };
        let id: u64 = id.parse().map_err(|_| Error::parse(i + 1, "bad node id"))?;
        match fields.next() {
            Some("1") => out.push(id),
            Some("0") | None => {}
            Some(other) => return Err(Error::parse(i + 1, format!("bad evolving flag {other:?}"))),
        }
    }
    Ok(out)
}

/// CSV with header `node,t,dim_1..dim_D,displacement,active`; the
/// displacement of the last timestep is left empty.
pub fn write_trajectories<W: Write>(mut w: W, rows: &[TrajectoryRow], vocabulary: &[u64]) -> Result<()> {
    let dim = rows.first().map_or(0, |r| r.vector.len());
    let mut header = vec!["node".to_string(), "t".to_string()];
    header.extend((1..=dim).map(|d| format!("dim_{d}")));
    header.push("displacement".into());
    header.push("active".into());
    writeln!(w, "{}", header.join(","))?;
    for r in rows {
        write!(w, "{},{}", vocabulary[r.node as usize], r.t)?;
        for v in &r.vector {
            write!(w, ",{v}")?;
        }
        match r.displacement {
            Some(d) => write!(w, ",{d}")?,
            None => write!(w, ",")?,
        }
        writeln!(w, ",{}", r.active)?;
    }
    Ok(())
}
