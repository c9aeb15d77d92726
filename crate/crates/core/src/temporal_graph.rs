//! Temporal edge ingestion and snapshot construction.
//!
//! A stream of timestamped interactions is cut into a sequence of static
//! snapshots, either by a sliding time window (`[start, start + window)`
//! advanced by `stride` time units) or by a sliding event window (a fixed
//! number of consecutive events advanced by `stride` events). Windows may
//! overlap; the overlap ratio is `(window - stride) / window`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::NodeId;

/// Upper bound on the number of snapshots a single construction may emit.
const MAX_SNAPSHOTS: f64 = 1.0e7;

/// One timestamped interaction between two nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub source: NodeId,
    pub target: NodeId,
    pub timestamp: f64,
    pub weight: f64,
}

impl TemporalEdge {
    pub fn new(source: NodeId, target: NodeId, timestamp: f64) -> Self {
        TemporalEdge {
            source,
            target,
            timestamp,
            weight: 1.0,
        }
    }
}

/// Column layout of an edge-list file.
///
/// Column indices are zero based. Lines may carry fewer columns than the
/// weight column (the weight then defaults to 1) but never more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schema {
    pub source: usize,
    pub target: usize,
    pub timestamp: usize,
    pub weight: Option<usize>,
}

impl Default for Schema {
    fn default() -> Self {
        Schema {
            source: 0,
            target: 1,
            timestamp: 2,
            weight: Some(3),
        }
    }
}

impl Schema {
    fn required_fields(&self) -> usize {
        self.source.max(self.target).max(self.timestamp) + 1
    }

    fn max_fields(&self) -> usize {
        let required = self.required_fields();
        self.weight.map_or(required, |w| required.max(w + 1))
    }
}

/// Time-ordered sequence of temporal edges over a dense node vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct EventStream {
    edges: Vec<TemporalEdge>,
    vocabulary: Vec<u64>,
    skipped_self_loops: usize,
}

impl EventStream {
    /// Builds a stream from edges already expressed in dense ids.
    ///
    /// `vocabulary[i]` is the external id of dense node `i`. Edges are
    /// stably sorted by timestamp.
    pub fn from_edges(mut edges: Vec<TemporalEdge>, vocabulary: Vec<u64>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = vocabulary.len();
        for (i, e) in edges.iter().enumerate() {
            if e.source as usize >= n || e.target as usize >= n {
                return Err(Error::parse(i + 1, "node id outside vocabulary"));
            }
            if e.source == e.target {
                return Err(Error::parse(i + 1, "self-loop"));
            }
            if !e.timestamp.is_finite() {
                return Err(Error::parse(i + 1, "non-finite timestamp"));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::parse(i + 1, "weight must be positive"));
            }
        }
        edges.sort_by(|a, b| a.timestamp.total_cmp(&b.timestamp));
        Ok(EventStream {
            edges,
            vocabulary,
            skipped_self_loops: 0,
        })
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.vocabulary.len()
    }

    /// External ids, indexed by dense id.
    pub fn vocabulary(&self) -> &[u64] {
        &self.vocabulary
    }

    pub fn skipped_self_loops(&self) -> usize {
        self.skipped_self_loops
    }

    /// Dense ids of the nodes that take part in at least one edge, ascending.
    pub fn active_nodes(&self) -> Vec<NodeId> {
        let mut seen = vec![false; self.vocabulary.len()];
        for e in &self.edges {
            seen[e.source as usize] = true;
            seen[e.target as usize] = true;
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i as NodeId)
            .collect()
    }

    /// Dense id of an external id.
    pub fn dense_id(&self, external: u64) -> Option<NodeId> {
        self.vocabulary.binary_search(&external).ok().map(|i| i as NodeId)
    }

    pub fn first_timestamp(&self) -> f64 {
        self.edges[0].timestamp
    }

    pub fn last_timestamp(&self) -> f64 {
        self.edges[self.edges.len() - 1].timestamp
    }
}

/// Parses a whitespace- or comma-separated edge list.
///
/// Lines starting with `%` or `#` are comments. External node ids are
/// remapped to dense ids in ascending order of the external id; the mapping
/// is kept in [`EventStream::vocabulary`]. Self-loops are dropped and
/// counted.
pub fn ingest_edge_list(bytes: &[u8], schema: &Schema) -> Result<EventStream> {
    let text = String::from_utf8_lossy(bytes);
    let required = schema.required_fields();
    let max_fields = schema.max_fields();

    let mut raw: Vec<(u64, u64, f64, f64)> = Vec::new();
    let mut self_loops = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if fields.len() < required || fields.len() > max_fields {
            return Err(Error::parse(
                lineno,
                format!("expected {required}..={max_fields} fields, found {}", fields.len()),
            ));
        }
        let id = |col: usize| -> Result<u64> {
            fields[col]
                .parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("invalid node id {:?}", fields[col])))
        };
        let source = id(schema.source)?;
        let target = id(schema.target)?;
        let timestamp: f64 = fields[schema.timestamp]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid timestamp {:?}", fields[schema.timestamp])))?;
        if !timestamp.is_finite() {
            return Err(Error::parse(lineno, "timestamp is not finite"));
        }
        let weight = match schema.weight {
            Some(col) if col < fields.len() => {
                let w: f64 = fields[col]
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("invalid weight {:?}", fields[col])))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(lineno, "weight must be positive"));
                }
                w
            }
            _ => 1.0,
        };
        if source == target {
            self_loops += 1;
            continue;
        }
        raw.push((source, target, timestamp, weight));
    }
    if self_loops > 0 {
        log::warn!("skipped {self_loops} self-loop(s)");
    }
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }

    let mut vocabulary: Vec<u64> = raw.iter().flat_map(|&(s, t, _, _)| [s, t]).collect();
    vocabulary.sort_unstable();
    vocabulary.dedup();
    let index: HashMap<u64, NodeId> = vocabulary
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, i as NodeId))
        .collect();
    let edges = raw
        .into_iter()
        .map(|(s, t, ts, w)| TemporalEdge {
            source: index[&s],
            target: index[&t],
            timestamp: ts,
            weight: w,
        })
        .collect();
    let mut stream = EventStream::from_edges(edges, vocabulary)?;
    stream.skipped_self_loops = self_loops;
    Ok(stream)
}

/// Reads and parses an edge-list file.
pub fn read_edge_list(path: impl AsRef<Path>, schema: &Schema) -> Result<EventStream> {
    let bytes = std::fs::read(path)?;
    ingest_edge_list(&bytes, schema)
}

/// Splits a stream in time order: the first `floor(N * train_fraction)`
/// edges form the training stream, the rest the test stream. Both keep the
/// full vocabulary so dense ids stay aligned.
pub fn time_split(stream: &EventStream, train_fraction: f64) -> Result<(EventStream, EventStream)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Split(format!(
            "train fraction must lie in (0, 1), got {train_fraction}"
        )));
    }
    let n = stream.len();
    let cut = (n as f64 * train_fraction + 1e-9).floor() as usize;
    if cut == 0 || cut >= n {
        return Err(Error::Split(format!(
            "splitting {n} edges at fraction {train_fraction} leaves one side empty"
        )));
    }
    let part = |edges: &[TemporalEdge]| EventStream {
        edges: edges.to_vec(),
        vocabulary: stream.vocabulary.clone(),
        skipped_self_loops: 0,
    };
    Ok((part(&stream.edges[..cut]), part(&stream.edges[cut..])))
}

/// Extent of a snapshot window.
///
/// For time windows this is the half-open interval `[start, end)` in time
/// units. For event windows it is the half-open range `[start, end)` of
/// zero-based positions in the sorted stream, i.e. the one-based range
/// `(start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Span {
    pub start: f64,
    pub end: f64,
}

/// Static undirected weighted graph of one timestep.
///
/// Stored in compressed-row form over the snapshot's own sorted node list.
/// Parallel temporal edges between a pair are collapsed into one edge whose
/// weight is the sum of their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    index: usize,
    span: Span,
    nodes: Vec<NodeId>,
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    weights: Vec<f64>,
    raw_edge_count: usize,
}

impl Snapshot {
    /// Builds snapshot `index` (one based) from the temporal edges of its window.
    pub fn from_edges(index: usize, span: Span, edges: &[TemporalEdge]) -> Self {
        let mut pairs: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
        for e in edges {
            let key = (e.source.min(e.target), e.source.max(e.target));
            *pairs.entry(key).or_insert(0.0) += e.weight;
        }
        let mut adjacency: BTreeMap<NodeId, Vec<(NodeId, f64)>> = BTreeMap::new();
        for (&(u, v), &w) in &pairs {
            adjacency.entry(u).or_default().push((v, w));
            adjacency.entry(v).or_default().push((u, w));
        }
        let mut nodes = Vec::with_capacity(adjacency.len());
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut neighbors = Vec::with_capacity(pairs.len() * 2);
        let mut weights = Vec::with_capacity(pairs.len() * 2);
        offsets.push(0);
        for (u, mut list) in adjacency {
            list.sort_by_key(|&(v, _)| v);
            nodes.push(u);
            for (v, w) in list {
                neighbors.push(v);
                weights.push(w);
            }
            offsets.push(neighbors.len());
        }
        Snapshot {
            index,
            span,
            nodes,
            offsets,
            neighbors,
            weights,
            raw_edge_count: edges.len(),
        }
    }

    /// One-based timestep.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn span(&self) -> Span {
        self.span
    }

    /// Nodes with at least one edge in this snapshot, ascending.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.position(node).is_some()
    }

    fn position(&self, node: NodeId) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// Distinct neighbours of `node`, ascending. Empty if absent.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        match self.position(node) {
            Some(p) => &self.neighbors[self.offsets[p]..self.offsets[p + 1]],
            None => &[],
        }
    }

    /// Collapsed edge weights, aligned with [`Snapshot::neighbors`].
    pub fn neighbor_weights(&self, node: NodeId) -> &[f64] {
        match self.position(node) {
            Some(p) => &self.weights[self.offsets[p]..self.offsets[p + 1]],
            None => &[],
        }
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.neighbors(node).len()
    }

    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let ns = self.neighbors(u);
        ns.binary_search(&v).ok().map(|i| self.neighbor_weights(u)[i])
    }

    /// Number of distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Number of temporal edges that fell in the window, before collapsing.
    pub fn raw_edge_count(&self) -> usize {
        self.raw_edge_count
    }

    /// Distinct undirected edges as `(u, v, weight)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.nodes.iter().enumerate().flat_map(move |(p, &u)| {
            let range = self.offsets[p]..self.offsets[p + 1];
            self.neighbors[range.clone()]
                .iter()
                .zip(&self.weights[range])
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &w)| (u, v, w))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    Time { window: f64, stride: f64 },
    Events { window: usize, stride: usize },
}

impl Strategy {
    /// Overlap ratio between consecutive windows.
    pub fn overlap(&self) -> f64 {
        match *self {
            Strategy::Time { window, stride } => (window - stride) / window,
            Strategy::Events { window, stride } => (window - stride) as f64 / window as f64,
        }
    }
}

/// Ordered sequence of snapshots over one global node vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicNetwork {
    snapshots: Vec<Snapshot>,
    strategy: Strategy,
    vocabulary: Vec<u64>,
}

impl DynamicNetwork {
    pub fn new(snapshots: Vec<Snapshot>, strategy: Strategy, vocabulary: Vec<u64>) -> Self {
        DynamicNetwork {
            snapshots,
            strategy,
            vocabulary,
        }
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    /// Number of timesteps.
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn overlap(&self) -> f64 {
        self.strategy.overlap()
    }

    pub fn vocabulary(&self) -> &[u64] {
        &self.vocabulary
    }

    pub fn node_count(&self) -> usize {
        self.vocabulary.len()
    }
}

/// Slices `stream` into time windows `[s0 + (t-1)·stride, s0 + (t-1)·stride + window)`
/// anchored at the first timestamp `s0`.
///
/// Windows are emitted until one of them reaches past the last timestamp,
/// so every edge lands in at least one snapshot.
pub fn build_by_time(stream: &EventStream, window: f64, stride: f64) -> Result<DynamicNetwork> {
    if !(window.is_finite() && window > 0.0) {
        return Err(Error::InvalidStride(format!("window must be positive, got {window}")));
    }
    if !(stride.is_finite() && stride > 0.0) {
        return Err(Error::InvalidStride(format!("stride must be positive, got {stride}")));
    }
    if stride > window {
        return Err(Error::InvalidStride(format!("stride {stride} exceeds window {window}")));
    }
    if stream.is_empty() {
        return Err(Error::EmptyInput);
    }
    let first = stream.first_timestamp();
    let last = stream.last_timestamp();
    if (last - first) / stride > MAX_SNAPSHOTS {
        return Err(Error::InvalidStride(format!(
            "stride {stride} over a span of {} would emit too many snapshots",
            last - first
        )));
    }

    let edges = stream.edges();
    let mut snapshots = Vec::new();
    for t in 0usize.. {
        let start = first + t as f64 * stride;
        let end = start + window;
        let lo = edges.partition_point(|e| e.timestamp < start);
        let hi = edges.partition_point(|e| e.timestamp < end);
        snapshots.push(Snapshot::from_edges(t + 1, Span { start, end }, &edges[lo..hi]));
        if end > last {
            break;
        }
    }
    Ok(DynamicNetwork::new(
        snapshots,
        Strategy::Time { window, stride },
        stream.vocabulary().to_vec(),
    ))
}

/// Slices `stream` into windows of `window` consecutive events advanced by
/// `stride` events. The final window may be partial.
pub fn build_by_events(stream: &EventStream, window: usize, stride: usize) -> Result<DynamicNetwork> {
    if window == 0 {
        return Err(Error::InvalidStride("event window must be at least 1".into()));
    }
    if stride == 0 || stride > window {
        return Err(Error::InvalidStride(format!(
            "event stride must lie in 1..={window}, got {stride}"
        )));
    }
    if stream.is_empty() {
        return Err(Error::EmptyInput);
    }
    let edges = stream.edges();
    let n = edges.len();
    let mut snapshots = Vec::new();
    let mut start = 0usize;
    loop {
        let end = (start + window).min(n);
        snapshots.push(Snapshot::from_edges(
            snapshots.len() + 1,
            Span {
                start: start as f64,
                end: end as f64,
            },
            &edges[start..end],
        ));
        if start + window >= n {
            break;
        }
        start += stride;
    }
    Ok(DynamicNetwork::new(
        snapshots,
        Strategy::Events { window, stride },
        stream.vocabulary().to_vec(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(text: &str) -> EventStream {
        ingest_edge_list(text.as_bytes(), &Schema::default()).unwrap()
    }

    #[test]
    fn ingest_sorts_by_time_and_remaps() {
        let s = stream("1 2 5\n3 1 2\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s.node_count(), 3);
        assert_eq!(s.vocabulary(), &[1, 2, 3]);
        let e = s.edges();
        assert_eq!(
            (
                s.vocabulary()[e[0].source as usize],
                s.vocabulary()[e[0].target as usize]
            ),
            (3, 1)
        );
        assert_eq!(e[0].timestamp, 2.0);
        assert_eq!(
            (
                s.vocabulary()[e[1].source as usize],
                s.vocabulary()[e[1].target as usize]
            ),
            (1, 2)
        );
        assert_eq!(e[1].timestamp, 5.0);
    }

    #[test]
    fn ingest_skips_self_loops() {
        let s = stream("1 2 5\n1 1 6\n");
        assert_eq!(s.len(), 1);
        assert_eq!(s.skipped_self_loops(), 1);
    }

    #[test]
    fn ingest_comments_commas_and_weights() {
        let s = stream("% header\n# more\n\n1,2,3,2.5\n2 3 4\n");
        assert_eq!(s.len(), 2);
        assert_eq!(s.edges()[0].weight, 2.5);
        assert_eq!(s.edges()[1].weight, 1.0);
    }

    #[test]
    fn ingest_ties_keep_input_order() {
        let s = stream("5 6 1\n1 2 1\n3 4 1\n");
        let firsts: Vec<u64> = s.edges().iter().map(|e| s.vocabulary()[e.source as usize]).collect();
        assert_eq!(firsts, vec![5, 1, 3]);
    }

    #[test]
    fn ingest_errors_name_the_line() {
        let err = ingest_edge_list(b"1 2 3\n1 2\n", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = ingest_edge_list(b"1 x 3\n", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = ingest_edge_list(b"1 2 3 4 5\n", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = ingest_edge_list(b"1 2 nan\n", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = ingest_edge_list(b"1 2 3 -1\n", &Schema::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn ingest_empty_input() {
        assert!(matches!(
            ingest_edge_list(b"% nothing\n", &Schema::default()),
            Err(Error::EmptyInput)
        ));
        assert!(matches!(
            ingest_edge_list(b"1 1 1\n", &Schema::default()),
            Err(Error::EmptyInput)
        ));
    }

    #[test]
    fn custom_schema() {
        let schema = Schema {
            source: 0,
            target: 1,
            timestamp: 3,
            weight: Some(2),
        };
        let s = ingest_edge_list(b"1 2 3 10\n2 3 1 5\n", &schema).unwrap();
        assert_eq!(s.edges()[0].timestamp, 5.0);
        assert_eq!(s.edges()[0].weight, 1.0);
        assert_eq!(s.edges()[1].weight, 3.0);
    }

    #[test]
    fn time_windows_example() {
        let s = stream("1 2 0\n2 3 5\n3 4 10\n4 5 15\n");
        let net = build_by_time(&s, 10.0, 5.0).unwrap();
        let spans: Vec<(f64, f64)> = net.snapshots().iter().map(|g| (g.span().start, g.span().end)).collect();
        assert_eq!(spans, vec![(0.0, 10.0), (5.0, 15.0), (10.0, 20.0)]);
        let counts: Vec<usize> = net.snapshots().iter().map(|g| g.raw_edge_count()).collect();
        assert_eq!(counts, vec![2, 2, 2]);
        assert_eq!(net.overlap(), 0.5);
    }

    #[test]
    fn overlap_ratios() {
        let s = stream("1 2 0\n2 3 7200\n");
        let net = build_by_time(&s, 60.0 * 60.0, 6.0 * 60.0).unwrap();
        assert!((net.overlap() - 0.9).abs() < 1e-12);
        let day = 86_400.0;
        let net = build_by_time(&s, 14.0 * day, 7.0 * day).unwrap();
        assert_eq!(net.overlap(), 0.5);
    }

    #[test]
    fn invalid_strides() {
        let s = stream("1 2 0\n2 3 5\n");
        assert!(matches!(build_by_time(&s, 5.0, 6.0), Err(Error::InvalidStride(_))));
        assert!(matches!(build_by_time(&s, 5.0, 0.0), Err(Error::InvalidStride(_))));
        assert!(matches!(build_by_time(&s, 5.0, -1.0), Err(Error::InvalidStride(_))));
        assert!(matches!(build_by_events(&s, 2, 3), Err(Error::InvalidStride(_))));
        assert!(matches!(build_by_events(&s, 2, 0), Err(Error::InvalidStride(_))));
    }

    #[test]
    fn event_windows() {
        let s = stream("1 2 1\n2 3 2\n3 4 3\n4 5 4\n");
        let net = build_by_events(&s, 2, 1).unwrap();
        let spans: Vec<(f64, f64)> = net.snapshots().iter().map(|g| (g.span().start, g.span().end)).collect();
        assert_eq!(spans, vec![(0.0, 2.0), (1.0, 3.0), (2.0, 4.0)]);
        assert!(net.snapshots().iter().all(|g| g.raw_edge_count() == 2));

        let net = build_by_events(&s, 2, 2).unwrap();
        assert_eq!(net.len(), 2);
        assert_eq!(net.overlap(), 0.0);

        let s5 = stream("1 2 1\n2 3 2\n3 4 3\n4 5 4\n5 6 5\n");
        let net = build_by_events(&s5, 2, 2).unwrap();
        let counts: Vec<usize> = net.snapshots().iter().map(|g| g.raw_edge_count()).collect();
        assert_eq!(counts, vec![2, 2, 1]);
    }

    #[test]
    fn half_overlap_event_windows() {
        assert_eq!(
            Strategy::Events {
                window: 8000,
                stride: 4000
            }
            .overlap(),
            0.5
        );
    }

    #[test]
    fn parallel_edges_collapse() {
        let s = stream("1 2 1\n2 1 2\n1 2 3 2.0\n2 3 4\n");
        let net = build_by_events(&s, 4, 4).unwrap();
        let g = &net.snapshots()[0];
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.raw_edge_count(), 4);
        assert_eq!(g.edge_weight(0, 1), Some(4.0));
        assert_eq!(g.edge_weight(1, 0), Some(4.0));
        assert_eq!(g.edge_weight(0, 2), None);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn splits() {
        let s = stream("1 2 1\n2 3 2\n3 4 3\n4 5 4\n");
        let (a, b) = time_split(&s, 0.75).unwrap();
        assert_eq!((a.len(), b.len()), (3, 1));
        assert_eq!(a.edges()[2].timestamp, 3.0);
        assert_eq!(a.vocabulary(), s.vocabulary());

        let text: String = (0..100).map(|i| format!("{} {} {}\n", i, i + 1, i)).collect();
        let (a, b) = time_split(&stream(&text), 0.75).unwrap();
        assert_eq!((a.len(), b.len()), (75, 25));

        assert!(matches!(time_split(&s, 0.1), Err(Error::Split(_))));
        assert!(matches!(time_split(&s, 1.0), Err(Error::Split(_))));
        assert!(matches!(time_split(&s, 0.0), Err(Error::Split(_))));
    }

    #[test]
    fn gap_in_time_yields_empty_snapshot() {
        let s = stream("1 2 0\n2 3 100\n");
        let net = build_by_time(&s, 10.0, 10.0).unwrap();
        assert_eq!(net.len(), 11);
        assert!(net.snapshots()[5].nodes().is_empty());
        assert_eq!(net.snapshots()[10].raw_edge_count(), 1);
    }
}
