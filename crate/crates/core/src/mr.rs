//! Sharded map/reduce execution of the undirected peeling loop.
//!
//! The edge set lives in `R` shards, partitioned by a hash of one endpoint
//! (the pivot). Each peeling pass is two barrier-separated phases:
//!
//! - **degree**: every shard maps its edges to `<u; 1>` and `<v; 1>`, combines
//!   the counts locally, and ships the partial counts to reducer
//!   `hash(key) mod R`, which sums them.
//! - **filter**: drops every edge with a removed endpoint. With a broadcast
//!   bitset each shard filters in place. In literal mode the marks travel as
//!   `<v; $>` records: the first sub-pass groups edges by their first endpoint
//!   together with the marks and drops marked groups, re-keying survivors by
//!   the second endpoint; the second sub-pass does the same on the second
//!   endpoint and re-keys by the first.
//!
//! A worker only ever holds one shard. With a work directory, shards are
//! plain files with one surviving edge per line, `u<TAB>v<LF>`. Reads are
//! retried, which is safe since every phase is a pure function of its
//! input shards.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::Serialize;

use crate::eps::Epsilon;
use crate::error::{Error, Result};
use crate::graph_io::{EdgeStream, NodeId};
use crate::peel::{densest_undirected_with, DegreeSource, DenseResult, PeelState};

/// Attempts per shard read before a phase aborts.
pub const READ_ATTEMPTS: usize = 3;

const EDGE_BYTES: u64 = 8;
const COUNT_BYTES: u64 = 12;
const MARK_BYTES: u64 = 5;

#[derive(Clone, Debug)]
pub struct MrConfig {
    pub shards: usize,
    pub literal_marks: bool,
    pub work_dir: Option<PathBuf>,
    /// Salt mixed into the shard hash; results must not depend on it.
    pub salt: u64,
}

impl MrConfig {
    pub fn new(shards: usize) -> Self {
        MrConfig {
            shards,
            literal_marks: false,
            work_dir: None,
            salt: 0,
        }
    }
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pivot {
    First,
    Second,
}

#[derive(Debug)]
enum Partition {
    Memory(Vec<(NodeId, NodeId)>),
    File { path: PathBuf, len: usize },
}

impl Partition {
    fn len(&self) -> usize {
        match self {
            Partition::Memory(edges) => edges.len(),
            Partition::File { len, .. } => *len,
        }
    }
}

/// The current edge set split into `R` partitions by the pivot endpoint.
#[derive(Debug)]
pub struct ShardSet {
    parts: Vec<Partition>,
    pivot: Pivot,
    salt: u64,
    dir: Option<PathBuf>,
    generation: u64,
}

fn read_shard_file(path: &Path) -> Result<Vec<(NodeId, NodeId)>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut edges = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let parse_err = |message: &str| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message: message.to_string(),
        };
        let (u, v) = line.split_once('\t').ok_or_else(|| parse_err("expected u<TAB>v"))?;
        let u = u.parse().map_err(|_| parse_err("bad node id"))?;
        let v = v.parse().map_err(|_| parse_err("bad node id"))?;
        edges.push((u, v));
    }
    Ok(edges)
}

fn write_shard_file(path: &Path, edges: &[(NodeId, NodeId)]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let file = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        let mut out = BufWriter::new(file);
        for &(u, v) in edges {
            writeln!(out, "{u}\t{v}").map_err(|e| Error::io(&tmp, e))?;
        }
        out.flush().map_err(|e| Error::io(&tmp, e))?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

impl ShardSet {
    pub fn shard_count(&self) -> usize {
        self.parts.len()
    }

    pub fn pivot(&self) -> Pivot {
        self.pivot
    }

    pub fn edge_count(&self) -> u64 {
        self.parts.iter().map(|p| p.len() as u64).sum()
    }

    pub fn shard_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Partition::len).collect()
    }

    pub fn shard_of(&self, key: NodeId) -> usize {
        (mix(key as u64 ^ self.salt.rotate_left(32)) % self.parts.len() as u64) as usize
    }

    /// Partitions an in-memory edge list.
    pub fn from_edges(
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
        config: &MrConfig,
    ) -> Result<Self> {
        if config.shards == 0 {
            return Err(Error::InvalidParameter("shard count must be positive".into()));
        }
        if let Some(dir) = &config.work_dir {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let mut set = ShardSet {
            parts: Vec::new(),
            pivot: Pivot::First,
            salt: config.salt,
            dir: config.work_dir.clone(),
            generation: 0,
        };
        let mut buckets = vec![Vec::new(); config.shards];
        set.parts = (0..config.shards).map(|_| Partition::Memory(Vec::new())).collect();
        for (u, v) in edges {
            buckets[set.shard_of(u)].push((u, v));
        }
        set.parts = set.store(buckets, "input")?;
        Ok(set)
    }

    /// Partitions the records of an undirected stream with one scan.
    pub fn from_stream(stream: &EdgeStream, config: &MrConfig) -> Result<Self> {
        if stream.is_directed() {
            return Err(Error::Mode {
                expected: "undirected",
            });
        }
        let mut edges = Vec::with_capacity(stream.edge_count() as usize);
        stream.scan(|r| edges.push((r.u, r.v)))?;
        Self::from_edges(edges, config)
    }

    fn store(&mut self, buckets: Vec<Vec<(NodeId, NodeId)>>, tag: &str) -> Result<Vec<Partition>> {
        let Some(dir) = self.dir.clone() else {
            return Ok(buckets.into_iter().map(Partition::Memory).collect());
        };
        self.generation += 1;
        let generation = self.generation;
        let parts = buckets
            .into_par_iter()
            .enumerate()
            .map(|(r, edges)| {
                let path = dir.join(format!("g{generation:05}-{tag}-shard{r:03}.tsv"));
                write_shard_file(&path, &edges)?;
                Ok(Partition::File {
                    path,
                    len: edges.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(parts)
    }

    fn load(&self, r: usize) -> Result<Vec<(NodeId, NodeId)>> {
        match &self.parts[r] {
            Partition::Memory(edges) => Ok(edges.clone()),
            Partition::File { path, len } => {
                let mut last = None;
                for _ in 0..READ_ATTEMPTS {
                    match read_shard_file(path) {
                        Ok(edges) if edges.len() == *len => return Ok(edges),
                        Ok(edges) => {
                            last = Some(Error::Invariant(format!(
                                "shard {} holds {} edges, expected {len}",
                                path.display(),
                                edges.len()
                            )))
                        }
                        Err(e) => last = Some(e),
                    }
                }
                Err(last.expect("at least one attempt"))
            }
        }
    }

    /// All edges, shard by shard. Test helper; a worker never does this.
    pub fn collect_edges(&self) -> Result<Vec<(NodeId, NodeId)>> {
        let mut all = Vec::new();
        for r in 0..self.parts.len() {
            all.extend(self.load(r)?);
        }
        Ok(all)
    }

    fn replace(&mut self, parts: Vec<Partition>, pivot: Pivot) {
        let old = std::mem::replace(&mut self.parts, parts);
        self.pivot = pivot;
        for p in old {
            if let Partition::File { path, .. } = p {
                let _ = fs::remove_file(path);
            }
        }
    }
}

impl Drop for ShardSet {
    fn drop(&mut self) {
        for p in &self.parts {
            if let Partition::File { path, .. } = p {
                let _ = fs::remove_file(path);
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PhaseMetrics {
    pub pass: usize,
    pub phase: String,
    /// Records read by the map side.
    pub records_in: u64,
    /// Records crossing the shuffle.
    pub records_shuffled: u64,
    pub bytes_shuffled: u64,
    /// Largest shard a worker held during the phase.
    pub max_shard_edges: u64,
    /// `ceil(m_alive / R)` at the start of the phase.
    pub ideal_shard_edges: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MrMetrics {
    pub shards: usize,
    pub literal_marks: bool,
    pub phases: Vec<PhaseMetrics>,
}

impl MrMetrics {
    pub fn peak_residency(&self) -> u64 {
        self.phases.iter().map(|p| p.max_shard_edges).max().unwrap_or(0)
    }

    pub fn total_bytes_shuffled(&self) -> u64 {
        self.phases.iter().map(|p| p.bytes_shuffled).sum()
    }
}

fn ideal(m: u64, r: usize) -> u64 {
    m.div_ceil(r as u64)
}

/// Per-node degrees and the alive edge count, from the shards alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub degrees: Vec<u64>,
    pub edges: u64,
}

pub fn mr_degree_phase(shards: &ShardSet, n: usize) -> Result<(DegreeTable, PhaseMetrics)> {
    let r_count = shards.shard_count();
    // map + local combine
    let partials = (0..r_count)
        .into_par_iter()
        .map(|r| {
            let edges = shards.load(r)?;
            let mut counts: HashMap<NodeId, u64> = HashMap::new();
            for &(u, v) in &edges {
                *counts.entry(u).or_default() += 1;
                *counts.entry(v).or_default() += 1;
            }
            let mut routed: Vec<Vec<(NodeId, u64)>> = vec![Vec::new(); r_count];
            for (key, c) in counts {
                routed[shards.shard_of(key)].push((key, c));
            }
            Ok((routed, edges.len() as u64))
        })
        .collect::<Result<Vec<_>>>()?;
    let edges: u64 = partials.iter().map(|(_, m)| m).sum();
    let shuffled: u64 = partials
        .iter()
        .map(|(routed, _)| routed.iter().map(|b| b.len() as u64).sum::<u64>())
        .sum();
    // reduce: reducer r sums the counts routed to it
    let reduced: Vec<Vec<(NodeId, u64)>> = (0..r_count)
        .into_par_iter()
        .map(|r| {
            let mut sums: HashMap<NodeId, u64> = HashMap::new();
            for (routed, _) in &partials {
                for &(key, c) in &routed[r] {
                    *sums.entry(key).or_default() += c;
                }
            }
            sums.into_iter().collect()
        })
        .collect();
    let mut degrees = vec![0u64; n];
    for bucket in reduced {
        for (key, d) in bucket {
            let slot = degrees.get_mut(key as usize).ok_or_else(|| {
                Error::Invariant(format!("shard edge names node {key} outside 0..{n}"))
            })?;
            *slot = d;
        }
    }
    let metrics = PhaseMetrics {
        pass: 0,
        phase: "degree".into(),
        records_in: edges,
        records_shuffled: shuffled,
        bytes_shuffled: shuffled * COUNT_BYTES,
        max_shard_edges: shards.shard_sizes().into_iter().max().unwrap_or(0) as u64,
        ideal_shard_edges: ideal(edges, r_count),
    };
    Ok((DegreeTable { degrees, edges }, metrics))
}

/// Marks for the nodes removed in one pass.
#[derive(Clone, Debug)]
pub struct RemovalMark {
    bits: BitVec,
    nodes: Vec<NodeId>,
}

impl RemovalMark {
    pub fn new(n: usize, nodes: &[NodeId]) -> Self {
        let mut bits = bitvec![0; n];
        for &v in nodes {
            bits.set(v as usize, true);
        }
        RemovalMark {
            bits,
            nodes: nodes.to_vec(),
        }
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.bits.get(v as usize).map_or(false, |b| *b)
    }

    /// The marked nodes, in the order the peeling pass produced them.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }
}

/// Drops every edge with a marked endpoint.
pub fn mr_filter_phase(
    shards: &mut ShardSet,
    marks: &RemovalMark,
    literal: bool,
) -> Result<Vec<PhaseMetrics>> {
    if literal {
        let first = literal_sub_pass(shards, marks, Pivot::First)?;
        let second = literal_sub_pass(shards, marks, Pivot::Second)?;
        Ok(vec![first, second])
    } else {
        broadcast_filter(shards, marks).map(|m| vec![m])
    }
}

fn broadcast_filter(shards: &mut ShardSet, marks: &RemovalMark) -> Result<PhaseMetrics> {
    let r_count = shards.shard_count();
    let before = shards.edge_count();
    let max_shard = shards.shard_sizes().into_iter().max().unwrap_or(0) as u64;
    let kept = (0..r_count)
        .into_par_iter()
        .map(|r| {
            let mut edges = shards.load(r)?;
            edges.retain(|&(u, v)| !marks.is_marked(u) && !marks.is_marked(v));
            Ok(edges)
        })
        .collect::<Result<Vec<_>>>()?;
    let pivot = shards.pivot;
    let parts = shards.store(kept, "filter")?;
    shards.replace(parts, pivot);
    let broadcast = r_count as u64 * marks.bits.len().div_ceil(8) as u64;
    Ok(PhaseMetrics {
        pass: 0,
        phase: "filter".into(),
        records_in: before,
        records_shuffled: 0,
        bytes_shuffled: broadcast,
        max_shard_edges: max_shard,
        ideal_shard_edges: ideal(before, r_count),
    })
}

/// Groups edges keyed by `pivot` with the `<v; $>` marks of the same key,
/// drops marked groups, and re-keys survivors by the other endpoint.
fn literal_sub_pass(shards: &mut ShardSet, marks: &RemovalMark, pivot: Pivot) -> Result<PhaseMetrics> {
    if shards.pivot != pivot {
        return Err(Error::Invariant(format!(
            "filter sub-pass expects shards pivoted on {pivot:?}, found {:?}",
            shards.pivot
        )));
    }
    let r_count = shards.shard_count();
    let before = shards.edge_count();
    let max_shard = shards.shard_sizes().into_iter().max().unwrap_or(0) as u64;
    let mut mark_records: Vec<Vec<NodeId>> = vec![Vec::new(); r_count];
    for &v in &marks.nodes {
        mark_records[shards.shard_of(v)].push(v);
    }
    let key = |e: &(NodeId, NodeId)| match pivot {
        Pivot::First => e.0,
        Pivot::Second => e.1,
    };
    let other = |e: &(NodeId, NodeId)| match pivot {
        Pivot::First => e.1,
        Pivot::Second => e.0,
    };
    let routed = (0..r_count)
        .into_par_iter()
        .map(|r| {
            let edges = shards.load(r)?;
            let dollar: HashSet<NodeId> = mark_records[r].iter().copied().collect();
            let mut out: Vec<Vec<(NodeId, NodeId)>> = vec![Vec::new(); r_count];
            for e in edges.iter().filter(|e| !dollar.contains(&key(e))) {
                out[shards.shard_of(other(e))].push(*e);
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut next: Vec<Vec<(NodeId, NodeId)>> = vec![Vec::new(); r_count];
    for out in routed {
        for (r, bucket) in out.into_iter().enumerate() {
            next[r].extend(bucket);
        }
    }
    let survivors: u64 = next.iter().map(|b| b.len() as u64).sum();
    let next_pivot = match pivot {
        Pivot::First => Pivot::Second,
        Pivot::Second => Pivot::First,
    };
    let tag = match pivot {
        Pivot::First => "filter-u",
        Pivot::Second => "filter-v",
    };
    let parts = shards.store(next, tag)?;
    shards.replace(parts, next_pivot);
    let n_marks = marks.nodes.len() as u64;
    Ok(PhaseMetrics {
        pass: 0,
        phase: tag.into(),
        records_in: before + n_marks,
        records_shuffled: survivors + n_marks,
        bytes_shuffled: survivors * EDGE_BYTES + n_marks * MARK_BYTES,
        max_shard_edges: max_shard,
        ideal_shard_edges: ideal(before, r_count),
    })
}

/// Degree source backed by the sharded executor.
pub struct MrSource {
    shards: ShardSet,
    literal: bool,
    pass: usize,
    pub metrics: MrMetrics,
}

impl MrSource {
    pub fn new(stream: &EdgeStream, config: &MrConfig) -> Result<Self> {
        if stream.is_weighted() {
            return Err(Error::InvalidParameter(
                "the sharded executor handles unweighted graphs only".into(),
            ));
        }
        Ok(MrSource {
            shards: ShardSet::from_stream(stream, config)?,
            literal: config.literal_marks,
            pass: 0,
            metrics: MrMetrics {
                shards: config.shards,
                literal_marks: config.literal_marks,
                phases: Vec::new(),
            },
        })
    }

    pub fn shards(&self) -> &ShardSet {
        &self.shards
    }
}

impl DegreeSource<u64> for MrSource {
    fn refresh(&mut self, state: &mut PeelState<u64>, removed: &[NodeId]) -> Result<()> {
        self.pass += 1;
        if !removed.is_empty() {
            let marks = RemovalMark::new(state.alive.len(), removed);
            for mut m in mr_filter_phase(&mut self.shards, &marks, self.literal)? {
                m.pass = self.pass;
                self.metrics.phases.push(m);
            }
        }
        let (table, mut m) = mr_degree_phase(&self.shards, state.alive.len())?;
        m.pass = self.pass;
        self.metrics.phases.push(m);
        if let Some(v) = state
            .alive
            .iter_zeros()
            .find(|&v| table.degrees[v] != 0)
        {
            return Err(Error::Invariant(format!(
                "removed node {v} still has edges in the shards"
            )));
        }
        state.deg = table.degrees;
        state.edges_alive = table.edges;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MrResult {
    pub result: DenseResult<u64>,
    pub metrics: MrMetrics,
}

/// Plain peeling with every degree computation done by the sharded phases.
pub fn mr_densest_undirected(stream: &EdgeStream, eps: Epsilon, config: &MrConfig) -> Result<MrResult> {
    let mut source = MrSource::new(stream, config)?;
    let result = densest_undirected_with(stream, &mut source, eps)?;
    Ok(MrResult {
        result,
        metrics: source.metrics,
    })
}
