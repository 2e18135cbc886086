//! Edge-list ingestion and rescannable edge streams.
//!
//! Every algorithm in this crate touches the graph only through
//! [`EdgeStream::scan`], one sequential pass at a time. Node labels are
//! interned into dense ids on open and never change afterwards, so the node
//! set is known up front while edges are only ever read in passes.
//!
//! Accepted text format: one edge per line, `u v` or `u v w`, separated by
//! whitespace. Lines starting with `#` (and blank lines) are skipped. Files
//! ending in `.gz` are decompressed on the fly.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};

/// Dense internal node identifier.
pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeRecord {
    pub u: NodeId,
    pub v: NodeId,
    /// Always `1.0` in unweighted streams.
    pub w: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DuplicatePolicy {
    /// Parallel edges collapse into one record (weights summed).
    #[default]
    Dedupe,
    Multigraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Undirected,
    Directed,
}

#[derive(Clone, Debug, Default)]
pub struct StreamOptions {
    pub directed: bool,
    pub duplicates: DuplicatePolicy,
    /// Read the optional third column as an edge weight.
    pub weighted: bool,
    /// Keep records in a binary temp file and re-read it on every scan
    /// instead of holding them in memory.
    pub spill: bool,
}

/// Bijection between external labels and dense ids.
#[derive(Clone, Debug, Default)]
pub struct NodeTable {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table whose labels are the decimal ids `0..n`.
    pub fn numbered(n: usize) -> Self {
        let mut t = NodeTable::new();
        for i in 0..n {
            t.intern(&i.to_string());
        }
        t
    }

    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub edges: u64,
}

enum Backing {
    Memory(Vec<EdgeRecord>),
    Spill { file: NamedTempFile, weighted: bool },
}

/// A rescannable, immutable sequence of edge records over a fixed node set.
pub struct EdgeStream {
    source: String,
    nodes: NodeTable,
    direction: Direction,
    weighted: bool,
    policy: DuplicatePolicy,
    edges: u64,
    total_weight: f64,
    self_loops: u64,
    collapsed: u64,
    zero_weight: u64,
    backing: Backing,
    passes: AtomicU64,
}

impl std::fmt::Debug for EdgeStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EdgeStream")
            .field("source", &self.source)
            .field("n", &self.nodes.len())
            .field("m", &self.edges)
            .field("direction", &self.direction)
            .field("weighted", &self.weighted)
            .finish()
    }
}

/// Opens an edge-list file, interning labels and applying the duplicate
/// policy on the way in.
pub fn open_edge_stream(path: impl AsRef<Path>, options: &StreamOptions) -> Result<EdgeStream> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader: Box<dyn BufRead> = if path.extension().is_some_and(|e| e == "gz") {
        Box::new(BufReader::new(MultiGzDecoder::new(file)))
    } else {
        Box::new(BufReader::new(file))
    };
    EdgeStream::from_reader(reader, path, options)
}

struct Ingest {
    directed: bool,
    weighted: bool,
    policy: DuplicatePolicy,
    nodes: NodeTable,
    records: Vec<EdgeRecord>,
    seen: HashMap<(NodeId, NodeId), usize>,
    self_loops: u64,
    collapsed: u64,
    zero_weight: u64,
}

impl Ingest {
    fn new(directed: bool, weighted: bool, policy: DuplicatePolicy, nodes: NodeTable) -> Self {
        Ingest {
            directed,
            weighted,
            policy,
            nodes,
            records: Vec::new(),
            seen: HashMap::new(),
            self_loops: 0,
            collapsed: 0,
            zero_weight: 0,
        }
    }

    fn push(&mut self, u: NodeId, v: NodeId, w: f64) {
        if u == v {
            self.self_loops += 1;
            return;
        }
        if self.weighted && w == 0.0 {
            self.zero_weight += 1;
            return;
        }
        let w = if self.weighted { w } else { 1.0 };
        if self.policy == DuplicatePolicy::Dedupe {
            let key = if self.directed || u < v { (u, v) } else { (v, u) };
            if let Some(&at) = self.seen.get(&key) {
                self.collapsed += 1;
                if self.weighted {
                    self.records[at].w += w;
                }
                return;
            }
            self.seen.insert(key, self.records.len());
        }
        self.records.push(EdgeRecord { u, v, w });
    }

    fn finish(self, source: String, spill: bool) -> Result<EdgeStream> {
        let total_weight = self.records.iter().map(|r| r.w).sum();
        let edges = self.records.len() as u64;
        let backing = if spill {
            spill_records(&self.records, self.weighted)?
        } else {
            Backing::Memory(self.records)
        };
        Ok(EdgeStream {
            source,
            nodes: self.nodes,
            direction: if self.directed {
                Direction::Directed
            } else {
                Direction::Undirected
            },
            weighted: self.weighted,
            policy: self.policy,
            edges,
            total_weight,
            self_loops: self.self_loops,
            collapsed: self.collapsed,
            zero_weight: self.zero_weight,
            backing,
            passes: AtomicU64::new(0),
        })
    }
}

fn spill_records(records: &[EdgeRecord], weighted: bool) -> Result<Backing> {
    let mut file = NamedTempFile::new().map_err(|e| Error::io("<tempfile>", e))?;
    let path = file.path().to_path_buf();
    {
        let mut w = BufWriter::new(file.as_file_mut());
        for r in records {
            let mut write = || -> io::Result<()> {
                w.write_all(&r.u.to_le_bytes())?;
                w.write_all(&r.v.to_le_bytes())?;
                if weighted {
                    w.write_all(&r.w.to_le_bytes())?;
                }
                Ok(())
            };
            write().map_err(|e| Error::io(&path, e))?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
    }
    Ok(Backing::Spill { file, weighted })
}

impl EdgeStream {
    /// Parses edge-list text from any reader. `name` only labels errors.
    pub fn from_reader(
        reader: impl BufRead,
        name: impl AsRef<Path>,
        options: &StreamOptions,
    ) -> Result<EdgeStream> {
        let name: PathBuf = name.as_ref().to_path_buf();
        let mut ingest = Ingest::new(
            options.directed,
            options.weighted,
            options.duplicates,
            NodeTable::new(),
        );
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::io(&name, e))?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 && fields.len() != 3 {
                return Err(Error::Parse {
                    path: name,
                    line: lineno,
                    message: format!("expected `u v` or `u v w`, found {} fields", fields.len()),
                });
            }
            let w = match fields.get(2) {
                Some(tok) => {
                    let w: f64 = tok.parse().map_err(|_| Error::Parse {
                        path: name.clone(),
                        line: lineno,
                        message: format!("invalid weight {tok:?}"),
                    })?;
                    if !w.is_finite() {
                        return Err(Error::Parse {
                            path: name,
                            line: lineno,
                            message: format!("non-finite weight {tok:?}"),
                        });
                    }
                    if w < 0.0 {
                        return Err(Error::NegativeWeight {
                            path: name,
                            line: lineno,
                            weight: w,
                        });
                    }
                    w
                }
                None => 1.0,
            };
            let u = ingest.nodes.intern(fields[0]);
            let v = ingest.nodes.intern(fields[1]);
            ingest.push(u, v, w);
        }
        ingest.finish(name.display().to_string(), options.spill)
    }

    /// Builds an in-memory stream over nodes `0..n` (labelled by their
    /// decimal id). The same self-loop and duplicate rules as file input apply.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId, f64)>,
        direction: Direction,
        weighted: bool,
        policy: DuplicatePolicy,
    ) -> Result<EdgeStream> {
        let mut ingest = Ingest::new(
            direction == Direction::Directed,
            weighted,
            policy,
            NodeTable::numbered(n),
        );
        for (u, v, w) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidParameter(format!("bad weight {w} on ({u}, {v})")));
            }
            ingest.push(u, v, w);
        }
        ingest.finish(format!("<memory:{n}>"), false)
    }

    /// Convenience constructor for simple unweighted undirected graphs.
    pub fn undirected(n: usize, edges: &[(NodeId, NodeId)]) -> Result<EdgeStream> {
        EdgeStream::from_edges(
            n,
            edges.iter().map(|&(u, v)| (u, v, 1.0)),
            Direction::Undirected,
            false,
            DuplicatePolicy::Dedupe,
        )
    }

    /// Convenience constructor for simple unweighted directed graphs.
    pub fn directed(n: usize, edges: &[(NodeId, NodeId)]) -> Result<EdgeStream> {
        EdgeStream::from_edges(
            n,
            edges.iter().map(|&(u, v)| (u, v, 1.0)),
            Direction::Directed,
            false,
            DuplicatePolicy::Dedupe,
        )
    }

    /// Visits every record once, in the same order on every call.
    ///
    /// On an I/O failure the scan stops with [`Error::PartialRead`]; callers
    /// that accumulate state in `visit` must stage it and commit only on `Ok`.
    pub fn scan<F: FnMut(&EdgeRecord)>(&self, mut visit: F) -> Result<ScanSummary> {
        self.passes.fetch_add(1, Ordering::Relaxed);
        match &self.backing {
            Backing::Memory(records) => {
                records.iter().for_each(&mut visit);
                Ok(ScanSummary {
                    edges: records.len() as u64,
                })
            }
            Backing::Spill { file, weighted } => {
                let f = File::open(file.path()).map_err(|e| Error::PartialRead {
                    records: 0,
                    source: e,
                })?;
                let mut reader = BufReader::with_capacity(1 << 16, f);
                let mut buf = [0u8; 16];
                let width = if *weighted { 16 } else { 8 };
                let mut visited = 0u64;
                while visited < self.edges {
                    reader
                        .read_exact(&mut buf[..width])
                        .map_err(|e| Error::PartialRead {
                            records: visited,
                            source: e,
                        })?;
                    let u = u32::from_le_bytes(buf[0..4].try_into().unwrap());
                    let v = u32::from_le_bytes(buf[4..8].try_into().unwrap());
                    let w = if *weighted {
                        f64::from_le_bytes(buf[8..16].try_into().unwrap())
                    } else {
                        1.0
                    };
                    visit(&EdgeRecord { u, v, w });
                    visited += 1;
                }
                Ok(ScanSummary { edges: visited })
            }
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn nodes(&self) -> &NodeTable {
        &self.nodes
    }

    pub fn label(&self, id: NodeId) -> &str {
        self.nodes.label(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn self_loops(&self) -> u64 {
        self.self_loops
    }

    /// Parallel edges merged into an earlier record (dedupe mode only).
    pub fn duplicates_collapsed(&self) -> u64 {
        self.collapsed
    }

    /// Zero-weight edges dropped in weighted mode.
    pub fn zero_weight_dropped(&self) -> u64 {
        self.zero_weight
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_directed(&self) -> bool {
        self.direction == Direction::Directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn duplicate_policy(&self) -> DuplicatePolicy {
        self.policy
    }

    /// Total number of scans issued against this stream so far.
    pub fn passes(&self) -> u64 {
        self.passes.load(Ordering::Relaxed)
    }

    /// Human-readable labels for a set of ids.
    pub fn labels_of<'a>(&'a self, ids: &'a [NodeId]) -> impl Iterator<Item = &'a str> + 'a {
        ids.iter().map(move |&id| self.nodes.label(id))
    }

    /// Writes the retained records back out in the text edge-list format.
    pub fn write_edge_list(&self, out: &mut impl Write) -> Result<()> {
        let mut err = None;
        self.scan(|r| {
            if err.is_some() {
                return;
            }
            let res = if self.weighted {
                writeln!(out, "{}\t{}\t{}", self.label(r.u), self.label(r.v), r.w)
            } else {
                writeln!(out, "{}\t{}", self.label(r.u), self.label(r.v))
            };
            if let Err(e) = res {
                err = Some(e);
            }
        })?;
        match err {
            Some(e) => Err(Error::io("<output>", e)),
            None => Ok(()),
        }
    }
}
