//! Compressed in-memory adjacency for graphs that fit in RAM.

use crate::error::{Error, Result};
use crate::graph_io::{EdgeStream, NodeId};

/// Symmetric CSR adjacency of an undirected stream. Neighbor lists keep the
/// stream's record order, and parallel edges appear once per record.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    edges: u64,
}

impl Adjacency {
    pub fn from_stream(stream: &EdgeStream) -> Result<Self> {
        if stream.is_directed() {
            return Err(Error::Mode {
                expected: "undirected",
            });
        }
        let n = stream.node_count();
        let mut counts = vec![0usize; n + 1];
        stream.scan(|r| {
            counts[r.u as usize + 1] += 1;
            counts[r.v as usize + 1] += 1;
        })?;
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let offsets = counts;
        let mut cursor = offsets.clone();
        let total = offsets[n];
        let mut targets = vec![0 as NodeId; total];
        let mut weights = vec![0.0; total];
        let summary = stream.scan(|r| {
            let (u, v) = (r.u as usize, r.v as usize);
            targets[cursor[u]] = r.v;
            weights[cursor[u]] = r.w;
            cursor[u] += 1;
            targets[cursor[v]] = r.u;
            weights[cursor[v]] = r.w;
            cursor[v] += 1;
        })?;
        Ok(Adjacency {
            offsets,
            targets,
            weights,
            edges: summary.edges,
        })
    }

    /// Builds directly from an edge list over nodes `0..n`.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let stream = EdgeStream::undirected(n, edges)?;
        Adjacency::from_stream(&stream)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn weighted_neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        let v = v as usize;
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count())
            .map(|v| self.degree(v as NodeId))
            .max()
            .unwrap_or(0)
    }

    /// Number of edges with both endpoints in `members`.
    pub fn induced_edges(&self, members: &[bool]) -> u64 {
        let mut twice = 0u64;
        for v in 0..self.node_count() {
            if members[v] {
                twice += self
                    .neighbors(v as NodeId)
                    .iter()
                    .filter(|&&x| members[x as usize])
                    .count() as u64;
            }
        }
        twice / 2
    }
}
