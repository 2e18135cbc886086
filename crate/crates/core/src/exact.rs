//! Exact densest-subgraph optima, used as ground truth for the peeling
//! algorithms.
//!
//! Three routes:
//!
//! - [`brute_force_undirected`] enumerates every subset of a graph with at
//!   most 20 nodes (in Gray-code order, one vertex toggle per step) and also
//!   yields the size-floored optima `rho*_{>=k}` for every `k` at once.
//! - [`brute_force_directed`] enumerates every pair `(S, T)` for `n <= 10`.
//! - [`exact_flow_undirected`] binary-searches the density with min-cut
//!   feasibility tests (Goldberg's construction).
//!
//! The optimum also equals the value of the linear program
//!
//! ```text
//! max  sum_{ij in E} x_ij
//! s.t. x_ij <= y_i,  x_ij <= y_j   for every edge ij
//!      sum_i y_i <= 1
//!      x, y >= 0
//! ```
//!
//! which is not solved here; the flow route computes the same quantity in
//! exact rationals without an LP solver.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::Serialize;

use crate::adjacency::Adjacency;
use crate::directed::DirectedDensity;
use crate::error::{Error, Result};
use crate::graph_io::{EdgeStream, NodeId};

pub const BRUTE_UNDIRECTED_MAX_N: usize = 20;
pub const BRUTE_DIRECTED_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Flow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: Ratio<u64>,
    pub witness: Vec<NodeId>,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectedOracleResult {
    pub optimum: DirectedDensity,
    pub s: Vec<NodeId>,
    pub t: Vec<NodeId>,
}

fn mask_to_ids(mask: u32) -> Vec<NodeId> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// For equal-size sets, whether `a` precedes `b` in lexicographic order of
/// their sorted element lists.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    diff != 0 && a & (diff & diff.wrapping_neg()) != 0
}

fn simple_masks(adj: &Adjacency) -> Result<Vec<u32>> {
    let n = adj.node_count();
    let mut masks = vec![0u32; n];
    for v in 0..n {
        for &x in adj.neighbors(v as NodeId) {
            if masks[v] >> x & 1 == 1 {
                return Err(Error::InvalidParameter(
                    "brute force expects a simple graph (parallel edge found)".into(),
                ));
            }
            masks[v] |= 1 << x;
        }
    }
    Ok(masks)
}

/// Densest subset of each exact size.
#[derive(Clone, Debug)]
pub struct SizeProfile {
    /// `best[s] = (edges, mask)` for subsets of size `s`; index 0 unused.
    best: Vec<(u64, u32)>,
}

impl SizeProfile {
    pub fn n(&self) -> usize {
        self.best.len() - 1
    }

    /// Max edges over subsets of exactly `size` nodes.
    pub fn max_edges(&self, size: usize) -> u64 {
        self.best[size].0
    }

    /// `rho*_{>=k}` with its witness; ties go to the larger set, then the
    /// lexicographically smaller one.
    pub fn at_least(&self, k: usize) -> Result<OracleResult> {
        let n = self.n();
        if k > n {
            return Err(Error::Infeasible { k, n });
        }
        let mut best: Option<(Ratio<u64>, u32)> = None;
        for size in (k.max(1)..=n).rev() {
            let (e, mask) = self.best[size];
            let rho = Ratio::new(e, size as u64);
            if best.is_none_or(|(b, _)| rho > b) {
                best = Some((rho, mask));
            }
        }
        let (optimum, mask) = best.ok_or(Error::EmptySet)?;
        Ok(OracleResult {
            optimum,
            witness: mask_to_ids(mask),
            method: Method::Brute,
        })
    }
}

/// Enumerates all `2^n - 1` nonempty subsets once and keeps the densest
/// subset of every size.
pub fn brute_force_profile(adj: &Adjacency) -> Result<SizeProfile> {
    let n = adj.node_count();
    if n > BRUTE_UNDIRECTED_MAX_N {
        return Err(Error::SizeLimit {
            what: "undirected brute force",
            size: n,
            limit: BRUTE_UNDIRECTED_MAX_N,
        });
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    let nbr = simple_masks(adj)?;
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Vec<Option<(u64, u32)>> = vec![None; n + 1];
    let mut mask = 0u32;
    let mut edges = 0u64;
    let mut size = 0usize;
    for step in 1..=full {
        let v = step.trailing_zeros();
        let bit = 1u32 << v;
        if mask & bit == 0 {
            edges += (nbr[v as usize] & mask).count_ones() as u64;
            mask |= bit;
            size += 1;
        } else {
            mask &= !bit;
            edges -= (nbr[v as usize] & mask).count_ones() as u64;
            size -= 1;
        }
        let slot = &mut best[size];
        let better = match *slot {
            None => true,
            Some((e, m)) => edges > e || (edges == e && lex_less(mask, m)),
        };
        if better {
            *slot = Some((edges, mask));
        }
    }
    let best = best
        .into_iter()
        .enumerate()
        .map(|(s, b)| if s == 0 { (0, 0) } else { b.expect("every size visited") })
        .collect();
    Ok(SizeProfile { best })
}

/// Exhaustive optimum, optionally over sets of at least `size_floor` nodes.
pub fn brute_force_undirected(adj: &Adjacency, size_floor: Option<usize>) -> Result<OracleResult> {
    brute_force_profile(adj)?.at_least(size_floor.unwrap_or(1))
}

/// Exhaustive directed optimum over all pairs of nonempty sets.
pub fn brute_force_directed(stream: &EdgeStream) -> Result<DirectedOracleResult> {
    if !stream.is_directed() {
        return Err(Error::Mode {
            expected: "directed",
        });
    }
    let n = stream.node_count();
    if n > BRUTE_DIRECTED_MAX_N {
        return Err(Error::SizeLimit {
            what: "directed brute force",
            size: n,
            limit: BRUTE_DIRECTED_MAX_N,
        });
    }
    if n == 0 {
        return Err(Error::EmptySet);
    }
    // in-neighbour multiplicity per (source, target)
    let mut count = vec![vec![0u64; n]; n];
    stream.scan(|r| count[r.u as usize][r.v as usize] += 1)?;
    let full = (1u32 << n) - 1;
    let mut best: Option<(DirectedDensity, u32, u32)> = None;
    let mut into = vec![0u64; n];
    for s_mask in 1..=full {
        for (j, slot) in into.iter_mut().enumerate() {
            *slot = (0..n)
                .filter(|&i| s_mask >> i & 1 == 1)
                .map(|i| count[i][j])
                .sum();
        }
        let s_size = s_mask.count_ones() as u64;
        let mut t_mask = 0u32;
        let mut edges = 0u64;
        let mut t_size = 0u64;
        for step in 1..=full {
            let j = step.trailing_zeros() as usize;
            let bit = 1u32 << j;
            if t_mask & bit == 0 {
                t_mask |= bit;
                edges += into[j];
                t_size += 1;
            } else {
                t_mask &= !bit;
                edges -= into[j];
                t_size -= 1;
            }
            if t_size == 0 {
                continue;
            }
            let d = DirectedDensity {
                edges,
                s: s_size,
                t: t_size,
            };
            if best.as_ref().is_none_or(|(b, _, _)| d > *b) {
                best = Some((d, s_mask, t_mask));
            }
        }
    }
    let (optimum, s, t) = best.ok_or(Error::EmptySet)?;
    Ok(DirectedOracleResult {
        optimum,
        s: mask_to_ids(s),
        t: mask_to_ids(t),
    })
}

/// Dinic max-flow on integer capacities.
struct FlowNetwork {
    adjacency: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adjacency: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Arc `a -> b` with capacity `forward` and reverse residual `backward`.
    fn add(&mut self, a: usize, b: usize, forward: i64, backward: i64) {
        self.adjacency[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(forward);
        self.adjacency[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(backward);
    }

    fn levels(&self, s: usize) -> Vec<i32> {
        let mut level = vec![-1; self.adjacency.len()];
        let mut queue = VecDeque::new();
        level[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                let w = self.to[e];
                if self.cap[e] > 0 && level[w] < 0 {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0i64;
        loop {
            let mut level = self.levels(s);
            if level[t] < 0 {
                return flow;
            }
            let mut it = vec![0usize; self.adjacency.len()];
            let mut path: Vec<usize> = Vec::new();
            let mut v = s;
            loop {
                if v == t {
                    let push = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                    let mut cut_at = path.len();
                    for (idx, &e) in path.iter().enumerate() {
                        self.cap[e] -= push;
                        self.cap[e ^ 1] += push;
                        if self.cap[e] == 0 && cut_at == path.len() {
                            cut_at = idx;
                        }
                    }
                    flow += push;
                    path.truncate(cut_at);
                    v = path.last().map_or(s, |&e| self.to[e]);
                    continue;
                }
                let mut advanced = false;
                while it[v] < self.adjacency[v].len() {
                    let e = self.adjacency[v][it[v]];
                    let w = self.to[e];
                    if self.cap[e] > 0 && level[w] == level[v] + 1 {
                        path.push(e);
                        v = w;
                        advanced = true;
                        break;
                    }
                    it[v] += 1;
                }
                if advanced {
                    continue;
                }
                if v == s {
                    break;
                }
                level[v] = -1;
                let e = path.pop().expect("non-source node has an entry arc");
                v = self.to[e ^ 1];
                it[v] += 1;
            }
        }
    }

    /// Nodes that can still reach `t` in the residual network.
    fn reaches(&self, t: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adjacency.len()];
        let mut stack = vec![t];
        seen[t] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.adjacency[x] {
                let y = self.to[e];
                if self.cap[e ^ 1] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Returns a node set of density strictly above `a / scale`, if one exists.
fn denser_than(adj: &Adjacency, a: i64, scale: i64, big: i64) -> Option<Vec<bool>> {
    let n = adj.node_count();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        let deg = adj.degree(v as NodeId) as i64;
        net.add(s, v, big * scale, 0);
        net.add(v, t, big * scale + 2 * a - deg * scale, 0);
        for &x in adj.neighbors(v as NodeId) {
            if (x as usize) > v {
                net.add(v, x as usize, scale, scale);
            }
        }
    }
    let flow = net.max_flow(s, t);
    if flow >= n as i64 * big * scale {
        return None;
    }
    // the maximal source side of a minimum cut
    let sink_side = net.reaches(t);
    Some(sink_side[..n].iter().map(|&b| !b).collect())
}

/// Exact optimum by binary search over densities with min-cut tests.
///
/// The search keeps `lo` equal to the density of a concrete witness and `hi`
/// an upper bound. Distinct densities with denominators at most `n` differ
/// by at least `1/n^2`, so once `hi - lo < 1/n^2` the witness is optimal.
pub fn exact_flow_undirected(adj: &Adjacency) -> Result<OracleResult> {
    let n = adj.node_count();
    let m = adj.edge_count();
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let max_deg = adj.max_degree() as u128;
    let n128 = n as u128;
    let scale = 2 * n128 * n128;
    // every capacity and the total flow stay below 2 n * max_deg * scale
    let worst = 4 * n128 * max_deg * scale;
    if worst > i64::MAX as u128 {
        return Err(Error::SizeLimit {
            what: "flow oracle capacities",
            size: n,
            limit: 0,
        });
    }
    let mut lo_edges = m as u128;
    let mut lo_size = n128;
    let mut witness = vec![true; n];
    // hi = max_deg / 2 = hi_num / scale
    let mut hi_num = max_deg * n128 * n128;
    while (hi_num * lo_size).saturating_sub(lo_edges * scale) * n128 * n128 >= scale * lo_size {
        let mid = (lo_edges * scale + hi_num * lo_size) / (2 * lo_size);
        match denser_than(adj, mid as i64, scale as i64, max_deg as i64) {
            Some(set) => {
                lo_edges = adj.induced_edges(&set) as u128;
                lo_size = set.iter().filter(|&&b| b).count() as u128;
                if lo_edges * scale <= mid * lo_size {
                    return Err(Error::Invariant(
                        "min-cut side is not denser than the probe".into(),
                    ));
                }
                witness = set;
            }
            None => hi_num = mid,
        }
    }
    let optimum = Ratio::new(lo_edges as u64, lo_size as u64);
    Ok(OracleResult {
        optimum,
        witness: (0..n).filter(|&v| witness[v]).map(|v| v as NodeId).collect(),
        method: Method::Flow,
    })
}
