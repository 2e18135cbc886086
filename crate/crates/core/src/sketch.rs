//! Count-Sketch degree estimation and the sketched peeling loop.
//!
//! The estimator holds `t` tables of `b` signed counters. Edge `(x, y)` adds
//! `g_i(x)` to bucket `h_i(x)` and `g_i(y)` to bucket `h_i(y)` of every table
//! `i`; a point query returns the lower median of `c[i][h_i(x)] * g_i(x)`.
//! The hash pair of table `i` is a function of `(seed, i)` only, so sketches
//! built with the same `(seed, t, b)` merge by adding counters.

use bitvec::prelude::*;
use num_rational::Ratio;

use crate::arith::products_le;
use crate::eps::Epsilon;
use crate::error::{Error, Result};
use crate::graph_io::{EdgeStream, NodeId};
use crate::peel::{density, induced_total, DenseResult, PassTrace};

pub const DEFAULT_TABLES: usize = 5;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Multiply-shift hash pair for one table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct TableHash {
    bucket_mul: u64,
    bucket_add: u64,
    sign_mul: u64,
    sign_add: u64,
}

impl TableHash {
    fn derive(seed: u64, table: usize) -> Self {
        let mut st = seed ^ (table as u64).wrapping_mul(0xd6e8_feb8_6659_fd93);
        TableHash {
            bucket_mul: splitmix64(&mut st) | 1,
            bucket_add: splitmix64(&mut st),
            sign_mul: splitmix64(&mut st) | 1,
            sign_add: splitmix64(&mut st),
        }
    }

    fn bucket(&self, x: NodeId, b: usize) -> usize {
        let h = self.bucket_mul.wrapping_mul(x as u64).wrapping_add(self.bucket_add) >> 32;
        ((h * b as u64) >> 32) as usize
    }

    fn sign(&self, x: NodeId) -> i64 {
        let mut h = self.sign_mul.wrapping_mul(x as u64).wrapping_add(self.sign_add);
        h = (h ^ (h >> 33)).wrapping_mul(0xff51_afd7_ed55_8ccd);
        h = (h ^ (h >> 33)).wrapping_mul(0xc4ce_b9fe_1a85_ec53);
        if (h ^ (h >> 33)) >> 63 == 0 {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSketch {
    tables: usize,
    buckets: usize,
    seed: u64,
    hashes: Vec<TableHash>,
    counters: Vec<i64>,
}

impl CountSketch {
    pub fn new(tables: usize, buckets: usize, seed: u64) -> Result<Self> {
        if tables == 0 || buckets == 0 {
            return Err(Error::InvalidParameter(
                "sketch needs t >= 1 tables and b >= 1 buckets".into(),
            ));
        }
        if buckets > u32::MAX as usize {
            return Err(Error::InvalidParameter("too many buckets".into()));
        }
        Ok(CountSketch {
            tables,
            buckets,
            seed,
            hashes: (0..tables).map(|i| TableHash::derive(seed, i)).collect(),
            counters: vec![0; tables * buckets],
        })
    }

    pub fn tables(&self) -> usize {
        self.tables
    }

    pub fn buckets(&self) -> usize {
        self.buckets
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn counters(&self) -> &[i64] {
        &self.counters
    }

    /// Counter words held, `t * b`.
    pub fn words(&self) -> usize {
        self.counters.len()
    }

    pub fn clear(&mut self) {
        self.counters.iter_mut().for_each(|c| *c = 0);
    }

    /// Bucket of `x` in table `i`.
    pub fn bucket_of(&self, table: usize, x: NodeId) -> usize {
        self.hashes[table].bucket(x, self.buckets)
    }

    pub fn sign_of(&self, table: usize, x: NodeId) -> i64 {
        self.hashes[table].sign(x)
    }

    fn add(&mut self, x: NodeId, delta: i64) {
        for (i, h) in self.hashes.iter().enumerate() {
            let slot = i * self.buckets + h.bucket(x, self.buckets);
            self.counters[slot] += h.sign(x) * delta;
        }
    }

    /// Records one edge occurrence at both endpoints.
    pub fn update(&mut self, x: NodeId, y: NodeId) {
        self.add(x, 1);
        self.add(y, 1);
    }

    /// Lower median of the `t` signed readings for `x`.
    pub fn estimate(&self, x: NodeId) -> i64 {
        let mut readings: Vec<i64> = self
            .hashes
            .iter()
            .enumerate()
            .map(|(i, h)| self.counters[i * self.buckets + h.bucket(x, self.buckets)] * h.sign(x))
            .collect();
        readings.sort_unstable();
        readings[(readings.len() - 1) / 2]
    }

    /// Adds another sketch's counters into this one.
    pub fn merge(&mut self, other: &CountSketch) -> Result<()> {
        if (self.tables, self.buckets, self.seed) != (other.tables, other.buckets, other.seed) {
            return Err(Error::InvalidParameter(
                "only sketches with identical (seed, t, b) merge".into(),
            ));
        }
        for (a, b) in self.counters.iter_mut().zip(&other.counters) {
            *a += b;
        }
        Ok(())
    }

    /// Whether `x` shares no bucket with any other node of `others` in any table.
    pub fn is_isolated(&self, x: NodeId, others: impl IntoIterator<Item = NodeId> + Clone) -> bool {
        (0..self.tables).all(|i| {
            let bx = self.bucket_of(i, x);
            others
                .clone()
                .into_iter()
                .all(|y| y == x || self.bucket_of(i, y) != bx)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SketchParams {
    pub tables: usize,
    pub buckets: usize,
    pub seed: u64,
}

impl SketchParams {
    pub fn new(buckets: usize, seed: u64) -> Self {
        SketchParams {
            tables: DEFAULT_TABLES,
            buckets,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SketchedResult {
    pub result: DenseResult<u64>,
    /// Nodes removed by the progress fallback when the estimates put no
    /// node under the threshold.
    pub forced_removals: usize,
    /// `t * b / n`.
    pub memory_ratio: f64,
}

/// Plain peeling with sketched degree estimates. The alive set and the edge
/// count `|E(S)|` stay exact; only the per-node peel decisions use estimates.
/// The winning set's density is recounted exactly at the end.
pub fn densest_undirected_sketched(
    stream: &EdgeStream,
    eps: Epsilon,
    params: SketchParams,
) -> Result<SketchedResult> {
    if stream.is_directed() {
        return Err(Error::Mode {
            expected: "undirected",
        });
    }
    if stream.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = stream.node_count();
    let mut sketch = CountSketch::new(params.tables, params.buckets, params.seed)?;
    let mut alive: BitVec = bitvec![1; n];
    let mut n_alive = n;
    let mut trace: Vec<PassTrace<u64>> = Vec::new();
    let mut best: Option<(Ratio<u64>, BitVec)> = None;
    let mut forced = 0usize;
    let (p, q) = (eps.num() as u128, eps.den() as u128);

    while n_alive > 0 {
        sketch.clear();
        let mut edges = 0u64;
        stream.scan(|r| {
            if alive[r.u as usize] && alive[r.v as usize] {
                sketch.update(r.u, r.v);
                edges += 1;
            }
        })?;
        let rho = density(edges, n_alive)?;
        if best.as_ref().is_none_or(|(b, _)| rho > *b) {
            best = Some((rho, alive.clone()));
        }
        let mut removed: Vec<NodeId> = Vec::new();
        let mut lowest: Option<(i64, NodeId)> = None;
        for i in alive.iter_ones() {
            let id = i as NodeId;
            let est = sketch.estimate(id);
            let below = est <= 0
                || products_le(
                    &[est as u128, n_alive as u128, q],
                    &[2, p + q, edges as u128],
                );
            if below {
                removed.push(id);
            }
            if lowest.is_none_or(|(e, _)| est < e) {
                lowest = Some((est, id));
            }
        }
        if removed.is_empty() {
            let (_, id) = lowest.expect("alive set nonempty");
            removed.push(id);
            forced += 1;
        }
        trace.push(PassTrace {
            pass: trace.len() + 1,
            n_alive,
            edges_alive: edges,
            density: rho,
            removed: removed.len(),
        });
        for v in removed {
            alive.set(v as usize, false);
            n_alive -= 1;
        }
    }

    let (best_density, best) = best.ok_or(Error::EmptySet)?;
    let size = best.count_ones();
    let recount = density(induced_total::<u64>(stream, &best)?, size)?;
    if recount != best_density {
        return Err(Error::Invariant(format!(
            "sketched best density {best_density} disagrees with recount {recount}"
        )));
    }
    let passes = trace.len();
    Ok(SketchedResult {
        result: DenseResult {
            best_set: best.iter_ones().map(|i| i as NodeId).collect(),
            best_density: recount,
            trace,
            passes,
        },
        forced_removals: forced,
        memory_ratio: (params.tables * params.buckets) as f64 / n as f64,
    })
}
