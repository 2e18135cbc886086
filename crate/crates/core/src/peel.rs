//! Undirected peeling: the plain multi-pass algorithm, the size-floored
//! variant, and the d-core validator.
//!
//! Each pass rescans the stream to rebuild induced degrees of the surviving
//! set `S`, records `rho(S) = |E(S)| / |S|`, and then removes
//! `A(S) = { i in S : deg_S(i) <= 2(1+eps) rho(S) }`. The best set seen is
//! returned after `S` empties.
//!
//! Unweighted runs use `u64` degrees and decide the threshold by exact
//! cross-multiplication; weighted runs use `f64` degrees.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Debug;
use std::ops::{AddAssign, SubAssign};

use bitvec::prelude::*;
use num_rational::Ratio;

use crate::adjacency::Adjacency;
use crate::arith::products_le;
use crate::eps::Epsilon;
use crate::error::{Error, Result};
use crate::graph_io::{EdgeRecord, EdgeStream, NodeId};

/// Degree arithmetic shared by the exact (`u64`) and weighted (`f64`) paths.
pub trait Degree:
    Copy + Debug + Default + PartialEq + PartialOrd + Send + Sync + AddAssign + SubAssign + 'static
{
    type Density: Copy + Debug + PartialEq + PartialOrd + Send + Sync + 'static;

    const ZERO: Self;
    /// Whether arithmetic on this type is exact (no rounding).
    const EXACT: bool;

    fn from_weight(w: f64) -> Self;

    /// `total / n`; `n` must be positive.
    fn density_of(total: Self, n: usize) -> Self::Density;

    /// `deg <= 2(1+eps) * total / n`.
    fn below_threshold(deg: Self, total: Self, n: usize, eps: Epsilon) -> bool;

    fn cmp_degree(a: Self, b: Self) -> Ordering;

    fn to_f64(self) -> f64;

    fn density_to_f64(d: Self::Density) -> f64;

    /// Handshake identity `sum == 2 * total`, within rounding for inexact types.
    fn handshake_holds(sum: Self, total: Self) -> bool;
}

impl Degree for u64 {
    type Density = Ratio<u64>;

    const ZERO: Self = 0;
    const EXACT: bool = true;

    fn from_weight(_w: f64) -> Self {
        1
    }

    fn density_of(total: Self, n: usize) -> Ratio<u64> {
        Ratio::new(total, n as u64)
    }

    fn below_threshold(deg: Self, total: Self, n: usize, eps: Epsilon) -> bool {
        // deg * n * q <= 2 (p + q) * total
        products_le(
            &[deg as u128, n as u128, eps.den() as u128],
            &[2, eps.num() as u128 + eps.den() as u128, total as u128],
        )
    }

    fn cmp_degree(a: Self, b: Self) -> Ordering {
        a.cmp(&b)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn density_to_f64(d: Ratio<u64>) -> f64 {
        *d.numer() as f64 / *d.denom() as f64
    }

    fn handshake_holds(sum: Self, total: Self) -> bool {
        sum == 2 * total
    }
}

impl Degree for f64 {
    type Density = f64;

    const ZERO: Self = 0.0;
    const EXACT: bool = false;

    fn from_weight(w: f64) -> Self {
        w
    }

    fn density_of(total: Self, n: usize) -> f64 {
        total / n as f64
    }

    fn below_threshold(deg: Self, total: Self, n: usize, eps: Epsilon) -> bool {
        deg <= 2.0 * (1.0 + eps.as_f64()) * (total / n as f64)
    }

    fn cmp_degree(a: Self, b: Self) -> Ordering {
        a.total_cmp(&b)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn density_to_f64(d: f64) -> f64 {
        d
    }

    fn handshake_holds(sum: Self, total: Self) -> bool {
        (sum - 2.0 * total).abs() <= 1e-9 * (2.0 * total).abs().max(1.0)
    }
}

/// `|E(S)| / |S|` (or total weight over size).
pub fn density<D: Degree>(edges_alive: D, n_alive: usize) -> Result<D::Density> {
    if n_alive == 0 {
        return Err(Error::EmptySet);
    }
    Ok(D::density_of(edges_alive, n_alive))
}

/// Surviving set and induced degrees.
#[derive(Clone, Debug)]
pub struct PeelState<D> {
    pub alive: BitVec,
    pub deg: Vec<D>,
    pub edges_alive: D,
    pub n_alive: usize,
}

impl<D: Degree> PeelState<D> {
    /// All `n` nodes alive, degrees not yet computed.
    pub fn new(n: usize) -> Self {
        PeelState {
            alive: bitvec![1; n],
            deg: vec![D::ZERO; n],
            edges_alive: D::ZERO,
            n_alive: n,
        }
    }

    pub fn with_alive(alive: BitVec) -> Self {
        let n_alive = alive.count_ones();
        PeelState {
            deg: vec![D::ZERO; alive.len()],
            alive,
            edges_alive: D::ZERO,
            n_alive,
        }
    }

    pub fn is_alive(&self, v: NodeId) -> bool {
        self.alive[v as usize]
    }

    pub fn remove(&mut self, v: NodeId) {
        if self.alive[v as usize] {
            self.alive.set(v as usize, false);
            self.n_alive -= 1;
        }
    }

    pub fn alive_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive.iter_ones().map(|i| i as NodeId)
    }

    pub fn density(&self) -> Result<D::Density> {
        density(self.edges_alive, self.n_alive)
    }

    pub fn check_handshake(&self) -> Result<()> {
        let mut sum = D::ZERO;
        for (i, &d) in self.deg.iter().enumerate() {
            if self.alive[i] {
                sum += d;
            } else if d != D::ZERO {
                return Err(Error::Invariant(format!("dead node {i} has nonzero degree")));
            }
        }
        if D::handshake_holds(sum, self.edges_alive) {
            Ok(())
        } else {
            Err(Error::Invariant(format!(
                "handshake: degree sum {sum:?} vs edges {:?}",
                self.edges_alive
            )))
        }
    }
}

/// One row of the per-pass trace. Quantities describe `S` at the start of the
/// pass, before `removed` nodes are peeled.
#[derive(Clone, Debug, PartialEq)]
pub struct PassTrace<D: Degree> {
    pub pass: usize,
    pub n_alive: usize,
    pub edges_alive: D,
    pub density: D::Density,
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseResult<D: Degree> {
    pub best_set: Vec<NodeId>,
    pub best_density: D::Density,
    pub trace: Vec<PassTrace<D>>,
    pub passes: usize,
}

impl<D: Degree> DenseResult<D> {
    pub fn density_f64(&self) -> f64 {
        D::density_to_f64(self.best_density)
    }
}

/// Where a peeling run gets its per-pass induced degrees from.
pub trait DegreeSource<D: Degree> {
    /// Rebuilds `state.deg` and `state.edges_alive` for the current alive set.
    /// `removed` lists the nodes killed since the previous call. On error the
    /// state must be left untouched.
    fn refresh(&mut self, state: &mut PeelState<D>, removed: &[NodeId]) -> Result<()>;
}

/// Recomputes degrees with one full scan of the stream.
pub fn refresh_degrees<D: Degree>(stream: &EdgeStream, state: &mut PeelState<D>) -> Result<()> {
    let mut deg = vec![D::ZERO; state.alive.len()];
    let total = accumulate(stream, &state.alive, &mut deg)?;
    state.deg = deg;
    state.edges_alive = total;
    Ok(())
}

fn accumulate<D: Degree>(stream: &EdgeStream, alive: &BitSlice, deg: &mut [D]) -> Result<D> {
    let mut total = D::ZERO;
    stream.scan(|r| {
        let (u, v) = (r.u as usize, r.v as usize);
        if alive[u] && alive[v] {
            let w = D::from_weight(r.w);
            deg[u] += w;
            deg[v] += w;
            total += w;
        }
    })?;
    Ok(total)
}

/// Streaming degree source: one scan per pass, O(n) memory.
pub struct StreamSource<'a, D> {
    stream: &'a EdgeStream,
    scratch: Vec<D>,
}

impl<'a, D: Degree> StreamSource<'a, D> {
    pub fn new(stream: &'a EdgeStream) -> Self {
        StreamSource {
            stream,
            scratch: vec![D::ZERO; stream.node_count()],
        }
    }
}

impl<D: Degree> DegreeSource<D> for StreamSource<'_, D> {
    fn refresh(&mut self, state: &mut PeelState<D>, _removed: &[NodeId]) -> Result<()> {
        self.scratch.iter_mut().for_each(|d| *d = D::ZERO);
        let total = accumulate(self.stream, &state.alive, &mut self.scratch)?;
        std::mem::swap(&mut state.deg, &mut self.scratch);
        state.edges_alive = total;
        Ok(())
    }
}

/// In-memory degree source. Exact degrees are decremented incrementally from
/// an adjacency; inexact (weighted) degrees are re-summed from a resident
/// edge list in stream order so rounding matches the streaming path.
pub struct MemorySource<D> {
    repr: MemoryRepr,
    deg: Vec<D>,
    total: D,
    live: Vec<bool>,
    primed: bool,
}

enum MemoryRepr {
    Adjacency(Adjacency),
    Records(Vec<EdgeRecord>),
}

impl<D: Degree> MemorySource<D> {
    pub fn load(stream: &EdgeStream) -> Result<Self> {
        let repr = if D::EXACT {
            MemoryRepr::Adjacency(Adjacency::from_stream(stream)?)
        } else {
            let mut records = Vec::with_capacity(stream.edge_count() as usize);
            stream.scan(|r| records.push(*r))?;
            MemoryRepr::Records(records)
        };
        let n = stream.node_count();
        Ok(MemorySource {
            repr,
            deg: vec![D::ZERO; n],
            total: D::ZERO,
            live: vec![true; n],
            primed: false,
        })
    }
}

impl<D: Degree> DegreeSource<D> for MemorySource<D> {
    fn refresh(&mut self, state: &mut PeelState<D>, removed: &[NodeId]) -> Result<()> {
        match &self.repr {
            MemoryRepr::Adjacency(adj) => {
                if !self.primed {
                    for (i, live) in self.live.iter_mut().enumerate() {
                        *live = state.alive[i];
                    }
                    self.deg.iter_mut().for_each(|d| *d = D::ZERO);
                    self.total = D::ZERO;
                    for v in 0..adj.node_count() {
                        if !self.live[v] {
                            continue;
                        }
                        for (x, w) in adj.weighted_neighbors(v as NodeId) {
                            if self.live[x as usize] {
                                self.deg[v] += D::from_weight(w);
                                if (x as usize) > v {
                                    self.total += D::from_weight(w);
                                }
                            }
                        }
                    }
                    self.primed = true;
                } else {
                    for &r in removed {
                        let r = r as usize;
                        if !self.live[r] {
                            continue;
                        }
                        self.live[r] = false;
                        self.deg[r] = D::ZERO;
                        for (x, w) in adj.weighted_neighbors(r as NodeId) {
                            if self.live[x as usize] {
                                self.deg[x as usize] -= D::from_weight(w);
                                self.total -= D::from_weight(w);
                            }
                        }
                    }
                }
            }
            MemoryRepr::Records(records) => {
                self.deg.iter_mut().for_each(|d| *d = D::ZERO);
                let mut total = D::ZERO;
                for r in records {
                    let (u, v) = (r.u as usize, r.v as usize);
                    if state.alive[u] && state.alive[v] {
                        let w = D::from_weight(r.w);
                        self.deg[u] += w;
                        self.deg[v] += w;
                        total += w;
                    }
                }
                self.total = total;
            }
        }
        state.deg.copy_from_slice(&self.deg);
        state.edges_alive = self.total;
        Ok(())
    }
}

/// The removal set `A(S)` of a refreshed state.
pub fn peel_pass<D: Degree>(state: &PeelState<D>, eps: Epsilon) -> Result<Vec<NodeId>> {
    if state.n_alive == 0 {
        return Err(Error::EmptySet);
    }
    let set: Vec<NodeId> = state
        .alive_ids()
        .filter(|&i| D::below_threshold(state.deg[i as usize], state.edges_alive, state.n_alive, eps))
        .collect();
    if !set.is_empty() {
        return Ok(set);
    }
    if D::EXACT {
        return Err(Error::Invariant(
            "no node at or below the peeling threshold".into(),
        ));
    }
    // Rounding can push every weighted degree a hair above the average;
    // fall back to the minimum-degree nodes.
    let min = state
        .alive_ids()
        .map(|i| state.deg[i as usize])
        .min_by(|a, b| D::cmp_degree(*a, *b))
        .expect("alive set nonempty");
    Ok(state
        .alive_ids()
        .filter(|&i| state.deg[i as usize] == min)
        .collect())
}

/// Chooses the size-floored removal set out of the candidate set `A~(S)`:
/// `max(1, ceil(eps/(1+eps) |S|))` nodes, clamped to the candidate count,
/// lowest degree first with smaller id breaking ties.
pub fn select_quota<D: Degree>(
    state: &PeelState<D>,
    mut candidates: Vec<NodeId>,
    eps: Epsilon,
) -> Vec<NodeId> {
    let quota = removal_quota(state.n_alive, eps).clamp(1, candidates.len().max(1));
    candidates.sort_by(|&a, &b| {
        D::cmp_degree(state.deg[a as usize], state.deg[b as usize]).then(a.cmp(&b))
    });
    candidates.truncate(quota);
    candidates.sort_unstable();
    candidates
}

/// `ceil(eps / (1 + eps) * n)`.
pub fn removal_quota(n: usize, eps: Epsilon) -> usize {
    let p = eps.num() as u128;
    let q = eps.den() as u128;
    let num = p * n as u128;
    let den = p + q;
    num.div_ceil(den) as usize
}

struct Peeled<D: Degree> {
    trace: Vec<PassTrace<D>>,
    best: BitVec,
    best_density: D::Density,
}

fn peel_plain<D: Degree, S: DegreeSource<D>>(
    source: &mut S,
    n: usize,
    eps: Epsilon,
) -> Result<Peeled<D>> {
    let mut state = PeelState::<D>::new(n);
    let mut trace = Vec::new();
    let mut best: Option<(D::Density, BitVec)> = None;
    let mut removed: Vec<NodeId> = Vec::new();
    while state.n_alive > 0 {
        source.refresh(&mut state, &removed)?;
        state.check_handshake()?;
        let density = state.density()?;
        if best.as_ref().is_none_or(|(b, _)| density > *b) {
            best = Some((density, state.alive.clone()));
        }
        removed = peel_pass(&state, eps)?;
        trace.push(PassTrace {
            pass: trace.len() + 1,
            n_alive: state.n_alive,
            edges_alive: state.edges_alive,
            density,
            removed: removed.len(),
        });
        for &v in &removed {
            state.remove(v);
        }
    }
    let (best_density, best) = best.ok_or(Error::EmptySet)?;
    Ok(Peeled {
        trace,
        best,
        best_density,
    })
}

fn peel_at_least_k<D: Degree, S: DegreeSource<D>>(
    source: &mut S,
    n: usize,
    k: usize,
    eps: Epsilon,
) -> Result<Peeled<D>> {
    let mut state = PeelState::<D>::new(n);
    let mut trace = Vec::new();
    let mut best: Option<(D::Density, BitVec)> = None;
    let mut removed: Vec<NodeId> = Vec::new();
    while state.n_alive >= k && state.n_alive > 0 {
        source.refresh(&mut state, &removed)?;
        state.check_handshake()?;
        let density = state.density()?;
        if best.as_ref().is_none_or(|(b, _)| density > *b) {
            best = Some((density, state.alive.clone()));
        }
        let candidates = peel_pass(&state, eps)?;
        removed = if state.edges_alive == D::ZERO {
            state.alive_ids().collect()
        } else {
            select_quota(&state, candidates, eps)
        };
        trace.push(PassTrace {
            pass: trace.len() + 1,
            n_alive: state.n_alive,
            edges_alive: state.edges_alive,
            density,
            removed: removed.len(),
        });
        for &v in &removed {
            state.remove(v);
        }
    }
    let (best_density, best) = best.ok_or(Error::EmptySet)?;
    Ok(Peeled {
        trace,
        best,
        best_density,
    })
}

/// Exact total weight (or edge count) induced by `members`, from one scan.
pub fn induced_total<D: Degree>(stream: &EdgeStream, members: &BitSlice) -> Result<D> {
    let mut total = D::ZERO;
    stream.scan(|r| {
        if members[r.u as usize] && members[r.v as usize] {
            total += D::from_weight(r.w);
        }
    })?;
    Ok(total)
}

fn ensure_undirected(stream: &EdgeStream) -> Result<()> {
    if stream.is_directed() {
        Err(Error::Mode {
            expected: "undirected",
        })
    } else {
        Ok(())
    }
}

fn finish<D: Degree>(stream: &EdgeStream, peeled: Peeled<D>) -> Result<DenseResult<D>> {
    let size = peeled.best.count_ones();
    let recount = density(induced_total::<D>(stream, &peeled.best)?, size)?;
    if recount != peeled.best_density {
        return Err(Error::Invariant(format!(
            "best density {:?} does not match recount {recount:?}",
            peeled.best_density
        )));
    }
    let best_set = peeled.best.iter_ones().map(|i| i as NodeId).collect();
    let passes = peeled.trace.len();
    Ok(DenseResult {
        best_set,
        best_density: peeled.best_density,
        trace: peeled.trace,
        passes,
    })
}

/// Plain multi-pass peeling over the stream, `(2+2eps)`-approximate.
pub fn densest_undirected<D: Degree>(stream: &EdgeStream, eps: Epsilon) -> Result<DenseResult<D>> {
    let mut source = StreamSource::new(stream);
    densest_undirected_with(stream, &mut source, eps)
}

/// Same trace as [`densest_undirected`], with degrees kept in memory.
pub fn densest_undirected_in_memory<D: Degree>(
    stream: &EdgeStream,
    eps: Epsilon,
) -> Result<DenseResult<D>> {
    ensure_undirected(stream)?;
    let mut source = MemorySource::load(stream)?;
    densest_undirected_with(stream, &mut source, eps)
}

/// Plain peeling driven by an arbitrary degree source. The stream is used
/// for the final recount of the winning set.
pub fn densest_undirected_with<D: Degree, S: DegreeSource<D>>(
    stream: &EdgeStream,
    source: &mut S,
    eps: Epsilon,
) -> Result<DenseResult<D>> {
    ensure_undirected(stream)?;
    if stream.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let peeled = peel_plain(source, stream.node_count(), eps)?;
    finish(stream, peeled)
}

/// Size-floored peeling: the best set among those with at least `k` nodes,
/// `(3+3eps)`-approximate for the at-least-`k` optimum.
pub fn densest_at_least_k<D: Degree>(
    stream: &EdgeStream,
    k: usize,
    eps: Epsilon,
) -> Result<DenseResult<D>> {
    let mut source = StreamSource::new(stream);
    densest_at_least_k_with(stream, &mut source, k, eps)
}

pub fn densest_at_least_k_in_memory<D: Degree>(
    stream: &EdgeStream,
    k: usize,
    eps: Epsilon,
) -> Result<DenseResult<D>> {
    ensure_undirected(stream)?;
    let mut source = MemorySource::load(stream)?;
    densest_at_least_k_with(stream, &mut source, k, eps)
}

pub fn densest_at_least_k_with<D: Degree, S: DegreeSource<D>>(
    stream: &EdgeStream,
    source: &mut S,
    k: usize,
    eps: Epsilon,
) -> Result<DenseResult<D>> {
    ensure_undirected(stream)?;
    let n = stream.node_count();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k > n {
        return Err(Error::Infeasible { k, n });
    }
    if eps.is_zero() {
        return Err(Error::InvalidParameter(
            "the size-floored algorithm needs eps > 0".into(),
        ));
    }
    let peeled = peel_at_least_k(source, n, k, eps)?;
    finish(stream, peeled)
}

/// The `d`-core: the unique maximal node set whose induced subgraph has
/// minimum degree at least `d`.
pub fn d_core(graph: &Adjacency, d: u64) -> Vec<NodeId> {
    let n = graph.node_count();
    let mut deg: Vec<u64> = (0..n).map(|v| graph.degree(v as NodeId) as u64).collect();
    let mut alive = vec![true; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] < d).collect();
    for &v in &queue {
        alive[v] = false;
    }
    while let Some(v) = queue.pop_front() {
        for &x in graph.neighbors(v as NodeId) {
            let x = x as usize;
            if alive[x] {
                deg[x] -= 1;
                if deg[x] < d {
                    alive[x] = false;
                    queue.push_back(x);
                }
            }
        }
    }
    (0..n).filter(|&v| alive[v]).map(|v| v as NodeId).collect()
}
