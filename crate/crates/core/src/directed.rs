//! Directed densest subgraphs.
//!
//! A pair `(S, T)` of possibly overlapping node sets has density
//! `|E(S,T)| / sqrt(|S| |T|)`. For a target ratio `c` the peeling loop starts
//! from `S = T = V` and in each pass shrinks whichever side the current size
//! ratio points at: when `|S|/|T| >= c` it drops every `i in S` with
//! `|E(i,T)| <= (1+eps) |E(S,T)| / |S|`, otherwise every `j in T` with
//! `|E(S,j)| <= (1+eps) |E(S,T)| / |T|`. Only that side's degrees are scanned.
//!
//! [`sweep_c`] runs the loop for every `c = delta^i` covering `[1/n, n]`.

use std::cmp::Ordering;

use bitvec::prelude::*;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{cmp_products, products_le};
use crate::eps::Epsilon;
use crate::error::{Error, Result};
use crate::graph_io::{EdgeStream, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    S,
    T,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::S => "S",
            Side::T => "T",
        })
    }
}

/// `edges / sqrt(s * t)`, compared exactly through squared cross products.
#[derive(Clone, Copy, Debug)]
pub struct DirectedDensity {
    pub edges: u64,
    pub s: u64,
    pub t: u64,
}

impl DirectedDensity {
    pub fn new(edges: u64, s: u64, t: u64) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::EmptySet);
        }
        Ok(DirectedDensity { edges, s, t })
    }

    pub fn value(&self) -> f64 {
        self.edges as f64 / ((self.s as f64) * (self.t as f64)).sqrt()
    }
}

impl PartialEq for DirectedDensity {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DirectedDensity {}

impl PartialOrd for DirectedDensity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirectedDensity {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self, other);
        cmp_products(
            &[a.edges as u128, a.edges as u128, b.s as u128, b.t as u128],
            &[b.edges as u128, b.edges as u128, a.s as u128, a.t as u128],
        )
    }
}

/// `|E(S,T)| / sqrt(|S| |T|)` as a float.
pub fn density_directed(est: u64, n_s: u64, n_t: u64) -> Result<f64> {
    DirectedDensity::new(est, n_s, n_t).map(|d| d.value())
}

#[derive(Clone, Debug)]
pub struct DirectedPeelState {
    pub alive_s: BitVec,
    pub alive_t: BitVec,
    /// `|E(i, T)|` for `i in S`.
    pub outdeg: Vec<u64>,
    /// `|E(S, j)|` for `j in T`.
    pub indeg: Vec<u64>,
    pub est: u64,
    pub n_s: usize,
    pub n_t: usize,
}

/// Which degree arrays a refresh rebuilds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refresh {
    Out,
    In,
    Both,
}

impl DirectedPeelState {
    pub fn new(n: usize) -> Self {
        DirectedPeelState {
            alive_s: bitvec![1; n],
            alive_t: bitvec![1; n],
            outdeg: vec![0; n],
            indeg: vec![0; n],
            est: 0,
            n_s: n,
            n_t: n,
        }
    }

    pub fn remove(&mut self, side: Side, v: NodeId) {
        let v = v as usize;
        match side {
            Side::S if self.alive_s[v] => {
                self.alive_s.set(v, false);
                self.n_s -= 1;
            }
            Side::T if self.alive_t[v] => {
                self.alive_t.set(v, false);
                self.n_t -= 1;
            }
            _ => {}
        }
    }

    pub fn density(&self) -> Result<DirectedDensity> {
        DirectedDensity::new(self.est, self.n_s as u64, self.n_t as u64)
    }

    /// Rescans the stream for `|E(S,T)|` and the requested degree arrays.
    pub fn refresh(&mut self, stream: &EdgeStream, which: Refresh) -> Result<()> {
        let n = self.alive_s.len();
        let want_out = which != Refresh::In;
        let want_in = which != Refresh::Out;
        let mut out = if want_out { vec![0u64; n] } else { Vec::new() };
        let mut inn = if want_in { vec![0u64; n] } else { Vec::new() };
        let mut est = 0u64;
        let (alive_s, alive_t) = (&self.alive_s, &self.alive_t);
        stream.scan(|r| {
            let (u, v) = (r.u as usize, r.v as usize);
            if alive_s[u] && alive_t[v] {
                est += 1;
                if want_out {
                    out[u] += 1;
                }
                if want_in {
                    inn[v] += 1;
                }
            }
        })?;
        self.est = est;
        self.outdeg = if want_out { out } else { vec![0; n] };
        self.indeg = if want_in { inn } else { vec![0; n] };
        Ok(())
    }

    /// Nodes of `side` at or below `(1+eps)` times that side's average degree.
    pub fn removal_set(&self, side: Side, eps: Epsilon) -> Vec<NodeId> {
        let (alive, deg, size) = match side {
            Side::S => (&self.alive_s, &self.outdeg, self.n_s),
            Side::T => (&self.alive_t, &self.indeg, self.n_t),
        };
        let (p, q) = (eps.num() as u128, eps.den() as u128);
        alive
            .iter_ones()
            .filter(|&i| products_le(&[deg[i] as u128, size as u128, q], &[p + q, self.est as u128]))
            .map(|i| i as NodeId)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectedTrace {
    pub pass: usize,
    pub side: Side,
    pub n_s: usize,
    pub n_t: usize,
    pub edges: u64,
    pub density: f64,
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectedResult {
    pub best_s: Vec<NodeId>,
    pub best_t: Vec<NodeId>,
    pub best_density: DirectedDensity,
    pub trace: Vec<DirectedTrace>,
    pub passes: usize,
    pub c_used: f64,
}

impl DirectedResult {
    pub fn density_f64(&self) -> f64 {
        self.best_density.value()
    }
}

fn ensure_directed(stream: &EdgeStream) -> Result<()> {
    if !stream.is_directed() {
        return Err(Error::Mode {
            expected: "directed",
        });
    }
    if stream.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// Directed peeling for a fixed target ratio `c = |S|/|T|`.
pub fn densest_directed(stream: &EdgeStream, c: f64, eps: Epsilon) -> Result<DirectedResult> {
    ensure_directed(stream)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let n = stream.node_count();
    let mut state = DirectedPeelState::new(n);
    let mut trace = Vec::new();
    let mut best: Option<(DirectedDensity, BitVec, BitVec)> = None;
    while state.n_s > 0 && state.n_t > 0 {
        let side = if state.n_s as f64 >= c * state.n_t as f64 {
            Side::S
        } else {
            Side::T
        };
        state.refresh(
            stream,
            match side {
                Side::S => Refresh::Out,
                Side::T => Refresh::In,
            },
        )?;
        let density = state.density()?;
        if best.as_ref().is_none_or(|(b, _, _)| density > *b) {
            best = Some((density, state.alive_s.clone(), state.alive_t.clone()));
        }
        let removed = state.removal_set(side, eps);
        if removed.is_empty() {
            return Err(Error::Invariant(format!(
                "pass {} removed no node from {side}",
                trace.len() + 1
            )));
        }
        trace.push(DirectedTrace {
            pass: trace.len() + 1,
            side,
            n_s: state.n_s,
            n_t: state.n_t,
            edges: state.est,
            density: density.value(),
            removed: removed.len(),
        });
        for v in removed {
            state.remove(side, v);
        }
    }
    let (best_density, s, t) = best.ok_or(Error::EmptySet)?;
    let mut recount = 0u64;
    stream.scan(|r| {
        if s[r.u as usize] && t[r.v as usize] {
            recount += 1;
        }
    })?;
    if recount != best_density.edges {
        return Err(Error::Invariant(format!(
            "best pair has {recount} edges on recount, trace says {}",
            best_density.edges
        )));
    }
    let passes = trace.len();
    Ok(DirectedResult {
        best_s: s.iter_ones().map(|i| i as NodeId).collect(),
        best_t: t.iter_ones().map(|i| i as NodeId).collect(),
        best_density,
        trace,
        passes,
        c_used: c,
    })
}

/// Exponents `i` with `delta^i` in `[1/n, n]`.
pub fn c_grid(n: usize, delta: f64) -> Result<Vec<i32>> {
    if !(delta > 1.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("delta must exceed 1, got {delta}")));
    }
    let n = n.max(1) as f64;
    let slack = 1.0 + 1e-12;
    let mut top = 0i32;
    while delta.powi(top + 1) <= n * slack {
        top += 1;
    }
    Ok((-top..=top).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridPoint {
    pub exponent: i32,
    pub c: f64,
    pub density: f64,
    pub passes: usize,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub best: DirectedResult,
    pub grid: Vec<GridPoint>,
    pub delta: f64,
}

/// Ranks two sweep candidates: higher density first; among equal densities
/// the ratio closest to 1, then the smaller ratio, then lexicographic sets.
fn sweep_order(a: (i32, &DirectedResult), b: (i32, &DirectedResult)) -> Ordering {
    b.1.best_density
        .cmp(&a.1.best_density)
        .then(a.0.unsigned_abs().cmp(&b.0.unsigned_abs()))
        .then(a.0.cmp(&b.0))
        .then_with(|| a.1.best_s.cmp(&b.1.best_s))
        .then_with(|| a.1.best_t.cmp(&b.1.best_t))
}

/// Runs [`densest_directed`] for every grid ratio (in parallel) and keeps
/// the densest pair. The choice does not depend on completion order.
pub fn sweep_c(stream: &EdgeStream, delta: f64, eps: Epsilon) -> Result<SweepResult> {
    ensure_directed(stream)?;
    let grid = c_grid(stream.node_count(), delta)?;
    let runs: Vec<(i32, DirectedResult)> = grid
        .par_iter()
        .map(|&i| densest_directed(stream, delta.powi(i), eps).map(|r| (i, r)))
        .collect::<Result<_>>()?;
    let points = runs
        .iter()
        .map(|(i, r)| GridPoint {
            exponent: *i,
            c: r.c_used,
            density: r.density_f64(),
            passes: r.passes,
        })
        .collect();
    let (_, best) = runs
        .into_iter()
        .min_by(|a, b| sweep_order((a.0, &a.1), (b.0, &b.1)))
        .ok_or(Error::EmptySet)?;
    Ok(SweepResult {
        best,
        grid: points,
        delta,
    })
}
