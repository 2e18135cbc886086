//! CSV traces and JSON result documents.

use std::io::Write;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::directed::{DirectedResult, DirectedTrace};
use crate::error::Result;
use crate::exact::{Method, OracleResult};
use crate::graph_io::{EdgeStream, NodeId};
use crate::peel::{Degree, DenseResult, PassTrace};

#[derive(Serialize)]
struct TraceRow {
    pass: usize,
    n_alive: usize,
    edges_alive: String,
    density: f64,
    removed: usize,
}

#[derive(Serialize)]
struct DirectedRow {
    pass: usize,
    side: String,
    n_alive: usize,
    #[serde(rename = "nT")]
    n_t: usize,
    edges_alive: u64,
    density: f64,
    removed: usize,
}

/// `pass,n_alive,edges_alive,density,removed`, one row per pass.
pub fn write_trace_csv<D: Degree>(trace: &[PassTrace<D>], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in trace {
        w.serialize(TraceRow {
            pass: t.pass,
            n_alive: t.n_alive,
            edges_alive: if D::EXACT {
                format!("{}", t.edges_alive.to_f64() as u64)
            } else {
                t.edges_alive.to_f64().to_string()
            },
            density: D::density_to_f64(t.density),
            removed: t.removed,
        })?;
    }
    w.flush().map_err(|e| crate::Error::io("<trace>", e))?;
    Ok(())
}

/// Directed trace: `n_alive` counts `S`, `nT` counts `T`.
pub fn write_directed_trace_csv(trace: &[DirectedTrace], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for t in trace {
        w.serialize(DirectedRow {
            pass: t.pass,
            side: t.side.to_string(),
            n_alive: t.n_s,
            n_t: t.n_t,
            edges_alive: t.edges,
            density: t.density,
            removed: t.removed,
        })?;
    }
    w.flush().map_err(|e| crate::Error::io("<trace>", e))?;
    Ok(())
}

fn labels(stream: &EdgeStream, ids: &[NodeId]) -> Vec<String> {
    stream.labels_of(ids).map(str::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UndirectedReport {
    pub density: f64,
    /// `num/den` when the density is an exact edge count ratio.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_exact: Option<String>,
    pub size: usize,
    pub passes: usize,
    pub nodes: Vec<String>,
}

impl UndirectedReport {
    pub fn exact(stream: &EdgeStream, r: &DenseResult<u64>) -> Self {
        UndirectedReport {
            density: r.density_f64(),
            density_exact: Some(ratio_string(r.best_density)),
            size: r.best_set.len(),
            passes: r.passes,
            nodes: labels(stream, &r.best_set),
        }
    }

    pub fn weighted(stream: &EdgeStream, r: &DenseResult<f64>) -> Self {
        UndirectedReport {
            density: r.best_density,
            density_exact: None,
            size: r.best_set.len(),
            passes: r.passes,
            nodes: labels(stream, &r.best_set),
        }
    }
}

fn ratio_string(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedReport {
    pub density: f64,
    /// `|S| + |T|`.
    pub size: usize,
    pub passes: usize,
    pub c_used: f64,
    #[serde(rename = "S_nodes")]
    pub s_nodes: Vec<String>,
    #[serde(rename = "T_nodes")]
    pub t_nodes: Vec<String>,
}

impl DirectedReport {
    pub fn new(stream: &EdgeStream, r: &DirectedResult) -> Self {
        DirectedReport {
            density: r.density_f64(),
            size: r.best_s.len() + r.best_t.len(),
            passes: r.passes,
            c_used: r.c_used,
            s_nodes: labels(stream, &r.best_s),
            t_nodes: labels(stream, &r.best_t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub optimum_num: u64,
    pub optimum_den: u64,
    pub optimum: f64,
    pub method: String,
    pub witness: Vec<String>,
}

impl ExactReport {
    pub fn new(stream: &EdgeStream, r: &OracleResult) -> Self {
        ExactReport {
            optimum_num: *r.optimum.numer(),
            optimum_den: *r.optimum.denom(),
            optimum: *r.optimum.numer() as f64 / *r.optimum.denom() as f64,
            method: match r.method {
                Method::Brute => "brute".into(),
                Method::Flow => "flow".into(),
            },
            witness: labels(stream, &r.witness),
        }
    }
}

/// Pretty JSON followed by a newline.
pub fn write_json<T: Serialize>(value: &T, mut out: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(|e| crate::Error::io("<json>", e))?;
    Ok(())
}

/// One label per line.
pub fn write_node_list(nodes: &[String], mut out: impl Write) -> Result<()> {
    for n in nodes {
        writeln!(out, "{n}").map_err(|e| crate::Error::io("<nodes>", e))?;
    }
    Ok(())
}
