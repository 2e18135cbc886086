//! Deterministic graph generators: the pass lower-bound constructions,
//! canonical test fixtures, and seeded random models.

use std::io::Write;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph_io::{Direction, DuplicatePolicy, EdgeStream, NodeId};

/// A regular block inside a generated graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub first: NodeId,
    pub size: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedGraph {
    /// Construction name with parameters, e.g. `lemma5(k=3)`.
    pub descriptor: String,
    pub n: usize,
    pub edges: Vec<(NodeId, NodeId, f64)>,
    pub direction: Direction,
    pub weighted: bool,
    pub layers: Vec<Layer>,
}

impl GeneratedGraph {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn to_stream(&self) -> Result<EdgeStream> {
        EdgeStream::from_edges(
            self.n,
            self.edges.iter().copied(),
            self.direction,
            self.weighted,
            DuplicatePolicy::Dedupe,
        )
    }

    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.edges.iter().map(|&(u, v, _)| (u, v)).collect()
    }

    /// Writes the graph in the text edge-list format.
    pub fn write_edge_list(&self, out: &mut impl Write) -> Result<()> {
        let io = |e| Error::io("<output>", e);
        writeln!(out, "# {}", self.descriptor).map_err(io)?;
        writeln!(out, "# nodes: {} edges: {}", self.n, self.edges.len()).map_err(io)?;
        for &(u, v, w) in &self.edges {
            if self.weighted {
                writeln!(out, "{u}\t{v}\t{w}").map_err(io)?;
            } else {
                writeln!(out, "{u}\t{v}").map_err(io)?;
            }
        }
        Ok(())
    }

    /// Weighted degree of every node.
    pub fn weighted_degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for &(u, v, w) in &self.edges {
            deg[u as usize] += w;
            deg[v as usize] += w;
        }
        deg
    }
}

const LEMMA5_MAX_K: u32 = 11;

/// Disjoint union of layers `G_1..G_k`, where `G_i` is `2^(i-1)`-regular on
/// `2^(2k+1-i)` nodes, so every layer carries exactly `2^(2k-1)` edges.
/// Layers are circulants: degree `d` connects `j` to `j+1..j+d/2`; degree 1
/// is the matching `(j, j + size/2)`.
pub fn gen_lemma5(k: u32) -> Result<GeneratedGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("lemma5 needs k >= 1".into()));
    }
    if k > LEMMA5_MAX_K {
        return Err(Error::SizeLimit {
            what: "lemma5 generator",
            size: k as usize,
            limit: LEMMA5_MAX_K as usize,
        });
    }
    let mut edges = Vec::new();
    let mut layers = Vec::new();
    let mut first = 0usize;
    for i in 1..=k {
        let size = 1usize << (2 * k + 1 - i);
        let degree = 1usize << (i - 1);
        let at = |j: usize| (first + j % size) as NodeId;
        if degree == 1 {
            for j in 0..size / 2 {
                edges.push((at(j), at(j + size / 2), 1.0));
            }
        } else {
            for j in 0..size {
                for step in 1..=degree / 2 {
                    edges.push((at(j), at(j + step), 1.0));
                }
            }
        }
        layers.push(Layer {
            first: first as NodeId,
            size,
            degree,
        });
        first += size;
    }
    Ok(GeneratedGraph {
        descriptor: format!("lemma5(k={k})"),
        n: first,
        edges,
        direction: Direction::Undirected,
        weighted: false,
        layers,
    })
}

const PA_MAX_N: usize = 4096;

/// Deterministic weighted preferential attachment on `n` nodes. Node 1
/// (id 0) seeds the process; node 2 attaches with weight 1. Every later
/// arrival connects to all existing nodes with weights proportional to their
/// current weighted degree, scaled so each arrival adds total weight 1.
pub fn gen_lemma6_pa(n: usize) -> Result<GeneratedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("pa needs n >= 2".into()));
    }
    if n > PA_MAX_N {
        return Err(Error::SizeLimit {
            what: "pa generator",
            size: n,
            limit: PA_MAX_N,
        });
    }
    let mut deg = vec![0.0f64; n];
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    edges.push((1, 0, 1.0));
    deg[0] = 1.0;
    deg[1] = 1.0;
    let mut mass = 2.0;
    for u in 2..n {
        for v in 0..u {
            let w = deg[v] / mass;
            edges.push((u as NodeId, v as NodeId, w));
        }
        for v in 0..u {
            deg[v] += deg[v] / mass;
        }
        deg[u] = 1.0;
        mass += 2.0;
    }
    Ok(GeneratedGraph {
        descriptor: format!("pa(n={n})"),
        n,
        edges,
        direction: Direction::Undirected,
        weighted: true,
        layers: Vec::new(),
    })
}

/// `K_q` on ids `0..q` plus a star whose center is `q` and whose leaves are
/// `q+1..=q+leaves`. With no leaves the star (and its center) is omitted.
pub fn gen_clique_plus_star(q: usize, leaves: usize) -> Result<GeneratedGraph> {
    if q < 2 {
        return Err(Error::InvalidParameter("clique size must be >= 2".into()));
    }
    let mut edges = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            edges.push((a as NodeId, b as NodeId, 1.0));
        }
    }
    let center = q as NodeId;
    for l in 0..leaves {
        edges.push((center, (q + 1 + l) as NodeId, 1.0));
    }
    let n = if leaves == 0 { q } else { q + 1 + leaves };
    Ok(GeneratedGraph {
        descriptor: format!("cliquestar(q={q},leaves={leaves})"),
        n,
        edges,
        direction: Direction::Undirected,
        weighted: false,
        layers: vec![Layer {
            first: 0,
            size: q,
            degree: q - 1,
        }],
    })
}

/// Optimum density of [`gen_clique_plus_star`]: `max((q-1)/2, L/(L+1))`.
pub fn clique_plus_star_optimum(q: usize, leaves: usize) -> Ratio<u64> {
    let clique = Ratio::new(q as u64 - 1, 2);
    let star = Ratio::new(leaves as u64, leaves as u64 + 1);
    clique.max(star)
}

/// `G(n, p)` with a fixed-algorithm seeded RNG.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> GeneratedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a as NodeId, b as NodeId, 1.0));
            }
        }
    }
    GeneratedGraph {
        descriptor: format!("gnp(n={n},p={p},seed={seed})"),
        n,
        edges,
        direction: Direction::Undirected,
        weighted: false,
        layers: Vec::new(),
    }
}

/// Directed `G(n, p)`: every ordered pair `(a, b)`, `a != b`, independently.
pub fn gen_random_digraph(n: usize, p: f64, seed: u64) -> GeneratedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                edges.push((a as NodeId, b as NodeId, 1.0));
            }
        }
    }
    GeneratedGraph {
        descriptor: format!("dgnp(n={n},p={p},seed={seed})"),
        n,
        edges,
        direction: Direction::Directed,
        weighted: false,
        layers: Vec::new(),
    }
}

/// Seeded preferential attachment: each arrival links to `links` distinct
/// earlier nodes chosen proportionally to degree. Yields a heavy-tailed
/// degree sequence.
pub fn gen_preferential_attachment(n: usize, links: usize, seed: u64) -> GeneratedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let links = links.max(1);
    let core = (links + 1).min(n);
    let mut edges = Vec::new();
    // endpoint multiset: sampling uniformly from it is degree-proportional
    let mut ends: Vec<NodeId> = Vec::new();
    for a in 0..core {
        for b in a + 1..core {
            edges.push((a as NodeId, b as NodeId, 1.0));
            ends.push(a as NodeId);
            ends.push(b as NodeId);
        }
    }
    let mut picked: Vec<NodeId> = Vec::with_capacity(links);
    for u in core..n {
        picked.clear();
        while picked.len() < links {
            let v = ends[rng.gen_range(0..ends.len())];
            if !picked.contains(&v) {
                picked.push(v);
            }
        }
        for &v in &picked {
            edges.push((u as NodeId, v, 1.0));
            ends.push(u as NodeId);
            ends.push(v);
        }
    }
    GeneratedGraph {
        descriptor: format!("ba(n={n},links={links},seed={seed})"),
        n,
        edges,
        direction: Direction::Undirected,
        weighted: false,
        layers: Vec::new(),
    }
}

/// Chung-Lu graph with a power-law expected degree sequence: node `i` gets
/// weight proportional to `(i + 1)^(-1/(gamma-1))`, scaled to mean
/// `avg_degree`, and each pair is an edge with probability
/// `min(1, w_i w_j / W)`.
pub fn gen_chung_lu(n: usize, gamma: f64, avg_degree: f64, seed: u64) -> Result<GeneratedGraph> {
    if !(gamma > 2.0) || !(avg_degree > 0.0) {
        return Err(Error::InvalidParameter(
            "chung-lu needs gamma > 2 and a positive average degree".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n)
        .map(|i| ((i + 1) as f64).powf(-1.0 / (gamma - 1.0)))
        .collect();
    let scale = avg_degree * n as f64 / raw.iter().sum::<f64>();
    let w: Vec<f64> = raw.iter().map(|x| x * scale).collect();
    let total: f64 = w.iter().sum();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = (w[a] * w[b] / total).min(1.0);
            if rng.gen_bool(p) {
                edges.push((a as NodeId, b as NodeId, 1.0));
            }
        }
    }
    Ok(GeneratedGraph {
        descriptor: format!("chunglu(n={n},gamma={gamma},avg={avg_degree},seed={seed})"),
        n,
        edges,
        direction: Direction::Undirected,
        weighted: false,
        layers: Vec::new(),
    })
}
