//! Command-line front end: argument parsing, the resolved run
//! configuration, and the pipelines behind each subcommand.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use densest::adjacency::Adjacency;
use densest::bounds::{approx_factor, ratio_f64, within_factor};
use densest::directed::{densest_directed, sweep_c, GridPoint};
use densest::exact::{
    brute_force_undirected, exact_flow_undirected, OracleResult, BRUTE_UNDIRECTED_MAX_N,
};
use densest::fixtures::{
    gen_clique_plus_star, gen_erdos_renyi, gen_lemma5, gen_lemma6_pa, GeneratedGraph,
};
use densest::graph_io::DuplicatePolicy;
use densest::mr::{mr_densest_undirected, MrConfig, MrMetrics};
use densest::peel::{
    densest_at_least_k, densest_at_least_k_in_memory, densest_undirected,
    densest_undirected_in_memory,
};
use densest::report::{
    write_directed_trace_csv, write_json, write_node_list, write_trace_csv, DirectedReport,
    ExactReport, UndirectedReport,
};
use densest::sketch::{densest_undirected_sketched, SketchParams};
use densest::{open_edge_stream, Epsilon, EdgeStream, StreamOptions};

/// A bad command line or an infeasible parameter; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser, Debug)]
#[command(name = "densest", version, about = "Approximate densest subgraphs by multi-pass peeling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Edge list: `u v [w]` per line, `#` comments, optionally gzipped.
    #[arg(long)]
    pub input: PathBuf,
    /// Approximation parameter, as `p/q` or a decimal.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub eps: Epsilon,
    /// Read the third column as an edge weight.
    #[arg(long)]
    pub weighted: bool,
    /// Keep parallel edges instead of collapsing them.
    #[arg(long)]
    pub multigraph: bool,
    /// Hold the edge records in a temporary file rather than in memory.
    #[arg(long)]
    pub spill: bool,
    /// Output prefix: writes `<out>.trace.csv`, `<out>.result.json`, and
    /// `<out>.nodes.txt`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleMethod {
    Brute,
    Flow,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Plain peeling.
    Undirected {
        #[command(flatten)]
        io: InputArgs,
        /// Keep an adjacency in memory and decrement degrees.
        #[arg(long)]
        in_memory: bool,
    },
    /// Densest subgraph with at least `k` nodes.
    AtleastK {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        in_memory: bool,
    },
    /// Directed peeling for one side ratio `c`.
    Directed {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 1.0, value_parser = positive_f64)]
        c: f64,
    },
    /// Directed peeling over the grid `c = delta^i`.
    Sweep {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 2.0, value_parser = delta_value)]
        delta: f64,
    },
    /// Plain peeling with Count-Sketch degree estimates.
    Sketch {
        #[command(flatten)]
        io: InputArgs,
        /// Buckets per table.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        sketch_b: u64,
        /// Number of tables.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        sketch_t: u64,
        /// Hash seed; defaults to `--seed`.
        #[arg(long)]
        sketch_seed: Option<u64>,
    },
    /// Exact optimum.
    Exact {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "flow")]
        method: OracleMethod,
        /// Size floor (brute force only).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Plain peeling on the sharded executor.
    Mr {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        shards: u64,
        /// Send removals as per-node marker records instead of a bitset.
        #[arg(long)]
        literal_marks: bool,
        /// Keep shards as files in this directory.
        #[arg(long)]
        work_dir: Option<PathBuf>,
    },
    /// Write a generated graph as an edge list.
    Gen {
        #[command(subcommand)]
        which: GenCommand,
        /// Output file (stdout when absent).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, global = true)]
        dump_config: bool,
    },
    /// Run an algorithm and an exact oracle and compare against the bound.
    Verify {
        #[command(flatten)]
        io: InputArgs,
        /// Verify the size-floored algorithm instead of plain peeling.
        #[arg(long)]
        k: Option<usize>,
        /// Oracle; defaults to brute force on small graphs, flow otherwise.
        #[arg(long, value_enum)]
        method: Option<OracleMethod>,
    },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum GenCommand {
    /// Layered regular graph on which peeling needs many passes.
    Lemma5 {
        #[arg(long)]
        k: u32,
    },
    /// Deterministic weighted preferential attachment.
    Pa {
        #[arg(long)]
        n: usize,
    },
    /// Clique on `q` nodes plus a disjoint star with `leaves` leaves.
    Cliquestar {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        leaves: usize,
    },
    /// Seeded Erdos-Renyi graph.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("must be a positive number".into())
    }
}

fn delta_value(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 1.0 {
        Ok(v)
    } else {
        Err("delta must be greater than 1".into())
    }
}

/// Everything a run depends on. Serializes to the `--dump-config` echo and
/// deserializes back to an equal value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub input: Option<PathBuf>,
    pub eps: Epsilon,
    pub weighted: bool,
    pub multigraph: bool,
    pub spill: bool,
    pub in_memory: bool,
    pub k: Option<usize>,
    pub c: Option<f64>,
    pub delta: Option<f64>,
    pub sketch_b: Option<u64>,
    pub sketch_t: Option<u64>,
    #[serde(default)]
    pub sketch_seed: Option<u64>,
    pub method: Option<OracleMethod>,
    pub shards: Option<u64>,
    pub literal_marks: bool,
    pub work_dir: Option<PathBuf>,
    pub generator: Option<GenCommand>,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    fn base(subcommand: &str, io: &InputArgs) -> Self {
        RunConfig {
            subcommand: subcommand.into(),
            input: Some(io.input.clone()),
            eps: io.eps,
            weighted: io.weighted,
            multigraph: io.multigraph,
            spill: io.spill,
            in_memory: false,
            k: None,
            c: None,
            delta: None,
            sketch_b: None,
            sketch_t: None,
            sketch_seed: None,
            method: None,
            shards: None,
            literal_marks: false,
            work_dir: None,
            generator: None,
            out: io.out.clone(),
            seed: io.seed,
        }
    }

    /// The resolved configuration and whether `--dump-config` was given.
    pub fn resolve(cli: &Cli) -> (RunConfig, bool) {
        match &cli.command {
            Command::Undirected { io, in_memory } => (
                RunConfig {
                    in_memory: *in_memory,
                    ..Self::base("undirected", io)
                },
                io.dump_config,
            ),
            Command::AtleastK { io, k, in_memory } => (
                RunConfig {
                    k: Some(*k),
                    in_memory: *in_memory,
                    ..Self::base("atleast-k", io)
                },
                io.dump_config,
            ),
            Command::Directed { io, c } => (
                RunConfig {
                    c: Some(*c),
                    ..Self::base("directed", io)
                },
                io.dump_config,
            ),
            Command::Sweep { io, delta } => (
                RunConfig {
                    delta: Some(*delta),
                    ..Self::base("sweep", io)
                },
                io.dump_config,
            ),
            Command::Sketch {
                io,
                sketch_b,
                sketch_t,
                sketch_seed,
            } => (
                RunConfig {
                    sketch_b: Some(*sketch_b),
                    sketch_t: Some(*sketch_t),
                    sketch_seed: *sketch_seed,
                    ..Self::base("sketch", io)
                },
                io.dump_config,
            ),
            Command::Exact { io, method, k } => (
                RunConfig {
                    method: Some(*method),
                    k: *k,
                    ..Self::base("exact", io)
                },
                io.dump_config,
            ),
            Command::Mr {
                io,
                shards,
                literal_marks,
                work_dir,
            } => (
                RunConfig {
                    shards: Some(*shards),
                    literal_marks: *literal_marks,
                    work_dir: work_dir.clone(),
                    ..Self::base("mr", io)
                },
                io.dump_config,
            ),
            Command::Verify { io, k, method } => (
                RunConfig {
                    k: *k,
                    method: *method,
                    ..Self::base("verify", io)
                },
                io.dump_config,
            ),
            Command::Gen {
                which,
                out,
                seed,
                dump_config,
            } => (
                RunConfig {
                    subcommand: "gen".into(),
                    input: None,
                    eps: Epsilon::ZERO,
                    weighted: false,
                    multigraph: false,
                    spill: false,
                    in_memory: false,
                    k: None,
                    c: None,
                    delta: None,
                    sketch_b: None,
                    sketch_t: None,
                    sketch_seed: None,
                    method: None,
                    shards: None,
                    literal_marks: false,
                    work_dir: None,
                    generator: Some(*which),
                    out: out.clone(),
                    seed: *seed,
                },
                *dump_config,
            ),
        }
    }

    fn input(&self) -> Result<&Path> {
        self.input
            .as_deref()
            .ok_or_else(|| usage(format!("{} needs --input", self.subcommand)))
    }

    fn load(&self, directed: bool) -> Result<EdgeStream> {
        let path = self.input()?;
        let options = StreamOptions {
            directed,
            duplicates: if self.multigraph {
                DuplicatePolicy::Multigraph
            } else {
                DuplicatePolicy::Dedupe
            },
            weighted: self.weighted,
            spill: self.spill,
        };
        open_edge_stream(path, &options).with_context(|| format!("reading {}", path.display()))
    }
}

/// Parses `args` and runs; the process exit status is the return value.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::BoundViolated) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}

fn is_usage(e: &anyhow::Error) -> bool {
    if e.downcast_ref::<UsageError>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<densest::Error>(),
        Some(densest::Error::Infeasible { .. } | densest::Error::InvalidParameter(_))
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// `verify` found the approximation bound violated.
    BoundViolated,
}

pub fn run(cli: &Cli, stdout: &mut impl Write) -> Result<Status> {
    let (config, dump) = RunConfig::resolve(cli);
    if dump {
        serde_json::to_writer_pretty(&mut *stdout, &config)?;
        writeln!(stdout)?;
        return Ok(Status::Ok);
    }
    execute(&config, stdout)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

struct Outputs<'a> {
    prefix: Option<&'a Path>,
}

impl Outputs<'_> {
    fn file(&self, suffix: &str) -> Result<Option<BufWriter<File>>> {
        self.prefix.map(|p| create(&with_suffix(p, suffix))).transpose()
    }

    fn result<T: Serialize>(&self, value: &T, stdout: &mut impl Write) -> Result<()> {
        write_json(value, &mut *stdout)?;
        if let Some(mut f) = self.file(".result.json")? {
            write_json(value, &mut f)?;
            f.flush()?;
        }
        Ok(())
    }

    fn nodes(&self, nodes: &[String]) -> Result<()> {
        if let Some(mut f) = self.file(".nodes.txt")? {
            write_node_list(nodes, &mut f)?;
            f.flush()?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct SketchReport {
    #[serde(flatten)]
    report: UndirectedReport,
    tables: u64,
    buckets: u64,
    memory_ratio: f64,
    forced_removals: usize,
}

#[derive(Serialize)]
struct SweepReport {
    #[serde(flatten)]
    report: DirectedReport,
    delta: f64,
    grid: Vec<GridPoint>,
}

#[derive(Serialize)]
struct MrReport {
    #[serde(flatten)]
    report: UndirectedReport,
    metrics: MrMetrics,
}

#[derive(Serialize)]
struct VerifyReport {
    algorithm: String,
    eps: Epsilon,
    k: Option<usize>,
    oracle: OracleMethod,
    rho: f64,
    rho_exact: String,
    rho_star: f64,
    rho_star_exact: String,
    ratio: f64,
    bound: f64,
    within_bound: bool,
    passes: usize,
    size: usize,
}

fn check_k(k: usize, stream: &EdgeStream) -> Result<()> {
    let n = stream.node_count();
    if k == 0 || k > n {
        return Err(usage(format!("--k must lie in 1..={n}, got {k}")));
    }
    Ok(())
}

fn oracle(
    adj: &Adjacency,
    method: Option<OracleMethod>,
    k: Option<usize>,
) -> Result<(OracleResult, OracleMethod)> {
    let method = method.unwrap_or(if adj.node_count() <= BRUTE_UNDIRECTED_MAX_N {
        OracleMethod::Brute
    } else {
        OracleMethod::Flow
    });
    let result = match method {
        OracleMethod::Brute => brute_force_undirected(adj, k)?,
        OracleMethod::Flow => {
            if k.is_some() {
                return Err(usage("the flow oracle does not take --k; use --method brute"));
            }
            exact_flow_undirected(adj)?
        }
    };
    Ok((result, method))
}

fn generate(which: GenCommand, seed: u64) -> Result<GeneratedGraph> {
    Ok(match which {
        GenCommand::Lemma5 { k } => gen_lemma5(k)?,
        GenCommand::Pa { n } => gen_lemma6_pa(n)?,
        GenCommand::Cliquestar { q, leaves } => gen_clique_plus_star(q, leaves)?,
        GenCommand::Er { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(usage("--p must lie in [0, 1]"));
            }
            gen_erdos_renyi(n, p, seed)
        }
    })
}

/// Runs a resolved configuration, writing the result JSON to `stdout`.
pub fn execute(config: &RunConfig, stdout: &mut impl Write) -> Result<Status> {
    let outputs = Outputs {
        prefix: config.out.as_deref(),
    };
    let eps = config.eps;
    match config.subcommand.as_str() {
        "mr" | "sketch" if config.weighted => {
            bail!(usage(format!("{} does not support --weighted", config.subcommand)))
        }
        "undirected" | "atleast-k" => {
            let stream = config.load(false)?;
            if let Some(k) = config.k {
                check_k(k, &stream)?;
                if eps.is_zero() {
                    return Err(usage("atleast-k needs --eps > 0"));
                }
            }
            let run_k = config.subcommand == "atleast-k";
            let k = config.k.unwrap_or(1);
            let report = if config.weighted {
                let r = match (run_k, config.in_memory) {
                    (false, false) => densest_undirected::<f64>(&stream, eps)?,
                    (false, true) => densest_undirected_in_memory::<f64>(&stream, eps)?,
                    (true, false) => densest_at_least_k::<f64>(&stream, k, eps)?,
                    (true, true) => densest_at_least_k_in_memory::<f64>(&stream, k, eps)?,
                };
                if let Some(f) = outputs.file(".trace.csv")? {
                    write_trace_csv(&r.trace, f)?;
                }
                UndirectedReport::weighted(&stream, &r)
            } else {
                let r = match (run_k, config.in_memory) {
                    (false, false) => densest_undirected::<u64>(&stream, eps)?,
                    (false, true) => densest_undirected_in_memory::<u64>(&stream, eps)?,
                    (true, false) => densest_at_least_k::<u64>(&stream, k, eps)?,
                    (true, true) => densest_at_least_k_in_memory::<u64>(&stream, k, eps)?,
                };
                if let Some(f) = outputs.file(".trace.csv")? {
                    write_trace_csv(&r.trace, f)?;
                }
                UndirectedReport::exact(&stream, &r)
            };
            outputs.nodes(&report.nodes)?;
            outputs.result(&report, stdout)?;
        }
        "directed" | "sweep" => {
            if config.weighted {
                return Err(usage("directed peeling does not support --weighted"));
            }
            let stream = config.load(true)?;
            let (best, sweep) = if config.subcommand == "directed" {
                (densest_directed(&stream, config.c.unwrap_or(1.0), eps)?, None)
            } else {
                let delta = config.delta.unwrap_or(2.0);
                if !(delta > 1.0) {
                    return Err(usage("delta must be greater than 1"));
                }
                let s = sweep_c(&stream, delta, eps)?;
                (s.best.clone(), Some(s))
            };
            if let Some(f) = outputs.file(".trace.csv")? {
                write_directed_trace_csv(&best.trace, f)?;
            }
            let report = DirectedReport::new(&stream, &best);
            let mut all = report.s_nodes.clone();
            all.extend(report.t_nodes.iter().cloned());
            outputs.nodes(&all)?;
            match sweep {
                None => outputs.result(&report, stdout)?,
                Some(s) => outputs.result(
                    &SweepReport {
                        report,
                        delta: s.delta,
                        grid: s.grid,
                    },
                    stdout,
                )?,
            }
        }
        "sketch" => {
            let stream = config.load(false)?;
            let params = SketchParams {
                tables: config.sketch_t.unwrap_or(5) as usize,
                buckets: config
                    .sketch_b
                    .ok_or_else(|| usage("sketch needs --sketch-b"))? as usize,
                seed: config.sketch_seed.unwrap_or(config.seed),
            };
            let r = densest_undirected_sketched(&stream, eps, params)?;
            if let Some(f) = outputs.file(".trace.csv")? {
                write_trace_csv(&r.result.trace, f)?;
            }
            let report = UndirectedReport::exact(&stream, &r.result);
            outputs.nodes(&report.nodes)?;
            outputs.result(
                &SketchReport {
                    report,
                    tables: params.tables as u64,
                    buckets: params.buckets as u64,
                    memory_ratio: r.memory_ratio,
                    forced_removals: r.forced_removals,
                },
                stdout,
            )?;
        }
        "mr" => {
            let stream = config.load(false)?;
            let mr = MrConfig {
                shards: config.shards.unwrap_or(4) as usize,
                literal_marks: config.literal_marks,
                work_dir: config.work_dir.clone(),
                salt: config.seed,
            };
            let r = mr_densest_undirected(&stream, eps, &mr)?;
            if let Some(f) = outputs.file(".trace.csv")? {
                write_trace_csv(&r.result.trace, f)?;
            }
            if let Some(f) = outputs.file(".metrics.json")? {
                write_json(&r.metrics, f)?;
            }
            let report = UndirectedReport::exact(&stream, &r.result);
            outputs.nodes(&report.nodes)?;
            outputs.result(
                &MrReport {
                    report,
                    metrics: r.metrics,
                },
                stdout,
            )?;
        }
        "exact" => {
            if config.weighted {
                return Err(usage("the exact oracles do not support --weighted"));
            }
            let stream = config.load(false)?;
            if let Some(k) = config.k {
                check_k(k, &stream)?;
            }
            let adj = Adjacency::from_stream(&stream)?;
            let (r, _) = oracle(&adj, Some(config.method.unwrap_or(OracleMethod::Flow)), config.k)?;
            let report = ExactReport::new(&stream, &r);
            outputs.nodes(&report.witness)?;
            outputs.result(&report, stdout)?;
        }
        "verify" => {
            if config.weighted {
                return Err(usage("verify does not support --weighted"));
            }
            let stream = config.load(false)?;
            let (r, factor) = match config.k {
                Some(k) => {
                    check_k(k, &stream)?;
                    if eps.is_zero() {
                        return Err(usage("verify --k needs --eps > 0"));
                    }
                    (densest_at_least_k::<u64>(&stream, k, eps)?, approx_factor(3, eps))
                }
                None => (densest_undirected::<u64>(&stream, eps)?, approx_factor(2, eps)),
            };
            let adj = Adjacency::from_stream(&stream)?;
            let (star, method) = oracle(&adj, config.method, config.k)?;
            let within = within_factor(factor, r.best_density, star.optimum);
            let rho = ratio_f64(r.best_density);
            let rho_star = ratio_f64(star.optimum);
            if let Some(f) = outputs.file(".trace.csv")? {
                write_trace_csv(&r.trace, f)?;
            }
            let report = VerifyReport {
                algorithm: if config.k.is_some() { "atleast-k" } else { "undirected" }.into(),
                eps,
                k: config.k,
                oracle: method,
                rho,
                rho_exact: format!("{}/{}", r.best_density.numer(), r.best_density.denom()),
                rho_star,
                rho_star_exact: format!("{}/{}", star.optimum.numer(), star.optimum.denom()),
                ratio: rho_star / rho,
                bound: ratio_f64(factor),
                within_bound: within,
                passes: r.passes,
                size: r.best_set.len(),
            };
            outputs.result(&report, stdout)?;
            if !within {
                eprintln!(
                    "approximation bound violated: ratio {:.4} exceeds {:.4}",
                    report.ratio, report.bound
                );
                return Ok(Status::BoundViolated);
            }
        }
        "gen" => {
            let which = config
                .generator
                .ok_or_else(|| usage("gen needs a generator"))?;
            let g = generate(which, config.seed)?;
            match &config.out {
                Some(path) => {
                    let mut f = create(path)?;
                    g.write_edge_list(&mut f)?;
                    f.flush()?;
                }
                None => g.write_edge_list(stdout)?,
            }
        }
        other => return Err(usage(format!("unknown subcommand {other}"))),
    }
    Ok(Status::Ok)
}
