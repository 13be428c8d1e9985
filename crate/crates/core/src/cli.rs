//! Command-line surface. Commands render to strings so they can be driven
//! from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 negative query answer, 2 input error,
//! 3 conflicts found.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::export::{self, JSON_SCHEMA};
use crate::ingest::{self, IngestError};
use crate::kingraph::{self, KinGraph, Metric};
use crate::netbuilder;
use crate::relation::RelationRegistry;
use crate::report::{ConflictKind, ConflictReport};
use crate::rmatrix::{self, CountMatrix, PathMatrix, RelationshipMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFLICTS: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kinship",
    version,
    about = "Kinship relationship inference over relationship matrices"
)]
pub struct Cli {
    /// Extra relation symbols: `SYMBOL glen slen inverse1[,inverse2...]` per line.
    #[arg(long, global = true, value_name = "FILE")]
    pub registry: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List families (connected components).
    Families {
        edges: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Most direct relationship between two persons.
    Path(PathArgs),
    /// Walk counts of the rho-th power of the binary matrix.
    Power(PowerArgs),
    /// Build a generation-leveled family network.
    Network {
        edges: PathBuf,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Report inconsistent, conflicting, or parallel relationships.
    Check {
        edges: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct PathArgs {
    pub edges: PathBuf,
    pub from: String,
    pub to: String,
    /// hop | kinsteps | custom:WG,WS
    #[arg(long, value_parser = parse_metric)]
    pub metric: Option<Metric<f64>>,
    /// Largest power searched; defaults to n - 1.
    #[arg(long)]
    pub max_rho: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    pub edges: PathBuf,
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    pub rho: u64,
    /// Also list the recorded walks of every cell.
    #[arg(long)]
    pub record_paths: bool,
    /// Walks kept per cell with --record-paths.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

pub fn parse_metric(s: &str) -> Result<Metric<f64>, String> {
    match s {
        "hop" => Ok(Metric::Hop),
        "kinsteps" => Ok(Metric::KinSteps),
        _ => {
            let body = s
                .strip_prefix("custom:")
                .ok_or_else(|| format!("unknown metric {s:?}; expected hop, kinsteps or custom:WG,WS"))?;
            let (wg, ws) = body
                .split_once(',')
                .ok_or_else(|| "custom metric needs two weights: custom:WG,WS".to_string())?;
            let wg: f64 = wg.trim().parse().map_err(|_| format!("bad weight {wg:?}"))?;
            let ws: f64 = ws.trim().parse().map_err(|_| format!("bad weight {ws:?}"))?;
            if !(wg >= 0.0 && ws >= 0.0) {
                return Err("custom weights must be non-negative".into());
            }
            Ok(Metric::Custom { wg, ws })
        }
    }
}

/// What a command printed and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: EXIT_INPUT,
        }
    }
}

/// Registry and matrix from one load.
pub struct Workspace {
    pub registry: RelationRegistry,
    pub matrix: RelationshipMatrix,
    pub load_report: ConflictReport,
}

impl Workspace {
    pub fn load(edges: &Path, registry: Option<&Path>) -> Result<Self, String> {
        let registry = match registry {
            Some(p) => RelationRegistry::load(p).map_err(|e| format!("{}: {e}", p.display()))?,
            None => RelationRegistry::builtin(),
        };
        let (matrix, load_report) = ingest::load_edges(edges, &registry).map_err(|e| match e {
            IngestError::Parse { .. } => format!("{}: {e}", edges.display()),
            IngestError::Io(io) => format!("{}: {io}", edges.display()),
        })?;
        Ok(Workspace {
            registry,
            matrix,
            load_report,
        })
    }

    fn person(&self, id: &str) -> Result<usize, String> {
        self.matrix
            .index_of(id)
            .ok_or_else(|| format!("unknown person id {id:?}"))
    }
}

/// Parse `args` (program name first) and run the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_INPUT,
                }
            } else {
                Outcome::ok(rendered)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let registry = cli.registry.as_deref();
    let result = match &cli.command {
        Command::Families { edges, format } => {
            Workspace::load(edges, registry).and_then(|ws| cmd_families(&ws, *format))
        }
        Command::Path(args) => Workspace::load(&args.edges, registry).and_then(|ws| cmd_path(&ws, args)),
        Command::Power(args) => Workspace::load(&args.edges, registry).and_then(|ws| cmd_power(&ws, args)),
        Command::Network { edges, dot, json } => {
            Workspace::load(edges, registry).and_then(|ws| cmd_network(&ws, dot.as_deref(), json.as_deref()))
        }
        Command::Check { edges, format } => Workspace::load(edges, registry).and_then(|ws| cmd_check(&ws, *format)),
    };
    result.unwrap_or_else(Outcome::input_error)
}

#[derive(Serialize)]
struct FamiliesJson<'a> {
    schema: u32,
    families: Vec<Vec<&'a str>>,
}

pub fn cmd_families(ws: &Workspace, format: Format) -> Result<Outcome, String> {
    let (sym, _) = ingest::symmetrize(&ws.matrix, &ws.registry).map_err(|e| e.to_string())?;
    let partition = kingraph::families(&sym);
    let t = &ws.matrix;
    let out = match format {
        Format::Text => {
            let mut out = match partition.len() {
                1 => "1 family\n".to_string(),
                k => format!("{k} families\n"),
            };
            for (i, fam) in partition.families.iter().enumerate() {
                let ids: Vec<&str> = fam.iter().map(|&p| t.id(p)).collect();
                let _ = writeln!(out, "family {} ({} persons): {}", i + 1, fam.len(), ids.join(" "));
            }
            out
        }
        Format::Json => {
            let doc = FamiliesJson {
                schema: JSON_SCHEMA,
                families: partition
                    .families
                    .iter()
                    .map(|f| f.iter().map(|&p| t.id(p)).collect())
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("families serialize") + "\n"
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_path(ws: &Workspace, args: &PathArgs) -> Result<Outcome, String> {
    let x = ws.person(&args.from)?;
    let y = ws.person(&args.to)?;
    if x == y {
        return Err("source and target must be different persons".into());
    }
    let reg = &ws.registry;
    let (sym, _) = ingest::symmetrize(&ws.matrix, reg).map_err(|e| e.to_string())?;
    let m: CountMatrix<u64> = rmatrix::binarize(&sym);
    if !rmatrix::are_relatives(&m, x, y).map_err(|e| e.to_string())? {
        return Ok(Outcome::with_code("NOT RELATED\n".into(), EXIT_NEGATIVE));
    }

    let (record, cost) = match &args.metric {
        Some(metric) => {
            let g = KinGraph::new(&ws.matrix, reg).map_err(|e| e.to_string())?;
            match kingraph::weighted_distance(&g, x, y, metric).map_err(|e| e.to_string())? {
                Some((cost, rec)) => (rec, Some(cost)),
                None => return Ok(Outcome::with_code("NOT RELATED\n".into(), EXIT_NEGATIVE)),
            }
        }
        None => match rmatrix::smallest_power_hit(&m, x, y, args.max_rho).map_err(|e| e.to_string())? {
            Some(hit) => (sym.label_walk(&hit.persons).expect("walk follows occupied cells"), None),
            None => {
                let bound = args.max_rho.unwrap_or(m.n().saturating_sub(1));
                return Ok(Outcome::with_code(
                    format!("NOT FOUND within {bound} steps\n"),
                    EXIT_NEGATIVE,
                ));
            }
        },
    };

    let t = &sym;
    let mut out = record.render_with(|p| t.id(p).to_string());
    out.push('\n');
    let _ = writeln!(out, "hops: {}", record.hops());
    let _ = writeln!(out, "net g-len: {}", record.net_glen(reg).map_err(|e| e.to_string())?);
    let _ = writeln!(out, "net s-len: {}", record.net_slen(reg).map_err(|e| e.to_string())?);
    if let Some(cost) = cost {
        let _ = writeln!(out, "cost: {cost}");
    }
    for (w, step) in record.persons().windows(2).zip(record.steps()) {
        if !step.alternatives.is_empty() {
            let alts: Vec<&str> = step.alternatives.iter().map(|c| c.as_str()).collect();
            let _ = writeln!(
                out,
                "note: {} -> {} {} could also be {}",
                t.id(w[0]),
                t.id(w[1]),
                step.code,
                alts.join(", ")
            );
        }
    }
    Ok(Outcome::ok(out))
}

/// Text dump of the `rho`-th power. Deterministic for any thread count.
pub fn render_power(t: &RelationshipMatrix, rho: usize, record_paths: bool, cap: usize) -> Result<String, String> {
    let m: CountMatrix<u64> = rmatrix::binarize(t);
    let mp = rmatrix::pow_count(&m, rho).map_err(|e| e.to_string())?;
    let paths = if record_paths {
        let p = PathMatrix::from_relationship(t);
        Some(rmatrix::pow_paths(&p, rho, cap).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut out = format!("M^{rho}: {} persons, {} nonzero cells\n", t.n(), mp.nnz());
    if mp.is_saturated() {
        out.push_str("saturated: some counts are lower bounds\n");
    }
    for ((x, y), c) in mp.entries() {
        let _ = writeln!(out, "({},{}): {c}", t.id(x), t.id(y));
        if let Some(p) = &paths {
            let recs = p.get(x, y);
            for r in recs {
                let _ = writeln!(out, "  {}", r.render_with(|i| t.id(i).to_string()));
            }
            let shown = recs.len() as u64;
            if c > shown {
                let _ = writeln!(out, "  (+{} more)", c - shown);
            }
        }
    }
    Ok(out)
}

pub fn cmd_power(ws: &Workspace, args: &PowerArgs) -> Result<Outcome, String> {
    let rho = usize::try_from(args.rho).map_err(|e| e.to_string())?;
    let cap = usize::try_from(args.cap).map_err(|e| e.to_string())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| e.to_string())?;
    let out = pool.install(|| render_power(&ws.matrix, rho, args.record_paths, cap))?;
    Ok(Outcome::ok(out))
}

pub fn cmd_network(ws: &Workspace, dot: Option<&Path>, json: Option<&Path>) -> Result<Outcome, String> {
    let net = netbuilder::build_network(&ws.matrix, &ws.registry).map_err(|e| e.to_string())?;
    let t = &ws.matrix;
    let dot_text = export::to_dot(&net, t);
    let mut out = String::new();
    if let Some(p) = dot {
        std::fs::write(p, &dot_text).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    if let Some(p) = json {
        std::fs::write(p, export::to_json(&net, t)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    if dot.is_none() && json.is_none() {
        out.push_str(&dot_text);
    } else {
        let _ = writeln!(
            out,
            "{} persons, {} edges, {} generations, {} report entries",
            net.persons.len(),
            net.edges.len(),
            net.by_level().len(),
            net.conflicts.len()
        );
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct CheckJson {
    schema: u32,
    conflicts: serde_json::Value,
}

pub fn cmd_check(ws: &Workspace, format: Format) -> Result<Outcome, String> {
    let reg = &ws.registry;
    let mut report = netbuilder::check_consistency(&ws.matrix, reg).map_err(|e| e.to_string())?;
    let net = netbuilder::build_network(&ws.matrix, reg).map_err(|e| e.to_string())?;
    for c in net.conflicts.of_kind(ConflictKind::GenerationConflict) {
        report.push(c.kind, c.persons, c.codes.clone(), c.detail.clone());
    }
    let out = match format {
        Format::Text if report.is_empty() => "no conflicts\n".to_string(),
        Format::Text => report.render_text(&ws.matrix),
        Format::Json => {
            let doc = CheckJson {
                schema: JSON_SCHEMA,
                conflicts: report.to_json(&ws.matrix),
            };
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
    };
    let code = if report.has_conflicts() {
        EXIT_CONFLICTS
    } else {
        EXIT_OK
    };
    Ok(Outcome::with_code(out, code))
}
