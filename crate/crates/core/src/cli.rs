//! Command-line front end. [`run`] works in-process and returns the text and
//! exit code instead of printing, so it is directly testable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{
    aggregate_bounds, delta1_results, eta, max_welfare_bounds, tree_bounds, tree_welfare_bounds,
    welfare_profile_bounds,
};
use crate::error::{Error, Result};
use crate::game::{
    construct_ice, enumerate_equilibria, make_benefit, max_aggregate_play, nash_report, welfare,
    EffortProfile, GameConfig,
};
use crate::graph::{
    clique_number, independence_number, tree_structure, unique_max_independent_set, Graph,
    GraphDocument, NodeSet, TreeKind,
};
use crate::sweep::{run_sweep, SweepSpec, DEFAULT_BUDGET};
use crate::{DEFAULT_CAP, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Graph invariants: degrees, alpha, omega, eta, tree structure.
    Info,
    /// Every Nash equilibrium at --delta.
    Enumerate,
    /// Maximum aggregate play and its maximizers.
    MaxPlay,
    /// Aggregate-play bounds.
    Bounds,
    /// Welfare of every equilibrium and welfare bounds (needs --sigma-b).
    Welfare,
    /// Equilibrium supports over a delta grid.
    Sweep,
    /// Check a profile (--profile) for the equilibrium conditions.
    Verify,
    /// Independent clique equilibrium around a maximum independent set.
    Ice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "netgame",
    version,
    about = "Equilibria and bounds for public-goods games on networks"
)]
pub struct AnalysisRequest {
    #[arg(value_enum)]
    pub command: Command,
    /// Edge-list or JSON graph file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub e_star: f64,
    #[arg(long, default_value_t = 1.0)]
    pub cost: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Target concavity of the benefit function, in (0, 1).
    #[arg(long)]
    pub sigma_b: Option<f64>,
    /// Benefit at e*; defaults to cost * e*.
    #[arg(long)]
    pub b0: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub delta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta_max: f64,
    #[arg(long, default_value_t = 96)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest graph for exhaustive enumeration.
    #[arg(long, env = "NETGAME_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Effort profile for `verify`: JSON array or whitespace-separated numbers.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Maximum independent set for `ice`, comma-separated (default: the
    /// lexicographically smallest one).
    #[arg(long)]
    pub mis: Option<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match AnalysisRequest::try_parse_from(args) {
        Ok(req) => execute(&req),
        Err(err) => {
            let text = err.render().to_string();
            if err.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            }
        }
    }
}

/// Runs a parsed request.
pub fn execute(req: &AnalysisRequest) -> Outcome {
    match dispatch(req) {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(err) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: exit_code(&err),
        },
    }
}

fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Core(Error::CapExceeded { .. } | Error::BudgetExceeded { .. }) => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn dispatch(req: &AnalysisRequest) -> CliResult<(String, i32)> {
    let doc = GraphDocument::parse(&read(&req.graph)?)?;
    let g = &doc.graph;
    match req.command {
        Command::Info => Ok((info(req, g)?, EXIT_OK)),
        Command::Enumerate => Ok((enumerate(req, g)?, EXIT_OK)),
        Command::MaxPlay => Ok((max_play(req, g)?, EXIT_OK)),
        Command::Bounds => Ok((bounds(req, g)?, EXIT_OK)),
        Command::Welfare => Ok((welfare_cmd(req, g, doc.weights.as_deref())?, EXIT_OK)),
        Command::Sweep => Ok((sweep(req, g)?, EXIT_OK)),
        Command::Verify => verify(req, g),
        Command::Ice => ice(req, g),
    }
}

fn config(req: &AnalysisRequest) -> CliResult<GameConfig> {
    let delta = req
        .delta
        .ok_or_else(|| CliError::Usage(format!("{} needs --delta", command_name(req.command))))?;
    Ok(GameConfig::new(delta, req.e_star, req.cost, req.tol)?)
}

fn command_name(c: Command) -> String {
    c.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn support_cell(s: &NodeSet) -> String {
    s.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_text(header: &[String], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn strings<const N: usize>(items: [&str; N]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn info(req: &AnalysisRequest, g: &Graph) -> CliResult<String> {
    let (alpha, witness) = independence_number(g);
    let unique = unique_max_independent_set(g).is_some();
    let omega = clique_number(g);
    let eta = eta(g);
    let tree = tree_structure(g);
    match req.format {
        Format::Json => Ok(to_json(&json!({
            "n": g.n(),
            "m": g.edge_count(),
            "degrees": g.degrees(),
            "alpha": alpha,
            "mis_witness": witness,
            "unique_mis": unique,
            "omega": omega,
            "eta": eta,
            "tree": tree,
        }))),
        Format::Csv => {
            let degrees = g
                .degrees()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let rows = vec![
                vec!["n".into(), g.n().to_string()],
                vec!["m".into(), g.edge_count().to_string()],
                vec!["degrees".into(), degrees],
                vec!["alpha".into(), alpha.to_string()],
                vec!["mis_witness".into(), support_cell(&witness)],
                vec!["unique_mis".into(), unique.to_string()],
                vec!["omega".into(), omega.to_string()],
                vec!["eta".into(), eta.to_string()],
                vec!["tree_kind".into(), tree.kind.to_string()],
                vec!["centers".into(), support_cell(&tree.centers)],
                vec!["branches_m".into(), tree.m.to_string()],
                vec!["branches_listed".into(), tree.m_listed.to_string()],
                vec!["odd_branches_r".into(), tree.r.to_string()],
            ];
            csv_text(&strings(["key", "value"]), rows)
        }
    }
}

fn profile_rows(profiles: &[EffortProfile], tol: f64) -> Vec<serde_json::Value> {
    profiles
        .iter()
        .map(|x| json!({"support": x.support(tol), "x": x, "total": x.total()}))
        .collect()
}

fn profiles_csv(profiles: &[EffortProfile], n: usize, tol: f64) -> CliResult<String> {
    let mut header = strings(["index", "support", "total"]);
    header.extend((0..n).map(|i| format!("x{i}")));
    let rows = profiles
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let mut r = vec![
                k.to_string(),
                support_cell(&x.support(tol)),
                x.total().to_string(),
            ];
            r.extend(x.as_slice().iter().map(|v| v.to_string()));
            r
        })
        .collect();
    csv_text(&header, rows)
}

fn enumerate(req: &AnalysisRequest, g: &Graph) -> CliResult<String> {
    let cfg = config(req)?;
    let eq = enumerate_equilibria(g, &cfg, req.cap)?;
    let tol = cfg.tol * cfg.e_star;
    match req.format {
        Format::Json => Ok(to_json(&json!({
            "config": cfg,
            "count": eq.len(),
            "equilibria": profile_rows(&eq, tol),
        }))),
        Format::Csv => profiles_csv(&eq, g.n(), tol),
    }
}

fn max_play(req: &AnalysisRequest, g: &Graph) -> CliResult<String> {
    let cfg = config(req)?;
    let best = max_aggregate_play(g, &cfg, req.cap)?;
    match req.format {
        Format::Json => Ok(to_json(&json!({"config": cfg, "max_play": best}))),
        Format::Csv => profiles_csv(&best.argmax, g.n(), cfg.tol * cfg.e_star),
    }
}

fn report_rows(name: &str, r: &crate::bounds::BoundsReport) -> Vec<String> {
    vec![
        name.to_string(),
        r.lower.to_string(),
        r.upper.to_string(),
        r.exact.map(|v| v.to_string()).unwrap_or_default(),
        r.applicable.to_string(),
        r.theorem_tags.join(" "),
    ]
}

fn bounds_csv(reports: &[(&str, &crate::bounds::BoundsReport)]) -> CliResult<String> {
    csv_text(
        &strings(["report", "lower", "upper", "exact", "applicable", "tags"]),
        reports.iter().map(|(n, r)| report_rows(n, r)).collect(),
    )
}

fn is_tree(g: &Graph) -> bool {
    tree_structure(g).kind != TreeKind::NotATree
}

fn bounds(req: &AnalysisRequest, g: &Graph) -> CliResult<String> {
    let cfg = config(req)?;
    let aggregate = if cfg.delta < 1.0 {
        Some(aggregate_bounds(g, cfg.delta, cfg.e_star)?)
    } else {
        None
    };
    let tree = if is_tree(g) {
        Some(tree_bounds(g, cfg.delta, cfg.e_star)?)
    } else {
        None
    };
    match req.format {
        Format::Json => Ok(to_json(&json!({
            "config": cfg,
            "aggregate": aggregate,
            "tree": tree,
        }))),
        Format::Csv => {
            let mut list = Vec::new();
            if let Some(r) = &aggregate {
                list.push(("aggregate", r));
            }
            if let Some(r) = &tree {
                list.push(("tree", r));
            }
            bounds_csv(&list)
        }
    }
}

fn welfare_cmd(req: &AnalysisRequest, g: &Graph, weights: Option<&[f64]>) -> CliResult<String> {
    let cfg = config(req)?;
    let sigma = req
        .sigma_b
        .ok_or_else(|| CliError::Usage("welfare needs --sigma-b".into()))?;
    let b0 = req.b0.unwrap_or(cfg.cost * cfg.e_star);
    let spec = make_benefit(&cfg, g.n(), sigma, b0)?;
    let eq = enumerate_equilibria(g, &cfg, req.cap)?;
    let per_profile: Vec<_> = eq
        .iter()
        .map(|x| -> Result<_> {
            Ok(json!({
                "x": x,
                "total": x.total(),
                "welfare": welfare(g, &cfg, &spec, x),
                "bounds": welfare_profile_bounds(g, &cfg, &spec, x)?,
            }))
        })
        .collect::<Result<_>>()?;
    let max_bounds = max_welfare_bounds(g, &cfg, &spec, req.cap)?;
    let tree = match tree_structure(g).kind {
        TreeKind::Star | TreeKind::Starlike | TreeKind::GeneralTree => {
            Some(tree_welfare_bounds(g, &cfg, &spec)?)
        }
        _ => None,
    };
    let delta1 = if cfg.delta == 1.0 {
        Some(delta1_results(g, weights, &cfg, &spec)?)
    } else {
        None
    };
    let best = eq
        .iter()
        .map(|x| welfare(g, &cfg, &spec, x))
        .fold(f64::NEG_INFINITY, f64::max);
    match req.format {
        Format::Json => Ok(to_json(&json!({
            "config": cfg,
            "benefit": spec,
            "max_welfare": best,
            "max_welfare_bounds": max_bounds,
            "tree_welfare_bounds": tree,
            "delta1": delta1,
            "equilibria": per_profile,
        }))),
        Format::Csv => {
            let mut header = strings([
                "index",
                "total",
                "welfare",
                "lower",
                "upper",
                "upper_tangent",
            ]);
            header.extend((0..g.n()).map(|i| format!("x{i}")));
            let rows = eq
                .iter()
                .enumerate()
                .map(|(k, x)| -> Result<Vec<String>> {
                    let r = welfare_profile_bounds(g, &cfg, &spec, x)?;
                    let mut row = vec![
                        k.to_string(),
                        x.total().to_string(),
                        welfare(g, &cfg, &spec, x).to_string(),
                        r.lower.to_string(),
                        r.upper.to_string(),
                        r.alternate_value("welfare-profile-upper-tangent")
                            .map(|v| v.to_string())
                            .unwrap_or_default(),
                    ];
                    row.extend(x.as_slice().iter().map(|v| v.to_string()));
                    Ok(row)
                })
                .collect::<Result<_>>()?;
            csv_text(&header, rows)
        }
    }
}

fn sweep(req: &AnalysisRequest, g: &Graph) -> CliResult<String> {
    let base = GameConfig::new(1.0, req.e_star, req.cost, req.tol)?;
    let spec = SweepSpec {
        delta_min: req.delta_min,
        delta_max: req.delta_max,
        steps: req.steps,
    };
    let rows = run_sweep(g, &base, &spec, req.cap, DEFAULT_BUDGET)?;
    match req.format {
        Format::Json => Ok(to_json(&json!({"sweep": spec, "rows": rows}))),
        Format::Csv => {
            let header = strings(["support", "delta_lo", "delta_hi", "play_lo", "play_hi"]);
            let mut out = Vec::new();
            for row in &rows {
                for iv in &row.intervals {
                    out.push(vec![
                        support_cell(&row.support),
                        iv.lo.to_string(),
                        iv.hi.to_string(),
                        iv.play_lo.to_string(),
                        iv.play_hi.to_string(),
                    ]);
                }
            }
            csv_text(&header, out)
        }
    }
}

fn parse_profile(text: &str) -> CliResult<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed)
            .map_err(|e| CliError::Usage(format!("invalid profile JSON: {e}")));
    }
    trimmed
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid profile entry {t:?}")))
        })
        .collect()
}

fn verify(req: &AnalysisRequest, g: &Graph) -> CliResult<(String, i32)> {
    let cfg = config(req)?;
    let path = req
        .profile
        .as_ref()
        .ok_or_else(|| CliError::Usage("verify needs --profile".into()))?;
    let x = EffortProfile::new(parse_profile(&read(path)?)?);
    let report = nash_report(g, &cfg, &x)?;
    let code = if report.ok { EXIT_OK } else { EXIT_REJECTED };
    let text = match req.format {
        Format::Json => to_json(&json!({"config": cfg, "nash": report.ok, "report": report})),
        Format::Csv => {
            let (node, kind, amount) = match report.worst {
                Some(v) => (
                    v.node.to_string(),
                    format!("{:?}", v.kind),
                    v.amount.to_string(),
                ),
                None => Default::default(),
            };
            csv_text(
                &strings(["nash", "worst_node", "worst_kind", "worst_amount"]),
                vec![vec![report.ok.to_string(), node, kind, amount]],
            )?
        }
    };
    Ok((text, code))
}

fn parse_node_set(text: &str) -> CliResult<NodeSet> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid node {t:?} in --mis")))
        })
        .collect()
}

fn ice(req: &AnalysisRequest, g: &Graph) -> CliResult<(String, i32)> {
    let cfg = config(req)?;
    let mis = match &req.mis {
        Some(text) => parse_node_set(text)?,
        None => independence_number(g).1,
    };
    let profile = construct_ice(g, &cfg, &mis)?;
    let code = if profile.is_some() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    };
    let text = match req.format {
        Format::Json => to_json(&json!({
            "config": cfg,
            "mis": mis,
            "ice": profile.as_ref().map(|x| json!({
                "support": x.support(cfg.tol * cfg.e_star),
                "x": x,
                "total": x.total(),
            })),
        })),
        Format::Csv => {
            let list: Vec<EffortProfile> = profile.into_iter().collect();
            profiles_csv(&list, g.n(), cfg.tol * cfg.e_star)?
        }
    };
    Ok((text, code))
}

/// Renders an outcome's stderr with a trailing hint for usage errors.
pub fn describe(outcome: &Outcome) -> String {
    let mut s = outcome.stderr.clone();
    if outcome.code == EXIT_USAGE && !s.contains("--help") {
        let _ = writeln!(s, "run `netgame --help` for usage");
    }
    s
}
