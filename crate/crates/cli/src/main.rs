//! `unigraph`: batch front end for constructions, checks, bounds and sweeps.
//!
//! Exit codes: 0 success, 1 verified-negative result, 2 usage error,
//! 3 budget exhausted or regime infeasible.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use unigraph::bounds::bound_report;
use unigraph::constructor::{build, BuildConfig, ConstantOverrides, ConstructionReport, Mode};
use unigraph::embedder::{embed_subgraph_oracle, embed_via_full_vertices, Embedding};
use unigraph::io::{read_graph, to_graph6, write_graph};
use unigraph::oracle::{exact_f, exact_g, is_universal, spot_check_universal, MAX_ISO_ORDER};
use unigraph::random_models::SampleBudget;
use unigraph::{Error, Graph, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "unigraph", version, about = "Universal graphs for bounded edge counts")]
struct Cli {
    /// Worker threads; defaults to UNIGRAPH_THREADS, then the core count.
    #[arg(long, global = true, env = "UNIGRAPH_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an (n, m)-universal graph and report how.
    Construct(ConstructArgs),
    /// Check a host graph file for (n, m)-universality.
    Verify(VerifyArgs),
    /// Embed a pattern graph file into a host graph file.
    Embed(EmbedArgs),
    /// Lower and upper bounds on g(n, m), for one point or a table.
    Bounds(BoundsArgs),
    /// Exact values by exhaustive search.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run construct or bounds over an (n, m) grid, one line per cell.
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ModeArg {
    Paper,
    Scaled,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Scaled => Mode::Scaled,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct BudgetArgs {
    /// Sampling attempts per random block.
    #[arg(long = "budget-tries", default_value_t = 100)]
    tries: usize,
    /// Randomized refutation trials when the exact domination check is too big.
    #[arg(long = "budget-refutation", default_value_t = 10_000)]
    refutation: usize,
    /// Probe cap for the exact domination check.
    #[arg(long = "budget-exact-work", default_value_t = 2_000_000)]
    exact_work: u64,
    /// Targets sampled when verifying hosts above the exhaustive order.
    #[arg(long = "budget-verify-samples", default_value_t = 500)]
    verify_samples: usize,
    /// Largest order verified against every isomorphism class.
    #[arg(long = "budget-exhaustive-n", default_value_t = 8)]
    exhaustive_n: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
struct BuildArgs {
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Scaled)]
    mode: ModeArg,
    /// Replace a construction constant, e.g. `t_div=1`. Repeatable.
    #[arg(long = "override", value_name = "K=V")]
    overrides: Vec<String>,
    #[command(flatten)]
    budget: BudgetArgs,
}

impl BuildArgs {
    fn config(&self) -> anyhow::Result<BuildConfig> {
        let mut cfg = BuildConfig::new(self.mode.into(), self.epsilon, self.seed);
        for o in &self.overrides {
            cfg.overrides.apply(o)?;
        }
        cfg.sample = SampleBudget {
            max_tries: self.budget.tries,
            refutation_trials: self.budget.refutation,
            exact_work_cap: self.budget.exact_work,
        };
        cfg.verify_samples = self.budget.verify_samples;
        cfg.exhaustive_max_n = self.budget.exhaustive_n.min(MAX_ISO_ORDER);
        Ok(cfg)
    }
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[command(flatten)]
    build: BuildArgs,
    /// Write the graph here (`.g6` graph6, otherwise edge list).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample this many targets instead of checking every class.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Strategy {
    /// Complete backtracking search.
    Oracle,
    /// Peel the pattern onto the host's full-degree vertices, search the rest.
    Constructive,
}

#[derive(Args, Debug, Serialize)]
struct EmbedArgs {
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum, default_value_t = Strategy::Oracle)]
    strategy: Strategy,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct BoundsArgs {
    #[arg(long, required_unless_present = "table")]
    n: Option<u64>,
    /// Edge count; may exceed 64 bits.
    #[arg(long, required_unless_present = "table")]
    m: Option<u128>,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    /// Log-spaced table over n in [n-min, n-max] and m in [1, C(n,2)].
    #[arg(long)]
    table: bool,
    #[arg(long, default_value_t = 1000)]
    n_min: u64,
    #[arg(long, default_value_t = 1_000_000_000)]
    n_max: u64,
    #[arg(long, default_value_t = 7)]
    n_points: usize,
    #[arg(long, default_value_t = 9)]
    m_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
enum OracleCommand {
    /// Fewest edges of an n-vertex graph containing every m-edge graph.
    ExactG {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Write the witness here; printed as graph6 otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Most edges of an n-vertex graph contained in every n-vertex graph
    /// with e edges.
    ExactF {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Task {
    Construct,
    Bounds,
}

#[derive(Args, Debug, Serialize)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = Task::Construct)]
    task: Task,
    /// `FROM:TO[:STEP]`, inclusive.
    #[arg(long)]
    n_range: String,
    /// `FROM:TO[:STEP]`, inclusive; cells with m > C(n,2) are skipped.
    #[arg(long)]
    m_range: String,
    #[command(flatten)]
    build: BuildArgs,
    /// JSON lines by default; CSV writes one row per cell.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// How a completed run maps to exit codes 0, 1 and 3.
#[derive(Debug)]
enum Outcome {
    Ok,
    Negative,
    Infeasible,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::BudgetExhausted { .. }
            | Error::RegimeInfeasible(_)
            | Error::ExactCheckInfeasible { .. }
            | Error::EnumerationTooLarge { .. }
            | Error::RecursionDepthExceeded(_),
        ) => 3,
        _ => 2,
    }
}

fn sink(out: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(out: &mut dyn Write, command: &str, config: &impl Serialize, result: Value) -> anyhow::Result<()> {
    let doc = json!({ "command": command, "config": config, "result": result });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn csv_header(out: &mut dyn Write, command: &str, config: &impl Serialize) -> anyhow::Result<()> {
    writeln!(out, "# {command} {}", serde_json::to_string(config)?)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Ok(Outcome::Infeasible) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Construct(a) => construct(&a),
        Command::Verify(a) => verify(&a),
        Command::Embed(a) => embed(&a),
        Command::Bounds(a) => bounds(&a),
        Command::Oracle(o) => oracle(&o),
        Command::Sweep(a) => sweep(&a),
    }
}

#[derive(Serialize)]
struct EffectiveBuild<'a, A: Serialize> {
    #[serde(flatten)]
    args: &'a A,
    constants: &'a ConstantOverrides,
}

fn construct(a: &ConstructArgs) -> anyhow::Result<Outcome> {
    let cfg = a.build.config()?;
    let report = build(a.n, a.m, &cfg)?;
    if let Some(p) = &a.out {
        write_graph(p, &report.graph)?;
    }
    let config = EffectiveBuild { args: a, constants: &cfg.overrides };
    let mut out = sink(None)?;
    match a.format {
        Format::Json => emit_json(&mut *out, "construct", &config, serde_json::to_value(&report)?)?,
        Format::Csv => {
            csv_header(&mut *out, "construct", &config)?;
            writeln!(out, "{CONSTRUCT_CSV_HEADER}")?;
            writeln!(out, "{}", construct_csv_row(&report))?;
        }
    }
    out.flush()?;
    Ok(construct_outcome(&report))
}

/// A failed verification outranks a fallback build.
fn construct_outcome(r: &ConstructionReport) -> Outcome {
    match &r.verification {
        Some(v) if !v.verdict => Outcome::Negative,
        _ if !r.feasible => Outcome::Infeasible,
        _ => Outcome::Ok,
    }
}

const CONSTRUCT_CSV_HEADER: &str = "n,m,regime,edges,missing_edges,feasible,verified,method,cert,reason";

fn construct_csv_row(r: &ConstructionReport) -> String {
    let v = r.verification.as_ref();
    format!(
        "{},{},{},{},{},{},{},{},{},\"{}\"",
        r.n,
        r.m,
        r.regime,
        r.edge_count,
        r.missing_edges,
        r.feasible,
        v.map(|v| v.verdict).unwrap_or(false),
        v.map(|v| v.method.as_str()).unwrap_or("none"),
        r.cert,
        r.reason.as_deref().unwrap_or("").replace('"', "'"),
    )
}

fn verify(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let host = read_graph(&a.host)?;
    if host.n() != a.n {
        return Err(Error::SizeMismatch(format!("host has {} vertices, --n is {}", host.n(), a.n)).into());
    }
    let (method, w) = match a.samples {
        Some(s) => (format!("spot-check(samples={s})"), spot_check_universal(&host, a.m, s, a.seed)?),
        None => ("exhaustive".to_string(), is_universal(&host, a.n, a.m)?),
    };
    let mut result = serde_json::to_value(&w)?;
    result["method"] = json!(method);
    if let Some(t) = &w.failing_target {
        result["failing_target_edges"] = json!(t.edges().collect::<Vec<_>>());
    }
    let mut out = sink(a.out.as_deref())?;
    emit_json(&mut *out, "verify", a, result)?;
    out.flush()?;
    Ok(if w.verdict { Outcome::Ok } else { Outcome::Negative })
}

/// Moves the host's full-degree vertices to the top labels and embeds with
/// the full-vertex scheme, searching the remainder exhaustively.
fn embed_constructive(h: &Graph, g: &Graph) -> anyhow::Result<Option<Embedding>> {
    let n = g.n();
    if h.n() > n {
        return Err(Error::PatternTooLarge { pattern: h.n(), host: n }.into());
    }
    let full: Vec<usize> = (0..n).filter(|&v| g.is_full_vertex(v)).collect();
    let mut order: Vec<usize> = (0..n).filter(|&v| !g.is_full_vertex(v)).collect();
    let k = order.len();
    order.extend(&full);
    // perm[old] = new
    let mut perm = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        perm[old] = new;
    }
    let relabelled = g.permuted(&perm);
    let inner = relabelled.induced_subgraph(&(0..k).collect::<VertexSet>())?;
    let padded = h.add_isolated_vertices(n - h.n());
    let e = match embed_via_full_vertices(&padded, k, &inner, &mut |p, q| embed_subgraph_oracle(p, q)) {
        Ok(e) => e,
        Err(Error::InnerEmbeddingFailed(_)) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let images = (0..h.n()).map(|v| order[e.image(v)]).collect();
    let e = Embedding::new(images);
    e.validate(h, g)?;
    Ok(Some(e))
}

fn embed(a: &EmbedArgs) -> anyhow::Result<Outcome> {
    let h = read_graph(&a.pattern)?;
    let g = read_graph(&a.host)?;
    let found = match a.strategy {
        Strategy::Oracle => embed_subgraph_oracle(&h, &g)?,
        Strategy::Constructive => embed_constructive(&h, &g)?,
    };
    if let Some(e) = &found {
        e.validate(&h, &g)?;
    }
    let result = json!({
        "found": found.is_some(),
        "embedding": found.as_ref().map(|e| e.as_slice().to_vec()),
    });
    let mut out = sink(a.out.as_deref())?;
    emit_json(&mut *out, "embed", a, result)?;
    out.flush()?;
    Ok(if found.is_some() { Outcome::Ok } else { Outcome::Negative })
}

fn log_spaced(lo: f64, hi: f64, points: usize) -> Vec<u128> {
    if points <= 1 || hi <= lo {
        return vec![lo.round() as u128];
    }
    let mut v: Vec<u128> = (0..points)
        .map(|i| {
            let x = lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (points - 1) as f64;
            x.exp().round() as u128
        })
        .collect();
    v.dedup();
    v
}

const BOUNDS_CSV_HEADER: &str = "n,m,epsilon,regime,lower,upper,lower_fraction,upper_fraction,consistent";

fn bounds_row(n: u64, m: u128, eps: f64) -> anyhow::Result<(String, Value)> {
    let r = bound_report(n, m, eps)?;
    let row = format!(
        "{},{},{},{},{:.6e},{:.6e},{:.6},{:.6},{}",
        r.n,
        r.m,
        r.epsilon,
        r.regime,
        r.lower_enclosure.lo,
        r.upper_enclosure.hi,
        r.lower_fraction(),
        r.upper_fraction(),
        r.consistent()
    );
    Ok((row, serde_json::to_value(&r)?))
}

fn bounds(a: &BoundsArgs) -> anyhow::Result<Outcome> {
    let cells: Vec<(u64, u128)> = if a.table {
        if a.n_min < 2 || a.n_max < a.n_min {
            return Err(Error::InvalidArgument("need 2 <= n-min <= n-max".into()).into());
        }
        log_spaced(a.n_min as f64, a.n_max as f64, a.n_points)
            .into_iter()
            .flat_map(|n| {
                let total = n * (n - 1) / 2;
                log_spaced(1.0, total as f64, a.m_points)
                    .into_iter()
                    .map(move |m| (n as u64, m.min(total)))
            })
            .collect()
    } else {
        vec![(a.n.unwrap(), a.m.unwrap())]
    };
    let rows: Vec<(String, Value)> = cells
        .par_iter()
        .map(|&(n, m)| bounds_row(n, m, a.epsilon))
        .collect::<anyhow::Result<_>>()?;
    let consistent = rows.iter().all(|(_, v)| v["lower"].as_f64() <= v["upper"].as_f64());
    let mut out = sink(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            csv_header(&mut *out, "bounds", a)?;
            writeln!(out, "{BOUNDS_CSV_HEADER}")?;
            for (row, _) in &rows {
                writeln!(out, "{row}")?;
            }
        }
        Format::Json => {
            let values: Vec<Value> = rows.into_iter().map(|(_, v)| v).collect();
            let result = if a.table { Value::Array(values) } else { values.into_iter().next().unwrap() };
            emit_json(&mut *out, "bounds", a, result)?;
        }
    }
    out.flush()?;
    Ok(if consistent { Outcome::Ok } else { Outcome::Negative })
}

fn oracle(cmd: &OracleCommand) -> anyhow::Result<Outcome> {
    let mut out = sink(None)?;
    match cmd {
        OracleCommand::ExactG { n, m, out: path, format } => {
            let (value, witness) = exact_g(*n, *m)?;
            if let Some(p) = path {
                write_graph(p, &witness)?;
            }
            match format {
                Some(Format::Json) => emit_json(
                    &mut *out,
                    "oracle exact-g",
                    cmd,
                    json!({ "value": value, "witness": to_graph6(&witness) }),
                )?,
                Some(Format::Csv) => writeln!(out, "n,m,g\n{n},{m},{value}")?,
                None => {
                    writeln!(out, "{value}")?;
                    if path.is_none() {
                        writeln!(out, "{}", to_graph6(&witness))?;
                    }
                }
            }
        }
        OracleCommand::ExactF { n, e, format } => {
            let value = exact_f(*n, *e)?;
            match format {
                Some(Format::Json) => emit_json(&mut *out, "oracle exact-f", cmd, json!({ "value": value }))?,
                Some(Format::Csv) => writeln!(out, "n,e,f\n{n},{e},{value}")?,
                None => writeln!(out, "{value}")?,
            }
        }
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

fn parse_range(s: &str) -> anyhow::Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.trim().parse::<usize>().map_err(|e| anyhow!(Error::Parse(format!("range `{s}`: {e}"))));
    let (from, to, step) = match parts.as_slice() {
        [a] => (num(a)?, num(a)?, 1),
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, c] => (num(a)?, num(b)?, num(c)?),
        _ => return Err(Error::Parse(format!("range `{s}` is not FROM:TO[:STEP]")).into()),
    };
    if step == 0 || to < from {
        return Err(Error::Parse(format!("range `{s}` is empty or has step 0")).into());
    }
    Ok((from..=to).step_by(step).collect())
}

fn sweep(a: &SweepArgs) -> anyhow::Result<Outcome> {
    let cfg = a.build.config()?;
    let ms = parse_range(&a.m_range)?;
    let cells: Vec<(usize, usize)> = parse_range(&a.n_range)?
        .into_iter()
        .flat_map(|n| {
            ms.iter()
                .copied()
                .filter(move |&m| m <= n * n.saturating_sub(1) / 2)
                .map(move |m| (n, m))
        })
        .collect();
    let config = EffectiveBuild { args: a, constants: &cfg.overrides };
    let mut out = sink(a.out.as_deref())?;
    match a.format {
        Format::Json => writeln!(out, "{}", json!({ "command": "sweep", "config": config }))?,
        Format::Csv => {
            csv_header(&mut *out, "sweep", &config)?;
            let header = match a.task {
                Task::Construct => format!("{CONSTRUCT_CSV_HEADER},error"),
                Task::Bounds => format!("{BOUNDS_CSV_HEADER},error"),
            };
            writeln!(out, "{header}")?;
        }
    }
    out.flush()?;
    let mut negative = false;
    let chunk = rayon::current_num_threads().max(1) * 2;
    for batch in cells.chunks(chunk) {
        let lines: Vec<(String, bool)> = batch
            .par_iter()
            .map(|&(n, m)| sweep_cell(a, &cfg, n, m))
            .collect();
        for (line, neg) in lines {
            negative |= neg;
            writeln!(out, "{line}")?;
        }
        out.flush()?;
    }
    Ok(if negative { Outcome::Negative } else { Outcome::Ok })
}

/// One output line, and whether the cell is a negative result.
fn sweep_cell(a: &SweepArgs, cfg: &BuildConfig, n: usize, m: usize) -> (String, bool) {
    match a.task {
        Task::Construct => match build(n, m, cfg) {
            Ok(r) => {
                let neg = matches!(construct_outcome(&r), Outcome::Negative);
                let line = match a.format {
                    Format::Csv => format!("{},", construct_csv_row(&r)),
                    Format::Json => {
                        let v = r.verification.as_ref();
                        json!({
                            "n": n, "m": m, "status": "ok",
                            "regime": r.regime, "edges": r.edge_count,
                            "missing_edges": r.missing_edges, "feasible": r.feasible,
                            "reason": r.reason, "cert": r.cert, "depth": r.depth,
                            "verified": v.map(|v| v.verdict), "method": v.map(|v| v.method.clone()),
                            "graph6": to_graph6(&r.graph),
                        })
                        .to_string()
                    }
                };
                (line, neg)
            }
            Err(e) => (error_line(a.format, n, m, &e.to_string(), 9), false),
        },
        Task::Bounds => match bounds_row(n as u64, m as u128, cfg.epsilon) {
            Ok((row, v)) => {
                let neg = v["lower"].as_f64() > v["upper"].as_f64();
                let line = match a.format {
                    Format::Csv => format!("{row},"),
                    Format::Json => {
                        let mut v = v;
                        v["status"] = json!("ok");
                        v.to_string()
                    }
                };
                (line, neg)
            }
            Err(e) => (error_line(a.format, n, m, &e.to_string(), 7), false),
        },
    }
}

fn error_line(format: Format, n: usize, m: usize, msg: &str, blanks: usize) -> String {
    match format {
        Format::Json => json!({ "n": n, "m": m, "status": "error", "error": msg }).to_string(),
        Format::Csv => format!("{n},{m}{}\"{}\"", ",".repeat(blanks), msg.replace('"', "'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4:10:3").unwrap(), vec![4, 7, 10]);
        assert_eq!(parse_range("5").unwrap(), vec![5]);
        assert!(parse_range("5:4").is_err());
        assert!(parse_range("1:4:0").is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_spaced(1000.0, 1e9, 7);
        assert_eq!(g.first(), Some(&1000));
        assert_eq!(g.last(), Some(&1_000_000_000));
        assert_eq!(g.len(), 7);
    }

    #[test]
    fn regime_of_spec_row() {
        use unigraph::bounds::Regime;
        let (row, _) = bounds_row(1_000_000, 20_000_000, 0.25).unwrap();
        assert!(row.contains(&Regime::FirstRegime.to_string()));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
