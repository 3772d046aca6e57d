use std::fs::{self, OpenOptions};
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use subspace_graph::graph::{io, GraphError, DEFAULT_MAX_VERTICES};
use subspace_graph::solvers::{self, Budget, Status};
use subspace_graph::{certificate, BuildOptions, CertificateRecord, FieldSpec, IntersectionGraph};
use subspace_graph_cli::config::{self, ConfigError, FieldArgs, FileConfig};
use subspace_graph_cli::{census, report};

const DEFAULT_BUDGET: f64 = 60.0;
const DEFAULT_CENSUS_BUDGET: f64 = 600.0;

/// Intersection graphs of subspaces of GF(q)^n.
#[derive(Parser)]
#[command(name = "qig", version)]
struct Cli {
    /// TOML file with [field] and [limits] tables; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the graph and write the binary cache.
    Build(BuildCmd),
    /// Check every closed-form value against constructions and solvers.
    Verify(VerifyCmd),
    /// Exact or bounded clique numbers for even n.
    Census(CensusCmd),
    /// Run one solver.
    Invariant(InvariantCmd),
    /// Write the graph as JSON and/or DOT.
    Export(ExportCmd),
}

#[derive(Args, Clone, Default)]
struct FieldOpts {
    /// Field characteristic.
    #[arg(short = 'p', long = "prime")]
    p: Option<u32>,
    /// Extension degree.
    #[arg(short = 'e', long = "degree")]
    e: Option<u32>,
    /// Modulus coefficients c0,c1,...,1 (constant term first).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Field order; factored into p^e with the built-in modulus.
    #[arg(short = 'q', long = "order")]
    q: Option<u32>,
}

impl FieldOpts {
    fn args(&self) -> FieldArgs {
        FieldArgs {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
            q: self.q,
        }
    }
}

#[derive(Args, Clone, Default)]
struct BuildLimits {
    /// Refuse graphs with more vertices than this.
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Use the thread pool for graph building and clique search roots.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args, Clone, Default)]
struct SolveLimits {
    /// Wall-clock seconds per solver call.
    #[arg(long)]
    budget: Option<f64>,
    /// Search node cap per solver call.
    #[arg(long)]
    max_nodes: Option<u64>,
}

#[derive(Args)]
struct BuildCmd {
    /// Ambient dimension.
    #[arg(short = 'n')]
    n: usize,
    #[command(flatten)]
    field: FieldOpts,
    #[command(flatten)]
    limits: BuildLimits,
    /// Cache file to write (default qig-n<N>-q<Q>.bin).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Also write the graph as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the graph as DOT here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyCmd {
    /// Ambient dimension; optional when --cache is given.
    #[arg(short = 'n')]
    n: Option<usize>,
    #[command(flatten)]
    field: FieldOpts,
    #[command(flatten)]
    limits: BuildLimits,
    #[command(flatten)]
    solve: SolveLimits,
    /// Read the graph from this cache instead of building it.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CensusCmd {
    /// Dimension or inclusive range (`4`, `4-8`, `4..=8`); odd values are skipped.
    #[arg(short = 'n', value_parser = parse_range)]
    n: RangeInclusive<usize>,
    /// Field characteristic.
    #[arg(short = 'p', long = "prime")]
    p: Option<u32>,
    /// Extension degree.
    #[arg(short = 'e', long = "degree")]
    e: Option<u32>,
    /// Modulus coefficients c0,c1,...,1 (constant term first).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Field orders, comma separated.
    #[arg(short = 'q', long = "order", value_delimiter = ',')]
    q: Vec<u32>,
    #[command(flatten)]
    limits: BuildLimits,
    #[command(flatten)]
    solve: SolveLimits,
    /// JSON-lines file the rows are appended to.
    #[arg(long, default_value = "census.jsonl")]
    json: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum InvariantName {
    Clique,
    Chromatic,
    Domination,
    Independence,
}

#[derive(Args)]
struct InvariantCmd {
    #[arg(value_enum)]
    name: InvariantName,
    /// Ambient dimension; optional when --cache is given.
    #[arg(short = 'n')]
    n: Option<usize>,
    #[command(flatten)]
    field: FieldOpts,
    #[command(flatten)]
    limits: BuildLimits,
    #[command(flatten)]
    solve: SolveLimits,
    /// Read the graph from this cache instead of building it.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the value, bounds and certificate as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ExportCmd {
    /// Ambient dimension; optional when --cache is given.
    #[arg(short = 'n')]
    n: Option<usize>,
    #[command(flatten)]
    field: FieldOpts,
    #[command(flatten)]
    limits: BuildLimits,
    /// Read the graph from this cache instead of building it.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write the graph as JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the graph as DOT here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::VertexCap { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::CacheError> for Failure {
    fn from(e: io::CacheError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected N, A-B or A..=B, got {s:?}");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    Ok(a..=b)
}

struct Ctx {
    file: FileConfig,
}

impl Ctx {
    fn build_options(&self, l: &BuildLimits) -> BuildOptions {
        BuildOptions {
            max_vertices: l
                .max_vertices
                .or(self.file.limits.max_vertices)
                .unwrap_or(DEFAULT_MAX_VERTICES),
            parallel: l.parallel,
            ..BuildOptions::default()
        }
    }

    fn budget(&self, s: &SolveLimits, parallel: bool, default: f64) -> Result<Budget, Failure> {
        let secs = s.budget.or(self.file.limits.budget).unwrap_or(default);
        if !(secs.is_finite() && secs > 0.0) {
            return Err(Failure::Usage(format!(
                "budget must be a positive number of seconds, got {secs}"
            )));
        }
        Ok(Budget {
            time: Some(Duration::from_secs_f64(secs)),
            max_nodes: s.max_nodes.or(self.file.limits.max_nodes),
            parallel,
        })
    }

    fn field(&self, f: &FieldOpts) -> Result<FieldSpec, Failure> {
        Ok(config::resolve_field(&f.args(), &self.file)?)
    }

    fn has_field(&self, f: &FieldOpts) -> bool {
        let s = &self.file.field;
        !f.args().is_empty() || s.p.is_some() || s.e.is_some() || s.modulus.is_some()
    }

    /// Reads `cache` if given, otherwise builds from `n` and the field.
    fn graph(
        &self,
        n: Option<usize>,
        f: &FieldOpts,
        cache: Option<&Path>,
        limits: &BuildLimits,
    ) -> Result<IntersectionGraph, Failure> {
        if let Some(path) = cache {
            let bytes =
                fs::read(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let field = if self.has_field(f) {
                Some(self.field(f)?)
            } else {
                None
            };
            let g = io::read_cache(&bytes, field.as_ref())?;
            if let Some(n) = n.filter(|&n| n != g.n()) {
                return Err(Failure::Usage(format!(
                    "cache holds n = {}, but -n {n} was given",
                    g.n()
                )));
            }
            if g.order() > self.build_options(limits).max_vertices {
                return Err(Failure::Cap(format!(
                    "cached graph has {} vertices, above the cap",
                    g.order()
                )));
            }
            return Ok(g);
        }
        let n = n.ok_or_else(|| Failure::Usage("-n is required when no --cache is given".into()))?;
        let field = self.field(f)?;
        Ok(subspace_graph::build_graph(
            &field,
            n,
            &self.build_options(limits),
        )?)
    }
}

fn print_stats(g: &IntersectionGraph) {
    let s = g.stats();
    let f = g.field();
    println!(
        "n = {}, q = {} (p = {}, e = {}): {} vertices, {} edges, degree {}..{}, connected: {}",
        g.n(),
        f.q(),
        f.p(),
        f.e(),
        s.vertices,
        s.edges,
        s.min_degree,
        s.max_degree,
        s.connected.map_or("-".to_string(), |c| c.to_string())
    );
}

fn cmd_build(ctx: &Ctx, c: &BuildCmd) -> Result<(), Failure> {
    let g = ctx.graph(Some(c.n), &c.field, None, &c.limits)?;
    print_stats(&g);
    let path = c
        .cache
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("qig-n{}-q{}.bin", g.n(), g.q())));
    write_file(&path, &io::write_cache(&g))?;
    println!("cache written to {}", path.display());
    if let Some(p) = &c.json {
        write_file(p, io::to_json(&g).as_bytes())?;
    }
    if let Some(p) = &c.dot {
        write_file(p, io::to_dot(&g).as_bytes())?;
    }
    Ok(())
}

fn cmd_verify(ctx: &Ctx, c: &VerifyCmd) -> Result<(), Failure> {
    let start = std::time::Instant::now();
    let g = ctx.graph(c.n, &c.field, c.cache.as_deref(), &c.limits)?;
    let build = start.elapsed().as_secs_f64();
    let cfg = report::VerifyConfig {
        n: g.n(),
        field: g.field().clone(),
        budget: ctx.budget(&c.solve, c.limits.parallel, DEFAULT_BUDGET)?,
        build: ctx.build_options(&c.limits),
    };
    let mut r = report::verify_graph(&g, &cfg);
    r.timing
        .insert(if c.cache.is_some() { "load" } else { "build" }.into(), build);
    r.timing.insert("total".into(), start.elapsed().as_secs_f64());
    print!("{}", r.table());
    if let Some(p) = &c.json {
        write_file(p, r.to_json().as_bytes())?;
    }
    if r.has_mismatch() {
        return Err(Failure::Mismatch(format!(
            "{} MISMATCH row(s)",
            r.summary.mismatches
        )));
    }
    Ok(())
}

fn cmd_census(ctx: &Ctx, c: &CensusCmd) -> Result<(), Failure> {
    let budget = ctx.budget(&c.solve, c.limits.parallel, DEFAULT_CENSUS_BUDGET)?;
    let build = ctx.build_options(&c.limits);
    let dims: Vec<usize> = c.n.clone().filter(|n| n % 2 == 0).collect();
    if dims.is_empty() {
        print!("{}", census::table(&[]));
        return Ok(());
    }
    let fields: Vec<FieldSpec> = if c.q.is_empty() {
        let f = FieldOpts {
            p: c.p,
            e: c.e,
            modulus: c.modulus.clone(),
            q: None,
        };
        vec![ctx.field(&f)?]
    } else {
        c.q.iter()
            .map(|&q| {
                let f = FieldOpts {
                    q: Some(q),
                    ..FieldOpts::default()
                };
                ctx.field(&f)
            })
            .collect::<Result<_, _>>()?
    };

    let mut rows = Vec::new();
    for &n in &dims {
        for f in &fields {
            rows.push(census::census_row(n, f, &budget, &build));
        }
    }
    print!("{}", census::table(&rows));
    if !rows.is_empty() {
        let mut out = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&c.json)
            .map_err(|e| Failure::Usage(format!("cannot open {}: {e}", c.json.display())))?;
        for r in &rows {
            writeln!(out, "{}", r.to_json_line())
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", c.json.display())))?;
        }
    }
    let bad = rows.iter().filter(|r| r.is_mismatch()).count();
    if bad > 0 {
        return Err(Failure::Mismatch(format!(
            "{bad} census row(s) outside the predicted range"
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveRecord {
    invariant: &'static str,
    n: usize,
    q: u32,
    value: Option<usize>,
    lo: usize,
    hi: usize,
    status: Status,
    nodes: u64,
    certificate: CertificateRecord,
    timing: SolveTiming,
}

#[derive(Serialize)]
struct SolveTiming {
    solve: f64,
}

fn cmd_invariant(ctx: &Ctx, c: &InvariantCmd) -> Result<(), Failure> {
    let g = ctx.graph(c.n, &c.field, c.cache.as_deref(), &c.limits)?;
    let budget = ctx.budget(&c.solve, c.limits.parallel, DEFAULT_BUDGET)?;
    let d = g.dense();
    let (name, r) = match c.name {
        InvariantName::Clique => ("clique", solvers::max_clique(d, &budget)),
        InvariantName::Chromatic => ("chromatic", solvers::chromatic_number(d, &budget)),
        InvariantName::Domination => ("domination", solvers::min_dominating_set(d, &budget)),
        InvariantName::Independence => ("independence", solvers::max_independent_set(d, &budget)),
    };
    let verified = certificate::verify(&r.certificate, d);
    let status = format!("{:?}", r.status).to_lowercase();
    match r.value {
        Some(v) => println!(
            "{name}: {v} ({status}, {} nodes, {:.3} s)",
            r.nodes,
            r.elapsed.as_secs_f64()
        ),
        None => println!(
            "{name}: between {} and {} ({status}, {} nodes, {:.3} s)",
            r.lo,
            r.hi,
            r.nodes,
            r.elapsed.as_secs_f64()
        ),
    }
    let labels: Vec<String> = match c.name {
        InvariantName::Chromatic => vec![],
        _ => r.certificate.members().iter().map(|&v| g.label(v)).collect(),
    };
    if !labels.is_empty() {
        println!("certificate: {}", labels.join(" "));
    }
    if let Some(p) = &c.json {
        let rec = SolveRecord {
            invariant: name,
            n: g.n(),
            q: g.q(),
            value: r.value,
            lo: r.lo,
            hi: r.hi,
            status: r.status,
            nodes: r.nodes,
            certificate: r.certificate.record(verified.is_ok()),
            timing: SolveTiming {
                solve: r.elapsed.as_secs_f64(),
            },
        };
        let text = serde_json::to_string_pretty(&rec).expect("record serializes") + "\n";
        write_file(p, text.as_bytes())?;
    }
    verified.map_err(|e| Failure::Mismatch(format!("solver certificate failed verification: {e}")))
}

fn cmd_export(ctx: &Ctx, c: &ExportCmd) -> Result<(), Failure> {
    let g = ctx.graph(c.n, &c.field, c.cache.as_deref(), &c.limits)?;
    if c.json.is_none() && c.dot.is_none() {
        print!("{}", io::to_dot(&g));
        return Ok(());
    }
    if let Some(p) = &c.json {
        write_file(p, io::to_json(&g).as_bytes())?;
    }
    if let Some(p) = &c.dot {
        write_file(p, io::to_dot(&g).as_bytes())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(p) => config::load(p)?,
        None => FileConfig::default(),
    };
    let ctx = Ctx { file };
    match &cli.command {
        Command::Build(c) => cmd_build(&ctx, c),
        Command::Verify(c) => cmd_verify(&ctx, c),
        Command::Census(c) => cmd_census(&ctx, c),
        Command::Invariant(c) => cmd_invariant(&ctx, c),
        Command::Export(c) => cmd_export(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Mismatch(m) | Failure::Usage(m) | Failure::Cap(m)) = &f;
            eprintln!("qig: {m}");
            ExitCode::from(f.code())
        }
    }
}
