use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypercover::constructions::{self, verify_manifest, Built};
use hypercover::cover::{
    bipartite_edit_distance, bipartite_edit_distance_upper_bound, book_number, independence_number, t_max,
    uncovered_vertices, DEFAULT_EXACT_LIMIT,
};
use hypercover::formulas::{self, curve_table, format_rational, parse_rational, KappaNormalisation, CURVE_CSV_HEADER};
use hypercover::oracle::{self, SearchConfig};
use hypercover::steiner::{self, Provenance};
use hypercover::verifier::{self, Status, Suite, VerifyConfig};
use hypercover::{Error, Motif, RGraph};

#[derive(Parser)]
#[command(name = "hypercover", version, about = "Covering thresholds, triangle-degrees and book numbers of small graphs")]
struct Cli {
    /// worker threads, 0 for all cores
    #[arg(long, global = true, env = "HYPERCOVER_THREADS", default_value_t = 0)]
    threads: usize,
    /// significant digits for irrational values
    #[arg(long, global = true, default_value_t = formulas::DEFAULT_DIGITS)]
    precision: u64,
    /// vertex cap for exact exponential metrics
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    /// directory for output files
    #[arg(long, global = true, env = "HYPERCOVER_OUTDIR")]
    outdir: Option<PathBuf>,
    /// omit wall-clock timings so output is reproducible byte for byte
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a construction and its manifest
    Gen(GenArgs),
    /// Compute metrics of a hypergraph file
    Metrics(MetricsArgs),
    /// Report the vertices not covered by a motif
    CheckCover(CheckCoverArgs),
    /// Exhaustive extremal search over tiny graphs
    Search(SearchArgs),
    /// Tabulate the reference curves as CSV
    Curves(CurvesArgs),
    /// Build or load a Steiner triple system
    Sts(StsArgs),
    /// Run claim suites
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    construction: Construction,
    /// hypergraph output path; the manifest is written next to it
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// also recompute every manifest claim
    #[arg(long, global = true)]
    check: bool,
}

#[derive(Subcommand)]
enum Construction {
    /// K4- lower bound with a d-regular bipartite link
    K4mLower {
        #[arg(long)]
        n: usize,
        /// defaults to floor(d*(n))
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Link graph of the K4 lower bound
    K4Link {
        #[arg(long)]
        n: usize,
    },
    /// Lift a link graph from a file
    Lift {
        #[arg(long)]
        input: PathBuf,
    },
    /// C5 lower bound on 3n + 1 vertices
    C5Lower {
        #[arg(long)]
        n: usize,
    },
    /// K5-free 3-graph on a balanced bipartition of 2n vertices
    K5Lower {
        #[arg(long)]
        n: usize,
    },
    /// Blow-up of a Steiner triple system
    StsBlowup {
        #[arg(long, conflicts_with = "input")]
        order: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Complete r-partite graph with regular graphs inside the parts
    TauLower {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete (r+1)-partite graph with thinned blocks
    TauUpper {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        r: usize,
        /// 1-based images of 1..=r+1, e.g. 2,3,1
        #[arg(long, value_delimiter = ',')]
        phi: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Product graph on [r1] x ... x [rk] x [t]
    Efg {
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        t: usize,
    },
}

impl Construction {
    fn name(&self) -> &'static str {
        match self {
            Construction::K4mLower { .. } => "k4m-lower",
            Construction::K4Link { .. } => "k4-link",
            Construction::Lift { .. } => "lift",
            Construction::C5Lower { .. } => "c5-lower",
            Construction::K5Lower { .. } => "k5-lower",
            Construction::StsBlowup { .. } => "sts-blowup",
            Construction::TauLower { .. } => "tau-lower",
            Construction::TauUpper { .. } => "tau-upper",
            Construction::Efg { .. } => "efg",
        }
    }
}

#[derive(Args)]
struct MetricsArgs {
    file: PathBuf,
    /// minimum i-degree, repeatable
    #[arg(long)]
    delta: Vec<usize>,
    #[arg(long)]
    degrees: bool,
    #[arg(long)]
    tmax: bool,
    #[arg(long)]
    book: bool,
    #[arg(long)]
    alpha: bool,
    #[arg(long)]
    edit_distance: bool,
    #[arg(long)]
    density: bool,
    /// motif name: k4, k4-, c5, k<t>, clique<r>
    #[arg(long)]
    cover: Option<String>,
}

#[derive(Args)]
struct CheckCoverArgs {
    file: PathBuf,
    #[arg(long)]
    motif: String,
    /// only this vertex
    #[arg(long)]
    vertex: Option<u32>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(value_enum)]
    objective: ObjectiveArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    motif: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    /// seconds
    #[arg(long)]
    budget: Option<u64>,
    /// witness output path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    MaxDelta1,
    MinTmax,
    MinBook,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(long, default_value = "1/2")]
    from: String,
    #[arg(long, default_value = "2/3")]
    to: String,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = NormArg::Eighteenth)]
    kappa_norm: NormArg,
    /// fractional digits per cell
    #[arg(long, default_value_t = 12)]
    decimals: i64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Eighteenth,
    Sixth,
}

#[derive(Args)]
struct StsArgs {
    #[arg(long, required_unless_present = "file")]
    order: Option<usize>,
    #[arg(long, conflicts_with = "order")]
    file: Option<PathBuf>,
    /// measure the independence number
    #[arg(long)]
    alpha: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// run a single claim
    #[arg(long)]
    claim: Option<String>,
    /// seconds per oracle claim
    #[arg(long, default_value_t = 600)]
    budget: u64,
    #[arg(long, default_value_t = verifier::DEFAULT_SEED)]
    seed: u64,
    /// draw a new seed for the random sweeps
    #[arg(long, conflicts_with = "seed")]
    fresh_seed: bool,
    #[arg(long, default_value_t = verifier::DEFAULT_TRIPARTITE_SAMPLES)]
    samples: usize,
    /// JSON report path
    #[arg(long)]
    json: Option<PathBuf>,
}

enum Failure {
    Usage(Error),
    Budget,
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded => Failure::Budget,
            e => Failure::Usage(e),
        }
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    precision: u64,
    exact_limit: usize,
    outdir: Option<PathBuf>,
}

impl Ctx {
    fn output_path(&self, explicit: Option<&Path>, default_name: &str) -> Option<PathBuf> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| self.outdir.as_ref().map(|d| d.join(default_name)))
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn rational(s: &str) -> Result<formulas::Rational, Error> {
    parse_rational(s)
}

fn build(c: &Construction) -> Result<Built, Error> {
    match c {
        Construction::K4mLower { n, d, seed } => {
            let d = d.unwrap_or_else(|| formulas::d_star_floor(*n as u64) as usize);
            constructions::k4minus_lower(*n, d, *seed)
        }
        Construction::K4Link { n } => constructions::k4_lower_linkgraph(*n),
        Construction::Lift { input } => constructions::lift_link(&RGraph::read_file(input)?),
        Construction::C5Lower { n } => constructions::c5_lower(*n),
        Construction::K5Lower { n } => constructions::k5_lower(*n),
        Construction::StsBlowup { order, input, n } => {
            let (h, source) = match (order, input) {
                (_, Some(p)) => (steiner::load_sts(p)?.sts.triples, p.display().to_string()),
                (Some(t), None) => (steiner::sts(*t)?.triples, format!("sts({t})")),
                (None, None) => return Err(Error::Precondition("sts-blowup needs --order or --input".into())),
            };
            constructions::blowup_sts(&h, *n, &source)
        }
        Construction::TauLower { n, rho, r, seed } => constructions::tau_lower_interval(*n, &rational(rho)?, *r, *seed),
        Construction::TauUpper { n, rho, r, phi, seed } => {
            let phi0 = match phi {
                Some(p) if p.contains(&0) => {
                    return Err(Error::Precondition("phi is 1-based; 0 is not a part".into()))
                }
                Some(p) => Some(p.iter().map(|x| x - 1).collect::<Vec<_>>()),
                None => None,
            };
            constructions::tau_upper_interval(*n, &rational(rho)?, *r, phi0.as_deref(), *seed)
        }
        Construction::Efg { factors, t } => constructions::efg_graph(factors, *t),
    }
}

fn cmd_gen(ctx: &Ctx, args: &GenArgs) -> Outcome {
    let built = build(&args.construction)?;
    let name = args.construction.name();
    let path = ctx
        .output_path(args.out.as_deref(), &format!("{name}.txt"))
        .unwrap_or_else(|| PathBuf::from(format!("{name}.txt")));
    built.graph.write_file(&path)?;
    let manifest_path = path.with_extension("manifest.json");
    write(&manifest_path, &(serde_json::to_string_pretty(&built.manifest).map_err(Error::from)? + "\n"))?;
    let mut out = json!({
        "construction": name,
        "file": path.display().to_string(),
        "manifest_file": manifest_path.display().to_string(),
        "vertices": built.graph.vertex_count(),
        "edges": built.graph.edge_count(),
        "manifest": built.manifest,
    });
    if args.check {
        let report = verify_manifest(&built.graph, &built.manifest)?;
        let pass = report.all_pass();
        out["check"] = serde_json::to_value(&report).map_err(Error::from)?;
        if !pass {
            return Err(Failure::Verification(out));
        }
    }
    Ok(out)
}

fn cmd_metrics(ctx: &Ctx, args: &MetricsArgs) -> Outcome {
    let g = RGraph::read_file(&args.file)?;
    let mut out = json!({
        "file": args.file.display().to_string(),
        "r": g.uniformity(),
        "n": g.vertex_count(),
        "edges": g.edge_count(),
    });
    for &i in &args.delta {
        let m = g.min_i_degree(i)?;
        out[format!("delta_{i}")] = json!({"value": m.value, "witness": m.witness});
    }
    if args.degrees {
        out["degrees"] = serde_json::to_value(g.degree_profile()).map_err(Error::from)?;
    }
    if args.density {
        out["density"] = json!(format_rational(&g.edge_density()));
    }
    if args.tmax {
        let (t, v) = t_max(&g)?;
        out["t_max"] = json!({"value": t, "vertex": v});
    }
    if args.book {
        let (b, e) = book_number(&g)?;
        out["book_number"] = json!({"value": b, "edge": e});
    }
    if args.alpha {
        let a = independence_number(&g, ctx.exact_limit)?;
        out["alpha"] = json!({"value": a.alpha, "witness": a.witness});
    }
    if args.edit_distance {
        let b = match bipartite_edit_distance(&g, ctx.exact_limit) {
            Err(Error::LimitExceeded { .. }) => bipartite_edit_distance_upper_bound(&g)?,
            other => other?,
        };
        out["bipartite_edit_distance"] = serde_json::to_value(&b).map_err(Error::from)?;
    }
    if let Some(m) = &args.cover {
        let motif: Motif = m.parse()?;
        let rep = uncovered_vertices(&g, &motif)?;
        out["cover"] = json!({"motif": motif, "uncovered": rep.uncovered, "covering": rep.is_covering()});
    }
    Ok(out)
}

fn cmd_check_cover(args: &CheckCoverArgs) -> Outcome {
    let g = RGraph::read_file(&args.file)?;
    let motif: Motif = args.motif.parse()?;
    match args.vertex {
        Some(v) => {
            if v as usize >= g.vertex_count() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.vertex_count() }.into());
            }
            let w = hypercover::cover::covers(&g, &motif, v)?;
            Ok(json!({"motif": motif, "vertex": v, "covered": w.is_some(), "witness": w}))
        }
        None => {
            let rep = uncovered_vertices(&g, &motif)?;
            Ok(json!({
                "motif": motif,
                "covering": rep.is_covering(),
                "uncovered": rep.uncovered,
                "witness_per_vertex": rep.witness_per_vertex,
            }))
        }
    }
}

fn cmd_search(ctx: &Ctx, args: &SearchArgs) -> Outcome {
    let cfg = SearchConfig {
        budget: args.budget.map(Duration::from_secs),
        prefix_bits: None,
    };
    let need_m = || args.m.ok_or_else(|| Error::Precondition("this objective needs --m".into()));
    let result = match args.objective {
        ObjectiveArg::MaxDelta1 => {
            let motif: Motif = args
                .motif
                .as_deref()
                .ok_or_else(|| Error::Precondition("max-delta1 needs --motif".into()))?
                .parse()?;
            oracle::max_delta1_no_cover(args.n, &motif, &cfg)?
        }
        ObjectiveArg::MinTmax => oracle::min_tmax(args.n, need_m()?, &cfg)?,
        ObjectiveArg::MinBook => oracle::min_book(args.n, need_m()?, &cfg)?,
    };
    let mut out = serde_json::to_value(&result).map_err(Error::from)?;
    out["witness"] = json!(result.witness.edges().collect::<Vec<_>>());
    out["wall_time_s"] = json!(result.wall_time.as_secs_f64());
    if let Some(p) = ctx.output_path(args.out.as_deref(), "witness.txt") {
        result.witness.write_file(&p)?;
        out["witness_file"] = json!(p.display().to_string());
    }
    Ok(out)
}

fn cmd_curves(ctx: &Ctx, args: &CurvesArgs) -> Outcome {
    let norm = match args.kappa_norm {
        NormArg::Eighteenth => KappaNormalisation::Eighteenth,
        NormArg::Sixth => KappaNormalisation::Sixth,
    };
    let rows = curve_table(&rational(&args.from)?, &rational(&args.to)?, args.steps, norm, ctx.precision)?;
    let mut csv = String::from(CURVE_CSV_HEADER);
    csv.push('\n');
    let mut ordered = true;
    for r in &rows {
        csv.push_str(&r.csv_row(args.decimals));
        csv.push('\n');
        ordered &= r.ordered();
    }
    match ctx.output_path(args.out.as_deref(), "curves.csv") {
        Some(p) => {
            write(&p, &csv)?;
            Ok(json!({"file": p.display().to_string(), "rows": rows.len(), "ordered": ordered}))
        }
        None => {
            print!("{csv}");
            Ok(Value::Null)
        }
    }
}

fn cmd_sts(ctx: &Ctx, args: &StsArgs) -> Outcome {
    let loaded = match (&args.file, args.order) {
        (Some(p), _) => steiner::load_sts(p)?,
        (None, Some(t)) => {
            let s = steiner::sts(t)?;
            if args.alpha {
                steiner::from_graph(s.triples, s.provenance)?
            } else {
                let check = steiner::verify_sts(&s.triples);
                let out = json!({"order": t, "provenance": s.provenance, "triples": s.triples.edge_count(), "valid": check.valid});
                if let Some(p) = ctx.output_path(args.out.as_deref(), &format!("sts{t}.txt")) {
                    s.triples.write_file(&p)?;
                }
                return Ok(out);
            }
        }
        (None, None) => unreachable!("clap requires --order or --file"),
    };
    if let Some(p) = ctx.output_path(args.out.as_deref(), &format!("sts{}.txt", loaded.sts.order)) {
        if !matches!(loaded.sts.provenance, Provenance::External(_)) {
            loaded.sts.triples.write_file(&p)?;
        }
    }
    Ok(json!({
        "order": loaded.sts.order,
        "provenance": loaded.sts.provenance,
        "triples": loaded.sts.triples.edge_count(),
        "valid": true,
        "alpha": loaded.independence.alpha,
        "independent_set": loaded.independence.witness,
        "alpha_target": loaded.alpha_target,
        "meets_minimum": loaded.meets_minimum,
        "warning": loaded.warning,
    }))
}

fn fresh_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    h.write_u128(std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).unwrap_or_default().as_nanos());
    h.finish()
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let cfg = VerifyConfig {
        budget: Duration::from_secs(args.budget),
        seed: if args.fresh_seed { fresh_seed() } else { args.seed },
        tripartite_samples: args.samples,
    };
    let outcomes = verifier::run_claims(suite, &cfg, args.claim.as_deref())?;
    eprint!("{}", verifier::render_table(&outcomes));
    let count = |s: Status| outcomes.iter().filter(|o| o.status == s).count();
    let (pass, fail, skip) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
    eprintln!("{pass} passed, {fail} failed, {skip} skipped (seed {})", cfg.seed);
    let report = json!({
        "suite": suite,
        "seed": cfg.seed,
        "passed": pass,
        "failed": fail,
        "skipped": skip,
        "outcomes": outcomes,
    });
    if let Some(p) = ctx.output_path(args.json.as_deref(), "verify.json") {
        write(&p, &(serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"))?;
    }
    if fail > 0 {
        Err(Failure::Verification(report))
    } else {
        Ok(report)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        Error::LimitExceeded { .. } => "limit",
        Error::BudgetExceeded => "budget",
        _ => "precondition",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("hypercover: cannot start thread pool: {e}");
        return ExitCode::from(2);
    }
    let ctx = Ctx {
        precision: cli.precision,
        exact_limit: cli.exact_limit,
        outdir: cli.outdir.clone(),
    };
    let (name, start) = (command_name(&cli.command), Instant::now());
    let result = match &cli.command {
        Command::Gen(a) => cmd_gen(&ctx, a),
        Command::Metrics(a) => cmd_metrics(&ctx, a),
        Command::CheckCover(a) => cmd_check_cover(a),
        Command::Search(a) => cmd_search(&ctx, a),
        Command::Curves(a) => cmd_curves(&ctx, a),
        Command::Sts(a) => cmd_sts(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
    };
    let (mut envelope, code) = match result {
        Ok(Value::Null) => return ExitCode::SUCCESS,
        Ok(v) => (json!({"command": name, "status": "ok", "result": v}), 0),
        Err(Failure::Verification(v)) => (json!({"command": name, "status": "fail", "result": v}), 1),
        Err(Failure::Budget) => {
            eprintln!("hypercover: budget exceeded");
            (json!({"command": name, "status": "budget_exceeded"}), 3)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("hypercover: {e}");
            (
                json!({"command": name, "status": "error", "error": {"kind": error_kind(&e), "message": e.to_string()}}),
                2,
            )
        }
    };
    if cli.no_timing {
        if let Some(r) = envelope.get_mut("result").and_then(Value::as_object_mut) {
            r.remove("wall_time_s");
        }
    } else {
        envelope["wall_time_s"] = json!(start.elapsed().as_secs_f64());
    }
    println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gen(_) => "gen",
        Command::Metrics(_) => "metrics",
        Command::CheckCover(_) => "check-cover",
        Command::Search(_) => "search",
        Command::Curves(_) => "curves",
        Command::Sts(_) => "sts",
        Command::Verify(_) => "verify",
    }
}
