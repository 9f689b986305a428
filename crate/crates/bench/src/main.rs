use std::error::Error;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use icq_bench::{run_suite, SweepConfig};
use icq_core::indoor::load_floorplan;
use icq_core::query::{load_queries, write_results};
use icq_core::trajectory::{load_trajectories, ExpiryCheck};
use icq_core::{ContactParams, Engine, IndoorGraph, LatticeIndex, Method, QueryResult, SamplingGrid, TrajectoryStore};
use icq_datagen::{write_dataset, Dataset, SimConfig};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "icq", version, about = "Indoor contact queries over uncertain positioning data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic dataset with injected contacts and ground truth.
    Gen(GenArgs),
    /// Validate a floorplan and trajectory file and report the split.
    Ingest(IngestArgs),
    /// Answer the queries of a query file.
    Query(QueryArgs),
    /// Sweep parameters over generated data and report accuracy and cost per method.
    Bench(BenchArgs),
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    floorplan: PathBuf,
    #[arg(long)]
    trajectories: PathBuf,
    /// Sampling interval (s).
    #[arg(long, default_value_t = 10.0)]
    dt: f64,
    /// Sampling grid origin (s).
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    /// Require `et - t` to equal this many seconds.
    #[arg(long)]
    expiry: Option<f64>,
    /// Split parameter: most consecutive sampling times a piece may go unobserved.
    #[arg(long, default_value_t = 6)]
    kprime: u32,
}

#[derive(Args)]
struct GenArgs {
    /// Simulation config (JSON); missing fields take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 2.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.5)]
    eta: f64,
    #[arg(long, default_value_t = 18)]
    k: u32,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct IngestArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Write the summary here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    data: DataArgs,
    #[arg(long)]
    queries: PathBuf,
    /// Method for entries that name none.
    #[arg(long, default_value = "constrained")]
    method: Method,
    /// Lattice side length (m).
    #[arg(long, default_value_t = icq_core::DEFAULT_LL)]
    ll: f64,
    #[arg(long, default_value_t = icq_core::DEFAULT_V_MAX)]
    v_max: f64,
    /// Result table path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Simulation config (JSON).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sweep config (JSON).
    #[arg(long)]
    sweep: Option<PathBuf>,
    /// Restrict to these methods (repeatable).
    #[arg(long)]
    method: Vec<Method>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    repetitions: Option<u32>,
    #[arg(long)]
    kprime: Option<u32>,
    /// Directory for one table per swept dimension.
    #[arg(long)]
    out: PathBuf,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Res<T> {
    let text = fs::read_to_string(path).map_err(|e| at_path(path, e))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: line {}: {e}", path.display(), e.line()).into())
}

fn sim_config(path: Option<&Path>, seed: Option<u64>) -> Res<SimConfig> {
    let mut cfg = match path {
        Some(p) => read_json(p)?,
        None => SimConfig::default(),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Prefixes `path` unless the message already names it.
fn at_path(path: &Path, e: impl std::fmt::Display) -> String {
    let (p, msg) = (path.display().to_string(), e.to_string());
    if msg.starts_with(&p) {
        msg
    } else {
        format!("{p}: {msg}")
    }
}

fn load(data: &DataArgs) -> Res<(IndoorGraph, TrajectoryStore)> {
    if !(data.dt > 0.0) {
        return Err("--dt must be positive".into());
    }
    let graph = load_floorplan(&data.floorplan).map_err(|e| at_path(&data.floorplan, e))?;
    let check = data.expiry.map_or(ExpiryCheck::Lenient, ExpiryCheck::Strict);
    let store = load_trajectories(&data.trajectories, SamplingGrid::new(data.t0, data.dt), check)
        .map_err(|e| at_path(&data.trajectories, e))?;
    for &o in store.object_ids() {
        for r in store.records(o)? {
            graph
                .host(&r.location)
                .map_err(|e| format!("{}: object {o} at t = {}: {e}", data.trajectories.display(), r.t))?;
        }
    }
    Ok((graph, store))
}

fn output(path: Option<&Path>) -> Res<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn gen(args: GenArgs) -> Res<()> {
    let cfg = sim_config(args.config.as_deref(), args.seed)?;
    let params = ContactParams { delta: args.delta, eta: args.eta, k: args.k };
    params.validate()?;
    let ds = Dataset::generate(&cfg)?;
    let files = write_dataset(&ds, &args.out, params)?;
    eprintln!(
        "{} objects, {} records, {} instances -> {}",
        ds.objects.len(),
        ds.records().count(),
        ds.instances.len(),
        files.trajectories.parent().unwrap_or(&args.out).display()
    );
    Ok(())
}

fn ingest(args: IngestArgs) -> Res<()> {
    let (graph, store) = load(&args.data)?;
    let split = store.split(args.data.kprime)?;
    let summary = serde_json::json!({
        "partitions": graph.partitions().len(),
        "doors": graph.doors().len(),
        "objects": store.object_ids().len(),
        "records": store.record_count(),
        "pieces": split.piece_count(),
        "kprime": args.data.kprime,
    });
    let mut w = output(args.out.as_deref())?;
    writeln!(w, "{}", serde_json::to_string_pretty(&summary)?)?;
    Ok(())
}

fn query(args: QueryArgs) -> Res<()> {
    let (graph, store) = load(&args.data)?;
    let store = store.split(args.data.kprime)?;
    let entries = load_queries(&args.queries).map_err(|e| at_path(&args.queries, e))?;
    let specs = entries
        .iter()
        .map(|e| e.spec(args.method))
        .collect::<Result<Vec<_>, _>>()?;
    if !(args.ll > 0.0 && args.v_max > 0.0) {
        return Err("--ll and --v-max must be positive".into());
    }
    let lattices = LatticeIndex::new(&graph, args.ll)?;
    let engine = Engine::new(&graph, &store, &lattices).with_v_max(args.v_max);
    let mut results: Vec<QueryResult> = Vec::with_capacity(specs.len());
    for (e, spec) in entries.iter().zip(&specs) {
        results.push(engine.process(spec).map_err(|err| format!("query {}: {err}", e.id))?);
    }
    let rows = entries
        .iter()
        .zip(&specs)
        .zip(&results)
        .map(|((e, s), r)| (e.id.as_str(), s.method, r));
    write_results(output(args.out.as_deref())?, rows)?;
    Ok(())
}

fn bench(args: BenchArgs) -> Res<()> {
    let sim = sim_config(args.config.as_deref(), args.seed)?;
    let mut sweep: SweepConfig = match &args.sweep {
        Some(p) => read_json(p)?,
        None => SweepConfig::default(),
    };
    if !args.method.is_empty() {
        sweep.methods = args.method.clone();
    }
    if let Some(r) = args.repetitions {
        sweep.repetitions = r;
    }
    if let Some(k) = args.kprime {
        sweep.kprime = k;
    }
    sweep.validate()?;
    let tables = run_suite(&sweep, &sim)?;
    fs::create_dir_all(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
    for t in &tables {
        let text = t.to_tsv();
        print!("{text}");
        let path = args.out.join(format!("{}.tsv", t.dimension.as_str()));
        fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let rows: Vec<_> = tables.iter().flat_map(|t| t.rows.iter()).collect();
    let path = args.out.join("rows.json");
    fs::write(&path, serde_json::to_string_pretty(&rows)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Ingest(a) => ingest(a),
        Command::Query(a) => query(a),
        Command::Bench(a) => bench(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
