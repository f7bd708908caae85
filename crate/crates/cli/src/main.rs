use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mlcascade::analysis::{write_auc_bars_csv, write_coverage_csv, write_timing_csv, Alpha};
use mlcascade::cascade::{simulate_batch, write_traces, CoverageBase};
use mlcascade::experiment::{benchmark_selection, evaluate_dir, run_sweep, ExperimentConfig};
use mlcascade::graph::{read_network, write_network};
use mlcascade::ingest::{build_network, parse_interactions, parse_multiplex_edges, ProjectionOptions};
use mlcascade::seeding::{select_seeds, ArlConfig, SelectionConfig, VoteRankCount};
use mlcascade::{Action, Error, Method, MultilayerNetwork, Result, SeedSet, SimConfig};

const OUT_ENV: &str = "MLCASCADE_OUT";
const DEFAULT_OUT: &str = "mlcascade-out";

#[derive(Parser)]
#[command(
    name = "mlcascade",
    version,
    about = "Seed selection and cascade simulation on multilayer networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a network file from interaction records or a multiplex edge list.
    Ingest(IngestArgs),
    /// Select seeds with one strategy and print or save the seed set.
    Seeds(SeedsArgs),
    /// Run independent-cascade simulations from a seed set.
    Simulate(SimulateArgs),
    /// Compute AUCs and rank tests from a directory of trace files.
    Evaluate(EvaluateArgs),
    /// Time seed selection for every network and method in a config.
    Bench(BenchArgs),
    /// Run every (network, method) cell of an experiment config.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Interaction CSV (post_id,user_id,action).
    #[arg(long, conflicts_with = "multiplex", required_unless_present = "multiplex")]
    interactions: Option<PathBuf>,
    /// Actions to turn into layers, in order.
    #[arg(long, value_delimiter = ',', default_value = "comment,like")]
    layers: Vec<Action>,
    /// Skip posts with more than this many users when projecting.
    #[arg(long)]
    max_users_per_post: Option<usize>,
    /// Multiplex edge list (layer node node [weight]).
    #[arg(long, requires = "keep_layers")]
    multiplex: Option<PathBuf>,
    /// Layer ids to keep from the edge list.
    #[arg(long, value_delimiter = ',')]
    keep_layers: Option<Vec<u64>>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coverage {
    All,
    NonIsolated,
}

#[derive(Clone, Copy)]
struct VoteCount(VoteRankCount);

impl FromStr for VoteCount {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "budget" => Ok(VoteCount(VoteRankCount::Budget)),
            "match-arl" => Ok(VoteCount(VoteRankCount::MatchArl)),
            n => n
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(|n| VoteCount(VoteRankCount::Fixed(n)))
                .ok_or_else(|| format!("expected 'budget', 'match-arl' or a positive count, got '{s}'")),
        }
    }
}

#[derive(Args)]
struct ArlArgs {
    /// Starting minimum post count for ARL users.
    #[arg(long)]
    arl_min_activity: Option<usize>,
    #[arg(long)]
    arl_step: Option<usize>,
    /// Stop threshold descent once this many frequent itemsets are found.
    #[arg(long)]
    arl_max_itemsets: Option<usize>,
    #[arg(long)]
    arl_max_seconds: Option<f64>,
    #[arg(long)]
    arl_min_support: Option<usize>,
}

impl ArlArgs {
    fn apply(&self, cfg: &mut ArlConfig) {
        if let Some(v) = self.arl_min_activity {
            cfg.min_activity_start = v;
        }
        if let Some(v) = self.arl_step {
            cfg.threshold_step = v;
        }
        if let Some(v) = self.arl_max_itemsets {
            cfg.max_itemsets = v;
        }
        if let Some(v) = self.arl_max_seconds {
            cfg.max_seconds = Some(v);
        }
        if let Some(v) = self.arl_min_support {
            cfg.min_support = v;
        }
    }
}

#[derive(Args)]
struct SeedsArgs {
    #[arg(long)]
    net: PathBuf,
    #[arg(long)]
    method: Method,
    /// Fraction of actors to select.
    #[arg(long, default_value_t = 0.01)]
    budget: f64,
    /// Interaction CSV for ARL; without it ARL mines the network's edges.
    #[arg(long)]
    interactions: Option<PathBuf>,
    /// VoteRank picks per layer: budget, match-arl, or a count.
    #[arg(long, default_value = "budget")]
    voterank_count: VoteCount,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[command(flatten)]
    arl: ArlArgs,
    /// Write the seed set here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    net: PathBuf,
    /// Seed set JSON.
    #[arg(long)]
    seeds: PathBuf,
    /// Activation probability.
    #[arg(long, default_value_t = 0.01)]
    p: f64,
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    rng: u64,
    #[arg(long, value_delimiter = ',')]
    layer_order: Vec<String>,
    #[arg(long, value_enum, default_value = "all")]
    coverage: Coverage,
    /// Write the trace CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Directory of <network>__<method>.csv traces, or a sweep output directory.
    #[arg(long)]
    traces: PathBuf,
    #[arg(long, default_value = "report.json")]
    report: PathBuf,
    /// Directory for plot tables; defaults to `plots/` next to the report.
    #[arg(long)]
    plots: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.01,0.001")]
    alpha: Vec<f64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Output directory for timing.csv and timing.json.
    #[arg(long, env = OUT_ENV)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config's output_dir.
    #[arg(long, env = OUT_ENV)]
    out: Option<PathBuf>,
    /// Worker threads for simulations.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    rng: Option<u64>,
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    Ok(BufWriter::new(
        File::create(path).map_err(|e| Error::io(path, e))?,
    ))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).map_err(|e| Error::io(path, e))?))
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.in_file(path))
}

fn load_net(path: &Path) -> Result<MultilayerNetwork> {
    in_file(path, read_network(open(path)?))
}

fn ingest(a: IngestArgs) -> Result<ExitCode> {
    let net = if let Some(path) = &a.interactions {
        let records = in_file(path, parse_interactions(open(path)?))?;
        let opts = ProjectionOptions {
            max_users_per_post: a.max_users_per_post,
        };
        build_network(&records, &a.layers, opts)?
    } else {
        let path = a.multiplex.as_ref().expect("clap enforces one input");
        let keep = a.keep_layers.clone().unwrap_or_default();
        let load = in_file(path, parse_multiplex_edges(open(path)?, &keep))?;
        if !load.missing_layers.is_empty() {
            eprintln!("warning: layers with no edges: {:?}", load.missing_layers);
        }
        if load.self_loops_dropped > 0 {
            eprintln!("dropped {} self-loops", load.self_loops_dropped);
        }
        load.network
    };
    let mut w = create(&a.out)?;
    write_network(&net, &mut w)?;
    w.flush().map_err(|e| Error::io(&a.out, e))?;
    println!("actors\t{}", net.actor_count());
    for (name, nodes, edges) in net.summary() {
        println!("layer\t{name}\tnodes {nodes}\tedges {edges}");
    }
    Ok(ExitCode::SUCCESS)
}

fn seeds(a: SeedsArgs) -> Result<ExitCode> {
    let net = load_net(&a.net)?;
    let records = match &a.interactions {
        Some(p) => Some(in_file(p, parse_interactions(open(p)?))?),
        None => None,
    };
    let mut cfg = SelectionConfig {
        budget_fraction: a.budget,
        voterank_count: a.voterank_count.0,
        rng_seed: a.rng,
        ..Default::default()
    };
    a.arl.apply(&mut cfg.arl);
    let sel = select_seeds::<f64>(&net, records.as_deref(), a.method, &cfg)?;
    if let Some(arl) = &sel.arl {
        match arl.threshold {
            Some(t) => eprintln!("arl threshold {t} ranked {} users", arl.ranking.len()),
            None => eprintln!("arl found no threshold within its resource cap"),
        }
    }
    if sel.actors.len() < sel.budget {
        eprintln!("warning: {} of {} seeds selected", sel.actors.len(), sel.budget);
    }
    let json = sel.set.to_json()? + "\n";
    match &a.out {
        Some(p) => fs::write(p, json).map_err(|e| Error::io(p, e))?,
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(a: SimulateArgs) -> Result<ExitCode> {
    let net = load_net(&a.net)?;
    let text = fs::read_to_string(&a.seeds).map_err(|e| Error::io(&a.seeds, e))?;
    let set = in_file(&a.seeds, SeedSet::from_json(&text))?;
    let seeds = set.resolve(&net)?;
    let cfg = SimConfig {
        activation_probability: a.p,
        max_steps: a.steps,
        runs: a.runs,
        master_seed: a.rng,
        layer_order: a.layer_order,
        coverage: match a.coverage {
            Coverage::All => CoverageBase::AllActors,
            Coverage::NonIsolated => CoverageBase::NonIsolated,
        },
    };
    let traces = simulate_batch(&net, &seeds, &cfg)?;
    match &a.out {
        Some(p) => write_traces(&traces, create(p)?)?,
        None => write_traces(&traces, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate(a: EvaluateArgs) -> Result<ExitCode> {
    let levels = a
        .alpha
        .iter()
        .map(|&x| Alpha::from_value(x))
        .collect::<Result<Vec<_>>>()?;
    let nested = a.traces.join("traces");
    let dir = if nested.is_dir() { nested } else { a.traces.clone() };
    let (report, rows) = evaluate_dir(&dir, &levels)?;
    let mut w = create(&a.report)?;
    writeln!(w, "{}", report.to_json()?).map_err(|e| Error::io(&a.report, e))?;
    w.flush().map_err(|e| Error::io(&a.report, e))?;
    let plots = a
        .plots
        .clone()
        .unwrap_or_else(|| a.report.parent().unwrap_or(Path::new("")).join("plots"));
    write_coverage_csv(&rows, create(&plots.join("coverage.csv"))?)?;
    write_auc_bars_csv(&report, create(&plots.join("auc_bars.csv"))?)?;
    print_tests(&report);
    Ok(ExitCode::SUCCESS)
}

fn print_tests(report: &mlcascade::analysis::Report) {
    if let Some(f) = &report.friedman {
        println!(
            "friedman\tchi2 {:.4}\tdf {}\tp {:.4e}\tN {}",
            f.statistic, f.df, f.p, f.n
        );
        for (m, r) in &f.mean_ranks {
            println!("rank\t{m}\t{r:.3}");
        }
    }
    if let Some(n) = &report.nemenyi {
        for (a, cd) in &n.cd {
            println!("cd\t{a}\t{cd:.4}");
        }
    }
    for note in &report.notes {
        println!("note\t{note}");
    }
}

fn config_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn bench(a: BenchArgs) -> Result<ExitCode> {
    let cfg = ExperimentConfig::load(&a.config)?;
    let base = config_dir(&a.config);
    let records = benchmark_selection(&cfg, &base, a.reps.max(1))?;
    let out = a.out.unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    write_timing_csv(&records, create(&out.join("timing.csv"))?)?;
    let json = serde_json::to_string_pretty(&records).map_err(Error::from)? + "\n";
    let path = out.join("timing.json");
    fs::write(&path, json).map_err(|e| Error::io(&path, e))?;
    let mut failed = 0;
    for r in &records {
        match &r.error {
            Some(e) => {
                failed += 1;
                println!("{}\t{}\tfailed: {e}", r.network_id, r.method);
            }
            None => println!(
                "{}\t{}\t{:.6}s ± {:.6}",
                r.network_id, r.method, r.mean_seconds, r.std_seconds
            ),
        }
    }
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn sweep(a: SweepArgs) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::load(&a.config)?;
    let base = config_dir(&a.config);
    if let Some(v) = a.p {
        cfg.sim.activation_probability = v;
    }
    if let Some(v) = a.steps {
        cfg.sim.max_steps = v;
    }
    if let Some(v) = a.runs {
        cfg.sim.runs = v;
    }
    if let Some(v) = a.rng {
        cfg.sim.master_seed = v;
    }
    if let Some(v) = a.budget {
        cfg.seed_budget_fraction = v;
    }
    if let Some(v) = a.methods {
        cfg.methods = v;
    }
    let out = match (a.out, &cfg.output_dir) {
        (Some(o), _) => o,
        (None, Some(o)) if o.is_relative() => base.join(o),
        (None, Some(o)) => o.clone(),
        (None, None) => PathBuf::from(DEFAULT_OUT),
    };
    let summary = run_sweep(&cfg, &base, &out, a.jobs)?;
    let cells = summary.cells();
    println!(
        "cells\t{}\t({} networks x {} methods)",
        cells.len(),
        cfg.networks.len(),
        cfg.methods.len()
    );
    print_tests(&summary.report);
    for c in cells.iter().filter(|c| !c.ok) {
        println!(
            "failed\t{}\t{}\t{}",
            c.network,
            c.method,
            c.error.as_deref().unwrap_or("")
        );
    }
    println!("results in {}", out.display());
    Ok(if summary.failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => ingest(a),
        Command::Seeds(a) => seeds(a),
        Command::Simulate(a) => simulate(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Bench(a) => bench(a),
        Command::Sweep(a) => sweep(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
