use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use multihit::data::{self, SplitMode};
use multihit::harness::{self, ExperimentSpec, InstanceSource, SyntheticSpec};
use multihit::{Error, HitRange, Mode, Result, SolverConfig};

const EXIT_PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(name = "multihit", version, about = "Select multi-hit gene combinations separating tumor from normal samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert sparse (gene, sample, count) tuple files to a dense matrix.
    Ingest {
        #[arg(long)]
        normal: PathBuf,
        #[arg(long)]
        tumor: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
        /// Keep genes that are mutated in no sample.
        #[arg(long)]
        no_prune: bool,
    },
    /// Write a synthetic instance with planted combinations.
    Synth {
        #[arg(long)]
        genes: usize,
        #[arg(long)]
        tumors: usize,
        #[arg(long)]
        normals: usize,
        /// Planted combinations as gene indices, e.g. "0,1;2,3".
        #[arg(long, default_value = "")]
        planted: String,
        #[arg(long, default_value_t = 1.0)]
        planted_rate: f64,
        #[arg(long, default_value_t = 0.0)]
        background_rate: f64,
        #[arg(long, default_value_t = 0.0)]
        normal_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Split a dense matrix into training and test files.
    Split {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, default_value_t = 0.75)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shuffle all samples together instead of per class.
        #[arg(long)]
        global: bool,
        #[arg(long)]
        train_out: PathBuf,
        #[arg(long)]
        test_out: PathBuf,
    },
    /// Solve one instance and write its report.
    Solve(SolveArgs),
    /// Run an experiment sweep described by a TOML file and/or flags.
    Sweep(SweepArgs),
    /// Validate a report and print its summary table.
    Report {
        #[arg(long, short)]
        input: PathBuf,
        /// Also write the table to this file.
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
}

#[derive(Args, Default)]
struct SolverFlags {
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    gamma1: Option<usize>,
    #[arg(long)]
    gamma2: Option<usize>,
    /// Binary master time limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Column generation time limit in seconds.
    #[arg(long)]
    total_time_limit: Option<f64>,
    /// Positive columns added per pricing round.
    #[arg(long)]
    pricing_columns: Option<usize>,
    #[arg(long)]
    skip_uncovering: bool,
}

impl SolverFlags {
    fn apply(&self, cfg: &mut SolverConfig) -> Result<()> {
        let secs = |v: f64| {
            Duration::try_from_secs_f64(v)
                .map_err(|_| Error::Validation(format!("invalid time limit {v}")))
        };
        if let Some(b) = self.beta {
            cfg.beta = b;
        }
        if let Some(g) = self.gamma1 {
            cfg.gamma1 = g;
        }
        if let Some(g) = self.gamma2 {
            cfg.gamma2 = g;
        }
        if let Some(t) = self.time_limit {
            cfg.master_time_limit = secs(t)?;
        }
        if let Some(t) = self.total_time_limit {
            cfg.total_time_limit = secs(t)?;
        }
        if let Some(q) = self.pricing_columns {
            cfg.pricing_columns = q;
        }
        if self.skip_uncovering {
            cfg.skip_uncovering = true;
        }
        Ok(())
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Dense matrix file.
    #[arg(long, short)]
    input: PathBuf,
    /// Solver settings as TOML; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    hit_range: Option<HitRange>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fraction of samples used for training; the rest is the test set.
    #[arg(long, default_value_t = 1.0)]
    train_fraction: f64,
    #[arg(long)]
    global_split: bool,
    #[command(flatten)]
    solver: SolverFlags,
    /// Directory for report.json and summary.tsv.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Experiment description as TOML; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dense matrix files, added to those in the config.
    #[arg(long = "input", short)]
    inputs: Vec<PathBuf>,
    #[arg(long = "hit-range", value_delimiter = ',')]
    hit_ranges: Vec<HitRange>,
    #[arg(long = "mode", value_delimiter = ',')]
    modes: Vec<Mode>,
    #[arg(long = "seed", value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long = "train-fraction", value_delimiter = ',')]
    train_fractions: Vec<f64>,
    #[arg(long)]
    global_split: bool,
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    solver: SolverFlags,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Ingest {
            normal,
            tumor,
            out,
            no_prune,
        } => {
            let mut m = data::load_sparse(&normal, &tumor)?;
            if !no_prune {
                m = m.prune_genes();
            }
            data::write_dense(&m, &out)?;
            println!(
                "{} genes, {} tumor and {} normal samples -> {}",
                m.n_genes(),
                m.tumor_count(),
                m.normal_count(),
                out.display()
            );
        }
        Command::Synth {
            genes,
            tumors,
            normals,
            planted,
            planted_rate,
            background_rate,
            normal_rate,
            seed,
            out,
        } => {
            let spec = SyntheticSpec {
                n_genes: genes,
                n_tumor: tumors,
                n_normal: normals,
                planted: parse_planted(&planted)?,
                planted_rate,
                background_rate,
                normal_rate,
                seed,
            };
            let m = harness::generate_synthetic(&spec)?;
            data::write_dense(&m, &out)?;
            println!("fingerprint {:016x} -> {}", m.fingerprint(), out.display());
        }
        Command::Split {
            input,
            fraction,
            seed,
            global,
            train_out,
            test_out,
        } => {
            let m = data::load_dense(&input)?;
            let (train, test) = data::split_train_test(&m, fraction, seed, split_mode(global))?;
            data::write_dense(&train, &train_out)?;
            data::write_dense(&test, &test_out)?;
            println!("{} training and {} test samples", train.n_samples(), test.n_samples());
        }
        Command::Solve(args) => return solve(args),
        Command::Sweep(args) => return sweep(args),
        Command::Report { input, tsv } => {
            let cells = harness::load_report(&input)?;
            let table = harness::summary_table(&cells);
            if let Some(path) = tsv {
                std::fs::write(&path, &table).map_err(|e| Error::Io { path, source: e })?;
            }
            print!("{table}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn split_mode(global: bool) -> SplitMode {
    if global {
        SplitMode::Global
    } else {
        SplitMode::Stratified
    }
}

fn parse_planted(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split(',')
                .map(|g| {
                    g.trim()
                        .parse()
                        .map_err(|_| Error::Validation(format!("bad gene index {g:?} in --planted")))
                })
                .collect()
        })
        .collect()
}

fn load_solver_config(path: &Path) -> Result<SolverConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    let mut value: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
    // fill unset keys from the environment-aware defaults
    let defaults = toml::Table::try_from(harness::default_solver_config())
        .map_err(|e| Error::Config(e.to_string()))?;
    for (k, v) in defaults {
        value.entry(k).or_insert(v);
    }
    value.try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let mut cfg = match &args.config {
        Some(p) => load_solver_config(p)?,
        None => harness::default_solver_config(),
    };
    if let Some(m) = args.mode {
        cfg.mode = m;
    }
    if let Some(h) = args.hit_range {
        cfg.hit_range = h;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    args.solver.apply(&mut cfg)?;
    let m = data::load_dense(&args.input)?.prune_genes();
    let name = InstanceSource::Dense {
        path: args.input.clone(),
        name: None,
    }
    .name();
    let cell = harness::run_cell(&m, &name, &cfg, args.train_fraction, split_mode(args.global_split))?;
    let cells = [cell];
    match &args.out {
        Some(dir) => {
            let (json, _) = harness::emit_report(&cells, dir)?;
            eprintln!("report written to {}", json.display());
        }
        None => {
            let doc = harness::report_document(&cells)?;
            harness::validate_report(&doc)?;
            println!("{}", serde_json::to_string_pretty(&doc)?);
            return Ok(ExitCode::SUCCESS);
        }
    }
    print!("{}", harness::summary_table(&cells));
    Ok(ExitCode::SUCCESS)
}

fn sweep(args: SweepArgs) -> Result<ExitCode> {
    let mut spec = match &args.config {
        Some(p) => ExperimentSpec::load(p)?,
        None => ExperimentSpec::new(Vec::new(), Vec::new()),
    };
    spec.instances.extend(args.inputs.iter().map(|p| InstanceSource::Dense {
        path: p.clone(),
        name: None,
    }));
    if !args.hit_ranges.is_empty() {
        spec.hit_ranges = args.hit_ranges;
    }
    if spec.hit_ranges.is_empty() {
        spec.hit_ranges = vec![spec.solver.hit_range];
    }
    if !args.modes.is_empty() {
        spec.modes = args.modes;
    }
    if !args.seeds.is_empty() {
        spec.seeds = args.seeds;
    }
    if !args.train_fractions.is_empty() {
        spec.train_fractions = args.train_fractions;
    }
    if args.global_split {
        spec.split_mode = SplitMode::Global;
    }
    if args.workers.is_some() {
        spec.workers = args.workers;
    }
    if let Some(out) = args.out {
        spec.output_dir = out;
    }
    args.solver.apply(&mut spec.solver)?;

    let outcome = harness::run_experiment(&spec)?;
    print!("{}", harness::summary_table(&outcome.cells));
    eprintln!("report written to {}", outcome.report_path.display());
    let failed = outcome.failures();
    if failed > 0 {
        eprintln!("{failed} of {} cells failed", outcome.cells.len());
        return Ok(ExitCode::from(EXIT_PARTIAL));
    }
    Ok(ExitCode::SUCCESS)
}
