//! Synthetic instances, experiment sweeps and report files.
//!
//! A sweep is the cross product instance × hit range × train fraction ×
//! seed × mode. Each cell splits its instance, solves on the training part,
//! scores the selection on both parts and becomes one entry of
//! `report.json` and one row of `summary.tsv`. Cells run on a worker pool;
//! output order is the cross-product order regardless of scheduling.
//!
//! Environment overrides for the default time limits, in seconds:
//! `MULTIHIT_TIME_LIMIT` (binary master) and `MULTIHIT_TOTAL_TIME_LIMIT`
//! (column generation loop). Config files and flags take precedence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Duration;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::data::{self, GeneCombination, HitRange, Label, MutationMatrix, SplitMode};
use crate::error::{Error, Result};
use crate::framework::{self, Mode, SolveStatus, SolverConfig, Timings};
use crate::metrics::{self, compute_metrics, round_to, Metrics};
use crate::rng::{self, Stream};

pub const ENV_TIME_LIMIT: &str = "MULTIHIT_TIME_LIMIT";
pub const ENV_TOTAL_TIME_LIMIT: &str = "MULTIHIT_TOTAL_TIME_LIMIT";
pub const REPORT_FILE: &str = "report.json";
pub const SUMMARY_FILE: &str = "summary.tsv";
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub n_genes: usize,
    pub n_tumor: usize,
    pub n_normal: usize,
    /// Gene indices of each planted combination.
    #[serde(default)]
    pub planted: Vec<Vec<usize>>,
    /// Chance that a tumor receives a given planted combination.
    #[serde(default = "one")]
    pub planted_rate: f64,
    /// Independent per-gene mutation chance in tumors.
    #[serde(default)]
    pub background_rate: f64,
    /// Independent per-gene mutation chance in normals.
    #[serde(default)]
    pub normal_rate: f64,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> f64 {
    1.0
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("planted_rate", self.planted_rate),
            ("background_rate", self.background_rate),
            ("normal_rate", self.normal_rate),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::validation(format!("{name} {r} is not in [0, 1]")));
            }
        }
        for c in &self.planted {
            if c.is_empty() {
                return Err(Error::validation("planted combination is empty"));
            }
            if let Some(&g) = c.iter().find(|&&g| g >= self.n_genes) {
                return Err(Error::validation(format!(
                    "planted gene {g} out of range for {} genes",
                    self.n_genes
                )));
            }
        }
        Ok(())
    }
}

/// Genes `g0..`, tumors `t0..` then normals `n0..`. Each tumor draws every
/// planted combination (all its genes) with `planted_rate`, then every gene
/// with `background_rate`; normals draw every gene with `normal_rate`.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<MutationMatrix> {
    spec.validate()?;
    let mut rng = rng::stream(spec.seed, Stream::Synthetic);
    let genes: Vec<String> = (0..spec.n_genes).map(|g| format!("g{g}")).collect();
    let mut rows = Vec::with_capacity(spec.n_tumor + spec.n_normal);
    for t in 0..spec.n_tumor {
        let mut bits = vec![false; spec.n_genes];
        for c in &spec.planted {
            if rng.random_bool(spec.planted_rate) {
                for &g in c {
                    bits[g] = true;
                }
            }
        }
        for b in bits.iter_mut() {
            if rng.random_bool(spec.background_rate) {
                *b = true;
            }
        }
        rows.push((format!("t{t}"), Label::Tumor, bits));
    }
    for n in 0..spec.n_normal {
        let bits = (0..spec.n_genes)
            .map(|_| rng.random_bool(spec.normal_rate))
            .collect();
        rows.push((format!("n{n}"), Label::Normal, bits));
    }
    MutationMatrix::from_rows(genes, rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "format", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSource {
    Dense {
        path: PathBuf,
        #[serde(default)]
        name: Option<String>,
    },
    Sparse {
        normal: PathBuf,
        tumor: PathBuf,
        #[serde(default)]
        name: Option<String>,
    },
    Synthetic {
        #[serde(flatten)]
        spec: SyntheticSpec,
        #[serde(default)]
        name: Option<String>,
    },
}

impl InstanceSource {
    pub fn name(&self) -> String {
        let stem = |p: &Path| {
            p.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| p.display().to_string())
        };
        match self {
            InstanceSource::Dense { name: Some(n), .. }
            | InstanceSource::Sparse { name: Some(n), .. }
            | InstanceSource::Synthetic { name: Some(n), .. } => n.clone(),
            InstanceSource::Dense { path, .. } => stem(path),
            InstanceSource::Sparse { tumor, .. } => stem(tumor),
            InstanceSource::Synthetic { spec, .. } => format!("synthetic-{}", spec.seed),
        }
    }

    /// Loads and prunes genes mutated in no sample.
    pub fn load(&self) -> Result<MutationMatrix> {
        let m = match self {
            InstanceSource::Dense { path, .. } => data::load_dense(path)?,
            InstanceSource::Sparse { normal, tumor, .. } => data::load_sparse(normal, tumor)?,
            InstanceSource::Synthetic { spec, .. } => generate_synthetic(spec)?,
        };
        Ok(m.prune_genes())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub instances: Vec<InstanceSource>,
    pub hit_ranges: Vec<HitRange>,
    #[serde(default = "default_fractions")]
    pub train_fractions: Vec<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_modes")]
    pub modes: Vec<Mode>,
    #[serde(default)]
    pub split_mode: SplitMode,
    #[serde(default = "default_solver_config")]
    pub solver: SolverConfig,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    /// Worker threads; defaults to the number of physical cores.
    #[serde(default)]
    pub workers: Option<usize>,
}

fn default_fractions() -> Vec<f64> {
    vec![0.75]
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_modes() -> Vec<Mode> {
    vec![Mode::MipHeuristic]
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

impl ExperimentSpec {
    pub fn new(instances: Vec<InstanceSource>, hit_ranges: Vec<HitRange>) -> Self {
        ExperimentSpec {
            instances,
            hit_ranges,
            train_fractions: default_fractions(),
            seeds: default_seeds(),
            modes: default_modes(),
            split_mode: SplitMode::default(),
            solver: default_solver_config(),
            output_dir: default_output(),
            workers: None,
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances.is_empty() {
            return Err(Error::validation("experiment lists no instances"));
        }
        if self.modes.is_empty() || self.hit_ranges.is_empty() || self.seeds.is_empty() {
            return Err(Error::validation("experiment needs at least one mode, hit range and seed"));
        }
        if let Some(f) = self.train_fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
            return Err(Error::validation(format!("train fraction {f} is not in (0, 1]")));
        }
        if self.train_fractions.is_empty() {
            return Err(Error::validation("experiment needs at least one train fraction"));
        }
        self.solver.validate()
    }
}

/// Solver defaults with environment overrides for the time limits applied.
pub fn default_solver_config() -> SolverConfig {
    let mut cfg = SolverConfig::default();
    if let Some(d) = env_seconds(ENV_TIME_LIMIT) {
        cfg.master_time_limit = d;
    }
    if let Some(d) = env_seconds(ENV_TOTAL_TIME_LIMIT) {
        cfg.total_time_limit = d;
    }
    cfg
}

fn env_seconds(var: &str) -> Option<Duration> {
    let raw = std::env::var(var).ok()?;
    match raw.trim().parse::<f64>().ok().and_then(|v| Duration::try_from_secs_f64(v).ok()) {
        Some(d) if !d.is_zero() => Some(d),
        _ => {
            log::warn!("ignoring {var}={raw:?}: expected a positive number of seconds");
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub colgen_iterations: u64,
    pub pricing_nodes: u64,
    pub columns: usize,
    pub binary_nodes: u64,
    pub lp_iterations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Optimal,
    Completed,
    TimeLimit,
    Failed,
}

impl From<SolveStatus> for CellStatus {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Optimal => CellStatus::Optimal,
            SolveStatus::Completed => CellStatus::Completed,
            SolveStatus::TimeLimit => CellStatus::TimeLimit,
        }
    }
}

/// One sweep cell as written to the JSON report. Metrics are rounded to
/// three decimals and the gap to two; `ub` is the unrounded bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub instance: String,
    pub hit_range: HitRange,
    pub mode: Mode,
    pub seed: u64,
    pub train_fraction: f64,
    pub status: CellStatus,
    pub n_train: Option<usize>,
    pub n_test: Option<usize>,
    pub n_comb: Option<usize>,
    pub objective: Option<i64>,
    pub lb: Option<i64>,
    pub ub: Option<f64>,
    pub gap_percent: Option<f64>,
    pub time_seconds: Option<Timings>,
    pub metrics_train: Option<Metrics>,
    pub metrics_test: Option<Metrics>,
    pub selected: Vec<Vec<String>>,
    pub diagnostics: Option<Diagnostics>,
    pub error: Option<String>,
}

impl CellReport {
    fn failed(key: &CellKey, err: &Error) -> Self {
        CellReport {
            instance: key.instance.clone(),
            hit_range: key.hit_range,
            mode: key.mode,
            seed: key.seed,
            train_fraction: key.train_fraction,
            status: CellStatus::Failed,
            n_train: None,
            n_test: None,
            n_comb: None,
            objective: None,
            lb: None,
            ub: None,
            gap_percent: None,
            time_seconds: None,
            metrics_train: None,
            metrics_test: None,
            selected: Vec::new(),
            diagnostics: None,
            error: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
struct CellKey {
    instance_idx: usize,
    instance: String,
    hit_range: HitRange,
    train_fraction: f64,
    seed: u64,
    mode: Mode,
}

#[derive(Debug)]
pub struct ExperimentOutcome {
    pub cells: Vec<CellReport>,
    pub report_path: PathBuf,
    pub summary_path: PathBuf,
}

impl ExperimentOutcome {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.status == CellStatus::Failed).count()
    }
}

/// Rebuilds `selected` (built on `train`) against `other` by gene id.
pub fn transfer_selection(
    selected: &[GeneCombination],
    train: &MutationMatrix,
    other: &MutationMatrix,
) -> Result<Vec<GeneCombination>> {
    selected
        .iter()
        .map(|c| {
            let genes = c
                .gene_names(train)
                .iter()
                .map(|id| {
                    other
                        .gene_index(id)
                        .ok_or_else(|| Error::validation(format!("gene {id} missing from evaluation matrix")))
                })
                .collect::<Result<Vec<_>>>()?;
            GeneCombination::new(genes, other)
        })
        .collect()
}

/// Splits, solves on the training part and scores on both parts.
pub fn run_cell(
    m: &MutationMatrix,
    instance: &str,
    cfg: &SolverConfig,
    train_fraction: f64,
    split_mode: SplitMode,
) -> Result<CellReport> {
    let (train, test) = data::split_train_test(m, train_fraction, cfg.seed, split_mode)?;
    let report = framework::solve(&train, cfg)?;
    let on_test = transfer_selection(&report.combinations, &train, &test)?;
    let metrics_test = compute_metrics(&metrics::confusion(&on_test, &test)?);
    Ok(CellReport {
        instance: instance.to_string(),
        hit_range: cfg.hit_range,
        mode: cfg.mode,
        seed: cfg.seed,
        train_fraction,
        status: report.status.into(),
        n_train: Some(train.n_samples()),
        n_test: Some(test.n_samples()),
        n_comb: Some(report.n_comb()),
        objective: Some(report.train_objective),
        lb: Some(report.lb_star),
        ub: report.ub_star,
        gap_percent: report.gap_percent.map(|g| round_to(g, 2)),
        time_seconds: Some(report.timings),
        metrics_train: Some(report.metrics_train.rounded(3)),
        metrics_test: Some(metrics_test.rounded(3)),
        selected: report.selected,
        diagnostics: Some(Diagnostics {
            colgen_iterations: report.colgen_iterations,
            pricing_nodes: report.pricing_nodes,
            columns: report.columns,
            binary_nodes: report.binary_nodes,
            lp_iterations: report.lp_iterations,
        }),
        error: None,
    })
}

/// Runs every cell, then writes and validates the report files.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let loaded: Vec<Result<MutationMatrix>> = spec.instances.iter().map(|i| i.load()).collect();
    let mut keys = Vec::new();
    for (ii, inst) in spec.instances.iter().enumerate() {
        for &hit_range in &spec.hit_ranges {
            for &train_fraction in &spec.train_fractions {
                for &seed in &spec.seeds {
                    for &mode in &spec.modes {
                        keys.push(CellKey {
                            instance_idx: ii,
                            instance: inst.name(),
                            hit_range,
                            train_fraction,
                            seed,
                            mode,
                        });
                    }
                }
            }
        }
    }
    let workers = spec.workers.unwrap_or_else(num_cpus_physical).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    log::info!("running {} cells on {workers} workers", keys.len());
    let cells: Vec<CellReport> = pool.install(|| {
        keys.par_iter()
            .map(|key| {
                let cfg = SolverConfig {
                    hit_range: key.hit_range,
                    mode: key.mode,
                    seed: key.seed,
                    ..spec.solver.clone()
                };
                let result = match &loaded[key.instance_idx] {
                    Ok(m) => run_cell(m, &key.instance, &cfg, key.train_fraction, spec.split_mode),
                    Err(e) => Err(Error::validation(format!("instance failed to load: {e}"))),
                };
                result.unwrap_or_else(|e| {
                    log::error!(
                        "cell {} {} {} seed {} failed: {e}",
                        key.instance,
                        key.hit_range,
                        key.mode,
                        key.seed
                    );
                    CellReport::failed(key, &e)
                })
            })
            .collect()
    });
    let (report_path, summary_path) = emit_report(&cells, &spec.output_dir)?;
    Ok(ExperimentOutcome {
        cells,
        report_path,
        summary_path,
    })
}

fn num_cpus_physical() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn schema_validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let schema: Value = serde_json::from_str(REPORT_SCHEMA).expect("schema is valid JSON");
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

pub fn report_document(cells: &[CellReport]) -> Result<Value> {
    Ok(serde_json::json!({
        "format_version": 1,
        "cells": serde_json::to_value(cells)?,
    }))
}

/// Checks a report document against the bundled schema.
pub fn validate_report(doc: &Value) -> Result<()> {
    let errors: Vec<String> = schema_validator()
        .iter_errors(doc)
        .map(|e| format!("{}: {e}", e.instance_path()))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(Error::consistency(format!(
            "report violates its schema: {}",
            errors.join("; ")
        )))
    }
}

/// Writes `report.json` and `summary.tsv` into `dir`.
pub fn emit_report(cells: &[CellReport], dir: &Path) -> Result<(PathBuf, PathBuf)> {
    let doc = report_document(cells)?;
    validate_report(&doc)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let report_path = dir.join(REPORT_FILE);
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    fs::write(&report_path, text).map_err(|e| Error::io(&report_path, e))?;
    let summary_path = dir.join(SUMMARY_FILE);
    let mut f = fs::File::create(&summary_path).map_err(|e| Error::io(&summary_path, e))?;
    f.write_all(summary_table(cells).as_bytes())
        .map_err(|e| Error::io(&summary_path, e))?;
    Ok((report_path, summary_path))
}

pub const SUMMARY_HEADER: [&str; 16] = [
    "instance", "hit_range", "mode", "seed", "train_fraction", "#samples", "#comb", "obj", "UB",
    "time", "MCC", "spec", "sens", "F1", "gap", "status",
];

/// Tab-separated summary in the layout of the published tables. Metrics use
/// three decimals, gap and time two, UB three. Missing values print as `-`,
/// and a run stopped by a time limit prints `TL` as its time.
pub fn summary_table(cells: &[CellReport]) -> String {
    let mut out = SUMMARY_HEADER.join("\t");
    out.push('\n');
    let f3 = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3}"));
    for c in cells {
        let time = match (c.status, c.time_seconds) {
            (CellStatus::TimeLimit, _) => "TL".to_string(),
            (_, Some(t)) => format!("{:.2}", t.total),
            (_, None) => "-".to_string(),
        };
        let m = c.metrics_test.unwrap_or_default();
        let status = serde_json::to_value(c.status)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        let row = [
            c.instance.clone(),
            c.hit_range.to_string(),
            c.mode.to_string(),
            c.seed.to_string(),
            format!("{}", c.train_fraction),
            c.n_train.map_or("-".into(), |n| n.to_string()),
            c.n_comb.map_or("-".into(), |n| n.to_string()),
            c.objective.map_or("-".into(), |n| n.to_string()),
            f3(c.ub),
            time,
            f3(m.mcc),
            f3(m.specificity),
            f3(m.sensitivity),
            f3(m.f1),
            c.gap_percent.map_or("-".into(), |g| format!("{g:.2}")),
            status,
        ];
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// Reads a report back and re-validates it.
pub fn load_report(path: impl AsRef<Path>) -> Result<Vec<CellReport>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: Value = serde_json::from_str(&text)?;
    validate_report(&doc)?;
    let cells = doc
        .get("cells")
        .cloned()
        .ok_or_else(|| Error::validation("report has no cells"))?;
    Ok(serde_json::from_value(cells)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planted_spec(seed: u64) -> SyntheticSpec {
        SyntheticSpec {
            n_genes: 20,
            n_tumor: 12,
            n_normal: 6,
            planted: vec![vec![0, 1], vec![2, 3]],
            planted_rate: 1.0,
            background_rate: 0.0,
            normal_rate: 0.0,
            seed,
        }
    }

    #[test]
    fn synthetic_is_reproducible() {
        let mut s = planted_spec(4);
        s.background_rate = 0.1;
        s.normal_rate = 0.1;
        let a = generate_synthetic(&s).unwrap();
        let b = generate_synthetic(&s).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        s.seed = 5;
        assert_ne!(generate_synthetic(&s).unwrap().fingerprint(), a.fingerprint());
    }

    #[test]
    fn synthetic_rates() {
        let m = generate_synthetic(&planted_spec(1)).unwrap();
        for t in 0..m.tumor_count() {
            let s = m.tumor_sample(t);
            assert_eq!(s.mutations.ones().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        }
        assert!((0..m.normal_count()).all(|n| m.normal_sample(n).mutations.is_clear()));

        let zero = SyntheticSpec {
            planted_rate: 0.0,
            ..planted_spec(1)
        };
        assert_eq!(generate_synthetic(&zero).unwrap().prune_genes().n_genes(), 0);
    }

    #[test]
    fn synthetic_rejects_bad_specs() {
        let mut s = planted_spec(0);
        s.planted.push(vec![25]);
        assert!(matches!(generate_synthetic(&s), Err(Error::Validation(_))));
        let mut s = planted_spec(0);
        s.normal_rate = 1.5;
        assert!(generate_synthetic(&s).is_err());
    }

    #[test]
    fn toml_spec() {
        let spec = ExperimentSpec::from_toml_str(
            r#"
            hit_ranges = ["2-3", "2"]
            modes = ["mip_heuristic", "colgen"]
            seeds = [1, 2]
            output_dir = "out"

            [solver]
            beta = 4
            master_time_limit = 5.0

            [[instances]]
            format = "dense"
            path = "data/brca.tsv"

            [[instances]]
            format = "synthetic"
            n_genes = 10
            n_tumor = 5
            n_normal = 5
            planted = [[0, 1]]
            "#,
        )
        .unwrap();
        assert_eq!(spec.instances.len(), 2);
        assert_eq!(spec.instances[0].name(), "brca");
        assert_eq!(spec.solver.beta, 4);
        assert_eq!(spec.solver.master_time_limit, Duration::from_secs(5));
        assert_eq!(spec.train_fractions, vec![0.75]);
        assert!(spec.validate().is_ok());
        assert!(ExperimentSpec::from_toml_str("hit_ranges = [\"3-2\"]\ninstances = []").is_err());
    }

    #[test]
    fn summary_formats() {
        let key = CellKey {
            instance_idx: 0,
            instance: "x".into(),
            hit_range: HitRange::new(2, 3).unwrap(),
            train_fraction: 0.5,
            seed: 1,
            mode: Mode::ColGen,
        };
        let mut c = CellReport::failed(&key, &Error::validation("boom"));
        c.status = CellStatus::TimeLimit;
        c.time_seconds = Some(Timings::default());
        let t = summary_table(&[c]);
        let row: Vec<&str> = t.lines().nth(1).unwrap().split('\t').collect();
        assert_eq!(row[1], "2-3");
        assert_eq!(row[8], "-");
        assert_eq!(row[9], "TL");
        assert_eq!(row[14], "-");
    }

    #[test]
    fn failed_cell_validates() {
        let key = CellKey {
            instance_idx: 0,
            instance: "x".into(),
            hit_range: HitRange::exact(7).unwrap(),
            train_fraction: 0.75,
            seed: 0,
            mode: Mode::MipHeuristic,
        };
        let doc = report_document(&[CellReport::failed(&key, &Error::validation("x"))]).unwrap();
        validate_report(&doc).unwrap();
        let mut bad = doc.clone();
        bad["cells"][0]["mode"] = Value::from("cp");
        assert!(validate_report(&bad).is_err());
    }
}
