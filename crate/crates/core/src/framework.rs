//! Solve pipelines on a training matrix.
//!
//! [`colgen`] starts from an empty pool and alternates master relaxation,
//! rounding and pricing until no column has positive reduced cost, then
//! solves the binary master over the accumulated pool. [`mip_heuristic`] is
//! the same routine with a generated initial pool and pricing switched off.
//! [`exact_bruteforce`] enumerates everything and serves as the oracle on
//! small instances.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::data::{GeneCombination, HitRange, MutationMatrix};
use crate::error::{Error, Result};
use crate::generation::{self, binomial, GenerationConfig, DEFAULT_GAMMA1, DEFAULT_GAMMA2};
use crate::master::{build_master, round_selection, BinaryStatus, MasterModel, RmpSolution};
use crate::metrics::{self, compute_metrics, objective_value, optimality_gap, Metrics};
use crate::pricing::{solve_pricing_with_speedup, PricingProblem, SpeedupPolicy};

pub const DEFAULT_BETA: usize = 10;
pub const DEFAULT_MASTER_TIME_LIMIT: Duration = Duration::from_secs(30);
pub const DEFAULT_TOTAL_TIME_LIMIT: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "mip_heuristic")]
    MipHeuristic,
    #[serde(rename = "colgen")]
    ColGen,
    #[serde(rename = "exact_bruteforce")]
    ExactBruteforce,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::MipHeuristic => "mip_heuristic",
            Mode::ColGen => "colgen",
            Mode::ExactBruteforce => "exact_bruteforce",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "mip" | "mip_heuristic" => Ok(Mode::MipHeuristic),
            "colgen" | "column_generation" => Ok(Mode::ColGen),
            "exact" | "bruteforce" | "exact_bruteforce" => Ok(Mode::ExactBruteforce),
            _ => Err(Error::validation(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    /// Proven optimal over all combinations in the hit range.
    Optimal,
    /// Finished within its limits without an optimality proof.
    Completed,
    /// A time limit cut the run short.
    TimeLimit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub beta: usize,
    pub hit_range: HitRange,
    pub gamma1: usize,
    pub gamma2: usize,
    #[serde(with = "seconds")]
    pub master_time_limit: Duration,
    #[serde(with = "seconds")]
    pub total_time_limit: Duration,
    pub mode: Mode,
    pub seed: u64,
    /// Positive columns added per pricing round.
    pub pricing_columns: usize,
    pub pricing_speedup: SpeedupPolicy,
    pub skip_uncovering: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            beta: DEFAULT_BETA,
            hit_range: HitRange::new(2, 3).expect("valid range"),
            gamma1: DEFAULT_GAMMA1,
            gamma2: DEFAULT_GAMMA2,
            master_time_limit: DEFAULT_MASTER_TIME_LIMIT,
            total_time_limit: DEFAULT_TOTAL_TIME_LIMIT,
            mode: Mode::MipHeuristic,
            seed: 0,
            pricing_columns: 1,
            pricing_speedup: SpeedupPolicy::default(),
            skip_uncovering: false,
        }
    }
}

impl SolverConfig {
    pub fn new(hit_range: HitRange, mode: Mode) -> Self {
        SolverConfig {
            hit_range,
            mode,
            ..Self::default()
        }
    }

    pub fn generation_config(&self) -> GenerationConfig {
        GenerationConfig {
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            hit_range: self.hit_range,
            seed: self.seed,
            skip_uncovering: self.skip_uncovering,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta == 0 {
            return Err(Error::validation("beta must be at least 1"));
        }
        if self.master_time_limit.is_zero() || self.total_time_limit.is_zero() {
            return Err(Error::validation("time limits must be positive"));
        }
        if self.pricing_columns == 0 {
            return Err(Error::validation("pricing_columns must be at least 1"));
        }
        Ok(())
    }
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let v = f64::deserialize(d)?;
        Duration::try_from_secs_f64(v).map_err(serde::de::Error::custom)
    }
}

/// Wall-clock seconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub generation: f64,
    pub relaxation: f64,
    pub pricing: f64,
    pub binary: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveReport {
    pub mode: Mode,
    pub status: SolveStatus,
    /// Gene ids of each selected combination.
    pub selected: Vec<Vec<String>>,
    #[serde(skip)]
    pub combinations: Vec<GeneCombination>,
    pub lb_star: i64,
    /// Valid upper bound over all combinations; absent unless proven.
    pub ub_star: Option<f64>,
    pub gap_percent: Option<f64>,
    pub timings: Timings,
    pub colgen_iterations: u64,
    pub pricing_nodes: u64,
    pub columns: usize,
    pub binary_nodes: u64,
    pub lp_iterations: u64,
    /// LB* after every column generation iteration.
    pub lb_trace: Vec<i64>,
    pub train_objective: i64,
    pub metrics_train: Metrics,
}

impl SolveReport {
    pub fn n_comb(&self) -> usize {
        self.selected.len()
    }
}

/// Rounds a relaxation solution and evaluates the selection exactly.
pub fn rounding_heuristic(sol: &RmpSolution, model: &MasterModel) -> Result<(Vec<usize>, i64)> {
    let sel = round_selection(&sol.z, model.beta());
    let lb = model.evaluate(&sel)?;
    Ok((sel, lb))
}

pub fn solve(m: &MutationMatrix, cfg: &SolverConfig) -> Result<SolveReport> {
    match cfg.mode {
        Mode::MipHeuristic => mip_heuristic(m, cfg),
        Mode::ColGen => colgen(m, cfg),
        Mode::ExactBruteforce => exact_report(m, cfg),
    }
}

pub fn mip_heuristic(m: &MutationMatrix, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pool = generation::generate_candidates(m, &cfg.generation_config())?;
    let gen_time = start.elapsed().as_secs_f64();
    let mut report = run_framework(m, cfg, pool, false)?;
    report.mode = Mode::MipHeuristic;
    report.timings.generation = gen_time;
    report.timings.total += gen_time;
    Ok(report)
}

pub fn colgen(m: &MutationMatrix, cfg: &SolverConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let mut report = run_framework(m, cfg, Vec::new(), true)?;
    report.mode = Mode::ColGen;
    Ok(report)
}

fn run_framework(
    m: &MutationMatrix,
    cfg: &SolverConfig,
    initial: Vec<GeneCombination>,
    price: bool,
) -> Result<SolveReport> {
    let start = Instant::now();
    let deadline = start + cfg.total_time_limit;
    let mut model = build_master(m, initial, cfg.beta)?;
    let mut timings = Timings::default();

    let mut lb: i64 = 0;
    let mut best: Vec<usize> = Vec::new();
    let mut ub: Option<f64> = None;
    let mut timed_out = false;
    let mut iterations = 0u64;
    let mut pricing_nodes = 0u64;
    let mut lp_iterations = 0u64;
    let mut lb_trace = Vec::new();

    if price {
        if m.n_genes() < cfg.hit_range.k_min() {
            return Err(Error::validation(format!(
                "{} genes cannot form combinations of size {}",
                m.n_genes(),
                cfg.hit_range.k_min()
            )));
        }
        let mut history = FixedBitSet::with_capacity(m.n_genes());
        let mut warm = None;
        loop {
            if Instant::now() >= deadline {
                timed_out = true;
                break;
            }
            let t = Instant::now();
            let rmp = model.solve_relaxation_with(warm.as_ref(), Some(deadline))?;
            timings.relaxation += t.elapsed().as_secs_f64();
            lp_iterations += rmp.iterations as u64;
            if rmp.status != crate::lp::LpStatus::Optimal {
                timed_out = true;
                break;
            }
            let (sel, value) = rounding_heuristic(&rmp, &model)?;
            if value > lb {
                lb = value;
                best = sel;
            }
            lb_trace.push(lb);

            let t = Instant::now();
            let mut problem = PricingProblem::new(m, &rmp.duals, cfg.hit_range);
            problem.max_columns = cfg.pricing_columns;
            problem.deadline = Some(deadline);
            let priced = solve_pricing_with_speedup(&problem, &history, cfg.pricing_speedup)?;
            timings.pricing += t.elapsed().as_secs_f64();
            pricing_nodes += priced.nodes_explored;

            if priced.best.is_none() {
                if priced.proven_optimal {
                    ub = Some(rmp.objective);
                } else {
                    timed_out = true;
                }
                break;
            }
            for c in priced.columns {
                let genes = c.genes().to_vec();
                let rc = crate::pricing::reduced_cost(&c, &rmp.duals);
                if model.add_column(c)?.is_none() {
                    return Err(Error::consistency(format!(
                        "pricing returned column {genes:?} (reduced cost {rc:.3e}) that is \
                         already in the pool of {} after {iterations} iterations; \
                         relaxation objective {}, lambda {}",
                        model.columns().len(),
                        rmp.objective,
                        rmp.duals.lambda
                    )));
                }
                for g in genes {
                    history.insert(g);
                }
            }
            iterations += 1;
            warm = rmp.basis;
        }
        log::info!(
            "column generation: {iterations} iterations, {} columns, LB {lb}, UB {ub:?}",
            model.columns().len()
        );
    }

    let t = Instant::now();
    let bin = model.solve_binary(Some(cfg.master_time_limit), None)?;
    timings.binary = t.elapsed().as_secs_f64();
    lp_iterations += bin.lp_iterations;
    if bin.objective > lb || (bin.objective == lb && best.is_empty()) {
        lb = bin.objective;
        best = bin.selection.clone();
    }
    if bin.status == BinaryStatus::TimeLimit {
        timed_out = true;
    }
    if price {
        lb_trace.push(lb);
    }

    let gap = match ub {
        Some(u) => optimality_gap(lb, u)?,
        None => None,
    };
    let combinations = model.selection(&best);
    let train_objective = objective_value(&combinations, m)?;
    if train_objective != lb {
        return Err(Error::consistency(format!(
            "selection evaluates to {train_objective}, solver reported {lb}"
        )));
    }
    let proven = ub.is_some_and(|u| ((u + 1e-6).floor() as i64) <= lb);
    let status = if proven {
        SolveStatus::Optimal
    } else if timed_out {
        SolveStatus::TimeLimit
    } else {
        SolveStatus::Completed
    };
    timings.total = start.elapsed().as_secs_f64();
    Ok(SolveReport {
        mode: if price { Mode::ColGen } else { Mode::MipHeuristic },
        status,
        selected: combinations.iter().map(|c| c.gene_names(m)).collect(),
        metrics_train: compute_metrics(&metrics::confusion(&combinations, m)?),
        combinations,
        lb_star: lb,
        ub_star: ub,
        gap_percent: gap,
        timings,
        colgen_iterations: iterations,
        pricing_nodes,
        columns: model.columns().len(),
        binary_nodes: bin.nodes,
        lp_iterations,
        lb_trace,
        train_objective,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCaps {
    pub max_genes: usize,
    pub max_pool: usize,
    pub max_beta: usize,
}

impl Default for BruteForceCaps {
    fn default() -> Self {
        BruteForceCaps {
            max_genes: 15,
            max_pool: 5_000,
            max_beta: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BruteForceResult {
    pub selection: Vec<GeneCombination>,
    pub objective: i64,
}

/// Every combination in the hit range, in lexicographic gene order.
pub fn enumerate_combinations(m: &MutationMatrix, hit_range: HitRange) -> Vec<GeneCombination> {
    let n = m.n_genes();
    let mut out = Vec::new();
    for k in hit_range.k_min()..=hit_range.k_max().min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(GeneCombination::from_sorted_unchecked(idx.clone(), m));
            // next k-subset of 0..n
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

/// True optimum by enumeration of every selection of at most `beta`
/// combinations.
///
/// Combinations covering no tumor and combinations whose coverage repeats an
/// earlier one are dropped, and a selection is only extended by a column that
/// covers a new tumor. Each reduction keeps at least one optimal selection.
pub fn exact_bruteforce(
    m: &MutationMatrix,
    hit_range: HitRange,
    beta: usize,
    caps: BruteForceCaps,
) -> Result<BruteForceResult> {
    if m.n_genes() > caps.max_genes {
        return Err(Error::CapExceeded(format!(
            "gene count {} exceeds the cap of {}",
            m.n_genes(),
            caps.max_genes
        )));
    }
    if beta > caps.max_beta {
        return Err(Error::CapExceeded(format!(
            "beta {beta} exceeds the cap of {}",
            caps.max_beta
        )));
    }
    let pool_size: u128 = (hit_range.k_min()..=hit_range.k_max())
        .map(|k| binomial(m.n_genes() as u64, k as u64))
        .sum();
    if pool_size > caps.max_pool as u128 {
        return Err(Error::CapExceeded(format!(
            "pool of {pool_size} combinations exceeds the cap of {}",
            caps.max_pool
        )));
    }

    let mut seen = std::collections::HashSet::new();
    let pool: Vec<GeneCombination> = enumerate_combinations(m, hit_range)
        .into_iter()
        .filter(|c| !c.tumor_cover().is_clear())
        .filter(|c| seen.insert((c.tumor_cover().clone(), c.normal_cover().clone())))
        .collect();
    let penalty: Vec<i64> = pool.iter().map(|c| c.normal_cover().count_ones(..) as i64).collect();

    struct Dfs<'p> {
        pool: &'p [GeneCombination],
        penalty: &'p [i64],
        beta: usize,
        n_tumor: i64,
        chosen: Vec<usize>,
        best: i64,
        best_sel: Vec<usize>,
    }
    impl Dfs<'_> {
        fn go(&mut self, start: usize, covered: &FixedBitSet, n_covered: i64, pen: i64) {
            let obj = n_covered - pen;
            if obj > self.best {
                self.best = obj;
                self.best_sel = self.chosen.clone();
            }
            if self.chosen.len() == self.beta || obj + (self.n_tumor - n_covered) <= self.best {
                return;
            }
            let mut next = covered.clone();
            for j in start..self.pool.len() {
                let c = &self.pool[j];
                if c.tumor_cover().is_subset(covered) {
                    continue;
                }
                next.clone_from(covered);
                next.union_with(c.tumor_cover());
                let nc = next.count_ones(..) as i64;
                self.chosen.push(j);
                let snapshot = next.clone();
                self.go(j + 1, &snapshot, nc, pen + self.penalty[j]);
                self.chosen.pop();
            }
        }
    }
    let mut dfs = Dfs {
        pool: &pool,
        penalty: &penalty,
        beta,
        n_tumor: m.tumor_count() as i64,
        chosen: Vec::new(),
        best: 0,
        best_sel: Vec::new(),
    };
    dfs.go(0, &FixedBitSet::with_capacity(m.tumor_count()), 0, 0);
    let selection: Vec<GeneCombination> = dfs.best_sel.iter().map(|&j| pool[j].clone()).collect();
    let objective = objective_value(&selection, m)?;
    if objective != dfs.best {
        return Err(Error::consistency("brute force bookkeeping disagrees with re-evaluation"));
    }
    Ok(BruteForceResult {
        selection,
        objective,
    })
}

fn exact_report(m: &MutationMatrix, cfg: &SolverConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let r = exact_bruteforce(m, cfg.hit_range, cfg.beta, BruteForceCaps::default())?;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(SolveReport {
        mode: Mode::ExactBruteforce,
        status: SolveStatus::Optimal,
        selected: r.selection.iter().map(|c| c.gene_names(m)).collect(),
        metrics_train: compute_metrics(&metrics::confusion(&r.selection, m)?),
        combinations: r.selection,
        lb_star: r.objective,
        ub_star: Some(r.objective as f64),
        gap_percent: optimality_gap(r.objective, r.objective as f64)?,
        timings: Timings {
            binary: elapsed,
            total: elapsed,
            ..Timings::default()
        },
        colgen_iterations: 0,
        pricing_nodes: 0,
        columns: 0,
        binary_nodes: 0,
        lp_iterations: 0,
        lb_trace: Vec::new(),
        train_objective: r.objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::fixtures::figure_one;
    use crate::data::Label;

    fn quick(mode: Mode, beta: usize, hit: HitRange) -> SolverConfig {
        SolverConfig {
            beta,
            ..SolverConfig::new(hit, mode)
        }
    }

    #[test]
    fn figure_one_bruteforce() {
        let m = figure_one();
        let r = exact_bruteforce(&m, HitRange::exact(2).unwrap(), 2, BruteForceCaps::default()).unwrap();
        assert_eq!(r.objective, 1);
        let r0 = exact_bruteforce(&m, HitRange::exact(2).unwrap(), 0, BruteForceCaps::default()).unwrap();
        assert_eq!((r0.objective, r0.selection.len()), (0, 0));
    }

    #[test]
    fn caps_are_named() {
        let m = figure_one();
        let caps = BruteForceCaps {
            max_genes: 5,
            ..BruteForceCaps::default()
        };
        let e = exact_bruteforce(&m, HitRange::exact(2).unwrap(), 1, caps).unwrap_err();
        assert!(e.to_string().contains("gene count"));
        let e = exact_bruteforce(&m, HitRange::exact(2).unwrap(), 4, BruteForceCaps::default()).unwrap_err();
        assert!(e.to_string().contains("beta"));
    }

    #[test]
    fn enumeration_counts() {
        let m = figure_one();
        assert_eq!(enumerate_combinations(&m, HitRange::new(2, 3).unwrap()).len(), 21 + 35);
    }

    #[test]
    fn colgen_on_figure_one() {
        let m = figure_one();
        let r = colgen(&m, &quick(Mode::ColGen, 2, HitRange::exact(2).unwrap())).unwrap();
        assert_eq!(r.lb_star, 1);
        assert!(r.ub_star.unwrap() >= 1.0 - 1e-9);
        assert!(r.lb_trace.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(r.train_objective, r.lb_star);
    }

    #[test]
    fn colgen_without_tumor_coverage() {
        let genes = (0..4).map(|g| format!("g{g}")).collect();
        let m = MutationMatrix::from_rows(
            genes,
            vec![
                ("t1", Label::Tumor, vec![false; 4]),
                ("t2", Label::Tumor, vec![false; 4]),
                ("n1", Label::Normal, vec![true; 4]),
            ],
        )
        .unwrap();
        let r = colgen(&m, &quick(Mode::ColGen, 3, HitRange::new(2, 3).unwrap())).unwrap();
        assert_eq!(r.lb_star, 0);
        assert_eq!(r.ub_star, Some(0.0));
        assert_eq!(r.colgen_iterations, 0);
        assert_eq!(r.status, SolveStatus::Optimal);
    }

    #[test]
    fn mip_heuristic_tiny_pool() {
        let m = figure_one();
        let mut cfg = quick(Mode::MipHeuristic, 2, HitRange::exact(2).unwrap());
        cfg.gamma2 = 1;
        let r = mip_heuristic(&m, &cfg).unwrap();
        assert!(r.ub_star.is_none());
        assert!(r.lb_star >= 0);
        assert!(r.n_comb() <= 1);
    }

    #[test]
    fn mode_names() {
        assert_eq!("colgen".parse::<Mode>().unwrap(), Mode::ColGen);
        assert_eq!("MIP".parse::<Mode>().unwrap(), Mode::MipHeuristic);
        assert!("cp".parse::<Mode>().is_err());
        assert_eq!(serde_json::to_string(&Mode::ExactBruteforce).unwrap(), "\"exact_bruteforce\"");
    }

    #[test]
    fn config_round_trip() {
        let cfg = SolverConfig::default();
        let s = serde_json::to_string(&cfg).unwrap();
        let back: SolverConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(cfg, back);
        let partial: SolverConfig = serde_json::from_str(r#"{"beta": 4, "hit_range": "7"}"#).unwrap();
        assert_eq!(partial.beta, 4);
        assert_eq!(partial.hit_range, HitRange::exact(7).unwrap());
        assert_eq!(partial.master_time_limit, DEFAULT_MASTER_TIME_LIMIT);
    }
}
