//! Pricing: the gene combination of admissible size with the largest reduced
//! cost `Σ π_t − Σ μ_n − λ` over the samples it covers.
//!
//! The search is a depth-first enumeration of gene subsets in tumor-frequency
//! order. Adding genes only shrinks coverage, so `Σ π_t` over the current
//! tumor cover minus `λ` bounds every superset (see [`node_bound`]).

use std::time::Instant;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::data::{GeneCombination, HitRange, MutationMatrix};
use crate::error::{Error, Result};
use crate::generation::rank_genes_by_tumor_frequency;
use crate::master::DualPrices;

/// A column is worth adding only if its reduced cost exceeds this.
pub const DEFAULT_EPSILON: f64 = 1e-6;

pub fn reduced_cost(c: &GeneCombination, d: &DualPrices) -> f64 {
    let gain: f64 = c.tumor_cover().ones().map(|t| d.pi[t]).sum();
    let loss: f64 = c.normal_cover().ones().map(|n| d.mu[n]).sum();
    gain - loss - d.lambda
}

/// Upper bound on the reduced cost of any combination whose tumor cover is
/// contained in `tumor_cover`.
pub fn node_bound(tumor_cover: &FixedBitSet, d: &DualPrices) -> f64 {
    tumor_cover.ones().map(|t| d.pi[t].max(0.0)).sum::<f64>() - d.lambda
}

#[derive(Debug, Clone)]
pub struct PricingProblem<'a> {
    pub matrix: &'a MutationMatrix,
    pub duals: &'a DualPrices,
    pub hit_range: HitRange,
    pub allowed_genes: FixedBitSet,
    pub epsilon: f64,
    /// Number of distinct positive columns to return; the maximiser is first.
    pub max_columns: usize,
    pub deadline: Option<Instant>,
}

impl<'a> PricingProblem<'a> {
    pub fn new(matrix: &'a MutationMatrix, duals: &'a DualPrices, hit_range: HitRange) -> Self {
        let mut allowed_genes = FixedBitSet::with_capacity(matrix.n_genes());
        allowed_genes.insert_range(..);
        PricingProblem {
            matrix,
            duals,
            hit_range,
            allowed_genes,
            epsilon: DEFAULT_EPSILON,
            max_columns: 1,
            deadline: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PricingResult {
    /// The maximiser, if its reduced cost exceeds epsilon.
    pub best: Option<GeneCombination>,
    /// Up to `max_columns` positive columns, best first.
    pub columns: Vec<GeneCombination>,
    /// Largest reduced cost found among admissible combinations.
    pub reduced_cost: f64,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
}

/// How the restricted-gene speedup reports a positive column found without
/// the full search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedupPolicy {
    /// Always search the full gene set.
    Off,
    /// Restricted search first, then the full search seeded with its
    /// incumbent. Same value as a plain full solve.
    Certify,
    /// Return a positive restricted column immediately, marked unproven;
    /// fall back to the full search only when the restriction finds nothing.
    #[default]
    ReturnRestricted,
}

pub fn solve_pricing(p: &PricingProblem) -> Result<PricingResult> {
    solve_seeded(p, None)
}

/// Restricted solve over `history ∩ allowed_genes`, followed by the full
/// solve as dictated by `policy`.
pub fn solve_pricing_with_speedup(
    p: &PricingProblem,
    history: &FixedBitSet,
    policy: SpeedupPolicy,
) -> Result<PricingResult> {
    let mut restricted_genes = p.allowed_genes.clone();
    restricted_genes.intersect_with(history);
    if policy == SpeedupPolicy::Off
        || restricted_genes.count_ones(..) < p.hit_range.k_min()
        || restricted_genes == p.allowed_genes
    {
        return solve_pricing(p);
    }
    let restricted = PricingProblem {
        allowed_genes: restricted_genes,
        ..p.clone()
    };
    let r = solve_pricing(&restricted)?;
    if !r.proven_optimal {
        return Ok(r);
    }
    if r.best.is_some() && policy == SpeedupPolicy::ReturnRestricted {
        return Ok(PricingResult {
            proven_optimal: false,
            ..r
        });
    }
    let mut full = solve_seeded(p, Some(&r))?;
    full.nodes_explored += r.nodes_explored;
    Ok(full)
}

struct Search<'p, 'a> {
    p: &'p PricingProblem<'a>,
    order: Vec<usize>,
    k_min: usize,
    k_max: usize,
    /// Per-depth coverage buffers.
    tumor: Vec<FixedBitSet>,
    normal: Vec<FixedBitSet>,
    genes: Vec<usize>,
    best_value: f64,
    best_genes: Option<Vec<usize>>,
    /// Positive columns, sorted by value descending, length ≤ max_columns.
    top: Vec<(f64, Vec<usize>)>,
    nodes: u64,
    stopped: bool,
}

impl Search<'_, '_> {
    fn threshold(&self) -> f64 {
        if self.top.len() >= self.p.max_columns.max(1) {
            self.top.last().map(|(v, _)| *v).unwrap_or(self.best_value)
        } else {
            self.best_value.min(self.p.epsilon)
        }
    }

    fn record(&mut self, value: f64) {
        if value > self.best_value {
            self.best_value = value;
            self.best_genes = Some(self.genes.clone());
        }
        if value > self.p.epsilon {
            let cap = self.p.max_columns.max(1);
            if self.top.len() < cap || value > self.top.last().map_or(f64::NEG_INFINITY, |t| t.0) {
                let pos = self.top.partition_point(|(v, _)| *v >= value);
                self.top.insert(pos, (value, self.genes.clone()));
                self.top.truncate(cap);
            }
        }
    }

    fn explore(&mut self, start: usize) {
        let depth = self.genes.len();
        for i in start..self.order.len() {
            if self.stopped {
                return;
            }
            let remaining = self.order.len() - i;
            if depth + remaining < self.k_min {
                return;
            }
            self.nodes += 1;
            if self.nodes.is_multiple_of(1024) && self.p.deadline.is_some_and(|d| Instant::now() >= d) {
                self.stopped = true;
                return;
            }
            let g = self.order[i];
            let (lo, hi) = self.tumor.split_at_mut(depth + 1);
            hi[0].clone_from(&lo[depth]);
            hi[0].intersect_with(self.p.matrix.tumor_column(g));
            let (lo, hi) = self.normal.split_at_mut(depth + 1);
            hi[0].clone_from(&lo[depth]);
            hi[0].intersect_with(self.p.matrix.normal_column(g));

            let bound = node_bound(&self.tumor[depth + 1], self.p.duals);
            if bound <= self.threshold() {
                continue;
            }
            self.genes.push(g);
            let size = depth + 1;
            if size >= self.k_min {
                let d = self.p.duals;
                let gain: f64 = self.tumor[size].ones().map(|t| d.pi[t]).sum();
                let loss: f64 = self.normal[size].ones().map(|n| d.mu[n]).sum();
                self.record(gain - loss - d.lambda);
            }
            if size < self.k_max {
                self.explore(i + 1);
            }
            self.genes.pop();
        }
    }
}

fn solve_seeded(p: &PricingProblem, seed: Option<&PricingResult>) -> Result<PricingResult> {
    let m = p.matrix;
    if p.duals.pi.len() != m.tumor_count() || p.duals.mu.len() != m.normal_count() {
        return Err(Error::validation("dual prices do not match the matrix"));
    }
    let allowed = p.allowed_genes.count_ones(..);
    if allowed == 0 {
        return Err(Error::validation("pricing needs at least one allowed gene"));
    }
    let k_min = p.hit_range.k_min();
    if k_min > allowed {
        return Err(Error::validation(format!(
            "minimum hit size {k_min} exceeds the {allowed} allowed genes"
        )));
    }
    let order: Vec<usize> = rank_genes_by_tumor_frequency(m)
        .unwrap_or_else(|_| (0..m.n_genes()).collect())
        .into_iter()
        .filter(|&g| p.allowed_genes.contains(g))
        .collect();
    let k_max = p.hit_range.k_max().min(order.len());

    let mut root_t = FixedBitSet::with_capacity(m.tumor_count());
    root_t.insert_range(..);
    let mut root_n = FixedBitSet::with_capacity(m.normal_count());
    root_n.insert_range(..);
    let mut s = Search {
        p,
        order,
        k_min,
        k_max,
        tumor: vec![root_t; k_max + 1],
        normal: vec![root_n; k_max + 1],
        genes: Vec::with_capacity(k_max),
        best_value: f64::NEG_INFINITY,
        best_genes: None,
        top: Vec::new(),
        nodes: 0,
        stopped: false,
    };
    if let Some(r) = seed {
        if let Some(b) = &r.best {
            s.best_value = r.reduced_cost;
            s.best_genes = Some(b.genes().to_vec());
        }
        s.top = r
            .columns
            .iter()
            .map(|c| (reduced_cost(c, p.duals), c.genes().to_vec()))
            .collect();
    }
    s.explore(0);

    let build = |genes: &[usize]| GeneCombination::from_sorted_unchecked(sorted(genes), m);
    let columns: Vec<GeneCombination> = s.top.iter().map(|(_, g)| build(g)).collect();
    let best = if s.best_value > p.epsilon {
        s.best_genes.as_deref().map(build)
    } else {
        None
    };
    Ok(PricingResult {
        best,
        columns,
        reduced_cost: s.best_value,
        proven_optimal: !s.stopped,
        nodes_explored: s.nodes,
    })
}

fn sorted(genes: &[usize]) -> Vec<usize> {
    let mut v = genes.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::fixtures::figure_one;
    use crate::data::Label;

    #[test]
    fn formula() {
        let m = figure_one();
        let c = GeneCombination::new(vec![0, 1], &m).unwrap();
        // covers t1, t2 and n1
        let d = DualPrices {
            pi: vec![0.3, 0.4, 0.9],
            mu: vec![0.2, 5.0],
            lambda: 0.1,
        };
        assert!((reduced_cost(&c, &d) - 0.4).abs() < 1e-12);
        let none = GeneCombination::new(vec![2, 4], &m).unwrap();
        assert!((reduced_cost(&none, &d) + 0.1).abs() < 1e-12);
        assert_eq!(reduced_cost(&c, &DualPrices::zeros(&m)), 0.0);
    }

    #[test]
    fn zero_duals_give_nothing() {
        let m = figure_one();
        let d = DualPrices::zeros(&m);
        let r = solve_pricing(&PricingProblem::new(&m, &d, HitRange::new(2, 3).unwrap())).unwrap();
        assert!(r.best.is_none());
        assert!(r.proven_optimal);
        assert_eq!(r.reduced_cost, 0.0);
    }

    #[test]
    fn forced_singleton() {
        let m = MutationMatrix::from_rows(
            vec!["a".into(), "b".into()],
            vec![
                ("t", Label::Tumor, vec![true, false]),
                ("n", Label::Normal, vec![false, true]),
            ],
        )
        .unwrap();
        let d = DualPrices {
            pi: vec![1.0],
            mu: vec![0.0],
            lambda: 0.0,
        };
        let r = solve_pricing(&PricingProblem::new(&m, &d, HitRange::exact(1).unwrap())).unwrap();
        assert_eq!(r.best.unwrap().genes(), &[0]);
        assert_eq!(r.reduced_cost, 1.0);
    }

    #[test]
    fn k_min_above_allowed_is_an_error() {
        let m = figure_one();
        let d = DualPrices::zeros(&m);
        let mut p = PricingProblem::new(&m, &d, HitRange::new(2, 3).unwrap());
        p.allowed_genes.clear();
        p.allowed_genes.insert(0);
        assert!(solve_pricing(&p).is_err());
    }

    #[test]
    fn speedup_policies_agree_on_value() {
        let m = figure_one();
        let d = DualPrices {
            pi: vec![0.2, 0.2, 1.0],
            mu: vec![0.1, 0.1],
            lambda: 0.05,
        };
        let p = PricingProblem::new(&m, &d, HitRange::exact(2).unwrap());
        let plain = solve_pricing(&p).unwrap();
        // history holds only g1, g2 which miss the best column on t3
        let mut history = FixedBitSet::with_capacity(7);
        history.insert(0);
        history.insert(1);
        let cert = solve_pricing_with_speedup(&p, &history, SpeedupPolicy::Certify).unwrap();
        assert_eq!(cert.reduced_cost, plain.reduced_cost);
        assert!(cert.proven_optimal);
        let fast = solve_pricing_with_speedup(&p, &history, SpeedupPolicy::ReturnRestricted).unwrap();
        assert!(!fast.proven_optimal);
        assert!(fast.reduced_cost <= plain.reduced_cost);
        let empty = FixedBitSet::with_capacity(7);
        let first = solve_pricing_with_speedup(&p, &empty, SpeedupPolicy::ReturnRestricted).unwrap();
        assert_eq!(first.reduced_cost, plain.reduced_cost);
        assert!(first.proven_optimal);
    }

    #[test]
    fn top_columns_are_sorted() {
        let m = figure_one();
        let d = DualPrices {
            pi: vec![1.0, 1.0, 1.0],
            mu: vec![0.0, 0.0],
            lambda: 0.0,
        };
        let mut p = PricingProblem::new(&m, &d, HitRange::exact(2).unwrap());
        p.max_columns = 3;
        let r = solve_pricing(&p).unwrap();
        assert_eq!(r.columns.len(), 3);
        let vals: Vec<f64> = r.columns.iter().map(|c| reduced_cost(c, &d)).collect();
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(vals[0], r.reduced_cost);
        assert_eq!(r.reduced_cost, 2.0);
    }
}
