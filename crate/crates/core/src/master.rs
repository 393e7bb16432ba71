//! Restricted master problem over a column pool: its LP relaxation with dual
//! prices, and a branch-and-bound solve of the binary version.
//!
//! Variable layout is `x_t` for every tumor, then `y_n` for every normal,
//! then one `z_c` per column. Row layout is one row per tumor
//! (`x_t - Σ z_c <= 0`), one per normal (`Σ z_c - y_n <= 0`) and the
//! cardinality row `Σ z_c <= β`.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::data::{GeneCombination, MutationMatrix};
use crate::error::{Error, Result};
use crate::lp::{self, Basis, LinearProgram, LpOptions, LpSolution, LpStatus};
use crate::metrics::objective_value;

/// Values below this count as zero when rounding or testing integrality.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Called with the column indices and objective of each new incumbent.
pub type IncumbentHook<'a> = &'a mut dyn FnMut(&[usize], i64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualPrices {
    pub pi: Vec<f64>,
    pub mu: Vec<f64>,
    pub lambda: f64,
}

impl DualPrices {
    pub fn zeros(m: &MutationMatrix) -> Self {
        DualPrices {
            pi: vec![0.0; m.tumor_count()],
            mu: vec![0.0; m.normal_count()],
            lambda: 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RmpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub objective: f64,
    pub duals: DualPrices,
    pub basis: Option<Basis>,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinaryStatus {
    Optimal,
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct BinaryResult {
    /// Column indices into the pool, ascending.
    pub selection: Vec<usize>,
    pub objective: i64,
    /// Best bound over the pool; equals `objective` when optimal.
    pub bound: f64,
    pub status: BinaryStatus,
    pub nodes: u64,
    pub lp_iterations: u64,
}

pub struct MasterModel<'a> {
    matrix: &'a MutationMatrix,
    columns: Vec<GeneCombination>,
    beta: usize,
    lp: LinearProgram,
    seen: HashSet<Vec<usize>>,
}

pub fn build_master<'a>(
    m: &'a MutationMatrix,
    columns: impl IntoIterator<Item = GeneCombination>,
    beta: usize,
) -> Result<MasterModel<'a>> {
    if beta == 0 {
        return Err(Error::validation("beta must be at least 1"));
    }
    let (nt, nn) = (m.tumor_count(), m.normal_count());
    let mut lp = LinearProgram::new();
    for _ in 0..nt + nn {
        lp.add_row(0.0);
    }
    lp.add_row(beta as f64);
    for t in 0..nt {
        lp.add_column(1.0, 0.0, 1.0, &[(t, 1.0)]).expect("row exists");
    }
    for n in 0..nn {
        lp.add_column(-1.0, 0.0, f64::INFINITY, &[(nt + n, -1.0)])
            .expect("row exists");
    }
    let mut model = MasterModel {
        matrix: m,
        columns: Vec::new(),
        beta,
        lp,
        seen: HashSet::new(),
    };
    for c in columns {
        if model.add_column(c.clone())?.is_none() {
            log::debug!("dropping duplicate initial column {:?}", c.genes());
        }
    }
    Ok(model)
}

impl<'a> MasterModel<'a> {
    pub fn matrix(&self) -> &'a MutationMatrix {
        self.matrix
    }

    pub fn columns(&self) -> &[GeneCombination] {
        &self.columns
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    pub fn num_rows(&self) -> usize {
        self.lp.num_rows()
    }

    pub fn num_vars(&self) -> usize {
        self.lp.num_vars()
    }

    fn z_offset(&self) -> usize {
        self.matrix.tumor_count() + self.matrix.normal_count()
    }

    pub fn contains(&self, c: &GeneCombination) -> bool {
        self.seen.contains(c.genes())
    }

    /// Appends `c` and returns its column index, or `None` if it is already
    /// in the pool (the model is left untouched).
    pub fn add_column(&mut self, c: GeneCombination) -> Result<Option<usize>> {
        if !c.matches_shape(self.matrix) {
            return Err(Error::validation(format!(
                "column {:?} does not match the master's matrix",
                c.genes()
            )));
        }
        if self.seen.contains(c.genes()) {
            return Ok(None);
        }
        let nt = self.matrix.tumor_count();
        let mut entries: Vec<(usize, f64)> = c.tumor_cover().ones().map(|t| (t, -1.0)).collect();
        entries.extend(c.normal_cover().ones().map(|n| (nt + n, 1.0)));
        entries.push((self.z_offset(), 1.0));
        self.lp
            .add_column(0.0, 0.0, f64::INFINITY, &entries)
            .expect("rows exist");
        self.seen.insert(c.genes().to_vec());
        self.columns.push(c);
        Ok(Some(self.columns.len() - 1))
    }

    pub fn solve_relaxation(&self, warm: Option<&Basis>) -> Result<RmpSolution> {
        self.solve_relaxation_with(warm, None)
    }

    pub fn solve_relaxation_with(
        &self,
        warm: Option<&Basis>,
        deadline: Option<Instant>,
    ) -> Result<RmpSolution> {
        let opts = LpOptions {
            deadline,
            ..LpOptions::default()
        };
        let sol = lp::solve_lp_with(&self.lp, warm, &opts)
            .map_err(|e| Error::consistency(format!("master LP rejected: {e}")))?;
        match sol.status {
            LpStatus::Optimal | LpStatus::IterationLimit => Ok(self.unpack(sol)),
            s => Err(Error::consistency(format!("master relaxation reported {s:?}"))),
        }
    }

    fn unpack(&self, sol: LpSolution) -> RmpSolution {
        let (nt, nn) = (self.matrix.tumor_count(), self.matrix.normal_count());
        let clamp = |v: f64| v.max(0.0);
        RmpSolution {
            status: sol.status,
            x: sol.x[..nt].to_vec(),
            y: sol.x[nt..nt + nn].to_vec(),
            z: sol.x[nt + nn..].to_vec(),
            objective: sol.objective,
            duals: DualPrices {
                pi: sol.duals[..nt].iter().copied().map(clamp).collect(),
                mu: sol.duals[nt..nt + nn].iter().copied().map(clamp).collect(),
                lambda: clamp(sol.duals[nt + nn]),
            },
            basis: sol.basis,
            iterations: sol.iterations,
        }
    }

    pub fn selection(&self, indices: &[usize]) -> Vec<GeneCombination> {
        indices.iter().map(|&i| self.columns[i].clone()).collect()
    }

    /// Exact objective of a set of pool columns.
    pub fn evaluate(&self, indices: &[usize]) -> Result<i64> {
        objective_value(indices.iter().map(|&i| &self.columns[i]), self.matrix)
    }

    /// Branch-and-bound over `z_c ∈ {0,1}`.
    ///
    /// Dives depth-first (up branch first) until the first incumbent, then
    /// explores best-bound first. Branches on the most fractional `z_c`, ties
    /// to the lowest column index. `on_incumbent` sees every improvement.
    pub fn solve_binary(
        &self,
        time_limit: Option<Duration>,
        mut on_incumbent: Option<IncumbentHook<'_>>,
    ) -> Result<BinaryResult> {
        let start = Instant::now();
        let deadline = time_limit.map(|d| start + d);
        let off = self.z_offset();
        let ncols = self.columns.len();
        let mut lp = self.lp.clone();
        for j in 0..ncols {
            lp.set_bounds(off + j, 0.0, 1.0);
        }

        let mut best_sel: Vec<usize> = Vec::new();
        let mut best_obj: i64 = 0;
        let mut found = false;
        let mut nodes = 0u64;
        let mut lp_iterations = 0u64;
        let mut next_id = 0u64;

        let mut dive: Vec<Node> = vec![Node {
            id: 0,
            bound: f64::INFINITY,
            fixings: Vec::new(),
            basis: None,
        }];
        let mut heap: BinaryHeap<Node> = BinaryHeap::new();
        let mut applied: Vec<(usize, bool)> = Vec::new();
        let mut timed_out = false;
        let mut open_bound = f64::NEG_INFINITY;

        loop {
            let node = if !found {
                match dive.pop() {
                    Some(n) => n,
                    None => break,
                }
            } else {
                heap.extend(dive.drain(..));
                match heap.pop() {
                    Some(n) => n,
                    None => break,
                }
            };
            if node.bound.is_finite() && prunable(node.bound, best_obj) {
                continue;
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                open_bound = open_bound.max(node.bound);
                timed_out = true;
                dive.push(node);
                break;
            }

            for &(j, _) in &applied {
                lp.set_bounds(off + j, 0.0, 1.0);
            }
            for &(j, up) in &node.fixings {
                let v = if up { 1.0 } else { 0.0 };
                lp.set_bounds(off + j, v, v);
            }
            applied.clone_from(&node.fixings);

            nodes += 1;
            let opts = LpOptions {
                deadline,
                ..LpOptions::default()
            };
            let sol = lp::solve_lp_with(&lp, node.basis.as_ref(), &opts)
                .map_err(|e| Error::consistency(format!("node LP rejected: {e}")))?;
            lp_iterations += sol.iterations as u64;
            match sol.status {
                LpStatus::Optimal => {}
                LpStatus::Infeasible => continue,
                LpStatus::IterationLimit => {
                    open_bound = open_bound.max(node.bound);
                    timed_out = true;
                    dive.push(node);
                    break;
                }
                LpStatus::Unbounded => {
                    return Err(Error::consistency("binary master node LP unbounded"));
                }
            }
            let bound = sol.objective;
            let z = &sol.x[off..];

            let rounded = round_selection(z, self.beta);
            let obj = self.evaluate(&rounded)?;
            let mut improve = |sel: Vec<usize>, obj: i64, best_sel: &mut Vec<usize>, best_obj: &mut i64| {
                if obj > *best_obj {
                    *best_obj = obj;
                    *best_sel = sel;
                    if let Some(cb) = on_incumbent.as_mut() {
                        cb(best_sel, *best_obj);
                    }
                }
            };
            improve(rounded, obj, &mut best_sel, &mut best_obj);

            let branch = most_fractional(z);
            match branch {
                None => {
                    let sel: Vec<usize> = (0..ncols).filter(|&j| z[j] > 0.5).collect();
                    let obj = self.evaluate(&sel)?;
                    if (obj as f64) + 1e-6 < bound - 1e-6 {
                        log::debug!("integral node LP {bound} evaluates to {obj}");
                    }
                    improve(sel, obj, &mut best_sel, &mut best_obj);
                    found = true;
                    continue;
                }
                Some(j) => {
                    if best_obj > 0 {
                        found = true;
                    }
                    if prunable(bound, best_obj) {
                        continue;
                    }
                    let child = |up: bool, id: u64| {
                        let mut fixings = node.fixings.clone();
                        fixings.push((j, up));
                        Node {
                            id,
                            bound,
                            fixings,
                            basis: sol.basis.clone(),
                        }
                    };
                    let down = child(false, next_id + 1);
                    let up = child(true, next_id + 2);
                    next_id += 2;
                    dive.push(down);
                    dive.push(up);
                }
            }
        }

        let status = if timed_out {
            BinaryStatus::TimeLimit
        } else {
            BinaryStatus::Optimal
        };
        let bound = if timed_out {
            let open = dive
                .iter()
                .chain(heap.iter())
                .map(|n| n.bound)
                .fold(open_bound, f64::max);
            open.max(best_obj as f64)
        } else {
            best_obj as f64
        };
        best_sel.sort_unstable();
        log::debug!(
            "binary master: {status:?} obj {best_obj} bound {bound} after {nodes} nodes in {:.3}s",
            start.elapsed().as_secs_f64()
        );
        Ok(BinaryResult {
            selection: best_sel,
            objective: best_obj,
            bound,
            status,
            nodes,
            lp_iterations,
        })
    }
}

fn prunable(bound: f64, incumbent: i64) -> bool {
    (bound + INTEGRALITY_TOL).floor() <= incumbent as f64
}

fn most_fractional(z: &[f64]) -> Option<usize> {
    let mut best = None;
    let mut best_dist = INTEGRALITY_TOL;
    for (j, &v) in z.iter().enumerate() {
        let frac = v - v.floor();
        let dist = frac.min(1.0 - frac);
        if dist > best_dist + 1e-12 {
            best_dist = dist;
            best = Some(j);
        }
    }
    best
}

/// Indices of the `⌈Σz⌉` largest entries of `z`, ties by lowest index.
///
/// The count is capped by `beta` and by the number of entries above
/// [`INTEGRALITY_TOL`], so a zero column is never picked to pad the count.
pub fn round_selection(z: &[f64], beta: usize) -> Vec<usize> {
    let total: f64 = z.iter().sum();
    let support = z.iter().filter(|&&v| v > INTEGRALITY_TOL).count();
    let k = ((total - INTEGRALITY_TOL).ceil().max(0.0) as usize)
        .min(beta)
        .min(support);
    let mut order: Vec<usize> = (0..z.len()).collect();
    order.sort_by(|&a, &b| z[b].total_cmp(&z[a]).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    order
}

struct Node {
    id: u64,
    bound: f64,
    fixings: Vec<(usize, bool)>,
    basis: Option<Basis>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // max-heap: larger bound first, then older node
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then(other.id.cmp(&self.id))
    }
}
