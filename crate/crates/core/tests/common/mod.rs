//! Independent reference implementations used as test oracles. Nothing here
//! calls into the solver code beyond reading matrix contents.

#![allow(dead_code)]

use multihit::data::{Label, MutationMatrix, SampleRecord};
use multihit::master::DualPrices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleLp {
    Optimal(f64),
    Infeasible,
    Unbounded,
}

impl OracleLp {
    pub fn value(self) -> f64 {
        match self {
            OracleLp::Optimal(v) => v,
            other => panic!("oracle LP not optimal: {other:?}"),
        }
    }
}

/// Full-tableau two-phase simplex with Bland's rule for
/// `max c·x  s.t.  A x <= b,  lo <= x <= up`.
pub fn tableau_max(c: &[f64], a: &[Vec<f64>], b: &[f64], lo: &[f64], up: &[f64]) -> OracleLp {
    let n = c.len();
    if (0..n).any(|j| up[j] < lo[j]) {
        return OracleLp::Infeasible;
    }
    // shift x = lo + x'
    let offset: f64 = (0..n).map(|j| c[j] * lo[j]).sum();
    let mut rows: Vec<(Vec<f64>, f64)> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let shift: f64 = r.iter().zip(lo).map(|(x, l)| x * l).sum();
            (r.clone(), bi - shift)
        })
        .collect();
    for j in 0..n {
        if up[j].is_finite() {
            let mut r = vec![0.0; n];
            r[j] = 1.0;
            rows.push((r, up[j] - lo[j]));
        }
    }
    let m = rows.len();
    let n_art = rows.iter().filter(|(_, r)| *r < 0.0).count();
    let width = n + m + n_art;
    let mut t = vec![vec![0.0; width + 1]; m];
    let mut basis = vec![0usize; m];
    let mut art = n + m;
    for (i, (r, rhs)) in rows.iter().enumerate() {
        let sign = if *rhs < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * r[j];
        }
        t[i][n + i] = sign;
        t[i][width] = sign * rhs;
        if sign < 0.0 {
            t[i][art] = 1.0;
            basis[i] = art;
            art += 1;
        } else {
            basis[i] = n + i;
        }
    }
    let is_art = |j: usize| j >= n + m;

    if n_art > 0 {
        let cost1: Vec<f64> = (0..width).map(|j| if is_art(j) { -1.0 } else { 0.0 }).collect();
        if !run(&mut t, &mut basis, &cost1, &|_| true) {
            unreachable!("phase one is bounded");
        }
        let infeas: f64 = (0..m).filter(|&i| is_art(basis[i])).map(|i| t[i][width]).sum();
        if infeas > 1e-7 {
            return OracleLp::Infeasible;
        }
        // drive zero artificials out where possible
        for i in 0..m {
            if is_art(basis[i]) {
                if let Some(j) = (0..n + m).find(|&j| t[i][j].abs() > 1e-9) {
                    pivot(&mut t, &mut basis, i, j);
                }
            }
        }
    }
    let mut cost2 = vec![0.0; width];
    cost2[..n].copy_from_slice(c);
    if !run(&mut t, &mut basis, &cost2, &|j| !is_art(j)) {
        return OracleLp::Unbounded;
    }
    let obj: f64 = (0..m).map(|i| cost2[basis[i]] * t[i][width]).sum();
    OracleLp::Optimal(obj + offset)
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], r: usize, q: usize) {
    let p = t[r][q];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            let f = row[q];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
            }
        }
    }
    basis[r] = q;
}

/// Returns false when unbounded.
fn run(t: &mut [Vec<f64>], basis: &mut [usize], cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> bool {
    let m = t.len();
    let width = cost.len();
    loop {
        let entering = (0..width).filter(|&j| allowed(j) && !basis.contains(&j)).find(|&j| {
            let z: f64 = (0..m).map(|i| cost[basis[i]] * t[i][j]).sum();
            cost[j] - z > TOL
        });
        let Some(q) = entering else { return true };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            if t[i][q] > TOL {
                let ratio = t[i][width] / t[i][q];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && basis[i] < basis[li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((r, _)) = leave else { return false };
        pivot(t, basis, r, q);
    }
}

/// Does `s` carry every gene of `genes`?
pub fn covers(s: &SampleRecord, genes: &[usize]) -> bool {
    genes.iter().all(|&g| s.mutations.contains(g))
}

pub fn tumors(m: &MutationMatrix) -> Vec<&SampleRecord> {
    m.samples().iter().filter(|s| s.label == Label::Tumor).collect()
}

pub fn normals(m: &MutationMatrix) -> Vec<&SampleRecord> {
    m.samples().iter().filter(|s| s.label == Label::Normal).collect()
}

/// All gene subsets with size in `[k_min, k_max]`, via bitmasks.
pub fn all_subsets(n_genes: usize, k_min: usize, k_max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n_genes) {
        let k = mask.count_ones() as usize;
        if k >= k_min && k <= k_max {
            out.push((0..n_genes).filter(|&g| mask & (1 << g) != 0).collect());
        }
    }
    out
}

/// Objective of a selection by direct sample inspection.
pub fn naive_objective(m: &MutationMatrix, selection: &[&[usize]]) -> i64 {
    let hit = tumors(m)
        .iter()
        .filter(|s| selection.iter().any(|c| covers(s, c)))
        .count() as i64;
    let penalty: i64 = normals(m)
        .iter()
        .map(|s| selection.iter().filter(|c| covers(s, c)).count() as i64)
        .sum();
    hit - penalty
}

/// Best objective over every subset of `pool` with at most `beta` members.
pub fn naive_best_selection(m: &MutationMatrix, pool: &[Vec<usize>], beta: usize) -> i64 {
    fn go(m: &MutationMatrix, pool: &[Vec<usize>], beta: usize, start: usize, chosen: &mut Vec<usize>, best: &mut i64) {
        let sel: Vec<&[usize]> = chosen.iter().map(|&i| pool[i].as_slice()).collect();
        *best = (*best).max(naive_objective(m, &sel));
        if chosen.len() == beta {
            return;
        }
        for i in start..pool.len() {
            chosen.push(i);
            go(m, pool, beta, i + 1, chosen, best);
            chosen.pop();
        }
    }
    let mut best = i64::MIN;
    go(m, pool, beta, 0, &mut Vec::new(), &mut best);
    best
}

/// The master relaxation over `pool` written out densely, in the order
/// x (tumors), y (normals), z (pool).
pub fn master_lp_value(m: &MutationMatrix, pool: &[Vec<usize>], beta: usize) -> f64 {
    let ts = tumors(m);
    let ns = normals(m);
    let (nt, nn, nc) = (ts.len(), ns.len(), pool.len());
    let nv = nt + nn + nc;
    let mut c = vec![0.0; nv];
    let mut lo = vec![0.0; nv];
    let mut up = vec![f64::INFINITY; nv];
    for t in 0..nt {
        c[t] = 1.0;
        up[t] = 1.0;
    }
    for n in 0..nn {
        c[nt + n] = -1.0;
    }
    lo.iter_mut().for_each(|v| *v = 0.0);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (t, s) in ts.iter().enumerate() {
        let mut r = vec![0.0; nv];
        r[t] = 1.0;
        for (k, comb) in pool.iter().enumerate() {
            if covers(s, comb) {
                r[nt + nn + k] = -1.0;
            }
        }
        a.push(r);
        b.push(0.0);
    }
    for (n, s) in ns.iter().enumerate() {
        let mut r = vec![0.0; nv];
        r[nt + n] = -1.0;
        for (k, comb) in pool.iter().enumerate() {
            if covers(s, comb) {
                r[nt + nn + k] = 1.0;
            }
        }
        a.push(r);
        b.push(0.0);
    }
    let mut r = vec![0.0; nv];
    r[nt + nn..].iter_mut().for_each(|v| *v = 1.0);
    a.push(r);
    b.push(beta as f64);
    tableau_max(&c, &a, &b, &lo, &up).value()
}

pub fn naive_reduced_cost(m: &MutationMatrix, d: &DualPrices, genes: &[usize]) -> f64 {
    let gain: f64 = tumors(m)
        .iter()
        .enumerate()
        .filter(|(_, s)| covers(s, genes))
        .map(|(t, _)| d.pi[t])
        .sum();
    let loss: f64 = normals(m)
        .iter()
        .enumerate()
        .filter(|(_, s)| covers(s, genes))
        .map(|(n, _)| d.mu[n])
        .sum();
    gain - loss - d.lambda
}

/// Largest reduced cost over all admissible subsets of `allowed`.
pub fn exhaustive_max_rc(m: &MutationMatrix, d: &DualPrices, k_min: usize, k_max: usize, allowed: &[usize]) -> f64 {
    all_subsets(allowed.len(), k_min, k_max)
        .iter()
        .map(|s| {
            let genes: Vec<usize> = s.iter().map(|&i| allowed[i]).collect();
            naive_reduced_cost(m, d, &genes)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Independent per-entry Bernoulli matrix, tumors first.
pub fn random_matrix(rng: &mut impl Rng, n_genes: usize, n_tumor: usize, n_normal: usize, density: f64) -> MutationMatrix {
    let genes = (0..n_genes).map(|g| format!("g{g}")).collect();
    let mut rows = Vec::new();
    for t in 0..n_tumor {
        rows.push((format!("t{t}"), Label::Tumor, (0..n_genes).map(|_| rng.random_bool(density)).collect()));
    }
    for n in 0..n_normal {
        rows.push((format!("n{n}"), Label::Normal, (0..n_genes).map(|_| rng.random_bool(density)).collect()));
    }
    MutationMatrix::from_rows(genes, rows).unwrap()
}

/// Tumors get a higher density than normals so that good combinations exist.
pub fn random_instance(rng: &mut impl Rng, max_genes: usize, max_samples: usize) -> MutationMatrix {
    let n_genes = rng.random_range(5..=max_genes);
    let n_samples = rng.random_range(6..=max_samples);
    let n_tumor = rng.random_range(3..n_samples - 1);
    let n_normal = n_samples - n_tumor;
    let dt = rng.random_range(0.35..0.75);
    let dn = rng.random_range(0.1..0.5);
    let genes = (0..n_genes).map(|g| format!("g{g}")).collect();
    let mut rows = Vec::new();
    for t in 0..n_tumor {
        rows.push((format!("t{t}"), Label::Tumor, (0..n_genes).map(|_| rng.random_bool(dt)).collect()));
    }
    for n in 0..n_normal {
        rows.push((format!("n{n}"), Label::Normal, (0..n_genes).map(|_| rng.random_bool(dn)).collect()));
    }
    MutationMatrix::from_rows(genes, rows).unwrap()
}

pub fn random_duals(rng: &mut impl Rng, m: &MutationMatrix) -> DualPrices {
    let sparse = |rng: &mut ChaCha8Rng| if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..1.0) };
    let mut r = ChaCha8Rng::seed_from_u64(rng.random());
    DualPrices {
        pi: (0..m.tumor_count()).map(|_| sparse(&mut r)).collect(),
        mu: (0..m.normal_count()).map(|_| sparse(&mut r)).collect(),
        lambda: if r.random_bool(0.3) { 0.0 } else { r.random_range(0.0..1.5) },
    }
}

/// Random dense LP `max c·x, A x <= b, 0 <= x <= u` with a mix of
/// negative right-hand sides, finite and infinite upper bounds.
pub struct DenseLp {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub lo: Vec<f64>,
    pub up: Vec<f64>,
}

pub fn random_lp(rng: &mut impl Rng, m: usize, n: usize) -> DenseLp {
    let int = |rng: &mut dyn rand::RngCore, lo: i32, hi: i32| rng.random_range(lo..=hi) as f64;
    let c = (0..n).map(|_| int(rng, -5, 9)).collect();
    let a = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| if rng.random_bool(0.4) { 0.0 } else { int(rng, -3, 6) })
                .collect()
        })
        .collect();
    let b = (0..m).map(|_| int(rng, -4, 20)).collect();
    let lo = (0..n).map(|_| if rng.random_bool(0.2) { int(rng, -2, 1) } else { 0.0 }).collect::<Vec<f64>>();
    let up = lo
        .iter()
        .map(|l| if rng.random_bool(0.5) { l + int(rng, 1, 6) } else { f64::INFINITY })
        .collect();
    DenseLp { c, a, b, lo, up }
}
