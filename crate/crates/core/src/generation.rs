//! Random candidate combinations drawn from the most frequently mutated
//! tumor genes, used to seed the master problem.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::seq::index;
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::data::{GeneCombination, HitRange, MutationMatrix};
use crate::error::{Error, Result};
use crate::rng::{self, Stream};

pub const DEFAULT_GAMMA1: usize = 100;
pub const DEFAULT_GAMMA2: usize = 100_000;
/// Draw budget per requested combination before giving up on reaching
/// `gamma2` distinct combinations.
pub const ATTEMPTS_PER_COMBINATION: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationConfig {
    /// Size of the candidate gene pool (top genes by tumor frequency).
    pub gamma1: usize,
    /// Maximum number of distinct combinations to emit.
    pub gamma2: usize,
    pub hit_range: HitRange,
    pub seed: u64,
    /// Drop combinations that cover no tumor sample.
    #[serde(default)]
    pub skip_uncovering: bool,
}

impl GenerationConfig {
    pub fn new(hit_range: HitRange) -> Self {
        GenerationConfig {
            gamma1: DEFAULT_GAMMA1,
            gamma2: DEFAULT_GAMMA2,
            hit_range,
            seed: 0,
            skip_uncovering: false,
        }
    }
}

/// How hit sizes and genes are drawn. [`UniformDraw`] is the default.
pub trait DrawStrategy {
    fn hit_size(&self, rng: &mut dyn RngCore, k_min: usize, k_max: usize) -> usize;

    /// `k` distinct entries of `pool`.
    fn genes(&self, rng: &mut dyn RngCore, pool: &[usize], k: usize) -> Vec<usize>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct UniformDraw;

impl DrawStrategy for UniformDraw {
    fn hit_size(&self, rng: &mut dyn RngCore, k_min: usize, k_max: usize) -> usize {
        rng.random_range(k_min..=k_max)
    }

    fn genes(&self, rng: &mut dyn RngCore, pool: &[usize], k: usize) -> Vec<usize> {
        index::sample(rng, pool.len(), k)
            .into_iter()
            .map(|i| pool[i])
            .collect()
    }
}

/// Gene indices by descending tumor mutation count, ties by ascending index.
pub fn rank_genes_by_tumor_frequency(m: &MutationMatrix) -> Result<Vec<usize>> {
    if m.tumor_count() == 0 {
        return Err(Error::validation("cannot rank genes without tumor samples"));
    }
    let mut order: Vec<usize> = (0..m.n_genes()).collect();
    order.sort_by_key(|&g| (std::cmp::Reverse(m.tumor_frequency(g)), g));
    Ok(order)
}

pub fn generate_candidates(m: &MutationMatrix, cfg: &GenerationConfig) -> Result<Vec<GeneCombination>> {
    generate_candidates_with(m, cfg, &UniformDraw)
}

/// Repeatedly draws a hit size and that many pool genes until `gamma2`
/// distinct combinations exist, the pool is exhausted, or the attempt budget
/// runs out. Output order is draw order; identical for identical seeds.
pub fn generate_candidates_with<D: DrawStrategy>(
    m: &MutationMatrix,
    cfg: &GenerationConfig,
    draw: &D,
) -> Result<Vec<GeneCombination>> {
    if cfg.gamma1 == 0 || cfg.gamma2 == 0 {
        return Err(Error::validation("gamma1 and gamma2 must be positive"));
    }
    let ranking = rank_genes_by_tumor_frequency(m)?;
    let pool_size = cfg.gamma1.min(m.n_genes());
    let k_min = cfg.hit_range.k_min();
    if pool_size < k_min {
        return Err(Error::validation(format!(
            "candidate pool of {pool_size} genes is smaller than the minimum hit size {k_min}"
        )));
    }
    let k_max = cfg.hit_range.k_max().min(pool_size);
    let pool = &ranking[..pool_size];

    let available: u128 = (k_min..=k_max).fold(0u128, |acc, k| {
        acc.saturating_add(binomial(pool_size as u64, k as u64))
    });
    let target = (cfg.gamma2 as u128).min(available) as usize;
    let max_attempts = cfg.gamma2.saturating_mul(ATTEMPTS_PER_COMBINATION);

    let mut rng = rng::stream(cfg.seed, Stream::Generation);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < target && (seen.len() as u128) < available && attempts < max_attempts {
        attempts += 1;
        let k = draw.hit_size(&mut rng, k_min, k_max);
        let mut genes = draw.genes(&mut rng, pool, k);
        genes.sort_unstable();
        if !seen.insert(genes.clone()) {
            continue;
        }
        let c = GeneCombination::from_sorted_unchecked(genes, m);
        if cfg.skip_uncovering && c.tumor_cover().is_clear() {
            continue;
        }
        out.push(c);
    }
    log::debug!(
        "generated {} combinations in {attempts} draws (pool {pool_size}, target {target})",
        out.len()
    );
    Ok(out)
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(u128::from(n - i)) / u128::from(i + 1);
    }
    acc
}

/// One combination per line, gene ids sorted and comma separated.
pub fn write_pool(path: impl AsRef<Path>, pool: &[GeneCombination], m: &MutationMatrix) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for c in pool {
        let mut names = c.gene_names(m);
        names.sort();
        writeln!(w, "{}", names.join(",")).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
