//! Binary mutation matrices with a tumor/normal partition.
//!
//! Samples keep their file order. Tumor samples are additionally indexed
//! `0..tumor_count` in that order (likewise normal samples), and every
//! coverage bit set is expressed over those per-class indices.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, Stream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Tumor,
    Normal,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Tumor => "tumor",
            Label::Normal => "normal",
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tumor" => Ok(Label::Tumor),
            "normal" => Ok(Label::Normal),
            other => Err(Error::validation(format!("unknown sample label '{other}'"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One row of the mutation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRecord {
    pub id: String,
    pub label: Label,
    /// Bit `g` is set iff gene `g` is mutated in this sample.
    pub mutations: FixedBitSet,
}

impl SampleRecord {
    pub fn new(id: impl Into<String>, label: Label, mutations: FixedBitSet) -> Self {
        SampleRecord {
            id: id.into(),
            label,
            mutations,
        }
    }

    pub fn from_bits(id: impl Into<String>, label: Label, bits: &[bool]) -> Self {
        let mut mutations = FixedBitSet::with_capacity(bits.len());
        for (g, &b) in bits.iter().enumerate() {
            mutations.set(g, b);
        }
        SampleRecord::new(id, label, mutations)
    }
}

/// Admissible combination sizes `k_min..=k_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct HitRange {
    k_min: usize,
    k_max: usize,
}

impl HitRange {
    pub fn new(k_min: usize, k_max: usize) -> Result<Self> {
        if k_min == 0 || k_min > k_max {
            return Err(Error::validation(format!(
                "invalid hit range {k_min}-{k_max}: need 1 <= k_min <= k_max"
            )));
        }
        Ok(HitRange { k_min, k_max })
    }

    pub fn exact(k: usize) -> Result<Self> {
        HitRange::new(k, k)
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn contains(&self, k: usize) -> bool {
        self.k_min <= k && k <= self.k_max
    }
}

impl fmt::Display for HitRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k_min == self.k_max {
            write!(f, "{}", self.k_min)
        } else {
            write!(f, "{}-{}", self.k_min, self.k_max)
        }
    }
}

impl FromStr for HitRange {
    type Err = Error;

    /// Accepts `"7"`, `"2-3"` and the en-dash form `"2–3"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::validation(format!("cannot parse hit range '{s}'")))
        };
        match s.split_once(['-', '–']) {
            Some((lo, hi)) => HitRange::new(parse(lo)?, parse(hi)?),
            None => HitRange::exact(parse(s)?),
        }
    }
}

impl TryFrom<String> for HitRange {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HitRange> for String {
    fn from(h: HitRange) -> String {
        h.to_string()
    }
}

/// Samples × genes binary incidence matrix with tumor/normal labels.
///
/// Immutable after construction. Besides the sample rows, per-gene column
/// bit sets over tumor and normal indices are kept for coverage queries.
#[derive(Debug, Clone)]
pub struct MutationMatrix {
    gene_ids: Vec<String>,
    samples: Vec<SampleRecord>,
    tumor_samples: Vec<usize>,
    normal_samples: Vec<usize>,
    tumor_columns: Vec<FixedBitSet>,
    normal_columns: Vec<FixedBitSet>,
}

impl MutationMatrix {
    pub fn new(gene_ids: Vec<String>, samples: Vec<SampleRecord>) -> Result<Self> {
        let n_genes = gene_ids.len();
        let mut seen = HashSet::with_capacity(n_genes);
        for g in &gene_ids {
            if !seen.insert(g.as_str()) {
                return Err(Error::validation(format!("duplicate gene id '{g}'")));
            }
        }
        let mut seen = HashSet::with_capacity(samples.len());
        for s in &samples {
            if !seen.insert(s.id.as_str()) {
                return Err(Error::validation(format!("duplicate sample id '{}'", s.id)));
            }
            if s.mutations.len() != n_genes {
                return Err(Error::validation(format!(
                    "sample '{}' has {} mutation bits, expected {n_genes}",
                    s.id,
                    s.mutations.len()
                )));
            }
        }

        let mut tumor_samples = Vec::new();
        let mut normal_samples = Vec::new();
        for (i, s) in samples.iter().enumerate() {
            match s.label {
                Label::Tumor => tumor_samples.push(i),
                Label::Normal => normal_samples.push(i),
            }
        }
        let columns = |rows: &[usize]| {
            let mut cols = vec![FixedBitSet::with_capacity(rows.len()); n_genes];
            for (idx, &row) in rows.iter().enumerate() {
                for g in samples[row].mutations.ones() {
                    cols[g].insert(idx);
                }
            }
            cols
        };
        let tumor_columns = columns(&tumor_samples);
        let normal_columns = columns(&normal_samples);

        Ok(MutationMatrix {
            gene_ids,
            samples,
            tumor_samples,
            normal_samples,
            tumor_columns,
            normal_columns,
        })
    }

    /// Builds a matrix from boolean rows, mostly for tests and generators.
    pub fn from_rows<I, S>(gene_ids: Vec<String>, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Label, Vec<bool>)>,
        S: Into<String>,
    {
        let samples = rows
            .into_iter()
            .map(|(id, label, bits)| SampleRecord::from_bits(id, label, &bits))
            .collect();
        MutationMatrix::new(gene_ids, samples)
    }

    pub fn gene_ids(&self) -> &[String] {
        &self.gene_ids
    }

    pub fn samples(&self) -> &[SampleRecord] {
        &self.samples
    }

    pub fn n_genes(&self) -> usize {
        self.gene_ids.len()
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn tumor_count(&self) -> usize {
        self.tumor_samples.len()
    }

    pub fn normal_count(&self) -> usize {
        self.normal_samples.len()
    }

    pub fn tumor_sample(&self, t: usize) -> &SampleRecord {
        &self.samples[self.tumor_samples[t]]
    }

    pub fn normal_sample(&self, n: usize) -> &SampleRecord {
        &self.samples[self.normal_samples[n]]
    }

    /// Tumor samples (by tumor index) in which gene `g` is mutated.
    pub fn tumor_column(&self, g: usize) -> &FixedBitSet {
        &self.tumor_columns[g]
    }

    pub fn normal_column(&self, g: usize) -> &FixedBitSet {
        &self.normal_columns[g]
    }

    pub fn tumor_frequency(&self, g: usize) -> usize {
        self.tumor_columns[g].count_ones(..)
    }

    pub fn gene_index(&self, id: &str) -> Option<usize> {
        self.gene_ids.iter().position(|g| g == id)
    }

    /// Tumor and normal samples in which every gene of `genes` is mutated.
    ///
    /// The empty gene list covers every sample; callers enforce `k_min >= 1`.
    pub fn coverage(&self, genes: &[usize]) -> Result<(FixedBitSet, FixedBitSet)> {
        if let Some(&g) = genes.iter().find(|&&g| g >= self.n_genes()) {
            return Err(Error::validation(format!(
                "gene index {g} out of range for {} genes",
                self.n_genes()
            )));
        }
        Ok(self.coverage_unchecked(genes))
    }

    pub(crate) fn coverage_unchecked(&self, genes: &[usize]) -> (FixedBitSet, FixedBitSet) {
        let mut tumor = FixedBitSet::with_capacity(self.tumor_count());
        tumor.insert_range(..);
        let mut normal = FixedBitSet::with_capacity(self.normal_count());
        normal.insert_range(..);
        for &g in genes {
            tumor.intersect_with(&self.tumor_columns[g]);
            normal.intersect_with(&self.normal_columns[g]);
        }
        (tumor, normal)
    }

    /// Drops genes that are mutated in no sample at all. Gene order is kept.
    pub fn prune_genes(&self) -> MutationMatrix {
        let keep: Vec<usize> = (0..self.n_genes())
            .filter(|&g| {
                !self.tumor_columns[g].is_clear() || !self.normal_columns[g].is_clear()
            })
            .collect();
        if keep.len() == self.n_genes() {
            return self.clone();
        }
        let gene_ids = keep.iter().map(|&g| self.gene_ids[g].clone()).collect();
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let mut bits = FixedBitSet::with_capacity(keep.len());
                for (new, &old) in keep.iter().enumerate() {
                    bits.set(new, s.mutations.contains(old));
                }
                SampleRecord::new(s.id.clone(), s.label, bits)
            })
            .collect();
        MutationMatrix::new(gene_ids, samples).expect("pruning preserves validity")
    }

    /// Sub-matrix over the given sample positions (in the given order), same genes.
    pub fn select_samples(&self, positions: &[usize]) -> MutationMatrix {
        let samples = positions.iter().map(|&p| self.samples[p].clone()).collect();
        MutationMatrix::new(self.gene_ids.clone(), samples).expect("subset of a valid matrix")
    }

    /// Stable 64-bit FNV-1a fingerprint of genes, sample ids, labels and bits.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for &b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        for g in &self.gene_ids {
            eat(g.as_bytes());
            eat(&[0]);
        }
        for s in &self.samples {
            eat(s.id.as_bytes());
            eat(&[0, s.label as u8]);
            for block in s.mutations.as_slice() {
                eat(&block.to_le_bytes());
            }
        }
        h
    }
}

/// A gene subset together with the samples it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneCombination {
    genes: Vec<usize>,
    tumor_cover: FixedBitSet,
    normal_cover: FixedBitSet,
}

impl GeneCombination {
    /// Sorts `genes` and computes coverage against `m`. Repeated genes are
    /// rejected.
    pub fn new(mut genes: Vec<usize>, m: &MutationMatrix) -> Result<Self> {
        genes.sort_unstable();
        if genes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation(format!("repeated gene in combination {genes:?}")));
        }
        let (tumor_cover, normal_cover) = m.coverage(&genes)?;
        Ok(GeneCombination {
            genes,
            tumor_cover,
            normal_cover,
        })
    }

    /// `genes` must already be strictly increasing and in range.
    pub(crate) fn from_sorted_unchecked(genes: Vec<usize>, m: &MutationMatrix) -> Self {
        debug_assert!(genes.windows(2).all(|w| w[0] < w[1]));
        let (tumor_cover, normal_cover) = m.coverage_unchecked(&genes);
        GeneCombination {
            genes,
            tumor_cover,
            normal_cover,
        }
    }

    pub fn genes(&self) -> &[usize] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn tumor_cover(&self) -> &FixedBitSet {
        &self.tumor_cover
    }

    pub fn normal_cover(&self) -> &FixedBitSet {
        &self.normal_cover
    }

    pub fn gene_names(&self, m: &MutationMatrix) -> Vec<String> {
        self.genes.iter().map(|&g| m.gene_ids()[g].clone()).collect()
    }

    /// Same genes, coverage recomputed against another matrix over the same
    /// gene universe (e.g. the test side of a split).
    pub fn rebind(&self, m: &MutationMatrix) -> Result<Self> {
        GeneCombination::new(self.genes.clone(), m)
    }

    pub(crate) fn matches_shape(&self, m: &MutationMatrix) -> bool {
        self.tumor_cover.len() == m.tumor_count() && self.normal_cover.len() == m.normal_count()
    }
}

// ---------------------------------------------------------------------------
// Dense TSV: header `sample_id<TAB>label<TAB>gene...`, one row per sample.

pub fn load_dense(path: impl AsRef<Path>) -> Result<MutationMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_dense(file, path)
}

pub fn read_dense<R: Read>(reader: R, source: impl AsRef<Path>) -> Result<MutationMatrix> {
    let source = source.as_ref();
    let parse_err = |line: u64, message: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| parse_err(1, e.to_string()))?,
        None => return Err(parse_err(1, "empty file, header row required".into())),
    };
    if header.len() < 2
        || header[0].trim() != "sample_id"
        || header[1].trim() != "label"
    {
        return Err(parse_err(
            1,
            "header must start with 'sample_id<TAB>label'".into(),
        ));
    }
    let gene_ids: Vec<String> = header.iter().skip(2).map(|g| g.trim().to_string()).collect();
    let width = header.len();

    let mut samples = Vec::new();
    let mut ids = HashSet::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].trim().is_empty() {
            continue;
        }
        if rec.len() != width {
            return Err(parse_err(
                line,
                format!("expected {width} fields, found {}", rec.len()),
            ));
        }
        let id = rec[0].trim().to_string();
        if id.is_empty() {
            return Err(parse_err(line, "empty sample id".into()));
        }
        let label: Label = rec[1]
            .parse()
            .map_err(|e: Error| Error::validation(format!("line {line}: {e}")))?;
        if !ids.insert(id.clone()) {
            return Err(Error::validation(format!(
                "line {line}: duplicate sample id '{id}'"
            )));
        }
        let mut bits = FixedBitSet::with_capacity(gene_ids.len());
        for (g, field) in rec.iter().skip(2).enumerate() {
            match field.trim() {
                "0" => {}
                "1" => bits.insert(g),
                other => {
                    return Err(parse_err(
                        line,
                        format!("entry '{other}' for gene '{}' is not 0 or 1", gene_ids[g]),
                    ))
                }
            }
        }
        samples.push(SampleRecord::new(id, label, bits));
    }
    MutationMatrix::new(gene_ids, samples)
}

pub fn write_dense(m: &MutationMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_dense_to(m, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_dense_to<W: Write>(m: &MutationMatrix, w: &mut W) -> std::io::Result<()> {
    write!(w, "sample_id\tlabel")?;
    for g in m.gene_ids() {
        write!(w, "\t{g}")?;
    }
    writeln!(w)?;
    let mut line = String::new();
    for s in m.samples() {
        line.clear();
        line.push_str(&s.id);
        line.push('\t');
        line.push_str(s.label.as_str());
        for g in 0..m.n_genes() {
            line.push_str(if s.mutations.contains(g) { "\t1" } else { "\t0" });
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Sparse tuples: normal `gene,sample`; tumor `gene,sample,count`.

/// Loads the two sparse tuple files. A tumor entry is mutated iff its count
/// is at least one. The gene universe is every gene named in either file
/// (tumor file first, in order of appearance); pruning is a separate step.
pub fn load_sparse(
    normal_tuples: impl AsRef<Path>,
    tumor_tuples: impl AsRef<Path>,
) -> Result<MutationMatrix> {
    let np = normal_tuples.as_ref();
    let tp = tumor_tuples.as_ref();
    let normal = File::open(np).map_err(|e| Error::io(np, e))?;
    let tumor = File::open(tp).map_err(|e| Error::io(tp, e))?;
    read_sparse(normal, np, tumor, tp)
}

pub fn read_sparse<R1: Read, R2: Read>(
    normal: R1,
    normal_source: impl AsRef<Path>,
    tumor: R2,
    tumor_source: impl AsRef<Path>,
) -> Result<MutationMatrix> {
    let mut genes = Indexer::default();
    let mut tumor_ids = Indexer::default();
    let mut normal_ids = Indexer::default();
    let mut tumor_hits: Vec<(usize, usize)> = Vec::new();
    let mut normal_hits: Vec<(usize, usize)> = Vec::new();

    for_each_tuple(tumor, tumor_source.as_ref(), 3, |line, fields| {
        let count: i64 = fields[2].parse().map_err(|_| Error::Parse {
            path: tumor_source.as_ref().to_path_buf(),
            line,
            message: format!("count '{}' is not an integer", fields[2]),
        })?;
        if count < 0 {
            return Err(Error::validation(format!(
                "{}:{line}: negative mutation count {count}",
                tumor_source.as_ref().display()
            )));
        }
        let g = genes.get(fields[0]);
        let s = tumor_ids.get(fields[1]);
        if count >= 1 {
            tumor_hits.push((s, g));
        }
        Ok(())
    })?;
    for_each_tuple(normal, normal_source.as_ref(), 2, |_, fields| {
        let g = genes.get(fields[0]);
        let s = normal_ids.get(fields[1]);
        normal_hits.push((s, g));
        Ok(())
    })?;

    let n_genes = genes.names.len();
    let mut samples: Vec<SampleRecord> = tumor_ids
        .names
        .iter()
        .map(|id| SampleRecord::new(id.clone(), Label::Tumor, FixedBitSet::with_capacity(n_genes)))
        .chain(normal_ids.names.iter().map(|id| {
            SampleRecord::new(id.clone(), Label::Normal, FixedBitSet::with_capacity(n_genes))
        }))
        .collect();
    let offset = tumor_ids.names.len();
    for (s, g) in tumor_hits {
        samples[s].mutations.insert(g);
    }
    for (s, g) in normal_hits {
        samples[offset + s].mutations.insert(g);
    }
    MutationMatrix::new(genes.names, samples)
}

#[derive(Default)]
struct Indexer {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Indexer {
    fn get(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        i
    }
}

fn for_each_tuple<R: Read>(
    reader: R,
    source: &Path,
    width: usize,
    mut f: impl FnMut(u64, &[&str]) -> Result<()>,
) -> Result<()> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if header.len() != width {
        return Err(parse_err(
            1,
            format!("header must have {width} columns, found {}", header.len()),
        ));
    }
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != width {
            return Err(parse_err(
                line,
                format!("expected {width} fields, found {}", rec.len()),
            ));
        }
        let fields: Vec<&str> = rec.iter().collect();
        if let Some(pos) = fields[..2].iter().position(|t| t.is_empty()) {
            let what = if pos == 0 { "gene" } else { "sample" };
            return Err(parse_err(line, format!("empty {what} token")));
        }
        f(line, &fields)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Train/test split.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    /// Tumor and normal samples are split independently.
    #[default]
    Stratified,
    /// One shuffle over all samples.
    Global,
}

/// Number of training samples drawn from a class of `count`: the product
/// `fraction * count` rounded to the nearest integer, exact halves rounding
/// down (911 tumors at 50% give 455).
pub fn train_share(fraction: f64, count: usize) -> usize {
    let x = fraction * count as f64;
    ((x - 0.5 - 1e-9).ceil().max(0.0) as usize).min(count)
}

/// Splits `m` into (train, test). Both sides keep the full gene universe and
/// the original relative sample order.
pub fn split_train_test(
    m: &MutationMatrix,
    train_fraction: f64,
    seed: u64,
    mode: SplitMode,
) -> Result<(MutationMatrix, MutationMatrix)> {
    if !(train_fraction > 0.0 && train_fraction <= 1.0) {
        return Err(Error::validation(format!(
            "train fraction {train_fraction} outside (0, 1]"
        )));
    }
    let mut rng = rng::stream(seed, Stream::Split);
    let mut train = Vec::new();
    let mut test = Vec::new();
    let mut take = |mut pool: Vec<usize>| {
        let n_train = train_share(train_fraction, pool.len());
        pool.shuffle(&mut rng);
        test.extend_from_slice(&pool[n_train..]);
        pool.truncate(n_train);
        train.extend(pool);
    };
    match mode {
        SplitMode::Stratified => {
            take(m.tumor_samples.clone());
            take(m.normal_samples.clone());
        }
        SplitMode::Global => take((0..m.n_samples()).collect()),
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((m.select_samples(&train), m.select_samples(&test)))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Seven genes, three tumors, two normals. `{g1,g2}` covers t1, t2 and
    /// n1; `{g3,g4}` covers t2 only; every pair inside t3 is also in n2.
    pub fn figure_one() -> MutationMatrix {
        let genes = (1..=7).map(|i| format!("g{i}")).collect();
        let row = |on: &[usize]| (0..7).map(|g| on.contains(&(g + 1))).collect::<Vec<_>>();
        MutationMatrix::from_rows(
            genes,
            vec![
                ("t1", Label::Tumor, row(&[1, 2])),
                ("t2", Label::Tumor, row(&[1, 2, 3, 4])),
                ("t3", Label::Tumor, row(&[5, 6, 7])),
                ("n1", Label::Normal, row(&[1, 2])),
                ("n2", Label::Normal, row(&[5, 6, 7])),
            ],
        )
        .unwrap()
    }
}
