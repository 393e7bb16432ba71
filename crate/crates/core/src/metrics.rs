//! Classification induced by a selection of gene combinations, and the
//! measures used to score it.
//!
//! Two counts of normal-sample errors coexist here. The optimisation
//! objective charges a normal sample once per selected combination covering
//! it ([`objective_value`]); classification quality counts each misclassified
//! normal sample once ([`confusion`]).

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::data::{GeneCombination, MutationMatrix};
use crate::error::{Error, Result};

/// Absolute slack allowed between an upper bound and an objective value.
pub const GAP_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Tumor samples covered by at least one selected combination.
    pub tumor_hit: FixedBitSet,
    /// Number of selected combinations covering each normal sample.
    pub normal_multiplicity: Vec<u32>,
}

pub fn classify<'c>(
    selected: impl IntoIterator<Item = &'c GeneCombination>,
    m: &MutationMatrix,
) -> Result<Classification> {
    let mut tumor_hit = FixedBitSet::with_capacity(m.tumor_count());
    let mut normal_multiplicity = vec![0u32; m.normal_count()];
    for c in selected {
        if !c.matches_shape(m) {
            return Err(Error::validation(format!(
                "combination {:?} was built against a {}x{} tumor/normal split, matrix has {}x{}",
                c.genes(),
                c.tumor_cover().len(),
                c.normal_cover().len(),
                m.tumor_count(),
                m.normal_count()
            )));
        }
        tumor_hit.union_with(c.tumor_cover());
        for n in c.normal_cover().ones() {
            normal_multiplicity[n] += 1;
        }
    }
    Ok(Classification {
        tumor_hit,
        normal_multiplicity,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn new(tp: u64, fp: u64, tn: u64, fn_: u64) -> Self {
        ConfusionCounts { tp, fp, tn, fn_ }
    }
}

pub fn confusion<'c>(
    selected: impl IntoIterator<Item = &'c GeneCombination>,
    m: &MutationMatrix,
) -> Result<ConfusionCounts> {
    let cl = classify(selected, m)?;
    let tp = cl.tumor_hit.count_ones(..) as u64;
    let fp = cl.normal_multiplicity.iter().filter(|&&k| k > 0).count() as u64;
    Ok(ConfusionCounts {
        tp,
        fp,
        tn: m.normal_count() as u64 - fp,
        fn_: m.tumor_count() as u64 - tp,
    })
}

/// Covered tumor samples minus the multiplicity-counted normal coverage.
pub fn objective_value<'c>(
    selected: impl IntoIterator<Item = &'c GeneCombination>,
    m: &MutationMatrix,
) -> Result<i64> {
    let cl = classify(selected, m)?;
    let covered = cl.tumor_hit.count_ones(..) as i64;
    let penalty: i64 = cl.normal_multiplicity.iter().map(|&k| i64::from(k)).sum();
    Ok(covered - penalty)
}

/// Classification measures. `None` marks a zero denominator.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub mcc: Option<f64>,
    #[serde(rename = "spec")]
    pub specificity: Option<f64>,
    #[serde(rename = "sens")]
    pub sensitivity: Option<f64>,
    pub f1: Option<f64>,
    pub precision: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

pub fn compute_metrics(c: &ConfusionCounts) -> Metrics {
    let (tp, fp, tn, fn_) = (c.tp as f64, c.fp as f64, c.tn as f64, c.fn_ as f64);
    let sensitivity = ratio(tp, tp + fn_);
    let specificity = ratio(tn, tn + fp);
    let precision = ratio(tp, tp + fp);
    let f1 = match (precision, sensitivity) {
        (Some(p), Some(s)) => ratio(2.0 * p * s, p + s),
        _ => None,
    };
    let den = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
    let mcc = ratio(tp * tn - fp * fn_, den);
    Metrics {
        mcc,
        specificity,
        sensitivity,
        f1,
        precision,
    }
}

impl Metrics {
    /// Every defined value rounded to `digits` decimals.
    pub fn rounded(&self, digits: i32) -> Metrics {
        let r = |v: Option<f64>| v.map(|x| round_to(x, digits));
        Metrics {
            mcc: r(self.mcc),
            specificity: r(self.specificity),
            sensitivity: r(self.sensitivity),
            f1: r(self.f1),
            precision: r(self.precision),
        }
    }
}

pub fn round_to(x: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    let r = (x * scale).round() / scale;
    // avoid "-0"
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Relative optimality gap in percent, `None` when the objective is zero.
///
/// An upper bound below the objective (beyond [`GAP_TOLERANCE`]) means a
/// solver reported inconsistent bounds.
pub fn optimality_gap(objective: i64, upper_bound: f64) -> Result<Option<f64>> {
    let obj = objective as f64;
    if upper_bound < obj - GAP_TOLERANCE {
        return Err(Error::consistency(format!(
            "upper bound {upper_bound} below objective value {objective}"
        )));
    }
    if objective == 0 {
        return Ok(None);
    }
    Ok(Some(((upper_bound - obj).max(0.0)) / obj.abs() * 100.0))
}
