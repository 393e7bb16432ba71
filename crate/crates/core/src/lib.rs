//! Selection of multi-hit gene combinations that separate tumor from normal
//! samples.
//!
//! A sample is classified as tumor when at least one selected gene
//! combination is fully mutated in it. The solvers maximise the number of
//! covered tumor samples minus the number of times normal samples are
//! covered, subject to a cap on the number of selected combinations.
//!
//! Modules, bottom up:
//!
//! * [`data`]: mutation matrices, loading, pruning, splitting, coverage.
//! * [`metrics`]: induced classification, confusion counts, MCC and friends.
//! * [`generation`]: frequency-ranked random candidate combinations.
//! * [`lp`]: bounded revised simplex with dual prices and warm starts.
//! * [`master`]: restricted master LP and its binary branch-and-bound.
//! * [`pricing`]: exact reduced-cost maximisation over gene subsets.
//! * [`framework`]: MIP heuristic, column generation, rounding, brute force.
//! * [`harness`]: synthetic instances, experiment sweeps and reports.

pub mod data;
pub mod error;
pub mod framework;
pub mod generation;
pub mod harness;
pub mod lp;
pub mod master;
pub mod metrics;
pub mod pricing;
pub mod rng;

pub use data::{GeneCombination, HitRange, Label, MutationMatrix, SampleRecord};
pub use error::{Error, Result};
pub use framework::{Mode, SolveReport, SolveStatus, SolverConfig};
pub use metrics::{ConfusionCounts, Metrics};
