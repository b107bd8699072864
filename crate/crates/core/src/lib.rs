//! Associative classification driven by a genetic algorithm.
//!
//! The pipeline runs in this order:
//!
//! 1. [`dataset`]: load a CSV, discretize numeric columns into equal-width
//!    intervals.
//! 2. [`scoring`]: score every attribute by its weighted Gini index and pick
//!    the minimum as the anchor.
//! 3. [`rules`]: enumerate anchored class association rules above `minsup`.
//! 4. [`stats`]: rule fitness is the Z statistic of its support against
//!    `minsup`; a one-sample Z test prunes the final rule pool.
//! 5. [`evolution`]: tournament selection, single-point crossover on the
//!    antecedent items and two mutation variants, with an elitist rule pool.
//! 6. [`classifier`]: order the pool into a first-match classifier and
//!    evaluate it with stratified k-fold cross validation.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`). The crate
//! root re-exports `f64` aliases for the common case.

pub mod classifier;
pub mod config;
pub mod dataset;
mod error;
pub mod evolution;
pub mod rules;
mod scalar;
pub mod scoring;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use classifier::{EvaluationReport, FoldResult};
pub use config::{GaConfig, PipelineConfig};
pub use dataset::{AttributeKind, AttributeSchema};
pub use rules::Item;
pub use stats::{Significance, Tail, ZResult};

pub type RawDataset = dataset::RawDataset<f64>;
pub type Dataset = dataset::Dataset<f64>;
pub type Discretization = dataset::Discretization<f64>;
pub type Interval = dataset::Interval<f64>;
pub type AttributeScore = scoring::AttributeScore<f64>;
pub type Rule = rules::ClassAssociationRule<f64>;
pub type Chromosome = evolution::Chromosome<f64>;
pub type RulePool = evolution::RulePool<f64>;
pub type ZTestConfig = stats::ZTestConfig<f64>;
pub type ClassifierModel = classifier::ClassifierModel<f64>;
pub type Config = PipelineConfig<f64>;
