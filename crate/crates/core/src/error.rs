use std::path::PathBuf;

use thiserror::Error;

/// Every failure the pipeline can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed CSV: {0}")]
    Csv(String),

    #[error("line {line}: expected {expected} fields, found {found}")]
    Arity {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: missing value in column '{column}'")]
    MissingValue { line: u64, column: String },

    #[error("line {line}: value '{value}' in numeric column '{column}' is not a number")]
    NotNumeric {
        line: u64,
        column: String,
        value: String,
    },

    #[error("data body is empty")]
    EmptyData,

    #[error("unknown attribute '{0}'")]
    UnknownAttribute(String),

    #[error("'{0}' is the class attribute")]
    ClassAttribute(String),

    #[error("invalid schema: {0}")]
    Schema(String),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("no non-class attributes to score")]
    NoAttributes,

    #[error("all class counts are zero")]
    EmptyPartition,

    #[error("no frequent anchored rules; consider lowering minsup")]
    NoFrequentRules,

    #[error("population is empty")]
    EmptyPopulation,

    #[error("class '{class}' has {count} instances, fewer than k = {k}; use a smaller k")]
    Stratification {
        class: String,
        count: usize,
        k: usize,
    },

    #[error("test set is empty")]
    EmptyTestSet,

    #[error("model file: {0}")]
    Model(String),
}

pub type Result<T> = std::result::Result<T, Error>;
