//! Error types shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

use crate::model::Violation;

pub type Result<T> = std::result::Result<T, TculError>;

#[derive(Debug, Error)]
pub enum TculError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("bad magic in feature file {path}")]
    BadMagic { path: PathBuf },

    #[error("unsupported format version {found} (expected {expected}) in {path}")]
    VersionMismatch {
        path: PathBuf,
        found: u16,
        expected: u16,
    },

    #[error("truncated file {path}: expected {expected} bytes, found {found}")]
    TruncatedFile {
        path: PathBuf,
        expected: u64,
        found: u64,
    },

    #[error("{path} has {extra} trailing bytes past the declared payload")]
    TrailingBytes { path: PathBuf, extra: u64 },

    #[error("feature/metadata count mismatch: {features} feature rows vs {rows} metadata rows")]
    CountMismatch { features: usize, rows: usize },

    #[error("malformed metadata row at line {line}: {message}")]
    MalformedCsv { line: u64, message: String },

    #[error("malformed run record at line {line}: {message}")]
    RunRecordParse { line: usize, message: String },

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dataset is invalid: {0:?}")]
    InvalidDataset(Vec<Violation>),

    #[error("generation infeasible: {0}")]
    GenerationInfeasible(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero-norm vector has no direction")]
    ZeroNormVector,

    #[error("need at least as many samples as clusters: {n} samples for k={k}")]
    TooFewSamples { n: usize, k: usize },

    #[error("batch contains no valid triplets")]
    NoValidTriplets,

    #[error("fewer than 2 distinct pseudo-labels usable for training (found {labels})")]
    InsufficientLabels { labels: usize },

    #[error("gallery is empty after junk exclusion")]
    EmptyGallery,

    #[error("query set is empty")]
    EmptyQuerySet,

    #[error("query {query_id} has no gallery positives; average precision undefined")]
    UndefinedAp { query_id: u64 },

    #[error("sample {sample_id} is missing the identity required here")]
    MissingIdentity { sample_id: u64 },
}
