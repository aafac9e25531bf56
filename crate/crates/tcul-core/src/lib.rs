//! Iterative pseudo-label learning for cross-camera retrieval.
//!
//! The pipeline alternates four steps over an unlabeled target dataset:
//! center-based cluster assignment of embedded features, reliable-sample
//! selection driven by within-camera temporal continuity, batch-hard triplet
//! fine-tuning of a small trainable embedder, and a smoothed update of the
//! cluster centers. A labeled source dataset bootstraps the embedder before
//! the loop starts. Retrieval quality is measured with single-query CMC
//! rank-k and mAP under the usual cross-camera protocol.
//!
//! The crate ships a deterministic multi-camera synthetic data generator
//! ([`synthgen`]), bit-exact persistence for datasets, models and run
//! records ([`dataio`]), and an ablation runner ([`pipeline`]).

pub mod clustering;
pub mod dataio;
pub mod embedder;
pub mod error;
pub mod evaluator;
pub mod model;
pub mod pipeline;
pub mod rng;
pub mod selection;
pub mod synthgen;
pub mod threads;
pub mod trainer;

pub use embedder::{EmbedderModel, Gradients, OptimizerState};
pub use error::{Result, TculError};
pub use evaluator::{DistanceMetric, Metrics};
pub use model::{
    ClusterState, Dataset, DatasetRole, PipelineConfig, ReliableSet, Sample, SelectionStrategy,
    TrainView, Violation,
};
pub use pipeline::{IterationEntry, RunRecord};
pub use synthgen::SynthConfig;
