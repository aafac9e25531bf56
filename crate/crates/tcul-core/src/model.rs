//! Shared domain types: samples, datasets, cluster state, reliable sets and
//! the pipeline configuration.
//!
//! Everything here is immutable after construction and safe to share across
//! threads for reading. Ground-truth identities are carried alongside the
//! features for evaluation, but training-side code only ever receives a
//! [`TrainView`], which has no identity accessor.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use ndarray::Array2;

use crate::error::TculError;

/// Where a dataset sits in the source/target/evaluation split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetRole {
    SourceTrain,
    TargetTrain,
    Query,
    Gallery,
}

impl DatasetRole {
    pub fn as_str(&self) -> &'static str {
        match self {
            DatasetRole::SourceTrain => "source_train",
            DatasetRole::TargetTrain => "target_train",
            DatasetRole::Query => "query",
            DatasetRole::Gallery => "gallery",
        }
    }
}

impl fmt::Display for DatasetRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DatasetRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "source_train" => Ok(DatasetRole::SourceTrain),
            "target_train" => Ok(DatasetRole::TargetTrain),
            "query" => Ok(DatasetRole::Query),
            "gallery" => Ok(DatasetRole::Gallery),
            other => Err(format!("unknown dataset role {other:?}")),
        }
    }
}

/// One observation: a raw feature vector plus the camera and video frame it
/// was captured at.
///
/// The ground-truth identity is a private field so that training code cannot
/// reach it by accident; evaluation reads it through [`Sample::true_identity`].
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub sample_id: u64,
    pub camera_id: u32,
    /// Frame number on this camera's video timeline. Ordering is meaningful
    /// only among samples sharing `camera_id`.
    pub frame_id: u64,
    pub raw_feature: Vec<f32>,
    true_identity: Option<u64>,
}

impl Sample {
    pub fn new(
        sample_id: u64,
        camera_id: u32,
        frame_id: u64,
        raw_feature: Vec<f32>,
        true_identity: Option<u64>,
    ) -> Self {
        Sample {
            sample_id,
            camera_id,
            frame_id,
            raw_feature,
            true_identity,
        }
    }

    /// Ground-truth identity, present only on evaluation-facing datasets.
    pub fn true_identity(&self) -> Option<u64> {
        self.true_identity
    }

    pub(crate) fn strip_identity(&mut self) {
        self.true_identity = None;
    }
}

/// An ordered collection of samples sharing one feature dimension and role.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub samples: Vec<Sample>,
    pub d_raw: usize,
    pub role: DatasetRole,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>, d_raw: usize, role: DatasetRole) -> Self {
        Dataset {
            samples,
            d_raw,
            role,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// All raw features as an `N x d_raw` matrix, widened to f64.
    pub fn features_f64(&self) -> Array2<f64> {
        features_to_f64(&self.samples, self.d_raw)
    }

    /// Identity-free projection handed to training-side code.
    pub fn train_view(&self) -> TrainView<'_> {
        TrainView {
            samples: &self.samples,
            d_raw: self.d_raw,
        }
    }

    /// Number of distinct ground-truth identities present.
    pub fn distinct_identities(&self) -> usize {
        self.samples
            .iter()
            .filter_map(|s| s.true_identity)
            .collect::<HashSet<_>>()
            .len()
    }
}

fn features_to_f64(samples: &[Sample], d_raw: usize) -> Array2<f64> {
    let mut out = Array2::zeros((samples.len(), d_raw));
    for (i, s) in samples.iter().enumerate() {
        for (j, &v) in s.raw_feature.iter().enumerate().take(d_raw) {
            out[[i, j]] = f64::from(v);
        }
    }
    out
}

/// View of a dataset without ground-truth identities.
///
/// This is the only shape of dataset the clustering, selection and training
/// code accepts, which keeps label leakage a compile error rather than a
/// code-review concern.
#[derive(Debug, Clone, Copy)]
pub struct TrainView<'a> {
    samples: &'a [Sample],
    d_raw: usize,
}

impl<'a> TrainView<'a> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn d_raw(&self) -> usize {
        self.d_raw
    }

    pub fn camera_id(&self, i: usize) -> u32 {
        self.samples[i].camera_id
    }

    pub fn frame_id(&self, i: usize) -> u64 {
        self.samples[i].frame_id
    }

    pub fn feature(&self, i: usize) -> &[f32] {
        &self.samples[i].raw_feature
    }

    /// All raw features as an `N x d_raw` matrix, widened to f64.
    pub fn features_f64(&self) -> Array2<f64> {
        features_to_f64(self.samples, self.d_raw)
    }
}

/// A single dataset-invariant violation found by [`validate_dataset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A sample_id appears more than once.
    DuplicateId(u64),
    /// Sample at this index has a feature entry that is NaN or infinite.
    NonFiniteFeature { index: usize },
    /// Sample at this index does not match the dataset's feature dimension.
    WrongDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
}

/// Check the dataset invariants; returns one violation per failure, empty
/// when the dataset is well formed.
pub fn validate_dataset(ds: &Dataset) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen = HashSet::new();
    for (index, s) in ds.samples.iter().enumerate() {
        if !seen.insert(s.sample_id) {
            violations.push(Violation::DuplicateId(s.sample_id));
        }
        if s.raw_feature.len() != ds.d_raw {
            violations.push(Violation::WrongDimension {
                index,
                expected: ds.d_raw,
                found: s.raw_feature.len(),
            });
        }
        if s.raw_feature.iter().any(|v| !v.is_finite()) {
            violations.push(Violation::NonFiniteFeature { index });
        }
    }
    violations
}

/// Cluster centers plus the current per-sample assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    /// `K x d_emb`, one center per row. Centers are kept unnormalized;
    /// cosine similarity absorbs scale.
    pub centers: Array2<f64>,
    /// Pseudo-label per target sample, in `[0, K)`.
    pub labels: Vec<usize>,
    /// Cosine similarity of each sample's embedding to its assigned center
    /// (`-1` for quarantined samples).
    pub similarities: Vec<f64>,
    /// Samples whose embedding had zero norm; they are parked on cluster 0
    /// and excluded from reliable-sample selection.
    pub quarantined: Vec<bool>,
}

impl ClusterState {
    pub fn k(&self) -> usize {
        self.centers.nrows()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }
}

/// Indices of samples that passed selection for the current iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReliableSet {
    pub member_indices: BTreeSet<usize>,
    /// `(cluster, camera) -> sample index` of the group's most center-similar
    /// member. Populated by temporal selection; empty for the similarity and
    /// no-op strategies.
    pub per_cluster_camera_anchors: BTreeMap<(usize, u32), usize>,
}

impl ReliableSet {
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.member_indices.contains(&index)
    }
}

/// How reliable samples are chosen each iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SelectionStrategy {
    /// Within-camera frame-distance rule around each group's anchor.
    Temporal,
    /// Keep samples whose cosine similarity to their center is at least the
    /// threshold.
    Similarity(f64),
    /// Keep everything.
    None,
}

impl fmt::Display for SelectionStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionStrategy::Temporal => f.write_str("temporal"),
            SelectionStrategy::Similarity(t) => write!(f, "similarity:{t}"),
            SelectionStrategy::None => f.write_str("none"),
        }
    }
}

impl FromStr for SelectionStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "temporal" => Ok(SelectionStrategy::Temporal),
            "none" => Ok(SelectionStrategy::None),
            other => match other.strip_prefix("similarity:") {
                Some(t) => t
                    .parse::<f64>()
                    .map(SelectionStrategy::Similarity)
                    .map_err(|e| format!("bad似 similarity threshold {t:?}: {e}")),
                None => Err(format!(
                    "unknown selection strategy {other:?} (expected temporal, similarity:<t> or none)"
                )),
            },
        }
    }
}

/// Hyperparameters for one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Number of cluster centers K. Dataset dependent; best near the true
    /// identity count.
    pub k_clusters: usize,
    /// Frame-distance threshold for temporal selection, in frames.
    pub lambda_fr: u64,
    /// Center-update step size in `[0, 1]`.
    pub lambda_c: f64,
    /// Triplet hinge margin.
    pub margin: f64,
    /// Outer iterations of the cluster/select/train/update loop.
    pub n_iterations: usize,
    /// Fine-tuning epochs inside one iteration.
    pub epochs_per_iter: usize,
    /// Distinct pseudo-identities per training batch (P).
    pub identities_per_batch: usize,
    /// Samples per pseudo-identity per batch.
    pub images_per_identity: usize,
    pub learning_rate: f64,
    /// Classical SGD momentum in `[0, 1)`.
    pub momentum: f64,
    /// Small positive stabilizer in the center-update denominator.
    pub beta: f64,
    /// Hidden width of the trainable embedder.
    pub d_hidden: usize,
    /// Output embedding dimension of the trainable embedder.
    pub d_emb: usize,
    pub selection_strategy: SelectionStrategy,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            k_clusters: 750,
            lambda_fr: 100,
            lambda_c: 0.5,
            margin: 0.5,
            n_iterations: 10,
            epochs_per_iter: 20,
            identities_per_batch: 16,
            images_per_identity: 8,
            learning_rate: 5e-4,
            momentum: 0.9,
            beta: 1e-8,
            d_hidden: 64,
            d_emb: 32,
            selection_strategy: SelectionStrategy::Temporal,
            seed: 42,
        }
    }
}

impl PipelineConfig {
    /// Check every field against its stated range. `n_iterations` and
    /// `epochs_per_iter` may be zero (degenerate but well-defined runs).
    pub fn validate(&self) -> Result<(), TculError> {
        let mut problems = Vec::new();
        if self.k_clusters == 0 {
            problems.push("k_clusters must be positive".to_string());
        }
        if self.lambda_fr == 0 {
            problems.push("lambda_fr must be positive".to_string());
        }
        if !(0.0..=1.0).contains(&self.lambda_c) {
            problems.push(format!("lambda_c must be in [0,1], got {}", self.lambda_c));
        }
        if !(self.margin > 0.0) {
            problems.push(format!("margin must be positive, got {}", self.margin));
        }
        if self.identities_per_batch == 0 {
            problems.push("identities_per_batch must be positive".to_string());
        }
        if self.images_per_identity == 0 {
            problems.push("images_per_identity must be positive".to_string());
        }
        if !(self.learning_rate > 0.0) {
            problems.push(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            ));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            problems.push(format!("momentum must be in [0,1), got {}", self.momentum));
        }
        if !(self.beta > 0.0) {
            problems.push(format!("beta must be positive, got {}", self.beta));
        }
        if self.d_hidden == 0 || self.d_emb == 0 {
            problems.push("d_hidden and d_emb must be positive".to_string());
        }
        if let SelectionStrategy::Similarity(t) = self.selection_strategy {
            if !t.is_finite() {
                problems.push(format!("similarity threshold must be finite, got {t}"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(TculError::InvalidConfig(problems.join("; ")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(id: u64, feat: Vec<f32>) -> Sample {
        Sample::new(id, 0, id * 10, feat, Some(id))
    }

    #[test]
    fn well_formed_dataset_has_no_violations() {
        let ds = Dataset::new(
            vec![
                sample(0, vec![1.0, 2.0]),
                sample(1, vec![3.0, 4.0]),
                sample(2, vec![5.0, 6.0]),
            ],
            2,
            DatasetRole::TargetTrain,
        );
        assert!(validate_dataset(&ds).is_empty());
    }

    #[test]
    fn duplicate_sample_id_is_reported() {
        let ds = Dataset::new(
            vec![sample(5, vec![1.0]), sample(5, vec![2.0])],
            1,
            DatasetRole::TargetTrain,
        );
        assert_eq!(validate_dataset(&ds), vec![Violation::DuplicateId(5)]);
    }

    #[test]
    fn non_finite_feature_is_reported_with_sample_index() {
        let ds = Dataset::new(
            vec![
                sample(0, vec![1.0]),
                sample(1, vec![2.0]),
                sample(2, vec![f32::NAN]),
            ],
            1,
            DatasetRole::TargetTrain,
        );
        assert_eq!(
            validate_dataset(&ds),
            vec![Violation::NonFiniteFeature { index: 2 }]
        );
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let ds = Dataset::new(
            vec![sample(0, vec![1.0, 2.0]), sample(1, vec![3.0])],
            2,
            DatasetRole::TargetTrain,
        );
        assert_eq!(
            validate_dataset(&ds),
            vec![Violation::WrongDimension {
                index: 1,
                expected: 2,
                found: 1,
            }]
        );
    }

    #[test]
    fn train_view_exposes_no_identity() {
        // Compile-time property really; just check the accessors line up.
        let ds = Dataset::new(
            vec![sample(3, vec![1.0, -2.0])],
            2,
            DatasetRole::TargetTrain,
        );
        let view = ds.train_view();
        assert_eq!(view.len(), 1);
        assert_eq!(view.camera_id(0), 0);
        assert_eq!(view.frame_id(0), 30);
        assert_eq!(view.feature(0), &[1.0, -2.0]);
    }

    #[test]
    fn selection_strategy_round_trips_through_strings() {
        for s in [
            SelectionStrategy::Temporal,
            SelectionStrategy::Similarity(0.85),
            SelectionStrategy::None,
        ] {
            let text = s.to_string();
            assert_eq!(text.parse::<SelectionStrategy>().unwrap(), s);
        }
        assert!("bogus".parse::<SelectionStrategy>().is_err());
    }

    #[test]
    fn config_validation_catches_out_of_range_fields() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.momentum = 1.0;
        assert!(cfg.validate().is_err());
        cfg.momentum = 0.9;
        cfg.lambda_c = 1.5;
        assert!(cfg.validate().is_err());
    }
}
