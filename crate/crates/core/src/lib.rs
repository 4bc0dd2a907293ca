//! Joint multi-level temporal activity segmentation of long feature-vector
//! sequences.
//!
//! The crate is organized in four layers:
//!
//! * [`kernel`] — the deterministic numeric core: sequence tensors, causal
//!   dilated 1-D convolutions with hand-written backward passes, residual
//!   blocks, softmax cross-entropy, a gradient tape for reverse-mode
//!   differentiation, Adam, and finite-difference verification.
//! * [`models`] — multi-stage causal TCNs with one or two classification
//!   heads, a frame-wise MLP baseline, a unidirectional LSTM baseline,
//!   the training loop, streaming (online) inference, and checkpoints.
//! * [`data`] — dataset model, on-disk formats, workflow ontology,
//!   median-frequency class weights, k-fold splitting, and a synthetic
//!   hierarchical-workflow generator.
//! * [`metrics`] — frame-wise accuracy, per-class precision/recall/F1,
//!   joint two-level accuracy, cross-fold aggregation, and SVG ribbon
//!   timelines.
//!
//! All numeric code is generic over the scalar type through [`Scalar`]
//! (`f32` or `f64`). Training uses `f64`; the concrete aliases below are
//! the types most callers want.

pub mod data;
pub mod error;
pub mod kernel;
pub mod metrics;
pub mod models;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tensor::SeqTensor;

/// Sequence tensor at training precision.
pub type SeqTensor64 = tensor::SeqTensor<f64>;
/// Sequence tensor at single precision (inference-oriented).
pub type SeqTensor32 = tensor::SeqTensor<f32>;
/// Model parameters at training precision.
pub type ModelParams64 = models::ModelParams<f64>;
/// Per-video feature sequence at training precision.
pub type FeatureSequence64 = data::FeatureSequence<f64>;
/// Gradient tape at training precision.
pub type GradientTape64 = kernel::tape::GradientTape<f64>;
