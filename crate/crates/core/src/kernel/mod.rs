//! Deterministic numeric core.
//!
//! Everything here is a pure function of its inputs: causal dilated 1-D
//! convolutions, the residual block, softmax cross-entropy, element-wise
//! ops, the gradient tape, Adam, and finite-difference verification.
//! Identical inputs produce bit-identical outputs across runs.

pub mod adam;
pub mod block;
pub mod conv;
pub mod gradcheck;
pub mod loss;
pub mod ops;
pub mod tape;

pub use adam::AdamState;
pub use block::{dilated_residual_block, BlockParams};
pub use conv::{conv1d_causal, ConvParams};
pub use loss::{row_softmax, softmax_xent};
pub use ops::DropoutMask;
pub use tape::{GradientTape, Gradients, ParamId, ValueId};
