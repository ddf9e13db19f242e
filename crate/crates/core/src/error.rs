//! Error types shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by tensor arithmetic, predictors, the gate, the
/// scheduler, the synthetic backends, and the metrics layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two operands have different shapes.
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    /// A shape does not describe the given number of elements.
    #[error("shape {shape:?} does not describe {len} data elements")]
    InvalidShape { shape: Vec<usize>, len: usize },

    /// A tensor was constructed with a NaN or infinite entry.
    #[error("non-finite value {value} at flat index {index}")]
    NonFinite { index: usize, value: f64 },

    /// Rational coefficient lists are inconsistent with the history length.
    #[error(
        "coefficient arity mismatch: {numerator} numerator + {denominator} \
         denominator terms for a history of length {history}"
    )]
    CoeffArityMismatch {
        numerator: usize,
        denominator: usize,
        history: usize,
    },

    /// A scalar argument fell outside its documented range.
    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// Not enough history entries for the requested prediction.
    #[error("insufficient history: need {needed} residuals, have {available}")]
    InsufficientHistory { needed: usize, available: usize },

    /// Extrapolation order outside the supported set.
    #[error("unsupported extrapolation order {order} (supported: 1, 2)")]
    UnsupportedOrder { order: usize },

    /// Input dimensionality does not match the model.
    #[error("dimension mismatch: model expects {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// Step index outside the model's schedule.
    #[error("step {step} outside schedule of {total} steps")]
    StepOutOfRange { step: usize, total: usize },

    /// Two sequences that must align have different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// An operation that needs at least one element received none.
    #[error("empty sequence")]
    EmptySequence,

    /// Data too degenerate for the requested decomposition.
    #[error("degenerate data: {0}")]
    DegenerateData(String),

    /// Two run reports being compared came from different experiments.
    #[error("run configs differ: {0}")]
    ConfigMismatch(String),

    /// A cache policy violates its construction invariants.
    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    /// History pushes must carry strictly increasing step labels.
    #[error("non-monotonic history: step {step} pushed after step {last}")]
    NonMonotonicStep { step: usize, last: usize },
}
