//! Dense feature vectors and the handful of elementwise/norm operations the
//! predictors are built from.
//!
//! All arithmetic is f64. Two guard constants keep every public operation
//! finite:
//!
//! * [`EPS_DIV`] — denominators with magnitude below this are replaced by
//!   `sign(d) * EPS_DIV` (with `sign(0) := +1`) before dividing, so an
//!   elementwise rational form can never produce an infinity even when a
//!   residual value lands near a pole of the predictor.
//! * [`EPS_NORM`] — vectors with L2 norm below this are treated as zero for
//!   cosine similarity and unit normalization; the degenerate results are
//!   a similarity of 0 and the zero vector.

use crate::error::{Error, Result};

/// Default denominator guard for elementwise division.
pub const EPS_DIV: f64 = 1e-6;

/// Default norm guard for cosine similarity and unit normalization.
pub const EPS_NORM: f64 = 1e-12;

/// Flat vector of feature activations with a recorded shape.
///
/// Invariant: `data.len() == shape.iter().product()` (at least one element)
/// and every entry is finite. Values are immutable after construction, so
/// tensors are freely shared and sent across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTensor {
    data: Vec<f64>,
    shape: Vec<usize>,
}

impl FeatureTensor {
    /// Build a tensor, validating shape/data agreement and finiteness.
    pub fn new(data: Vec<f64>, shape: Vec<usize>) -> Result<Self> {
        let product: usize = shape.iter().product();
        if shape.contains(&0) || product != data.len() || data.is_empty() {
            return Err(Error::InvalidShape {
                shape,
                len: data.len(),
            });
        }
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { data, shape })
    }

    /// 1-D tensor with shape `[data.len()]`.
    pub fn from_vec(data: Vec<f64>) -> Result<Self> {
        let n = data.len();
        Self::new(data, vec![n])
    }

    /// 1-D zero tensor of length `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_vec(vec![0.0; n])
    }

    /// Zero tensor with the same shape as `self`.
    pub fn zeros_like(&self) -> Self {
        Self {
            data: vec![0.0; self.data.len()],
            shape: self.shape.clone(),
        }
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Number of elements (always at least 1).
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Kept for iterator-style call sites; tensors are never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn from_parts(data: Vec<f64>, shape: Vec<usize>) -> Self {
        debug_assert_eq!(data.len(), shape.iter().product::<usize>());
        Self { data, shape }
    }

    /// Largest absolute elementwise difference; errors on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_same_shape(self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

/// Elementwise operator selector for [`elementwise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementwiseOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub(crate) fn check_same_shape(a: &FeatureTensor, b: &FeatureTensor) -> Result<()> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch {
            left: a.shape.clone(),
            right: b.shape.clone(),
        });
    }
    Ok(())
}

/// Guard a denominator: values with `|d| < eps` become `sign(d) * eps`,
/// where `sign(0) := +1` (and `-0.0` counts as zero).
pub fn guard_denominator(d: f64, eps: f64) -> f64 {
    if d.abs() < eps {
        if d < 0.0 {
            -eps
        } else {
            eps
        }
    } else {
        d
    }
}

/// Elementwise combination of two tensors. Division applies the default
/// [`EPS_DIV`] denominator guard.
pub fn elementwise(op: ElementwiseOp, a: &FeatureTensor, b: &FeatureTensor) -> Result<FeatureTensor> {
    elementwise_guarded(op, a, b, EPS_DIV)
}

/// Elementwise combination with an explicit division guard.
pub fn elementwise_guarded(
    op: ElementwiseOp,
    a: &FeatureTensor,
    b: &FeatureTensor,
    eps_div: f64,
) -> Result<FeatureTensor> {
    check_same_shape(a, b)?;
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| match op {
            ElementwiseOp::Add => x + y,
            ElementwiseOp::Sub => x - y,
            ElementwiseOp::Mul => x * y,
            ElementwiseOp::Div => x / guard_denominator(y, eps_div),
        })
        .collect();
    Ok(FeatureTensor::from_parts(data, a.shape.clone()))
}

pub fn add(a: &FeatureTensor, b: &FeatureTensor) -> Result<FeatureTensor> {
    elementwise(ElementwiseOp::Add, a, b)
}

pub fn sub(a: &FeatureTensor, b: &FeatureTensor) -> Result<FeatureTensor> {
    elementwise(ElementwiseOp::Sub, a, b)
}

pub fn mul(a: &FeatureTensor, b: &FeatureTensor) -> Result<FeatureTensor> {
    elementwise(ElementwiseOp::Mul, a, b)
}

/// Elementwise division with the guarded denominator rule.
pub fn div_guarded(a: &FeatureTensor, b: &FeatureTensor, eps_div: f64) -> Result<FeatureTensor> {
    elementwise_guarded(ElementwiseOp::Div, a, b, eps_div)
}

/// L2 norm over the flattened tensor.
pub fn l2_norm(a: &FeatureTensor) -> f64 {
    a.data.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Dot product over flattened tensors.
pub fn dot(a: &FeatureTensor, b: &FeatureTensor) -> Result<f64> {
    check_same_shape(a, b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x * y).sum())
}

/// Cosine similarity; returns 0 when either norm is below [`EPS_NORM`].
pub fn cosine_similarity(a: &FeatureTensor, b: &FeatureTensor) -> Result<f64> {
    let na = l2_norm(a);
    let nb = l2_norm(b);
    let d = dot(a, b)?;
    if na < EPS_NORM || nb < EPS_NORM {
        return Ok(0.0);
    }
    Ok(d / (na * nb))
}

/// `alpha * a + beta * b` elementwise.
pub fn scale_add(alpha: f64, a: &FeatureTensor, beta: f64, b: &FeatureTensor) -> Result<FeatureTensor> {
    check_same_shape(a, b)?;
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| alpha * x + beta * y)
        .collect();
    Ok(FeatureTensor::from_parts(data, a.shape.clone()))
}

/// Unit-normalized copy of `a`; the zero tensor when `‖a‖ < eps_norm`.
pub fn normalized(a: &FeatureTensor, eps_norm: f64) -> FeatureTensor {
    let n = l2_norm(a);
    if n < eps_norm {
        return a.zeros_like();
    }
    FeatureTensor::from_parts(a.data.iter().map(|x| x / n).collect(), a.shape.clone())
}
