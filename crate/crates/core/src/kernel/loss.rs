use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::SeqTensor;

/// Row-wise softmax with max-subtraction stabilization.
pub fn row_softmax<S: Scalar>(logits: &SeqTensor<S>) -> SeqTensor<S> {
    let mut out = logits.clone();
    for t in 0..out.frames() {
        softmax_row_in_place(out.row_mut(t));
    }
    out
}

#[inline]
pub(crate) fn softmax_row_in_place<S: Scalar>(row: &mut [S]) {
    let mut max = row[0];
    for v in row.iter() {
        if *v > max {
            max = *v;
        }
    }
    let mut sum = S::zero();
    for v in row.iter_mut() {
        *v = (*v - max).exp();
        sum = sum + *v;
    }
    for v in row.iter_mut() {
        *v = *v / sum;
    }
}

/// Backward of row-wise softmax: `dx = y ⊙ (dy - Σ_j dy_j·y_j)` per row.
pub(crate) fn row_softmax_backward<S: Scalar>(
    probs: &SeqTensor<S>,
    g_out: &SeqTensor<S>,
) -> SeqTensor<S> {
    let mut g_in = SeqTensor::zeros(probs.frames(), probs.channels());
    for t in 0..probs.frames() {
        let p = probs.row(t);
        let g = g_out.row(t);
        let mut inner = S::zero();
        for (pi, gi) in p.iter().zip(g) {
            inner = inner + *pi * *gi;
        }
        let out = g_in.row_mut(t);
        for ((o, pi), gi) in out.iter_mut().zip(p).zip(g) {
            *o = *pi * (*gi - inner);
        }
    }
    g_in
}

/// Softmax cross-entropy over per-frame class targets.
///
/// Returns `(loss, probs, grad_logits)` where
/// `loss = (1/T) Σ_t w[y_t] · (-log p[t, y_t])` and `grad_logits` is the
/// analytic gradient of that loss (already scaled by `w[y_t]/T`). With no
/// `class_weights` every frame weighs 1.
pub fn softmax_xent<S: Scalar>(
    logits: &SeqTensor<S>,
    targets: &[usize],
    class_weights: Option<&[S]>,
) -> Result<(S, SeqTensor<S>, SeqTensor<S>)> {
    let t_len = logits.frames();
    let classes = logits.channels();
    if targets.len() != t_len {
        return Err(Error::invalid(format!(
            "{} targets for {} frames",
            targets.len(),
            t_len
        )));
    }
    if let Some(w) = class_weights {
        if w.len() != classes {
            return Err(Error::invalid(format!(
                "{} class weights for {} classes",
                w.len(),
                classes
            )));
        }
        if w.iter().any(|v| !(*v >= S::zero()) || !v.is_finite()) {
            return Err(Error::invalid("class weights must be finite and >= 0"));
        }
    }
    if let Some(&bad) = targets.iter().find(|&&y| y >= classes) {
        return Err(Error::invalid(format!(
            "target class {bad} out of range for {classes} classes"
        )));
    }
    logits.check_finite()?;

    let probs = row_softmax(logits);
    let inv_t = S::one() / S::from_usize(t_len);
    let mut loss = S::zero();
    let mut grad = probs.clone();
    for (t, &y) in targets.iter().enumerate() {
        let w = class_weights.map_or(S::one(), |w| w[y]);
        let p_y = probs.get(t, y);
        loss = loss + w * -(p_y.ln());
        let scale = w * inv_t;
        let row = grad.row_mut(t);
        for v in row.iter_mut() {
            *v = *v * scale;
        }
        row[y] = row[y] - scale;
    }
    loss = loss * inv_t;
    Ok((loss, probs, grad))
}
