use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::SeqTensor;

/// Element-wise dropout mask for one `T × C` activation.
///
/// `keep` holds one flag per element (row-major); kept elements are scaled
/// by `scale` (`1/(1-rate)` for inverted dropout, so inference needs no
/// rescaling). An all-false mask zeroes the branch entirely.
#[derive(Debug, Clone)]
pub struct DropoutMask<S> {
    pub keep: Vec<bool>,
    pub scale: S,
}

impl<S: Scalar> DropoutMask<S> {
    pub fn new(keep: Vec<bool>, scale: S) -> Self {
        Self { keep, scale }
    }

    /// Samples a Bernoulli(1-rate) keep mask with inverted-dropout scaling
    /// from a caller-supplied uniform stream in `[0, 1)`.
    pub fn sample(elems: usize, rate: f64, mut uniform: impl FnMut() -> f64) -> Self {
        let keep = (0..elems).map(|_| uniform() >= rate).collect();
        let scale = S::from_f64(1.0 / (1.0 - rate));
        Self { keep, scale }
    }
}

pub fn relu<S: Scalar>(x: &SeqTensor<S>) -> SeqTensor<S> {
    let mut out = x.clone();
    for v in out.data_mut() {
        if *v < S::zero() {
            *v = S::zero();
        }
    }
    out
}

pub fn dropout<S: Scalar>(x: &SeqTensor<S>, mask: &DropoutMask<S>) -> Result<SeqTensor<S>> {
    if mask.keep.len() != x.data().len() {
        return Err(Error::invalid(format!(
            "dropout mask has {} elements, activation has {}",
            mask.keep.len(),
            x.data().len()
        )));
    }
    let mut out = x.clone();
    for (v, keep) in out.data_mut().iter_mut().zip(&mask.keep) {
        *v = if *keep { *v * mask.scale } else { S::zero() };
    }
    Ok(out)
}

pub fn add<S: Scalar>(a: &SeqTensor<S>, b: &SeqTensor<S>) -> Result<SeqTensor<S>> {
    if a.frames() != b.frames() || a.channels() != b.channels() {
        return Err(Error::invalid(format!(
            "cannot add {}x{} and {}x{} tensors",
            a.frames(),
            a.channels(),
            b.frames(),
            b.channels()
        )));
    }
    let mut out = a.clone();
    for (o, v) in out.data_mut().iter_mut().zip(b.data()) {
        *o = *o + *v;
    }
    Ok(out)
}

/// Concatenates tensors along the channel axis, preserving frame count.
pub fn concat_channels<S: Scalar>(parts: &[&SeqTensor<S>]) -> Result<SeqTensor<S>> {
    if parts.is_empty() {
        return Err(Error::invalid("nothing to concatenate"));
    }
    let frames = parts[0].frames();
    if parts.iter().any(|p| p.frames() != frames) {
        return Err(Error::invalid("frame count mismatch in concatenation"));
    }
    let channels: usize = parts.iter().map(|p| p.channels()).sum();
    let mut out = SeqTensor::zeros(frames, channels);
    for t in 0..frames {
        let row = out.row_mut(t);
        let mut off = 0;
        for p in parts {
            let c = p.channels();
            row[off..off + c].copy_from_slice(p.row(t));
            off += c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relu_clamps_negatives() {
        let x = SeqTensor::new(1, 4, vec![-1.0, 0.0, 0.5, -0.25]).unwrap();
        assert_eq!(relu(&x).data(), &[0.0, 0.0, 0.5, 0.0]);
    }

    #[test]
    fn dropout_all_false_zeroes_everything() {
        let x = SeqTensor::new(1, 3, vec![1.0, 2.0, 3.0]).unwrap();
        let mask = DropoutMask::new(vec![false; 3], 2.0);
        assert_eq!(dropout(&x, &mask).unwrap().data(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn dropout_scales_kept_elements() {
        let x = SeqTensor::new(1, 2, vec![1.0, 4.0]).unwrap();
        let mask = DropoutMask::new(vec![true, false], 2.0);
        assert_eq!(dropout(&x, &mask).unwrap().data(), &[2.0, 0.0]);
    }

    #[test]
    fn concat_stacks_channels_per_frame() {
        let a = SeqTensor::new(2, 1, vec![1.0, 2.0]).unwrap();
        let b = SeqTensor::new(2, 2, vec![3.0, 4.0, 5.0, 6.0]).unwrap();
        let c = concat_channels(&[&a, &b]).unwrap();
        assert_eq!(c.channels(), 3);
        assert_eq!(c.row(0), &[1.0, 3.0, 4.0]);
        assert_eq!(c.row(1), &[2.0, 5.0, 6.0]);
    }
}
