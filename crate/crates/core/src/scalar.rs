use num_traits::{Float, FromPrimitive, NumAssignOps, ToPrimitive};

/// Floating-point scalar the numeric core is generic over.
///
/// Only `f32` and `f64` implement this. Random streams are always drawn in
/// `f64` and narrowed through [`Scalar::from_f64`], so a fixed seed produces
/// the same value sequence (up to precision) for either scalar type.
pub trait Scalar:
    Float + NumAssignOps + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + Default + Send + Sync + 'static
{
    fn from_f64(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("finite f64 converts to scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("scalar converts to f64")
    }

    fn from_usize(v: usize) -> Self {
        Self::from_f64(v as f64)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Dot product with four independent accumulators.
///
/// The summation order is fixed, so results are bit-identical across runs
/// and across every call site that funnels through here (offline and
/// streaming inference must agree exactly).
#[inline]
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc0 = S::zero();
    let mut acc1 = S::zero();
    let mut acc2 = S::zero();
    let mut acc3 = S::zero();
    let mut chunks_a = a.chunks_exact(4);
    let mut chunks_b = b.chunks_exact(4);
    for (ca, cb) in (&mut chunks_a).zip(&mut chunks_b) {
        acc0 = acc0 + ca[0] * cb[0];
        acc1 = acc1 + ca[1] * cb[1];
        acc2 = acc2 + ca[2] * cb[2];
        acc3 = acc3 + ca[3] * cb[3];
    }
    let mut tail = S::zero();
    for (x, y) in chunks_a.remainder().iter().zip(chunks_b.remainder()) {
        tail = tail + *x * *y;
    }
    ((acc0 + acc1) + (acc2 + acc3)) + tail
}

/// `out[i] += s * a[i]` over a slice pair.
#[inline]
pub fn axpy<S: Scalar>(s: S, a: &[S], out: &mut [S]) {
    debug_assert_eq!(a.len(), out.len());
    for (o, x) in out.iter_mut().zip(a) {
        *o = *o + s * *x;
    }
}
