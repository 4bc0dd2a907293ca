use crate::error::{Error, Result};
use crate::scalar::{axpy, dot, Scalar};
use crate::tensor::SeqTensor;

/// Weights of one causal dilated 1-D convolution.
///
/// The kernel is stored row-major with logical shape
/// `C_out × C_in × K`; tap index `K-1` reads the current frame and tap
/// `k` reads frame `t - dilation·(K-1-k)`. Frames before the sequence
/// start are implicit zeros, so the output always has the input's length.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvParams<S> {
    c_out: usize,
    c_in: usize,
    k: usize,
    dilation: usize,
    pub kernel: Vec<S>,
    pub bias: Vec<S>,
}

impl<S: Scalar> ConvParams<S> {
    pub fn new(
        c_out: usize,
        c_in: usize,
        k: usize,
        dilation: usize,
        kernel: Vec<S>,
        bias: Vec<S>,
    ) -> Result<Self> {
        if c_out == 0 || c_in == 0 || k == 0 {
            return Err(Error::invalid("convolution dimensions must be positive"));
        }
        if dilation == 0 {
            return Err(Error::invalid("dilation must be >= 1"));
        }
        if kernel.len() != c_out * c_in * k {
            return Err(Error::invalid(format!(
                "kernel length {} does not match {c_out}x{c_in}x{k}",
                kernel.len()
            )));
        }
        if bias.len() != c_out {
            return Err(Error::invalid(format!(
                "bias length {} does not match {c_out} output channels",
                bias.len()
            )));
        }
        if !kernel.iter().chain(bias.iter()).all(|v| v.is_finite()) {
            return Err(Error::numeric("non-finite convolution parameter"));
        }
        Ok(Self {
            c_out,
            c_in,
            k,
            dilation,
            kernel,
            bias,
        })
    }

    pub fn zeros(c_out: usize, c_in: usize, k: usize, dilation: usize) -> Self {
        Self::new(
            c_out,
            c_in,
            k,
            dilation,
            vec![S::zero(); c_out * c_in * k],
            vec![S::zero(); c_out],
        )
        .expect("valid zero conv")
    }

    pub fn c_out(&self) -> usize {
        self.c_out
    }

    pub fn c_in(&self) -> usize {
        self.c_in
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dilation(&self) -> usize {
        self.dilation
    }

    /// How far back (in frames) the convolution reads.
    pub fn reach(&self) -> usize {
        self.dilation * (self.k - 1)
    }

    #[inline]
    pub fn kernel_at(&self, co: usize, ci: usize, k: usize) -> S {
        self.kernel[(co * self.c_in + ci) * self.k + k]
    }

    pub fn set_kernel_at(&mut self, co: usize, ci: usize, k: usize, v: S) {
        self.kernel[(co * self.c_in + ci) * self.k + k] = v;
    }

    /// Repacks the kernel as `K × C_out × C_in` so the inner product over
    /// input channels runs over contiguous memory.
    pub fn compile(&self) -> ConvCompiled<S> {
        let mut w_kt = vec![S::zero(); self.kernel.len()];
        for co in 0..self.c_out {
            for ci in 0..self.c_in {
                for k in 0..self.k {
                    w_kt[(k * self.c_out + co) * self.c_in + ci] = self.kernel_at(co, ci, k);
                }
            }
        }
        ConvCompiled {
            c_out: self.c_out,
            c_in: self.c_in,
            k: self.k,
            dilation: self.dilation,
            w_kt,
            bias: self.bias.clone(),
        }
    }
}

/// Kernel repacked for the per-frame inner loop. Self-contained snapshot:
/// the gradient tape stores one of these per recorded convolution.
#[derive(Debug, Clone)]
pub struct ConvCompiled<S> {
    pub c_out: usize,
    pub c_in: usize,
    pub k: usize,
    pub dilation: usize,
    w_kt: Vec<S>,
    bias: Vec<S>,
}

impl<S: Scalar> ConvCompiled<S> {
    #[inline]
    fn tap(&self, k: usize, co: usize) -> &[S] {
        let start = (k * self.c_out + co) * self.c_in;
        &self.w_kt[start..start + self.c_in]
    }
}

/// Supplies input rows by absolute frame index; `None` means the index is
/// before the sequence start (implicit zero padding). Both the offline
/// tensor path and the streaming ring buffer implement this, which is what
/// makes online and offline inference bit-identical: they run the exact
/// same summation through [`conv_output_frame`].
pub trait RowSource<S> {
    fn source_row(&self, t: isize) -> Option<&[S]>;
}

impl<S: Scalar> RowSource<S> for SeqTensor<S> {
    #[inline]
    fn source_row(&self, t: isize) -> Option<&[S]> {
        if t < 0 {
            None
        } else {
            Some(self.row(t as usize))
        }
    }
}

/// Computes one output frame of a causal dilated convolution.
#[inline]
pub fn conv_output_frame<S: Scalar, R: RowSource<S>>(
    conv: &ConvCompiled<S>,
    src: &R,
    t: isize,
    out_row: &mut [S],
) {
    debug_assert_eq!(out_row.len(), conv.c_out);
    out_row.copy_from_slice(&conv.bias);
    for k in 0..conv.k {
        let i = t - (conv.dilation * (conv.k - 1 - k)) as isize;
        if let Some(row) = src.source_row(i) {
            for (co, out) in out_row.iter_mut().enumerate() {
                *out = *out + dot(conv.tap(k, co), row);
            }
        }
    }
}

/// Causal dilated 1-D convolution.
///
/// `output[t]` depends only on `input[t - dilation·(K-1) ..= t]`; the
/// output has the same frame count as the input.
pub fn conv1d_causal<S: Scalar>(input: &SeqTensor<S>, params: &ConvParams<S>) -> Result<SeqTensor<S>> {
    if input.channels() != params.c_in {
        return Err(Error::invalid(format!(
            "convolution expects {} input channels, got {}",
            params.c_in,
            input.channels()
        )));
    }
    input.check_finite()?;
    let compiled = params.compile();
    Ok(conv_forward_compiled(input, &compiled))
}

pub(crate) fn conv_forward_compiled<S: Scalar>(
    input: &SeqTensor<S>,
    compiled: &ConvCompiled<S>,
) -> SeqTensor<S> {
    let t_len = input.frames();
    let mut out = SeqTensor::zeros(t_len, compiled.c_out);
    for t in 0..t_len {
        conv_output_frame(compiled, input, t as isize, out.row_mut(t));
    }
    out
}

/// Gradients of a causal convolution: returns
/// `(d_input, d_kernel, d_bias)` with `d_kernel` in the canonical
/// `C_out × C_in × K` layout.
pub(crate) fn conv_backward<S: Scalar>(
    compiled: &ConvCompiled<S>,
    input: &SeqTensor<S>,
    g_out: &SeqTensor<S>,
) -> (SeqTensor<S>, Vec<S>, Vec<S>) {
    let t_len = input.frames();
    let (c_out, c_in, kk, d) = (compiled.c_out, compiled.c_in, compiled.k, compiled.dilation);
    debug_assert_eq!(g_out.channels(), c_out);
    debug_assert_eq!(g_out.frames(), t_len);

    let mut g_input = SeqTensor::zeros(t_len, c_in);
    // Accumulate kernel grads in the repacked layout, transpose once at the end.
    let mut gk_kt = vec![S::zero(); c_out * c_in * kk];
    let mut g_bias = vec![S::zero(); c_out];

    for t in 0..t_len {
        let go_row = g_out.row(t);
        for (co, g) in go_row.iter().enumerate() {
            g_bias[co] = g_bias[co] + *g;
        }
        for k in 0..kk {
            let i = t as isize - (d * (kk - 1 - k)) as isize;
            if i < 0 {
                continue;
            }
            let i = i as usize;
            let x_row = input.row(i);
            let gi_row = g_input.row_mut(i);
            for (co, g) in go_row.iter().enumerate() {
                let g = *g;
                if g == S::zero() {
                    continue;
                }
                let start = (k * c_out + co) * c_in;
                axpy(g, x_row, &mut gk_kt[start..start + c_in]);
                axpy(g, &compiled.w_kt[start..start + c_in], gi_row);
            }
        }
    }

    // Repack kernel grads into canonical C_out × C_in × K order.
    let mut g_kernel = vec![S::zero(); c_out * c_in * kk];
    for k in 0..kk {
        for co in 0..c_out {
            for ci in 0..c_in {
                g_kernel[(co * c_in + ci) * kk + k] = gk_kt[(k * c_out + co) * c_in + ci];
            }
        }
    }
    (g_input, g_kernel, g_bias)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(vals: &[f64]) -> SeqTensor<f64> {
        SeqTensor::new(vals.len(), 1, vals.to_vec()).unwrap()
    }

    #[test]
    fn identity_kernel_passes_input_through() {
        let input = seq(&[0.5, -1.0, 2.0]);
        let p = ConvParams::new(1, 1, 1, 1, vec![1.0], vec![0.0]).unwrap();
        let out = conv1d_causal(&input, &p).unwrap();
        assert_eq!(out, input);
    }

    #[test]
    fn two_tap_kernel_sums_past_and_current() {
        // taps: k=0 reads t-dilation (past), k=1 reads t (current)
        let input = seq(&[1.0, 2.0, 3.0]);
        let p = ConvParams::new(1, 1, 2, 1, vec![1.0, 1.0], vec![0.0]).unwrap();
        let out = conv1d_causal(&input, &p).unwrap();
        assert_eq!(out.data(), &[1.0, 3.0, 5.0]);
    }

    #[test]
    fn dilation_two_reads_two_frames_back() {
        let input = seq(&[1.0, 2.0, 3.0]);
        let p = ConvParams::new(1, 1, 2, 2, vec![1.0, 1.0], vec![0.0]).unwrap();
        let out = conv1d_causal(&input, &p).unwrap();
        assert_eq!(out.data(), &[1.0, 2.0, 4.0]);
    }

    #[test]
    fn channel_mismatch_is_invalid_argument() {
        let input = SeqTensor::new(2, 2, vec![1.0; 4]).unwrap();
        let p = ConvParams::new(1, 1, 1, 1, vec![1.0], vec![0.0]).unwrap();
        assert!(matches!(
            conv1d_causal(&input, &p),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn non_finite_input_is_numeric_error() {
        let mut input = seq(&[1.0, 2.0]);
        input.data_mut()[1] = f64::NAN;
        let p = ConvParams::new(1, 1, 1, 1, vec![1.0], vec![0.0]).unwrap();
        assert!(matches!(conv1d_causal(&input, &p), Err(Error::Numeric(_))));
    }

    #[test]
    fn zero_dilation_rejected() {
        assert!(ConvParams::<f64>::new(1, 1, 2, 0, vec![0.0; 2], vec![0.0]).is_err());
    }

    #[test]
    fn multichannel_matches_hand_computation() {
        // T=2, Cin=2, Cout=1, K=2, dilation=1
        // x = [[1, 2], [3, 4]], w[co=0][ci][k]: ci0 = [10, 1], ci1 = [20, 2], bias 0.5
        let input = SeqTensor::new(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = ConvParams::new(1, 2, 2, 1, vec![10.0, 1.0, 20.0, 2.0], vec![0.5]).unwrap();
        let out = conv1d_causal(&input, &p).unwrap();
        // t=0: past frame zero-padded: 1*1 + 2*2 + 0.5 = 5.5
        // t=1: 10*1 + 20*2 + 1*3 + 2*4 + 0.5 = 61.5
        assert_eq!(out.data(), &[5.5, 61.5]);
    }

    #[test]
    fn output_length_always_matches_input() {
        let input = SeqTensor::new(7, 3, (0..21).map(|i| i as f64 * 0.1).collect()).unwrap();
        let p = ConvParams::new(5, 3, 3, 4, vec![0.01; 45], vec![0.0; 5]).unwrap();
        let out = conv1d_causal(&input, &p).unwrap();
        assert_eq!(out.frames(), 7);
        assert_eq!(out.channels(), 5);
    }
}
