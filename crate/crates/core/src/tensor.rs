use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A `T × C` sequence of feature rows, row-major.
///
/// `T` is the frame count, `C` the channel count. Every operation in the
/// crate preserves `T` and treats the row index as time.
#[derive(Debug, Clone, PartialEq)]
pub struct SeqTensor<S> {
    frames: usize,
    channels: usize,
    data: Vec<S>,
}

impl<S: Scalar> SeqTensor<S> {
    /// Builds a tensor from row-major data, validating the invariants
    /// (`T ≥ 1`, `C ≥ 1`, all entries finite).
    pub fn new(frames: usize, channels: usize, data: Vec<S>) -> Result<Self> {
        if frames == 0 || channels == 0 {
            return Err(Error::invalid(format!(
                "sequence tensor must be at least 1x1, got {frames}x{channels}"
            )));
        }
        if data.len() != frames * channels {
            return Err(Error::invalid(format!(
                "data length {} does not match {frames}x{channels}",
                data.len()
            )));
        }
        let t = Self {
            frames,
            channels,
            data,
        };
        t.check_finite()?;
        Ok(t)
    }

    /// All-zero tensor. Panics on zero dimensions (internal use only).
    pub fn zeros(frames: usize, channels: usize) -> Self {
        assert!(frames > 0 && channels > 0, "zero tensor dimension");
        Self {
            frames,
            channels,
            data: vec![S::zero(); frames * channels],
        }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("no rows"));
        }
        let channels = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * channels);
        for r in rows {
            if r.len() != channels {
                return Err(Error::invalid("ragged rows"));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), channels, data)
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    #[inline]
    pub fn row(&self, t: usize) -> &[S] {
        &self.data[t * self.channels..(t + 1) * self.channels]
    }

    #[inline]
    pub fn row_mut(&mut self, t: usize) -> &mut [S] {
        &mut self.data[t * self.channels..(t + 1) * self.channels]
    }

    #[inline]
    pub fn get(&self, t: usize, c: usize) -> S {
        self.data[t * self.channels + c]
    }

    #[inline]
    pub fn set(&mut self, t: usize, c: usize, v: S) {
        self.data[t * self.channels + c] = v;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[S]> {
        self.data.chunks_exact(self.channels)
    }

    pub fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::numeric("non-finite entry in sequence tensor"))
        }
    }

    /// Per-row argmax; ties resolve to the lowest index.
    pub fn argmax_rows(&self) -> Vec<usize> {
        self.rows()
            .map(|row| {
                let mut best = 0;
                for (i, v) in row.iter().enumerate() {
                    if *v > row[best] {
                        best = i;
                    }
                }
                best
            })
            .collect()
    }

    /// Converts element-wise through `f64` (used to narrow or widen
    /// between precisions at the inference boundary).
    pub fn cast<T: Scalar>(&self) -> SeqTensor<T> {
        SeqTensor {
            frames: self.frames,
            channels: self.channels,
            data: self
                .data
                .iter()
                .map(|v| T::from_f64(v.to_f64_lossy()))
                .collect(),
        }
    }
}
