use crate::error::{Error, Result};
use crate::kernel::conv::{conv1d_causal, ConvParams};
use crate::kernel::ops::{add, dropout, relu, DropoutMask};
use crate::scalar::Scalar;
use crate::tensor::SeqTensor;

/// Parameters of one dilated residual layer: a dilated `K`-tap causal
/// convolution followed by ReLU, a pointwise (1×1) convolution, dropout,
/// and the residual addition. Width is preserved; there is no pooling and
/// no fully connected layer.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockParams<S> {
    pub conv: ConvParams<S>,
    pub pointwise: ConvParams<S>,
}

impl<S: Scalar> BlockParams<S> {
    pub fn zeros(width: usize, kernel: usize, dilation: usize) -> Self {
        Self {
            conv: ConvParams::zeros(width, width, kernel, dilation),
            pointwise: ConvParams::zeros(width, width, 1, 1),
        }
    }

    pub fn width(&self) -> usize {
        self.conv.c_in()
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.conv.c_in();
        if self.conv.c_out() != w || self.pointwise.c_in() != w || self.pointwise.c_out() != w {
            return Err(Error::invalid("residual block must preserve width"));
        }
        Ok(())
    }
}

/// `output = input + dropout(pointwise(relu(dilated_conv(input))))`.
///
/// `mask`, when given, must cover the `T × F` activation element-wise;
/// pass `None` for inference.
pub fn dilated_residual_block<S: Scalar>(
    input: &SeqTensor<S>,
    block: &BlockParams<S>,
    mask: Option<&DropoutMask<S>>,
) -> Result<SeqTensor<S>> {
    block.validate()?;
    if input.channels() != block.width() {
        return Err(Error::invalid(format!(
            "residual block width {} does not match input channels {}",
            block.width(),
            input.channels()
        )));
    }
    let h = conv1d_causal(input, &block.conv)?;
    let r = relu(&h);
    let p = conv1d_causal(&r, &block.pointwise)?;
    let dropped = match mask {
        Some(m) => dropout(&p, m)?,
        None => p,
    };
    add(input, &dropped)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_weights_give_identity() {
        let input = SeqTensor::new(3, 2, vec![1.0, -2.0, 3.0, 4.0, -5.0, 6.0]).unwrap();
        let block = BlockParams::zeros(2, 3, 2);
        let out = dilated_residual_block(&input, &block, None).unwrap();
        assert_eq!(out, input);
    }

    #[test]
    fn matches_hand_composed_sub_ops() {
        // T=2, F=1, K=3, dilation=1, hand-set weights.
        // conv taps [w0 (t-2), w1 (t-1), w2 (t)] = [0.5, -1.0, 2.0], bias 0.25
        // pointwise weight 3.0, bias -0.5
        let input = SeqTensor::new(2, 1, vec![1.0, 2.0]).unwrap();
        let block = BlockParams {
            conv: ConvParams::new(1, 1, 3, 1, vec![0.5, -1.0, 2.0], vec![0.25]).unwrap(),
            pointwise: ConvParams::new(1, 1, 1, 1, vec![3.0], vec![-0.5]).unwrap(),
        };
        // t=0: conv = 2.0*1 + 0.25 = 2.25; relu = 2.25; pw = 3*2.25 - 0.5 = 6.25; out = 1 + 6.25
        // t=1: conv = -1.0*1 + 2.0*2 + 0.25 = 3.25; pw = 3*3.25 - 0.5 = 9.25; out = 2 + 9.25
        let out = dilated_residual_block(&input, &block, None).unwrap();
        assert_eq!(out.data(), &[7.25, 11.25]);
    }

    #[test]
    fn relu_gating_inside_block() {
        // Negative conv output is clamped before the pointwise stage.
        let input = SeqTensor::new(1, 1, vec![1.0]).unwrap();
        let block = BlockParams {
            conv: ConvParams::new(1, 1, 1, 1, vec![-2.0], vec![0.0]).unwrap(),
            pointwise: ConvParams::new(1, 1, 1, 1, vec![5.0], vec![0.0]).unwrap(),
        };
        let out = dilated_residual_block(&input, &block, None).unwrap();
        assert_eq!(out.data(), &[1.0]);
    }

    #[test]
    fn all_zero_mask_drops_the_branch() {
        let input = SeqTensor::new(2, 1, vec![1.0, 2.0]).unwrap();
        let block = BlockParams {
            conv: ConvParams::new(1, 1, 3, 1, vec![0.5, -1.0, 2.0], vec![0.25]).unwrap(),
            pointwise: ConvParams::new(1, 1, 1, 1, vec![3.0], vec![-0.5]).unwrap(),
        };
        let mask = DropoutMask::new(vec![false; 2], 2.0);
        let out = dilated_residual_block(&input, &block, Some(&mask)).unwrap();
        assert_eq!(out, input);
    }

    #[test]
    fn channel_mismatch_is_invalid_argument() {
        let input = SeqTensor::new(2, 3, vec![0.0; 6]).unwrap();
        let block = BlockParams::<f64>::zeros(2, 3, 1);
        assert!(matches!(
            dilated_residual_block(&input, &block, None),
            Err(Error::InvalidArgument(_))
        ));
    }
}
