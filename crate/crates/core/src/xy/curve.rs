//! Entropy-versus-block-size sweeps for the infinite XY chain.
//!
//! Building the kernel once and diagonalizing each `2L x 2L` block matrix
//! is embarrassingly parallel across block sizes; points dispatch through
//! [`crate::exec::map_indexed`].

use super::correlation::{build_correlation_matrix, mode_spectrum, ModeSpectrum};
use super::kernel::{CorrelationKernel, KernelChoice};
use super::rho::block_entropy;
use super::XyParams;
use crate::error::Result;
use crate::exec::{map_indexed, ExecMode};

#[derive(Debug, Clone)]
pub struct XyCurvePoint {
    pub l: usize,
    pub entropy: f64,
    pub modes: ModeSpectrum,
}

/// Mode spectrum of a single block size.
pub fn xy_modes_at(kernel: &CorrelationKernel, l: usize) -> Result<ModeSpectrum> {
    mode_spectrum(&build_correlation_matrix(kernel, l)?)
}

/// Entropy curve over the given block sizes (need not be contiguous).
pub fn xy_entropy_curve(
    params: &XyParams,
    block_sizes: &[usize],
    choice: KernelChoice,
    quad_tol: f64,
    mode: ExecMode,
) -> Result<Vec<XyCurvePoint>> {
    let l_max = block_sizes.iter().copied().max().unwrap_or(1);
    let kernel = CorrelationKernel::build(params, l_max, choice, quad_tol)?;
    let results = map_indexed(mode, block_sizes.to_vec(), |l| -> Result<XyCurvePoint> {
        let modes = xy_modes_at(&kernel, l)?;
        let entropy = block_entropy(&modes);
        Ok(XyCurvePoint { l, entropy, modes })
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ising_zero_field_curve_is_flat_at_one() {
        let params = XyParams::new(1.0, 0.0).unwrap();
        let ls: Vec<usize> = (1..=12).collect();
        let pts = xy_entropy_curve(&params, &ls, KernelChoice::Auto, 1e-10, ExecMode::Sequential).unwrap();
        for p in &pts {
            assert!((p.entropy - 1.0).abs() < 1e-9, "L = {}: S = {}", p.l, p.entropy);
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let params = XyParams::new(0.0, 0.0).unwrap();
        let ls: Vec<usize> = (1..=10).collect();
        let a = xy_entropy_curve(&params, &ls, KernelChoice::Auto, 1e-10, ExecMode::Parallel).unwrap();
        let b = xy_entropy_curve(&params, &ls, KernelChoice::Auto, 1e-10, ExecMode::Sequential).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.l, y.l);
            assert_eq!(x.entropy, y.entropy);
        }
    }
}
