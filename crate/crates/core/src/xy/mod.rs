//! Infinite-chain XY model: correlation kernel, block correlation matrix,
//! mode spectrum, block entropy, reduced-density-matrix spectrum, effective
//! rank, and a finite-chain cross-validation oracle.

pub mod correlation;
pub mod curve;
pub mod kernel;
pub mod oracle;
pub mod rho;

pub use correlation::{build_correlation_matrix, mode_spectrum, MajoranaCorrelationMatrix, ModeSpectrum};
pub use curve::{xy_entropy_curve, xy_modes_at, XyCurvePoint};
pub use kernel::{compute_g_analytic, compute_g_numeric, AnalyticCase, CorrelationKernel, KernelChoice};
pub use oracle::{finite_chain_oracle, OracleOutcome};
pub use rho::{block_entropy, effective_rank, rho_top_spectrum, BlockSpectrum};

use crate::error::{Error, Result};

/// XY-chain parameters: anisotropy `gamma` in [0, 1] and transverse field
/// `lambda >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XyParams {
    gamma: f64,
    lambda: f64,
}

impl XyParams {
    pub fn new(gamma: f64, lambda: f64) -> Result<Self> {
        if !gamma.is_finite() || !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be finite and in [0, 1], got {gamma}"
            )));
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lambda must be finite and >= 0, got {lambda}"
            )));
        }
        Ok(Self { gamma, lambda })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate_domain() {
        assert!(XyParams::new(0.5, 1.0).is_ok());
        assert!(XyParams::new(-0.1, 1.0).is_err());
        assert!(XyParams::new(1.1, 1.0).is_err());
        assert!(XyParams::new(0.5, -1.0).is_err());
        assert!(XyParams::new(f64::NAN, 1.0).is_err());
        assert!(XyParams::new(0.5, f64::INFINITY).is_err());
    }
}
