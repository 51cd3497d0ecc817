//! Block correlation matrix and its canonical mode values.
//!
//! The reduced state of `L` contiguous spins is fixed by the `2L x 2L`
//! real skew-symmetric block-Toeplitz matrix with 2x2 blocks
//! `Pi_l = [[0, g_l], [-g_{-l}, 0]]` at block offset `l = col - row`.
//! Its singular values come in equal pairs `(nu_m, nu_m)`; the `nu_m` are
//! the canonical correlations of `L` uncorrelated fermionic modes.

use super::kernel::CorrelationKernel;
use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// Real skew-symmetric `2L x 2L` block-Toeplitz correlation matrix.
#[derive(Debug, Clone)]
pub struct MajoranaCorrelationMatrix {
    mat: DMatrix<f64>,
    block_len: usize,
}

impl MajoranaCorrelationMatrix {
    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    /// Wrap an explicit matrix; it must be skew-symmetric of even dimension.
    pub fn from_matrix(mat: DMatrix<f64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() % 2 != 0 {
            return Err(Error::InvalidParameter(
                "correlation matrix must be square with even dimension".into(),
            ));
        }
        let skew = skew_defect(&mat);
        if skew > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "matrix is not skew-symmetric: max |G + G^T| entry = {skew:e}"
            )));
        }
        let block_len = mat.nrows() / 2;
        Ok(Self { mat, block_len })
    }
}

fn skew_defect(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] + m[(j, i)]).abs());
        }
    }
    worst
}

/// Assemble the block correlation matrix for a block of `l` sites.
pub fn build_correlation_matrix(
    kernel: &CorrelationKernel,
    l: usize,
) -> Result<MajoranaCorrelationMatrix> {
    assert!(l >= 1);
    let mut mat = DMatrix::<f64>::zeros(2 * l, 2 * l);
    for row in 0..l {
        for col in 0..l {
            let offset = col as i64 - row as i64;
            let g_plus = kernel.g(offset)?;
            let g_minus = kernel.g(-offset)?;
            // Pi_offset = [[0, g_offset], [-g_{-offset}, 0]]
            mat[(2 * row, 2 * col + 1)] = g_plus;
            mat[(2 * row + 1, 2 * col)] = -g_minus;
        }
    }
    debug_assert!(skew_defect(&mat) < 1e-12);
    Ok(MajoranaCorrelationMatrix { mat, block_len: l })
}

/// Canonical mode values of a block, sorted in decreasing order.
#[derive(Debug, Clone)]
pub struct ModeSpectrum {
    nu: Vec<f64>,
}

impl ModeSpectrum {
    /// Values clamped to [0, 1], decreasing.
    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    pub fn min(&self) -> f64 {
        *self.nu.last().expect("mode spectrum is never empty")
    }

    pub fn max(&self) -> f64 {
        self.nu[0]
    }

    /// Trusted constructor for synthetic spectra (tests, reference states).
    pub fn from_values(mut nu: Vec<f64>) -> Result<Self> {
        if nu.is_empty() {
            return Err(Error::InvalidParameter("mode spectrum cannot be empty".into()));
        }
        for &v in &nu {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ModeOutOfRange { nu: v });
            }
        }
        nu.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { nu })
    }

    /// Exact number of nonzero eigenvalues of the block density matrix:
    /// every mode strictly below 1 doubles the rank.
    pub fn log2_rank(&self) -> u32 {
        self.nu.iter().filter(|&&v| v < 1.0).count() as u32
    }
}

const PAIR_MISMATCH_TOL: f64 = 1e-8;
const CLAMP_WINDOW: f64 = 1e-9;

/// Extract the mode values as paired singular values of the correlation
/// matrix. Pairs that disagree by more than 1e-8 indicate a numerically
/// broken canonical structure and are reported as an error, as are values
/// exceeding 1 by more than 1e-9 (smaller excesses are clamped).
pub fn mode_spectrum(gamma: &MajoranaCorrelationMatrix) -> Result<ModeSpectrum> {
    let skew = skew_defect(&gamma.mat);
    if skew > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "mode extraction requires a skew-symmetric matrix (defect {skew:e})"
        )));
    }
    let mut sv: Vec<f64> = gamma.mat.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut nu = Vec::with_capacity(gamma.block_len);
    for pair in sv.chunks_exact(2) {
        let mismatch = (pair[0] - pair[1]).abs();
        if mismatch > PAIR_MISMATCH_TOL {
            return Err(Error::NumericalDegeneracy { mismatch });
        }
        let mut v = 0.5 * (pair[0] + pair[1]);
        if v > 1.0 {
            if v <= 1.0 + CLAMP_WINDOW {
                v = 1.0;
            } else {
                return Err(Error::ModeOutOfRange { nu: v });
            }
        }
        nu.push(v);
    }
    Ok(ModeSpectrum { nu })
}
