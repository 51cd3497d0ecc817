//! Canonical form of a real skew-symmetric matrix.
//!
//! For skew-symmetric `A` there is a special orthogonal `W` with
//! `W A W^T = bigoplus_k sigma_k [[0, 1], [-1, 0]]`, `sigma_k >= 0`.
//! The rows of `W` are built from the spectral decomposition of the
//! symmetric positive semidefinite matrix `-A^2`: inside each eigenspace of
//! eigenvalue `sigma^2 > 0`, a unit vector `v` and `w = A v / sigma` span an
//! invariant plane with `v . w = 0`, and the row pair `(w, v)` maps the
//! plane onto the canonical block.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct SkewCanonical {
    /// Canonical values, one per 2x2 block, descending.
    pub sigmas: Vec<f64>,
    /// Orthogonal matrix whose row pairs `(2k, 2k+1)` carry block `k`.
    pub w: DMatrix<f64>,
}

pub fn canonical_form(a: &DMatrix<f64>) -> Result<SkewCanonical> {
    let n = a.nrows();
    if n != a.ncols() || n % 2 != 0 {
        return Err(Error::InvalidParameter("skew canonical form needs an even square matrix".into()));
    }
    let scale = a.amax().max(1.0);
    let m = -(a * a);
    let eig = m.symmetric_eigen();

    // eigenvalue index order, descending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());

    let mut w = DMatrix::<f64>::zeros(n, n);
    let mut sigmas = Vec::with_capacity(n / 2);
    let mut claimed: Vec<DVector<f64>> = Vec::with_capacity(n);
    let tol = 1e-8 * scale;

    for &idx in &order {
        if sigmas.len() == n / 2 {
            break;
        }
        let mut v: DVector<f64> = eig.eigenvectors.column(idx).into();
        // remove components already used by earlier planes of the same
        // (possibly degenerate) eigenvalue
        for c in &claimed {
            let overlap = c.dot(&v);
            v -= c * overlap;
        }
        let norm = v.norm();
        if norm < 0.5 {
            continue; // fully absorbed by an earlier plane
        }
        v /= norm;
        let av = a * &v;
        let sigma = av.norm();
        let pair = if sigma > tol {
            let wv = av / sigma;
            (sigma, wv)
        } else {
            // zero mode: A vanishes on this eigenspace; pair with another
            // null vector found later. Mark sigma = 0 and synthesize the
            // partner by taking the next unclaimed null eigenvector.
            (0.0, DVector::zeros(n))
        };
        if pair.0 > 0.0 {
            let k = sigmas.len();
            w.row_mut(2 * k).copy_from(&pair.1.transpose());
            w.row_mut(2 * k + 1).copy_from(&v.transpose());
            claimed.push(v);
            claimed.push(pair.1);
            sigmas.push(pair.0);
        } else {
            // collect null vectors two at a time
            if let Some(slot) = find_pending_null(&mut w, sigmas.len(), n) {
                w.row_mut(slot).copy_from(&v.transpose());
                claimed.push(v);
                if slot % 2 == 1 {
                    sigmas.push(0.0);
                }
            }
        }
    }

    if sigmas.len() != n / 2 {
        return Err(Error::EigenFailure(format!(
            "canonical pairing recovered {} of {} blocks",
            sigmas.len(),
            n / 2
        )));
    }
    Ok(SkewCanonical { sigmas, w })
}

/// Next empty row among the two rows of the current block.
fn find_pending_null(w: &mut DMatrix<f64>, blocks_done: usize, n: usize) -> Option<usize> {
    for row in (2 * blocks_done)..n {
        if w.row(row).iter().all(|&x| x == 0.0) {
            return Some(row);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: DMatrix<f64>) {
        let n = a.nrows();
        let c = canonical_form(&a).unwrap();
        // orthogonality
        let err_orth = (&c.w * c.w.transpose() - DMatrix::<f64>::identity(n, n)).abs().max();
        assert!(err_orth < 1e-10, "orthogonality defect {err_orth}");
        // canonical block structure with sigma >= 0
        let b = &c.w * &a * c.w.transpose();
        for k in 0..n / 2 {
            assert!((b[(2 * k, 2 * k + 1)] - c.sigmas[k]).abs() < 1e-9);
            assert!((b[(2 * k + 1, 2 * k)] + c.sigmas[k]).abs() < 1e-9);
            assert!(c.sigmas[k] >= 0.0);
        }
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expected = if i / 2 == j / 2 { b[(i, j)] } else { 0.0 };
                if i / 2 != j / 2 {
                    off = off.max((b[(i, j)] - expected).abs());
                }
            }
        }
        assert!(off < 1e-9, "off-block leakage {off}");
    }

    #[test]
    fn random_skew_matrices() {
        // deterministic LCG fill
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for &n in &[2usize, 4, 8, 12] {
            let mut a = DMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = next();
                    a[(i, j)] = v;
                    a[(j, i)] = -v;
                }
            }
            check(a);
        }
    }

    #[test]
    fn degenerate_and_zero_blocks() {
        // two identical blocks plus a zero block
        let mut a = DMatrix::<f64>::zeros(6, 6);
        a[(0, 1)] = 0.7;
        a[(1, 0)] = -0.7;
        a[(2, 3)] = 0.7;
        a[(3, 2)] = -0.7;
        check(a);
    }
}
