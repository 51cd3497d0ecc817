//! Majorization partial order on (possibly truncated) spectra.

use crate::error::{Error, Result};
use crate::shannon_entropy_bits;

/// Decreasingly ordered probability list, possibly truncated.
#[derive(Debug, Clone)]
pub struct SpectrumDistribution {
    probs: Vec<f64>,
}

impl SpectrumDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter("distribution cannot be empty".into()));
        }
        if probs.iter().any(|&p| p < -1e-15 || !p.is_finite()) {
            return Err(Error::InvalidParameter("probabilities must be finite and non-negative".into()));
        }
        if probs.windows(2).any(|w| w[1] > w[0] + 1e-12) {
            return Err(Error::InvalidParameter("probabilities must be decreasing".into()));
        }
        let total: f64 = probs.iter().sum();
        if total > 1.0 + 1e-10 {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total} > 1")));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Weight not covered by the listed entries.
    pub fn truncation_weight(&self) -> f64 {
        (1.0 - self.probs.iter().sum::<f64>()).max(0.0)
    }

    pub fn entropy_bits(&self) -> f64 {
        shannon_entropy_bits(&self.probs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorizationVerdict {
    Yes,
    No,
    /// The listed prefixes pass, but unlisted tail weight could still
    /// overturn an untested inequality.
    UndecidableAtTruncation,
}

/// Does `y` majorize `x` (written `x < y`): every partial sum of `x` is
/// bounded by the matching partial sum of `y`?
///
/// Listed entries are exact top-of-spectrum values, so a failed prefix
/// inequality is a definite "no". A "yes" additionally requires that no
/// untested prefix can flip the verdict: beyond the jointly listed prefix
/// the worst case is `X_n -> 1` immediately while `Y_n` stalls, so the
/// unlisted weight of `y` must stay within `tol`.
pub fn majorizes(x: &SpectrumDistribution, y: &SpectrumDistribution, tol: f64) -> MajorizationVerdict {
    let n = x.probs.len().min(y.probs.len());
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        cx += x.probs[i];
        cy += y.probs[i];
        if cx > cy + tol {
            return MajorizationVerdict::No;
        }
    }
    let y_unseen = 1.0 - cy;
    if y_unseen <= tol {
        MajorizationVerdict::Yes
    } else {
        MajorizationVerdict::UndecidableAtTruncation
    }
}

/// One entry of a block-majorization scan.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub l: usize,
    /// Verdict for `rho_{L+2} < rho_L`.
    pub two_step: MajorizationVerdict,
    /// Informational only: verdict for `rho_{L+1} < rho_L` when the
    /// intermediate spectrum is available. Whether one-step majorization
    /// holds is left unasserted; the established relation moves in
    /// two-spin steps.
    pub one_step: Option<MajorizationVerdict>,
}

/// Two-spin-step majorization scan over block spectra keyed by block size:
/// one verdict for `rho_{L+2} < rho_L` per available pair, with the
/// one-step verdict recorded as side information where `L+1` exists.
pub fn block_majorization_scan(
    spectra: &[(usize, SpectrumDistribution)],
    tol: f64,
) -> Vec<ScanEntry> {
    let at = |l: usize| spectra.iter().find(|&&(pl, _)| pl == l).map(|(_, s)| s);
    let mut out = Vec::new();
    for &(l, ref base) in spectra {
        let Some(bigger) = at(l + 2) else { continue };
        let two_step = majorizes(bigger, base, tol);
        let one_step = at(l + 1).map(|mid| majorizes(mid, base, tol));
        out.push(ScanEntry { l, two_step, one_step });
    }
    out
}

/// Renormalization-flow ordering check `rho^{m=0} < rho^{m}`: the critical
/// (ultraviolet) block spectrum should be majorized by the massive
/// (infrared) one at the same block size and extraction depth.
pub fn rg_majorization_check(
    critical: &SpectrumDistribution,
    massive: &SpectrumDistribution,
    tol: f64,
) -> MajorizationVerdict {
    majorizes(critical, massive, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(p: &[f64]) -> SpectrumDistribution {
        SpectrumDistribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn textbook_cases() {
        assert_eq!(majorizes(&d(&[0.5, 0.5]), &d(&[1.0, 0.0]), 1e-12), MajorizationVerdict::Yes);
        assert_eq!(majorizes(&d(&[1.0, 0.0]), &d(&[0.5, 0.5]), 1e-12), MajorizationVerdict::No);
        let u = d(&[0.4, 0.3, 0.3]);
        assert_eq!(majorizes(&u, &u, 1e-12), MajorizationVerdict::Yes);
    }

    #[test]
    fn truncation_blocks_certification() {
        // y lists only 60% of its weight: a yes cannot be certified
        let x = d(&[0.3, 0.3]);
        let y = d(&[0.4, 0.2]);
        assert_eq!(majorizes(&x, &y, 1e-9), MajorizationVerdict::UndecidableAtTruncation);
        // but a definite prefix violation is still a no
        let x2 = d(&[0.5, 0.2]);
        assert_eq!(majorizes(&x2, &y, 1e-9), MajorizationVerdict::No);
    }

    #[test]
    fn input_validation() {
        assert!(SpectrumDistribution::new(vec![0.2, 0.5]).is_err());
        assert!(SpectrumDistribution::new(vec![0.8, 0.4]).is_err());
        assert!(SpectrumDistribution::new(vec![]).is_err());
        assert!(SpectrumDistribution::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn majorization_implies_lower_entropy() {
        let x = d(&[0.4, 0.3, 0.2, 0.1]);
        let y = d(&[0.7, 0.1, 0.1, 0.1]);
        assert_eq!(majorizes(&x, &y, 1e-12), MajorizationVerdict::Yes);
        assert!(x.entropy_bits() > y.entropy_bits());
    }
}
