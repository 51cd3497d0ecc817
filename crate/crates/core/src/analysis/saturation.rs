//! Saturation detection and the mass-deformation entropy difference.

use super::fit::EntropyCurve;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaturationStatus {
    /// Successive doublings change the entropy by less than the tolerance.
    Saturated,
    /// The curve still moves at its largest doubling.
    NotSaturated,
    /// The curve contains no doubling pair to test.
    Inconclusive,
}

#[derive(Debug, Clone, Copy)]
pub struct SaturationResult {
    pub status: SaturationStatus,
    /// Entropy at the largest block size, when saturated.
    pub s_star: Option<f64>,
    /// First block size whose doubling stays within tolerance.
    pub l_sat: Option<usize>,
    /// `|S_2L - S_L|` at the largest available doubling.
    pub last_doubling_change: Option<f64>,
}

/// Default per-doubling tolerance in bits.
pub const SATURATION_TOL: f64 = 1e-4;

/// Decide saturation by successive doublings `(L, 2L)` present in the curve.
pub fn saturation(curve: &EntropyCurve, tol: f64) -> SaturationResult {
    let mut doublings: Vec<(usize, f64)> = Vec::new();
    for &(l, s) in curve.points() {
        if let Some(s2) = curve.entropy_at(2 * l) {
            doublings.push((l, (s2 - s).abs()));
        }
    }
    let Some(&(_, last_change)) = doublings.last() else {
        return SaturationResult {
            status: SaturationStatus::Inconclusive,
            s_star: None,
            l_sat: None,
            last_doubling_change: None,
        };
    };
    if last_change < tol {
        // first L from which every later doubling also stays quiet
        let mut l_sat = None;
        for (i, &(l, change)) in doublings.iter().enumerate() {
            if change < tol && doublings[i..].iter().all(|&(_, c)| c < tol) {
                l_sat = Some(l);
                break;
            }
        }
        SaturationResult {
            status: SaturationStatus::Saturated,
            s_star: curve.points().last().map(|&(_, s)| s),
            l_sat,
            last_doubling_change: Some(last_change),
        }
    } else {
        SaturationResult {
            status: SaturationStatus::NotSaturated,
            s_star: None,
            l_sat: None,
            last_doubling_change: Some(last_change),
        }
    }
}

/// Measured and predicted saturated-entropy differences for two mass
/// deformations of the same universality class.
///
/// Inputs are saturated entropies in bits; the comparison happens in nats
/// because the prediction is `-(1/6) ln(m1/m2)`. The caller compares the
/// pair.
pub fn mass_entropy_difference(
    s_star_1_bits: f64,
    m_1: f64,
    s_star_2_bits: f64,
    m_2: f64,
) -> Result<(f64, f64)> {
    if m_1 <= 0.0 || m_2 <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "masses must be positive, got {m_1} and {m_2}"
        )));
    }
    let measured = (s_star_1_bits - s_star_2_bits) * std::f64::consts::LN_2;
    let predicted = -(1.0 / 6.0) * (m_1 / m_2).ln();
    Ok((measured, predicted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::fit::CurveSource;

    fn curve(pts: Vec<(usize, f64)>) -> EntropyCurve {
        EntropyCurve::new(pts, CurveSource::Synthetic("test".into())).unwrap()
    }

    #[test]
    fn constant_curve_saturates_at_its_value() {
        let c = curve((1..=64).map(|l| (l, 0.75)).collect());
        let r = saturation(&c, 1e-4);
        assert_eq!(r.status, SaturationStatus::Saturated);
        assert_eq!(r.s_star, Some(0.75));
        assert_eq!(r.l_sat, Some(1));
    }

    #[test]
    fn log_curve_does_not_saturate() {
        let c = curve((1..=64).map(|l| (l, (l as f64).log2() / 6.0)).collect());
        let r = saturation(&c, 1e-4);
        assert_eq!(r.status, SaturationStatus::NotSaturated);
        assert!((r.last_doubling_change.unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn no_doubling_pairs_is_inconclusive() {
        let c = curve(vec![(3, 0.5), (5, 0.6), (7, 0.7)]);
        assert_eq!(saturation(&c, 1e-4).status, SaturationStatus::Inconclusive);
    }

    #[test]
    fn mass_difference_signs_and_zero() {
        let (m, p) = mass_entropy_difference(1.0, 0.1, 1.0, 0.1).unwrap();
        assert_eq!(p, 0.0);
        assert!(m.abs() < 1e-15);
        // larger first mass: entropy difference negative
        let (_, p) = mass_entropy_difference(0.0, 0.2, 0.0, 0.1).unwrap();
        assert!(p < 0.0);
        assert!(mass_entropy_difference(1.0, 0.0, 1.0, 0.1).is_err());
    }
}
