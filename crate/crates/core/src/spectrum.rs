//! Dispersion relation and critical-region classification of the XY chain.

use crate::xy::XyParams;
use std::f64::consts::PI;

/// Quasiparticle energy `Lambda_phi = sqrt((lambda - cos phi)^2 + gamma^2 sin^2 phi)`.
pub fn dispersion(params: &XyParams, phi: f64) -> f64 {
    let a = params.lambda() - phi.cos();
    let b = params.gamma() * phi.sin();
    (a * a + b * b).sqrt()
}

/// Sampled dispersion over `[-pi, pi]` with the gap (`Lambda` at `phi = 0`)
/// and the correlation length where a closed form exists.
#[derive(Debug, Clone)]
pub struct DispersionProfile {
    pub samples: Vec<(f64, f64)>,
    /// `Delta = Lambda_{phi=0} = |lambda - 1|`.
    pub gap: f64,
    /// Correlation length, `None` when no closed form applies (including
    /// critical points, where it diverges).
    pub xi: Option<f64>,
}

pub fn dispersion_profile(params: &XyParams, n_samples: usize) -> DispersionProfile {
    let n = n_samples.max(3);
    let samples: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let phi = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
            (phi, dispersion(params, phi))
        })
        .collect();
    let gap = dispersion(params, 0.0);
    let xi = match classify(params) {
        CriticalClass::NonCritical { xi } => xi,
        _ => None,
    };
    DispersionProfile { samples, gap, xi }
}

/// Critical regions of the XY parameter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalClass {
    /// `lambda = 1`, `gamma in (0, 1]`: free-fermion class, exponents
    /// `nu = 1`, `s = 1`, `z = 1`.
    CriticalIsing { nu: f64, s: f64, z: f64 },
    /// `gamma = 0`, `lambda in [0, 1]`: free-boson class, exponents
    /// `nu = 1/2`, `s = 1`, `z = 2`.
    CriticalXx { nu: f64, s: f64, z: f64 },
    /// `gamma^2 + lambda^2 = 1` away from the other two regions: power-law
    /// correlators only, no exponent assignment.
    CriticalCircle,
    /// Gapped; `xi` is reported only where a closed form exists:
    /// `1/|lambda - 1|` for `gamma > 0`, `1/sqrt(lambda - 1)` for
    /// `gamma = 0`, `lambda > 1`.
    NonCritical { xi: Option<f64> },
}

const CIRCLE_TOL: f64 = 1e-12;

pub fn classify(params: &XyParams) -> CriticalClass {
    let gamma = params.gamma();
    let lambda = params.lambda();
    if lambda == 1.0 && gamma > 0.0 {
        return CriticalClass::CriticalIsing { nu: 1.0, s: 1.0, z: 1.0 };
    }
    if gamma == 0.0 && lambda <= 1.0 {
        // the (0, 1) endpoint is the unstable fixed point of this segment
        return CriticalClass::CriticalXx { nu: 0.5, s: 1.0, z: 2.0 };
    }
    if (gamma * gamma + lambda * lambda - 1.0).abs() < CIRCLE_TOL {
        return CriticalClass::CriticalCircle;
    }
    let xi = if gamma > 0.0 {
        Some(1.0 / (lambda - 1.0).abs())
    } else if lambda > 1.0 {
        Some(1.0 / (lambda - 1.0).sqrt())
    } else {
        None
    };
    CriticalClass::NonCritical { xi }
}

impl CriticalClass {
    pub fn is_critical(&self) -> bool {
        !matches!(self, CriticalClass::NonCritical { .. })
    }

    /// Expected `log2` slope of the block entropy where the class fixes it.
    pub fn expected_slope(&self) -> Option<f64> {
        match self {
            CriticalClass::CriticalIsing { .. } => Some(1.0 / 6.0),
            CriticalClass::CriticalXx { .. } => Some(1.0 / 3.0),
            CriticalClass::CriticalCircle => None,
            CriticalClass::NonCritical { .. } => Some(0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(gamma: f64, lambda: f64) -> XyParams {
        XyParams::new(gamma, lambda).unwrap()
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion(&p(1.0, 1.0), 0.0), 0.0);
        let phi_c = 0.5f64.acos();
        assert!(dispersion(&p(0.0, 0.5), phi_c).abs() < 1e-15);
        assert!((dispersion(&p(1.0, 0.0), PI / 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dispersion_is_even_and_nonnegative() {
        let params = p(0.6, 0.8);
        for i in 0..50 {
            let phi = -PI + 2.0 * PI * i as f64 / 49.0;
            let v = dispersion(&params, phi);
            assert!(v >= 0.0);
            assert!((v - dispersion(&params, -phi)).abs() < 1e-14);
        }
    }

    #[test]
    fn classification_matches_regions() {
        assert!(matches!(classify(&p(0.5, 1.0)), CriticalClass::CriticalIsing { z, .. } if z == 1.0));
        assert!(matches!(classify(&p(0.0, 0.3)), CriticalClass::CriticalXx { z, .. } if z == 2.0));
        assert!(matches!(classify(&p(0.0, 1.0)), CriticalClass::CriticalXx { .. }));
        assert!(matches!(classify(&p(0.6, 0.8)), CriticalClass::CriticalCircle));
        match classify(&p(1.0, 2.0)) {
            CriticalClass::NonCritical { xi } => assert_eq!(xi, Some(1.0)),
            other => panic!("unexpected class {other:?}"),
        }
        match classify(&p(0.0, 1.25)) {
            CriticalClass::NonCritical { xi } => {
                assert!((xi.unwrap() - 2.0).abs() < 1e-12);
            }
            other => panic!("unexpected class {other:?}"),
        }
    }

    #[test]
    fn gap_is_lambda_offset_near_critical_field() {
        // gap = |lambda - 1| where phi = 0 is the dispersion minimum
        for (gamma, lambda) in [(1.0, 0.5), (0.5, 1.2), (0.8, 0.9), (0.3, 1.5)] {
            let params = p(gamma, lambda);
            let profile = dispersion_profile(&params, 20001);
            let min = profile
                .samples
                .iter()
                .map(|&(_, v)| v)
                .fold(f64::INFINITY, f64::min);
            if lambda >= 1.0 - gamma * gamma {
                assert!((profile.gap - (lambda - 1.0).abs()).abs() < 1e-12);
                assert!(min >= profile.gap - 1e-10, "sampled min {min} below gap {}", profile.gap);
            }
        }
    }
}
