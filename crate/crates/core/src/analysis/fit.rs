//! Logarithmic scaling fits and central-charge estimates.

use crate::error::{Error, Result};

/// Where an entropy curve came from.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Xy { gamma: f64, lambda: f64 },
    Xxz { delta: f64, lambda: f64, n: usize },
    Synthetic(String),
}

/// Entropy as a function of block size.
#[derive(Debug, Clone)]
pub struct EntropyCurve {
    points: Vec<(usize, f64)>,
    pub source: CurveSource,
}

impl EntropyCurve {
    pub fn new(points: Vec<(usize, f64)>, source: CurveSource) -> Result<Self> {
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter("block sizes must be strictly increasing".into()));
        }
        if points.iter().any(|&(_, s)| s < -1e-12 || !s.is_finite()) {
            return Err(Error::InvalidParameter("entropies must be finite and non-negative".into()));
        }
        Ok(Self { points, source })
    }

    pub fn points(&self) -> &[(usize, f64)] {
        &self.points
    }

    pub fn entropy_at(&self, l: usize) -> Option<f64> {
        self.points.iter().find(|&&(pl, _)| pl == l).map(|&(_, s)| s)
    }

    pub fn max_l(&self) -> usize {
        self.points.last().map(|&(l, _)| l).unwrap_or(0)
    }
}

/// Least-squares fit of `S_L = k log2 L + a`.
#[derive(Debug, Clone, Copy)]
pub struct ScalingFit {
    pub k: f64,
    pub a: f64,
    /// Standard error of the slope from the residual variance.
    pub stderr_k: f64,
    pub residual_rms: f64,
    pub n_points: usize,
}

/// Fit over the points with `L >= l_min`; at least four are required.
pub fn fit_log_scaling(curve: &EntropyCurve, l_min: usize) -> Result<ScalingFit> {
    let pts: Vec<(f64, f64)> = curve
        .points()
        .iter()
        .filter(|&&(l, _)| l >= l_min)
        .map(|&(l, s)| ((l as f64).log2(), s))
        .collect();
    let n = pts.len();
    if n < 4 {
        return Err(Error::InsufficientData(format!(
            "log fit needs at least 4 points with L >= {l_min}, found {n}"
        )));
    }
    let nf = n as f64;
    let xbar = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let ybar = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - xbar).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientData("degenerate abscissae in log fit".into()));
    }
    let k = sxy / sxx;
    let a = ybar - k * xbar;
    let rss: f64 = pts.iter().map(|p| (p.1 - (k * p.0 + a)).powi(2)).sum();
    let stderr_k = if n > 2 { (rss / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    Ok(ScalingFit { k, a, stderr_k, residual_rms: (rss / nf).sqrt(), n_points: n })
}

/// Central charge from the fitted slope, `c = 3k` (holomorphic and
/// antiholomorphic charges assumed equal).
pub fn central_charge(fit: &ScalingFit) -> f64 {
    3.0 * fit.k
}

/// Large-L entropy offset of an anisotropic critical curve relative to the
/// reference (`gamma = 1`) curve, evaluated at the largest common block
/// size. The expected value is `-(1/6) log2 gamma`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftEstimate {
    pub gamma: f64,
    pub shift: f64,
    pub expected: f64,
    pub at_l: usize,
}

pub fn anisotropy_shift(
    reference: &EntropyCurve,
    curves: &[(f64, EntropyCurve)],
) -> Result<Vec<ShiftEstimate>> {
    let mut out = Vec::with_capacity(curves.len());
    for (gamma, curve) in curves {
        if *gamma <= 0.0 || *gamma > 1.0 {
            return Err(Error::InvalidParameter(format!("gamma {gamma} outside (0, 1]")));
        }
        let at_l = reference.max_l().min(curve.max_l());
        let (Some(s_ref), Some(s_g)) = (reference.entropy_at(at_l), curve.entropy_at(at_l)) else {
            return Err(Error::InsufficientData(format!(
                "curves do not share block size {at_l}"
            )));
        };
        out.push(ShiftEstimate {
            gamma: *gamma,
            shift: s_ref - s_g,
            expected: -(1.0 / 6.0) * gamma.log2(),
            at_l,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(k: f64, a: f64, ls: &[usize]) -> EntropyCurve {
        let pts = ls.iter().map(|&l| (l, k * (l as f64).log2() + a)).collect();
        EntropyCurve::new(pts, CurveSource::Synthetic("log".into())).unwrap()
    }

    #[test]
    fn exact_log_curve_recovers_slope_and_intercept() {
        let ls: Vec<usize> = (4..=64).collect();
        let curve = synthetic(1.0 / 3.0, 1.0, &ls);
        let fit = fit_log_scaling(&curve, 4).unwrap();
        assert!((fit.k - 1.0 / 3.0).abs() < 1e-13);
        assert!((fit.a - 1.0).abs() < 1e-12);
        assert!(fit.stderr_k < 1e-12);
        assert!(fit.residual_rms < 1e-13);
    }

    #[test]
    fn central_charge_values() {
        let c = |k: f64| central_charge(&ScalingFit { k, a: 0.0, stderr_k: 0.0, residual_rms: 0.0, n_points: 4 });
        assert!((c(1.0 / 3.0) - 1.0).abs() < 1e-15);
        assert!((c(1.0 / 6.0) - 0.5).abs() < 1e-15);
        assert_eq!(c(0.0), 0.0);
    }

    #[test]
    fn too_few_points_is_an_error() {
        let curve = synthetic(0.5, 0.0, &[10, 20, 30]);
        assert!(matches!(fit_log_scaling(&curve, 1), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn shift_of_reference_against_itself_is_zero() {
        let ls: Vec<usize> = (4..=32).collect();
        let reference = synthetic(1.0 / 6.0, 0.7, &ls);
        let shifts = anisotropy_shift(&reference, &[(1.0, reference.clone())]).unwrap();
        assert_eq!(shifts.len(), 1);
        assert!(shifts[0].shift.abs() < 1e-14);
        assert!(shifts[0].expected.abs() < 1e-14);
    }
}
