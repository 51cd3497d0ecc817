//! Generic entropy property checks: monotonicity, concavity, symmetry,
//! the linear bound, and GHZ reference values.

use super::fit::{CurveSource, EntropyCurve};
use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub struct CheckOutcome {
    pub pass: bool,
    /// Worst signed violation (positive means the property failed by this much).
    pub worst_violation: f64,
    /// Block size at the worst violation, when any.
    pub at_l: Option<usize>,
}

impl CheckOutcome {
    fn clean() -> Self {
        Self { pass: true, worst_violation: 0.0, at_l: None }
    }

    fn observe(&mut self, violation: f64, l: usize, tol: f64) {
        if violation > self.worst_violation {
            self.worst_violation = violation;
            self.at_l = Some(l);
        }
        if violation > tol {
            self.pass = false;
        }
    }
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    /// `S_L` non-decreasing for `L <= N/2` (all `L` on an infinite chain).
    pub monotone: CheckOutcome,
    /// `S_{L+M} + S_{L-M} <= 2 S_L` wherever all three points exist.
    pub concave: CheckOutcome,
    /// `S_L = S_{N-L}`; only for finite rings with both points present.
    pub symmetric: Option<CheckOutcome>,
    /// `S_L <= min(L, N-L)` (or `S_L <= L` on an infinite chain).
    pub bound: CheckOutcome,
    pub pass: bool,
}

/// Run every applicable property check on a curve. `ring_size` activates
/// the finite-ring symmetry and tightens the bound and the monotonicity
/// window; `tol` is the numerical slack (1e-9 for solver-produced curves).
pub fn entropy_property_suite(
    curve: &EntropyCurve,
    ring_size: Option<usize>,
    tol: f64,
) -> PropertyReport {
    let pts = curve.points();
    let mut monotone = CheckOutcome::clean();
    let half = ring_size.map(|n| n / 2).unwrap_or(usize::MAX);
    for w in pts.windows(2) {
        let ((l1, s1), (l2, s2)) = (w[0], w[1]);
        if l2 <= half {
            monotone.observe(s1 - s2, l2, tol);
        }
        let _ = l1;
    }

    let mut concave = CheckOutcome::clean();
    for &(l, s_l) in pts {
        for m in 1..=l {
            let (Some(s_plus), Some(s_minus)) = (curve.entropy_at(l + m), minus_point(curve, l, m))
            else {
                continue;
            };
            concave.observe(s_plus + s_minus - 2.0 * s_l, l, tol);
        }
    }

    let symmetric = ring_size.map(|n| {
        let mut sym = CheckOutcome::clean();
        for &(l, s_l) in pts {
            if l < n {
                if let Some(s_c) = curve.entropy_at(n - l) {
                    sym.observe((s_l - s_c).abs(), l, tol);
                }
            }
        }
        sym
    });

    let mut bound = CheckOutcome::clean();
    for &(l, s_l) in pts {
        let cap = ring_size.map(|n| l.min(n - l)).unwrap_or(l) as f64;
        bound.observe(s_l - cap, l, tol);
    }

    let pass =
        monotone.pass && concave.pass && bound.pass && symmetric.map(|s| s.pass).unwrap_or(true);
    PropertyReport { monotone, concave, symmetric, bound, pass }
}

fn minus_point(curve: &EntropyCurve, l: usize, m: usize) -> Option<f64> {
    if m == l {
        Some(0.0) // S_0 = 0 by convention
    } else {
        curve.entropy_at(l - m)
    }
}

/// Reference curve of the N-spin GHZ state: `S_L = 1` for `1 <= L <= N-1`.
pub fn ghz_curve(n: usize) -> Result<EntropyCurve> {
    EntropyCurve::new(
        (1..n).map(|l| (l, 1.0)).collect(),
        CurveSource::Synthetic(format!("ghz-{n}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghz_reference_passes_all_checks() {
        let curve = ghz_curve(26).unwrap();
        let report = entropy_property_suite(&curve, Some(26), 1e-12);
        assert!(report.pass);
        assert!(report.symmetric.unwrap().pass);
        for &(l, s) in curve.points() {
            assert_eq!(s, 1.0, "L = {l}");
        }
    }

    #[test]
    fn fabricated_non_concave_curve_is_caught() {
        // convex kink at L = 2
        let pts = vec![(1, 0.0), (2, 0.1), (3, 0.6)];
        let curve = EntropyCurve::new(pts, CurveSource::Synthetic("bad".into())).unwrap();
        let report = entropy_property_suite(&curve, None, 1e-9);
        assert!(!report.concave.pass);
        assert!(report.concave.worst_violation > 0.3);
    }

    #[test]
    fn monotonicity_violation_is_caught_in_half_window() {
        let pts = vec![(1, 0.5), (2, 0.4), (3, 0.45)];
        let curve = EntropyCurve::new(pts, CurveSource::Synthetic("bad".into())).unwrap();
        let report = entropy_property_suite(&curve, Some(8), 1e-9);
        assert!(!report.monotone.pass);
    }

    #[test]
    fn bound_respects_ring_complement() {
        // S_7 = 2 would violate min(L, N-L) = 1 for N = 8
        let pts = vec![(7, 2.0)];
        let curve = EntropyCurve::new(pts, CurveSource::Synthetic("bad".into())).unwrap();
        let report = entropy_property_suite(&curve, Some(8), 1e-9);
        assert!(!report.bound.pass);
        // but is fine on an infinite chain
        let report = entropy_property_suite(&curve, None, 1e-9);
        assert!(report.bound.pass);
    }
}
