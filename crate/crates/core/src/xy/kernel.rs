//! Ground-state correlation kernel `g_l` of the infinite XY chain.
//!
//! The kernel is the Fourier coefficient
//!
//! ```text
//! g_l = (1/2pi) Int_0^{2pi} dphi e^{-i l phi} q(phi),
//! q(phi) = (cos phi - lambda - i gamma sin phi) / |cos phi - lambda - i gamma sin phi|,
//! ```
//!
//! evaluated either by adaptive quadrature ([`compute_g_numeric`]) or, for
//! five special parameter families, by closed forms and series
//! ([`compute_g_analytic`]). The two ferromagnetic-type cases carry the
//! opposite global sign from the integral (the integrand tends to -1, not
//! +1, as lambda grows); a global kernel sign never affects mode values or
//! entropies, so both conventions are kept and comparisons align signs
//! first.

use super::XyParams;
use crate::error::{Error, Result};
use crate::quad;
use std::f64::consts::PI;

/// Which closed form of the kernel applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticCase {
    /// `lambda -> infinity` limit for any anisotropy: `g_l = delta_{l0}`.
    FerromagneticLimit,
    /// Ising chain (`gamma = 1`) in a field `|lambda| < 1`: double series in
    /// powers of lambda.
    IsingField,
    /// Ising chain at the critical field (`gamma = 1`, `lambda = 1`):
    /// `g_l = -1 / (pi (l + 1/2))`.
    IsingCritical,
    /// Isotropic chain (`gamma = 0`) in a field `|lambda| <= 1`:
    /// `g_l = (2 / l pi) sin(l phi_c)` with `phi_c = arccos lambda`.
    XxField,
    /// Critical field line (`lambda = 1`, `|gamma| <= 1`): two sine
    /// integrals over half a period.
    XyCritical,
    /// Zero field (`lambda = 0`, `gamma > 0`): odd-offset combination of the
    /// elliptic-type integrals `L_l`, summed as a series in
    /// `alpha = (1-gamma)/(1+gamma)`.
    XyZeroField,
}

impl AnalyticCase {
    pub fn name(&self) -> &'static str {
        match self {
            AnalyticCase::FerromagneticLimit => "ferromagnetic-limit",
            AnalyticCase::IsingField => "ising-field",
            AnalyticCase::IsingCritical => "ising-critical",
            AnalyticCase::XxField => "xx-field",
            AnalyticCase::XyCritical => "xy-critical",
            AnalyticCase::XyZeroField => "xy-zero-field",
        }
    }

    fn check(&self, p: &XyParams) -> Result<()> {
        let ok = match self {
            AnalyticCase::FerromagneticLimit => true, // the case itself is the limit flag
            AnalyticCase::IsingField => p.gamma() == 1.0 && p.lambda().abs() <= 1.0,
            AnalyticCase::IsingCritical => p.gamma() == 1.0 && p.lambda() == 1.0,
            AnalyticCase::XxField => p.gamma() == 0.0 && p.lambda().abs() <= 1.0,
            AnalyticCase::XyCritical => p.lambda() == 1.0,
            AnalyticCase::XyZeroField => p.lambda() == 0.0 && p.gamma() > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCase { case: self.name(), gamma: p.gamma(), lambda: p.lambda() })
        }
    }
}

const SERIES_EPS: f64 = 1e-14;
const SERIES_CAP: usize = 1_000_000;

/// `g_l` by adaptive quadrature of the defining integral; absolute error at
/// most `tol`. The imaginary part of the integral is evaluated as well and
/// must vanish below `tol`, otherwise the quadrature is deemed failed.
pub fn compute_g_numeric(params: &XyParams, l: i64, tol: f64) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("quadrature tol must be > 0".into()));
    }
    let gamma = params.gamma();
    let lambda = params.lambda();
    let lf = l as f64;

    // real and imaginary parts of e^{-il phi} q(phi)
    let re = move |phi: f64| {
        let a = phi.cos() - lambda;
        let b = gamma * phi.sin();
        let m = (a * a + b * b).sqrt();
        if m == 0.0 {
            return 0.0; // measure-zero point on the critical segment
        }
        ((lf * phi).cos() * a - (lf * phi).sin() * b) / m
    };
    let im = move |phi: f64| {
        let a = phi.cos() - lambda;
        let b = gamma * phi.sin();
        let m = (a * a + b * b).sqrt();
        if m == 0.0 {
            return 0.0;
        }
        (-(lf * phi).sin() * a - (lf * phi).cos() * b) / m
    };

    // the integrand sign jumps at arccos(lambda) when gamma = 0
    let mut splits = Vec::new();
    if gamma == 0.0 && lambda.abs() <= 1.0 {
        let phi_c = lambda.acos();
        splits.push(phi_c);
        splits.push(2.0 * PI - phi_c);
    }
    let min_panels = (l.unsigned_abs() as usize).max(8);
    let max_panels = 20_000 + 4 * min_panels;

    let quad_tol = tol * PI; // tolerance on the raw integral before the 1/2pi factor
    let real = quad::integrate(re, 0.0, 2.0 * PI, quad_tol, &splits, min_panels, max_panels)?;
    let imag = quad::integrate(im, 0.0, 2.0 * PI, quad_tol, &splits, min_panels, max_panels)?;
    let g = real.value / (2.0 * PI);
    let g_im = imag.value / (2.0 * PI);
    if g_im.abs() > tol {
        return Err(Error::QuadratureFailure { achieved: g_im.abs(), requested: tol });
    }
    Ok(g)
}

/// `g_l` by the applicable closed form. The case must match the parameters.
pub fn compute_g_analytic(params: &XyParams, l: i64, case: AnalyticCase) -> Result<f64> {
    case.check(params)?;
    match case {
        AnalyticCase::FerromagneticLimit => Ok(if l == 0 { 1.0 } else { 0.0 }),
        AnalyticCase::IsingCritical => Ok(-1.0 / (PI * (l as f64 + 0.5))),
        AnalyticCase::XxField => {
            let phi_c = params.lambda().acos();
            if l == 0 {
                Ok(2.0 * phi_c / PI - 1.0)
            } else {
                Ok(2.0 / (l as f64 * PI) * (l as f64 * phi_c).sin())
            }
        }
        AnalyticCase::IsingField => ising_field_series(params.lambda(), l),
        AnalyticCase::XyCritical => xy_critical_integrals(params.gamma(), l),
        AnalyticCase::XyZeroField => xy_zero_field(params.gamma(), l),
    }
}

/// Central binomial ratio `h_m = C(2m, m) / 4^m = (2m-1)!! / (2m)!!`,
/// advanced iteratively to avoid overflow.
struct CentralBinomial {
    m: usize,
    h: f64,
}

impl CentralBinomial {
    fn new() -> Self {
        Self { m: 0, h: 1.0 }
    }
    /// h_m for m >= current index; must be called with non-decreasing m.
    fn advance_to(&mut self, m: usize) -> f64 {
        while self.m < m {
            let k = self.m as f64;
            self.h *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
            self.m += 1;
        }
        self.h
    }
}

/// Ising chain in a field, `|lambda| < 1`. Expanding both square roots of
/// the integrand in powers of `lambda e^{+-i phi}` and collecting the
/// Fourier coefficient at `e^{il phi}` collapses the double sum to
///
/// ```text
/// g_l = Sum_{m >= max(0, l+1)} h_m h_{m-l-1} lambda^{2m-l-1}
///     - Sum_{m >= max(0, l)}   h_m h_{m-l}   lambda^{2m-l+1}.
/// ```
///
/// Terms are accumulated until they fall below 1e-14 (1e6-term cap). The
/// series degenerates to `g_l = delta_{l,-1}` at `lambda = 0` and diverges
/// too slowly to be useful at `|lambda| = 1`.
fn ising_field_series(lambda: f64, l: i64) -> Result<f64> {
    if lambda.abs() >= 1.0 {
        return Err(Error::SeriesDomain(format!(
            "ising-field series requires |lambda| < 1, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(if l == -1 { 1.0 } else { 0.0 });
    }
    let sum_from = |m0: i64, shift: i64, extra_power: i64| -> Result<f64> {
        // Sum_{m >= m0} h_m h_{m - shift} lambda^{2m - shift + extra_power}
        let mut total = 0.0;
        let mut hm = CentralBinomial::new();
        let mut hn = CentralBinomial::new();
        let mut m = m0.max(0).max(shift) as usize;
        // ensure n = m - shift >= 0
        let mut pow = lambda.powi((2 * m as i64 - shift + extra_power) as i32);
        let l2 = lambda * lambda;
        for _ in 0..SERIES_CAP {
            let n = (m as i64 - shift) as usize;
            let term = hm.advance_to(m) * hn.advance_to(n) * pow;
            total += term;
            if term.abs() < SERIES_EPS {
                return Ok(total);
            }
            m += 1;
            pow *= l2;
        }
        Err(Error::SeriesDomain(format!(
            "ising-field series did not reach 1e-14 within {SERIES_CAP} terms at lambda = {lambda}"
        )))
    };
    let first = sum_from(l + 1, l + 1, 0)?;
    let second = sum_from(l, l, 1)?;
    Ok(first - second)
}

/// Critical field line `lambda = 1`: two half-period sine integrals,
///
/// ```text
/// g_l = -((gamma+1)/2pi) I(l + 1/2) - ((gamma-1)/2pi) I(l - 1/2),
/// I(s) = Int_0^pi dphi sin(s phi) / sqrt(sin^2(phi/2) + gamma^2 cos^2(phi/2)).
/// ```
fn xy_critical_integrals(gamma: f64, l: i64) -> Result<f64> {
    let weight = move |phi: f64| {
        let s = (phi / 2.0).sin();
        let c = (phi / 2.0).cos();
        (s * s + gamma * gamma * c * c).sqrt()
    };
    let integral = |s: f64| -> Result<f64> {
        let f = move |phi: f64| (s * phi).sin() / weight(phi);
        // integrand has an integrable 1/sqrt feature only at gamma = 0 (excluded: XX case)
        let min_panels = (l.unsigned_abs() as usize).max(8);
        Ok(quad::integrate(f, 0.0, PI, 1e-12, &[], min_panels, 40_000)?.value)
    };
    if gamma == 0.0 {
        return Err(Error::InvalidCase { case: "xy-critical", gamma, lambda: 1.0 });
    }
    let i_plus = integral(l as f64 + 0.5)?;
    let i_minus = integral(l as f64 - 0.5)?;
    Ok(-(gamma + 1.0) / (2.0 * PI) * i_plus - (gamma - 1.0) / (2.0 * PI) * i_minus)
}

/// `L_{2s}(gamma)` as a series in `alpha = (1-gamma)/(1+gamma)`:
///
/// ```text
/// L_{2s} = (-1)^s (2/(1+gamma)) alpha^s Sum_{n>=0} h_n h_{n+s} alpha^{2n}.
/// ```
///
/// This is the expansion of `(2/pi) Int_0^{pi/2} cos(2s phi) /
/// sqrt(cos^2 phi + gamma^2 sin^2 phi)` obtained by factoring the weight as
/// `((1+gamma)/2)^2 |1 + alpha e^{2i phi}|^2` and expanding both inverse
/// square roots; the logarithmic terms that appear when the diagonal is
/// resummed cancel identically.
fn l_even_series(s: usize, gamma: f64) -> Result<f64> {
    if gamma <= 0.0 {
        return Err(Error::SeriesDomain(format!(
            "L_l series requires gamma > 0, got {gamma}"
        )));
    }
    let alpha = (1.0 - gamma) / (1.0 + gamma);
    let mut hn = CentralBinomial::new();
    let mut hns = CentralBinomial::new();
    let mut pow = alpha.powi(s as i32);
    let a2 = alpha * alpha;
    let mut total = 0.0;
    for n in 0..SERIES_CAP {
        let term = hn.advance_to(n) * hns.advance_to(n + s) * pow;
        total += term;
        if term.abs() < SERIES_EPS {
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            return Ok(sign * 2.0 / (1.0 + gamma) * total);
        }
        pow *= a2;
    }
    Err(Error::SeriesDomain(format!(
        "L_l series did not reach 1e-14 within {SERIES_CAP} terms at gamma = {gamma}"
    )))
}

/// Zero-field chain: `g_l = -((1+gamma)/2 L_{l+1} + (1-gamma)/2 L_{l-1})`
/// for odd `l`, zero for even `l` (`L` is even in its index).
fn xy_zero_field(gamma: f64, l: i64) -> Result<f64> {
    if l.rem_euclid(2) == 0 {
        return Ok(0.0);
    }
    let l_at = |idx: i64| l_even_series((idx.unsigned_abs() / 2) as usize, gamma);
    let lp = l_at(l + 1)?;
    let lm = l_at(l - 1)?;
    Ok(-((1.0 + gamma) / 2.0 * lp + (1.0 - gamma) / 2.0 * lm))
}

/// How to populate a [`CorrelationKernel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelChoice {
    /// Pick a closed form when one matches the parameters exactly, fall
    /// back to quadrature otherwise.
    Auto,
    /// Always quadrature.
    Numeric,
    /// Require a closed form; error if none applies.
    Analytic,
}

/// Real kernel coefficients `g_l` for offsets `-(L-1) ..= L-1`.
#[derive(Debug, Clone)]
pub struct CorrelationKernel {
    g: Vec<f64>,
    half: usize,
    method: String,
}

impl CorrelationKernel {
    /// Build a kernel covering all offsets needed for blocks up to `l_max`
    /// sites. `tol` is the quadrature tolerance for the numeric route.
    pub fn build(params: &XyParams, l_max: usize, choice: KernelChoice, tol: f64) -> Result<Self> {
        assert!(l_max >= 1);
        let half = l_max - 1;
        let gamma = params.gamma();
        let lambda = params.lambda();

        let analytic_case = if gamma == 0.0 && lambda.abs() <= 1.0 {
            Some(AnalyticCase::XxField)
        } else if gamma == 1.0 && lambda == 1.0 {
            Some(AnalyticCase::IsingCritical)
        } else if gamma == 1.0 && lambda.abs() < 1.0 {
            Some(AnalyticCase::IsingField)
        } else if lambda == 0.0 && gamma > 0.0 {
            Some(AnalyticCase::XyZeroField)
        } else if lambda == 1.0 {
            Some(AnalyticCase::XyCritical)
        } else {
            None
        };
        // fully polarized region: the integrand is identically -1
        let polarized = gamma == 0.0 && lambda > 1.0;

        let fill = |f: &dyn Fn(i64) -> Result<f64>| -> Result<Vec<f64>> {
            let mut g = Vec::with_capacity(2 * half + 1);
            for l in -(half as i64)..=(half as i64) {
                g.push(f(l)?);
            }
            Ok(g)
        };

        let (g, method) = match choice {
            KernelChoice::Numeric => {
                if polarized {
                    // reject arccos outside [-1, 1]; the product form is exact
                    (fill(&|l| Ok(if l == 0 { -1.0 } else { 0.0 }))?, "polarized-product".to_string())
                } else {
                    (fill(&|l| compute_g_numeric(params, l, tol))?, "numeric-quadrature".to_string())
                }
            }
            KernelChoice::Analytic => {
                if polarized {
                    (fill(&|l| Ok(if l == 0 { -1.0 } else { 0.0 }))?, "polarized-product".to_string())
                } else {
                    let case = analytic_case.ok_or(Error::InvalidCase {
                        case: "none-applicable",
                        gamma,
                        lambda,
                    })?;
                    (fill(&|l| compute_g_analytic(params, l, case))?, format!("analytic-{}", case.name()))
                }
            }
            KernelChoice::Auto => {
                if polarized {
                    (fill(&|l| Ok(if l == 0 { -1.0 } else { 0.0 }))?, "polarized-product".to_string())
                } else if let Some(case) = analytic_case {
                    (fill(&|l| compute_g_analytic(params, l, case))?, format!("analytic-{}", case.name()))
                } else {
                    (fill(&|l| compute_g_numeric(params, l, tol))?, "numeric-quadrature".to_string())
                }
            }
        };

        // |q| = 1 pointwise, so every Fourier coefficient is bounded by 1
        for (i, &v) in g.iter().enumerate() {
            if v.abs() > 1.0 + 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "kernel coefficient g[{}] = {} exceeds unit bound",
                    i as i64 - half as i64,
                    v
                )));
            }
        }

        Ok(Self { g, half, method })
    }

    /// Kernel holding explicit coefficients for offsets `-(len-1)/2 ..`.
    /// `g` must have odd length `2*half+1` centred on offset zero.
    pub fn from_coefficients(g: Vec<f64>, method: &str) -> Result<Self> {
        if g.len() % 2 != 1 {
            return Err(Error::InvalidParameter(
                "kernel coefficient list must have odd length (centred on offset 0)".into(),
            ));
        }
        let half = g.len() / 2;
        Ok(Self { g, half, method: method.to_string() })
    }

    pub fn g(&self, l: i64) -> Result<f64> {
        let idx = l + self.half as i64;
        if idx < 0 || idx as usize >= self.g.len() {
            return Err(Error::IncompleteKernel(l));
        }
        Ok(self.g[idx as usize])
    }

    /// Largest block size the kernel covers.
    pub fn l_max(&self) -> usize {
        self.half + 1
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    /// Kernel with every coefficient negated (entropy must be invariant).
    pub fn negated(&self) -> Self {
        Self {
            g: self.g.iter().map(|v| -v).collect(),
            half: self.half,
            method: format!("{}-negated", self.method),
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
    fn numeric_matches_xx_zero_field_closed_form() {
        // g_1 = 2/pi at gamma = 0, lambda = 0
        let g = compute_g_numeric(&p(0.0, 0.0), 1, 1e-10).unwrap();
        assert!((g - 2.0 / PI).abs() < 1e-9, "g = {g}");
    }

    #[test]
    fn numeric_matches_ising_critical_at_zero_offset() {
        let g = compute_g_numeric(&p(1.0, 1.0), 0, 1e-10).unwrap();
        assert!((g + 2.0 / PI).abs() < 1e-9, "g = {g}");
    }

    #[test]
    fn numeric_ising_zero_field_is_kronecker() {
        let g = compute_g_numeric(&p(1.0, 0.0), -1, 1e-10).unwrap();
        assert!((g - 1.0).abs() < 1e-9, "g = {g}");
        for l in [-3, -2, 0, 1, 2] {
            let g = compute_g_numeric(&p(1.0, 0.0), l, 1e-10).unwrap();
            assert!(g.abs() < 1e-9, "g_{l} = {g}");
        }
    }

    #[test]
    fn analytic_ferromagnetic_limit() {
        let params = p(1.0, 10.0);
        assert_eq!(compute_g_analytic(&params, 0, AnalyticCase::FerromagneticLimit).unwrap(), 1.0);
        assert_eq!(compute_g_analytic(&params, 2, AnalyticCase::FerromagneticLimit).unwrap(), 0.0);
    }

    #[test]
    fn analytic_xx_field_examples() {
        let g0 = compute_g_analytic(&p(0.0, 0.5), 0, AnalyticCase::XxField).unwrap();
        assert!((g0 - (2.0 * 0.5f64.acos() / PI - 1.0)).abs() < 1e-15);
        assert!((g0 + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn analytic_case_mismatch_is_rejected() {
        let err = compute_g_analytic(&p(0.5, 0.5), 0, AnalyticCase::IsingCritical).unwrap_err();
        assert!(matches!(err, Error::InvalidCase { .. }));
    }

    #[test]
    fn ising_field_series_limits() {
        // lambda = 0 degenerates to delta_{l,-1}
        assert_eq!(ising_field_series(0.0, -1).unwrap(), 1.0);
        assert_eq!(ising_field_series(0.0, 3).unwrap(), 0.0);
        // |lambda| >= 1 is out of the series domain
        assert!(matches!(ising_field_series(1.0, 0), Err(Error::SeriesDomain(_))));
    }

    #[test]
    fn ising_field_series_matches_quadrature() {
        let params = p(1.0, 0.6);
        for l in [-4i64, -1, 0, 1, 3] {
            let series = compute_g_analytic(&params, l, AnalyticCase::IsingField).unwrap();
            let numeric = compute_g_numeric(&params, l, 1e-11).unwrap();
            assert!((series - numeric).abs() < 1e-10, "l = {l}: {series} vs {numeric}");
        }
    }

    #[test]
    fn zero_field_series_consistency() {
        // gamma = 1 must reduce to the ising zero-field Kronecker form up to
        // a global sign: g_1 -> -L_2(1) = 0 and g_{-1} -> -L_0(1) = -1.
        let params = p(1.0, 0.0);
        let g1 = compute_g_analytic(&params, 1, AnalyticCase::XyZeroField).unwrap();
        let gm1 = compute_g_analytic(&params, -1, AnalyticCase::XyZeroField).unwrap();
        assert!(g1.abs() < 1e-14);
        assert!((gm1 + 1.0).abs() < 1e-14);
        // sign-aligned agreement with quadrature at gamma = 0.5
        let params = p(0.5, 0.0);
        for l in [-3i64, -1, 1, 5] {
            let series = compute_g_analytic(&params, l, AnalyticCase::XyZeroField).unwrap();
            let numeric = compute_g_numeric(&params, l, 1e-11).unwrap();
            assert!(
                (series + numeric).abs() < 1e-10,
                "l = {l}: series {series}, numeric {numeric} (expected opposite signs)"
            );
        }
        for l in [-2i64, 0, 4] {
            assert_eq!(compute_g_analytic(&params, l, AnalyticCase::XyZeroField).unwrap(), 0.0);
        }
    }

    #[test]
    fn xy_critical_reduces_to_ising_critical_at_gamma_one() {
        let params = p(1.0, 1.0);
        for l in [-2i64, 0, 3] {
            let a = compute_g_analytic(&params, l, AnalyticCase::XyCritical).unwrap();
            let b = compute_g_analytic(&params, l, AnalyticCase::IsingCritical).unwrap();
            assert!((a - b).abs() < 1e-11, "l = {l}: {a} vs {b}");
        }
    }

    #[test]
    fn kernel_polarized_region_routes_to_product_form() {
        let k = CorrelationKernel::build(&p(0.0, 2.5), 4, KernelChoice::Auto, 1e-10).unwrap();
        assert_eq!(k.method(), "polarized-product");
        assert_eq!(k.g(0).unwrap(), -1.0);
        assert_eq!(k.g(2).unwrap(), 0.0);
        assert!(k.g(7).is_err());
    }

    #[test]
    fn kernel_is_symmetric_for_gamma_zero() {
        let k = CorrelationKernel::build(&p(0.0, 0.3), 8, KernelChoice::Numeric, 1e-10).unwrap();
        for l in 1..8 {
            let d = (k.g(l).unwrap() - k.g(-l).unwrap()).abs();
            assert!(d < 1e-9, "g_{l} asymmetry {d}");
        }
    }
}
