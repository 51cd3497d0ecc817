//! Error type shared by all solvers.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("quadrature failed to converge: achieved error {achieved:.3e} > requested {requested:.3e}")]
    QuadratureFailure { achieved: f64, requested: f64 },

    #[error("analytic case {case} is inconsistent with gamma={gamma}, lambda={lambda}")]
    InvalidCase {
        case: &'static str,
        gamma: f64,
        lambda: f64,
    },

    #[error("series outside its convergence domain: {0}")]
    SeriesDomain(String),

    #[error("correlation kernel does not cover offset {0}")]
    IncompleteKernel(i64),

    #[error("singular values of the correlation matrix fail to pair: mismatch {mismatch:.3e} > 1e-8")]
    NumericalDegeneracy { mismatch: f64 },

    #[error("mode value {nu} exceeds the [0, 1+1e-9] clamp window")]
    ModeOutOfRange { nu: f64 },

    #[error("spectrum covers cumulative weight {achieved:.12} < required {required:.12}; need more eigenvalues")]
    NeedMoreEigenvalues { achieved: f64, required: f64 },

    #[error("degenerate ground state: E0 = {e0:.12}, E1 = {e1:.12} (gap below 1e-10)")]
    DegenerateGroundState { e0: f64, e1: f64 },

    #[error("cross-method oracle mismatch: |deviation| = {deviation:.3e} > {allowed:.1e}")]
    OracleMismatch { deviation: f64, allowed: f64 },

    #[error("Bethe solver did not converge: best residual {residual:.3e} > tol {tol:.3e}")]
    SolverFailure { residual: f64, tol: f64 },

    #[error("coincident Bethe momenta k[{i}] and k[{j}] (|k_i - k_j| < 1e-8)")]
    InvalidRoot { i: usize, j: usize },

    #[error("r = {0} magnons exceed the r! amplitude-sum limit of 7; use the ED path")]
    UseEdPath(usize),

    #[error("partial trace over a block of {0} sites exceeds the L = 16 memory guard")]
    BlockTooLarge(usize),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver failure: {0}")]
    EigenFailure(String),
}
