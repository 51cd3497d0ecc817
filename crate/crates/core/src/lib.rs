//! Ground-state block entanglement entropy for spin chains.
//!
//! Two solvable families are covered:
//!
//! * the infinite XY chain, where the reduced state of a block of `L`
//!   contiguous spins is encoded in a `2L x 2L` Majorana correlation matrix
//!   whose canonical mode values give the entropy directly ([`xy`]), and
//! * finite XXZ rings, solved sector-by-sector through the Bethe Ansatz and
//!   through exact diagonalization ([`xxz`]).
//!
//! On top of the solvers, [`analysis`] provides scaling-law fits, saturation
//! detection, majorization orderings and the generic entropy property checks,
//! while [`spectrum`] classifies XY parameters into their critical regions.
//!
//! All solvers are pure functions of their inputs; parameter sweeps go
//! data-parallel through [`exec::ExecMode`] (rayon when the `parallel`
//! feature is enabled, the default).

pub mod analysis;
pub mod error;
pub mod exec;
pub mod lanczos;
pub mod quad;
pub mod skew;
pub mod spectrum;
pub mod xxz;
pub mod xy;

pub use error::{Error, Result};

/// Binary entropy in bits, `H2(x) = -x log2 x - (1-x) log2 (1-x)`.
///
/// The `x log x -> 0` limit is taken explicitly for arguments at or below
/// 1e-300 (and symmetrically near 1) so pure modes never produce NaN.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |t: f64| {
        if t <= 1e-300 {
            0.0
        } else {
            -t * t.log2()
        }
    };
    term(x) + term(1.0 - x)
}

/// Shannon entropy in bits of a probability list (entries outside (0,1] are
/// treated as carrying zero surprisal-weight).
pub fn shannon_entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .map(|&p| if p <= 1e-300 { 0.0 } else { -p * p.log2() })
        .sum()
}
