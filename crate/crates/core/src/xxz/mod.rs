//! Finite XXZ rings: sector-resolved exact diagonalization, Bethe Ansatz
//! ground states, reduced blocks and level-crossing scans.
//!
//! The Hamiltonian is taken with the exchange normalization
//!
//! ```text
//! H = J sum_l (1/2)[sx_l sx_{l+1} + sy_l sy_{l+1} + Delta sz_l sz_{l+1}] - lambda sum_l sz_l
//! ```
//!
//! (periodic, `s` = Pauli matrices). The field sign is fixed so that a
//! growing `lambda > 0` drives the ground state towards the all-up
//! ferromagnet through the usual staircase of magnetization-sector level
//! crossings; the crossing fields for `N = 18`, `Delta = 1` land at
//! {0.24, 0.68, 1.05, 1.35, 1.59, 1.77, 1.89, 1.97, 2}. Within a sector the
//! field term is constant, so sector eigenvectors are field-independent and
//! sector energies are exactly linear in `lambda`.

pub mod basis;
pub mod bethe;
pub mod ed;
pub mod state;

pub use basis::SectorBasis;
pub use bethe::{bethe_state, ground_quantum_numbers, solve_bethe, BetheSolution};
pub use ed::{ed_ground_state, global_ground_state, level_crossings, sector_grounds, Crossing, SectorGround};
pub use state::{reduce_block, ReducedBlock, RingState};

use crate::error::{Error, Result};

/// XXZ ring parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzParams {
    delta: f64,
    lambda: f64,
    n: usize,
    j: f64,
}

impl XxzParams {
    pub fn new(delta: f64, lambda: f64, n: usize) -> Result<Self> {
        Self::with_coupling(delta, lambda, n, 1.0)
    }

    pub fn with_coupling(delta: f64, lambda: f64, n: usize, j: f64) -> Result<Self> {
        if !delta.is_finite() || !lambda.is_finite() || !j.is_finite() {
            return Err(Error::InvalidParameter("XXZ parameters must be finite".into()));
        }
        if n % 2 != 0 || n < 2 || n > 20 {
            return Err(Error::InvalidParameter(format!(
                "ring size must be even with 2 <= N <= 20, got {n}"
            )));
        }
        Ok(Self { delta, lambda, n, j })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn j(&self) -> f64 {
        self.j
    }

    /// Field contribution to the energy of a state with `r` down spins:
    /// `-lambda (N - 2r)`.
    pub fn field_energy(&self, r: usize) -> f64 {
        -self.lambda * (self.n as f64 - 2.0 * r as f64)
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        Self { lambda, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validate() {
        assert!(XxzParams::new(1.0, 0.0, 8).is_ok());
        assert!(XxzParams::new(1.0, 0.0, 7).is_err());
        assert!(XxzParams::new(1.0, 0.0, 22).is_err());
        assert!(XxzParams::new(f64::NAN, 0.0, 8).is_err());
    }
}
