//! Ring eigenstates on a magnetization sector and their reduced blocks.

use super::basis::SectorBasis;
use crate::error::{Error, Result};
use crate::shannon_entropy_bits;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Normalized state over the `C(N, r)` configurations of `r` down spins.
#[derive(Debug, Clone)]
pub struct RingState {
    pub n: usize,
    pub r: usize,
    /// Amplitudes in sector-basis order (increasing bit-mask value).
    pub amplitudes: Vec<Complex64>,
    /// Energy including the field term.
    pub energy: f64,
}

impl RingState {
    pub fn new(n: usize, r: usize, mut amplitudes: Vec<Complex64>, energy: f64) -> Result<Self> {
        let basis = SectorBasis::new(n, r)?;
        if amplitudes.len() != basis.dim() {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector has length {}, sector needs {}",
                amplitudes.len(),
                basis.dim()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            if norm < 1e-12 {
                return Err(Error::InvalidParameter("state has vanishing norm".into()));
            }
            for a in &mut amplitudes {
                *a /= norm;
            }
        }
        Ok(Self { n, r, amplitudes, energy })
    }

    pub fn from_real(n: usize, r: usize, real: &[f64], energy: f64) -> Result<Self> {
        Self::new(n, r, real.iter().map(|&x| Complex64::new(x, 0.0)).collect(), energy)
    }

    /// Phase by which the amplitudes multiply when every down-spin position
    /// is shifted forward by one site: `a(n_1+1, ..) = phase * a(n_1, ..)`.
    /// Errors if the state is not translation invariant up to a global
    /// phase (tolerance 1e-8 on the residual norm).
    pub fn translation_phase(&self) -> Result<Complex64> {
        let basis = SectorBasis::new(self.n, self.r)?;
        let mut shifted = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (idx, &amp) in self.amplitudes.iter().enumerate() {
            let t = basis.index_of(basis.translate(basis.state(idx)));
            shifted[t] = amp;
        }
        // phase = <psi | T psi>; residual = || T psi - phase psi ||
        let phase: Complex64 = self
            .amplitudes
            .iter()
            .zip(&shifted)
            .map(|(a, s)| a.conj() * s)
            .sum();
        let mag = phase.norm();
        if (mag - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidParameter(format!(
                "state is not translation invariant: |<psi|T|psi>| = {mag}"
            )));
        }
        let phase = phase / mag;
        let mut residual = 0.0f64;
        for (a, s) in self.amplitudes.iter().zip(&shifted) {
            residual += (s - phase * a).norm_sqr();
        }
        if residual.sqrt() > 1e-8 {
            return Err(Error::InvalidParameter(format!(
                "state is not translation invariant: residual {}",
                residual.sqrt()
            )));
        }
        // <psi|T|psi> is the eigenvalue of the shift operator; the amplitude
        // recurrence runs the other way, hence the conjugate
        Ok(phase.conj())
    }
}

/// Reduced density matrix data of the contiguous block `[1..L]`.
#[derive(Debug, Clone)]
pub struct ReducedBlock {
    pub l: usize,
    /// Eigenvalues in decreasing order (the nonzero part of the spectrum).
    pub eigenvalues: Vec<f64>,
    /// Block entropy in bits.
    pub entropy: f64,
}

/// Partial trace over everything but the first `l` sites.
///
/// The spectrum is extracted from the Gram matrix on the smaller side of
/// the cut (block side for `l <= N/2`, environment side otherwise), which
/// caps dense work at `2^{min(l, N-l)}`; the guard rejects blocks beyond 16
/// sites either way.
pub fn reduce_block(state: &RingState, l: usize) -> Result<ReducedBlock> {
    let n = state.n;
    if l == 0 || l >= n {
        return Err(Error::InvalidParameter(format!("block length {l} outside 1..{n}")));
    }
    if l.min(n - l) > 16 {
        return Err(Error::BlockTooLarge(l));
    }
    let basis = SectorBasis::new(n, state.r)?;
    let block_side = l <= n - l;
    let side_bits = if block_side { l } else { n - l };
    let dim = 1usize << side_bits;

    // gram[a][b] = sum_env psi(a, env) conj(psi(b, env)) over the chosen side
    let mut gram = DMatrix::<Complex64>::zeros(dim, dim);
    // group amplitudes by the traced-out side
    let mut by_env: std::collections::HashMap<u32, Vec<(u32, Complex64)>> =
        std::collections::HashMap::new();
    for (idx, &amp) in state.amplitudes.iter().enumerate() {
        let mask = basis.state(idx);
        let block_bits = mask & ((1u32 << l) - 1);
        let env_bits = mask >> l;
        let (kept, traced) = if block_side { (block_bits, env_bits) } else { (env_bits, block_bits) };
        by_env.entry(traced).or_default().push((kept, amp));
    }
    for group in by_env.values() {
        for &(a, amp_a) in group {
            for &(b, amp_b) in group {
                gram[(a as usize, b as usize)] += amp_a * amp_b.conj();
            }
        }
    }

    let eig = gram.symmetric_eigen();
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().map(|&v| v.max(0.0)).collect();
    eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let total: f64 = eigenvalues.iter().sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "reduced spectrum sums to {total}, expected 1"
        )));
    }
    let entropy = shannon_entropy_bits(&eigenvalues);
    Ok(ReducedBlock { l, eigenvalues, entropy })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_state_has_zero_entropy() {
        // single configuration |down at site 0>
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[0] = Complex64::new(1.0, 0.0); // mask 0b0001
        let state = RingState::new(4, 1, amps, 0.0).unwrap();
        let rb = reduce_block(&state, 2).unwrap();
        assert!(rb.entropy.abs() < 1e-12);
        assert!((rb.eigenvalues[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_magnon_block_entropy() {
        // uniform one-magnon state on N = 4: rho_1 = diag(3/4, 1/4)
        let amps = vec![Complex64::new(0.5, 0.0); 4];
        let state = RingState::new(4, 1, amps, 0.0).unwrap();
        let rb = reduce_block(&state, 1).unwrap();
        let expected = -(0.75f64.log2() * 0.75 + 0.25f64.log2() * 0.25);
        assert!((rb.entropy - expected).abs() < 1e-12);
        // complementary block agrees
        let rb3 = reduce_block(&state, 3).unwrap();
        assert!((rb3.entropy - rb.entropy).abs() < 1e-12);
    }

    #[test]
    fn translation_phase_of_plane_wave() {
        // e^{i k n} magnon with k = pi/2 on N = 4: phase e^{i sum k} = e^{i pi/2}
        let k = std::f64::consts::PI / 2.0;
        let basis = SectorBasis::new(4, 1).unwrap();
        let amps: Vec<Complex64> = basis
            .states()
            .iter()
            .map(|&m| {
                let site = m.trailing_zeros() as f64;
                Complex64::from_polar(0.5, k * site)
            })
            .collect();
        let state = RingState::new(4, 1, amps, 0.0).unwrap();
        let phase = state.translation_phase().unwrap();
        assert!((phase - Complex64::from_polar(1.0, k)).norm() < 1e-12);
    }

    #[test]
    fn block_guard() {
        let amps = vec![Complex64::new(1.0, 0.0)];
        let state = RingState::new(4, 0, amps, 0.0).unwrap();
        assert!(matches!(reduce_block(&state, 4), Err(Error::InvalidParameter(_))));
    }
}
