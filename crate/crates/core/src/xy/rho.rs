//! Block entropy and the spectrum of the block density matrix.
//!
//! The block density matrix factorizes over canonical modes, so each of its
//! `2^L` eigenvalues is a product `prod_m (1 + (-1)^{x_m} nu_m)/2` over a
//! bit string `x`. The exact top-K eigenvalues are found by best-first
//! search over bit flips ordered by log-probability loss — no `2^L`
//! enumeration.

use super::correlation::ModeSpectrum;
use crate::binary_entropy;
use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Block entropy in bits: sum of binary entropies of the `L` uncorrelated
/// modes, `S_L = Sum_l H2((1 + nu_l)/2)`.
pub fn block_entropy(modes: &ModeSpectrum) -> f64 {
    modes.nu().iter().map(|&nu| binary_entropy(0.5 * (1.0 + nu))).sum()
}

/// Top of the block density-matrix spectrum.
#[derive(Debug, Clone)]
pub struct BlockSpectrum {
    /// Block entropy in bits (of the full, untruncated spectrum).
    pub entropy: f64,
    /// The K largest eigenvalues, decreasing.
    pub top_eigenvalues: Vec<f64>,
    /// `1 - sum(top_eigenvalues)`, clamped at zero.
    pub truncation_weight: f64,
}

/// Subset of flipped modes, kept sorted; lexicographic order on the induced
/// bit string (mode 0 is the most significant position) breaks cost ties.
#[derive(Clone)]
struct Node {
    cost: f64,
    flips: Vec<u32>,
}

fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    // first differing flipped position: the set containing it has a 1 where
    // the other has 0, hence is lexicographically larger
    let mut ia = a.iter();
    let mut ib = b.iter();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater, // a flips an earlier bit
                Ordering::Greater => return Ordering::Less,
            },
        }
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; invert so the cheapest node pops first
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| lex_cmp(&other.flips, &self.flips))
    }
}

/// Exact top-`k` eigenvalues of the block density matrix.
///
/// Modes with `nu = 1` are pure; flipping one yields an exactly zero
/// eigenvalue, so they are excluded from the search and zeros are appended
/// when `k` exceeds the number of nonzero eigenvalues.
pub fn rho_top_spectrum(modes: &ModeSpectrum, k: usize) -> Result<BlockSpectrum> {
    let l = modes.len();
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if l < 64 && k > (1usize << l) {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the 2^{l} eigenvalues of the block"
        )));
    }

    // flip costs in log space, only for modes with nu < 1
    let mut log_top = 0.0; // log of the largest eigenvalue
    let mut costs: Vec<f64> = Vec::new();
    for &nu in modes.nu() {
        let p_plus = 0.5 * (1.0 + nu);
        log_top += p_plus.ln();
        if nu < 1.0 {
            let p_minus = 0.5 * (1.0 - nu);
            costs.push(p_plus.ln() - p_minus.ln());
        }
    }
    // ascending cost; ties keep the original (decreasing-nu) mode order
    let mut order: Vec<u32> = (0..costs.len() as u32).collect();
    order.sort_by(|&a, &b| {
        costs[a as usize]
            .partial_cmp(&costs[b as usize])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    let sorted_costs: Vec<f64> = order.iter().map(|&i| costs[i as usize]).collect();
    let n_eff = sorted_costs.len();

    let mut eigenvalues = Vec::with_capacity(k);
    let mut heap: BinaryHeap<Node> = BinaryHeap::new();
    heap.push(Node { cost: 0.0, flips: Vec::new() });
    while eigenvalues.len() < k {
        let Some(node) = heap.pop() else { break };
        eigenvalues.push((log_top - node.cost).exp());
        // successors: extend by the next index after the current maximum, or
        // shift the current maximum one position up
        let last = node.flips.last().copied();
        let start = last.map_or(0, |m| m + 1);
        if (start as usize) < n_eff {
            let mut extended = node.flips.clone();
            extended.push(start);
            heap.push(Node { cost: node.cost + sorted_costs[start as usize], flips: extended });
            if let Some(m) = last {
                let mut shifted = node.flips.clone();
                *shifted.last_mut().unwrap() = m + 1;
                heap.push(Node {
                    cost: node.cost - sorted_costs[m as usize] + sorted_costs[m as usize + 1],
                    flips: shifted,
                });
            }
        }
    }
    // pure-mode flips: exactly zero eigenvalues rank last
    while eigenvalues.len() < k {
        eigenvalues.push(0.0);
    }

    let total: f64 = eigenvalues.iter().sum();
    Ok(BlockSpectrum {
        entropy: block_entropy(modes),
        top_eigenvalues: eigenvalues,
        truncation_weight: (1.0 - total).max(0.0),
    })
}

/// Smallest `n` such that the top `n` eigenvalues carry weight at least
/// `1 - epsilon`. The spectrum must already cover that much weight.
pub fn effective_rank(spectrum: &BlockSpectrum, epsilon: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!("epsilon must be in [0, 1), got {epsilon}")));
    }
    let required = 1.0 - epsilon;
    let mut cum = 0.0;
    for (i, &p) in spectrum.top_eigenvalues.iter().enumerate() {
        cum += p;
        if cum >= required {
            return Ok(i + 1);
        }
    }
    Err(Error::NeedMoreEigenvalues { achieved: cum, required })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modes(nu: &[f64]) -> ModeSpectrum {
        ModeSpectrum::from_values(nu.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(block_entropy(&modes(&[1.0, 1.0, 1.0])), 0.0);
        assert!((block_entropy(&modes(&[0.0])) - 1.0).abs() < 1e-15);
        assert!((block_entropy(&modes(&[1.0, 0.0])) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn top_spectrum_maximally_mixed() {
        let s = rho_top_spectrum(&modes(&[0.0, 0.0]), 4).unwrap();
        assert_eq!(s.top_eigenvalues, vec![0.25; 4]);
        assert!(s.truncation_weight < 1e-15);
    }

    #[test]
    fn top_spectrum_with_pure_mode() {
        let s = rho_top_spectrum(&modes(&[1.0, 0.0]), 4).unwrap();
        assert_eq!(s.top_eigenvalues, vec![0.5, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn top_spectrum_mixed_modes() {
        // nu = [0.6, 0.2]: products 0.8*0.6, 0.8*0.4, 0.2*0.6, 0.2*0.4
        let s = rho_top_spectrum(&modes(&[0.6, 0.2]), 2).unwrap();
        assert!((s.top_eigenvalues[0] - 0.48).abs() < 1e-15);
        assert!((s.top_eigenvalues[1] - 0.32).abs() < 1e-15);
        let s4 = rho_top_spectrum(&modes(&[0.6, 0.2]), 4).unwrap();
        assert!((s4.top_eigenvalues[2] - 0.12).abs() < 1e-15);
        assert!((s4.top_eigenvalues[3] - 0.08).abs() < 1e-15);
    }

    #[test]
    fn best_first_agrees_with_enumeration() {
        let nu = [0.93, 0.71, 0.55, 0.31, 0.17, 0.02];
        let m = modes(&nu);
        let mut all = Vec::new();
        for bits in 0u32..(1 << nu.len()) {
            let mut p = 1.0;
            for (i, &v) in m.nu().iter().enumerate() {
                p *= if bits >> i & 1 == 1 { 0.5 * (1.0 - v) } else { 0.5 * (1.0 + v) };
            }
            all.push(p);
        }
        all.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let s = rho_top_spectrum(&m, 20).unwrap();
        for (a, b) in s.top_eigenvalues.iter().zip(all.iter()) {
            assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        }
    }

    #[test]
    fn effective_rank_examples() {
        let spec = BlockSpectrum {
            entropy: 1.0,
            top_eigenvalues: vec![0.5, 0.5, 0.0, 0.0],
            truncation_weight: 0.0,
        };
        assert_eq!(effective_rank(&spec, 0.1).unwrap(), 2);
        assert_eq!(effective_rank(&spec, 0.6).unwrap(), 1);
        let pure = BlockSpectrum { entropy: 0.0, top_eigenvalues: vec![1.0], truncation_weight: 0.0 };
        assert_eq!(effective_rank(&pure, 0.0).unwrap(), 1);
    }

    #[test]
    fn effective_rank_insufficient_depth() {
        let spec = BlockSpectrum {
            entropy: 2.0,
            top_eigenvalues: vec![0.4, 0.3],
            truncation_weight: 0.3,
        };
        let err = effective_rank(&spec, 0.01).unwrap_err();
        assert!(matches!(err, Error::NeedMoreEigenvalues { .. }));
    }

    #[test]
    fn k_larger_than_dimension_rejected() {
        assert!(rho_top_spectrum(&modes(&[0.5]), 3).is_err());
    }
}
