//! Bethe Ansatz ground states of magnetization sectors.
//!
//! For `r` down spins the momenta `k_i` and two-magnon phases `theta_ij`
//! satisfy
//!
//! ```text
//! theta_ij = -theta_ji,
//! cot(theta_ij / 2) = Delta sin((k_i - k_j)/2)
//!                     / [cos((k_i + k_j)/2) - Delta cos((k_i - k_j)/2)],
//! N k_i = 2 pi lambda_i + Sum_{j != i} theta_ij,
//! ```
//!
//! (at `Delta = 1` the phase relation is equivalent to the classic
//! `2 cot(theta_ij/2) = cot(k_i/2) - cot(k_j/2)`, which pins the relative
//! sign in the denominator; the exactly solvable N = 4 half-filled ground
//! state `k = {2pi/3, 4pi/3}`, `theta_12 = 2pi/3` satisfies this form).
//!
//! with the ground-sector quantum numbers `lambda_i = N/2 - r - 1 + 2i`.
//! The equations are solved by a damped Newton iteration on the momenta
//! with the phases eliminated through the cotangent relation at every step,
//! starting from the free-magnon momenta `k_i = 2 pi lambda_i / N`; damped
//! fixed-point sweeps serve as a fallback on stall. Phase branches start at
//! the principal value in `(-pi, pi]` and are continuity-tracked along the
//! iteration path.

use super::basis::SectorBasis;
use super::state::RingState;
use super::XxzParams;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct BetheSolution {
    pub r: usize,
    pub quantum_numbers: Vec<i64>,
    pub momenta: Vec<f64>,
    /// Upper-triangle phases `theta_ij` for `i < j`; the full array is
    /// antisymmetric by construction.
    phases: Vec<f64>,
    /// `E - E_F` with the ferromagnet at zero field as reference, in
    /// exchange units where one magnon contributes `-J (Delta - cos k)`:
    /// `energy = -J Sum_i (Delta - cos k_i) - lambda S^z_T`.
    pub energy: f64,
    /// The zero-field part `-J Sum_i (Delta - cos k_i)` alone.
    pub magnon_energy: f64,
    /// Largest violation of the momentum equations at the solution.
    pub residual: f64,
}

impl BetheSolution {
    /// Antisymmetric phase `theta_ij` (exactly `-theta_ji`).
    pub fn theta(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        sign * self.phases[upper_index(a, b, self.r)]
    }

    /// Absolute ring energy in the Hamiltonian normalization of this crate,
    /// `E_abs = J N Delta / 2 + 2 (E - E_F)`.
    pub fn absolute_energy(&self, params: &XxzParams) -> f64 {
        params.j() * params.n() as f64 * params.delta() / 2.0 + 2.0 * self.energy
    }
}

fn upper_index(i: usize, j: usize, r: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * r - i * (i + 1) / 2 + (j - i - 1)
}

/// Ground-sector Bethe quantum numbers `lambda_i = N/2 - r - 1 + 2i`.
pub fn ground_quantum_numbers(n: usize, r: usize) -> Vec<i64> {
    (1..=r as i64).map(|i| n as i64 / 2 - r as i64 - 1 + 2 * i).collect()
}

/// Principal-branch phase for the pair `(k_i, k_j)`.
///
/// `cot(theta/2) = num/den` fixes `theta` modulo `2 pi`; the value in
/// `(-pi, pi)` is `2 atan(den/num)`, with `theta = pi` at `num = 0` (the
/// free-fermion point `Delta = 0` sits there for every pair).
fn principal_theta(delta: f64, ki: f64, kj: f64) -> f64 {
    let num = delta * ((ki - kj) / 2.0).sin();
    let den = ((ki + kj) / 2.0).cos() - delta * ((ki - kj) / 2.0).cos();
    if num == 0.0 {
        PI
    } else {
        2.0 * (den / num).atan()
    }
}

/// d theta / d k_i and d theta / d k_j at fixed branch.
fn theta_derivatives(delta: f64, ki: f64, kj: f64) -> (f64, f64) {
    let half_diff = (ki - kj) / 2.0;
    let half_sum = (ki + kj) / 2.0;
    let num = delta * half_diff.sin();
    let den = half_sum.cos() - delta * half_diff.cos();
    let denom2 = num * num + den * den;
    if denom2 < 1e-300 {
        return (0.0, 0.0);
    }
    // cot(theta/2) = num/den: d theta = 2 (num dDen - den dNum) / (num^2 + den^2)
    let dnum_di = delta * half_diff.cos() / 2.0;
    let dden_di = -half_sum.sin() / 2.0 + delta * half_diff.sin() / 2.0;
    let dnum_dj = -dnum_di;
    let dden_dj = -half_sum.sin() / 2.0 - delta * half_diff.sin() / 2.0;
    let di = 2.0 * (num * dden_di - den * dnum_di) / denom2;
    let dj = 2.0 * (num * dden_dj - den * dnum_dj) / denom2;
    (di, dj)
}

/// Track the branch: shift by multiples of 2 pi to stay close to `previous`.
fn unwrap_near(theta: f64, previous: f64) -> f64 {
    let mut t = theta;
    while t - previous > PI {
        t -= 2.0 * PI;
    }
    while t - previous < -PI {
        t += 2.0 * PI;
    }
    t
}

struct PhaseState {
    r: usize,
    theta: Vec<f64>, // upper triangle
}

impl PhaseState {
    fn new(delta: f64, k: &[f64]) -> Self {
        let r = k.len();
        let mut theta = Vec::with_capacity(r * (r - 1) / 2);
        for i in 0..r {
            for j in (i + 1)..r {
                theta.push(principal_theta(delta, k[i], k[j]));
            }
        }
        Self { r, theta }
    }

    fn update(&mut self, delta: f64, k: &[f64]) {
        let mut idx = 0;
        for i in 0..self.r {
            for j in (i + 1)..self.r {
                let principal = principal_theta(delta, k[i], k[j]);
                self.theta[idx] = unwrap_near(principal, self.theta[idx]);
                idx += 1;
            }
        }
    }

    fn theta(&self, i: usize, j: usize) -> f64 {
        if i == j {
            0.0
        } else if i < j {
            self.theta[upper_index(i, j, self.r)]
        } else {
            -self.theta[upper_index(j, i, self.r)]
        }
    }
}

/// Residuals `F_i = N k_i - 2 pi lambda_i - Sum_j theta_ij`.
fn residuals(n: usize, qn: &[i64], k: &[f64], phases: &PhaseState) -> Vec<f64> {
    let r = k.len();
    (0..r)
        .map(|i| {
            let mut sum = 0.0;
            for j in 0..r {
                if j != i {
                    sum += phases.theta(i, j);
                }
            }
            n as f64 * k[i] - 2.0 * PI * qn[i] as f64 - sum
        })
        .collect()
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Solve the ground-sector Bethe equations for `r` down spins.
pub fn solve_bethe(params: &XxzParams, r: usize, tol: f64) -> Result<BetheSolution> {
    let n = params.n();
    if r > n / 2 {
        return Err(Error::InvalidParameter(format!("r = {r} exceeds N/2 = {}", n / 2)));
    }
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let qn = ground_quantum_numbers(n, r);
    if r == 0 {
        return Ok(BetheSolution {
            r,
            quantum_numbers: qn,
            momenta: vec![],
            phases: vec![],
            energy: -params.lambda() * (n as f64 / 2.0),
            magnon_energy: 0.0,
            residual: 0.0,
        });
    }

    let delta = params.delta();
    let mut k: Vec<f64> = qn.iter().map(|&q| 2.0 * PI * q as f64 / n as f64).collect();
    let mut phases = PhaseState::new(delta, &k);
    let mut f = residuals(n, &qn, &k, &phases);
    let mut best_residual = inf_norm(&f);

    let max_newton = 120;
    for _ in 0..max_newton {
        if inf_norm(&f) <= tol {
            break;
        }
        // Jacobian: J_ii = N - Sum_j dtheta_ij/dk_i, J_ij = -dtheta_ij/dk_j
        let mut jac = DMatrix::<f64>::zeros(r, r);
        for i in 0..r {
            jac[(i, i)] = n as f64;
            for j in 0..r {
                if j == i {
                    continue;
                }
                let (di, dj) = if i < j {
                    theta_derivatives(delta, k[i], k[j])
                } else {
                    let (dj_ji, di_ji) = theta_derivatives(delta, k[j], k[i]);
                    (-di_ji, -dj_ji)
                };
                jac[(i, i)] -= di;
                jac[(i, j)] -= dj;
            }
        }
        let rhs = DVector::from_column_slice(&f);
        let Some(step) = jac.lu().solve(&rhs) else {
            break; // singular Jacobian: fall through to fixed point
        };
        // backtracking damping on the residual norm
        let mut improved = false;
        let mut alpha = 1.0;
        for _try in 0..8 {
            let trial: Vec<f64> = k.iter().zip(step.iter()).map(|(ki, s)| ki - alpha * s).collect();
            let mut trial_phases = PhaseState { r, theta: phases.theta.clone() };
            trial_phases.update(delta, &trial);
            let trial_f = residuals(n, &qn, &trial, &trial_phases);
            if inf_norm(&trial_f) < inf_norm(&f) {
                k = trial;
                phases = trial_phases;
                f = trial_f;
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        if !improved {
            break;
        }
        best_residual = best_residual.min(inf_norm(&f));
    }

    // fixed-point fallback: k_i <- (1-b) k_i + b (2 pi lambda_i + Sum theta)/N
    if inf_norm(&f) > tol {
        let beta = 0.35;
        for _ in 0..20_000 {
            let mut next = k.clone();
            for i in 0..r {
                let mut sum = 0.0;
                for j in 0..r {
                    if j != i {
                        sum += phases.theta(i, j);
                    }
                }
                let target = (2.0 * PI * qn[i] as f64 + sum) / n as f64;
                next[i] = (1.0 - beta) * k[i] + beta * target;
            }
            phases.update(delta, &next);
            k = next;
            f = residuals(n, &qn, &k, &phases);
            if inf_norm(&f) <= tol {
                break;
            }
        }
    }

    let residual = inf_norm(&f);
    if residual > tol {
        return Err(Error::SolverFailure { residual: residual.min(best_residual), tol });
    }
    for i in 0..r {
        for j in (i + 1)..r {
            if (k[i] - k[j]).abs() < 1e-8 {
                return Err(Error::InvalidRoot { i, j });
            }
        }
    }

    let magnon_energy: f64 = -params.j() * k.iter().map(|ki| delta - ki.cos()).sum::<f64>();
    let sz = n as f64 / 2.0 - r as f64;
    Ok(BetheSolution {
        r,
        quantum_numbers: qn,
        momenta: k,
        phases: phases.theta,
        energy: magnon_energy - params.lambda() * sz,
        magnon_energy,
        residual,
    })
}

/// Materialize the Bethe state
/// `a(n_1..n_r) = Sum_P exp(i Sum_j k_{Pj} n_j + (i/2) Sum_{i<j} theta_{Pi,Pj})`
/// over the sector basis. The `r!` permutation sum caps `r` at 7.
pub fn bethe_state(params: &XxzParams, solution: &BetheSolution) -> Result<RingState> {
    let r = solution.r;
    if r > 7 {
        return Err(Error::UseEdPath(r));
    }
    let n = params.n();
    let basis = SectorBasis::new(n, r)?;
    if r == 0 {
        return Ok(RingState::new(n, 0, vec![Complex64::new(1.0, 0.0)], solution.absolute_energy(params))?);
    }

    // permutations with their constant phase (1/2) Sum_{i<j} theta_{P(i), P(j)}
    let mut perms: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut indices: Vec<usize> = (0..r).collect();
    heap_permutations(&mut indices, &mut |perm| {
        let mut phase = 0.0;
        for i in 0..r {
            for j in (i + 1)..r {
                phase += solution.theta(perm[i], perm[j]);
            }
        }
        perms.push((perm.to_vec(), 0.5 * phase));
    });

    let mut amplitudes = Vec::with_capacity(basis.dim());
    for &mask in basis.states() {
        // 1-based positions of the down spins, ascending
        let mut positions = Vec::with_capacity(r);
        for site in 0..n {
            if mask >> site & 1 == 1 {
                positions.push((site + 1) as f64);
            }
        }
        let mut amp = Complex64::new(0.0, 0.0);
        for (perm, phase0) in &perms {
            let mut phase = *phase0;
            for (j, &pj) in perm.iter().enumerate() {
                phase += solution.momenta[pj] * positions[j];
            }
            amp += Complex64::from_polar(1.0, phase);
        }
        amplitudes.push(amp);
    }
    RingState::new(n, r, amplitudes, solution.absolute_energy(params))
}

fn heap_permutations<F: FnMut(&[usize])>(items: &mut [usize], visit: &mut F) {
    let n = items.len();
    if n <= 1 {
        visit(items);
        return;
    }
    // iterative Heap's algorithm
    let mut c = vec![0usize; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
