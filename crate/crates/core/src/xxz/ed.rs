//! Sector-resolved exact diagonalization and level-crossing scans.

use super::basis::{binomial, ExchangeOperator, SectorBasis};
use super::state::RingState;
use super::XxzParams;
use crate::error::{Error, Result};
use crate::exec::{map_indexed, ExecMode};
use crate::lanczos;
use nalgebra::DMatrix;
use num_complex::Complex64;

const DEGENERACY_GAP: f64 = 1e-10;
const SECTOR_DIM_LIMIT: usize = 200_000;

/// Ground data of the exchange part of one magnetization sector. The field
/// only shifts sector energies by `-lambda (N - 2r)`, so everything here is
/// field-independent.
#[derive(Debug, Clone)]
pub struct SectorGround {
    pub r: usize,
    /// Ground energy of the exchange part alone.
    pub exchange_energy: f64,
    /// Gap to the first excited state of the sector.
    pub gap: f64,
    /// Quasi-degenerate sector resolved by the translation tie-break.
    pub degenerate: bool,
    /// Normalized ground amplitudes in sector-basis order.
    pub amplitudes: Vec<Complex64>,
}

/// Dense full-spectrum sector solve; test oracle for dimensions <= 4096.
pub fn dense_sector_ground(n: usize, r: usize, delta: f64, j: f64) -> Result<SectorGround> {
    let basis = SectorBasis::new(n, r)?;
    let dim = basis.dim();
    if dim > 4096 {
        return Err(Error::InvalidParameter(format!(
            "dense sector solve limited to 4096 states, got {dim}"
        )));
    }
    let op = ExchangeOperator::build(&basis, delta, j);
    let mut a = DMatrix::<f64>::zeros(dim, dim);
    let mut e = vec![0.0; dim];
    let mut col = vec![0.0; dim];
    for jcol in 0..dim {
        e[jcol] = 1.0;
        op.apply(&e, &mut col);
        e[jcol] = 0.0;
        for i in 0..dim {
            a[(i, jcol)] = col[i];
        }
    }
    let eig = a.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &k| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[k]).unwrap());
    let e0 = eig.eigenvalues[order[0]];
    let (gap, pair) = if dim > 1 {
        let e1 = eig.eigenvalues[order[1]];
        let v0: Vec<f64> = eig.eigenvectors.column(order[0]).iter().copied().collect();
        let v1: Vec<f64> = eig.eigenvectors.column(order[1]).iter().copied().collect();
        (e1 - e0, Some((v0, v1)))
    } else {
        (f64::INFINITY, None)
    };
    finish_sector(basis, r, e0, gap, pair)
}

/// Iterative sector solve (the production path).
pub fn sector_ground(n: usize, r: usize, delta: f64, j: f64) -> Result<SectorGround> {
    let basis = SectorBasis::new(n, r)?;
    let dim = basis.dim();
    if dim > SECTOR_DIM_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "sector dimension {dim} exceeds the {SECTOR_DIM_LIMIT} limit"
        )));
    }
    let op = ExchangeOperator::build(&basis, delta, j);
    if dim == 1 {
        let mut out = vec![0.0];
        op.apply(&[1.0], &mut out);
        return finish_sector(basis, r, out[0], f64::INFINITY, None);
    }
    let res = lanczos::lowest_eigenpairs(dim, 2, |x, y| op.apply(x, y), 1e-12, 400)?;
    let gap = res.eigenvalues[1] - res.eigenvalues[0];
    let pair = Some((res.eigenvectors[0].clone(), res.eigenvectors[1].clone()));
    finish_sector(basis, r, res.eigenvalues[0], gap, pair)
}

fn finish_sector(
    basis: SectorBasis,
    r: usize,
    e0: f64,
    gap: f64,
    vectors: Option<(Vec<f64>, Vec<f64>)>,
) -> Result<SectorGround> {
    let degenerate = gap < DEGENERACY_GAP;
    let amplitudes = match vectors {
        None => vec![Complex64::new(1.0, 0.0); 1],
        Some((v0, v1)) => {
            if degenerate {
                momentum_tiebreak(&basis, &v0, &v1)?
            } else {
                v0.iter().map(|&x| Complex64::new(x, 0.0)).collect()
            }
        }
    };
    Ok(SectorGround { r, exchange_energy: e0, gap, degenerate, amplitudes })
}

/// Within a quasi-degenerate two-dimensional ground space, return the
/// translation eigenstate whose momentum phase is closest to zero (the
/// lowest translation quantum number). Both members are eigenstates to the
/// accuracy of the splitting, so the choice is a deterministic labeling,
/// never an average.
fn momentum_tiebreak(basis: &SectorBasis, v0: &[f64], v1: &[f64]) -> Result<Vec<Complex64>> {
    let translate = |v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (idx, &amp) in v.iter().enumerate() {
            out[basis.index_of(basis.translate(basis.state(idx)))] = amp;
        }
        out
    };
    let dot = |a: &[f64], b: &[f64]| -> f64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let tv0 = translate(v0);
    let tv1 = translate(v1);
    // m = [[<v0,Tv0>, <v0,Tv1>], [<v1,Tv0>, <v1,Tv1>]], unitary on the span
    let (a, b, c, d) = (dot(v0, &tv0), dot(v0, &tv1), dot(v1, &tv0), dot(v1, &tv1));
    let tr = Complex64::new(a + d, 0.0);
    let det = Complex64::new(a * d - b * c, 0.0);
    let disc = (tr * tr - 4.0 * det).sqrt();
    let mu1 = (tr + disc) / 2.0;
    let mu2 = (tr - disc) / 2.0;
    let pick = |mu: Complex64| -> (f64, Complex64, Complex64) {
        // eigenvector (alpha, beta) of the 2x2 in the (v0, v1) basis
        let (alpha, beta) = if b.abs() > 1e-14 {
            (Complex64::new(b, 0.0), mu - a)
        } else if c.abs() > 1e-14 {
            (mu - d, Complex64::new(c, 0.0))
        } else if (mu - a).norm() < (mu - d).norm() {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        };
        (mu.arg().abs(), alpha, beta)
    };
    let cand1 = pick(mu1);
    let cand2 = pick(mu2);
    let chosen = if cand1.0 < cand2.0 - 1e-12 {
        cand1
    } else if cand2.0 < cand1.0 - 1e-12 {
        cand2
    } else {
        // conjugate momentum pair: take the non-negative branch
        if mu1.arg() >= 0.0 {
            cand1
        } else {
            cand2
        }
    };
    let (_, alpha, beta) = chosen;
    let mut out: Vec<Complex64> = v0
        .iter()
        .zip(v1)
        .map(|(&x, &y)| alpha * x + beta * y)
        .collect();
    let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::EigenFailure("degenerate tie-break produced a null vector".into()));
    }
    for z in &mut out {
        *z /= norm;
    }
    Ok(out)
}

/// Ground state of one sector including the field energy.
pub fn ed_ground_state(params: &XxzParams, r: usize) -> Result<RingState> {
    if binomial(params.n(), r) > SECTOR_DIM_LIMIT {
        return Err(Error::InvalidParameter("sector too large".into()));
    }
    let ground = sector_ground(params.n(), r, params.delta(), params.j())?;
    RingState::new(
        params.n(),
        r,
        ground.amplitudes,
        ground.exchange_energy + params.field_energy(r),
    )
}

/// Exchange-part grounds of all sectors `r = 0 ..= N/2`, solved in parallel.
pub fn sector_grounds(params: &XxzParams, mode: ExecMode) -> Result<Vec<SectorGround>> {
    let rs: Vec<usize> = (0..=params.n() / 2).collect();
    let n = params.n();
    let delta = params.delta();
    let j = params.j();
    let results = map_indexed(mode, rs, move |r| sector_ground(n, r, delta, j));
    results.into_iter().collect()
}

/// Outcome of the sector sweep: the winning sector and, at a level
/// crossing, the tied partner.
#[derive(Debug, Clone)]
pub struct GlobalGround {
    pub state: RingState,
    pub r_star: usize,
    /// Secondary sector within 1e-10 of the winner, if any.
    pub tied_with: Option<usize>,
}

/// Minimize sector ground energies over `r in [0, N/2]`.
pub fn global_ground_state(params: &XxzParams, mode: ExecMode) -> Result<GlobalGround> {
    let grounds = sector_grounds(params, mode)?;
    let energy = |g: &SectorGround| g.exchange_energy + params.field_energy(g.r);
    let mut best = 0usize;
    for (i, g) in grounds.iter().enumerate() {
        if energy(g) < energy(&grounds[best]) {
            best = i;
        }
    }
    let mut tied_with = None;
    for (i, g) in grounds.iter().enumerate() {
        if i != best && (energy(g) - energy(&grounds[best])).abs() < DEGENERACY_GAP {
            tied_with = Some(g.r);
        }
    }
    let g = &grounds[best];
    let state = RingState::new(params.n(), g.r, g.amplitudes.clone(), energy(g))?;
    Ok(GlobalGround { state, r_star: g.r, tied_with })
}

/// A level crossing: the field where the winning sector changes.
#[derive(Debug, Clone, Copy)]
pub struct Crossing {
    pub lambda: f64,
    pub r_from: usize,
    pub r_to: usize,
}

/// Fields where the ground-state sector changes, for `lambda >= 0`.
///
/// Sector energies are exactly linear in the field,
/// `E_r(lambda) = E_r^ex - lambda (N - 2r)`, so the crossings are the
/// breakpoints of the lower envelope of `N/2 + 1` straight lines and are
/// found as exact line intersections (well below any requested
/// `resolution`); `resolution` only sets the slack used to break
/// simultaneous-crossing ties.
pub fn level_crossings(
    n: usize,
    delta: f64,
    j: f64,
    resolution: f64,
    mode: ExecMode,
) -> Result<Vec<Crossing>> {
    if resolution <= 0.0 {
        return Err(Error::InvalidParameter("resolution must be positive".into()));
    }
    let params = XxzParams::with_coupling(delta, 0.0, n, j)?;
    let grounds = sector_grounds(&params, mode)?;
    let e: Vec<f64> = grounds.iter().map(|g| g.exchange_energy).collect();

    // winner at lambda = 0+: the lowest line, ties broken towards the
    // steeper-sloped (smaller-r) member, which dominates for lambda > 0
    let emin = e.iter().copied().fold(f64::INFINITY, f64::min);
    let mut current = (0..e.len())
        .find(|&r| e[r] <= emin + 1e-12)
        .expect("sector list is never empty");

    let mut crossings = Vec::new();
    let mut lambda_now = 0.0f64;
    while current > 0 {
        // first future intersection with any steeper line
        let mut best: Option<(f64, usize)> = None;
        for target in 0..current {
            let lam = (e[current] - e[target]) / (2.0 * (target as f64 - current as f64));
            if lam < lambda_now - resolution * 1e-6 {
                continue;
            }
            match best {
                None => best = Some((lam, target)),
                Some((lb, tb)) => {
                    if lam < lb - resolution * 1e-6 || ((lam - lb).abs() <= resolution * 1e-6 && target < tb) {
                        best = Some((lam, target));
                    }
                }
            }
        }
        let Some((lam, target)) = best else { break };
        crossings.push(Crossing { lambda: lam, r_from: current, r_to: target });
        lambda_now = lam;
        current = target;
    }
    Ok(crossings)
}
