//! `oracle-check`: cross-method consistency sweep with replay serialization
//! on failure.

use crate::csvio::fmt_f64;
use crate::{CliError, CommonOpts};
use blockent_core::xxz::{bethe_state, ed_ground_state, solve_bethe, XxzParams};
use blockent_core::xy::{finite_chain_oracle, XyParams};
use clap::Args;
use num_complex::Complex64;
use serde::Serialize;
use std::path::PathBuf;

const XY_TOL: f64 = 1e-8;
const XXZ_ENERGY_TOL: f64 = 1e-8;
const OVERLAP_TOL: f64 = 1e-6;

#[derive(Args, Debug, Clone)]
pub struct OracleCheckArgs {
    /// Run the XY grid (correlation route vs dense spin space) at this
    /// chain length (even, at most 14).
    #[arg(long)]
    pub xy: Option<usize>,
    /// Run the XXZ sector sweep (Bethe vs exact diagonalization) at this
    /// ring size (even, at most 12).
    #[arg(long)]
    pub xxz: Option<usize>,
    /// Replay file for failing cases.
    #[arg(long, default_value = "oracle-replay.json")]
    pub replay: PathBuf,
    /// Test hook: perturb one computed value to exercise the failure path.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Serialize)]
struct ReplayCase {
    check: String,
    parameters: serde_json::Value,
    measured: f64,
    reference: f64,
    deviation: f64,
    tolerance: f64,
}

pub fn run(args: &OracleCheckArgs) -> Result<(), CliError> {
    crate::init_pool(args.common.jobs);
    if args.xy.is_none() && args.xxz.is_none() {
        return Err(CliError::Usage("select at least one of --xy <N> or --xxz <N>".into()));
    }
    let mut failures: Vec<ReplayCase> = Vec::new();
    let mut fault_budget = if args.inject_fault { 1 } else { 0 };

    if let Some(n) = args.xy {
        if n % 2 != 0 || n > 14 {
            return Err(CliError::Usage(format!("--xy expects an even chain length <= 14, got {n}")));
        }
        let mut worst = 0.0f64;
        for gamma in [0.25, 0.5, 1.0] {
            for lambda in [0.5, 1.0, 1.5] {
                let params = XyParams::new(gamma, lambda)?;
                let outcome = finite_chain_oracle(&params, n, n / 2)?;
                let dense = outcome.dense.as_ref().expect("dense check runs for n <= 14");
                let mut measured = outcome.entropy;
                if fault_budget > 0 {
                    measured += 1e-3;
                    fault_budget -= 1;
                }
                let deviation = (measured - dense.entropy).abs();
                worst = worst.max(deviation);
                if deviation > XY_TOL {
                    failures.push(ReplayCase {
                        check: "xy-correlation-vs-dense-entropy".into(),
                        parameters: serde_json::json!({"gamma": gamma, "lambda": lambda, "n": n, "l": n / 2}),
                        measured,
                        reference: dense.entropy,
                        deviation,
                        tolerance: XY_TOL,
                    });
                }
            }
        }
        println!("xy grid (N = {n}): max |S_corr - S_dense| = {}", fmt_f64(worst));
    }

    if let Some(n) = args.xxz {
        if n % 2 != 0 || n > 12 {
            return Err(CliError::Usage(format!("--xxz expects an even ring size <= 12, got {n}")));
        }
        let mut worst_energy = 0.0f64;
        let mut worst_overlap = 1.0f64;
        for delta in [0.5, 1.0, 2.0] {
            for r in 1..=4.min(n / 2) {
                let params = XxzParams::new(delta, 0.0, n)?;
                let ba = solve_bethe(&params, r, 1e-11)?;
                let ed = ed_ground_state(&params, r)?;
                let mut e_ba = ba.absolute_energy(&params);
                if fault_budget > 0 {
                    e_ba += 1e-3;
                    fault_budget -= 1;
                }
                let deviation = (e_ba - ed.energy).abs();
                worst_energy = worst_energy.max(deviation);
                if deviation > XXZ_ENERGY_TOL {
                    failures.push(ReplayCase {
                        check: "xxz-bethe-vs-ed-energy".into(),
                        parameters: serde_json::json!({"delta": delta, "n": n, "r": r}),
                        measured: e_ba,
                        reference: ed.energy,
                        deviation,
                        tolerance: XXZ_ENERGY_TOL,
                    });
                }
                if r <= 7 {
                    let ba_state = bethe_state(&params, &ba)?;
                    let overlap: Complex64 = ba_state
                        .amplitudes
                        .iter()
                        .zip(&ed.amplitudes)
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    worst_overlap = worst_overlap.min(overlap.norm());
                    if overlap.norm() < 1.0 - OVERLAP_TOL {
                        failures.push(ReplayCase {
                            check: "xxz-bethe-vs-ed-overlap".into(),
                            parameters: serde_json::json!({"delta": delta, "n": n, "r": r}),
                            measured: overlap.norm(),
                            reference: 1.0,
                            deviation: 1.0 - overlap.norm(),
                            tolerance: OVERLAP_TOL,
                        });
                    }
                }
            }
        }
        println!("xxz sweep (N = {n}): max |E_BA - E_ED| = {}", fmt_f64(worst_energy));
        println!("xxz sweep (N = {n}): min |<ED|BA>| = {}", fmt_f64(worst_overlap));
    }

    if failures.is_empty() {
        println!("oracle-check: all cross-method deviations within tolerance");
        Ok(())
    } else {
        std::fs::write(
            &args.replay,
            serde_json::to_string_pretty(&failures).expect("replay serializes"),
        )?;
        Err(CliError::Claim(format!(
            "{} oracle deviation(s) beyond tolerance; replay written to {}",
            failures.len(),
            args.replay.display()
        )))
    }
}
