//! `xxz-crossings`: ground-state level crossings of the field sweep.

use crate::csvio::{fmt_f64, CsvWriter};
use crate::manifest::{cache_dir, emit_with_cache, ManifestCore};
use crate::{CliError, CommonOpts};
use blockent_core::exec::ExecMode;
use blockent_core::xxz::level_crossings;
use clap::Args;
use std::path::PathBuf;

#[derive(Args, Debug, Clone)]
pub struct XxzCrossingsArgs {
    /// Anisotropy Delta.
    #[arg(long)]
    pub delta: f64,
    /// Ring size (even, at most 20).
    #[arg(long)]
    pub n: usize,
    /// Requested absolute precision of the crossing fields.
    #[arg(long, default_value_t = 1e-6)]
    pub resolution: f64,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: CommonOpts,
}

pub fn run(args: &XxzCrossingsArgs) -> Result<(), CliError> {
    crate::init_pool(args.common.jobs);
    if args.n % 2 != 0 || args.n < 2 || args.n > 20 {
        return Err(CliError::Usage(format!("ring size must be even with 2 <= N <= 20, got {}", args.n)));
    }
    let core = ManifestCore::new("xxz-crossings")
        .param("delta", args.delta)
        .param("n", args.n)
        .tolerance("resolution", args.resolution);
    let checksum = core.checksum();

    let (n, delta, resolution) = (args.n, args.delta, args.resolution);
    emit_with_cache(core, &args.out, cache_dir(&args.common.cache_dir), move || {
        let crossings = level_crossings(n, delta, 1.0, resolution, ExecMode::Parallel)?;
        let mut csv = CsvWriter::new("xxz-crossings", &checksum, &["lambda_c", "r_from", "r_to"]);
        for c in &crossings {
            csv.row(&[fmt_f64(c.lambda), c.r_from.to_string(), c.r_to.to_string()]);
        }
        Ok(csv.finish())
    })
}
