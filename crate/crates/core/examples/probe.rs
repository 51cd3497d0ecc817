// scratch diagnostics; removed before release
use blockent_core::exec::ExecMode;
use blockent_core::xxz::{level_crossings, sector_grounds, XxzParams};
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let params = XxzParams::new(1.0, 0.0, 18).unwrap();
    let grounds = sector_grounds(&params, ExecMode::Parallel).unwrap();
    println!("N=18 all sectors: {:?}", t.elapsed());
    for g in &grounds {
        println!("  r={} E_ex={:.10} gap={:.3e} degenerate={}", g.r, g.exchange_energy, g.gap, g.degenerate);
    }
    let t = Instant::now();
    let crossings = level_crossings(18, 1.0, 1.0, 1e-6, ExecMode::Parallel).unwrap();
    println!("crossings ({:?}):", t.elapsed());
    for c in &crossings {
        println!("  lambda = {:.4} ({} -> {})", c.lambda, c.r_from, c.r_to);
    }
}
