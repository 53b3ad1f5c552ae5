//! ε sweep over the beaked sphere: Kuran gap, Gauss ratio, area deficit and
//! the three-part decomposition. Writes the CSV to stdout.
//!
//! Usage: `cargo run --release --example beaked_sweep -- [n] [m]`

use harmonic_gaps::beaked::{run_sweep, sweep_gap_options};
use harmonic_gaps::defaults::{geometric_grid, SWEEP_EPS_MAX, SWEEP_EPS_MIN, SWEEP_POINTS};

fn main() -> harmonic_gaps::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let m: u32 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(n as u32 + 1);
    let eps = geometric_grid(SWEEP_EPS_MIN, SWEEP_EPS_MAX, SWEEP_POINTS);
    let sweep = run_sweep(&eps, m, n, &sweep_gap_options(n))?;
    sweep.write_csv(std::io::stdout())?;
    for r in sweep.checks() {
        eprintln!("{}", r.summary_line());
    }
    Ok(())
}
