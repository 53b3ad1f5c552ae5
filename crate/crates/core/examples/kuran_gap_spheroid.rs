//! Kuran gap of a spheroid: radial limits L and L* at each touching point,
//! then the inequalities against the isoperimetric deficit.
//!
//! Usage: `cargo run --release --example kuran_gap_spheroid -- [a] [n]`

use harmonic_gaps::gaps::{analyze, verify_cor13_with, verify_thm12_with, GapOptions};
use harmonic_gaps::geometry::{inradius_touching, isoperimetric_report, DomainSpec};

fn main() -> harmonic_gaps::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let a: f64 = args.first().and_then(|s| s.parse().ok()).unwrap_or(1.1);
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let mut axes = vec![1.0; n];
    axes[0] = a;
    let x0 = vec![0.0; n];
    let spec = DomainSpec::spheroid(&x0, &axes);

    let touching = inradius_touching(&spec, &x0)?;
    println!("inradius {} with {} touching points", touching.radius, touching.candidates.len());
    let opts = GapOptions::for_dim(n);
    let gaps = analyze(&spec, &x0, &touching.candidates, &opts)?;
    for c in &gaps.candidates {
        println!(
            "z={:?} L={:.6} ({:?}) L*={:.6} ({:?})",
            c.z, c.l.extrapolated, c.l.method, c.lstar.extrapolated, c.lstar.method
        );
        for s in &c.l.samples {
            println!("    t={:.6} fint k = {:.8}", s.t, s.value);
        }
    }
    println!("K={:.6} h*={:.6}", gaps.kuran.extrapolated, gaps.hstar.extrapolated);
    for r in [
        verify_thm12_with(&spec, &x0, &gaps, 1e-3)?,
        verify_cor13_with(&spec, &x0, &gaps, 1e-3)?,
        isoperimetric_report(&spec, &x0)?,
    ] {
        println!("{}", r.summary_line());
    }
    Ok(())
}
