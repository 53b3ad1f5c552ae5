//! Finite-difference Laplacian of every dictionary function, in double and
//! double-double arithmetic.

use harmonic_gaps::gaps::default_dictionary;
use harmonic_gaps::geometry::{inradius_touching, DomainSpec};
use harmonic_gaps::kernels::{laplacian_residual, laplacian_residual_extended};

fn main() -> harmonic_gaps::Result<()> {
    let spec = DomainSpec::spheroid(&[0.0, 0.0, 0.0], &[1.1, 1.0, 1.0]);
    let x0 = [0.0, 0.0, 0.0];
    let t = inradius_touching(&spec, &x0)?;
    let x = [0.1, -0.2, 0.3];
    for f in default_dictionary(&spec, &x0, &t.candidates) {
        let d = laplacian_residual(&f, &x, 1e-3)?;
        let e = laplacian_residual_extended(&f, &x, 1e-4)?;
        println!("{:<60} {d:>10.2e} {e:>10.2e}", f.label());
    }
    Ok(())
}
