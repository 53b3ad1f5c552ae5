//! Single-layer potential of the uniform density: constant ratio to Γ(x₀ - y)
//! on a ball, varying ratio elsewhere, and the large-|y| limit `|∂D|`.

use harmonic_gaps::asz::{asz_limit_c_default, default_sample, rigidity_discriminator};
use harmonic_gaps::geometry::{mesh_boundary, DomainSpec};

fn main() -> harmonic_gaps::Result<()> {
    let cases = [
        ("ball", DomainSpec::unit_ball(3), vec![0.0, 0.0, 0.0]),
        ("spheroid", DomainSpec::spheroid(&[0.0, 0.0, 0.0], &[1.1, 1.0, 1.0]), vec![0.0, 0.0, 0.0]),
        ("beaked n=2", DomainSpec::beaked(2, 0.1, 3, false), vec![1.1, 0.0]),
    ];
    for (name, spec, x0) in cases {
        let mesh = mesh_boundary(&spec, 2, None)?;
        let r = rigidity_discriminator(&spec, &mesh, &x0, &default_sample(&spec, &x0))?;
        let c = asz_limit_c_default(&spec, &mesh, &x0)?;
        println!(
            "{name}: spread {:.3e} -> {}; limit {:.10} vs |dD| {:.10}",
            r.spread,
            if r.constant_ratio { "constant" } else { "not constant" },
            c.extrapolated,
            c.boundary_area
        );
    }
    Ok(())
}
