//! Boundary mesh of a domain as CSV (`piece,cx,...,area,nx,...`) on stdout.
//! The domain is read as JSON from the first argument, default a beaked sphere.
//!
//! Usage: `cargo run --example mesh_export -- '{"dim":2,"shape":{"type":"ball","center":[0,0],"radius":1}}'`

use harmonic_gaps::geometry::{boundary_area, mesh_boundary, volume, DomainSpec};

fn main() -> harmonic_gaps::Result<()> {
    let spec = match std::env::args().nth(1) {
        Some(s) => serde_json::from_str(&s).map_err(|e| harmonic_gaps::Error::InvalidDomain(e.to_string()))?,
        None => DomainSpec::beaked(2, 0.1, 3, false),
    };
    spec.validate()?;
    let mesh = mesh_boundary(&spec, 2, None)?;
    let v = volume(&spec, &mesh)?;
    eprintln!(
        "{} facets, area {:.12}, volume {:.12} (analytic {:?})",
        mesh.len(),
        boundary_area(&mesh)?,
        v.mesh,
        v.analytic
    );
    mesh.write_csv(std::io::stdout())
}
