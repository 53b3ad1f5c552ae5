//! Mean values over the unit sphere of harmonic polynomials, Kuran functions
//! and fundamental solutions, plus the flux identity `∮ h_α = -σ_n`.

use harmonic_gaps::geometry::{mesh_boundary, DomainSpec};
use harmonic_gaps::kernels::{harmonic_dictionary, HarmonicFn};
use harmonic_gaps::quadrature::{ball_mean_value_residual, ball_poisson_mass};

fn main() -> harmonic_gaps::Result<()> {
    for n in [2, 3] {
        let ball = DomainSpec::unit_ball(n);
        let mesh = mesh_boundary(&ball, 3, None)?;
        let worst_poly = harmonic_dictionary(n, 4)
            .into_iter()
            .map(|p| ball_mean_value_residual(&HarmonicFn::monomial(p), &ball, &mesh))
            .collect::<harmonic_gaps::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("n={n} harmonic polynomials up to degree 4: worst residual {worst_poly:.2e}");

        let mut alpha = vec![0.0; n];
        alpha[n - 1] = 2.0;
        let k = ball_mean_value_residual(&HarmonicFn::kuran_k(&alpha), &ball, &mesh)?;
        let g = ball_mean_value_residual(&HarmonicFn::fundamental(&alpha), &ball, &mesh)?;
        println!("n={n} k_alpha residual {k:.2e}, Gamma residual {g:.2e}");

        for r in [1.5, 2.0, 10.0] {
            alpha[n - 1] = r;
            println!("n={n} |alpha|={r}: flux residual {:.2e}", ball_poisson_mass(&alpha, &ball, &mesh)?);
        }
        alpha[n - 1] = 1.01;
        let graded = mesh_boundary(&ball, 2, Some(&alpha))?;
        println!(
            "n={n} |alpha|=1.01 graded ({} facets): flux residual {:.2e}",
            graded.len(),
            ball_poisson_mass(&alpha, &ball, &graded)?
        );
    }
    Ok(())
}
