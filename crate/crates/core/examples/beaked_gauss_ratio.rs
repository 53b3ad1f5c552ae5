//! Gauss ratio of the cone function on the beaked sphere, with the two
//! controls (linear function, ball pieces only) and the I₁, I₂, I₃ split.

use harmonic_gaps::beaked::{gauss_ratio, gauss_ratio_ball_only, gauss_ratio_linear_control, i_decomposition};

fn main() -> harmonic_gaps::Result<()> {
    for (n, m) in [(2, 3), (3, 4)] {
        println!("n={n} m={m}");
        for eps in [0.02, 0.05, 0.1, 0.2] {
            let g = gauss_ratio(eps, m, n)?;
            let lin = gauss_ratio_linear_control(eps, m, n)?;
            let ball = gauss_ratio_ball_only(eps, m, n)?;
            let d = i_decomposition(eps, m, n)?;
            println!(
                "  eps={eps:<5} ratio={:.6} (+-{:.1e}) linear={:.3e} ball-only={:.1e} I1={:.3e} I2={:.3e} I3*eps^m/c0={:.8}",
                g.value,
                g.error_estimate,
                lin.value,
                ball.value,
                d.i1,
                d.i2,
                d.i3 * eps.powi(m as i32) / d.c0
            );
        }
    }
    Ok(())
}
