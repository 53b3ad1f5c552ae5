//! `2 σ_{n-1} ∫₀^∞ s^{n-2} (1+s²)^{-n/2} ds = σ_n` for n = 2..6.

use harmonic_gaps::kernels::sphere_area;
use harmonic_gaps::quadrature::sphere_ratio_identity;

fn main() {
    let t = std::time::Instant::now();
    for n in 2..=6 {
        println!("n={n} sigma_n={:.15} relative residual {:.2e}", sphere_area(n), sphere_ratio_identity(n));
    }
    println!("elapsed {:?}", t.elapsed());
}
