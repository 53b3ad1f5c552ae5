//! Dictionary lower bound for the Gauss gap of a perturbed ball, compared
//! with the Kuran gap and the deficit ratio.

use harmonic_gaps::gaps::{
    analyze, default_dictionary, gauss_gap_lower, verify_prop32_with, GapOptions,
};
use harmonic_gaps::geometry::{inradius_touching, Bump, DomainSpec};

fn main() -> harmonic_gaps::Result<()> {
    let domains = [
        ("spheroid a=1.2", DomainSpec::spheroid(&[0.0, 0.0], &[1.2, 1.0])),
        (
            "perturbed ball",
            DomainSpec::graph_perturbed_ball(
                &[0.0, 0.0],
                1.0,
                Bump {
                    axis: vec![1.0, 0.0],
                    amplitude: 0.1,
                    onset: 0.5,
                },
            ),
        ),
    ];
    for (name, spec) in domains {
        let x0 = [0.0, 0.0];
        let opts = GapOptions::for_dim(2);
        let t = inradius_touching(&spec, &x0)?;
        let dict = default_dictionary(&spec, &x0, &t.candidates);
        let g = gauss_gap_lower(&spec, &x0, &dict, &opts)?;
        println!("{name}: {} dictionary functions, best {} with ratio {:.6}", dict.len(), g.best, g.value);
        let a = analyze(&spec, &x0, &t.candidates, &opts)?;
        println!("  K={:.6} h*={:.6}", a.kuran.extrapolated, a.hstar.extrapolated);
        println!("  {}", verify_prop32_with(&spec, &x0, &t.candidates, &a, &opts, 1e-2)?.summary_line());
    }
    Ok(())
}
