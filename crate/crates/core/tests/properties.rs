use std::f64::consts::PI;

use proptest::prelude::*;

use harmonic_gaps::asz::single_layer;
use harmonic_gaps::defaults::geometric_grid;
use harmonic_gaps::gaps::ApproachSchedule;
use harmonic_gaps::geometry::{boundary_area, mesh_boundary, DomainSpec};
use harmonic_gaps::kernels::{
    gamma, harmonic_dictionary, kuran_h, kuran_k, laplacian_residual, sphere_area, HarmonicFn,
};
use harmonic_gaps::quadrature::{ball_mean_value_residual, ball_poisson_mass};

fn rot3(a: f64, b: f64, c: f64) -> [[f64; 3]; 3] {
    let (ca, sa, cb, sb, cc, sc) = (a.cos(), a.sin(), b.cos(), b.sin(), c.cos(), c.sin());
    let rz = |c: f64, s: f64| [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]];
    let rx = [[1.0, 0.0, 0.0], [0.0, cb, -sb], [0.0, sb, cb]];
    let mul = |p: [[f64; 3]; 3], q: [[f64; 3]; 3]| {
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (0..3).map(|k| p[i][k] * q[k][j]).sum();
            }
        }
        r
    };
    mul(mul(rz(ca, sa), rx), rz(cc, sc))
}

fn apply(q: &[[f64; 3]; 3], v: &[f64]) -> Vec<f64> {
    (0..3).map(|i| (0..3).map(|j| q[i][j] * v[j]).sum()).collect()
}

fn point3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, 3)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn kuran_h_is_rotation_invariant(
        alpha in point3(), x in point3(),
        a in 0.0..2.0 * PI, b in 0.0..PI, c in 0.0..2.0 * PI,
    ) {
        prop_assume!(alpha.iter().map(|v| v * v).sum::<f64>() > 0.01 && dist(&alpha, &x) > 0.1);
        let q = rot3(a, b, c);
        let h0 = kuran_h(&alpha, &x).unwrap();
        let h1 = kuran_h(&apply(&q, &alpha), &apply(&q, &x)).unwrap();
        prop_assert!(close(h0, h1, 1e-10), "{} vs {}", h0, h1);
    }

    #[test]
    fn kuran_h_is_scale_invariant(alpha in point3(), x in point3(), lambda in 0.1..10.0f64) {
        prop_assume!(alpha.iter().map(|v| v * v).sum::<f64>() > 0.01 && dist(&alpha, &x) > 0.1);
        let s = |v: &[f64]| v.iter().map(|c| c * lambda).collect::<Vec<_>>();
        let h0 = kuran_h(&alpha, &x).unwrap();
        let h1 = kuran_h(&s(&alpha), &s(&x)).unwrap();
        prop_assert!(close(h0, h1, 1e-10));
    }

    #[test]
    fn kuran_k_vanishes_at_origin_and_h_on_pole_sphere(
        alpha in prop::collection::vec(-2.0..2.0f64, 2..=4),
        theta in 0.0..2.0 * PI,
    ) {
        let r = alpha.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(r > 0.1);
        let n = alpha.len();
        prop_assert!(kuran_k(&alpha, &vec![0.0; n]).unwrap().abs() < 1e-14);
        // rotate α inside the (x1, x2) plane: stays on |x| = |α|
        let mut x = alpha.clone();
        x[0] = alpha[0] * theta.cos() - alpha[1] * theta.sin();
        x[1] = alpha[0] * theta.sin() + alpha[1] * theta.cos();
        prop_assume!(dist(&x, &alpha) > 1e-3 * r);
        prop_assert!(kuran_h(&alpha, &x).unwrap().abs() < 1e-9);
    }

    #[test]
    fn kernels_are_harmonic_away_from_poles(alpha in point3(), x in point3()) {
        prop_assume!(alpha.iter().map(|v| v * v).sum::<f64>() > 0.25 && dist(&alpha, &x) > 0.5);
        let step = 1e-3;
        let h = laplacian_residual(&HarmonicFn::kuran_h(&alpha), &x, step).unwrap();
        let g = laplacian_residual(&HarmonicFn::fundamental(&alpha), &x, step).unwrap();
        prop_assert!(h.abs() < 1e-2 && g.abs() < 1e-3, "{} {}", h, g);
    }

    #[test]
    fn fundamental_solution_is_radial(x in point3(), a in 0.0..2.0 * PI, b in 0.0..PI) {
        prop_assume!(x.iter().map(|v| v * v).sum::<f64>() > 1e-4);
        let q = rot3(a, b, 0.3);
        prop_assert!(close(gamma(&x).unwrap(), gamma(&apply(&q, &x)).unwrap(), 1e-12));
    }

    #[test]
    fn grid_is_sorted_with_exact_ends(lo in 1e-3..0.1f64, f in 1.5..20.0f64, k in 2usize..12) {
        let g = geometric_grid(lo, lo * f, k);
        prop_assert_eq!(g.len(), k);
        prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(close(g[0], lo, 1e-15) && close(g[k - 1], lo * f, 1e-14));
    }

    #[test]
    fn schedule_approaches_one(t0 in 1.01..3.0f64, q in 0.05..0.95f64, count in 4usize..20) {
        let Ok(s) = ApproachSchedule::new(t0, q, count) else {
            prop_assert!((t0 - 1.0) * q.powi(count as i32 - 1) <= harmonic_gaps::gaps::MIN_POLE_DISTANCE);
            return Ok(());
        };
        let ts = s.ts();
        prop_assert!(ts.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0));
    }

    #[test]
    fn domain_spec_json_roundtrip(a in 1.0..2.0f64, b in 0.5..2.0f64, cx in -1.0..1.0f64) {
        let s = DomainSpec::spheroid(&[cx, 0.0, 0.0], &[a, b, 1.0]);
        let j = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<DomainSpec>(&j).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn ball_mean_values_anywhere(
        c in prop::collection::vec(-3.0..3.0f64, 3),
        r in 0.2..5.0f64,
        pick in 0usize..1000,
    ) {
        let ball = DomainSpec::ball(&c, r);
        let mesh = mesh_boundary(&ball, 2, None).unwrap();
        let dict = harmonic_dictionary(3, 4);
        // polynomial in coordinates relative to the centre, at unit scale
        let f = HarmonicFn::monomial(dict[pick % dict.len()].clone()).in_frame(&c, None, r);
        prop_assert!(ball_mean_value_residual(&f, &ball, &mesh).unwrap() < 1e-10);
    }

    #[test]
    fn poisson_flux_is_minus_sphere_area(
        dir in prop::collection::vec(-1.0..1.0f64, 3),
        rad in 1.5..10.0f64,
    ) {
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 0.1);
        let alpha: Vec<f64> = dir.iter().map(|v| v * rad / norm).collect();
        let ball = DomainSpec::unit_ball(3);
        let mesh = mesh_boundary(&ball, 2, None).unwrap();
        prop_assert!(ball_poisson_mass(&alpha, &ball, &mesh).unwrap() < 1e-6);
    }

    #[test]
    fn shell_theorem_outside_ball(
        c in prop::collection::vec(-1.0..1.0f64, 3),
        dir in prop::collection::vec(-1.0..1.0f64, 3),
        d in 1.6..6.0f64,
    ) {
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assume!(norm > 0.1);
        let y: Vec<f64> = c.iter().zip(&dir).map(|(ci, di)| ci + d * di / norm).collect();
        let ball = DomainSpec::ball(&c, 1.0);
        let mesh = mesh_boundary(&ball, 2, None).unwrap();
        let v = single_layer(&ball, &mesh, &y).unwrap();
        let g: Vec<f64> = c.iter().zip(&y).map(|(a, b)| a - b).collect();
        prop_assert!(close(v, sphere_area(3) * gamma(&g).unwrap(), 1e-9));
    }

    #[test]
    fn area_is_invariant_under_rigid_motion(
        a in 1.0..1.5f64,
        ang in (0.0..2.0 * PI, 0.0..PI, 0.0..2.0 * PI),
        t in prop::collection::vec(-2.0..2.0f64, 3),
    ) {
        let base = DomainSpec::spheroid(&[0.0; 3], &[a, 1.0, 0.9]);
        let q = rot3(ang.0, ang.1, ang.2);
        let rows: Vec<Vec<f64>> = q.iter().map(|r| r.to_vec()).collect();
        let moved = base.rotated(&rows).unwrap().translated(&t).unwrap();
        let a0 = boundary_area(&mesh_boundary(&base, 2, None).unwrap()).unwrap();
        let a1 = boundary_area(&mesh_boundary(&moved, 2, None).unwrap()).unwrap();
        prop_assert!(close(a0, a1, 1e-12), "{} vs {}", a0, a1);
    }
}
