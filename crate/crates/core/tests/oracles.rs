//! Independent one-dimensional oracles for planar boundaries and the beaked
//! Kuran limit.

use std::f64::consts::PI;

use harmonic_gaps::beaked::{alpha0, kuran_point, sweep_gap_options};
use harmonic_gaps::gaps::{analyze_at, GapOptions};
use harmonic_gaps::geometry::{boundary_area, mesh_boundary, volume, DomainSpec};

fn perimeter(pts: &[[f64; 2]]) -> f64 {
    (0..pts.len())
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
        })
        .sum()
}

fn shoelace(pts: &[[f64; 2]]) -> f64 {
    0.5 * (0..pts.len())
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % pts.len()]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

fn ellipse(a: f64, b: f64, k: usize) -> Vec<[f64; 2]> {
    (0..k)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / k as f64;
            [a * t.cos(), b * t.sin()]
        })
        .collect()
}

/// Beak geometry rebuilt from scratch: apex at the origin, unit circle
/// centred at `(1+ε, 0)`, cone half-angle π/4, truncation radius `ε^m`.
struct Beak2 {
    c: f64,
    rho1: f64,
    psi: f64,
    rs: f64,
}

fn beak2(eps: f64, m: i32) -> Beak2 {
    let c = 1.0 + eps;
    let ct = 0.5f64.sqrt();
    // smaller root of ρ² - 2cρ cos θ + c² - 1 = 0
    let rho1 = c * ct - (c * c * ct * ct - (c * c - 1.0)).sqrt();
    let rim = [rho1 * ct, rho1 * ct];
    let psi = rim[1].atan2(c - rim[0]);
    Beak2 {
        c,
        rho1,
        psi,
        rs: eps.powi(m),
    }
}

fn beak_polygon(b: &Beak2, k: usize) -> Vec<[f64; 2]> {
    let ct = 0.5f64.sqrt();
    let mut pts = Vec::new();
    let top = PI - b.psi;
    for i in 0..k {
        let s = -top + 2.0 * top * i as f64 / k as f64;
        pts.push([b.c + s.cos(), s.sin()]);
    }
    for i in 0..k {
        let r = b.rho1 + (b.rs - b.rho1) * i as f64 / k as f64;
        pts.push([r * ct, r * ct]);
    }
    for i in 0..k {
        let s = PI / 4.0 - PI / 2.0 * i as f64 / k as f64;
        pts.push([b.rs * s.cos(), b.rs * s.sin()]);
    }
    for i in 0..k {
        let r = b.rs + (b.rho1 - b.rs) * i as f64 / k as f64;
        pts.push([r * ct, -r * ct]);
    }
    pts
}

#[test]
fn ellipse_perimeter_and_area() {
    for a in [1.05, 1.1, 1.2] {
        let spec = DomainSpec::spheroid(&[0.0, 0.0], &[a, 1.0]);
        let mesh = mesh_boundary(&spec, 3, None).unwrap();
        let poly = ellipse(a, 1.0, 200_000);
        let p = perimeter(&poly);
        assert!((boundary_area(&mesh).unwrap() - p).abs() < 1e-8 * p, "a={a}");
        let v = volume(&spec, &mesh).unwrap().mesh;
        assert!((v - shoelace(&poly)).abs() < 1e-8, "a={a}");
    }
}

#[test]
fn beaked_perimeter_and_area() {
    for eps in [0.05, 0.1, 0.2] {
        let b = beak2(eps, 3);
        let poly = beak_polygon(&b, 100_000);
        let spec = DomainSpec::beaked(2, eps, 3, false);
        let mesh = mesh_boundary(&spec, 3, None).unwrap();
        let p = perimeter(&poly);
        assert!((boundary_area(&mesh).unwrap() - p).abs() < 1e-8 * p, "eps={eps}");
        let v = volume(&spec, &mesh).unwrap().mesh;
        assert!((v - shoelace(&poly)).abs() < 1e-8, "eps={eps}");
    }
}

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, k: usize) -> f64 {
    let h = (b - a) / k as f64;
    let mut s = f(a) + f(b);
    for i in 1..k {
        s += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// `|-|Σ| + ∫_{S ∪ Σ*} k_{e₁}| / |∂D|` with the ball centred at the origin.
fn piecewise_limit_2d(eps: f64, m: i32) -> f64 {
    let b = beak2(eps, m);
    let ct = 0.5f64.sqrt();
    let k = |x: f64, y: f64| 1.0 + (x * x + y * y - 1.0) / ((x - 1.0).powi(2) + y * y);
    let ax = -b.c;
    let lateral = 2.0 * simpson(|r| k(ax + r * ct, r * ct), b.rs, b.rho1, 20_000);
    let star = b.rs * simpson(|s| k(ax + b.rs * s.cos(), b.rs * s.sin()), -PI / 4.0, PI / 4.0, 2_000);
    let sigma = 2.0 * b.psi;
    let area = 2.0 * PI - sigma + 2.0 * (b.rho1 - b.rs) + b.rs * PI / 2.0;
    (star + lateral - sigma).abs() / area
}

#[test]
fn beaked_kuran_limit_matches_piecewise_oracle() {
    let opts = sweep_gap_options(2);
    for eps in [0.05, 0.1, 0.2] {
        let oracle = piecewise_limit_2d(eps, 3);
        let p = kuran_point(eps, 3, 2, &opts).unwrap();
        assert!((p.piecewise_limit - oracle).abs() < 1e-9 * oracle, "eps={eps}");
        let k = p.estimate.extrapolated;
        assert!((k - oracle).abs() < 1e-4 * oracle, "eps={eps}: {k} vs {oracle}");
    }
}

#[test]
fn upper_minus_lower_limit_is_area_ratio() {
    for a in [1.05, 1.1, 1.2] {
        let spec = DomainSpec::spheroid(&[0.0, 0.0], &[a, 1.0]);
        let g = analyze_at(&spec, &[0.0, 0.0], &GapOptions::for_dim(2)).unwrap();
        let perim = perimeter(&ellipse(a, 1.0, 200_000));
        let expect = 2.0 * 2.0 * PI / perim - 1.0;
        for c in &g.candidates {
            let d = c.lstar.extrapolated - c.l.extrapolated;
            assert!((d - expect).abs() < 1e-3, "a={a}: {d} vs {expect}");
        }
    }
}

#[test]
fn leading_area_deficit_coefficients() {
    assert!((alpha0(2) - (2.0 * 2f64.sqrt() - 2.0)).abs() < 1e-14);
    assert!((alpha0(3) - (PI * 6f64.sqrt() - 2.0 * PI)).abs() < 1e-13);
}
