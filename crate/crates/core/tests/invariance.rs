use harmonic_gaps::gaps::{analyze, default_dictionary, gauss_gap_lower, GapOptions};
use harmonic_gaps::geometry::{inradius_touching, DomainSpec};

struct Gaps {
    kuran: f64,
    hstar: f64,
    gauss: f64,
}

fn gaps_of(spec: &DomainSpec, x0: &[f64]) -> Gaps {
    let opts = GapOptions::for_dim(spec.dim);
    let t = inradius_touching(spec, x0).unwrap();
    let a = analyze(spec, x0, &t.candidates, &opts).unwrap();
    let dict = default_dictionary(spec, x0, &t.candidates);
    let g = gauss_gap_lower(spec, x0, &dict, &opts).unwrap();
    Gaps {
        kuran: a.kuran.extrapolated,
        hstar: a.hstar.extrapolated,
        gauss: g.value,
    }
}

fn assert_same(what: &str, a: &Gaps, b: &Gaps) {
    for (name, x, y) in [("K", a.kuran, b.kuran), ("h*", a.hstar, b.hstar), ("gauss", a.gauss, b.gauss)] {
        assert!((x - y).abs() <= 1e-6 * x.abs().max(1.0), "{what}: {name} {x} vs {y}");
    }
}

fn rotation2(a: f64) -> Vec<Vec<f64>> {
    vec![vec![a.cos(), -a.sin()], vec![a.sin(), a.cos()]]
}

fn rotation3(a: f64, b: f64) -> Vec<Vec<f64>> {
    let (ca, sa, cb, sb) = (a.cos(), a.sin(), b.cos(), b.sin());
    // R_z(a) R_x(b)
    vec![
        vec![ca, -sa * cb, sa * sb],
        vec![sa, ca * cb, -ca * sb],
        vec![0.0, sb, cb],
    ]
}

fn apply(q: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    q.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

#[test]
fn spheroid_2d_rigid_motions_and_dilations() {
    let base = DomainSpec::spheroid(&[0.0, 0.0], &[1.1, 1.0]);
    let x0 = [0.0, 0.0];
    let g0 = gaps_of(&base, &x0);

    let v = [0.3, -0.7];
    assert_same("translation", &g0, &gaps_of(&base.translated(&v).unwrap(), &v));

    let q = rotation2(0.7);
    assert_same("rotation", &g0, &gaps_of(&base.rotated(&q).unwrap(), &apply(&q, &x0)));

    assert_same("dilation", &g0, &gaps_of(&base.dilated(2.5).unwrap(), &x0));
}

#[test]
fn spheroid_3d_rotation() {
    let base = DomainSpec::spheroid(&[0.0, 0.0, 0.0], &[1.1, 1.0, 1.0]);
    let x0 = [0.0, 0.0, 0.0];
    let g0 = gaps_of(&base, &x0);
    let q = rotation3(0.4, 1.1);
    let moved = base.rotated(&q).unwrap().translated(&[0.2, 0.1, -0.3]).unwrap();
    assert_same("rigid motion", &g0, &gaps_of(&moved, &[0.2, 0.1, -0.3]));
    assert_same("dilation", &g0, &gaps_of(&base.dilated(0.4).unwrap(), &x0));
}
