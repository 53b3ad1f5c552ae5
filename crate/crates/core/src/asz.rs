//! Single-layer potentials of the uniform surface density and the rigidity
//! checks built on them.
//!
//! For a ball centred at `x₀` the potential `∮ Γ(x - y) dσ(x)` equals
//! `|∂B| Γ(x₀ - y)` at every exterior `y`. For any other domain the ratio to
//! `Γ(x₀ - y)` varies with `y`, and it tends to `|∂D|` as `|y| → ∞`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::extrapolate::neville_at_zero;
use crate::geometry::{boundary_area, DomainSpec, Shape, SurfaceMesh};
use crate::kernels::{raw, sphere_area, HarmonicFn};
use crate::quadrature::{integrate_many, integrate_near_singular_many, NearSingularOptions};
use crate::report::{Relation, VerificationReport};
use crate::vector;

fn gamma_at(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut d = [0.0; 3];
    for i in 0..n {
        d[i] = x[i] - y[i];
    }
    raw::gamma(&d[..n])
}

fn check_exterior(spec: &DomainSpec, y: &[f64]) -> Result<f64> {
    if y.len() != spec.dim {
        return Err(Error::InvalidParameter(format!(
            "point has dimension {}, expected {}",
            y.len(),
            spec.dim
        )));
    }
    if spec.contains(y) {
        return Err(Error::PoleInsideClosure { pole: y.to_vec() });
    }
    let z = spec.nearest_boundary_point(y)?;
    let d = vector::dist(vector::pad(y), vector::pad(&z));
    if d <= 0.0 {
        return Err(Error::PoleInsideClosure { pole: y.to_vec() });
    }
    Ok(d)
}

/// `∮ Γ(x - y) dσ(x)` on `mesh`; points closer to `∂D` than half the domain
/// scale are integrated on graded meshes instead.
pub fn single_layer(spec: &DomainSpec, mesh: &SurfaceMesh, y: &[f64]) -> Result<f64> {
    let d = check_exterior(spec, y)?;
    if d < 0.5 * spec.frame().scale {
        let tol = 1e-10 * boundary_area(mesh)?;
        let r = integrate_near_singular_many(
            spec,
            |x| [gamma_at(x, y)],
            y,
            tol,
            &NearSingularOptions::for_dim(spec.dim),
        )?;
        return Ok(r.values[0]);
    }
    let [v] = integrate_many(mesh, |x| [gamma_at(x, y)])?;
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub y: Vec<f64>,
    pub potential: f64,
    /// `∮ Γ(x - y) dσ(x) / Γ(x₀ - y)`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialProfile {
    pub x0: Vec<f64>,
    pub samples: Vec<ProfileSample>,
    pub mean_ratio: f64,
    /// `(max ratio - min ratio) / |mean ratio|`.
    pub spread: f64,
}

impl PotentialProfile {
    /// Writes `y1,...,yn,potential,ratio`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let n = self.x0.len();
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
        header.push("potential".into());
        header.push("ratio".into());
        w.write_record(&header)?;
        for s in &self.samples {
            let mut rec: Vec<String> = s.y.iter().map(|v| format!("{v:.15e}")).collect();
            rec.push(format!("{:.15e}", s.potential));
            rec.push(format!("{:.15e}", s.ratio));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn potential_profile(spec: &DomainSpec, mesh: &SurfaceMesh, x0: &[f64], ys: &[Vec<f64>]) -> Result<PotentialProfile> {
    if ys.is_empty() {
        return Err(Error::Empty("sample points"));
    }
    let samples: Vec<ProfileSample> = ys
        .par_iter()
        .map(|y| {
            let potential = single_layer(spec, mesh, y)?;
            let g = gamma_at(x0, y);
            if g == 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "Gamma(x0 - y) vanishes at y = {y:?}"
                )));
            }
            Ok(ProfileSample {
                y: y.clone(),
                potential,
                ratio: potential / g,
            })
        })
        .collect::<Result<_>>()?;
    let mean = samples.iter().map(|s| s.ratio).sum::<f64>() / samples.len() as f64;
    let hi = samples.iter().map(|s| s.ratio).fold(f64::NEG_INFINITY, f64::max);
    let lo = samples.iter().map(|s| s.ratio).fold(f64::INFINITY, f64::min);
    Ok(PotentialProfile {
        x0: x0.to_vec(),
        samples,
        mean_ratio: mean,
        spread: (hi - lo) / mean.abs(),
    })
}

/// Unit directions symmetric under `v ↦ -v`: equally spaced angles for
/// n = 2, a Fibonacci hemisphere and its antipodes for n = 3.
pub fn directions(n: usize, count: usize) -> Vec<Vec<f64>> {
    if n == 2 {
        return (0..count)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / count as f64;
                vec![a.cos(), a.sin()]
            })
            .collect();
    }
    let half = count / 2;
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(2 * half);
    for k in 0..half {
        let z = (k as f64 + 0.5) / half as f64;
        let r = (1.0 - z * z).sqrt();
        let a = golden * k as f64;
        out.push(vec![r * a.cos(), r * a.sin(), z]);
    }
    let neg: Vec<Vec<f64>> = out.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
    out.extend(neg);
    out
}

fn default_directions(n: usize) -> Vec<Vec<f64>> {
    directions(
        n,
        if n == 2 {
            defaults::ASZ_DIRECTIONS_2D
        } else {
            defaults::ASZ_DIRECTIONS_3D
        },
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitC {
    pub radii: Vec<f64>,
    /// Direction-averaged ratio at each radius.
    pub averages: Vec<f64>,
    pub extrapolated: f64,
    pub boundary_area: f64,
}

/// `lim_{|y| → ∞} ∮ Γ(x - y) dσ / Γ(x₀ - y)`, from direction averages at
/// `radii · circumradius` and polynomial extrapolation in `1/|y|`.
pub fn asz_limit_c(spec: &DomainSpec, mesh: &SurfaceMesh, x0: &[f64], radii: &[f64]) -> Result<LimitC> {
    if radii.len() < 3 {
        return Err(Error::InvalidParameter("limit needs at least 3 radii".into()));
    }
    let rc = spec.circumradius_about(x0);
    let dirs = default_directions(spec.dim);
    let mut dist = Vec::new();
    let mut averages = Vec::new();
    for &r in radii {
        let ys: Vec<Vec<f64>> = dirs
            .iter()
            .map(|d| d.iter().zip(x0).map(|(di, xi)| xi + r * rc * di).collect())
            .collect();
        let p = potential_profile(spec, mesh, x0, &ys)?;
        dist.push(1.0 / (r * rc));
        averages.push(p.mean_ratio);
    }
    let k = dist.len();
    Ok(LimitC {
        radii: radii.iter().map(|r| r * rc).collect(),
        extrapolated: neville_at_zero(&dist[k - 3..], &averages[k - 3..]),
        averages,
        boundary_area: boundary_area(mesh)?,
    })
}

pub fn asz_limit_c_default(spec: &DomainSpec, mesh: &SurfaceMesh, x0: &[f64]) -> Result<LimitC> {
    asz_limit_c(spec, mesh, x0, &defaults::ASZ_RADII)
}

/// Exterior sample at `{1.5, 3} · circumradius` around `x₀`, in the default directions.
pub fn default_sample(spec: &DomainSpec, x0: &[f64]) -> Vec<Vec<f64>> {
    let rc = spec.circumradius_about(x0);
    let mut out = Vec::new();
    for r in [1.5, 3.0] {
        for d in default_directions(spec.dim) {
            out.push(d.iter().zip(x0).map(|(di, xi)| xi + r * rc * di).collect());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rigidity {
    pub profile: PotentialProfile,
    pub spread: f64,
    /// True when the spread is below `threshold`, i.e. the ratio looks constant.
    pub constant_ratio: bool,
    pub threshold: f64,
}

pub fn rigidity_discriminator(spec: &DomainSpec, mesh: &SurfaceMesh, x0: &[f64], ys: &[Vec<f64>]) -> Result<Rigidity> {
    let profile = potential_profile(spec, mesh, x0, ys)?;
    let threshold = defaults::ASZ_SPREAD_THRESHOLD;
    Ok(Rigidity {
        spread: profile.spread,
        constant_ratio: profile.spread < threshold,
        threshold,
        profile,
    })
}

fn ball_of(spec: &DomainSpec) -> Result<(Vec<f64>, f64)> {
    match &spec.shape {
        Shape::Ball { center, radius } => Ok((center.clone(), *radius)),
        _ => Err(Error::InvalidDomain("a ball is required".into())),
    }
}

/// On a ball centred at `x₀`: `fint Γ(· - y) = Γ(x₀ - y)` for exterior `y`
/// and `fint u = u(x₀)` for every dictionary function harmonic on the closure.
pub fn lemma51_check(
    ball: &DomainSpec,
    mesh: &SurfaceMesh,
    x0: &[f64],
    ys: &[Vec<f64>],
    dictionary: &[HarmonicFn],
    tol: f64,
) -> Result<VerificationReport> {
    let (c, r) = ball_of(ball)?;
    if vector::dist(vector::pad(&c), vector::pad(x0)) > 1e-14 * r {
        return Err(Error::InvalidParameter("x0 must be the center of the ball".into()));
    }
    let area = boundary_area(mesh)?;
    let mut parts = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        let v = single_layer(ball, mesh, y)? / area;
        let g = gamma_at(x0, y);
        parts.push(
            VerificationReport::new(&format!("gamma_pole_{i}"), Relation::Equal, v, g, tol * (1.0 + g.abs()))
                .sources("fint Gamma(x - y)", "Gamma(x0 - y)"),
        );
    }
    for u in dictionary {
        u.validate(ball.dim)?;
        let f = |x: &[f64]| [1.0, u.eval_unchecked(x)];
        let near = match u.singular_point(ball.dim) {
            Some(s) => {
                let d = vector::dist(vector::pad(&s), vector::pad(&c)) - r;
                if d <= 0.0 {
                    return Err(Error::PoleInsideClosure { pole: s });
                }
                (d < 0.5 * r).then_some(s)
            }
            None => None,
        };
        let [a, s] = match near {
            Some(p) => {
                integrate_near_singular_many(ball, f, &p, 1e-10 * area, &NearSingularOptions::for_dim(ball.dim))?
                    .values
            }
            None => integrate_many(mesh, f)?,
        };
        let ux0 = u.eval(x0)?;
        parts.push(
            VerificationReport::new(&u.label(), Relation::Equal, s / a, ux0, tol * (1.0 + ux0.abs()))
                .sources("fint u", "u(x0)"),
        );
    }
    Ok(VerificationReport::all("mean_value_equivalence", &parts))
}

/// `sup_{∂B} ||∂B| P(x₀, x) - 1|` for the Poisson kernel of the ball at its centre.
pub fn ball_poisson_sup(ball: &DomainSpec, mesh: &SurfaceMesh, x0: &[f64]) -> Result<f64> {
    let (c, r) = ball_of(ball)?;
    let n = ball.dim;
    let area = boundary_area(mesh)?;
    let off = vector::dist(vector::pad(&c), vector::pad(x0));
    let sigma = sphere_area(n);
    Ok(mesh
        .nodes
        .iter()
        .map(|nd| {
            let d = vector::dist(nd.point, vector::pad(x0));
            let p = (r * r - off * off) / (sigma * r * d.powi(n as i32));
            (area * p - 1.0).abs()
        })
        .fold(0.0, f64::max))
}
