//! Surface integration over meshes, graded near-singular integration and the
//! closed-form self-tests on the sphere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{mesh_boundary_with, DomainSpec, FacetRule, MeshOptions, Shape, SurfaceMesh};
use crate::kernels::{raw, sphere_area, HarmonicFn};
use crate::vector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub levels_used: u32,
    pub converged: bool,
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(p: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; p];
    let mut w = vec![0.0; p];
    for i in 0..p.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (p as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=p {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = p as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[p - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[p - 1 - i] = wi;
    }
    (x, w)
}

/// Neumaier-compensated sum in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for v in it {
        let t = s + v;
        if s.abs() >= v.abs() {
            c += (s - t) + v;
        } else {
            c += (v - t) + s;
        }
        s = t;
    }
    s + c
}

const CHUNK: usize = 256;

/// Gauss-rule integrals of `K` integrands at once. The reduction runs over
/// fixed facet chunks combined in order, so results do not depend on the
/// number of threads.
pub fn integrate_many<const K: usize, F>(mesh: &SurfaceMesh, f: F) -> Result<[f64; K]>
where
    F: Fn(&[f64]) -> [f64; K] + Sync,
{
    let dim = mesh.dim;
    let partials: Vec<std::result::Result<[(f64, f64); K], Error>> = mesh
        .facets
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(ci, chunk)| {
            let mut acc = [(0.0f64, 0.0f64); K];
            for (fi, facet) in chunk.iter().enumerate() {
                for node in &mesh.nodes[facet.first_node..facet.first_node + facet.node_count] {
                    let vals = f(&node.point[..dim]);
                    for k in 0..K {
                        let v = vals[k] * node.weight;
                        if !v.is_finite() {
                            return Err(Error::NonFinite {
                                facet: ci * CHUNK + fi,
                                point: node.point[..dim].to_vec(),
                                value: vals[k],
                            });
                        }
                        let (s, c) = &mut acc[k];
                        let t = *s + v;
                        if s.abs() >= v.abs() {
                            *c += (*s - t) + v;
                        } else {
                            *c += (v - t) + *s;
                        }
                        *s = t;
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut out = [0.0; K];
    let mut parts: Vec<[(f64, f64); K]> = Vec::with_capacity(partials.len());
    for p in partials {
        parts.push(p?);
    }
    for k in 0..K {
        out[k] = compensated_sum(parts.iter().flat_map(|p| [p[k].0, p[k].1]));
    }
    Ok(out)
}

/// `∮ f dσ` with the facet rule of the mesh; the error estimate is the
/// difference to the one-point centroid rule on the same facets.
pub fn integrate<F>(mesh: &SurfaceMesh, f: F) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if mesh.is_empty() {
        return Err(Error::Empty("mesh"));
    }
    let [value] = integrate_many(mesh, |x| [f(x)])?;
    let dim = mesh.dim;
    let mut centroid_vals = Vec::with_capacity(mesh.len());
    for (i, facet) in mesh.facets.iter().enumerate() {
        let v = f(&facet.centroid[..dim]) * facet.area;
        if !v.is_finite() {
            return Err(Error::NonFinite {
                facet: i,
                point: facet.centroid[..dim].to_vec(),
                value: v,
            });
        }
        centroid_vals.push(v);
    }
    let mid = compensated_sum(centroid_vals);
    Ok(IntegralResult {
        value,
        error_estimate: (value - mid).abs(),
        levels_used: 1,
        converged: true,
    })
}

/// `∮ ⟨x, ν⟩ dσ / n`.
pub fn divergence_volume(mesh: &SurfaceMesh) -> f64 {
    let dim = mesh.dim;
    compensated_sum(
        mesh.nodes
            .iter()
            .map(|nd| nd.weight * vector::dot(nd.point, nd.normal) / dim as f64),
    )
}

/// Refinement controls for graded integration near a pole.
#[derive(Clone, Debug)]
pub struct NearSingularOptions {
    pub start_level: u32,
    pub max_level: u32,
    pub rule: FacetRule,
    /// Grading floor as a fraction of `dist(pole, ∂D)`.
    pub floor_ratio: f64,
    /// Extra grading points (e.g. further poles) with their floors.
    pub extra_grading: Vec<(Vec<f64>, f64)>,
}

impl NearSingularOptions {
    pub fn for_dim(dim: usize) -> Self {
        let (start_level, max_level) = if dim == 2 { (1, 6) } else { (0, 3) };
        NearSingularOptions {
            start_level,
            max_level,
            rule: FacetRule::Gauss(crate::defaults::GAUSS_ORDER),
            floor_ratio: 0.25,
            extra_grading: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NearSingularResult<const K: usize> {
    pub values: [f64; K],
    pub error_estimate: f64,
    pub levels_used: u32,
    pub converged: bool,
    pub facets: usize,
}

/// Mesh graded towards the boundary point nearest to `pole`, with floor
/// `floor_ratio · dist(pole, ∂D)`.
pub fn graded_mesh(
    spec: &DomainSpec,
    pole: &[f64],
    level: u32,
    opts: &NearSingularOptions,
) -> Result<SurfaceMesh> {
    if spec.contains(pole) {
        return Err(Error::PoleInsideClosure { pole: pole.to_vec() });
    }
    let z = spec.nearest_boundary_point(pole)?;
    let d = vector::dist(vector::pad(pole), vector::pad(&z));
    if d <= 0.0 {
        return Err(Error::PoleInsideClosure { pole: pole.to_vec() });
    }
    let mut mo = MeshOptions::new(level).rule(opts.rule).graded(&z, opts.floor_ratio * d);
    for (p, h) in &opts.extra_grading {
        mo = mo.graded(p, *h);
    }
    mesh_boundary_with(spec, &mo)
}

/// Integrates `K` integrands on graded meshes of increasing level until the
/// largest componentwise change between consecutive levels is below `tol`.
/// When the cap is reached the result is returned with `converged = false`.
pub fn integrate_near_singular_many<const K: usize, F>(
    spec: &DomainSpec,
    f: F,
    pole: &[f64],
    tol: f64,
    opts: &NearSingularOptions,
) -> Result<NearSingularResult<K>>
where
    F: Fn(&[f64]) -> [f64; K] + Sync,
{
    integrate_near_singular_tols(spec, f, pole, [tol; K], opts)
}

/// As [`integrate_near_singular_many`] with a separate tolerance per component.
/// The reported error estimate is the largest change relative to its tolerance,
/// rescaled by the first tolerance.
pub fn integrate_near_singular_tols<const K: usize, F>(
    spec: &DomainSpec,
    f: F,
    pole: &[f64],
    tols: [f64; K],
    opts: &NearSingularOptions,
) -> Result<NearSingularResult<K>>
where
    F: Fn(&[f64]) -> [f64; K] + Sync,
{
    let mut prev: Option<[f64; K]> = None;
    let mut level = opts.start_level;
    loop {
        let mesh = graded_mesh(spec, pole, level, opts)?;
        let vals = integrate_many(&mesh, &f)?;
        let done = level >= opts.max_level;
        if let Some(p) = prev {
            let worst = (0..K).map(|k| (vals[k] - p[k]).abs() / tols[k]).fold(0.0, f64::max);
            if worst < 1.0 || done {
                return Ok(NearSingularResult {
                    values: vals,
                    error_estimate: worst * tols[0],
                    levels_used: level - opts.start_level + 1,
                    converged: worst < 1.0,
                    facets: mesh.len(),
                });
            }
        } else if done {
            return Ok(NearSingularResult {
                values: vals,
                error_estimate: f64::INFINITY,
                levels_used: 1,
                converged: false,
                facets: mesh.len(),
            });
        }
        prev = Some(vals);
        level += 1;
    }
}

/// Single-integrand form of [`integrate_near_singular_many`].
pub fn integrate_near_singular<F>(spec: &DomainSpec, f: F, pole: &[f64], tol: f64) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let opts = NearSingularOptions::for_dim(spec.dim);
    let r = integrate_near_singular_many(spec, |x| [f(x)], pole, tol, &opts)?;
    Ok(IntegralResult {
        value: r.values[0],
        error_estimate: r.error_estimate,
        levels_used: r.levels_used,
        converged: r.converged,
    })
}

fn adaptive_gauss<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let m = 0.5 * (a + b);
    let left = gauss_on(f, a, m, rule);
    let right = gauss_on(f, m, b, rule);
    if depth == 0 || (left + right - whole).abs() <= tol {
        return left + right;
    }
    adaptive_gauss(f, a, m, left, 0.5 * tol, depth - 1, rule)
        + adaptive_gauss(f, m, b, right, 0.5 * tol, depth - 1, rule)
}

fn gauss_on<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rule: &(Vec<f64>, Vec<f64>)) -> f64 {
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    let terms: Vec<f64> = rule.0.iter().zip(&rule.1).map(|(x, w)| w * f(c + h * x)).collect();
    h * compensated_sum(terms)
}

/// Adaptive Gauss-Legendre quadrature of a smooth function on `[a, b]`.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let rule = gauss_legendre(10);
    let whole = gauss_on(&f, a, b, &rule);
    adaptive_gauss(&f, a, b, whole, tol, 40, &rule)
}

/// Upper end of the truncated range; the tail `∫_S^∞ s^{-2} ds = 1/S` is below 1e-12.
pub const RATIO_CUTOFF: f64 = 1.0e12;

/// Relative residual of `2 σ_{n-1} ∫₀^∞ s^{n-2} (1+s²)^{-n/2} ds = σ_n`.
///
/// The integral is computed on dyadic pieces of `[0, S]`; the tail beyond `S`
/// is added as its leading term `1/S`.
pub fn sphere_ratio_identity(n: usize) -> f64 {
    let f = |s: f64| s.powi(n as i32 - 2) / (1.0 + s * s).powf(0.5 * n as f64);
    let mut pieces = vec![0.0];
    let mut b = 1.0;
    while b < RATIO_CUTOFF {
        pieces.push(b);
        b *= 2.0;
    }
    pieces.push(RATIO_CUTOFF);
    let parts: Vec<f64> = pieces
        .windows(2)
        .map(|w| integrate_1d(f, w[0], w[1], 1e-16))
        .collect();
    let integral = compensated_sum(parts) + 1.0 / RATIO_CUTOFF;
    let lhs = 2.0 * sphere_area(n - 1) * integral;
    (lhs - sphere_area(n)).abs() / sphere_area(n)
}

fn ball_params(ball: &DomainSpec) -> Result<(Vec<f64>, f64)> {
    match &ball.shape {
        Shape::Ball { center, radius } => Ok((center.clone(), *radius)),
        _ => Err(Error::InvalidDomain("a ball is required".into())),
    }
}

/// `|fint f dσ - f(center)| / (1 + |f(center)|)` on a mesh of the ball.
pub fn ball_mean_value_residual(f: &HarmonicFn, ball: &DomainSpec, mesh: &SurfaceMesh) -> Result<f64> {
    let (center, radius) = ball_params(ball)?;
    f.validate(ball.dim)?;
    if let Some(s) = f.singular_point(ball.dim) {
        let d = vector::dist(vector::pad(&s), vector::pad(&center));
        if d <= radius {
            return Err(Error::PoleInsideClosure { pole: s });
        }
    }
    let [area, total] = integrate_many(mesh, |x| [1.0, f.eval_unchecked(x)])?;
    let fc = f.eval(&center)?;
    Ok((total / area - fc).abs() / (1.0 + fc.abs()))
}

/// `|∮ h_α(x - c) dσ + σ_n r^{n-1}| / (σ_n r^{n-1})` for a ball `B(c, r)` and `|α| > r`.
pub fn ball_poisson_mass(alpha: &[f64], ball: &DomainSpec, mesh: &SurfaceMesh) -> Result<f64> {
    let (center, radius) = ball_params(ball)?;
    let a = vector::norm(vector::pad(alpha));
    if a <= radius {
        return Err(Error::InvalidPole);
    }
    let n = ball.dim;
    let [total] = integrate_many(mesh, |x| {
        let y: Vec<f64> = x.iter().zip(&center).map(|(p, c)| p - c).collect();
        [raw::kuran_h(alpha, &y)]
    })?;
    let mass = sphere_area(n) * radius.powi(n as i32 - 1);
    Ok((total + mass).abs() / mass)
}
