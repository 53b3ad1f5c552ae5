//! Kuran gaps, `h*`, Gauss-gap lower bounds and the inequalities between them.
//!
//! All quantities are computed after recentering at `x₀`: the Kuran function
//! for a pole `α` is `x ↦ k_{α - x₀}(x - x₀)`, which vanishes at `x₀`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::extrapolate::{estimate_limit, LimitMethod, Side};
use crate::geometry::{
    boundary_area, inradius_touching, isoperimetric_quantities, mesh_boundary, DomainSpec, TouchingPoint,
};
use crate::kernels::{harmonic_dictionary, raw, HarmonicFn};
use crate::quadrature::{integrate_many, integrate_near_singular_tols, NearSingularOptions};
use crate::report::{float_or_inf, Relation, VerificationReport};
use crate::vector;

/// Smallest admissible `t - 1` on a schedule.
pub const MIN_POLE_DISTANCE: f64 = 1e-9;

/// Radial pole sequence `α_k = x₀ + t_k (z - x₀)`, `t_k = 1 + (t₀ - 1) q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproachSchedule {
    pub t0: f64,
    pub q: f64,
    pub count: usize,
}

impl Default for ApproachSchedule {
    fn default() -> Self {
        ApproachSchedule {
            t0: defaults::SCHEDULE_T0,
            q: defaults::SCHEDULE_Q,
            count: defaults::SCHEDULE_COUNT,
        }
    }
}

impl ApproachSchedule {
    pub fn new(t0: f64, q: f64, count: usize) -> Result<Self> {
        let s = ApproachSchedule { t0, q, count };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 1.0) || !(self.q > 0.0 && self.q < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "schedule needs t0 > 1 and 0 < q < 1, got t0={} q={}",
                self.t0, self.q
            )));
        }
        if self.count < 4 {
            return Err(Error::InvalidParameter(format!(
                "schedule needs at least 4 poles, got {}",
                self.count
            )));
        }
        let last = (self.t0 - 1.0) * self.q.powi(self.count as i32 - 1);
        if !(last > MIN_POLE_DISTANCE) {
            return Err(Error::InvalidParameter(format!(
                "closest pole at t - 1 = {last:e} is below {MIN_POLE_DISTANCE:e}"
            )));
        }
        Ok(())
    }

    pub fn ts(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| 1.0 + (self.t0 - 1.0) * self.q.powi(k as i32))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct GapOptions {
    pub schedule: ApproachSchedule,
    /// Level-to-level tolerance on `fint k_α`.
    pub sample_tol: f64,
    /// Level-to-level tolerance on `fint |k_α|` and `fint |h_α|`, whose
    /// integrands have kinks and converge more slowly.
    pub abs_sample_tol: f64,
    pub extrapolation_tol: f64,
    pub near: NearSingularOptions,
}

impl GapOptions {
    pub fn for_dim(dim: usize) -> Self {
        GapOptions {
            schedule: ApproachSchedule::default(),
            sample_tol: defaults::SAMPLE_TOL,
            abs_sample_tol: defaults::SAMPLE_TOL,
            extrapolation_tol: defaults::EXTRAPOLATION_TOL,
            near: NearSingularOptions::for_dim(dim),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    #[serde(with = "float_or_inf")]
    pub value: f64,
}

/// Sampled values along a schedule plus the estimated limit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapEstimate {
    pub samples: Vec<Sample>,
    #[serde(with = "float_or_inf")]
    pub extrapolated: f64,
    pub converged: bool,
    pub method: LimitMethod,
    pub error: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<f64>>,
    #[serde(default)]
    pub flags: Vec<String>,
}

impl GapEstimate {
    fn sentinel(flag: &str) -> Self {
        GapEstimate {
            samples: Vec::new(),
            extrapolated: f64::INFINITY,
            converged: false,
            method: LimitMethod::Sentinel,
            error: 0.0,
            z: None,
            flags: vec![flag.to_string()],
        }
    }

    fn from_series(ts: &[f64], values: &[f64], tol: f64, side: Side, z: &[f64], quad_ok: bool) -> Result<Self> {
        // averages of |h_α| pick up half-integer powers of t - 1 from the
        // shrinking region where ∂D dips inside the pole sphere
        let deltas: Vec<f64> = ts.iter().map(|t| (t - 1.0).sqrt()).collect();
        let lim = estimate_limit(&deltas, values, tol, side)?;
        let mut flags = Vec::new();
        if !quad_ok {
            flags.push("quadrature_not_converged".to_string());
        }
        if !lim.converged {
            flags.push("extrapolation_not_converged".to_string());
        }
        Ok(GapEstimate {
            samples: ts.iter().zip(values).map(|(&t, &value)| Sample { t, value }).collect(),
            extrapolated: lim.value,
            converged: lim.converged && quad_ok,
            method: lim.method,
            error: lim.error,
            z: Some(z.to_vec()),
            flags,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Boundary averages at one pole of the schedule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproachSample {
    pub t: f64,
    pub mean_k: f64,
    pub mean_abs_k: f64,
    pub mean_abs_h: f64,
    pub converged: bool,
    pub levels: u32,
    pub facets: usize,
}

impl ApproachSample {
    /// `|fint k_α| / fint |k_α|`.
    pub fn kuran_ratio(&self) -> f64 {
        self.mean_k.abs() / self.mean_abs_k
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproachScan {
    pub x0: Vec<f64>,
    pub z: Vec<f64>,
    pub samples: Vec<ApproachSample>,
}

impl ApproachScan {
    pub fn ts(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn all_converged(&self) -> bool {
        self.samples.iter().all(|s| s.converged)
    }
}

fn check_point(spec: &DomainSpec, p: &[f64], what: &'static str) -> Result<()> {
    if p.len() != spec.dim {
        return Err(Error::InvalidParameter(format!(
            "{what} has dimension {}, expected {}",
            p.len(),
            spec.dim
        )));
    }
    Ok(())
}

/// Surface-area scale used to turn per-average tolerances into integral tolerances.
fn area_scale(spec: &DomainSpec) -> Result<f64> {
    boundary_area(&mesh_boundary(spec, 0, None)?)
}

/// Evaluates `fint k_α`, `fint |k_α|`, `fint |h_α|` along the schedule towards `z`.
pub fn approach_scan(spec: &DomainSpec, x0: &[f64], z: &[f64], opts: &GapOptions) -> Result<ApproachScan> {
    opts.schedule.validate()?;
    check_point(spec, x0, "x0")?;
    check_point(spec, z, "z")?;
    if !spec.contains(x0) {
        return Err(Error::OutsideDomain { point: x0.to_vec() });
    }
    let n = spec.dim;
    let area = area_scale(spec)?;
    let tol = opts.sample_tol * area;
    let abs_tol = opts.abs_sample_tol.max(opts.sample_tol) * area;
    let ts = opts.schedule.ts();
    let samples: Result<Vec<ApproachSample>> = ts
        .par_iter()
        .map(|&t| {
            let rel: Vec<f64> = (0..n).map(|i| t * (z[i] - x0[i])).collect();
            let pole: Vec<f64> = (0..n).map(|i| x0[i] + rel[i]).collect();
            if spec.contains(&pole) {
                return Err(Error::PoleInsideClosure { pole });
            }
            let f = |x: &[f64]| {
                let mut y = [0.0; 3];
                for i in 0..n {
                    y[i] = x[i] - x0[i];
                }
                let h = raw::kuran_h(&rel, &y[..n]);
                [1.0, 1.0 + h, (1.0 + h).abs(), h.abs()]
            };
            let r = integrate_near_singular_tols(spec, f, &pole, [tol, tol, abs_tol, abs_tol], &opts.near)?;
            let [a, k, ak, ah] = r.values;
            Ok(ApproachSample {
                t,
                mean_k: k / a,
                mean_abs_k: ak / a,
                mean_abs_h: ah / a,
                converged: r.converged,
                levels: r.levels_used,
                facets: r.facets,
            })
        })
        .collect();
    Ok(ApproachScan {
        x0: x0.to_vec(),
        z: z.to_vec(),
        samples: samples?,
    })
}

/// `L(z)`, `L*(z)` and the Kuran-ratio tail for one touching candidate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateLimits {
    pub z: Vec<f64>,
    pub class: usize,
    pub l: GapEstimate,
    pub lstar: GapEstimate,
    /// `min_k r_k` over the last three poles.
    pub ratio_tail_min: f64,
    /// `max_k r_k` over the whole schedule.
    pub ratio_max: f64,
}

pub fn candidate_limits(spec: &DomainSpec, x0: &[f64], z: &TouchingPoint, opts: &GapOptions) -> Result<CandidateLimits> {
    let scan = approach_scan(spec, x0, &z.z, opts)?;
    let ts = scan.ts();
    let ok = scan.all_converged();
    let lv: Vec<f64> = scan.samples.iter().map(|s| s.mean_k.abs()).collect();
    let hv: Vec<f64> = scan.samples.iter().map(|s| s.mean_abs_h).collect();
    let ratios: Vec<f64> = scan.samples.iter().map(|s| s.kuran_ratio()).collect();
    let tail = &ratios[ratios.len().saturating_sub(3)..];
    Ok(CandidateLimits {
        z: z.z.clone(),
        class: z.class,
        l: GapEstimate::from_series(&ts, &lv, opts.extrapolation_tol, Side::Lower, &z.z, ok)?,
        lstar: GapEstimate::from_series(&ts, &hv, opts.extrapolation_tol, Side::Upper, &z.z, ok)?,
        ratio_tail_min: tail.iter().cloned().fold(f64::INFINITY, f64::min),
        ratio_max: ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    })
}

/// `L(z) = liminf |fint k_α|` as `α → z` radially.
pub fn l_of_z(spec: &DomainSpec, x0: &[f64], z: &TouchingPoint, opts: &GapOptions) -> Result<GapEstimate> {
    Ok(candidate_limits(spec, x0, z, opts)?.l)
}

/// `L*(z) = limsup fint |h_α|` as `α → z` radially.
pub fn lstar_of_z(spec: &DomainSpec, x0: &[f64], z: &TouchingPoint, opts: &GapOptions) -> Result<GapEstimate> {
    Ok(candidate_limits(spec, x0, z, opts)?.lstar)
}

/// Limits for every candidate class, with the infima `K` and `h*`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapAnalysis {
    pub candidates: Vec<CandidateLimits>,
    pub kuran: GapEstimate,
    pub hstar: GapEstimate,
}

fn infimum(items: &[&GapEstimate]) -> GapEstimate {
    let mut best = (*items
        .iter()
        .min_by(|a, b| a.extrapolated.total_cmp(&b.extrapolated))
        .expect("non-empty"))
    .clone();
    for g in items {
        best.flags.extend(g.flags.iter().cloned());
    }
    best.flags.sort();
    best.flags.dedup();
    best.converged = items.iter().all(|g| g.converged);
    best
}

/// Evaluates `L` and `L*` once per symmetry class of Dini-asserted candidates.
pub fn analyze(spec: &DomainSpec, x0: &[f64], candidates: &[TouchingPoint], opts: &GapOptions) -> Result<GapAnalysis> {
    let mut reps: Vec<&TouchingPoint> = Vec::new();
    for c in candidates {
        if c.dini_asserted && !reps.iter().any(|r| r.class == c.class) {
            reps.push(c);
        }
    }
    if reps.is_empty() {
        return Ok(GapAnalysis {
            candidates: Vec::new(),
            kuran: GapEstimate::sentinel("empty_touching_set"),
            // mirrors the convention K = +inf for an empty touching set
            hstar: GapEstimate::sentinel("empty_touching_set_convention"),
        });
    }
    let limits: Vec<CandidateLimits> = reps
        .iter()
        .map(|z| candidate_limits(spec, x0, z, opts))
        .collect::<Result<_>>()?;
    let kuran = infimum(&limits.iter().map(|c| &c.l).collect::<Vec<_>>());
    let hstar = infimum(&limits.iter().map(|c| &c.lstar).collect::<Vec<_>>());
    Ok(GapAnalysis {
        candidates: limits,
        kuran,
        hstar,
    })
}

/// `K(∂D, x₀) = inf_z L(z)`; `+∞` when no Dini-asserted candidate exists.
pub fn kuran_gap(spec: &DomainSpec, x0: &[f64], candidates: &[TouchingPoint], opts: &GapOptions) -> Result<GapEstimate> {
    Ok(analyze(spec, x0, candidates, opts)?.kuran)
}

/// `h*(∂D, x₀) = inf_z L*(z)`; `+∞` by convention when no candidate exists.
pub fn hstar(spec: &DomainSpec, x0: &[f64], candidates: &[TouchingPoint], opts: &GapOptions) -> Result<GapEstimate> {
    Ok(analyze(spec, x0, candidates, opts)?.hstar)
}

/// Convenience: touching candidates from [`inradius_touching`] followed by [`analyze`].
pub fn analyze_at(spec: &DomainSpec, x0: &[f64], opts: &GapOptions) -> Result<GapAnalysis> {
    let t = inradius_touching(spec, x0)?;
    analyze(spec, x0, &t.candidates, opts)
}

fn frame_rotation(spec: &DomainSpec) -> Vec<f64> {
    let n = spec.dim;
    let r = spec.frame().rotation;
    (0..n * n).map(|k| r[k / n][k % n]).collect()
}

/// Default lower-bound dictionary, expressed in the frame of the domain about `x₀`
/// so that it moves with translations, rotations and dilations.
///
/// Harmonic polynomials up to degree 4, fundamental solutions with poles on a
/// sphere of twice the circumradius, Kuran functions towards each touching
/// candidate, and the cone function for beaked domains.
pub fn default_dictionary(spec: &DomainSpec, x0: &[f64], candidates: &[TouchingPoint]) -> Vec<HarmonicFn> {
    let n = spec.dim;
    let frame = spec.frame();
    let rot = frame_rotation(spec);
    let scale = frame.scale;
    let local = |p: &[f64]| -> Vec<f64> {
        let d = vector::sub(vector::pad(p), vector::pad(x0));
        let y = vector::mat_t_vec(&frame.rotation, d);
        y[..n].iter().map(|v| v / scale).collect()
    };
    let mut out: Vec<HarmonicFn> = harmonic_dictionary(n, defaults::DICTIONARY_MAX_DEGREE)
        .into_iter()
        .map(|p| HarmonicFn::monomial(p).in_frame(x0, Some(rot.clone()), scale))
        .collect();

    let radius = defaults::DICTIONARY_GAMMA_RADIUS * spec.circumradius_about(x0) / scale;
    let dirs: Vec<Vec<f64>> = if n == 2 {
        (0..8)
            .map(|k| {
                let a = k as f64 * std::f64::consts::FRAC_PI_4;
                vec![a.cos(), a.sin()]
            })
            .collect()
    } else {
        let mut d = Vec::new();
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; 3];
                e[i] = s;
                d.push(e);
            }
        }
        let c = 1.0 / 3f64.sqrt();
        for k in 0..8 {
            d.push((0..3).map(|i| if k >> i & 1 == 1 { -c } else { c }).collect());
        }
        d
    };
    for d in dirs {
        let pole: Vec<f64> = d.iter().map(|v| radius * v).collect();
        out.push(HarmonicFn::fundamental(&pole).in_frame(x0, Some(rot.clone()), scale));
    }

    let mut classes = Vec::new();
    for c in candidates {
        if !c.dini_asserted || classes.contains(&c.class) {
            continue;
        }
        classes.push(c.class);
        let yz = local(&c.z);
        for t in defaults::DICTIONARY_KURAN_T {
            let alpha: Vec<f64> = yz.iter().map(|v| t * v).collect();
            out.push(HarmonicFn::kuran_k(&alpha).in_frame(x0, Some(rot.clone()), scale));
        }
    }

    if let Some(g) = spec.beak() {
        out.push(HarmonicFn::ConeU.in_frame(&g.apex()[..n], None, 1.0));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussLower {
    pub value: f64,
    pub best: String,
    pub ratios: Vec<(String, f64)>,
    pub flags: Vec<String>,
}

/// `|u(x₀) - fint u| / fint |u|` for one harmonic function.
pub fn gauss_ratio_of(spec: &DomainSpec, x0: &[f64], u: &HarmonicFn, opts: &GapOptions) -> Result<(f64, bool)> {
    let n = spec.dim;
    u.validate(n)?;
    let ux0 = u.eval(x0)?;
    let f = |x: &[f64]| {
        let v = u.eval_unchecked(x);
        [1.0, v, v.abs()]
    };
    let scale = spec.frame().scale;
    let near = match u.singular_point(n) {
        Some(s) => {
            if spec.contains(&s) {
                return Err(Error::PoleInsideClosure { pole: s });
            }
            let zb = spec.nearest_boundary_point(&s)?;
            let d = vector::dist(vector::pad(&s), vector::pad(&zb));
            if d <= 0.0 {
                return Err(Error::PoleInsideClosure { pole: s });
            }
            (d < 0.5 * scale).then_some(s)
        }
        None => None,
    };
    let (vals, ok) = match near {
        Some(s) => {
            let tol = opts.sample_tol * area_scale(spec)?;
            let abs_tol = opts.abs_sample_tol.max(opts.sample_tol) * area_scale(spec)?;
            let r = integrate_near_singular_tols(spec, f, &s, [tol, tol, abs_tol], &opts.near)?;
            (r.values, r.converged)
        }
        None => {
            let mesh = mesh_boundary(spec, defaults::production_level(n), None)?;
            (integrate_many(&mesh, f)?, true)
        }
    };
    let [a, s, sa] = vals;
    Ok(((ux0 - s / a).abs() / (sa / a), ok))
}

/// Lower bound for the surface Gauss gap: the largest sampled ratio over the dictionary.
pub fn gauss_gap_lower(spec: &DomainSpec, x0: &[f64], dictionary: &[HarmonicFn], opts: &GapOptions) -> Result<GaussLower> {
    if dictionary.is_empty() {
        return Err(Error::Empty("dictionary"));
    }
    check_point(spec, x0, "x0")?;
    if !spec.contains(x0) {
        return Err(Error::OutsideDomain { point: x0.to_vec() });
    }
    let results: Vec<(f64, bool)> = dictionary
        .par_iter()
        .map(|u| gauss_ratio_of(spec, x0, u, opts))
        .collect::<Result<_>>()?;
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.0 > results[best].0 {
            best = i;
        }
    }
    let mut flags = Vec::new();
    if results.iter().any(|r| !r.1) {
        flags.push("quadrature_not_converged".to_string());
    }
    Ok(GaussLower {
        value: results[best].0,
        best: dictionary[best].label(),
        ratios: dictionary.iter().zip(&results).map(|(u, r)| (u.label(), r.0)).collect(),
        flags,
    })
}

fn with_flags(mut r: VerificationReport, est: &GapEstimate) -> VerificationReport {
    for f in &est.flags {
        r = r.flag(f.clone());
    }
    r
}

/// `K ≥ (|∂D| - |∂B|) / |∂D|`.
pub fn verify_thm12(spec: &DomainSpec, x0: &[f64], opts: &GapOptions, tol: f64) -> Result<VerificationReport> {
    let a = analyze_at(spec, x0, opts)?;
    verify_thm12_with(spec, x0, &a, tol)
}

pub fn verify_thm12_with(spec: &DomainSpec, x0: &[f64], a: &GapAnalysis, tol: f64) -> Result<VerificationReport> {
    let mesh = mesh_boundary(spec, defaults::production_level(spec.dim), None)?;
    let q = isoperimetric_quantities(spec, x0, &mesh)?;
    let r = VerificationReport::new("kuran_gap_vs_deficit", Relation::AtLeast, a.kuran.extrapolated, q.deficit_ratio, tol)
        .sources("Kuran gap K (extrapolated)", "(|dD| - |dB|) / |dD|")
        .detail("boundary_area", q.boundary_area)
        .detail("ball_area", q.ball_area);
    Ok(with_flags(r, &a.kuran))
}

/// `K ≥ (n-1) ω_n^{1/n} |D∖B| / (|D|^{1/n} |∂D|)`.
pub fn verify_cor13(spec: &DomainSpec, x0: &[f64], opts: &GapOptions, tol: f64) -> Result<VerificationReport> {
    let a = analyze_at(spec, x0, opts)?;
    verify_cor13_with(spec, x0, &a, tol)
}

pub fn verify_cor13_with(spec: &DomainSpec, x0: &[f64], a: &GapAnalysis, tol: f64) -> Result<VerificationReport> {
    let mesh = mesh_boundary(spec, defaults::production_level(spec.dim), None)?;
    let q = isoperimetric_quantities(spec, x0, &mesh)?;
    let r = VerificationReport::new("kuran_gap_vs_solid_deficit", Relation::AtLeast, a.kuran.extrapolated, q.solid_ratio, tol)
        .sources("Kuran gap K (extrapolated)", "(n-1) w^(1/n) |D\\B| / (|D|^(1/n) |dD|)")
        .detail("volume", q.volume)
        .detail("ball_volume", q.ball_volume);
    Ok(with_flags(r, &a.kuran))
}

/// Consistency of the Gauss-gap lower bound with `K / (1 + h*)` and with
/// `deficit / (1 + h*)`, plus the Kuran-ratio tail against `L / (1 + L*)`.
pub fn verify_prop32(spec: &DomainSpec, x0: &[f64], opts: &GapOptions, tol: f64) -> Result<VerificationReport> {
    let t = inradius_touching(spec, x0)?;
    let a = analyze(spec, x0, &t.candidates, opts)?;
    verify_prop32_with(spec, x0, &t.candidates, &a, opts, tol)
}

pub fn verify_prop32_with(
    spec: &DomainSpec,
    x0: &[f64],
    candidates: &[TouchingPoint],
    a: &GapAnalysis,
    opts: &GapOptions,
    tol: f64,
) -> Result<VerificationReport> {
    let mesh = mesh_boundary(spec, defaults::production_level(spec.dim), None)?;
    let q = isoperimetric_quantities(spec, x0, &mesh)?;
    let dict = default_dictionary(spec, x0, candidates);
    let g = gauss_gap_lower(spec, x0, &dict, opts)?;
    // the schedule poles are Kuran functions too, so their ratios join the dictionary
    let kuran_max = a.candidates.iter().map(|c| c.ratio_max).fold(0.0, f64::max);
    let lower = g.value.max(kuran_max);
    let hs = a.hstar.extrapolated;

    let mut parts = Vec::new();
    for c in &a.candidates {
        let rhs = c.l.extrapolated / (1.0 + c.lstar.extrapolated);
        parts.push(with_flags(
            VerificationReport::new("kuran_ratio_tail", Relation::AtLeast, c.ratio_tail_min, rhs, tol)
                .sources("tail min |fint k| / fint |k|", "L / (1 + L*)"),
            &c.l,
        ));
    }
    let k_rhs = a.kuran.extrapolated / (1.0 + hs);
    parts.push(with_flags(
        VerificationReport::new("gauss_lower_vs_kuran", Relation::AtLeast, lower, k_rhs, tol)
            .sources("Gauss-gap lower bound", "K / (1 + h*)"),
        &a.kuran,
    ));
    let d_rhs = q.deficit_ratio / (1.0 + hs);
    parts.push(with_flags(
        VerificationReport::new("gauss_lower_vs_deficit", Relation::AtLeast, lower, d_rhs, tol)
            .sources("Gauss-gap lower bound", "deficit / (1 + h*)"),
        &a.hstar,
    ));
    let mut r = VerificationReport::all("gauss_gap_consistency", &parts);
    for f in &g.flags {
        r = r.flag(f.clone());
    }
    Ok(r.detail("gauss_lower", lower).detail("hstar", hs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        let s = ApproachSchedule::default();
        let ts = s.ts();
        assert_eq!(ts.len(), 8);
        assert!((ts[0] - 1.2).abs() < 1e-15);
        assert!((ts[1] - 1.1).abs() < 1e-15);
        assert!(ts.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0));
        assert!(ApproachSchedule::new(1.2, 0.5, 3).is_err());
        assert!(ApproachSchedule::new(1.0, 0.5, 8).is_err());
    }

    #[test]
    fn empty_candidates_give_sentinel() {
        let ball = DomainSpec::unit_ball(2);
        let opts = GapOptions::for_dim(2);
        let k = kuran_gap(&ball, &[0.0, 0.0], &[], &opts).unwrap();
        assert!(k.extrapolated.is_infinite());
        assert_eq!(k.method, LimitMethod::Sentinel);
        let json = k.to_json().unwrap();
        assert!(json.contains("\"inf\""));
        let h = hstar(&ball, &[0.0, 0.0], &[], &opts).unwrap();
        assert!(h.flags.iter().any(|f| f.contains("convention")));
    }

    #[test]
    fn dictionary_is_harmonic_on_closure() {
        let sp = DomainSpec::spheroid(&[0.0, 0.0], &[1.2, 1.0]);
        let t = inradius_touching(&sp, &[0.0, 0.0]).unwrap();
        for u in default_dictionary(&sp, &[0.0, 0.0], &t.candidates) {
            if let Some(s) = u.singular_point(2) {
                assert!(!sp.contains(&s), "{}", u.label());
            }
        }
    }
}
