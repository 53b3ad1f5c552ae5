//! The beaked-sphere family: exact pieces, area asymptotics, the cone-function
//! Gauss ratio, the piece decomposition of `∮ u` and the Kuran-gap sweep.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{Error, Result};
use crate::extrapolate::{fit_power_law, neville_at_zero, PowerFit};
use crate::gaps::{candidate_limits, GapEstimate, GapOptions};
use crate::geometry::{
    boundary_area, inradius_touching, mesh_boundary_with, BeakGeometry, DomainSpec, MeshOptions, Piece, SurfaceMesh,
};
use crate::kernels::{raw, sphere_area, HarmonicFn, HarmonicPoly};
use crate::quadrature::integrate_many;
use crate::report::{Relation, VerificationReport};
use crate::vector;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceAreas {
    pub sigma: f64,
    pub sigma_star: f64,
    pub lateral: f64,
    pub sphere_remainder: f64,
    pub total: f64,
}

/// Geometry of `D(ε)` with labelled piece meshes.
#[derive(Clone, Debug)]
pub struct BeakedPieces {
    pub geometry: BeakGeometry,
    /// `x(ε)` in the coordinates of the spec (the origin when recentered).
    pub x_eps: Vec<f64>,
    /// Boundary pieces plus Σ_ε.
    pub mesh: SurfaceMesh,
    pub analytic: PieceAreas,
    pub measured: PieceAreas,
}

impl BeakedPieces {
    pub fn piece(&self, p: Piece) -> SurfaceMesh {
        self.mesh.submesh(&[p])
    }

    /// `∂D(ε)` without Σ_ε.
    pub fn boundary(&self) -> SurfaceMesh {
        self.mesh
            .submesh(&[Piece::SphereRemainder, Piece::SigmaStar, Piece::Lateral])
    }
}

fn analytic_areas(g: &BeakGeometry) -> PieceAreas {
    PieceAreas {
        sigma: g.sigma_area(),
        sigma_star: g.sigma_star_area(),
        lateral: g.lateral_area(),
        sphere_remainder: g.sphere_remainder_area(),
        total: g.boundary_area(),
    }
}

fn measured_areas(mesh: &SurfaceMesh) -> PieceAreas {
    let sr = mesh.piece_area(Piece::SphereRemainder);
    let ss = mesh.piece_area(Piece::SigmaStar);
    let lat = mesh.piece_area(Piece::Lateral);
    PieceAreas {
        sigma: mesh.piece_area(Piece::Sigma),
        sigma_star: ss,
        lateral: lat,
        sphere_remainder: sr,
        total: sr + ss + lat,
    }
}

pub fn beaked_mesh(spec: &DomainSpec, level: u32) -> Result<SurfaceMesh> {
    let mut opts = MeshOptions::new(level);
    opts.include_sigma = true;
    mesh_boundary_with(spec, &opts)
}

/// Builds `D(ε)` (or `D̂(ε) = D(ε) - x(ε)` when `recentered`) and meshes every piece.
pub fn build_beaked(eps: f64, m: u32, n: usize, recentered: bool) -> Result<(DomainSpec, BeakedPieces)> {
    let spec = DomainSpec::beaked(n, eps, m, recentered);
    spec.validate()?;
    let g = spec.beak().expect("beaked");
    let mesh = beaked_mesh(&spec, defaults::production_level(n))?;
    let pieces = BeakedPieces {
        geometry: g,
        x_eps: g.ball_center()[..n].to_vec(),
        analytic: analytic_areas(&g),
        measured: measured_areas(&mesh),
        mesh,
    };
    Ok((spec, pieces))
}

pub fn piece_areas(eps: f64, m: u32, n: usize) -> Result<(PieceAreas, PieceAreas)> {
    let (_, p) = build_beaked(eps, m, n, false)?;
    Ok((p.analytic, p.measured))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Containment {
    pub samples: usize,
    /// Points of `B(ε)` found outside `D(ε)`.
    pub inner_violations: usize,
    /// Points of `D(ε)` found outside `B*(ε)`.
    pub outer_violations: usize,
}

/// Checks `B(ε) ⊆ D(ε) ⊆ B*(ε)` on a regular lattice of about `samples` points
/// covering `B*(ε)`, refined near the beak.
pub fn containment_check(g: &BeakGeometry, samples: usize) -> Containment {
    let n = g.n;
    let per_axis = (samples as f64).powf(1.0 / n as f64).ceil() as usize;
    let c = g.ball_center();
    let mut count = 0;
    let mut inner = 0;
    let mut outer = 0;
    let mut visit = |p: vector::Vec3| {
        count += 1;
        let in_d = g.contains(p);
        let in_b = vector::dist(p, c) < 1.0;
        if in_b && !in_d {
            inner += 1;
        }
        if in_d && !g.in_outer_ball(p) {
            outer += 1;
        }
    };
    for (center, half) in [(c, g.c), (g.apex(), 4.0 * g.rho1)] {
        let step = 2.0 * half / per_axis as f64;
        let idx = |i: usize| -half + (i as f64 + 0.5) * step;
        for i in 0..per_axis {
            for j in 0..per_axis {
                if n == 2 {
                    visit([center[0] + idx(i), center[1] + idx(j), 0.0]);
                } else {
                    for k in 0..per_axis {
                        visit([center[0] + idx(i), center[1] + idx(j), center[2] + idx(k)]);
                    }
                }
            }
        }
    }
    Containment {
        samples: count,
        inner_violations: inner,
        outer_violations: outer,
    }
}

/// Largest value of `|x₁²/|x|² - 1/n|` over the quadrature nodes of S_ε;
/// `u` vanishes on S_ε exactly when this does.
pub fn cone_residual_on_lateral(p: &BeakedPieces) -> f64 {
    let n = p.geometry.n;
    let apex = p.geometry.apex();
    p.piece(Piece::Lateral)
        .nodes
        .iter()
        .map(|nd| {
            let y = vector::sub(nd.point, apex);
            let r2 = vector::dot(y, y);
            (y[0] * y[0] / r2 - 1.0 / n as f64).abs()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaDeficitSweep {
    pub n: usize,
    pub m: u32,
    pub eps: Vec<f64>,
    /// `|∂D(ε)| - |∂B(ε)|` from the meshes.
    pub deficit: Vec<f64>,
    /// `|Σ*_ε| / ε^{m(n-1)}`, which must not depend on ε.
    pub star_ratio: Vec<f64>,
    pub fit: PowerFit,
    /// `lim (|S_ε| - |Σ_ε|) / ε^{n-1}` extrapolated from the three smallest ε.
    pub alpha0_extrapolated: f64,
    /// `|S₀| - |Σ₀|`.
    pub alpha0_analytic: f64,
}

pub fn alpha0(n: usize) -> f64 {
    let (s0, g0) = BeakGeometry::leading_coefficients(n);
    s0 - g0
}

pub fn area_deficit_sweep(eps: &[f64], m: u32, n: usize) -> Result<AreaDeficitSweep> {
    if eps.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "area deficit sweep needs at least 4 values of eps, got {}",
            eps.len()
        )));
    }
    let rows: Vec<(f64, f64, f64)> = eps
        .par_iter()
        .map(|&e| {
            let (_, p) = build_beaked(e, m, n, false)?;
            let a = p.measured;
            let deficit = a.total - sphere_area(n);
            let star = a.sigma_star / e.powi((m * (n as u32 - 1)) as i32);
            let smooth = (a.lateral - a.sigma) / e.powi(n as i32 - 1);
            Ok((deficit, star, smooth))
        })
        .collect::<Result<_>>()?;
    let deficit: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let fit = fit_power_law(eps, &deficit)?;
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&a, &b| eps[a].total_cmp(&eps[b]));
    let xs: Vec<f64> = order[..3].iter().map(|&i| eps[i]).collect();
    let ys: Vec<f64> = order[..3].iter().map(|&i| rows[i].2).collect();
    Ok(AreaDeficitSweep {
        n,
        m,
        eps: eps.to_vec(),
        deficit,
        star_ratio: rows.iter().map(|r| r.1).collect(),
        fit,
        alpha0_extrapolated: neville_at_zero(&xs, &ys),
        alpha0_analytic: alpha0(n),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioResult {
    pub value: f64,
    /// Change from the next coarser level.
    pub error_estimate: f64,
}

fn ratio_on(mesh: &SurfaceMesh, u: &HarmonicFn, x0: &[f64]) -> Result<f64> {
    let [a, s, sa] = integrate_many(mesh, |x| {
        let v = u.eval_unchecked(x);
        [1.0, v, v.abs()]
    })?;
    Ok((u.eval(x0)? - s / a).abs() / (sa / a))
}

fn ratio_two_levels(spec: &DomainSpec, u: &HarmonicFn, x0: &[f64], pieces: &[Piece]) -> Result<RatioResult> {
    let level = defaults::production_level(spec.dim);
    let fine = beaked_mesh(spec, level)?.submesh(pieces);
    let coarse = beaked_mesh(spec, level - 1)?.submesh(pieces);
    let v = ratio_on(&fine, u, x0)?;
    Ok(RatioResult {
        value: v,
        error_estimate: (v - ratio_on(&coarse, u, x0)?).abs(),
    })
}

const BOUNDARY: [Piece; 3] = [Piece::SphereRemainder, Piece::SigmaStar, Piece::Lateral];

/// `|u(x(ε)) - fint_{∂D(ε)} u| / fint_{∂D(ε)} |u|` for the cone function `u`.
pub fn gauss_ratio(eps: f64, m: u32, n: usize) -> Result<RatioResult> {
    let spec = DomainSpec::beaked(n, eps, m, false);
    spec.validate()?;
    let x0 = spec.beak().expect("beaked").ball_center();
    ratio_two_levels(&spec, &HarmonicFn::ConeU, &x0[..n], &BOUNDARY)
}

/// The same ratio for the coordinate function `x₁`, which stays of deficit size.
pub fn gauss_ratio_linear_control(eps: f64, m: u32, n: usize) -> Result<RatioResult> {
    let spec = DomainSpec::beaked(n, eps, m, false);
    spec.validate()?;
    let x0 = spec.beak().expect("beaked").ball_center();
    let mut e = vec![0u8; n];
    e[0] = 1;
    let u = HarmonicFn::monomial(HarmonicPoly::harmonic_projection(&e));
    ratio_two_levels(&spec, &u, &x0[..n], &BOUNDARY)
}

/// The cone-function ratio on the plain ball `∂B(ε)`, which vanishes by the mean value property.
pub fn gauss_ratio_ball_only(eps: f64, m: u32, n: usize) -> Result<RatioResult> {
    let spec = DomainSpec::beaked(n, eps, m, false);
    spec.validate()?;
    let x0 = spec.beak().expect("beaked").ball_center();
    ratio_two_levels(&spec, &HarmonicFn::ConeU, &x0[..n], &[Piece::SphereRemainder, Piece::Sigma])
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IDecomposition {
    pub eps: f64,
    /// `∫_{∂B(ε) ∖ Σ_ε} u`.
    pub i1: f64,
    /// `∫_{Σ_ε} u`.
    pub i2: f64,
    /// `∫_{Σ*_ε} u`.
    pub i3: f64,
    /// `∫_{S_ε} u`, zero up to rounding.
    pub lateral: f64,
    /// `σ_n / ε^n`.
    pub bound: f64,
    pub c0: f64,
}

pub fn i_decomposition(eps: f64, m: u32, n: usize) -> Result<IDecomposition> {
    let (_, p) = build_beaked(eps, m, n, false)?;
    let int = |piece: Piece| -> Result<f64> {
        let [v] = integrate_many(&p.piece(piece), |x| [raw::cone_u(x)])?;
        Ok(v)
    };
    Ok(IDecomposition {
        eps,
        i1: int(Piece::SphereRemainder)?,
        i2: int(Piece::Sigma)?,
        i3: int(Piece::SigmaStar)?,
        lateral: int(Piece::Lateral)?,
        bound: sphere_area(n) / eps.powi(n as i32),
        c0: BeakGeometry::cone_moment(n),
    })
}

/// `∫ k_{e₁}` over the beak pieces of `D̂(ε)`, which stay at distance about 2 from `e₁`.
fn beak_integral_of_k(p: &BeakedPieces) -> Result<f64> {
    let n = p.geometry.n;
    let mut e1 = vec![0.0; n];
    e1[0] = 1.0;
    let beak = p.mesh.submesh(&[Piece::Lateral, Piece::SigmaStar]);
    let [v] = integrate_many(&beak, |x| [1.0 + raw::kuran_h(&e1, x)])?;
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuranPoint {
    pub eps: f64,
    pub estimate: GapEstimate,
    /// `(|∂D̂| - |∂B|) / |∂D̂|`.
    pub deficit_ratio: f64,
    /// `|-|Σ̂_ε| + ∫_{Ŝ ∪ Σ̂*} k_{e₁}| / |∂D̂|`, the limit taken piecewise at `t = 1`.
    pub piecewise_limit: f64,
    /// `(|Σ̂_ε| + |∫_{Ŝ ∪ Σ̂*} k_{e₁}|) / |∂D̂|`.
    pub upper_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KuranSweep {
    pub n: usize,
    pub m: u32,
    pub points: Vec<KuranPoint>,
    pub fit: Option<PowerFit>,
    /// ε values excluded from the fit because their estimate was flagged.
    pub excluded: Vec<f64>,
}

/// Options used for `K̂(ε)`: the gap is of size `ε^{n-1}`, so sample
/// tolerances are tightened accordingly.
pub fn sweep_gap_options(n: usize) -> GapOptions {
    let mut o = GapOptions::for_dim(n);
    o.sample_tol = 1e-8;
    o.abs_sample_tol = 1e-5;
    o.extrapolation_tol = 1e-6;
    o
}

pub fn kuran_point(eps: f64, m: u32, n: usize, opts: &GapOptions) -> Result<KuranPoint> {
    let (spec, p) = build_beaked(eps, m, n, true)?;
    let x0 = vec![0.0; n];
    let t = inradius_touching(&spec, &x0)?;
    let z = &t.candidates[0];
    let est = candidate_limits(&spec, &x0, z, opts)?.l;
    let area = boundary_area(&p.boundary())?;
    let beak = beak_integral_of_k(&p)?;
    let sigma = p.measured.sigma;
    Ok(KuranPoint {
        eps,
        estimate: est,
        deficit_ratio: (area - sphere_area(n)) / area,
        piecewise_limit: (beak - sigma).abs() / area,
        upper_bound: (sigma + beak.abs()) / area,
    })
}

pub fn kuran_sweep(eps: &[f64], m: u32, n: usize, opts: &GapOptions) -> Result<KuranSweep> {
    let points: Vec<KuranPoint> = eps
        .iter()
        .map(|&e| kuran_point(e, m, n, opts))
        .collect::<Result<_>>()?;
    let (good, bad): (Vec<&KuranPoint>, Vec<&KuranPoint>) = points.iter().partition(|p| {
        !p.estimate.flags.iter().any(|f| f == "quadrature_not_converged") && p.estimate.extrapolated > 0.0
    });
    let fit = if good.len() >= 2 {
        let xs: Vec<f64> = good.iter().map(|p| p.eps).collect();
        let ys: Vec<f64> = good.iter().map(|p| p.estimate.extrapolated).collect();
        Some(fit_power_law(&xs, &ys)?)
    } else {
        None
    };
    Ok(KuranSweep {
        n,
        m,
        excluded: bad.iter().map(|p| p.eps).collect(),
        points,
        fit,
    })
}

/// Full sweep: Kuran gap, Gauss ratio, area deficit and the `u` decomposition per ε.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub k_hat: f64,
    pub gauss_ratio: f64,
    pub area_deficit: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    /// Slope of the power fit of `K̂` over this and all smaller ε.
    pub slope_running: f64,
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub m: u32,
    pub kuran_exponent: Option<f64>,
    pub deficit_exponent: f64,
    pub alpha0_extrapolated: f64,
    pub alpha0_analytic: f64,
    pub gauss_ratio_min: f64,
    pub defaults: defaults::DefaultsTable,
    pub checks: Vec<VerificationReport>,
}

#[derive(Clone, Debug)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub kuran: KuranSweep,
    pub deficit: AreaDeficitSweep,
    pub gauss: Vec<RatioResult>,
    pub decomposition: Vec<IDecomposition>,
}

pub fn run_sweep(eps: &[f64], m: u32, n: usize, opts: &GapOptions) -> Result<Sweep> {
    if eps.is_empty() {
        return Err(Error::Empty("eps grid"));
    }
    let mut eps = eps.to_vec();
    eps.sort_by(f64::total_cmp);
    let kuran = kuran_sweep(&eps, m, n, opts)?;
    let deficit = area_deficit_sweep(&eps, m, n)?;
    let gauss: Vec<RatioResult> = eps.iter().map(|&e| gauss_ratio(e, m, n)).collect::<Result<_>>()?;
    let decomposition: Vec<IDecomposition> =
        eps.iter().map(|&e| i_decomposition(e, m, n)).collect::<Result<_>>()?;
    let rows = eps
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let slope = if i == 0 {
                f64::NAN
            } else {
                let ys: Vec<f64> = kuran.points[..=i].iter().map(|p| p.estimate.extrapolated).collect();
                fit_power_law(&eps[..=i], &ys).map(|f| f.exponent).unwrap_or(f64::NAN)
            };
            SweepRow {
                eps: e,
                k_hat: kuran.points[i].estimate.extrapolated,
                gauss_ratio: gauss[i].value,
                area_deficit: deficit.deficit[i],
                i1: decomposition[i].i1,
                i2: decomposition[i].i2,
                i3: decomposition[i].i3,
                slope_running: slope,
            }
        })
        .collect();
    Ok(Sweep {
        rows,
        kuran,
        deficit,
        gauss,
        decomposition,
    })
}

impl Sweep {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["eps", "K_hat", "gauss_ratio", "area_deficit", "I1", "I2", "I3", "slope_running"])?;
        for r in &self.rows {
            w.write_record(
                [r.eps, r.k_hat, r.gauss_ratio, r.area_deficit, r.i1, r.i2, r.i3, r.slope_running]
                    .iter()
                    .map(|v| format!("{v:.12e}")),
            )?;
        }
        w.flush()?;
        Ok(())
    }

    /// Checks of the scaling laws with the given tolerances.
    pub fn checks(&self) -> Vec<VerificationReport> {
        let n = self.kuran.n;
        let target = (n - 1) as f64;
        let mut out = Vec::new();
        match &self.kuran.fit {
            Some(f) => out.push(
                VerificationReport::new("kuran_exponent", Relation::Equal, f.exponent, target, 0.15)
                    .sources("log-log slope of K-hat", "n - 1"),
            ),
            None => out.push(
                VerificationReport::new("kuran_exponent", Relation::Equal, f64::NAN, target, 0.15)
                    .flag("too_few_unflagged_points"),
            ),
        }
        let thm: Vec<VerificationReport> = self
            .kuran
            .points
            .iter()
            .map(|p| {
                VerificationReport::new(
                    &format!("deficit_bound_eps_{}", p.eps),
                    Relation::AtLeast,
                    p.estimate.extrapolated,
                    p.deficit_ratio,
                    1e-3,
                )
            })
            .collect();
        out.push(VerificationReport::all("kuran_vs_deficit_all_eps", &thm));
        let upper: Vec<VerificationReport> = self
            .kuran
            .points
            .iter()
            .map(|p| {
                VerificationReport::new(
                    &format!("upper_bound_eps_{}", p.eps),
                    Relation::AtMost,
                    p.estimate.extrapolated,
                    p.upper_bound,
                    1e-6,
                )
            })
            .collect();
        out.push(VerificationReport::all("kuran_upper_bound_all_eps", &upper));
        out.push(
            VerificationReport::new("deficit_exponent", Relation::Equal, self.deficit.fit.exponent, target, 0.1)
                .sources("log-log slope of |dD| - |dB|", "n - 1"),
        );
        out.push(
            VerificationReport::new(
                "alpha0",
                Relation::Equal,
                self.deficit.alpha0_extrapolated / self.deficit.alpha0_analytic,
                1.0,
                0.03,
            )
            .sources("extrapolated deficit / eps^(n-1)", "|S0| - |Sigma0|"),
        );
        let g_last = self.gauss.last().map(|g| g.value).unwrap_or(f64::NAN);
        let g_min = self.gauss.iter().map(|g| g.value).fold(f64::INFINITY, f64::min);
        out.push(
            VerificationReport::new("gauss_ratio_non_decay", Relation::AtLeast, g_min, 0.5 * g_last, 0.0)
                .sources("min over sweep", "0.5 x ratio at largest eps"),
        );
        out.push(
            VerificationReport::new(
                "gauss_ratio_floor",
                Relation::AtLeast,
                g_min,
                defaults::BEAKED_GAUSS_RATIO_FLOOR,
                0.0,
            )
            .sources("min over sweep", "frozen floor"),
        );
        let c = defaults::BEAKED_KURAN_CONSTANT;
        let scaled: Vec<VerificationReport> = self
            .kuran
            .points
            .iter()
            .flat_map(|p| {
                let v = p.estimate.extrapolated / p.eps.powi(n as i32 - 1);
                [
                    VerificationReport::new(&format!("scaled_lower_eps_{}", p.eps), Relation::AtLeast, v, 1.0 / c, 0.0),
                    VerificationReport::new(&format!("scaled_upper_eps_{}", p.eps), Relation::AtMost, v, c, 0.0),
                ]
            })
            .collect();
        out.push(VerificationReport::all("kuran_scaled_bounds", &scaled));
        out
    }

    pub fn summary(&self) -> SweepSummary {
        SweepSummary {
            n: self.kuran.n,
            m: self.kuran.m,
            kuran_exponent: self.kuran.fit.map(|f| f.exponent),
            deficit_exponent: self.deficit.fit.exponent,
            alpha0_extrapolated: self.deficit.alpha0_extrapolated,
            alpha0_analytic: self.deficit.alpha0_analytic,
            gauss_ratio_min: self.gauss.iter().map(|g| g.value).fold(f64::INFINITY, f64::min),
            defaults: defaults::table(),
            checks: self.checks(),
        }
    }
}
