use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use serde::Serialize;

use crate::asz::{self, LimitC, Rigidity};
use crate::beaked::{run_sweep, sweep_gap_options, SweepSummary};
use crate::cli::config::RunConfig;
use crate::defaults::{self, production_level};
use crate::error::{Error, Result};
use crate::gaps::{
    analyze, default_dictionary, verify_cor13_with, verify_prop32_with, verify_thm12_with, GapOptions,
};
use crate::geometry::{inradius_touching, isoperimetric_report, mesh_boundary, Bump, DomainSpec, SurfaceMesh};
use crate::quadrature::sphere_ratio_identity;
use crate::report::{Relation, VerificationReport};

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

/// Domain from `domain`, or else from the `kind`/`a`/`eps`/`m` shorthand.
pub fn build_domain(cfg: &RunConfig, n: usize) -> Result<DomainSpec> {
    if let Some(d) = &cfg.domain {
        d.validate()?;
        return Ok(d.clone());
    }
    let origin = vec![0.0; n];
    let spec = match cfg.kind.as_deref().unwrap_or("ball") {
        "ball" => DomainSpec::unit_ball(n),
        "spheroid" => {
            let mut axes = vec![1.0; n];
            axes[0] = cfg.a.unwrap_or(1.1);
            DomainSpec::spheroid(&origin, &axes)
        }
        "gpb" => {
            let mut axis = vec![0.0; n];
            axis[0] = 1.0;
            DomainSpec::graph_perturbed_ball(
                &origin,
                1.0,
                Bump {
                    axis,
                    amplitude: cfg.a.unwrap_or(1.1) - 1.0,
                    onset: 0.5,
                },
            )
        }
        "beaked" => DomainSpec::beaked(n, cfg.eps.lo, cfg.m.unwrap_or(n as u32 + 1), false),
        other => return Err(config_err("domain", format!("unknown domain kind `{other}`"))),
    };
    spec.validate()?;
    Ok(spec)
}

/// The configured `x0`, or the reference centre of the domain.
pub fn base_point(cfg: &RunConfig, spec: &DomainSpec) -> Result<Vec<f64>> {
    let x0 = match &cfg.x0 {
        Some(x) => x.clone(),
        None => spec.frame().origin[..spec.dim].to_vec(),
    };
    if x0.len() != spec.dim {
        return Err(config_err("x0", format!("expected {} coordinates", spec.dim)));
    }
    if !spec.contains(&x0) {
        return Err(config_err("x0", format!("{x0:?} is not inside the domain")));
    }
    Ok(x0)
}

fn write_json<T: Serialize>(cfg: &RunConfig, name: &str, value: &T) -> Result<PathBuf> {
    let path = cfg.out.join(format!("{name}.json"));
    let f = BufWriter::new(File::create(&path)?);
    serde_json::to_writer_pretty(f, value).map_err(|e| Error::Io(e.to_string()))?;
    Ok(path)
}

fn named(mut r: VerificationReport, name: String) -> VerificationReport {
    r.name = name;
    r
}

fn gap_checks(cfg: &RunConfig, spec: &DomainSpec, label: &str) -> Result<Vec<VerificationReport>> {
    let x0 = base_point(cfg, spec)?;
    let mut opts = GapOptions::for_dim(spec.dim);
    opts.schedule = cfg.schedule;
    let tol = cfg.tol.unwrap_or(1e-3);
    let t = inradius_touching(spec, &x0)?;
    let a = analyze(spec, &x0, &t.candidates, &opts)?;
    Ok(vec![
        named(verify_thm12_with(spec, &x0, &a, tol)?, format!("{label}_kuran_vs_deficit")),
        named(verify_cor13_with(spec, &x0, &a, tol)?, format!("{label}_kuran_vs_solid")),
        named(
            verify_prop32_with(spec, &x0, &t.candidates, &a, &opts, cfg.tol.unwrap_or(1e-2))?,
            format!("{label}_gauss_gap_consistency"),
        ),
        named(isoperimetric_report(spec, &x0)?, format!("{label}_isoperimetric")),
    ])
}

fn ball_checks(cfg: &RunConfig, n: usize) -> Result<Vec<VerificationReport>> {
    let ball = DomainSpec::unit_ball(n);
    let x0 = vec![0.0; n];
    let mesh = mesh_boundary(&ball, cfg.level.unwrap_or(production_level(n)), None)?;
    let tol = cfg.tol.unwrap_or(1e-6);
    let t = inradius_touching(&ball, &x0)?;
    let dict = default_dictionary(&ball, &x0, &t.candidates);
    let poles: Vec<Vec<f64>> = asz::directions(n, 8)
        .into_iter()
        .map(|d| d.iter().map(|c| 3.0 * c).collect())
        .collect();
    let label = format!("ball_n{n}");
    let mut out = vec![named(
        asz::lemma51_check(&ball, &mesh, &x0, &poles, &dict, tol)?,
        format!("{label}_mean_value_equivalence"),
    )];
    let sup = asz::ball_poisson_sup(&ball, &mesh, &x0)?;
    out.push(
        VerificationReport::new(&format!("{label}_poisson_kernel"), Relation::Equal, sup, 0.0, 1e-12)
            .sources("sup ||dB| P(x0, x) - 1|", "0"),
    );
    let r = asz::rigidity_discriminator(&ball, &mesh, &x0, &asz::default_sample(&ball, &x0))?;
    out.push(
        VerificationReport::new(&format!("{label}_potential_ratio_spread"), Relation::AtMost, r.spread, 0.0, 1e-5)
            .sources("relative spread of single-layer ratio", "0"),
    );
    out.extend(gap_checks(cfg, &ball, &label)?);
    Ok(out)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let suite = cfg.suite.as_deref().unwrap_or("ball");
    let mut reports = Vec::new();
    match suite {
        "ball" => {
            for n in cfg.dims_or(&[2, 3]) {
                reports.extend(ball_checks(cfg, n)?);
            }
        }
        "spheroid" => {
            let c = RunConfig {
                kind: Some("spheroid".into()),
                ..cfg.clone()
            };
            for n in cfg.dims_or(&[2]) {
                let spec = build_domain(&c, n)?;
                let a = c.a.unwrap_or(1.1);
                reports.extend(gap_checks(&c, &spec, &format!("spheroid_n{n}_a{a}"))?);
            }
        }
        "identity" => {
            let tol = cfg.tol.unwrap_or(1e-8);
            for n in cfg.dims_or(&[2, 3, 4, 5, 6]) {
                let r = sphere_ratio_identity(n);
                reports.push(
                    VerificationReport::new(&format!("sphere_ratio_identity_n{n}"), Relation::AtMost, r, 0.0, tol)
                        .sources("relative residual of the radial integral", "0"),
                );
            }
        }
        "domain" => {
            for n in cfg.dims_or(&[cfg.domain.as_ref().map(|d| d.dim).unwrap_or(2)]) {
                let spec = build_domain(cfg, n)?;
                reports.extend(gap_checks(cfg, &spec, &format!("domain_n{n}"))?);
            }
        }
        other => return Err(config_err("suite", format!("unknown suite `{other}`"))),
    }
    for r in &reports {
        write_json(cfg, &r.name, r)?;
    }
    Ok(reports)
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let eps = cfg.eps.values();
    if eps.len() < 4 {
        return Err(config_err("eps", "a sweep needs at least 4 grid points"));
    }
    let mut reports = Vec::new();
    for n in cfg.dims_or(&[2]) {
        let m = cfg.m.unwrap_or(n as u32 + 1);
        let sweep = run_sweep(&eps, m, n, &sweep_gap_options(n))?;
        let stem = format!("sweep_n{n}_m{m}");
        sweep.write_csv(BufWriter::new(File::create(cfg.out.join(format!("{stem}.csv")))?))?;
        let summary: SweepSummary = sweep.summary();
        write_json(cfg, &stem, &summary)?;
        reports.extend(summary.checks.into_iter().map(|r| {
            let name = format!("{stem}_{}", r.name);
            named(r, name)
        }));
    }
    Ok(reports)
}

#[derive(Debug, Serialize)]
struct AszOutput<'a> {
    domain: &'a DomainSpec,
    x0: &'a [f64],
    verdict: &'static str,
    spread: f64,
    threshold: f64,
    limit: &'a LimitC,
    checks: &'a [VerificationReport],
}

fn asz_mesh(cfg: &RunConfig, spec: &DomainSpec) -> Result<SurfaceMesh> {
    mesh_boundary(spec, cfg.level.unwrap_or(production_level(spec.dim)), None)
}

pub fn cmd_asz(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.dims_or(&[cfg.domain.as_ref().map(|d| d.dim).unwrap_or(3)])[0];
    let spec = build_domain(cfg, n)?;
    let x0 = base_point(cfg, &spec)?;
    let mesh = asz_mesh(cfg, &spec)?;
    let rig: Rigidity = asz::rigidity_discriminator(&spec, &mesh, &x0, &asz::default_sample(&spec, &x0))?;
    rig.profile
        .write_csv(BufWriter::new(File::create(cfg.out.join("asz_profile.csv"))?))?;
    let limit = asz::asz_limit_c_default(&spec, &mesh, &x0)?;
    let checks = vec![VerificationReport::new(
        "asz_limit_c",
        Relation::Equal,
        limit.extrapolated / limit.boundary_area,
        1.0,
        cfg.tol.unwrap_or(1e-3),
    )
    .sources("limit of potential ratio / |dD|", "1")];
    let out = AszOutput {
        domain: &spec,
        x0: &x0,
        verdict: if rig.constant_ratio { "constant_ratio" } else { "non_constant_ratio" },
        spread: rig.spread,
        threshold: defaults::ASZ_SPREAD_THRESHOLD,
        limit: &limit,
        checks: &checks,
    };
    write_json(cfg, "asz", &out)?;
    println!("verdict: {} (spread {:.3e}, threshold {:.1e})", out.verdict, rig.spread, out.threshold);
    Ok(checks)
}

pub fn cmd_mesh(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    let n = cfg.dims_or(&[cfg.domain.as_ref().map(|d| d.dim).unwrap_or(3)])[0];
    let spec = build_domain(cfg, n)?;
    let mesh = asz_mesh(cfg, &spec)?;
    mesh.write_csv(BufWriter::new(File::create(cfg.out.join("mesh.csv"))?))?;
    println!("{} facets, area {:.12e}", mesh.len(), crate::geometry::boundary_area(&mesh)?);
    Ok(Vec::new())
}
