use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::domain::{DomainSpec, Shape};
use crate::geometry::mesh::{mesh_boundary, SurfaceMesh};
use crate::kernels::{ball_volume, sphere_area};
use crate::quadrature::{compensated_sum, divergence_volume};
use crate::report::{Relation, VerificationReport};
use crate::vector;

/// Sum of facet areas.
pub fn boundary_area(mesh: &SurfaceMesh) -> Result<f64> {
    if mesh.is_empty() {
        return Err(Error::Empty("mesh"));
    }
    Ok(compensated_sum(mesh.facets.iter().map(|f| f.area)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    /// `(1/n) ∮ ⟨x, ν⟩ dσ` on the mesh.
    pub mesh: f64,
    pub analytic: Option<f64>,
}

pub fn volume(spec: &DomainSpec, mesh: &SurfaceMesh) -> Result<VolumeResult> {
    if mesh.is_empty() {
        return Err(Error::Empty("mesh"));
    }
    let v = divergence_volume(mesh);
    if !(v > 0.0) {
        return Err(Error::Orientation(v));
    }
    Ok(VolumeResult {
        mesh: v,
        analytic: spec.volume_analytic(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TouchingPoint {
    pub z: Vec<f64>,
    /// Caller assertion that ∂D is Lyapunov-Dini regular at `z`; a mesh
    /// cannot certify the modulus of continuity of the normal.
    pub dini_asserted: bool,
    /// Symmetry class; candidates in one class give identical gap values.
    pub class: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TouchingFamily {
    /// A single touching point.
    Isolated,
    /// Finitely many points swept by symmetries.
    Symmetric,
    /// The whole inscribed sphere.
    WholeSphere,
    /// A zone of the inscribed sphere (rotationally symmetric family).
    Zone,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Touching {
    pub radius: f64,
    pub candidates: Vec<TouchingPoint>,
    pub family: TouchingFamily,
}

impl Touching {
    /// One candidate per symmetry class, Dini-asserted only.
    pub fn representatives(&self) -> Vec<TouchingPoint> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for c in &self.candidates {
            if c.dini_asserted && !seen.contains(&c.class) {
                seen.push(c.class);
                out.push(c.clone());
            }
        }
        out
    }
}

/// Inradius `r = dist(x₀, ∂D)` and the touching candidates, both analytic per variant.
pub fn inradius_touching(spec: &DomainSpec, x0: &[f64]) -> Result<Touching> {
    spec.validate()?;
    let n = spec.dim;
    if x0.len() != n || !spec.contains(x0) {
        return Err(Error::OutsideDomain { point: x0.to_vec() });
    }
    let p = vector::pad(x0);
    let tp = |z: vector::Vec3, class| TouchingPoint {
        z: z[..n].to_vec(),
        dini_asserted: true,
        class,
    };
    match &spec.shape {
        Shape::Ball { center, radius } => {
            let c = vector::pad(center);
            let d = vector::sub(p, c);
            let off = vector::norm(d);
            if off <= 1e-14 * radius {
                let mut z = c;
                z[0] += radius;
                Ok(Touching {
                    radius: *radius,
                    candidates: vec![tp(z, 0)],
                    family: TouchingFamily::WholeSphere,
                })
            } else {
                let z = vector::add(c, vector::scale(d, radius / off));
                Ok(Touching {
                    radius: radius - off,
                    candidates: vec![tp(z, 0)],
                    family: TouchingFamily::Isolated,
                })
            }
        }
        Shape::Spheroid {
            center, semi_axes, ..
        } => {
            let c = vector::pad(center);
            if vector::dist(p, c) > 1e-12 * semi_axes[0] {
                return Err(Error::Unsupported(
                    "touching points of a spheroid are provided for x0 at the center".into(),
                ));
            }
            let amin = semi_axes.iter().cloned().fold(f64::INFINITY, f64::min);
            let rot = spec.rotation3();
            let mut candidates = Vec::new();
            for (i, a) in semi_axes.iter().enumerate() {
                if (a - amin).abs() <= 1e-12 * amin {
                    for s in [1.0, -1.0] {
                        let mut e = [0.0; 3];
                        e[i] = s * amin;
                        // all minimal-axis points are related by reflections
                        // and rotations within the eigenspace
                        candidates.push(tp(vector::add(c, vector::mat_vec(&rot, e)), 0));
                    }
                }
            }
            let family = if candidates.len() > 2 && n == 3 {
                TouchingFamily::Zone
            } else {
                TouchingFamily::Symmetric
            };
            Ok(Touching {
                radius: amin,
                candidates,
                family,
            })
        }
        Shape::GraphPerturbedBall {
            center,
            radius,
            bump,
        } => {
            let c = vector::pad(center);
            if vector::dist(p, c) > 1e-12 * radius {
                return Err(Error::Unsupported(
                    "touching points of a perturbed ball are provided for x0 at the center".into(),
                ));
            }
            let axis = bump.unit_axis();
            let frame = spec.frame().rotation;
            let perp = [frame[0][1], frame[1][1], frame[2][1]];
            let theta_on = bump.onset.acos();
            // representatives of the unperturbed zone, one per polar angle class
            let candidates = (0..3)
                .map(|j| {
                    let th = std::f64::consts::PI - (std::f64::consts::PI - theta_on) * j as f64 / 3.0;
                    let d = vector::add(vector::scale(axis, th.cos()), vector::scale(perp, th.sin()));
                    tp(vector::add(c, vector::scale(d, *radius)), j)
                })
                .collect();
            Ok(Touching {
                radius: *radius,
                candidates,
                family: TouchingFamily::Zone,
            })
        }
        Shape::BeakedSphere { .. } => {
            let g = spec.beak().expect("beaked");
            if vector::dist(p, g.ball_center()) > 1e-12 {
                return Err(Error::Unsupported(
                    "touching points of a beaked sphere are provided for x0 = x(eps)".into(),
                ));
            }
            Ok(Touching {
                radius: 1.0,
                candidates: vec![tp(g.far_pole(), 0)],
                family: TouchingFamily::Zone,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Isoperimetric {
    pub boundary_area: f64,
    pub ball_area: f64,
    pub volume: f64,
    pub ball_volume: f64,
    pub inradius: f64,
    /// `(|∂D| - |∂B|) / |∂D|`.
    pub deficit_ratio: f64,
    /// `n ω_n^{1/n} (|D|^{(n-1)/n} - |B|^{(n-1)/n})`.
    pub chain_middle: f64,
    /// `(n-1) ω_n^{1/n} |D∖B| / |D|^{1/n}`.
    pub chain_right: f64,
    /// `chain_right / |∂D|`.
    pub solid_ratio: f64,
}

pub fn isoperimetric_quantities(spec: &DomainSpec, x0: &[f64], mesh: &SurfaceMesh) -> Result<Isoperimetric> {
    let n = spec.dim as f64;
    let t = inradius_touching(spec, x0)?;
    let area = boundary_area(mesh)?;
    let vol = volume(spec, mesh)?.mesh;
    let r = t.radius;
    let ball_area = sphere_area(spec.dim) * r.powf(n - 1.0);
    let ball_vol = ball_volume(spec.dim) * r.powf(n);
    let w = ball_volume(spec.dim).powf(1.0 / n);
    let middle = n * w * (vol.powf((n - 1.0) / n) - ball_vol.powf((n - 1.0) / n));
    let right = (n - 1.0) * w * (vol - ball_vol) / vol.powf(1.0 / n);
    Ok(Isoperimetric {
        boundary_area: area,
        ball_area,
        volume: vol,
        ball_volume: ball_vol,
        inradius: r,
        deficit_ratio: (area - ball_area) / area,
        chain_middle: middle,
        chain_right: right,
        solid_ratio: right / area,
    })
}

/// Checks `|∂D| - |∂B| ≥ n ω_n^{1/n}(|D|^{(n-1)/n} - |B|^{(n-1)/n}) ≥ (n-1) ω_n^{1/n} |D∖B| / |D|^{1/n}`.
pub fn isoperimetric_report(spec: &DomainSpec, x0: &[f64]) -> Result<VerificationReport> {
    let mesh = mesh_boundary(spec, crate::defaults::production_level(spec.dim), None)?;
    let q = isoperimetric_quantities(spec, x0, &mesh)?;
    let tol = 1e-6;
    let deficit = q.boundary_area - q.ball_area;
    let first = VerificationReport::new("isoperimetric_left", Relation::AtLeast, deficit, q.chain_middle, tol)
        .sources("mesh area minus inscribed sphere", "isoperimetric inequality");
    let second = VerificationReport::new("isoperimetric_right", Relation::AtLeast, q.chain_middle, q.chain_right, tol)
        .sources("isoperimetric inequality", "concavity of s^{(n-1)/n}");
    let mut r = VerificationReport::all("isoperimetric_chain", &[first, second])
        .sources("|dD| - |dB|", "(n-1) w^(1/n) |D\\B| / |D|^(1/n)");
    r.lhs = deficit;
    r.rhs = q.chain_right;
    r = r
        .detail("boundary_area", q.boundary_area)
        .detail("ball_area", q.ball_area)
        .detail("deficit_ratio", q.deficit_ratio)
        .detail("chain_middle", q.chain_middle)
        .detail("solid_ratio", q.solid_ratio);
    Ok(r)
}
