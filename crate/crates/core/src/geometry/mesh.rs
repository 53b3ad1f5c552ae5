//! Boundary meshes built from smooth parametric patches.
//!
//! Each patch is split into parameter cells; a cell becomes one facet and
//! carries a tensor Gauss-Legendre rule mapped through the exact chart, so
//! facet areas and quadrature nodes lie on the true surface. Cells are split
//! until their diameter is below the level's base size and below
//! `κ · max(dist(cell, g), h_min)` for every grading point `g`.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::beak::BeakGeometry;
use crate::geometry::domain::{Bump, DomainSpec, Shape};
use crate::quadrature::gauss_legendre;
use crate::vector::{self, Mat3, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Piece {
    /// The whole boundary of a smooth domain.
    Smooth,
    /// `∂B(ε) ∖ Σ_ε`.
    SphereRemainder,
    /// Σ_ε: the part of `∂B(ε)` cut away by the beak (not part of `∂D(ε)`).
    Sigma,
    /// Σ*_ε: the cap `K ∩ ∂B(0, ε^m)`.
    SigmaStar,
    /// S_ε: the conical side of the beak.
    Lateral,
}

impl Piece {
    pub fn as_str(&self) -> &'static str {
        match self {
            Piece::Smooth => "smooth",
            Piece::SphereRemainder => "sphere_remainder",
            Piece::Sigma => "sigma",
            Piece::SigmaStar => "sigma_star",
            Piece::Lateral => "lateral",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum FacetRule {
    /// One node at the cell center.
    Midpoint,
    /// Tensor Gauss-Legendre rule with this many points per parameter direction.
    Gauss(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradePoint {
    pub point: Vec3,
    pub h_min: f64,
}

#[derive(Clone, Debug)]
pub struct MeshOptions {
    pub level: u32,
    pub grading: Vec<GradePoint>,
    pub rule: FacetRule,
    /// Ratio between facet diameter and distance to a grading point at level 0.
    pub kappa: f64,
    pub max_facets: usize,
    /// Also mesh Σ_ε for beaked spheres.
    pub include_sigma: bool,
}

impl MeshOptions {
    pub fn new(level: u32) -> Self {
        MeshOptions {
            level,
            grading: Vec::new(),
            rule: FacetRule::Gauss(crate::defaults::GAUSS_ORDER),
            kappa: crate::defaults::KAPPA,
            max_facets: crate::defaults::MAX_FACETS,
            include_sigma: false,
        }
    }

    pub fn graded(mut self, point: &[f64], h_min: f64) -> Self {
        self.grading.push(GradePoint {
            point: vector::pad(point),
            h_min,
        });
        self
    }

    pub fn rule(mut self, rule: FacetRule) -> Self {
        self.rule = rule;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadNode {
    pub point: Vec3,
    pub weight: f64,
    pub normal: Vec3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Facet {
    pub centroid: Vec3,
    pub area: f64,
    pub normal: Vec3,
    pub piece: Piece,
    pub diameter: f64,
    pub first_node: usize,
    pub node_count: usize,
}

#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    pub dim: usize,
    pub level: u32,
    pub grading_center: Option<Vec<f64>>,
    pub facets: Vec<Facet>,
    pub nodes: Vec<QuadNode>,
}

impl SurfaceMesh {
    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facet_nodes(&self, i: usize) -> &[QuadNode] {
        let f = &self.facets[i];
        &self.nodes[f.first_node..f.first_node + f.node_count]
    }

    pub fn max_diameter(&self) -> f64 {
        self.facets.iter().map(|f| f.diameter).fold(0.0, f64::max)
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut p: Vec<Piece> = self.facets.iter().map(|f| f.piece).collect();
        p.sort();
        p.dedup();
        p
    }

    pub fn piece_area(&self, piece: Piece) -> f64 {
        crate::quadrature::compensated_sum(
            self.facets.iter().filter(|f| f.piece == piece).map(|f| f.area),
        )
    }

    /// Facets of the given pieces, with their nodes.
    pub fn submesh(&self, pieces: &[Piece]) -> SurfaceMesh {
        let mut facets = Vec::new();
        let mut nodes = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if pieces.contains(&f.piece) {
                let mut g = *f;
                g.first_node = nodes.len();
                nodes.extend_from_slice(self.facet_nodes(i));
                facets.push(g);
            }
        }
        SurfaceMesh {
            dim: self.dim,
            level: self.level,
            grading_center: self.grading_center.clone(),
            facets,
            nodes,
        }
    }

    /// Concatenates two meshes of the same dimension.
    pub fn merged(mut self, other: &SurfaceMesh) -> SurfaceMesh {
        let offset = self.nodes.len();
        self.nodes.extend_from_slice(&other.nodes);
        self.facets.extend(other.facets.iter().map(|f| Facet {
            first_node: f.first_node + offset,
            ..*f
        }));
        self
    }

    /// Writes `piece,cx,cy[,cz],area,nx,ny[,nz]`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let axes = ["x", "y", "z"];
        let mut header = vec!["piece".to_string()];
        header.extend(axes[..self.dim].iter().map(|a| format!("c{a}")));
        header.push("area".into());
        header.extend(axes[..self.dim].iter().map(|a| format!("n{a}")));
        w.write_record(&header)?;
        for f in &self.facets {
            let mut rec = vec![f.piece.as_str().to_string()];
            rec.extend(f.centroid[..self.dim].iter().map(|v| format!("{v:.17e}")));
            rec.push(format!("{:.17e}", f.area));
            rec.extend(f.normal[..self.dim].iter().map(|v| format!("{v:.17e}")));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Planar profile curve, also used as the meridian of surfaces of revolution
/// about the x₁ axis (second coordinate = distance from the axis).
#[derive(Clone, Copy, Debug)]
pub(crate) enum Profile {
    Arc { cx: f64, radius: f64 },
    Segment { p0: [f64; 2], p1: [f64; 2] },
}

impl Profile {
    fn eval(&self, s: f64) -> ([f64; 2], [f64; 2]) {
        match *self {
            Profile::Arc { cx, radius } => {
                let (sn, cs) = s.sin_cos();
                ([cx + radius * cs, radius * sn], [-radius * sn, radius * cs])
            }
            Profile::Segment { p0, p1 } => {
                let d = [p1[0] - p0[0], p1[1] - p0[1]];
                ([p0[0] + s * d[0], p0[1] + s * d[1]], d)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Chart {
    /// `c + R (a₁ cos u, a₂ sin u)`.
    Ellipse { center: Vec3, rot: Mat3, a: [f64; 2] },
    /// `c + R ρ(u) (cos u, sin u)` with `ρ = 1 + bump`.
    Radial2 { center: Vec3, radius: f64, bump: Bump, axis: Vec3 },
    /// `profile(u)` shifted along x₁.
    Curve { profile: Profile, shift: f64 },
    /// Equiangular cube-sphere face mapped to `c + R (a ∘ ρ(ŝ) ŝ)`.
    CubeFace {
        center: Vec3,
        rot: Mat3,
        a: Vec3,
        face: usize,
        bump: Option<(Bump, Vec3)>,
    },
    /// Revolution of `profile(u)` about the x₁ axis by angle `v`.
    Revolution { profile: Profile, shift: f64 },
}

impl Chart {
    fn is_surface(&self) -> bool {
        matches!(self, Chart::CubeFace { .. } | Chart::Revolution { .. })
    }

    /// Point and partial derivatives.
    fn eval(&self, u: f64, v: f64) -> (Vec3, Vec3, Vec3) {
        match self {
            Chart::Ellipse { center, rot, a } => {
                let (s, c) = u.sin_cos();
                let p = vector::add(*center, vector::mat_vec(rot, [a[0] * c, a[1] * s, 0.0]));
                let du = vector::mat_vec(rot, [-a[0] * s, a[1] * c, 0.0]);
                (p, du, [0.0; 3])
            }
            Chart::Radial2 {
                center,
                radius,
                bump,
                axis,
            } => {
                let (s, c) = u.sin_cos();
                let d = [c, s, 0.0];
                let dd = [-s, c, 0.0];
                let (b, db) = bump.profile(vector::dot(d, *axis));
                let rho = radius * (1.0 + b);
                let drho = radius * db * vector::dot(dd, *axis);
                let p = vector::add(*center, vector::scale(d, rho));
                let du = vector::add(vector::scale(d, drho), vector::scale(dd, rho));
                (p, du, [0.0; 3])
            }
            Chart::Curve { profile, shift } => {
                let (q, dq) = profile.eval(u);
                ([q[0] + shift, q[1], 0.0], [dq[0], dq[1], 0.0], [0.0; 3])
            }
            Chart::CubeFace {
                center,
                rot,
                a,
                face,
                bump,
            } => {
                let k = face / 2;
                let sign = if face % 2 == 0 { 1.0 } else { -1.0 };
                let (ia, ib) = ((k + 1) % 3, (k + 2) % 3);
                let (tu, tv) = ((PI * u / 4.0).tan(), (PI * v / 4.0).tan());
                let mut w = [0.0; 3];
                w[k] = sign;
                w[ia] = tu;
                w[ib] = tv;
                let mut dwu = [0.0; 3];
                dwu[ia] = PI / 4.0 * (1.0 + tu * tu);
                let mut dwv = [0.0; 3];
                dwv[ib] = PI / 4.0 * (1.0 + tv * tv);
                let wn = vector::norm(w);
                let s = vector::scale(w, 1.0 / wn);
                let proj = |dw: Vec3| {
                    vector::scale(vector::sub(dw, vector::scale(s, vector::dot(s, dw))), 1.0 / wn)
                };
                let (dsu, dsv) = (proj(dwu), proj(dwv));
                let (q, dqu, dqv) = match bump {
                    None => (s, dsu, dsv),
                    Some((b, axis)) => {
                        let (val, der) = b.profile(vector::dot(s, *axis));
                        let rho = 1.0 + val;
                        let lift = |ds: Vec3| {
                            vector::add(
                                vector::scale(s, der * vector::dot(*axis, ds)),
                                vector::scale(ds, rho),
                            )
                        };
                        (vector::scale(s, rho), lift(dsu), lift(dsv))
                    }
                };
                let stretch = |x: Vec3| [a[0] * x[0], a[1] * x[1], a[2] * x[2]];
                let p = vector::add(*center, vector::mat_vec(rot, stretch(q)));
                (
                    p,
                    vector::mat_vec(rot, stretch(dqu)),
                    vector::mat_vec(rot, stretch(dqv)),
                )
            }
            Chart::Revolution { profile, shift } => {
                let (q, dq) = profile.eval(u);
                let (s, c) = v.sin_cos();
                (
                    [q[0] + shift, q[1] * c, q[1] * s],
                    [dq[0], dq[1] * c, dq[1] * s],
                    [0.0, -q[1] * s, q[1] * c],
                )
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Patch {
    pub chart: Chart,
    pub piece: Piece,
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub orient: f64,
}

impl Patch {
    fn new(chart: Chart, piece: Piece, u: (f64, f64), v: (f64, f64), orient: f64) -> Self {
        Patch {
            chart,
            piece,
            u,
            v,
            orient,
        }
    }

    /// Orientation making the normal point away from `inside` at the patch center.
    fn oriented_from(mut self, inside: Vec3) -> Self {
        let (um, vm) = (0.5 * (self.u.0 + self.u.1), 0.5 * (self.v.0 + self.v.1));
        let (p, n, _) = self.frame_at(um, vm);
        self.orient = 1.0;
        if vector::dot(n, vector::sub(p, inside)) < 0.0 {
            self.orient = -1.0;
        }
        self
    }

    /// Point, unit normal, and area density at a parameter point.
    fn frame_at(&self, u: f64, v: f64) -> (Vec3, Vec3, f64) {
        let (p, du, dv) = self.chart.eval(u, v);
        if self.chart.is_surface() {
            let c = vector::cross(du, dv);
            let j = vector::norm(c);
            (p, vector::scale(c, self.orient / j), j)
        } else {
            let j = vector::norm(du);
            (p, vector::scale([du[1], -du[0], 0.0], self.orient / j), j)
        }
    }

    fn point(&self, u: f64, v: f64) -> Vec3 {
        self.chart.eval(u, v).0
    }
}

/// Patches of `∂D` for a validated domain.
pub(crate) fn patches(spec: &DomainSpec, include_sigma: bool) -> Result<Vec<Patch>> {
    let n = spec.dim;
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let full = (0.0, 2.0 * PI);
    let unit = (-1.0, 1.0);
    let none = (0.0, 0.0);
    let mut out = Vec::new();
    match &spec.shape {
        Shape::Ball { center, radius } if n == 2 => {
            let c = vector::pad(center);
            let chart = Chart::Ellipse {
                center: c,
                rot: vector::IDENTITY,
                a: [*radius; 2],
            };
            out.push(Patch::new(chart, Piece::Smooth, full, none, 1.0).oriented_from(c));
        }
        Shape::Spheroid {
            center, semi_axes, ..
        } if n == 2 => {
            let c = vector::pad(center);
            let chart = Chart::Ellipse {
                center: c,
                rot: spec.rotation3(),
                a: [semi_axes[0], semi_axes[1]],
            };
            out.push(Patch::new(chart, Piece::Smooth, full, none, 1.0).oriented_from(c));
        }
        Shape::GraphPerturbedBall {
            center,
            radius,
            bump,
        } if n == 2 => {
            let c = vector::pad(center);
            let chart = Chart::Radial2 {
                center: c,
                radius: *radius,
                bump: bump.clone(),
                axis: bump.unit_axis(),
            };
            out.push(Patch::new(chart, Piece::Smooth, full, none, 1.0).oriented_from(c));
        }
        Shape::Ball { .. } | Shape::Spheroid { .. } | Shape::GraphPerturbedBall { .. } => {
            let (c, rot, a, bump) = match &spec.shape {
                Shape::Ball { center, radius } => {
                    (vector::pad(center), vector::IDENTITY, [*radius; 3], None)
                }
                Shape::Spheroid {
                    center, semi_axes, ..
                } => (
                    vector::pad(center),
                    spec.rotation3(),
                    vector::pad(semi_axes),
                    None,
                ),
                Shape::GraphPerturbedBall {
                    center,
                    radius,
                    bump,
                } => (
                    vector::pad(center),
                    vector::IDENTITY,
                    [*radius; 3],
                    Some((bump.clone(), bump.unit_axis())),
                ),
                _ => unreachable!(),
            };
            for face in 0..6 {
                let chart = Chart::CubeFace {
                    center: c,
                    rot,
                    a,
                    face,
                    bump: bump.clone(),
                };
                out.push(Patch::new(chart, Piece::Smooth, unit, unit, 1.0).oriented_from(c));
            }
        }
        Shape::BeakedSphere { .. } => {
            let g = spec.beak().expect("beaked");
            out = beak_patches(&g, include_sigma);
        }
    }
    Ok(out)
}

fn beak_patches(g: &BeakGeometry, include_sigma: bool) -> Vec<Patch> {
    let sphere = Profile::Arc {
        cx: g.c,
        radius: 1.0,
    };
    let star = Profile::Arc {
        cx: 0.0,
        radius: g.r_star,
    };
    let (p1, ps) = (g.rim_point(), g.star_point());
    let far = PI - g.psi_c;
    let none = (0.0, 0.0);
    let shift = g.shift;
    let mut out = Vec::new();
    if g.n == 2 {
        let curve = |profile| Chart::Curve { profile, shift };
        out.push(Patch::new(curve(sphere), Piece::SphereRemainder, (-far, far), none, 1.0));
        out.push(Patch::new(
            curve(Profile::Segment { p0: p1, p1: ps }),
            Piece::Lateral,
            (0.0, 1.0),
            none,
            1.0,
        ));
        out.push(Patch::new(curve(star), Piece::SigmaStar, (-g.theta_c, g.theta_c), none, -1.0));
        out.push(Patch::new(
            curve(Profile::Segment {
                p0: [ps[0], -ps[1]],
                p1: [p1[0], -p1[1]],
            }),
            Piece::Lateral,
            (0.0, 1.0),
            none,
            1.0,
        ));
        if include_sigma {
            out.push(Patch::new(curve(sphere), Piece::Sigma, (far, PI + g.psi_c), none, 1.0));
        }
    } else {
        let rev = |profile| Chart::Revolution { profile, shift };
        let full = (0.0, 2.0 * PI);
        out.push(Patch::new(rev(sphere), Piece::SphereRemainder, (0.0, far), full, 1.0));
        out.push(Patch::new(
            rev(Profile::Segment { p0: p1, p1: ps }),
            Piece::Lateral,
            (0.0, 1.0),
            full,
            1.0,
        ));
        out.push(Patch::new(rev(star), Piece::SigmaStar, (0.0, g.theta_c), full, -1.0));
        if include_sigma {
            out.push(Patch::new(rev(sphere), Piece::Sigma, (far, PI), full, 1.0));
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Cell {
    u: (f64, f64),
    v: (f64, f64),
    depth: u32,
}

fn polyline_len(patch: &Patch, along_u: bool, fixed: f64, range: (f64, f64), samples: usize) -> f64 {
    let mut len = 0.0;
    let mut prev: Option<Vec3> = None;
    for i in 0..=samples {
        let t = range.0 + (range.1 - range.0) * i as f64 / samples as f64;
        let p = if along_u {
            patch.point(t, fixed)
        } else {
            patch.point(fixed, t)
        };
        if let Some(q) = prev {
            len += vector::dist(p, q);
        }
        prev = Some(p);
    }
    len
}

/// Physical extents of a cell along u and v, and the 9-point sample set.
fn cell_extent(patch: &Patch, cell: &Cell, surface: bool) -> (f64, f64, [Vec3; 9]) {
    let us = [cell.u.0, 0.5 * (cell.u.0 + cell.u.1), cell.u.1];
    let vs = if surface {
        [cell.v.0, 0.5 * (cell.v.0 + cell.v.1), cell.v.1]
    } else {
        [0.0; 3]
    };
    let mut pts = [[0.0; 3]; 9];
    for i in 0..3 {
        for j in 0..3 {
            pts[3 * i + j] = patch.point(us[i], vs[j]);
        }
    }
    let mut du: f64 = 0.0;
    let mut dv: f64 = 0.0;
    for j in 0..3 {
        du = du.max(vector::dist(pts[j], pts[3 + j]) + vector::dist(pts[3 + j], pts[6 + j]));
    }
    if surface {
        for i in 0..3 {
            dv = dv.max(vector::dist(pts[3 * i], pts[3 * i + 1]) + vector::dist(pts[3 * i + 1], pts[3 * i + 2]));
        }
    }
    (du, dv, pts)
}

/// Base facet size at a level, relative to the domain scale.
pub fn base_size(dim: usize, level: u32) -> f64 {
    let h0 = if dim == 2 { 2.0 * PI / 64.0 } else { PI / 8.0 };
    h0 * 0.5f64.powi(level as i32)
}

pub fn mesh_boundary_with(spec: &DomainSpec, opts: &MeshOptions) -> Result<SurfaceMesh> {
    spec.validate()?;
    let dim = spec.dim;
    let patch_list = patches(spec, opts.include_sigma)?;
    let scale = spec.frame().scale;
    let h_base = scale * base_size(dim, opts.level);
    let kappa = opts.kappa * 0.5f64.powi(opts.level as i32);

    let mut grading = opts.grading.clone();
    if let Some(g) = spec.beak() {
        grading.push(GradePoint {
            point: g.apex(),
            h_min: 0.25 * g.r_star,
        });
    }

    let (gx, gw) = match opts.rule {
        FacetRule::Midpoint => (vec![0.0], vec![2.0]),
        FacetRule::Gauss(p) => gauss_legendre(p),
    };

    let mut facets = Vec::new();
    let mut nodes = Vec::new();
    for patch in &patch_list {
        let surface = patch.chart.is_surface();
        // uniform base subdivision
        let len_u = [0.0, 0.5, 1.0]
            .iter()
            .map(|&f| {
                let v = patch.v.0 + f * (patch.v.1 - patch.v.0);
                polyline_len(patch, true, v, patch.u, 256)
            })
            .fold(0.0, f64::max);
        let nu = ((len_u / h_base) - 1e-9).ceil().max(1.0) as usize;
        let nv = if surface {
            let len_v = (0..=8)
                .map(|i| {
                    let u = patch.u.0 + (patch.u.1 - patch.u.0) * (i as f64 + 0.5) / 9.0;
                    polyline_len(patch, false, u, patch.v, 256)
                })
                .fold(0.0, f64::max);
            ((len_v / h_base) - 1e-9).ceil().max(1.0) as usize
        } else {
            1
        };
        let mut stack = Vec::new();
        for i in (0..nu).rev() {
            for j in (0..nv).rev() {
                let u0 = patch.u.0 + (patch.u.1 - patch.u.0) * i as f64 / nu as f64;
                let u1 = patch.u.0 + (patch.u.1 - patch.u.0) * (i + 1) as f64 / nu as f64;
                let (v0, v1) = if surface {
                    (
                        patch.v.0 + (patch.v.1 - patch.v.0) * j as f64 / nv as f64,
                        patch.v.0 + (patch.v.1 - patch.v.0) * (j + 1) as f64 / nv as f64,
                    )
                } else {
                    (0.0, 0.0)
                };
                stack.push(Cell {
                    u: (u0, u1),
                    v: (v0, v1),
                    depth: 0,
                });
            }
        }
        while let Some(cell) = stack.pop() {
            let (du, dv, pts) = cell_extent(patch, &cell, surface);
            let diam = du.max(dv);
            let mut target = h_base;
            for g in &grading {
                let dmin = pts
                    .iter()
                    .map(|p| vector::dist(*p, g.point))
                    .fold(f64::INFINITY, f64::min);
                let d = (dmin - 0.5 * diam).max(0.0);
                target = target.min(kappa * d.max(g.h_min));
            }
            if diam > target && cell.depth < 48 {
                let split_u = du > 0.5 * diam;
                let split_v = surface && dv > 0.5 * diam;
                let um = 0.5 * (cell.u.0 + cell.u.1);
                let vm = 0.5 * (cell.v.0 + cell.v.1);
                let us: &[(f64, f64)] = if split_u { &[(cell.u.0, um), (um, cell.u.1)] } else { &[cell.u] };
                let vs: &[(f64, f64)] = if split_v { &[(cell.v.0, vm), (vm, cell.v.1)] } else { &[cell.v] };
                for &u in us.iter().rev() {
                    for &v in vs.iter().rev() {
                        stack.push(Cell {
                            u,
                            v,
                            depth: cell.depth + 1,
                        });
                    }
                }
                continue;
            }
            if facets.len() >= opts.max_facets {
                return Err(Error::MeshTooLarge(opts.max_facets));
            }
            // quadrature nodes
            let first = nodes.len();
            let hu = 0.5 * (cell.u.1 - cell.u.0);
            let hv = 0.5 * (cell.v.1 - cell.v.0);
            let (um, vm) = (cell.u.0 + hu, cell.v.0 + hv);
            let mut area = 0.0;
            if surface {
                for (xi, wi) in gx.iter().zip(&gw) {
                    for (xj, wj) in gx.iter().zip(&gw) {
                        let (p, nrm, j) = patch.frame_at(um + hu * xi, vm + hv * xj);
                        let w = wi * wj * hu * hv * j;
                        area += w;
                        nodes.push(QuadNode {
                            point: p,
                            weight: w,
                            normal: nrm,
                        });
                    }
                }
            } else {
                for (xi, wi) in gx.iter().zip(&gw) {
                    let (p, nrm, j) = patch.frame_at(um + hu * xi, 0.0);
                    let w = wi * hu * j;
                    area += w;
                    nodes.push(QuadNode {
                        point: p,
                        weight: w,
                        normal: nrm,
                    });
                }
            }
            let (c, nrm, _) = patch.frame_at(um, vm);
            facets.push(Facet {
                centroid: c,
                area,
                normal: nrm,
                piece: patch.piece,
                diameter: diam,
                first_node: first,
                node_count: nodes.len() - first,
            });
        }
    }
    Ok(SurfaceMesh {
        dim,
        level: opts.level,
        grading_center: opts.grading.first().map(|g| g.point[..dim].to_vec()),
        facets,
        nodes,
    })
}

/// Mesh of `∂D` at a refinement level, optionally graded towards a boundary point.
pub fn mesh_boundary(spec: &DomainSpec, level: u32, grading_center: Option<&[f64]>) -> Result<SurfaceMesh> {
    let mut opts = MeshOptions::new(level);
    if let Some(g) = grading_center {
        let h_min = spec.frame().scale * crate::defaults::DEFAULT_GRADING_FLOOR;
        opts = opts.graded(g, h_min);
    }
    mesh_boundary_with(spec, &opts)
}
