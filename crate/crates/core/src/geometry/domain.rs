use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::beak::BeakGeometry;
use crate::kernels::ball_volume;
use crate::vector::{self, Mat3, Vec3};

/// Non-negative C² bump `A·((s - onset)/(1 - onset))³` for `s > onset`, zero
/// below, where `s` is the cosine between a direction and `axis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub axis: Vec<f64>,
    pub amplitude: f64,
    pub onset: f64,
}

impl Bump {
    /// Profile value and derivative in `s`.
    pub fn profile(&self, s: f64) -> (f64, f64) {
        if s <= self.onset {
            return (0.0, 0.0);
        }
        let w = 1.0 - self.onset;
        let u = (s - self.onset) / w;
        (self.amplitude * u * u * u, 3.0 * self.amplitude * u * u / w)
    }

    pub fn unit_axis(&self) -> Vec3 {
        vector::normalize(vector::pad(&self.axis))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Shape {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    /// Ellipsoid `{ c + R·y : Σ (y_i/a_i)² < 1 }`; `rotation` lists the rows of `R`.
    Spheroid {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rotation: Option<Vec<Vec<f64>>>,
    },
    /// Star-shaped domain `|x - c| < R (1 + bump(x̂·axis))`.
    GraphPerturbedBall {
        center: Vec<f64>,
        radius: f64,
        bump: Bump,
    },
    /// Ball `B((1+ε)e₁, 1)` with a conical beak reaching towards the origin,
    /// truncated at `|x| = ε^m`. `recentered` translates by `-(1+ε)e₁`.
    BeakedSphere {
        eps: f64,
        m: u32,
        #[serde(default)]
        recentered: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub dim: usize,
    pub shape: Shape,
}

/// Placement used to make meshing and derived constructions covariant under
/// translations, rotations and dilations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub origin: Vec3,
    pub rotation: Mat3,
    pub scale: f64,
}

/// Largest admissible ε for the beaked sphere in dimension `n`.
pub fn beak_eps_max(n: usize) -> f64 {
    match n {
        2 => 0.25,
        _ => 0.22,
    }
}

impl DomainSpec {
    pub fn ball(center: &[f64], radius: f64) -> Self {
        DomainSpec {
            dim: center.len(),
            shape: Shape::Ball {
                center: center.to_vec(),
                radius,
            },
        }
    }

    pub fn unit_ball(dim: usize) -> Self {
        Self::ball(&vec![0.0; dim], 1.0)
    }

    pub fn spheroid(center: &[f64], semi_axes: &[f64]) -> Self {
        DomainSpec {
            dim: center.len(),
            shape: Shape::Spheroid {
                center: center.to_vec(),
                semi_axes: semi_axes.to_vec(),
                rotation: None,
            },
        }
    }

    pub fn graph_perturbed_ball(center: &[f64], radius: f64, bump: Bump) -> Self {
        DomainSpec {
            dim: center.len(),
            shape: Shape::GraphPerturbedBall {
                center: center.to_vec(),
                radius,
                bump,
            },
        }
    }

    pub fn beaked(dim: usize, eps: f64, m: u32, recentered: bool) -> Self {
        DomainSpec {
            dim,
            shape: Shape::BeakedSphere { eps, m, recentered },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        if n < 2 {
            return Err(Error::InvalidDomain(format!("dimension {n} < 2")));
        }
        let check_point = |p: &[f64], what: &str| -> Result<()> {
            if p.len() != n || p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidDomain(format!(
                    "{what} must be a finite point in R^{n}"
                )));
            }
            Ok(())
        };
        match &self.shape {
            Shape::Ball { center, radius } => {
                check_point(center, "center")?;
                if !(*radius > 0.0 && radius.is_finite()) {
                    return Err(Error::InvalidDomain("radius must be positive".into()));
                }
            }
            Shape::Spheroid {
                center,
                semi_axes,
                rotation,
            } => {
                check_point(center, "center")?;
                if semi_axes.len() != n || semi_axes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
                    return Err(Error::InvalidDomain(format!(
                        "spheroid needs {n} positive semi-axes"
                    )));
                }
                if let Some(r) = rotation {
                    if r.len() != n || r.iter().any(|row| row.len() != n) {
                        return Err(Error::InvalidDomain("rotation must be n×n".into()));
                    }
                    for i in 0..n {
                        for j in 0..n {
                            let d: f64 = (0..n).map(|k| r[i][k] * r[j][k]).sum();
                            let want = if i == j { 1.0 } else { 0.0 };
                            if (d - want).abs() > 1e-9 {
                                return Err(Error::InvalidDomain(
                                    "rotation must be orthogonal".into(),
                                ));
                            }
                        }
                    }
                }
            }
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => {
                check_point(center, "center")?;
                check_point(&bump.axis, "bump axis")?;
                if !(*radius > 0.0) {
                    return Err(Error::InvalidDomain("radius must be positive".into()));
                }
                if vector::norm(vector::pad(&bump.axis)) < 1e-12 {
                    return Err(Error::InvalidDomain("bump axis must be nonzero".into()));
                }
                if !(bump.amplitude >= 0.0 && bump.amplitude.is_finite()) {
                    return Err(Error::InvalidDomain("bump amplitude must be >= 0".into()));
                }
                if !(bump.onset > -1.0 && bump.onset < 1.0) {
                    return Err(Error::InvalidDomain("bump onset must lie in (-1, 1)".into()));
                }
            }
            Shape::BeakedSphere { eps, m, .. } => {
                if n > 3 {
                    return Err(Error::UnsupportedDimension(n));
                }
                let emax = beak_eps_max(n);
                if !(*eps > 0.0 && *eps < emax) {
                    return Err(Error::InvalidParameter(format!(
                        "beaked sphere needs 0 < eps < {emax}, got {eps}"
                    )));
                }
                if (*m as usize) <= n {
                    return Err(Error::InvalidParameter(format!(
                        "beaked sphere needs m > n = {n}, got {m}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn beak(&self) -> Option<BeakGeometry> {
        match self.shape {
            Shape::BeakedSphere { eps, m, recentered } => {
                Some(BeakGeometry::new(self.dim, eps, m, recentered))
            }
            _ => None,
        }
    }

    pub fn is_ball(&self) -> bool {
        matches!(self.shape, Shape::Ball { .. })
    }

    /// Spheroid rotation as a 3×3 matrix (identity when absent).
    pub(crate) fn rotation3(&self) -> Mat3 {
        if let Shape::Spheroid {
            rotation: Some(r), ..
        } = &self.shape
        {
            let mut m = vector::IDENTITY;
            for (i, row) in r.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    m[i][j] = *v;
                }
            }
            m
        } else {
            vector::IDENTITY
        }
    }

    /// Reference placement: origin, orientation and length scale.
    pub fn frame(&self) -> Frame {
        match &self.shape {
            Shape::Ball { center, radius } => Frame {
                origin: vector::pad(center),
                rotation: vector::IDENTITY,
                scale: *radius,
            },
            Shape::Spheroid {
                center, semi_axes, ..
            } => Frame {
                origin: vector::pad(center),
                rotation: self.rotation3(),
                scale: semi_axes.iter().cloned().fold(0.0, f64::max),
            },
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => Frame {
                origin: vector::pad(center),
                rotation: vector::rotation_between([1.0, 0.0, 0.0], bump.unit_axis()),
                scale: *radius,
            },
            Shape::BeakedSphere { .. } => {
                let b = self.beak().expect("beaked");
                Frame {
                    origin: b.ball_center(),
                    rotation: vector::IDENTITY,
                    scale: 1.0,
                }
            }
        }
    }

    /// Upper bound for `max_{x ∈ ∂D} |x - p|`.
    pub fn circumradius_about(&self, p: &[f64]) -> f64 {
        let p3 = vector::pad(p);
        match &self.shape {
            Shape::Ball { center, radius } => radius + vector::dist(p3, vector::pad(center)),
            Shape::Spheroid {
                center, semi_axes, ..
            } => {
                semi_axes.iter().cloned().fold(0.0, f64::max) + vector::dist(p3, vector::pad(center))
            }
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => radius * (1.0 + bump.amplitude) + vector::dist(p3, vector::pad(center)),
            Shape::BeakedSphere { .. } => {
                let b = self.beak().expect("beaked");
                let to_ball = 1.0 + vector::dist(p3, b.ball_center());
                let to_apex = vector::dist(p3, b.apex()) + b.r_star;
                to_ball.max(to_apex)
            }
        }
    }

    /// Closed-form volume where available.
    pub fn volume_analytic(&self) -> Option<f64> {
        let n = self.dim;
        match &self.shape {
            Shape::Ball { radius, .. } => Some(ball_volume(n) * radius.powi(n as i32)),
            Shape::Spheroid { semi_axes, .. } => {
                Some(ball_volume(n) * semi_axes.iter().product::<f64>())
            }
            _ => None,
        }
    }

    /// Open-set membership.
    pub fn contains(&self, x: &[f64]) -> bool {
        let p = vector::pad(x);
        match &self.shape {
            Shape::Ball { center, radius } => vector::dist(p, vector::pad(center)) < *radius,
            Shape::Spheroid {
                center, semi_axes, ..
            } => {
                let y = vector::mat_t_vec(&self.rotation3(), vector::sub(p, vector::pad(center)));
                let s: f64 = (0..self.dim).map(|i| (y[i] / semi_axes[i]).powi(2)).sum();
                s < 1.0
            }
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => {
                let d = vector::sub(p, vector::pad(center));
                let r = vector::norm(d);
                if r == 0.0 {
                    return true;
                }
                let s = vector::dot(d, bump.unit_axis()) / r;
                r < radius * (1.0 + bump.profile(s).0)
            }
            Shape::BeakedSphere { .. } => self.beak().expect("beaked").contains(p),
        }
    }

    /// Closest boundary point to an exterior point `p`.
    pub fn nearest_boundary_point(&self, p: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim;
        let p3 = vector::pad(p);
        let out = match &self.shape {
            Shape::Ball { center, radius } => {
                let c = vector::pad(center);
                let d = vector::sub(p3, c);
                let r = vector::norm(d);
                if r == 0.0 {
                    let mut q = c;
                    q[0] += radius;
                    q
                } else {
                    vector::add(c, vector::scale(d, radius / r))
                }
            }
            Shape::Spheroid {
                center, semi_axes, ..
            } => {
                let rot = self.rotation3();
                let c = vector::pad(center);
                let y = vector::mat_t_vec(&rot, vector::sub(p3, c));
                let q = nearest_on_ellipsoid(&y, semi_axes, n)?;
                vector::add(c, vector::mat_vec(&rot, q))
            }
            Shape::GraphPerturbedBall { .. } => self.nearest_by_search(p3),
            Shape::BeakedSphere { .. } => self.beak().expect("beaked").nearest(p3),
        };
        Ok(out[..n].to_vec())
    }

    fn nearest_by_search(&self, p: Vec3) -> Vec3 {
        let Shape::GraphPerturbedBall {
            center,
            radius,
            bump,
        } = &self.shape
        else {
            unreachable!()
        };
        let c = vector::pad(center);
        let axis = bump.unit_axis();
        let surf = |d: Vec3| -> Vec3 {
            let s = vector::dot(d, axis);
            vector::add(c, vector::scale(d, radius * (1.0 + bump.profile(s).0)))
        };
        let dir = |a: f64, b: f64| -> Vec3 {
            if self.dim == 2 {
                [a.cos(), a.sin(), 0.0]
            } else {
                [b.cos(), b.sin() * a.cos(), b.sin() * a.sin()]
            }
        };
        // coarse scan, then shrinking pattern search
        let (na, nb) = if self.dim == 2 { (4096, 1) } else { (256, 128) };
        let mut best = (f64::INFINITY, 0.0, 0.0);
        for i in 0..na {
            for j in 0..nb {
                let a = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / na as f64;
                let b = std::f64::consts::PI * (j as f64 + 0.5) / nb as f64;
                let d = vector::dist(surf(dir(a, b)), p);
                if d < best.0 {
                    best = (d, a, b);
                }
            }
        }
        let mut step = 2.0 * std::f64::consts::PI / na as f64;
        while step > 1e-13 {
            let mut improved = false;
            for (da, db) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                if self.dim == 2 && db != 0.0 {
                    continue;
                }
                let (a, b) = (best.1 + da * step, best.2 + db * step);
                let d = vector::dist(surf(dir(a, b)), p);
                if d < best.0 {
                    best = (d, a, b);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        surf(dir(best.1, best.2))
    }

    pub fn translated(&self, v: &[f64]) -> Result<Self> {
        let shift = |c: &Vec<f64>| c.iter().zip(v).map(|(a, b)| a + b).collect::<Vec<_>>();
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball {
                center: shift(center),
                radius: *radius,
            },
            Shape::Spheroid {
                center,
                semi_axes,
                rotation,
            } => Shape::Spheroid {
                center: shift(center),
                semi_axes: semi_axes.clone(),
                rotation: rotation.clone(),
            },
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => Shape::GraphPerturbedBall {
                center: shift(center),
                radius: *radius,
                bump: bump.clone(),
            },
            Shape::BeakedSphere { .. } => {
                return Err(Error::Unsupported("beaked spheres are kept in their reference placement".into()))
            }
        };
        Ok(DomainSpec {
            dim: self.dim,
            shape,
        })
    }

    /// Image under `x ↦ Q x` for an orthogonal `q` (rows).
    pub fn rotated(&self, q: &[Vec<f64>]) -> Result<Self> {
        let n = self.dim;
        let apply = |v: &Vec<f64>| -> Vec<f64> {
            (0..n).map(|i| (0..n).map(|j| q[i][j] * v[j]).sum()).collect()
        };
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball {
                center: apply(center),
                radius: *radius,
            },
            Shape::Spheroid {
                center,
                semi_axes,
                rotation,
            } => {
                let old: Vec<Vec<f64>> = match rotation {
                    Some(r) => r.clone(),
                    None => (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect(),
                };
                let new: Vec<Vec<f64>> = (0..n)
                    .map(|i| (0..n).map(|j| (0..n).map(|k| q[i][k] * old[k][j]).sum()).collect())
                    .collect();
                Shape::Spheroid {
                    center: apply(center),
                    semi_axes: semi_axes.clone(),
                    rotation: Some(new),
                }
            }
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => Shape::GraphPerturbedBall {
                center: apply(center),
                radius: *radius,
                bump: Bump {
                    axis: apply(&bump.axis),
                    ..bump.clone()
                },
            },
            Shape::BeakedSphere { .. } => {
                return Err(Error::Unsupported("beaked spheres are kept in their reference placement".into()))
            }
        };
        let out = DomainSpec { dim: n, shape };
        out.validate()?;
        Ok(out)
    }

    /// Image under `x ↦ λ x`.
    pub fn dilated(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter("dilation factor must be positive".into()));
        }
        let sc = |c: &Vec<f64>| c.iter().map(|a| a * lambda).collect::<Vec<_>>();
        let shape = match &self.shape {
            Shape::Ball { center, radius } => Shape::Ball {
                center: sc(center),
                radius: radius * lambda,
            },
            Shape::Spheroid {
                center,
                semi_axes,
                rotation,
            } => Shape::Spheroid {
                center: sc(center),
                semi_axes: sc(semi_axes),
                rotation: rotation.clone(),
            },
            Shape::GraphPerturbedBall {
                center,
                radius,
                bump,
            } => Shape::GraphPerturbedBall {
                center: sc(center),
                radius: radius * lambda,
                bump: bump.clone(),
            },
            Shape::BeakedSphere { .. } => {
                return Err(Error::Unsupported("beaked spheres are kept in their reference placement".into()))
            }
        };
        Ok(DomainSpec {
            dim: self.dim,
            shape,
        })
    }
}

/// Closest point of the ellipsoid `Σ (q_i/a_i)² = 1` to an exterior point `y`
/// (local coordinates), via the secular equation in the Lagrange multiplier.
fn nearest_on_ellipsoid(y: &Vec3, a: &[f64], n: usize) -> Result<Vec3> {
    let level: f64 = (0..n).map(|i| (y[i] / a[i]).powi(2)).sum();
    if level <= 1.0 {
        return Err(Error::Unsupported(
            "nearest boundary point is only provided for exterior points".into(),
        ));
    }
    let f = |lam: f64| -> f64 {
        (0..n)
            .map(|i| (a[i] * y[i] / (a[i] * a[i] + lam)).powi(2))
            .sum::<f64>()
            - 1.0
    };
    let amax = a.iter().cloned().fold(0.0, f64::max);
    let mut lo = 0.0;
    let mut hi = amax * vector::norm(*y) + amax * amax;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-17 * hi {
            break;
        }
    }
    let lam = 0.5 * (lo + hi);
    let mut q = [0.0; 3];
    for i in 0..n {
        q[i] = a[i] * a[i] * y[i] / (a[i] * a[i] + lam);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheroid_nearest_point() {
        let d = DomainSpec::spheroid(&[0.0, 0.0], &[1.2, 1.0]);
        let q = d.nearest_boundary_point(&[0.0, 1.01]).unwrap();
        assert!((q[0]).abs() < 1e-14 && (q[1] - 1.0).abs() < 1e-14);
        let q = d.nearest_boundary_point(&[2.0, 1.0]).unwrap();
        let lev = (q[0] / 1.2).powi(2) + q[1] * q[1];
        assert!((lev - 1.0).abs() < 1e-12);
        // normal at q points towards p
        let grad = [q[0] / 1.44, q[1]];
        let d0 = [2.0 - q[0], 1.0 - q[1]];
        assert!((grad[0] * d0[1] - grad[1] * d0[0]).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(DomainSpec::beaked(2, 0.3, 4, false).validate().is_err());
        assert!(DomainSpec::beaked(2, 0.1, 2, false).validate().is_err());
        assert!(DomainSpec::beaked(3, 0.1, 4, false).validate().is_ok());
        assert!(DomainSpec::ball(&[0.0, 0.0], -1.0).validate().is_err());
        assert!(matches!(
            DomainSpec::beaked(4, 0.1, 5, false).validate(),
            Err(Error::UnsupportedDimension(4))
        ));
    }

    #[test]
    fn serde_roundtrip() {
        let d = DomainSpec::graph_perturbed_ball(
            &[0.0, 0.0, 0.0],
            1.0,
            Bump {
                axis: vec![0.0, 0.0, 1.0],
                amplitude: 0.1,
                onset: 0.5,
            },
        );
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"type\":\"graph_perturbed_ball\""));
        let back: DomainSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
