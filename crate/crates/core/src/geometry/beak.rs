//! Exact geometry of the beaked sphere `D(ε) = B(ε) ∪ K(ε)`.
//!
//! Reference placement: apex of the cone at the origin, `B(ε) = B((1+ε)e₁, 1)`,
//! cone `K = {x₁/|x| > 1/√n}`. `K(ε)` is the union of the cone segments
//! `{ρω : ε^m ≤ ρ ≤ ρ_Σ(ω)}` between the small sphere `|x| = ε^m` and the
//! near component Σ_ε of `K ∩ ∂B(ε)`. The recentered variant is shifted by
//! `-(1+ε)e₁`.

use std::f64::consts::PI;

use crate::kernels::sphere_area;
use crate::vector::{self, Vec3};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeakGeometry {
    pub n: usize,
    pub eps: f64,
    pub m: u32,
    /// Distance from the apex to the ball center, `1 + ε`.
    pub c: f64,
    pub cos_t: f64,
    pub sin_t: f64,
    /// Cone half-angle.
    pub theta_c: f64,
    /// Apex distance of the rim of Σ_ε along a cone ray.
    pub rho1: f64,
    /// Half-angle of Σ_ε seen from the ball center, measured from `-e₁`.
    pub psi_c: f64,
    /// Truncation radius `ε^m`.
    pub r_star: f64,
    /// Translation applied to the reference placement along e₁.
    pub shift: f64,
}

impl BeakGeometry {
    pub fn new(n: usize, eps: f64, m: u32, recentered: bool) -> Self {
        let c = 1.0 + eps;
        let cos_t = 1.0 / (n as f64).sqrt();
        let sin_t = (1.0 - cos_t * cos_t).sqrt();
        let disc = (c * c * cos_t * cos_t - (c * c - 1.0)).max(0.0);
        // stable near root of ρ² - 2cρ cosθ + (c² - 1) = 0
        let rho1 = (c * c - 1.0) / (c * cos_t + disc.sqrt());
        let psi_c = (rho1 * sin_t).atan2(c - rho1 * cos_t);
        BeakGeometry {
            n,
            eps,
            m,
            c,
            cos_t,
            sin_t,
            theta_c: cos_t.acos(),
            rho1,
            psi_c,
            r_star: eps.powi(m as i32),
            shift: if recentered { -c } else { 0.0 },
        }
    }

    pub fn apex(&self) -> Vec3 {
        [self.shift, 0.0, 0.0]
    }

    /// Ball center, the point x(ε) of the reference placement.
    pub fn ball_center(&self) -> Vec3 {
        [self.c + self.shift, 0.0, 0.0]
    }

    /// The touching point opposite the beak.
    pub fn far_pole(&self) -> Vec3 {
        [self.c + 1.0 + self.shift, 0.0, 0.0]
    }

    /// Rim radius of Σ_ε along a cone direction `w1 = ω·e₁ ≥ cos θ_c`.
    pub fn rho_sigma(&self, w1: f64) -> f64 {
        let c = self.c;
        let disc = (c * c * w1 * w1 - (c * c - 1.0)).max(0.0);
        (c * c - 1.0) / (c * w1 + disc.sqrt())
    }

    pub fn contains(&self, p: Vec3) -> bool {
        let q = [p[0] - self.shift, p[1], p[2]];
        if vector::dist(q, [self.c, 0.0, 0.0]) < 1.0 {
            return true;
        }
        let r = vector::norm(q);
        if r <= self.r_star {
            return false;
        }
        let w1 = q[0] / r;
        w1 > self.cos_t && r < self.rho_sigma(w1)
    }

    /// Membership in `B*(ε) = B(x(ε), 1 + ε)`.
    pub fn in_outer_ball(&self, p: Vec3) -> bool {
        let q = [p[0] - self.shift, p[1], p[2]];
        vector::dist(q, [self.c, 0.0, 0.0]) < self.c
    }

    /// Closest boundary point, computed in the meridian half-plane.
    pub fn nearest(&self, p: Vec3) -> Vec3 {
        let q = [p[0] - self.shift, p[1], p[2]];
        let (x1, r, perp) = if self.n == 2 {
            let s = if q[1] < 0.0 { -1.0 } else { 1.0 };
            (q[0], q[1].abs(), [0.0, s, 0.0])
        } else {
            let rr = (q[1] * q[1] + q[2] * q[2]).sqrt();
            let perp = if rr > 0.0 { [0.0, q[1] / rr, q[2] / rr] } else { [0.0, 1.0, 0.0] };
            (q[0], rr, perp)
        };
        let mut best = (f64::INFINITY, 0.0, 0.0);
        let mut consider = |a: f64, b: f64| {
            let d = ((a - x1).powi(2) + (b - r).powi(2)).sqrt();
            if d < best.0 {
                best = (d, a, b);
            }
        };
        let beta = r.atan2(x1 - self.c).clamp(0.0, PI - self.psi_c);
        consider(self.c + beta.cos(), beta.sin());
        let (p1, ps) = (self.rim_point(), self.star_point());
        let dir = [ps[0] - p1[0], ps[1] - p1[1]];
        let len2 = dir[0] * dir[0] + dir[1] * dir[1];
        let lam = (((x1 - p1[0]) * dir[0] + (r - p1[1]) * dir[1]) / len2).clamp(0.0, 1.0);
        consider(p1[0] + lam * dir[0], p1[1] + lam * dir[1]);
        let gam = r.atan2(x1).clamp(0.0, self.theta_c);
        consider(self.r_star * gam.cos(), self.r_star * gam.sin());
        let (_, a, b) = best;
        [a + self.shift, b * perp[1], b * perp[2]]
    }

    /// Rim of Σ_ε in the meridian half-plane.
    pub fn rim_point(&self) -> [f64; 2] {
        [self.rho1 * self.cos_t, self.rho1 * self.sin_t]
    }

    /// Rim of Σ*_ε in the meridian half-plane.
    pub fn star_point(&self) -> [f64; 2] {
        [self.r_star * self.cos_t, self.r_star * self.sin_t]
    }

    pub fn sigma_area(&self) -> f64 {
        if self.n == 2 {
            2.0 * self.psi_c
        } else {
            2.0 * PI * (1.0 - self.psi_c.cos())
        }
    }

    /// `|K ∩ S^{n-1}|`.
    pub fn unit_cap_area(&self) -> f64 {
        if self.n == 2 {
            2.0 * self.theta_c
        } else {
            2.0 * PI * (1.0 - self.cos_t)
        }
    }

    pub fn sigma_star_area(&self) -> f64 {
        self.unit_cap_area() * self.r_star.powi(self.n as i32 - 1)
    }

    pub fn lateral_area(&self) -> f64 {
        if self.n == 2 {
            2.0 * (self.rho1 - self.r_star)
        } else {
            PI * self.sin_t * (self.rho1 * self.rho1 - self.r_star * self.r_star)
        }
    }

    pub fn sphere_remainder_area(&self) -> f64 {
        sphere_area(self.n) - self.sigma_area()
    }

    pub fn boundary_area(&self) -> f64 {
        self.sphere_remainder_area() + self.lateral_area() + self.sigma_star_area()
    }

    /// Leading coefficients `|S₀|`, `|Σ₀|` of `|S_ε| ~ |S₀| ε^{n-1}`, `|Σ_ε| ~ |Σ₀| ε^{n-1}`.
    pub fn leading_coefficients(n: usize) -> (f64, f64) {
        let cos_t = 1.0 / (n as f64).sqrt();
        let sin_t = (1.0 - cos_t * cos_t).sqrt();
        // ρ₁ = ε / cosθ + O(ε²)
        let drho = 1.0 / cos_t;
        if n == 2 {
            (2.0 * drho, 2.0 * drho * sin_t)
        } else {
            (PI * sin_t * drho * drho, PI * (drho * sin_t).powi(2))
        }
    }

    /// `c₀ = ∫_{K ∩ S^{n-1}} (y₁² - 1/n) dσ`.
    pub fn cone_moment(n: usize) -> f64 {
        let cos_t = 1.0 / (n as f64).sqrt();
        if n == 2 {
            let t = cos_t.acos();
            (2.0 * t).sin() / 2.0
        } else {
            2.0 * PI / 3.0 * (cos_t - cos_t.powi(3))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rim_lies_on_sphere_and_cone() {
        for &(n, eps) in &[(2usize, 0.1), (3, 0.05), (3, 0.2)] {
            let g = BeakGeometry::new(n, eps, n as u32 + 1, false);
            let p = g.rim_point();
            let d = ((p[0] - g.c).powi(2) + p[1] * p[1]).sqrt();
            assert!((d - 1.0).abs() < 1e-14);
            let beta = p[1].atan2(p[0] - g.c);
            assert!((beta - (PI - g.psi_c)).abs() < 1e-14);
        }
    }

    #[test]
    fn leading_coefficients_match_closed_forms() {
        let (s0, g0) = BeakGeometry::leading_coefficients(2);
        assert!((s0 - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!((g0 - 2.0).abs() < 1e-14);
        let (s0, g0) = BeakGeometry::leading_coefficients(3);
        assert!((s0 - PI * 6f64.sqrt()).abs() < 1e-13);
        assert!((g0 - 2.0 * PI).abs() < 1e-13);
        assert!((BeakGeometry::cone_moment(2) - 0.5).abs() < 1e-15);
        assert!((BeakGeometry::cone_moment(3) - 4.0 * PI / (9.0 * 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn nearest_point_on_far_side() {
        let g = BeakGeometry::new(3, 0.1, 4, true);
        let q = g.nearest([1.3, 0.0, 0.0]);
        assert!(vector::dist(q, [1.0, 0.0, 0.0]) < 1e-14);
        let q = g.nearest([-1.1 - 0.5, 0.0, 0.0]);
        let ps = g.star_point();
        assert!(vector::dist(q, [-1.1 + ps[0], ps[1], 0.0]) < 1e-12);
    }
}
