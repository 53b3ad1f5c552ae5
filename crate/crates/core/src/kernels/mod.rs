//! Closed-form harmonic functions: Kuran kernels, the fundamental solution,
//! the cone function and harmonic polynomials.
//!
//! The fundamental solution is normalized as
//! `Γ(x) = -(1/2π) log|x|` for n = 2 and `Γ(x) = |x|^{2-n} / ((n-2) σ_n)` for n ≥ 3,
//! so that `-ΔΓ = δ` and `∮_{∂B(0,1)} Γ(x - y) dσ(x) = σ_n Γ(y)` for `|y| > 1`.

mod poly;

pub use poly::{harmonic_dictionary, monomials, HarmonicPoly, Term};

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Surface measure σ_n of the unit sphere in R^n.
pub fn sphere_area(n: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (n as f64 - 2.0) * sphere_area(n - 2),
    }
}

/// Volume ω_n of the unit ball in R^n.
pub fn ball_volume(n: usize) -> f64 {
    sphere_area(n) / n as f64
}

fn norm_t<T: Float>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt()
}

fn dist_t<T: Float>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (&p, &q)| acc + (p - q) * (p - q))
        .sqrt()
}

fn c<T: Float>(v: f64) -> T {
    T::from(v).unwrap()
}

fn gamma_t<T: Float>(x: &[T]) -> T {
    let n = x.len();
    let r = norm_t(x);
    if n == 2 {
        -r.ln() / c::<T>(2.0 * std::f64::consts::PI)
    } else {
        r.powi(2 - n as i32) / c::<T>((n as f64 - 2.0) * sphere_area(n))
    }
}

fn kuran_h_t<T: Float>(alpha: &[T], x: &[T]) -> T {
    let n = x.len() as i32;
    let a2 = alpha.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let x2 = x.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let d = dist_t(x, alpha);
    let an = if n == 2 { T::one() } else { a2.sqrt().powi(n - 2) };
    an * (x2 - a2) / d.powi(n)
}

fn cone_u_t<T: Float>(x: &[T]) -> T {
    let n = x.len();
    let r2 = x.iter().fold(T::zero(), |acc, &v| acc + v * v);
    let r = r2.sqrt();
    (x[0] * x[0] / r2 - c::<T>(1.0 / n as f64)) / r.powi(n as i32)
}

/// Fundamental solution Γ(x).
pub fn gamma(x: &[f64]) -> Result<f64> {
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::Singularity { point: x.to_vec() });
    }
    Ok(gamma_t(x))
}

/// `h_α(x) = |α|^{n-2} (|x|² - |α|²) / |x - α|^n`.
pub fn kuran_h(alpha: &[f64], x: &[f64]) -> Result<f64> {
    if alpha.iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidPole);
    }
    if alpha == x {
        return Err(Error::Singularity { point: x.to_vec() });
    }
    Ok(kuran_h_t(alpha, x))
}

/// `k_α = 1 + h_α`.
pub fn kuran_k(alpha: &[f64], x: &[f64]) -> Result<f64> {
    kuran_h(alpha, x).map(|h| 1.0 + h)
}

/// `u(x) = |x|^{-n} (x₁²/|x|² - 1/n)`; positive in the cone `x₁/|x| > 1/√n`.
pub fn cone_u(x: &[f64]) -> Result<f64> {
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::Singularity { point: x.to_vec() });
    }
    Ok(cone_u_t(x))
}

/// Unchecked kernels used on hot quadrature paths.
pub mod raw {
    pub fn kuran_h(alpha: &[f64], x: &[f64]) -> f64 {
        super::kuran_h_t(alpha, x)
    }
    pub fn gamma(x: &[f64]) -> f64 {
        super::gamma_t(x)
    }
    pub fn cone_u(x: &[f64]) -> f64 {
        super::cone_u_t(x)
    }
}

/// A harmonic function with a known (possibly empty) singular point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HarmonicFn {
    KuranH {
        alpha: Vec<f64>,
    },
    KuranK {
        alpha: Vec<f64>,
    },
    ConeU,
    Fundamental {
        pole: Vec<f64>,
    },
    HarmonicMonomial {
        poly: HarmonicPoly,
    },
    /// `inner(Rᵀ (x - origin) / scale)` with `R` stored row-major (n×n).
    Transformed {
        inner: Box<HarmonicFn>,
        origin: Vec<f64>,
        rotation: Option<Vec<f64>>,
        scale: f64,
    },
}

impl HarmonicFn {
    pub fn kuran_k(alpha: &[f64]) -> Self {
        HarmonicFn::KuranK {
            alpha: alpha.to_vec(),
        }
    }

    pub fn kuran_h(alpha: &[f64]) -> Self {
        HarmonicFn::KuranH {
            alpha: alpha.to_vec(),
        }
    }

    pub fn fundamental(pole: &[f64]) -> Self {
        HarmonicFn::Fundamental {
            pole: pole.to_vec(),
        }
    }

    pub fn monomial(poly: HarmonicPoly) -> Self {
        HarmonicFn::HarmonicMonomial { poly }
    }

    /// Wraps `self` so that it is evaluated in the frame `(origin, rotation, scale)`.
    pub fn in_frame(self, origin: &[f64], rotation: Option<Vec<f64>>, scale: f64) -> Self {
        HarmonicFn::Transformed {
            inner: Box::new(self),
            origin: origin.to_vec(),
            rotation,
            scale,
        }
    }

    pub fn label(&self) -> String {
        match self {
            HarmonicFn::KuranH { alpha } => format!("h_alpha{:?}", alpha),
            HarmonicFn::KuranK { alpha } => format!("k_alpha{:?}", alpha),
            HarmonicFn::ConeU => "cone_u".to_string(),
            HarmonicFn::Fundamental { pole } => format!("gamma_pole{:?}", pole),
            HarmonicFn::HarmonicMonomial { poly } => poly.label.clone(),
            HarmonicFn::Transformed { inner, .. } => inner.label(),
        }
    }

    /// Singular point in world coordinates for an ambient dimension `n`.
    pub fn singular_point(&self, n: usize) -> Option<Vec<f64>> {
        match self {
            HarmonicFn::KuranH { alpha } | HarmonicFn::KuranK { alpha } => Some(alpha.clone()),
            HarmonicFn::ConeU => Some(vec![0.0; n]),
            HarmonicFn::Fundamental { pole } => Some(pole.clone()),
            HarmonicFn::HarmonicMonomial { .. } => None,
            HarmonicFn::Transformed {
                inner,
                origin,
                rotation,
                scale,
            } => inner.singular_point(n).map(|p| {
                let mut out = origin.clone();
                for i in 0..n {
                    let mut s = 0.0;
                    for j in 0..n {
                        let r = match rotation {
                            Some(rot) => rot[i * n + j],
                            None => (i == j) as u8 as f64,
                        };
                        s += r * p[j];
                    }
                    out[i] += scale * s;
                }
                out
            }),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            HarmonicFn::KuranH { alpha } | HarmonicFn::KuranK { alpha } => {
                if alpha.len() != n {
                    return Err(Error::InvalidParameter(format!(
                        "pole has dimension {}, expected {n}",
                        alpha.len()
                    )));
                }
                if alpha.iter().all(|&v| v == 0.0) {
                    return Err(Error::InvalidPole);
                }
            }
            HarmonicFn::Fundamental { pole } if pole.len() != n => {
                return Err(Error::InvalidParameter(format!(
                    "pole has dimension {}, expected {n}",
                    pole.len()
                )));
            }
            HarmonicFn::HarmonicMonomial { poly } if poly.dim != n => {
                return Err(Error::InvalidParameter(format!(
                    "polynomial has dimension {}, expected {n}",
                    poly.dim
                )));
            }
            HarmonicFn::Transformed {
                inner,
                origin,
                rotation,
                scale,
            } => {
                if origin.len() != n || *scale <= 0.0 {
                    return Err(Error::InvalidParameter("bad frame".into()));
                }
                if let Some(r) = rotation {
                    if r.len() != n * n {
                        return Err(Error::InvalidParameter("bad frame rotation".into()));
                    }
                }
                inner.validate(n)?;
            }
            _ => {}
        }
        Ok(())
    }

    /// Evaluation without singularity checks, in any float type.
    pub fn eval_t<T: Float>(&self, x: &[T]) -> T {
        match self {
            HarmonicFn::KuranH { alpha } => {
                let a: Vec<T> = alpha.iter().map(|&v| c(v)).collect();
                kuran_h_t(&a, x)
            }
            HarmonicFn::KuranK { alpha } => {
                let a: Vec<T> = alpha.iter().map(|&v| c(v)).collect();
                T::one() + kuran_h_t(&a, x)
            }
            HarmonicFn::ConeU => cone_u_t(x),
            HarmonicFn::Fundamental { pole } => {
                let d: Vec<T> = x.iter().zip(pole).map(|(&xi, &p)| xi - c(p)).collect();
                gamma_t(&d)
            }
            HarmonicFn::HarmonicMonomial { poly } => poly.eval(x),
            HarmonicFn::Transformed {
                inner,
                origin,
                rotation,
                scale,
            } => {
                let n = x.len();
                let d: Vec<T> = x.iter().zip(origin).map(|(&xi, &o)| xi - c(o)).collect();
                let inv = c::<T>(1.0 / scale);
                let local: Vec<T> = (0..n)
                    .map(|j| {
                        let s = match rotation {
                            Some(rot) => (0..n).fold(T::zero(), |acc, i| acc + c::<T>(rot[i * n + j]) * d[i]),
                            None => d[j],
                        };
                        s * inv
                    })
                    .collect();
                inner.eval_t(&local)
            }
        }
    }

    #[inline]
    pub fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.eval_t(x)
    }

    /// Checked evaluation: refuses points on the singular set.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.validate(x.len())?;
        if let Some(s) = self.singular_point(x.len()) {
            if dist_t(&s, x) == 0.0 {
                return Err(Error::Singularity { point: x.to_vec() });
            }
        }
        Ok(self.eval_t(x))
    }
}

/// Central second-difference estimate of Δf(x).
pub fn laplacian_residual(f: &HarmonicFn, x: &[f64], h: f64) -> Result<f64> {
    check_clearance(f, x, h)?;
    Ok(laplacian_fd::<f64>(f, x, h))
}

/// As [`laplacian_residual`] but evaluated in double-double arithmetic, so the
/// O(h²) truncation error is visible down to very small steps.
pub fn laplacian_residual_extended(f: &HarmonicFn, x: &[f64], h: f64) -> Result<f64> {
    check_clearance(f, x, h)?;
    Ok(laplacian_fd::<twofloat::TwoFloat>(f, x, h).hi())
}

fn check_clearance(f: &HarmonicFn, x: &[f64], h: f64) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    f.validate(x.len())?;
    if let Some(s) = f.singular_point(x.len()) {
        let d = dist_t(&s, x);
        if d <= 10.0 * h {
            return Err(Error::NearSingularity {
                distance: d,
                required: 10.0 * h,
            });
        }
    }
    Ok(())
}

fn laplacian_fd<T: Float>(f: &HarmonicFn, x: &[f64], h: f64) -> T {
    let xt: Vec<T> = x.iter().map(|&v| c(v)).collect();
    let ht: T = c(h);
    let f0 = f.eval_t(&xt);
    let mut acc = T::zero();
    for i in 0..x.len() {
        let mut p = xt.clone();
        p[i] = p[i] + ht;
        let mut m = xt.clone();
        m[i] = m[i] - ht;
        acc = acc + f.eval_t(&p) - f0 - f0 + f.eval_t(&m);
    }
    acc / (ht * ht)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        // σ_5 = 8π²/3
        assert!((sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(&[1.0, 0.0, 0.0]).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(gamma(&[0.0, 1.0]).unwrap(), 0.0);
        assert!((gamma(&[0.0, 2.0, 0.0]).unwrap() - 1.0 / (8.0 * PI)).abs() < 1e-15);
        assert!(matches!(gamma(&[0.0, 0.0]), Err(Error::Singularity { .. })));
    }

    #[test]
    fn kuran_values() {
        let a = [2.0, 0.0, 0.0];
        assert_eq!(kuran_h(&a, &[1.0, 0.0, 0.0]).unwrap(), -6.0);
        assert_eq!(kuran_k(&a, &[1.0, 0.0, 0.0]).unwrap(), -5.0);
        assert_eq!(kuran_h(&a, &[0.0, 0.0, 0.0]).unwrap(), -1.0);
        assert_eq!(kuran_k(&[0.3, -0.7], &[0.0, 0.0]).unwrap(), 0.0);
        assert!(kuran_h(&a, &[0.0, 2.0, 0.0]).unwrap().abs() < 1e-16);
        assert!(matches!(kuran_h(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::InvalidPole)));
        assert!(matches!(kuran_h(&a, &a), Err(Error::Singularity { .. })));
    }

    #[test]
    fn cone_values() {
        assert!((cone_u(&[1.0, 0.0, 0.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((cone_u(&[0.0, 1.0]).unwrap() + 0.5).abs() < 1e-15);
        let on_cone = [1.0, 2f64.sqrt(), 0.0];
        assert!(cone_u(&on_cone).unwrap().abs() < 1e-15);
    }

    #[test]
    fn residuals() {
        let k = HarmonicFn::kuran_k(&[2.0, 0.0, 0.0]);
        assert!(laplacian_residual(&k, &[0.5, 0.0, 0.0], 1e-3).unwrap().abs() < 1e-4);
        assert!(laplacian_residual(&HarmonicFn::ConeU, &[1.0, 0.2, 0.0], 1e-3)
            .unwrap()
            .abs()
            < 1e-4);
        let xy = HarmonicFn::monomial(HarmonicPoly::harmonic_projection(&[1, 1]));
        assert!(laplacian_residual(&xy, &[0.3, -0.4], 1e-3).unwrap().abs() < 1e-9);
        assert!(matches!(
            laplacian_residual(&k, &[1.995, 0.0, 0.0], 1e-3),
            Err(Error::NearSingularity { .. })
        ));
    }

    #[test]
    fn transformed_singular_point() {
        let r = vec![0.0, -1.0, 1.0, 0.0];
        let f = HarmonicFn::fundamental(&[1.0, 0.0]).in_frame(&[1.0, 1.0], Some(r), 2.0);
        let s = f.singular_point(2).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15 && (s[1] - 3.0).abs() < 1e-15);
        assert!(matches!(f.eval(&s), Err(Error::Singularity { .. })));
    }
}
