use std::collections::BTreeMap;

use num_traits::Float;
use serde::{Deserialize, Serialize};

/// Sparse polynomial in `dim` variables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicPoly {
    pub dim: usize,
    pub terms: Vec<Term>,
    #[serde(default)]
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub exps: Vec<u8>,
}

type TermMap = BTreeMap<Vec<u8>, f64>;

fn laplacian_map(p: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (exps, &c) in p {
        for i in 0..exps.len() {
            let e = exps[i];
            if e >= 2 {
                let mut ex = exps.clone();
                ex[i] -= 2;
                *out.entry(ex).or_insert(0.0) += c * (e as f64) * ((e - 1) as f64);
            }
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

fn times_r2(p: &TermMap) -> TermMap {
    let mut out = TermMap::new();
    for (exps, &c) in p {
        for i in 0..exps.len() {
            let mut ex = exps.clone();
            ex[i] += 2;
            *out.entry(ex).or_insert(0.0) += c;
        }
    }
    out
}

impl HarmonicPoly {
    pub fn from_terms(dim: usize, terms: Vec<Term>) -> Self {
        HarmonicPoly {
            dim,
            terms,
            label: String::new(),
        }
    }

    /// Homogeneous polynomial degree (max over terms).
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.exps.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Orthogonal projection of the monomial `x^exps` onto harmonic polynomials:
    /// `h = Σ_j c_j |x|^{2j} Δ^j p` with
    /// `c_j = (-1)^j / (2^j j! Π_{i<j} (n + 2m - 4 - 2i))`.
    pub fn harmonic_projection(exps: &[u8]) -> Self {
        let n = exps.len();
        let m: i64 = exps.iter().map(|&e| e as i64).sum();
        let mut base = TermMap::new();
        base.insert(exps.to_vec(), 1.0);

        let mut acc = base.clone();
        let mut lap = base;
        let mut j = 0i64;
        loop {
            lap = laplacian_map(&lap);
            if lap.is_empty() {
                break;
            }
            j += 1;
            let mut denom = 2f64.powi(j as i32);
            for k in 1..=j {
                denom *= k as f64;
            }
            for i in 0..j {
                denom *= (n as i64 + 2 * m - 4 - 2 * i) as f64;
            }
            let cj = if j % 2 == 0 { 1.0 } else { -1.0 } / denom;
            let mut term = lap.clone();
            for _ in 0..j {
                term = times_r2(&term);
            }
            for (ex, c) in term {
                *acc.entry(ex).or_insert(0.0) += cj * c;
            }
        }
        acc.retain(|_, c| c.abs() > 1e-15);
        let terms = acc
            .into_iter()
            .map(|(exps, coef)| Term { coef, exps })
            .collect();
        HarmonicPoly {
            dim: n,
            terms,
            label: monomial_label(exps),
        }
    }

    pub fn eval<T: Float>(&self, x: &[T]) -> T {
        let mut sum = T::zero();
        for t in &self.terms {
            let mut v = T::from(t.coef).unwrap();
            for (xi, &e) in x.iter().zip(&t.exps) {
                if e > 0 {
                    v = v * xi.powi(e as i32);
                }
            }
            sum = sum + v;
        }
        sum
    }

    /// Exact Laplacian coefficients; empty for a harmonic polynomial.
    pub fn laplacian_terms(&self) -> Vec<Term> {
        let map: TermMap = self
            .terms
            .iter()
            .map(|t| (t.exps.clone(), t.coef))
            .collect();
        laplacian_map(&map)
            .into_iter()
            .filter(|(_, c)| c.abs() > 1e-12)
            .map(|(exps, coef)| Term { coef, exps })
            .collect()
    }
}

fn monomial_label(exps: &[u8]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    format!("harm[{}]", parts.join("*"))
}

/// Exponent vectors of all monomials of total degree `deg` in `n` variables.
pub fn monomials(n: usize, deg: u8) -> Vec<Vec<u8>> {
    fn rec(n: usize, left: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, deg, &mut Vec::new(), &mut out);
    out
}

/// Harmonic projections of every monomial with degree in `1..=max_degree`.
pub fn harmonic_dictionary(n: usize, max_degree: u8) -> Vec<HarmonicPoly> {
    let mut out = Vec::new();
    for d in 1..=max_degree {
        for exps in monomials(n, d) {
            let p = HarmonicPoly::harmonic_projection(&exps);
            if !p.terms.is_empty() {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_of_square() {
        let p = HarmonicPoly::harmonic_projection(&[2, 0]);
        // (x^2 - y^2) / 2
        assert_eq!(p.eval(&[1.0, 0.0]), 0.5);
        assert_eq!(p.eval(&[0.0, 1.0]), -0.5);
        let q = HarmonicPoly::harmonic_projection(&[2, 0, 0]);
        assert!((q.eval(&[1.0, 1.0, 1.0]) - (1.0 - 1.0)).abs() < 1e-15);
        assert!((q.eval(&[1.0, 0.0, 0.0]) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn dictionary_is_harmonic() {
        for n in 2..=4 {
            for p in harmonic_dictionary(n, 4) {
                assert!(p.laplacian_terms().is_empty(), "{}", p.label);
                assert!(p.degree() >= 1);
            }
        }
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials(3, 4).len(), 15);
        assert_eq!(monomials(2, 3).len(), 4);
    }
}
