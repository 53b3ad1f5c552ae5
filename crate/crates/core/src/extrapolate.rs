//! Limits of sampled sequences and power-law fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Neville evaluation at `x = 0` of the interpolating polynomial through `(xs, ys)`.
pub fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = (xs[i + k] * p[i] - xs[i] * p[i + 1]) / (xs[i + k] - xs[i]);
        }
    }
    p[0]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    /// Polynomial extrapolation in the sample abscissa on the last three samples.
    Richardson,
    /// Tail differences already below tolerance; last extrapolant reported.
    Flat,
    /// Oscillating tail: smallest tail sample (liminf side).
    TailMin,
    /// Oscillating tail: largest tail sample (limsup side).
    TailMax,
    /// Empty candidate set.
    Sentinel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitEstimate {
    pub value: f64,
    pub converged: bool,
    pub method: LimitMethod,
    /// Difference between the last two extrapolants (or tail spread).
    pub error: f64,
}

/// Estimates `lim_{δ → 0} y(δ)` from samples at decreasing `δ`.
///
/// Consecutive three-point extrapolants are compared; the estimate converges
/// when the last two differ by less than `tol`. A tail whose differences
/// alternate in sign without shrinking is treated as oscillating and the
/// conservative tail extreme for `side` is reported instead.
pub fn estimate_limit(deltas: &[f64], values: &[f64], tol: f64, side: Side) -> Result<LimitEstimate> {
    let k = values.len();
    if k < 4 || deltas.len() != k {
        return Err(Error::InvalidParameter(format!(
            "limit estimation needs at least 4 samples, got {k}"
        )));
    }
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &diffs[diffs.len().saturating_sub(4)..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] < 0.0);
    let shrinking = tail.windows(2).all(|w| w[1].abs() < 0.75 * w[0].abs());
    if alternating && !shrinking && tail.iter().any(|d| d.abs() >= tol) {
        let half = &values[k / 2..];
        let (value, method) = match side {
            Side::Lower => (half.iter().cloned().fold(f64::INFINITY, f64::min), LimitMethod::TailMin),
            Side::Upper => (half.iter().cloned().fold(f64::NEG_INFINITY, f64::max), LimitMethod::TailMax),
        };
        let spread = half.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - half.iter().cloned().fold(f64::INFINITY, f64::min);
        return Ok(LimitEstimate {
            value,
            converged: false,
            method,
            error: spread,
        });
    }
    let extrap = |end: usize| neville_at_zero(&deltas[end - 3..end], &values[end - 3..end]);
    let e_last = extrap(k);
    let e_prev = extrap(k - 1);
    let error = (e_last - e_prev).abs();
    let flat = tail.iter().all(|d| d.abs() < tol);
    Ok(LimitEstimate {
        value: e_last,
        converged: error < tol,
        method: if flat { LimitMethod::Flat } else { LimitMethod::Richardson },
        error,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Least-squares fit of `log y = log A + p log x`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerFit> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return Err(Error::InvalidParameter("power fit needs at least two points".into()));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidParameter("power fit needs positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let p = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(PowerFit {
        exponent: p,
        prefactor: (my - p * mx).exp(),
        r_squared: r2,
    })
}
