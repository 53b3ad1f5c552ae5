//! Run configuration, read from JSON and overridden by command-line flags.
//!
//! ```json
//! {
//!   "command": "verify",
//!   "suite": "spheroid",
//!   "n": [2],
//!   "a": 1.1,
//!   "domain": { "dim": 2, "shape": { "type": "spheroid", "center": [0, 0], "semi_axes": [1.1, 1] } },
//!   "x0": [0, 0],
//!   "level": 4,
//!   "schedule": { "t0": 1.2, "q": 0.5, "count": 8 },
//!   "eps": { "lo": 0.02, "hi": 0.2, "count": 6 },
//!   "m": 3,
//!   "tol": 1e-3,
//!   "out": "out",
//!   "seed": 0,
//!   "deterministic": false
//! }
//! ```
//!
//! Every key is optional. `domain` takes precedence over the shorthand
//! `suite`/`n`/`a`/`eps`/`m` construction.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaps::ApproachSchedule;
use crate::geometry::DomainSpec;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsGrid {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Default for EpsGrid {
    fn default() -> Self {
        EpsGrid {
            lo: crate::defaults::SWEEP_EPS_MIN,
            hi: crate::defaults::SWEEP_EPS_MAX,
            count: crate::defaults::SWEEP_POINTS,
        }
    }
}

impl EpsGrid {
    /// Parses `lo:hi:count` or a single value.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Config {
            key: "eps".into(),
            message: format!("{m} in `{s}`, expected lo:hi:count"),
        };
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad("not a number"));
        match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                Ok(EpsGrid { lo: v, hi: v, count: 1 })
            }
            [lo, hi, c] => Ok(EpsGrid {
                lo: num(lo)?,
                hi: num(hi)?,
                count: c.trim().parse().map_err(|_| bad("bad count"))?,
            }),
            _ => Err(bad("wrong number of fields")),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        crate::defaults::geometric_grid(self.lo, self.hi, self.count)
    }
}

/// Parses `3`, `2,3` or `2..6` (inclusive).
pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config {
        key: "n".into(),
        message: format!("cannot parse `{s}`"),
    };
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_point(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim().parse().map_err(|_| Error::Config {
                key: "x0".into(),
                message: format!("cannot parse `{s}`"),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub suite: Option<String>,
    /// Domain kind for the shorthand construction: ball, spheroid, gpb or beaked.
    pub kind: Option<String>,
    pub n: Vec<usize>,
    /// Spheroid long axis, or `1 + amplitude` for the perturbed ball.
    pub a: Option<f64>,
    pub domain: Option<DomainSpec>,
    pub x0: Option<Vec<f64>>,
    pub level: Option<u32>,
    pub schedule: ApproachSchedule,
    pub eps: EpsGrid,
    pub m: Option<u32>,
    pub tol: Option<f64>,
    pub out: PathBuf,
    /// Reserved for randomized sampling; every current command is deterministic.
    pub seed: u64,
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            suite: None,
            kind: None,
            n: Vec::new(),
            a: None,
            domain: None,
            x0: None,
            level: None,
            schedule: ApproachSchedule::default(),
            eps: EpsGrid::default(),
            m: None,
            tol: None,
            out: PathBuf::from("out"),
            seed: 0,
            deterministic: false,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
            key: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            key: "config".into(),
            message: format!("{}: {e}", path.display()),
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |key: &str, message: String| Error::Config {
            key: key.into(),
            message,
        };
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(cfg("tol", format!("must be positive, got {t}")));
            }
        }
        self.schedule
            .validate()
            .map_err(|e| cfg("schedule", e.to_string()))?;
        let g = self.eps;
        if g.count == 0 {
            return Err(cfg("eps", "empty grid".into()));
        }
        if !(g.lo > 0.0) || !(g.hi >= g.lo) || (g.count > 1 && g.hi == g.lo) {
            return Err(cfg("eps", format!("grid must satisfy 0 < lo < hi, got {}:{}", g.lo, g.hi)));
        }
        if let Some(d) = self.n.iter().find(|&&d| d < 2) {
            return Err(cfg("n", format!("dimension must be at least 2, got {d}")));
        }
        Ok(())
    }

    /// Creates the output directory and checks that it is writable.
    pub fn prepare_out(&self) -> Result<()> {
        let err = |e: std::io::Error| Error::Config {
            key: "out".into(),
            message: format!("{}: {e}", self.out.display()),
        };
        std::fs::create_dir_all(&self.out).map_err(err)?;
        let probe = self.out.join(".write_probe");
        std::fs::write(&probe, b"").map_err(err)?;
        std::fs::remove_file(&probe).map_err(err)?;
        Ok(())
    }

    pub fn dims_or(&self, default: &[usize]) -> Vec<usize> {
        if self.n.is_empty() {
            default.to_vec()
        } else {
            self.n.clone()
        }
    }
}
