//! Command-line front end: `verify`, `sweep`, `asz` and `mesh`.
//!
//! Exit status is 0 when every check passes, 1 when any check fails and 2
//! for configuration or I/O errors.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::geometry::DomainSpec;
use crate::report::VerificationReport;
pub use config::{EpsGrid, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "hgap", about = "Mean-value gap experiments on harmonic functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: ball, spheroid, identity or domain.
    Verify {
        #[arg(long)]
        suite: Option<String>,
    },
    /// Beaked-sphere ε sweep; writes CSV and a JSON summary.
    Sweep,
    /// Single-layer potential profile and limit of the potential ratio.
    Asz,
    /// Export the boundary mesh as CSV.
    Mesh,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// ball, spheroid, gpb, beaked, or a JSON file holding a domain spec.
    #[arg(long, global = true)]
    pub domain: Option<String>,
    /// Dimension: `3`, `2,3` or `2..6`.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Spheroid long axis, or `1 + amplitude` for the perturbed ball.
    #[arg(long, global = true)]
    pub a: Option<f64>,
    /// `lo:hi:count` geometric grid, or a single ε.
    #[arg(long, global = true)]
    pub eps: Option<String>,
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub level: Option<u32>,
    /// Comma-separated coordinates.
    #[arg(long, global = true)]
    pub x0: Option<String>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Single-threaded evaluation.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Merges the config file and flags.
pub fn resolve(cli: &Cli) -> Result<RunConfig> {
    let f = &cli.flags;
    let mut cfg = match &f.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let (name, suite) = match &cli.command {
        Command::Verify { suite } => ("verify", suite.clone()),
        Command::Sweep => ("sweep", None),
        Command::Asz => ("asz", None),
        Command::Mesh => ("mesh", None),
    };
    cfg.command = Some(name.into());
    if suite.is_some() {
        cfg.suite = suite;
    }
    if let Some(d) = &f.domain {
        if d.ends_with(".json") {
            let text = std::fs::read_to_string(d).map_err(|e| Error::Config {
                key: "domain".into(),
                message: format!("{d}: {e}"),
            })?;
            let spec: DomainSpec = serde_json::from_str(&text).map_err(|e| Error::Config {
                key: "domain".into(),
                message: e.to_string(),
            })?;
            cfg.domain = Some(spec);
        } else {
            cfg.kind = Some(d.clone());
            cfg.domain = None;
        }
    }
    if let Some(n) = &f.n {
        cfg.n = config::parse_dims(n)?;
    }
    if let Some(e) = &f.eps {
        cfg.eps = EpsGrid::parse(e)?;
    }
    if let Some(x) = &f.x0 {
        cfg.x0 = Some(config::parse_point(x)?);
    }
    cfg.a = f.a.or(cfg.a);
    cfg.m = f.m.or(cfg.m);
    cfg.level = f.level.or(cfg.level);
    cfg.tol = f.tol.or(cfg.tol);
    if let Some(o) = &f.out {
        cfg.out = o.clone();
    }
    cfg.deterministic |= f.deterministic;
    cfg.validate()?;
    Ok(cfg)
}

pub fn execute(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    cfg.prepare_out()?;
    let work = || match cfg.command.as_deref() {
        Some("verify") => commands::cmd_verify(cfg),
        Some("sweep") => commands::cmd_sweep(cfg),
        Some("asz") => commands::cmd_asz(cfg),
        Some("mesh") => commands::cmd_mesh(cfg),
        other => Err(Error::Config {
            key: "command".into(),
            message: format!("unknown command {other:?}"),
        }),
    };
    if cfg.deterministic {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(work)
    } else {
        work()
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = resolve(&cli).and_then(|cfg| execute(&cfg));
    match outcome {
        Ok(reports) => {
            for r in &reports {
                println!("{}", r.summary_line());
            }
            if reports.iter().all(|r| r.pass) {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
