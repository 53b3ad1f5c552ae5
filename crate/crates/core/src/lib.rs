//! Numerical laboratory for surface mean-value gaps of harmonic functions.
//!
//! The crate builds bounded domains (balls, spheroids, graph-perturbed balls
//! and the beaked-sphere family), meshes their boundaries with exact
//! parametric patches, and evaluates boundary averages of harmonic functions
//! with graded quadrature. On top of that it estimates Kuran gaps, Gauss-gap
//! lower bounds and single-layer potentials, and checks the inequalities that
//! relate them to isoperimetric deficits.
//!
//! ```
//! use harmonic_gaps::geometry::{mesh_boundary, DomainSpec};
//! use harmonic_gaps::kernels::HarmonicFn;
//! use harmonic_gaps::quadrature::ball_mean_value_residual;
//!
//! let ball = DomainSpec::unit_ball(3);
//! let mesh = mesh_boundary(&ball, 1, None).unwrap();
//! let k = HarmonicFn::kuran_k(&[0.0, 0.0, 2.0]);
//! assert!(ball_mean_value_residual(&k, &ball, &mesh).unwrap() < 1e-6);
//! ```

pub mod asz;
pub mod beaked;
pub mod cli;
pub mod defaults;
pub mod error;
pub mod extrapolate;
pub mod gaps;
pub mod geometry;
pub mod kernels;
pub mod quadrature;
pub mod report;
pub mod vector;

pub use error::{Error, Result};
