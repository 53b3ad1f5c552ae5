//! Domains, boundary meshes and measures.

pub(crate) mod beak;
mod domain;
mod measures;
mod mesh;

pub use beak::BeakGeometry;
pub use domain::{beak_eps_max, Bump, DomainSpec, Frame, Shape};
pub use measures::{
    boundary_area, inradius_touching, isoperimetric_quantities, isoperimetric_report, volume, Isoperimetric,
    Touching, TouchingFamily, TouchingPoint, VolumeResult,
};
pub use mesh::{
    base_size, mesh_boundary, mesh_boundary_with, Facet, FacetRule, GradePoint, MeshOptions, Piece, QuadNode,
    SurfaceMesh,
};
