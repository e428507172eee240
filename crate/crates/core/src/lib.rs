//! Geometry of symmetric hypersurfaces with spherical boundary.
//!
//! The crate is organised around the reduction of cohomogeneity-two
//! problems to a planar wedge:
//!
//! * [`foliation`] holds the multiplicity data `(g, m1, m2)` of an
//!   isoparametric foliation of the unit sphere and its closed-form leaf
//!   quantities.
//! * [`orbit_space`] is the wedge `C(pi/g)` with its conformal metric.
//! * [`curve_flow`] integrates the reduced profile-curve ODE for minimal and
//!   constant mean curvature hypersurfaces, classifies trajectories and shoots
//!   for perpendicular wall hits.
//! * [`clifford`] builds symmetric Clifford systems and the associated
//!   degree-four Cartan–Münzner polynomial.
//! * [`shape`] is chart-based curvature machinery (fundamental forms,
//!   Newton transformations, the operators `L_r`).
//! * [`symmetry_audit`] checks Killing normal components, Jacobi-type
//!   equations, boundary Cauchy data and Helfrich energy identities on test
//!   surfaces.
//!
//! Data-parallel loops (direction sweeps, random-sample verifications and
//! chart-grid audits) go through [`exec`], which uses rayon when the
//! `parallel` feature is enabled and falls back to plain iteration otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod angle;
pub mod clifford;
pub mod curve_flow;
mod error;
pub mod exec;
pub mod fd;
pub mod foliation;
pub mod orbit_space;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod shape;
pub mod symmetry_audit;

pub use error::{Error, Result};
pub use exec::Execution;
pub use foliation::FoliationParams;
pub use report::{AuditEntry, AuditReport};
