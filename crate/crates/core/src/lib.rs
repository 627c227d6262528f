//! Riemann sums over boxes, curves and surfaces in four flavours: full,
//! with deleted terms, on a perturbed mesh, and both combined.
//!
//! The crate also checks Green's, Gauss's and Stokes' theorems two-sidedly
//! with independent sum variants on each side, and runs convergence sweeps
//! over a registry of named scenarios.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compensated;
pub mod curve_surface;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod harness;
pub mod quadrature;
pub mod theorems;

pub use error::{Error, Result};
pub use fields::{ParametricRegion, ParametricSurface, Path, ScalarField, VectorField};
pub use geometry::{
    BoxDomain, DeletionPlan, Partition, PerturbedPartition, Schedule, Selector, TagRule,
};
pub use quadrature::{Discretization, Execution, Scheme, SumEstimate, Variant};
pub use theorems::{Theorem, TheoremReport};
