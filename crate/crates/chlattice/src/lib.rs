//! Exact rational geometry of point-generated convex hull lattices.
//!
//! Starting from a finite set of points, repeatedly drawing segments and
//! hulls and intersecting them generates a lattice of convex sets. This
//! crate computes the closure of that process (the completion), decides
//! whether the generated lattice is finite for planar inputs, tests
//! configuration equivalence, and enumerates the resulting finite
//! lattices with their Hasse diagrams.

pub mod classifier;
pub mod completion;
pub mod config;
pub mod error;
pub mod geom;
pub mod lattice;
pub mod rational;

pub use error::Error;
