//! Exact integer polytopes, pulling triangulations, special simplices and
//! Ehrhart series.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact_math`]: big-integer polynomials, Macaulay bounds, g-theorem
//!   checks and small exact linear algebra.
//! * [`polytope`]: integer polytopes carrying both a vertex and a facet
//!   description, their face lattices, lattice bases, special simplices and
//!   quotient polytopes.
//! * [`triangulation`]: pulling (reverse lexicographic) triangulations,
//!   simplicial complexes, joins and unimodularity checks.
//! * [`families`]: Birkhoff polytopes, order polytopes of posets and
//!   perfect-matching polytopes of regular bipartite graphs.
//! * [`ehrhart`]: lattice-point counting, Ehrhart series by counting and by
//!   triangulation, and the end-to-end verification pipeline.
//!
//! No floating point is used anywhere.

pub mod config;
pub mod ehrhart;
pub mod error;
pub mod exact_math;
pub mod families;
pub mod polytope;
pub mod triangulation;

pub use config::Budgets;
pub use error::{Error, Result};
