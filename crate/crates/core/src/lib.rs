//! Exact algebraic de Rham complexes of piecewise-polynomial and finitely
//! presented function algebras on polyhedra.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, (Laurent) polynomials, polynomial forms, affine maps.
//! * [`linalg`]: fraction-free sparse elimination and a small exact LP solver.
//! * [`polyhedron`]: geometric simplicial complexes, subdivision, stars, rectilinear maps.
//! * [`kahler`]: presented algebras, their forms, real points and exactness solvers.
//! * [`piecewise`]: compatible per-simplex forms, Whitney forms, homotopy operators.
//! * [`pairing`]: integration over affine chains, Stokes, the integration map to cochains.
//! * [`cohomology`]: simplicial and truncated de Rham cohomology, comparison reports.
//! * [`corpus`]: the standard test complexes.
//! * [`io`]: JSON formats.
//! * [`random`]: seeded generators for randomized checks.

pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod io;
pub mod kahler;
pub mod linalg;
pub mod pairing;
pub mod piecewise;
pub mod polyhedron;
pub mod random;

pub use error::{Error, Result};
