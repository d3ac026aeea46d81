//! Finite-dimensional C*-algebras, their states, and the GNS construction.
//!
//! The crate is organized around four layers:
//!
//! - [`algebra`]: direct sums of full complex matrix blocks, element
//!   arithmetic, and verified unital *-homomorphisms with a constructor
//!   catalog.
//! - [`states`]: positive unital functionals stored as coefficient vectors
//!   on the matrix-unit basis, their Gram matrices, pullbacks, and the
//!   density-matrix bridge.
//! - [`gns`]: the GNS construction (null space, quotient Hilbert space,
//!   induced representation, cyclic vector) together with the canonical
//!   intertwiners it produces and pointed-representation machinery.
//! - [`laws`]: seeded randomized sweeps that check every categorical law
//!   the construction satisfies and emit serializable reports.
//!
//! Everything numeric is double precision; every check that can fail
//! produces a certificate with the measured violation instead of a bare
//! boolean, and all tolerances live in [`tol`].

pub mod algebra;
pub mod error;
pub mod gns;
pub mod laws;
pub mod linalg;
pub mod schema;
pub mod states;
pub mod tol;

pub use error::Error;
