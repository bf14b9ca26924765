//! Exact-arithmetic classification of group orbits on Lagrangian
//! Grassmannians.
//!
//! The library classifies Lagrangian subspaces of a symplectic sum
//! V1 (+) V2 under Sp(V1) x Sp(V2), and of a polarized space W1 (+) W2
//! under GL(n), producing:
//!
//! - orbit invariants (the intersection dimension i, resp. the triple
//!   (i, j, k) with a residual signature),
//! - canonical representatives per orbit,
//! - explicit group-element witnesses certifying that two Lagrangians lie
//!   in one orbit, verified by direct action,
//! - stabilizer dimensions at the Lie-algebra level, checked against
//!   closed-form dimension counts,
//! - degeneration curves exhibiting the closure order of the strata, and
//! - exhaustive finite-field censuses confirming the orbit picture at
//!   desk scale.
//!
//! Everything is computed over the rationals (or a small prime field for the
//! census) with unbounded-precision arithmetic; there is no floating point
//! and no tolerance anywhere.
//!
//! Start with the `examples/` directory: each example is a small runnable
//! program demonstrating one capability. The `lago` binary exposes the same
//! operations as JSON-in/JSON-out subcommands.

pub mod census;
pub mod cli;
pub mod error;
pub mod gl;
pub mod mat;
pub mod quadform;
pub mod sample;
pub mod scalar;
pub mod selftest;
pub mod spsp;
pub mod subspace;
pub mod symplectic;
pub mod wire;

pub use error::{Error, Result};
pub use mat::Mat;
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
pub use symplectic::{ReducedSpace, SymplecticSpace};
