//! Exact computations for the eigencone of D4 and the tensor semigroup of
//! Spin(8).
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`rootdata`]: the D4 root system, Weyl group and triality automorphisms.
//! - [`schubert`]: cup product and the Belkale–Kumar product `⊙₀` on
//!   `H*(G/P)` for the maximal parabolics.
//! - [`triangles`]: the triangle inequalities cut out by `⊙₀`-products equal
//!   to the top class, together with the chamber inequalities.
//! - [`cone`]: exact double description, facets and irredundancy.
//! - [`hilbert`]: the lattice of triples summing into the root lattice and
//!   the Hilbert basis of the cone's lattice points.
//! - [`reptensor`]: Freudenthal multiplicities and Klimyk's formula for
//!   invariant dimensions in triple tensor products.
//! - [`pipeline`]: the end-to-end verification run and its report.

#![allow(clippy::needless_range_loop)]

pub mod cone;
pub mod error;
pub mod fixtures;
pub mod hilbert;
pub mod linalg;
pub mod pipeline;
pub mod reptensor;
pub mod rootdata;
pub mod schubert;
pub mod triangles;

pub use error::{Error, Result};
