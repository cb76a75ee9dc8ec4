//! Exact lattice-polygon combinatorics behind the irreducible components of
//! genus-one Severi varieties on polarized toric surfaces.
//!
//! For a convex lattice polygon `Δ`, the components are counted by the
//! affine sublattices `M ⊆ ℤ²` with `∂Δ ∩ M = ∂Δ ∩ ℤ²` and at least one
//! interior point of `Δ` in `M`. [`severi::count_components`] evaluates this
//! through the cyclic quotient `ℤ²/N₀` of the facet-normal lattice, and
//! [`severi::count_components_oracle`] checks it by direct enumeration.

pub mod corpus;
pub mod error;
pub mod intnf;
pub mod lattice2;
pub mod par;
pub mod polygon;
pub mod sampling;
pub mod severi;
pub mod verify;

pub use error::{Error, PolygonError, Result};
pub use intnf::IntMat;
pub use lattice2::{AffineLattice2, LinearLattice2};
pub use polygon::{LatticePolygon, Point};
