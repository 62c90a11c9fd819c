//! Reidemeister coincidence numbers `R(φ₁, …, φ_k)` for several homomorphisms
//! between fundamental groups.
//!
//! Three engines share one exact integer linear-algebra core:
//!
//! - [`abelian`]: homomorphisms `ℤ^m → ℤ^n` (maps into tori). The multi-map
//!   number is the cokernel order of the stacked difference matrix.
//! - [`finite`]: homomorphisms between finite groups given by Cayley tables,
//!   counted by enumerating twisted-conjugacy orbits of `(k−1)`-tuples.
//! - [`nilpotent`]: homomorphisms between torsion-free class-2 nilpotent groups
//!   (maps into nilmanifolds), reduced to the commutator subgroup and the
//!   abelianization through the central extension `[G,G] → G → G^ab`.
//!
//! Everything is computed with arbitrary-precision integers; there are no
//! floating-point paths.

pub mod abelian;
mod cardinal;
mod error;
pub mod finite;
pub mod linalg;
pub mod nilpotent;

pub use cardinal::Cardinal;
pub use error::{Error, Result};
pub use linalg::IntMatrix;
