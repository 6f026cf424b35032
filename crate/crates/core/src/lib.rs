//! Exact computations with Witt vectors.
//!
//! * [`exact`]: integers, modular rings, multivariate polynomials over ℤ,
//!   truncated free algebras, integer matrices and Smith normal form.
//! * [`witt`]: p-typical Witt vectors over commutative rings, p-adic
//!   conversion and big Witt vectors.
//! * [`tate`]: polynomial Witt vectors `W_n(M)` of 𝔽_p-vector spaces, realized
//!   as Tate cohomology of cyclic tensor powers, with their structure maps.
//! * [`hh`]: cyclic objects of finite-dimensional algebras, Hochschild
//!   homology and degree-0 Hochschild-Witt homology.

pub mod error;
pub mod exact;
pub mod hh;
pub mod tate;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
pub use exact::{CommRing, FiniteRing};
