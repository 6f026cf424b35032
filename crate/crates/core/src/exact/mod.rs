//! Exact arithmetic substrate.

pub mod fp;
pub mod free_alg;
pub mod int;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod snf;

pub use fp::FpMatrix;
pub use free_alg::{FreeAlgElt, FreeWord};
pub use int::{IntScalar, ModScalar};
pub use matrix::{IntMatrix, SparseVec};
pub use poly::{var_names, Monomial, MultiPoly, PolyRing};
pub use ring::{CommRing, FiniteRing, Integers, PolyQuotient, ZMod};
pub use snf::{smith_normal_form, solve_integer_linear, SmithDecomposition};
