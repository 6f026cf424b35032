//! Cyclic objects, Hochschild homology and degree-0 Hochschild-Witt homology.

pub mod algebra;

pub use algebra::{AlgebraRing, AlgebraSpec};
pub mod complex;
pub mod cyclic;

pub use complex::{ChainComplex, Homology};
pub use cyclic::ANatural;
pub mod whh;

pub use whh::{hesselholt_seq_check, whh0, HesselholtReport, WnANatural, Whh0};
