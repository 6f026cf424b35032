//! Witt vectors: p-typical, p-adic and big.


pub mod big;
pub mod classical;
pub mod padic;
pub mod universal;


pub use big::{BigWitt, BigWittRing};
pub use classical::{WittRing, WittVector};
pub use universal::{universal_polys, PolyKind};
