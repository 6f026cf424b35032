//! Polynomial Witt vectors of 𝔽_p-vector spaces via Tate cohomology of cyclic groups.

pub mod group;

pub use group::{exact_at, GroupMap, PresentedAbGroup};
pub mod space;
pub use space::{Flavor, WittSpace, DEFAULT_LIMIT};
pub mod maps;
pub mod fourterm;
pub mod nc;
