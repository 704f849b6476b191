//! Finite commutative rings as Cayley tables, amalgamated algebras along
//! ideals, and checks of their spectral and local invariants.

pub mod amalgam;
pub mod error;
pub mod ideals;
pub mod local;
pub mod ring;
pub mod semigroup;
pub mod series;
pub mod spectrum;
pub mod verdict;

pub use amalgam::{amalgamate, AmalgamRing};
pub use error::{CoreError, Result};
pub use ring::{FiniteRing, IdealSet, Ring, RingHom};
pub use verdict::Verdict;
