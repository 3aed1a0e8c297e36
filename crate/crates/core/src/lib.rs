//! Exact computation of intersecting and cross-`t`-intersecting families over
//! hereditary families (downsets).

mod bits;
pub mod combinatorics;
pub mod error;
pub mod family;
pub mod hereditary;
pub mod lemma_lab;
pub mod solvers;
pub mod verify;

pub use error::{Degenerate, Error, Result};
pub use family::{are_cross_t_intersecting, t_intersects, ElementSet, GroundSize, SetFamily};
pub use hereditary::{HereditaryFamily, LevelSelector};
