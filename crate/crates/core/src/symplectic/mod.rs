//! The symplectic space L ⊕ L*, its Lagrangians and the pairing β.

mod lagrangian;
mod map;
mod pairing;

pub use lagrangian::{Lagrangian, SymplecticSpace};
pub use map::{generator_h, generator_lower, generator_m, generator_upper, generator_weyl, SymplecticMap};
pub use pairing::{affine_diff, beta, common_transverse, project_along, transverse};
pub(crate) use pairing::{ladder, symmetric_grid};
