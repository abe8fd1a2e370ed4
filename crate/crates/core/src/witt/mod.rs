//! Symmetric bilinear forms up to Witt equivalence.

mod class;
mod form;

pub use class::{f_map, ResidueClass, WittClass, WittModI2};
pub use form::{
    hasse_invariant, hasse_places, is_neutral, isometry_invariants, regularize, signed_discriminant, witt_class,
    IsometryInvariants, SymmetricForm,
};
