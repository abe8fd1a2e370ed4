//! Exact Witt-group invariants, Lagrangian paths, Maslov indices and Sturm
//! sequences over the rationals and odd prime fields.
//!
//! Every computation is exact: rationals are arbitrary precision, residues are
//! reduced modulo an odd prime, and no floating point is used anywhere.

pub mod cli;
pub mod error;
pub mod exact;
pub mod maslov;
pub mod sample;
pub mod sturm;
pub mod symplectic;
pub mod witt;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, FieldDescriptor, FieldElement, Place, SquareClass};
pub use maslov::LagrangianPath;
pub use sturm::{KernelWord, SturmWord};
pub use symplectic::{Lagrangian, SymplecticMap, SymplecticSpace};
pub use witt::{SymmetricForm, WittClass, WittModI2};
