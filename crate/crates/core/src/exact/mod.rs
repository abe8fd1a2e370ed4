//! Exact scalars, square classes, symbols and dense linear algebra.

mod congruence;
mod field;
mod matrix;
mod squares;

pub use congruence::{congruence_diagonalize, diagonal_entries};
pub use field::{FieldDescriptor, FieldElement, OddPrime};
pub use matrix::{ExactMatrix, Rref};
pub use squares::{
    factorize, hilbert_symbol, is_rational_square, jacobi, least_nonresidue, rational_square_class,
    squarefree_part, Place, SquareClass,
};
