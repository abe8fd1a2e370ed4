//! Sturm sequences: words in the free product of the two Lagrangian stabilizers.

mod decompose;
mod phi;
mod word;

pub use decompose::{decompose, decompose_with_prefix, symmetric_factorization};
pub use phi::{f00, f_mn, mu_cocycle, phi, phi_closed_forms};
pub use word::{path_of_sturm, sturm_of_path, sylvester_of_sturm, KernelWord, LetterKind, SturmWord};
