//! Lagrangian paths, Sylvester matrices and Maslov indices.

mod index;
mod path;
mod sylvester;

pub use index::{
    kashiwara_form, loop_variants, maslov_of_loop, maslov_of_path, maslov_triple, maslov_triple_via,
};
pub use path::LagrangianPath;
pub use sylvester::{nondegenerate_iff_transverse, sylvester_matrix, transversality_witness, TransversalityWitness};
