//! Lie algebras by structure constants, matrix representations and standard
//! constructors.

mod algebra;
mod rep;
pub mod standard;

pub use algebra::LieAlgebra;
pub use rep::{
    adjoint_rep, coadjoint_rep, conjugate_representation, invariant_symmetric_forms, killing_form,
    BilinearForm, Representation,
};
pub use standard::{abelian, algebra_from_matrices, gl_n, sl2, so_n, so_pq, standard, StandardKind};
