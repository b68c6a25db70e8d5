mod flag;
mod module;
mod psi;
mod subspace;

pub use flag::{build_isotypical_flag, FlagLevel, IsotypicalFlag};
pub use module::{
    algebra_closure, associated_psi_space, eigenring, hom_between, hom_space,
    indecomposable_summands, irreducible_submodule, is_irreducible, isomorphic_indecomposables,
    isotypical_decomposition, isotypical_decomposition_seeded, trace_radical, Eigenring,
    IsotypicalBlock,
};
pub use psi::{build_psi, build_psi_blocks, psi_matrix, unvec_block, vec_block, PsiAction};
pub use subspace::{rank_of, spin, ConstSubspace, Quotient};
