//! Finite-dimensional Hilbert modules and C*-correspondences: compact operators,
//! linking algebras, Katsura ideals, group symmetries and isomorphism certification.

mod iso;
mod katsura;
mod linking;
mod module;
mod symmetry;

pub use iso::{linear_extension, lookup, verify_correspondence_isomorphism, AlgebraMap, GeneratingSystem, Lookup};
pub use katsura::{
    ideal_subspace, is_katsura_nondegenerate, katsura_ideal, katsura_ideal_by_annihilator, katsura_nondegeneracy,
    KatsuraIdeal, Nondegeneracy,
};
pub use linking::{linking_algebra, LinkingAlgebra};
pub use module::{adjoint_of, compact_expansion, is_full, theta, Correspondence, HilbertModule, ModuleOperator, Realization};
pub use symmetry::{verify_corr_action, verify_corr_grading, CorrAction, CorrGrading};

#[cfg(test)]
mod tests;
