//! Twisted tensor products `A ⊠ B` of an action and a grading, and twisted tensor
//! products of correspondences.

mod algebra;
mod corr;
mod heisenberg;
mod special;

pub use algebra::{twisted_algebra, TwistedAlgebra};
pub use corr::{compacts_dim, trivial_data, twisted_correspondence, twisted_generating_system, CornerModel, TwistedCorrespondence};
pub use heisenberg::{heisenberg_model, HeisenbergModel};
pub use special::{
    crossed_by_action, crossed_by_coaction, flip_sigma23, graded_tensor_product, ActionCrossed, CoactionCrossed,
    FlipIsomorphism, GradedTensorProduct,
};

#[cfg(test)]
mod tests;
