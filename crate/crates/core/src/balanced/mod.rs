//! Balanced twisted tensor products `A ⊠_Z B` for compact abelian `Z`, given by `Ẑ`-gradings.

mod algebra;
mod grading;

pub use algebra::{
    balanced_subalgebra, conditional_expectation, induced_action_check, lambda_action, saturation_check, BalancedAlgebra,
    Bihomogeneous,
};
pub use grading::{DualGrading, DualGroup, Turn};
