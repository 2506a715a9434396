//! Toeplitz representations, Fock-space models and the product of two representations.

mod ck;
mod product;
mod rep;
mod tensor;

pub use ck::{ck_representation, path_toeplitz_representation, Path, PathRep};
pub use product::{
    compacts_product_check, cp_product_check, generator_factorization_check, product_representation, GeneratorData,
    LevelElement, ProductRep,
};
pub use rep::{cp_covariance_defect, fock_toeplitz_rep, psi_n, psi_paren_n, spanning_check, ToeplitzRep, Validity};
pub use tensor::{defining_space, internal_tensor, tensor_power, tensor_powers, trace, InternalTensor, TensorPowers};

#[cfg(test)]
mod tests;
