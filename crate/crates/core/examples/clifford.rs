//! The graded tensor product `Cl₁ ⊗̂ Cl₁ ≅ Cl₂ ≅ M₂(ℂ)` as a twisted tensor product.

use corrkit::fixtures;
use corrkit::twist::graded_tensor_product;
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    let (x, grading, parity) = fixtures::clifford_module();
    let gp = graded_tensor_product(&x, &grading, &parity, &x, &grading, tol)?;
    println!("coefficient algebra blocks: {:?}", gp.graded.coeff().wedderburn_signature(1e-9)?);
    print!("{}", gp.verify_koszul(tol));
    print!("{}", gp.verify_isomorphism(tol));
    Ok(())
}
