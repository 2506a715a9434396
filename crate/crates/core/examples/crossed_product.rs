//! `c₀(ℤ₂) ⊠ ℂℤ₂` is the crossed product `c₀(ℤ₂) ⋊ ℤ₂ ≅ M₂(ℂ)`.

use corrkit::fixtures;
use corrkit::twist::twisted_algebra;
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    for data in fixtures::twist_fixtures() {
        let t = twisted_algebra(&data.alpha, &data.grading, tol)?;
        println!(
            "{}: dim {}, center {}, blocks {:?}",
            data.name,
            t.dim(),
            t.concrete().center_dim(1e-9),
            t.concrete().wedderburn_signature(1e-9)?
        );
        for rep in [t.verify_formulas(tol), t.verify_commutation(tol), t.verify_models(tol)] {
            print!("{rep}");
        }
    }
    Ok(())
}
