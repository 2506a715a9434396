//! The product of two Cuntz-Krieger representations on `X(E) ⊠ X(F)` is a covariant Toeplitz
//! representation.

use corrkit::fixtures;
use corrkit::fock::{ck_representation, cp_product_check, product_representation};
use corrkit::graphs::{graph_action_lift, labeling_grading};
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    let inst = fixtures::merge_times_split();
    let (ex, fy) = (ck_representation(&inst.e)?, ck_representation(&inst.f)?);
    let prod = product_representation(
        &ex.rep,
        &graph_action_lift(&inst.e, &inst.action)?,
        &ex.induced_action(&inst.action)?,
        &fy.rep,
        &labeling_grading(&inst.f, &inst.labeling)?,
        &fy.induced_grading(&inst.labeling)?,
        tol,
    )?;
    println!("product target dimension {}", prod.target().dim());
    print!("{}", prod.rep().verify(tol));
    print!("{}", cp_product_check(&prod, tol)?);
    Ok(())
}
