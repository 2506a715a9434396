//! Balanced products: the matched-degree subalgebra of `ℂℤ₄ ⊠ ℂℤ₄`, its conditional
//! expectation and the induced action.

use corrkit::balanced::{balanced_subalgebra, conditional_expectation, induced_action_check, saturation_check, DualGrading, DualGroup};
use corrkit::fdalg::{group_algebra, AlgAction, AlgGrading, FiniteGroup};
use corrkit::twist::twisted_algebra;
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    let ga = group_algebra(&FiniteGroup::cyclic(4)?);
    let trivial = FiniteGroup::trivial();
    let t = twisted_algebra(
        &AlgAction::trivial(trivial.clone(), ga.algebra.clone()),
        &AlgGrading::trivial(trivial, ga.algebra.clone()),
        tol,
    )?;
    let a_grading = DualGrading::from_cyclic(&ga.grading, 1e-9)?;
    let parts = (0..4).map(|k| (k as i64, vec![t.b().basis()[k].clone()])).collect();
    let b_grading = DualGrading::new(DualGroup::Cyclic(4), t.b().clone(), parts, 1e-9)?;
    let b = balanced_subalgebra(&t, &a_grading, &b_grading, tol)?;
    println!("dim A x B = {}, dim balanced = {}", t.dim(), b.dim());

    let d = t.concrete().basis().iter().fold(t.concrete().zero(), |acc, x| &acc + x);
    let e = conditional_expectation(&b, &d, tol)?;
    println!("E(E(d)) = E(d): {}", conditional_expectation(&b, &e, tol)?.dist(&e) < 1e-12);
    print!("{}", induced_action_check(&b, tol));
    print!("{}", saturation_check(&b, tol));
    Ok(())
}
