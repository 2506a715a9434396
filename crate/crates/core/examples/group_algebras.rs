//! Group algebras, function algebras, actions and gradings.

use corrkit::fdalg::{
    cyclic_dual_action, function_algebra, group_algebra, homogeneous_decomposition, operator_norm, verify_action,
    verify_grading, FiniteGroup,
};
use corrkit::linalg::C64;
use corrkit::Tolerance;

fn main() -> corrkit::Result<()> {
    let tol = Tolerance::DEFAULT;
    let z3 = FiniteGroup::cyclic(3)?;
    let ga = group_algebra(&z3);
    println!("C*(Z3): dim {}, u1 u2 = u0: {}", ga.algebra.dim(), (ga.u(1) * ga.u(2)).dist(ga.u(0)) < 1e-12);
    println!("canonical grading: {}", verify_grading(&ga.grading, tol));

    let dual = cyclic_dual_action(&ga)?;
    println!("dual action: {}", verify_action(&dual, tol));

    let fa = function_algebra(&z3);
    println!("translation on c0(Z3): {}", verify_action(&fa.translation, tol));

    let a = &(ga.u(0) + &ga.u(1).scale(C64::new(0.0, 2.0))) + ga.u(2);
    println!("||a|| = {:.6}", operator_norm(&a));
    for (s, part) in homogeneous_decomposition(&ga.grading, &a, tol)? {
        println!("  degree {}: norm {:.3}", z3.label(s), operator_norm(&part));
    }
    Ok(())
}
