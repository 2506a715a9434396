use super::*;
use crate::fdalg::{
    function_algebra, group_algebra, AlgAction, AlgGrading, FDAlgebra, FiniteGroup, MatrixAlgebra, SpatialAutomorphism,
};
use crate::fixtures::{clifford_module, dual_z3, translation_z2, twist_fixtures};
use crate::hilbmod::{CorrAction, CorrGrading, Correspondence, GeneratingSystem};
use crate::linalg::{self, CMat};
use crate::report::Tolerance;
use crate::Error;

const TOL: Tolerance = Tolerance(1e-9);

#[test]
fn heisenberg_models() {
    let trivial = heisenberg_model(&FiniteGroup::trivial());
    assert_eq!(trivial.order(), 1);
    assert!(trivial.verify(TOL).passed());
    let z2 = heisenberg_model(&FiniteGroup::cyclic(2).unwrap());
    assert_eq!(z2.lambda[1], linalg::permutation_matrix(&[1, 0]));
    assert_eq!(z2.m[0], linalg::matrix_unit(2, 0, 0));
    let z3 = heisenberg_model(&FiniteGroup::cyclic(3).unwrap());
    let rep = z3.verify(Tolerance(1e-12));
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn formulas_on_fixtures() {
    for data in twist_fixtures() {
        let t = twisted_algebra(&data.alpha, &data.grading, TOL).unwrap();
        for rep in [t.verify_formulas(TOL), t.verify_commutation(TOL), t.verify_models(TOL), t.verify_abstract_associativity(TOL)] {
            assert!(rep.passed(), "{}: {rep:?}", data.name);
        }
    }
}

#[test]
fn inverse_commutation_only_for_involutive_actions() {
    let z2 = twisted_algebra(&translation_z2().alpha, &translation_z2().grading, TOL).unwrap();
    assert!(z2.verify_inverse_commutation(TOL).passed());
    let z3 = dual_z3();
    let t = twisted_algebra(&z3.alpha, &z3.grading, TOL).unwrap();
    assert!(!t.verify_inverse_commutation(TOL).passed());
}

#[test]
fn crossed_product_is_m2() {
    let data = translation_z2();
    let t = twisted_algebra(&data.alpha, &data.grading, TOL).unwrap();
    assert_eq!(t.dim(), 4);
    assert_eq!(t.concrete().center_dim(1e-9), 1);
    assert_eq!(t.concrete().wedderburn_signature(1e-9).unwrap(), vec![2]);
}

#[test]
fn scalar_first_factor_gives_second() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let c = MatrixAlgebra::full(FDAlgebra::matrices(1));
    let alpha = AlgAction::trivial(g.clone(), c);
    let ga = group_algebra(&g);
    let t = twisted_algebra(&alpha, &ga.grading, TOL).unwrap();
    assert_eq!(t.dim(), 3);
    for p in 0..3 {
        for q in 0..3 {
            let expect = ga.algebra.structure_constants(p, q);
            assert!(linalg::max_abs_vec(&(t.abstract_basis_product(p, q) - expect)) < 1e-12);
        }
    }
}

#[test]
fn trivial_grading_is_untwisted() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let fa = function_algebra(&g);
    let b = MatrixAlgebra::full(FDAlgebra::matrices(2));
    let t = twisted_algebra(&fa.translation, &AlgGrading::trivial(g, b.clone()), TOL).unwrap();
    let tensor = fa.algebra.tensor(&b, 1e-12).unwrap();
    for p in 0..t.dim() {
        for q in 0..t.dim() {
            let expect = tensor.structure_constants(p, q);
            assert_eq!(t.abstract_basis_product(p, q), expect);
        }
    }
}

#[test]
fn group_mismatch_rejected() {
    let z2 = translation_z2();
    let z3 = dual_z3();
    assert!(matches!(twisted_algebra(&z2.alpha, &z3.grading, TOL), Err(Error::GroupMismatch(_))));
}

#[test]
fn broken_action_rejected() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let fa = function_algebra(&g);
    // Swapping for both elements breaks α_e = id.
    let swap = SpatialAutomorphism::permutation(fa.algebra.ambient(), vec![1, 0]).unwrap();
    let bad = AlgAction::new(g.clone(), fa.algebra.clone(), vec![swap.clone(), swap]).unwrap();
    let ga = group_algebra(&g);
    assert!(matches!(twisted_algebra(&bad, &ga.grading, TOL), Err(Error::Verification(_))));
}

fn swap_correspondence() -> (Correspondence, CorrAction) {
    let g = FiniteGroup::cyclic(2).unwrap();
    let fa = function_algebra(&g);
    let x = Correspondence::over_itself(&fa.algebra);
    let gamma = vec![CMat::identity(2, 2), linalg::permutation_matrix(&[1, 0])];
    (x, CorrAction::new(fa.translation, gamma).unwrap())
}

#[test]
fn crossed_by_swap_action() {
    let (x, act) = swap_correspondence();
    let cr = crossed_by_action(&x, &act, TOL).unwrap();
    assert_eq!(cr.corr.dim(), 4);
    assert_eq!(cr.corr.algebra().dim(), 4);
    let rep = cr.verify(TOL);
    assert!(rep.passed(), "{rep:?}");
    // <x u_1, y u_1> = α_1(<x,y>) u_0
    let (e0, e1) = (linalg::unit_vec(2, 0), linalg::unit_vec(2, 1));
    let ip = cr.corr.correspondence().inner(&cr.generator(&e0, 1), &cr.generator(&e0, 1));
    let fa = function_algebra(&FiniteGroup::cyclic(2).unwrap());
    let expect = cr.coeff_generator(fa.chi(1), 0);
    assert!(ip.dist(&expect) < 1e-12);
    let ip = cr.corr.correspondence().inner(&cr.generator(&e0, 1), &cr.generator(&e1, 1));
    assert!(ip.is_zero(1e-12));
    let full = cr.corr.verify(TOL);
    assert!(full.passed(), "{full:?}");
}

#[test]
fn crossed_by_trivial_group() {
    let g = FiniteGroup::trivial();
    let fa = function_algebra(&FiniteGroup::cyclic(2).unwrap());
    let x = Correspondence::over_itself(&fa.algebra);
    let act = CorrAction::trivial(g, &x);
    let cr = crossed_by_action(&x, &act, TOL).unwrap();
    assert_eq!(cr.corr.dim(), x.dim());
    assert!(cr.verify(TOL).passed());
}

#[test]
fn crossed_by_coaction_on_group_algebra() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let ga = group_algebra(&g);
    let y = Correspondence::over_itself(&ga.algebra);
    let parts = vec![(0, vec![linalg::unit_vec(2, 0)]), (1, vec![linalg::unit_vec(2, 1)])];
    let grading = CorrGrading::new(ga.grading.clone(), parts).unwrap();
    let cr = crossed_by_coaction(&y, &grading, TOL).unwrap();
    assert_eq!(cr.corr.dim(), 4);
    let rep = cr.verify(TOL);
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn crossed_by_coaction_degree_zero_only() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let b = MatrixAlgebra::full(FDAlgebra::diagonal(2));
    let y = Correspondence::over_itself(&b);
    let grading = CorrGrading::trivial(g, &y);
    let cr = crossed_by_coaction(&y, &grading, TOL).unwrap();
    assert!(cr.verify(TOL).passed());
    // Untwisted: the structure constants are those of c₀(G) ⊗ B.
    let t = cr.corr.algebra();
    let tensor = cr.functions.algebra.tensor(t.b(), 1e-12).unwrap();
    for p in 0..t.dim() {
        for q in 0..t.dim() {
            assert!(linalg::max_abs_vec(&(t.abstract_basis_product(p, q) - tensor.structure_constants(p, q))) < 1e-12);
        }
    }
}

#[test]
fn clifford_graded_product() {
    let (x, gx, parity) = clifford_module();
    let gp = graded_tensor_product(&x, &gx, &parity, &x, &gx, TOL).unwrap();
    let rep = gp.verify(TOL);
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(gp.graded.coeff().dim(), 4);
    assert_eq!(gp.graded.coeff().wedderburn_signature(1e-9).unwrap(), vec![2]);
    assert!(gp.verify_koszul(TOL).witnesses[0].starts_with(|c: char| c.is_ascii_digit() && c != '0'));
}

#[test]
fn trivially_graded_product_has_no_signs() {
    let g = FiniteGroup::cyclic(2).unwrap();
    let a = MatrixAlgebra::full(FDAlgebra::diagonal(2));
    let x = Correspondence::over_itself(&a);
    let gx = CorrGrading::trivial(g.clone(), &x);
    let parity = AlgAction::trivial(g, a.clone());
    let gp = graded_tensor_product(&x, &gx, &parity, &x, &gx, TOL).unwrap();
    assert!(gp.verify(TOL).passed());
    let tensor = a.tensor(&a, 1e-12).unwrap();
    for p in 0..4 {
        for q in 0..4 {
            let diff = tensor.structure_constants(p, q) - gp.graded.coeff().structure_constants(p, q);
            assert!(linalg::max_abs_vec(&diff) < 1e-12);
        }
    }
}

#[test]
fn graded_product_rejects_z3() {
    let g = FiniteGroup::cyclic(3).unwrap();
    let a = MatrixAlgebra::full(FDAlgebra::diagonal(1));
    let x = Correspondence::over_itself(&a);
    let gx = CorrGrading::trivial(g.clone(), &x);
    let parity = AlgAction::trivial(g, a);
    assert!(matches!(graded_tensor_product(&x, &gx, &parity, &x, &gx, TOL), Err(Error::GroupMismatch(_))));
}

#[test]
fn scalar_factors_are_neutral() {
    let (x, act) = swap_correspondence();
    let g = act.group().clone();
    let c = MatrixAlgebra::full(FDAlgebra::matrices(1));
    let y = Correspondence::over_itself(&c);
    let tc = twisted_correspondence(&x, &act, &y, &CorrGrading::trivial(g.clone(), &y), TOL).unwrap();
    assert_eq!(tc.dim(), x.dim());
    assert!(tc.verify(TOL).passed());

    let ga = group_algebra(&g);
    let yb = Correspondence::over_itself(&ga.algebra);
    let parts = vec![(0, vec![linalg::unit_vec(2, 0)]), (1, vec![linalg::unit_vec(2, 1)])];
    let grading = CorrGrading::new(ga.grading.clone(), parts).unwrap();
    let xc = Correspondence::over_itself(&c);
    let tc = twisted_correspondence(&xc, &CorrAction::trivial(g, &xc), &yb, &grading, TOL).unwrap();
    assert_eq!(tc.dim(), yb.dim());
    assert!(tc.verify(TOL).passed());
}

#[test]
fn generating_systems() {
    let (x, act) = swap_correspondence();
    let g = act.group().clone();
    let ga = group_algebra(&g);
    let y = Correspondence::over_itself(&ga.algebra);
    let parts = vec![(0, vec![linalg::unit_vec(2, 0)]), (1, vec![linalg::unit_vec(2, 1)])];
    let grading = CorrGrading::new(ga.grading.clone(), parts).unwrap();
    let tc = twisted_correspondence(&x, &act, &y, &grading, TOL).unwrap();
    let units = |n: usize| (0..n).map(|i| linalg::unit_vec(n, i)).collect::<Vec<_>>();
    let xg = GeneratingSystem { a0: x.coeff().basis().to_vec(), x0: units(2), b0: x.coeff().basis().to_vec() };
    let yg = GeneratingSystem { a0: ga.algebra.basis().to_vec(), x0: units(2), b0: ga.algebra.basis().to_vec() };
    let gens = twisted_generating_system(&tc, &xg, &yg, TOL).unwrap();
    let rep = gens.verify(tc.correspondence(), TOL);
    assert!(rep.passed(), "{rep:?}");

    let mixed = GeneratingSystem { x0: vec![linalg::unit_vec(2, 0) + linalg::unit_vec(2, 1)], ..yg };
    match twisted_generating_system(&tc, &xg, &mixed, TOL) {
        Err(Error::Precondition { witness, .. }) => assert!(witness.contains("y0[0]")),
        other => panic!("expected a precondition error, got {other:?}"),
    }
}

#[test]
fn sigma23_flips() {
    let data = translation_z2();
    let f = flip_sigma23(&data.alpha, &data.grading, &FDAlgebra::diagonal(2), TOL).unwrap();
    assert_eq!(f.source.dim(), 8);
    let rep = f.verify(&data.alpha, &FDAlgebra::diagonal(2), TOL);
    assert!(rep.passed(), "{rep:?}");
    let f = flip_sigma23(&data.alpha, &data.grading, &FDAlgebra::matrices(2), TOL).unwrap();
    assert_eq!(f.source.dim(), 16);
    let rep = f.verify(&data.alpha, &FDAlgebra::matrices(2), TOL);
    assert!(rep.passed(), "{rep:?}");

    let scalar = FDAlgebra::matrices(1);
    let f = flip_sigma23(&data.alpha, &data.grading, &scalar, TOL).unwrap();
    assert_eq!(f.map.matrix, CMat::identity(4, 4));
    assert!(f.verify(&data.alpha, &scalar, TOL).passed());

    let g = FiniteGroup::cyclic(2).unwrap();
    let a = MatrixAlgebra::full(FDAlgebra::diagonal(2));
    let b = MatrixAlgebra::full(FDAlgebra::matrices(2));
    let trivial = flip_sigma23(&AlgAction::trivial(g.clone(), a), &AlgGrading::trivial(g, b), &FDAlgebra::diagonal(2), TOL)
        .unwrap();
    assert!(trivial.verify(trivial.source.alpha(), &FDAlgebra::diagonal(2), TOL).passed());
}
