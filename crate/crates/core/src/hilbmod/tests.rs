use super::*;
use crate::fdalg::{FDAlgebra, FiniteGroup, MatrixAlgebra};
use crate::linalg::{self, re, CMat, CVec, C64};
use crate::report::Tolerance;

const TOL: Tolerance = Tolerance::DEFAULT;

/// Edge `(source, range)` pairs over `n` vertices.
fn graph(n: usize, edges: &[(usize, usize)]) -> Correspondence {
    let alg = MatrixAlgebra::full(FDAlgebra::diagonal(n));
    let d = edges.len();
    let indicator = |f: &dyn Fn(usize) -> bool| CMat::from_diagonal(&CVec::from_iterator(d, (0..d).map(|e| re(f(e) as u8 as f64))));
    let right = (0..n).map(|v| indicator(&|e| edges[e].0 == v)).collect();
    let phi = (0..n).map(|v| indicator(&|e| edges[e].1 == v)).collect();
    let mut gram = Vec::new();
    for (e, edge) in edges.iter().enumerate() {
        for f in 0..d {
            gram.push(if e == f { alg.ambient().unit(edge.0, 0, 0) } else { alg.zero() });
        }
    }
    let m = HilbertModule::new(alg.clone(), d, right, gram).unwrap();
    Correspondence::new(alg, m, phi).unwrap()
}

fn scalars() -> Correspondence {
    Correspondence::over_itself(&MatrixAlgebra::full(FDAlgebra::matrices(1)))
}

#[test]
fn graph_modules_are_correspondences() {
    for c in [graph(1, &[(0, 0)]), graph(2, &[(0, 1)]), graph(2, &[(0, 1), (1, 0)]), graph(3, &[(0, 2), (1, 2)])] {
        let rep = c.verify(TOL);
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn algebra_over_itself_is_a_correspondence() {
    let a = MatrixAlgebra::full(FDAlgebra::new(vec![2, 1]).unwrap());
    assert!(Correspondence::over_itself(&a).verify(TOL).passed());
}

#[test]
fn theta_examples() {
    let c = scalars();
    let one = linalg::unit_vec(1, 0);
    assert_eq!(theta(c.module(), &one, &one).matrix, CMat::identity(1, 1));
    let zero = CVec::zeros(1);
    assert_eq!(theta(c.module(), &zero, &one).matrix, CMat::zeros(1, 1));
    // v0→v1 plus a loop at v1: Θ_{χ_e,χ_e} = χ_e⟨χ_e,·⟩ is the projection onto χ_e.
    let g = graph(2, &[(0, 1), (1, 1)]);
    let e = linalg::unit_vec(2, 0);
    let th = theta(g.module(), &e, &e);
    assert_eq!(th.matrix, linalg::matrix_unit(2, 0, 0));
}

#[test]
fn theta_composition_rule() {
    let c = graph(2, &[(0, 1), (1, 0), (1, 1)]);
    let m = c.module();
    let b: Vec<CVec> = (0..3).map(|i| m.basis_vector(i)).collect();
    for x in &b {
        for y in &b {
            for u in &b {
                for v in &b {
                    let lhs = theta(m, x, y).matrix * theta(m, u, v).matrix;
                    let rhs = theta(m, &m.right_mul(x, &m.inner(y, u)), v).matrix;
                    assert!(linalg::max_abs(&(lhs - rhs)) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn adjoint_examples() {
    let c = graph(2, &[(0, 0), (0, 1), (1, 1)]);
    let m = c.module();
    let id = CMat::identity(3, 3);
    let adj = adjoint_of(m, &id, TOL).unwrap().adjoint.unwrap();
    assert!(linalg::max_abs(&(adj - &id)) < 1e-12);
    let (x, y) = (m.basis_vector(0), m.basis_vector(2));
    let t = theta(m, &x, &y);
    let adj = adjoint_of(m, &t.matrix, TOL).unwrap().adjoint.unwrap();
    assert!(linalg::max_abs(&(adj - t.adjoint.unwrap())) < 1e-12);
}

#[test]
fn adjoint_of_random_module_map_on_loop_graph() {
    // Two loops at one vertex: module maps are all of M_2, adjoint is the conjugate transpose.
    let c = graph(1, &[(0, 0), (0, 0)]);
    let t = CMat::from_row_slice(2, 2, &[C64::new(1.0, 2.0), re(-0.5), C64::new(0.0, 3.0), re(4.0)]);
    let op = adjoint_of(c.module(), &t, TOL).unwrap();
    assert!(linalg::max_abs(&(op.adjoint.unwrap() - t.adjoint())) < 1e-12);
}

#[test]
fn non_module_map_is_not_adjointable() {
    // v0→v1 and v1→v1 have different sources; swapping them breaks the right action.
    let c = graph(2, &[(0, 1), (1, 1)]);
    let swap = linalg::permutation_matrix(&[1, 0]);
    assert!(matches!(adjoint_of(c.module(), &swap, TOL), Err(crate::Error::NotAdjointable(_))));
}

#[test]
fn linking_algebra_examples() {
    let zero = HilbertModule::zero(MatrixAlgebra::full(FDAlgebra::new(vec![2]).unwrap()));
    let l = linking_algebra(&zero, 1e-10);
    assert_eq!(l.algebra.dim(), 4);
    assert!(l.verify(TOL).passed());

    let l = linking_algebra(scalars().module(), 1e-10);
    assert_eq!(l.algebra.dim(), 4);
    assert_eq!(l.algebra.center_dim(1e-10), 1);
    assert!(l.verify(TOL).passed());

    let loop_ = graph(1, &[(0, 0)]);
    let l = linking_algebra(loop_.module(), 1e-10);
    let x = loop_.module().basis_vector(0);
    let lhs = &l.x(&x).adjoint() * &l.x(&x);
    assert!(lhs.dist(&l.b(&loop_.inner(&x, &x))) < 1e-12);
    assert!(l.verify(TOL).passed());

    let g = graph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
    let rep = linking_algebra(g.module(), 1e-10).verify(TOL);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn katsura_ideal_examples() {
    let loop_ = graph(1, &[(0, 0)]);
    assert_eq!(katsura_ideal(&loop_, TOL).blocks, Some(vec![0]));
    let edge = graph(2, &[(0, 1)]);
    assert_eq!(katsura_ideal(&edge, TOL).blocks, Some(vec![1]));
    let none = graph(2, &[]);
    assert!(katsura_ideal(&none, TOL).is_zero());
}

#[test]
fn katsura_block_test_matches_annihilator() {
    let cases = [graph(2, &[(0, 1)]), graph(3, &[(0, 2), (1, 2), (2, 2)]), graph(2, &[(0, 0), (1, 0)]), graph(2, &[])];
    for c in cases {
        let blocks = katsura_ideal(&c, TOL).basis;
        let ann = katsura_ideal_by_annihilator(&c, TOL);
        let a: Vec<CVec> = blocks.iter().map(|x| x.to_vec()).collect();
        let b: Vec<CVec> = ann.iter().map(|x| x.to_vec()).collect();
        let joint: Vec<CVec> = a.iter().chain(&b).cloned().collect();
        assert_eq!(a.len(), b.len());
        assert_eq!(linalg::span_dim(&joint, 1e-9), a.len());
    }
}

#[test]
fn katsura_ideal_is_two_sided() {
    let c = graph(3, &[(0, 2), (1, 2), (2, 1)]);
    let j = katsura_ideal(&c, TOL).basis;
    let alg = c.left();
    let sub = MatrixAlgebra::from_basis(alg.ambient().clone(), j.clone(), 1e-10).unwrap();
    for a in alg.basis() {
        for x in &j {
            assert!(sub.residual(&(a * x)) < 1e-12);
            assert!(sub.residual(&(x * a)) < 1e-12);
        }
    }
}

#[test]
fn nondegeneracy_examples() {
    assert!(is_katsura_nondegenerate(&graph(1, &[(0, 0)]), TOL));
    let edge = graph(2, &[(0, 1)]);
    assert!(!is_katsura_nondegenerate(&edge, TOL));
    let nd = katsura_nondegeneracy(&edge, TOL);
    assert!(nd.left_full());
    assert_eq!(nd.right_full(), Some(false));
    assert!(is_katsura_nondegenerate(&graph(1, &[]), TOL));
}

#[test]
fn fullness_examples() {
    assert!(is_full(scalars().module(), TOL));
    assert!(!is_full(graph(2, &[(0, 1)]).module(), TOL));
    assert!(is_full(graph(1, &[(0, 0)]).module(), TOL));
}

#[test]
fn identity_is_an_isomorphism_and_scaling_is_not() {
    let c = graph(2, &[(0, 1), (1, 0), (1, 1)]);
    let alg = c.coeff().clone();
    let gens = GeneratingSystem {
        a0: alg.basis().to_vec(),
        x0: (0..3).map(|i| c.module().basis_vector(i)).collect(),
        b0: alg.basis().to_vec(),
    };
    let id = AlgebraMap::identity(&alg);
    let rep = verify_correspondence_isomorphism(&c, &c, &id, &id, &gens, &gens.x0, TOL);
    assert!(rep.passed(), "{rep}");
    let mut scaled = gens.x0.clone();
    scaled[1] *= re(2.0);
    let rep = verify_correspondence_isomorphism(&c, &c, &id, &id, &gens, &scaled, TOL);
    assert!(!rep.check("inner product preserved").unwrap().passed);
}

#[test]
fn rebased_module_keeps_inner_products() {
    let c = graph(2, &[(0, 0), (0, 1)]);
    let p = CMat::from_row_slice(2, 2, &[re(1.0), re(1.0), re(1.0), re(-1.0)]);
    let r = c.change_basis(&p, 1e-12).unwrap();
    assert!(r.verify(TOL).passed());
    let x = r.module().basis_vector(0);
    let expected = c.inner(&p.column(0).into_owned(), &p.column(0).into_owned());
    assert!(r.inner(&x, &x).dist(&expected) < 1e-12);
}

#[test]
fn swap_lifts_to_a_correspondence_action() {
    let c = graph(2, &[(0, 1), (1, 0)]);
    let g = FiniteGroup::cyclic(2).unwrap();
    let amb = c.coeff().ambient().clone();
    let autos = vec![
        crate::fdalg::SpatialAutomorphism::identity(&amb),
        crate::fdalg::SpatialAutomorphism::permutation(&amb, vec![1, 0]).unwrap(),
    ];
    let alpha = crate::fdalg::AlgAction::new(g, c.coeff().clone(), autos).unwrap();
    let swap = linalg::permutation_matrix(&[1, 0]);
    let act = CorrAction::new(alpha.clone(), vec![CMat::identity(2, 2), swap]).unwrap();
    assert!(verify_corr_action(&c, &act, TOL).passed());
    let bad = CorrAction::new(alpha, vec![CMat::identity(2, 2), CMat::identity(2, 2)]).unwrap();
    assert!(!verify_corr_action(&c, &bad, TOL).passed());
}

#[test]
fn labeled_loops_give_a_grading() {
    let c = graph(1, &[(0, 0), (0, 0)]);
    let g = FiniteGroup::cyclic(2).unwrap();
    let coeff = crate::fdalg::AlgGrading::trivial(g, c.coeff().clone());
    let gr = CorrGrading::new(coeff.clone(), vec![(0, vec![linalg::unit_vec(2, 0)]), (1, vec![linalg::unit_vec(2, 1)])]).unwrap();
    let rep = verify_corr_grading(&c, &gr, TOL);
    assert!(rep.passed(), "{rep}");
    let mixed = CorrGrading::new(coeff, vec![(1, vec![linalg::unit_vec(2, 0) + linalg::unit_vec(2, 1)]), (0, vec![linalg::unit_vec(2, 0)])]).unwrap();
    assert!(!verify_corr_grading(&c, &mixed, TOL).check("<X_s, X_t> in A_(s^-1 t)").unwrap().passed);
}

#[test]
fn realization_reproduces_inner_products() {
    let c = graph(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
    let r = c.module().realize(1e-12);
    for i in 0..4 {
        for j in 0..4 {
            let lhs = r.ops[i].adjoint() * &r.ops[j];
            assert!(linalg::max_abs(&(lhs - c.module().gram_entry(i, j).to_matrix())) < 1e-12);
        }
    }
}
