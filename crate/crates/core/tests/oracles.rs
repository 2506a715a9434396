//! Worked examples checked against independent computations and frozen values.

use corrkit::fdalg::{
    group_algebra, homogeneous_decomposition, involution, make_cyclic_group, multiply, operator_norm, FDAlgebra,
};
use corrkit::fixtures;
use corrkit::fock::{ck_representation, cp_covariance_defect, fock_toeplitz_rep, tensor_power};
use corrkit::graphs::{graph_correspondence, graph_katsura_ideal, skew_product};
use corrkit::hilbmod::{is_full, is_katsura_nondegenerate, katsura_ideal, linking_algebra, theta, Correspondence};
use corrkit::linalg::{self, CMat, CVec, C64};
use corrkit::twist::{heisenberg_model, twisted_algebra};
use corrkit::Tolerance;
use nalgebra::DMatrix;

const TOL: Tolerance = Tolerance(1e-9);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn sample_block(n: usize, seed: u64) -> CMat {
    // Small fixed pseudo-random entries, independent of any crate RNG.
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) as f64 / (1u64 << 31) as f64) * 2.0 - 1.0
    };
    DMatrix::from_fn(n, n, |_, _| c(next(), next()))
}

#[test]
fn cyclic_table_is_modular_addition() {
    let g = make_cyclic_group(4).unwrap();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(g.mul(a, b), (a + b) % 4);
        }
    }
    assert_eq!(g.mul(3, 2), 1);
}

#[test]
fn block_product_matches_triple_loop() {
    let amb = FDAlgebra::new(vec![2, 2]).unwrap();
    let (x0, x1, y0, y1) = (sample_block(2, 1), sample_block(2, 2), sample_block(2, 3), sample_block(2, 4));
    let a = amb.element(vec![x0.clone(), x1.clone()]).unwrap();
    let b = amb.element(vec![y0.clone(), y1.clone()]).unwrap();
    let ab = multiply(&a, &b).unwrap();
    for (k, (x, y)) in [(x0, y0), (x1, y1)].into_iter().enumerate() {
        for i in 0..2 {
            for j in 0..2 {
                let mut s = c(0.0, 0.0);
                for l in 0..2 {
                    s += x[(i, l)] * y[(l, j)];
                }
                assert!((ab.block(k)[(i, j)] - s).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn involution_is_entrywise_conjugate_transpose() {
    let amb = FDAlgebra::new(vec![3]).unwrap();
    let x = sample_block(3, 9);
    let a = amb.element(vec![x.clone()]).unwrap();
    let s = involution(&a);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(s.block(0)[(i, j)], x[(j, i)].conj());
        }
    }
}

#[test]
fn norm_from_eigenvalues_of_a_star_a() {
    let amb = FDAlgebra::new(vec![1, 3]).unwrap();
    let x = sample_block(3, 17);
    let a = amb.element(vec![DMatrix::from_element(1, 1, c(0.25, 0.0)), x.clone()]).unwrap();
    let gram = x.adjoint() * &x;
    let top = gram.symmetric_eigenvalues().iter().cloned().fold(0.0f64, f64::max).sqrt();
    assert!((operator_norm(&a) - top.max(0.25)).abs() < 1e-12);

    let m = amb.element(vec![DMatrix::from_element(1, 1, c(0.0, 0.0)), DMatrix::from_row_slice(3, 3, &[
        c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0),
        c(3.0, 0.0), c(4.0, 0.0), c(0.0, 0.0),
        c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0),
    ])]).unwrap();
    // Frozen: largest singular value of [[1,2],[3,4]].
    assert!((operator_norm(&m) - 5.464985704219043).abs() < 1e-12);
}

#[test]
fn group_algebra_coordinates_by_linear_solve() {
    let ga = group_algebra(&make_cyclic_group(3).unwrap());
    let coeffs = [c(0.5, -1.0), c(2.0, 0.25), c(-1.5, 0.0)];
    let a = (0..3).fold(ga.algebra.zero(), |acc, s| &acc + &ga.u(s).scale(coeffs[s]));
    // Solve the 9x3 system column-stacked against the u_s directly.
    let m = linalg::columns_to_matrix(9, &(0..3).map(|s| ga.u(s).to_vec()).collect::<Vec<_>>());
    let solved = m.clone().svd(true, true).solve(&a.to_vec(), 1e-12).unwrap();
    let parts = homogeneous_decomposition(&ga.grading, &a, TOL).unwrap();
    for (s, p) in parts {
        assert!((solved[s] - coeffs[s]).norm() < 1e-12);
        assert!(p.dist(&ga.u(s).scale(solved[s])) < 1e-12);
    }
}

#[test]
fn theta_on_single_edge_is_rank_one_projection() {
    let x = graph_correspondence(&fixtures::single_edge());
    let e = linalg::unit_vec(1, 0);
    let t = theta(x.module(), &e, &e).matrix;
    assert_eq!(t, CMat::identity(1, 1));
    assert!(linalg::max_abs(&(&t * &t - &t)) < 1e-15);
}

#[test]
fn loop_linking_algebra_corner_product() {
    let x = graph_correspondence(&fixtures::single_loop());
    let l = linking_algebra(x.module(), 1e-12);
    let (a, b) = (c(2.0, 1.0), c(-0.5, 3.0));
    let xa = l.x(&CVec::from_element(1, a));
    let xb = l.x(&CVec::from_element(1, b));
    // [0 x; 0 0]* [0 y; 0 0] = [0 0; 0 <x,y>]
    let lhs = &xa.adjoint() * &xb;
    let inner = x.inner(&CVec::from_element(1, a), &CVec::from_element(1, b));
    assert!(lhs.dist(&l.b(&inner)) < 1e-12);
    assert!((a.conj() * b - inner.block(0)[(0, 0)]).norm() < 1e-12);
    assert!(l.verify(TOL).passed());
}

#[test]
fn single_edge_regularity_by_receivers() {
    let g = fixtures::single_edge();
    let x = graph_correspondence(&g);
    let j = katsura_ideal(&x, TOL);
    assert_eq!(j.dim(), 1);
    assert_eq!(graph_katsura_ideal(&g).vertices, vec![g.vertex_index("v1").unwrap()]);
    let chi_v1 = x.coeff().ambient().unit(1, 0, 0);
    let span = linalg::columns_to_matrix(2, &j.basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
    assert!(linalg::distance_to_span(&span, &chi_v1.to_vec()) < 1e-12);
    assert!(!is_katsura_nondegenerate(&x, TOL));
    // <chi_e, chi_e> = chi_{v0}, so the inner products miss chi_{v1}.
    let e = linalg::unit_vec(1, 0);
    assert!(x.inner(&e, &e).dist(&x.coeff().ambient().unit(0, 0, 0)) < 1e-15);
    assert!(!is_full(x.module(), TOL));
}

#[test]
fn heisenberg_covariance_on_z3() {
    let h = heisenberg_model(&make_cyclic_group(3).unwrap());
    let rep = h.verify(Tolerance(1e-12));
    assert!(rep.passed() && rep.max_residual() <= 1e-12, "{rep}");
}

#[test]
fn crossed_product_concrete_structure() {
    let data = fixtures::translation_z2();
    let t = twisted_algebra(&data.alpha, &data.grading, TOL).unwrap();
    // M2: 4-dimensional, trivial center, a single 2x2 block.
    assert_eq!((t.dim(), t.concrete().center_dim(1e-9)), (4, 1));
    assert_eq!(t.concrete().wedderburn_signature(1e-9).unwrap(), vec![2]);
    // χ_0 ⊠ 1 and its conjugate by the unitary 1 ⊠ u_1 are orthogonal projections.
    let (chi0, chi1) = (&t.a().basis()[0], &t.a().basis()[1]);
    let (one_b, u) = (&t.b().basis()[0], &t.b().basis()[1]);
    let p = t.elementary(chi0, one_b);
    let q = t.elementary(chi1, one_b);
    let w = t.elementary(&(chi0 + chi1), u);
    assert!((&(&w * &p) * &w.adjoint()).dist(&q) < 1e-12);
    assert!((&p * &q).max_abs() < 1e-12);
}

#[test]
fn skw_product_endpoints_by_hand() {
    let skw = fixtures::skw();
    let p = skew_product(&skw.e, &skw.action, &skw.f, &skw.labeling).unwrap();
    // s(a×e) = α_1(v0)×w = v1×w and r(a×e) = v1×w; likewise b×e is a loop at v0×w.
    let loop_at = |edge: &str| {
        let e = &p.edges()[p.edge_index(edge).unwrap()];
        assert_eq!(e.src, e.dst);
        p.vertices()[e.src].clone()
    };
    assert_eq!(loop_at("a×e"), "v1×w");
    assert_eq!(loop_at("b×e"), "v0×w");
}

#[test]
fn two_cycle_left_action_and_path_counts() {
    let x = graph_correspondence(&fixtures::two_cycle());
    assert_eq!((x.dim(), x.coeff().dim()), (2, 2));
    // χ_{v1} acts as the projection onto χ_a (a ends at v1).
    assert_eq!(x.phi(&x.left().ambient().unit(1, 0, 0)), linalg::matrix_unit(2, 0, 0));
    assert_eq!(tensor_power(&x, 2).unwrap().dim(), 2);
}

#[test]
fn fock_defect_of_scalars_is_one() {
    let scalars = Correspondence::over_itself(&corrkit::fdalg::MatrixAlgebra::full(FDAlgebra::matrices(1)));
    let rep = fock_toeplitz_rep(&scalars, 3).unwrap();
    let j = katsura_ideal(&scalars, TOL).basis;
    assert!((cp_covariance_defect(&rep, &j, TOL).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn ck_of_single_edge_uses_matrix_units() {
    let g = fixtures::single_edge();
    let ck = ck_representation(&g).unwrap();
    assert_eq!(ck.dim(), 2);
    let psi = ck.rep.psi(&linalg::unit_vec(1, 0));
    assert_eq!(psi.to_matrix().iter().filter(|z| z.norm() > 0.5).count(), 1);
    assert!((psi.to_matrix().iter().map(|z| z.norm()).sum::<f64>() - 1.0).abs() < 1e-15);
}

#[test]
fn ck_path_space_of_merge() {
    // Paths start at the sources v0 and v1: the two trivial paths, then e and f.
    let g = corrkit::graphs::DirectedGraph::new(&["v0", "v1", "v2"], &[("e", "v0", "v2"), ("f", "v1", "v2")]).unwrap();
    assert_eq!(ck_representation(&g).unwrap().dim(), 4);
}
