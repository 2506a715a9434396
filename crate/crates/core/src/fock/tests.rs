use super::*;
use crate::error::Error;
use crate::fdalg::{AlgElement, FDAlgebra, FiniteGroup, MatrixAlgebra};
use crate::fixtures;
use crate::graphs::{graph_action_lift, graph_correspondence, labeling_grading, DirectedGraph, EdgeLabeling, GraphAction, GraphInstance};
use crate::hilbmod::{katsura_ideal, theta, Correspondence};
use crate::linalg::{self, CVec};
use crate::report::Tolerance;

const TOL: Tolerance = Tolerance(1e-8);

fn scalars() -> Correspondence {
    Correspondence::over_itself(&MatrixAlgebra::full(FDAlgebra::matrices(1)))
}

fn e(d: usize, i: usize) -> CVec {
    linalg::unit_vec(d, i)
}

#[test]
fn tensor_power_dimensions() {
    let c = scalars();
    assert_eq!(tensor_powers(&c, 3).unwrap().dims(), vec![1, 1, 1, 1]);
    let x = graph_correspondence(&fixtures::two_cycle());
    assert_eq!(tensor_powers(&x, 3).unwrap().dims(), vec![2, 2, 2, 2]);
    assert_eq!(tensor_power(&x, 0).unwrap().dim(), 2);
    let chain = graph_correspondence(&fixtures::fork_times_chain().e);
    // paths of length 1, 2, 3, 4 in the fork
    assert_eq!(tensor_powers(&chain, 4).unwrap().dims(), vec![5, 4, 3, 2, 0]);
}

#[test]
fn fock_of_scalars_is_a_truncated_shift() {
    let rep = fock_toeplitz_rep(&scalars(), 4).unwrap();
    assert_eq!(rep.target().dim(), 25);
    assert!(rep.verify(TOL).passed(), "{}", rep.verify(TOL));
    assert!((rep.truncation_defect() - 1.0).abs() < 1e-12);
}

#[test]
fn fock_of_two_cycle_satisfies_identities() {
    let x = graph_correspondence(&fixtures::two_cycle());
    let rep = fock_toeplitz_rep(&x, 3).unwrap();
    let r = rep.verify(TOL);
    assert!(r.passed(), "{r}");
    assert!(rep.truncation_defect() > 0.5);
}

#[test]
fn psi_n_agrees_with_words() {
    let x = graph_correspondence(&fixtures::two_cycle());
    let rep = fock_toeplitz_rep(&x, 3).unwrap();
    let p = rep.powers();
    for i in 0..2 {
        for j in 0..2 {
            let w = [e(2, i), e(2, j)];
            let lhs = rep.psi_n(2, &p.word(&w)).unwrap();
            assert!(lhs.dist(&rep.psi_word(&w)) < 1e-10);
        }
    }
    assert!(rep.psi_n(4, &e(2, 0)).is_err());
}

#[test]
fn psi_paren_properties() {
    let x = graph_correspondence(&fixtures::two_cycle());
    let rep = fock_toeplitz_rep(&x, 3).unwrap();
    for n in 1..=2 {
        let r = rep.verify_compacts(n, TOL).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn ck_path_spaces() {
    assert_eq!(ck_representation(&fixtures::single_edge()).unwrap().dim(), 2);
    let iso = ck_representation(&fixtures::isolated_vertex()).unwrap();
    assert_eq!(iso.dim(), 1);
    assert!(iso.rep.verify(TOL).passed());
    let merge = DirectedGraph::new(&["v0", "v1", "v2"], &[("e", "v0", "v2"), ("f", "v1", "v2")]).unwrap();
    let ck = ck_representation(&merge).unwrap();
    assert_eq!(ck.dim(), 4);
    assert!(ck_representation(&fixtures::two_cycle()).is_err());
}

#[test]
fn ck_is_covariant_and_path_toeplitz_is_not() {
    let g = fixtures::fork_times_chain().e;
    let j = katsura_ideal(&graph_correspondence(&g), TOL).basis;
    let ck = ck_representation(&g).unwrap();
    assert!(ck.rep.verify(TOL).passed());
    assert!(cp_covariance_defect(&ck.rep, &j, TOL).unwrap() < 1e-12);
    let pt = path_toeplitz_representation(&g).unwrap();
    assert!(pt.rep.verify(TOL).passed());
    assert!((cp_covariance_defect(&pt.rep, &j, TOL).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn gauge_grading_and_spanning() {
    let g = fixtures::fork_times_chain().f;
    let ck = ck_representation(&g).unwrap();
    let grading = ck.gauge_grading();
    assert!(grading.verify(TOL).passed());
    for n in 0..=2 {
        for v in ck.rep.psi_n_basis(n).unwrap() {
            if v.norm() > 0.0 {
                assert!(grading.residual_in(n as i64, &v) < 1e-12);
            }
        }
    }
    let r = spanning_check(&ck.rep, ck.depth(), TOL).unwrap();
    assert!(r.passed(), "{r}");
}

struct Built {
    prod: ProductRep,
}

fn build(inst: &GraphInstance) -> Built {
    let (ex, fy) = (ck_representation(&inst.e).unwrap(), ck_representation(&inst.f).unwrap());
    let act = graph_action_lift(&inst.e, &inst.action).unwrap();
    let grad = labeling_grading(&inst.f, &inst.labeling).unwrap();
    let gamma = ex.induced_action(&inst.action).unwrap();
    let sigma = fy.induced_grading(&inst.labeling).unwrap();
    let prod = product_representation(&ex.rep, &act, &gamma, &fy.rep, &grad, &sigma, TOL).unwrap();
    Built { prod }
}

fn trivial_version(inst: &GraphInstance) -> GraphInstance {
    let g = FiniteGroup::trivial();
    GraphInstance {
        e: inst.e.clone(),
        action: GraphAction::trivial(g.clone(), &inst.e),
        f: inst.f.clone(),
        labeling: EdgeLabeling::trivial(g, &inst.f),
    }
}

fn vertex(g: &DirectedGraph, name: &str) -> AlgElement {
    let v = g.vertex_index(name).unwrap();
    graph_correspondence(g).coeff().ambient().unit(v, 0, 0)
}

fn edge(g: &DirectedGraph, name: &str) -> CVec {
    e(g.num_edges(), g.edge_index(name).unwrap())
}

#[test]
fn product_representation_is_toeplitz() {
    let b = build(&fixtures::merge_times_split());
    let r = b.prod.rep().verify(TOL);
    assert!(r.passed(), "{r}");
}

#[test]
fn product_rejects_non_equivariant_factor() {
    let inst = fixtures::merge_times_split();
    let ex = ck_representation(&inst.e).unwrap();
    let fy = ck_representation(&inst.f).unwrap();
    let act = graph_action_lift(&inst.e, &inst.action).unwrap();
    let grad = labeling_grading(&inst.f, &inst.labeling).unwrap();
    let wrong = crate::fdalg::AlgAction::trivial(inst.action.group().clone(), MatrixAlgebra::full(ex.rep.target().clone()));
    let sigma = fy.induced_grading(&inst.labeling).unwrap();
    let err = product_representation(&ex.rep, &act, &wrong, &fy.rep, &grad, &sigma, TOL).unwrap_err();
    assert!(matches!(err, Error::Precondition { .. }));
}

#[test]
fn compacts_of_product_use_degree_twist() {
    let inst = fixtures::merge_times_split();
    let b = build(&inst);
    let (x, y) = (graph_correspondence(&inst.e), graph_correspondence(&inst.f));
    let (e0, e1) = (edge(&inst.e, "e0"), edge(&inst.e, "e1"));
    let (yf, yg) = (edge(&inst.f, "f"), edge(&inst.f, "g"));
    let s_op = theta(x.module(), &e0, &e1).matrix;
    let t_op = theta(y.module(), &yf, &yg).matrix;
    let thetas = vec![(e0.clone(), e0.clone(), yf.clone(), yg.clone()), (e1.clone(), e0.clone(), yg.clone(), yf.clone()), (e1.clone(), e1.clone(), yf.clone(), yf.clone())];
    let r = compacts_product_check(&b.prod, &s_op, &t_op, &thetas, TOL).unwrap();
    assert!(r.passed(), "{r}");

    // without the twist the rank-one identity fails for y, y' of different degrees
    let p = &b.prod;
    let rx = &p.x_rep().psi(&e0) * &p.x_rep().psi(&e0).adjoint();
    let ry = &p.y_rep().psi(&yf) * &p.y_rep().psi(&yg).adjoint();
    let expected = p.target().elementary(&rx, &ry);
    assert!(expected.norm() > 0.5);
    let naive = &p.rep().psi(&p.tensor(&e0, &yf)) * &p.rep().psi(&p.tensor(&e0, &yg)).adjoint();
    assert!(naive.dist(&expected) > 0.5);
}

#[test]
fn product_is_covariant() {
    let b = build(&fixtures::merge_times_split());
    let r = cp_product_check(&b.prod, TOL).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn cp_product_needs_covariant_factors() {
    let inst = fixtures::merge_times_split();
    let ex = path_toeplitz_representation(&inst.e).unwrap();
    let fy = ck_representation(&inst.f).unwrap();
    let act = graph_action_lift(&inst.e, &inst.action).unwrap();
    let grad = labeling_grading(&inst.f, &inst.labeling).unwrap();
    let gamma = ex.induced_action(&inst.action).unwrap();
    let sigma = fy.induced_grading(&inst.labeling).unwrap();
    let prod = product_representation(&ex.rep, &act, &gamma, &fy.rep, &grad, &sigma, TOL).unwrap();
    assert!(matches!(cp_product_check(&prod, TOL), Err(Error::Precondition { .. })));
}

fn chain_data(inst: &GraphInstance, n: usize, l: usize) -> GeneratorData {
    let (eg, fg) = (&inst.e, &inst.f);
    match (n, l) {
        (0, 0) => GeneratorData {
            x0: vec![edge(eg, "k")],
            a: vertex(eg, "z"),
            x0p: LevelElement::Coeff(vertex(eg, "z")),
            ap: vertex(eg, "z"),
            y1: vec![edge(fg, "f")],
            y2: LevelElement::Coeff(vertex(fg, "x0")),
            y1p: LevelElement::Coeff(vertex(fg, "x0")),
            y2p: LevelElement::Coeff(vertex(fg, "x0")),
        },
        (0, 1) => GeneratorData {
            x0: vec![edge(eg, "h")],
            a: vertex(eg, "w"),
            x0p: LevelElement::Coeff(vertex(eg, "w")),
            ap: vertex(eg, "w"),
            y1: vec![edge(fg, "g")],
            y2: LevelElement::Word(vec![edge(fg, "f")]),
            y1p: LevelElement::Coeff(vertex(fg, "x1")),
            y2p: LevelElement::Word(vec![edge(fg, "f")]),
        },
        (1, 0) => GeneratorData {
            x0: vec![edge(eg, "k"), edge(eg, "h")],
            a: vertex(eg, "w"),
            x0p: LevelElement::Word(vec![edge(eg, "h")]),
            ap: vertex(eg, "w"),
            y1: vec![edge(fg, "g"), edge(fg, "f")],
            y2: LevelElement::Coeff(vertex(fg, "x0")),
            y1p: LevelElement::Word(vec![edge(fg, "f")]),
            y2p: LevelElement::Coeff(vertex(fg, "x0")),
        },
        _ => unreachable!(),
    }
}

#[test]
fn generator_factorization_chain() {
    let inst = fixtures::fork_times_chain();
    let triv = trivial_version(&inst);
    let cases = [(&triv, 0, 0), (&inst, 0, 0), (&inst, 0, 1), (&inst, 1, 0), (&triv, 1, 0)];
    let zn = build(&inst);
    let tv = build(&triv);
    for (which, n, l) in cases {
        let b = if std::ptr::eq(which, &triv) { &tv } else { &zn };
        let data = chain_data(which, n, l);
        assert!(b.prod.spanning_element(&data).norm() > 0.5, "n={n} l={l} is a zero element");
        let r = generator_factorization_check(&b.prod, &data, TOL).unwrap();
        assert!(r.passed(), "n={n} l={l}: {r}");
        assert!(r.checks.iter().all(|c| c.residual.is_finite()));
    }
}

#[test]
fn generator_factorization_preconditions() {
    let inst = fixtures::fork_times_chain();
    let b = build(&inst);
    let mut data = chain_data(&inst, 0, 0);
    data.a = vertex(&inst.e, "u0");
    assert!(matches!(generator_factorization_check(&b.prod, &data, TOL), Err(Error::Precondition { .. })));
    let mut data = chain_data(&inst, 0, 0);
    data.y2 = LevelElement::Word(vec![edge(&inst.f, "f"), edge(&inst.f, "f")]);
    data.y2p = LevelElement::Word(vec![edge(&inst.f, "f"), edge(&inst.f, "f")]);
    assert!(generator_factorization_check(&b.prod, &data, TOL).is_err());
}
