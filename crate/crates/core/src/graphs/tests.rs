use super::*;
use crate::fdalg::FiniteGroup;
use crate::fixtures;
use crate::hilbmod::{katsura_ideal, verify_corr_action, verify_corr_grading};
use crate::linalg::{self, re, CMat};
use crate::report::Tolerance;

const TOL: Tolerance = Tolerance::DEFAULT;

fn endpoints(g: &DirectedGraph, name: &str) -> (String, String) {
    let e = &g.edges()[g.edge_index(name).expect("edge exists")];
    (g.vertices()[e.src].clone(), g.vertices()[e.dst].clone())
}

#[test]
fn skw_skew_product_endpoints() {
    let skw = fixtures::skw();
    let p = skew_product(&skw.e, &skw.action, &skw.f, &skw.labeling).unwrap();
    assert_eq!(p.vertices(), ["v0×w", "v1×w"]);
    assert_eq!(p.num_edges(), 2);
    assert_eq!(endpoints(&p, "a×e"), ("v1×w".to_string(), "v1×w".to_string()));
    assert_eq!(endpoints(&p, "b×e"), ("v0×w".to_string(), "v0×w".to_string()));
}

#[test]
fn identity_labels_give_ordinary_product() {
    let e = fixtures::two_cycle();
    let f = fixtures::single_edge();
    let g = FiniteGroup::cyclic(2).unwrap();
    let act = GraphAction::cyclic(2, vec![1, 0], vec![1, 0]).unwrap();
    let p = skew_product(&e, &act, &f, &EdgeLabeling::trivial(g, &f)).unwrap();
    for (i, ei) in e.edges().iter().enumerate() {
        for (j, fj) in f.edges().iter().enumerate() {
            let pe = &p.edges()[product_edge(&f, i, j)];
            assert_eq!(pe.src, product_vertex(&f, ei.src, fj.src));
            assert_eq!(pe.dst, product_vertex(&f, ei.dst, fj.dst));
        }
    }
}

#[test]
fn loop_with_identity_label_reproduces_e() {
    let e = fixtures::two_cycle();
    let f = fixtures::single_loop();
    let g = FiniteGroup::cyclic(2).unwrap();
    let act = GraphAction::cyclic(2, vec![1, 0], vec![1, 0]).unwrap();
    let p = skew_product(&e, &act, &f, &EdgeLabeling::trivial(g, &f)).unwrap();
    let pairs: Vec<_> = p.edges().iter().map(|x| (x.src, x.dst)).collect();
    let orig: Vec<_> = e.edges().iter().map(|x| (x.src, x.dst)).collect();
    assert_eq!(pairs, orig);
}

#[test]
fn skew_product_rejects_group_mismatch() {
    let skw = fixtures::skw();
    let l3 = EdgeLabeling::new(FiniteGroup::cyclic(3).unwrap(), vec![2]).unwrap();
    assert!(skew_product(&skw.e, &skw.action, &skw.f, &l3).is_err());
}

#[test]
fn graph_correspondence_examples() {
    let l = graph_correspondence(&fixtures::single_loop());
    assert_eq!((l.dim(), l.coeff().dim()), (1, 1));
    assert!(l.verify(TOL).passed());

    let s = graph_correspondence(&fixtures::single_edge());
    let x = linalg::unit_vec(1, 0);
    let ip = s.inner(&x, &x);
    assert!(linalg::max_abs_vec(&(ip.to_vec() - s.coeff().ambient().unit(0, 0, 0).to_vec())) < 1e-12);

    let c = graph_correspondence(&fixtures::two_cycle());
    assert_eq!(c.dim(), 2);
    let p = c.phi(&c.left().ambient().unit(1, 0, 0));
    let mut expected = CMat::zeros(2, 2);
    expected[(0, 0)] = re(1.0);
    assert!(linalg::max_abs(&(p - expected)) < 1e-12);
    assert!(c.verify(TOL).passed());
}

#[test]
fn lift_of_swap_is_a_permutation() {
    let skw = fixtures::skw();
    let c = graph_correspondence(&skw.e);
    let act = graph_action_lift(&skw.e, &skw.action).unwrap();
    assert!(verify_corr_action(&c, &act, TOL).passed());
    let g1 = act.gamma(1);
    assert_eq!(g1, &linalg::permutation_matrix(&[1, 0]));
    assert!(linalg::max_abs(&(g1 * g1 - CMat::identity(2, 2))) < 1e-12);

    let triv = graph_action_lift(&skw.e, &GraphAction::trivial(skw.action.group().clone(), &skw.e)).unwrap();
    assert!(triv.group().elements().all(|s| triv.gamma(s) == &CMat::identity(2, 2)));
}

#[test]
fn labeling_gradings() {
    let skw = fixtures::skw();
    let g = labeling_grading(&skw.f, &skw.labeling).unwrap();
    assert!(g.component(0).is_empty());
    assert_eq!(g.component(1).len(), 1);
    assert!(verify_corr_grading(&graph_correspondence(&skw.f), &g, TOL).passed());

    let two = DirectedGraph::new(&["w"], &[("e0", "w", "w"), ("e1", "w", "w")]).unwrap();
    let l = EdgeLabeling::new(FiniteGroup::cyclic(2).unwrap(), vec![0, 1]).unwrap();
    let g = labeling_grading(&two, &l).unwrap();
    assert_eq!((g.component(0).len(), g.component(1).len()), (1, 1));
    assert!(verify_corr_grading(&graph_correspondence(&two), &g, TOL).passed());
}

#[test]
fn katsura_ideals() {
    assert_eq!(graph_katsura_ideal(&fixtures::single_loop()).vertices, vec![0]);
    assert_eq!(graph_katsura_ideal(&fixtures::single_edge()).vertices, vec![1]);
    assert!(graph_katsura_ideal(&fixtures::isolated_vertex()).vertices.is_empty());
    for g in [fixtures::single_loop(), fixtures::single_edge(), fixtures::isolated_vertex(), fixtures::two_cycle()] {
        assert!(katsura_agreement(&g, TOL).passed());
    }
    assert_eq!(katsura_ideal(&graph_correspondence(&fixtures::single_edge()), TOL).dim(), 1);
}

#[test]
fn regularity_reports() {
    let r = graph_regularity_report(&fixtures::two_cycle(), TOL);
    assert!(r.sinks.is_empty() && r.proper_sources.is_empty() && r.is_katsura_nondegenerate && r.is_full);
    assert!(r.consistent());

    let r = graph_regularity_report(&fixtures::single_edge(), TOL);
    assert_eq!(r.proper_sources, ["v0"]);
    assert_eq!(r.sinks, ["v1"]);
    assert!(!r.is_katsura_nondegenerate && !r.is_full);
    assert!(r.consistent());

    let r = graph_regularity_report(&fixtures::isolated_vertex(), TOL);
    assert_eq!(r.sinks, ["v"]);
    assert!(r.proper_sources.is_empty());
    assert!(r.consistent());
}

#[test]
fn fixtures_pass_isomorphism_and_compatibility() {
    for (name, inst) in fixtures::graph_fixtures() {
        let iso = verify_graph_product_isomorphism(&inst.e, &inst.action, &inst.f, &inst.labeling, TOL);
        assert!(iso.passed(), "{name}: {iso}");
        let comp = ideal_compatibility_check(&inst.e, &inst.action, &inst.f, &inst.labeling, TOL);
        assert!(comp.passed(), "{name}: {comp}");
    }
}

#[test]
fn edgeless_f_gives_zero_ideals() {
    let inst = fixtures::cycle_times_point();
    let p = graph_product(&inst.e, &inst.action, &inst.f, &inst.labeling, TOL).unwrap();
    assert_eq!(p.skew.dim(), 0);
    assert!(graph_katsura_ideal(&p.product).vertices.is_empty());
}

#[test]
fn trivial_labeling_reduces_to_tensor_identification() {
    let e = fixtures::two_cycle();
    let f = fixtures::two_cycle();
    let g = FiniteGroup::cyclic(2).unwrap();
    let act = GraphAction::trivial(g.clone(), &e);
    let rep = verify_graph_product_isomorphism(&e, &act, &f, &EdgeLabeling::trivial(g, &f), TOL);
    assert!(rep.passed(), "{rep}");
}

#[test]
fn random_z3_instances_pass() {
    let bounds = RandomBounds { max_vertices: 3, max_edges: 4 };
    for (i, inst) in random_instances(7, 12, bounds).into_iter().enumerate() {
        assert!(inst.action.verify(&inst.e).passed(), "instance {i}");
        let rep = verify_graph_product_isomorphism(&inst.e, &inst.action, &inst.f, &inst.labeling, TOL);
        assert!(rep.passed(), "instance {i}: {rep}");
        let comp = ideal_compatibility_check(&inst.e, &inst.action, &inst.f, &inst.labeling, TOL);
        assert!(comp.passed(), "instance {i}: {comp}");
    }
}

#[test]
fn json_and_dot_round_trip() {
    let skw = fixtures::skw();
    let json = GraphJson::from_graph(&skw.f, Some(&skw.labeling));
    let text = serde_json::to_string(&json).unwrap();
    let back: GraphJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_graph().unwrap(), skw.f);
    assert_eq!(back.labeling(skw.labeling.group()).unwrap(), skw.labeling);

    let dot = to_dot(&skw.e, "skw", None);
    let parsed = from_dot(&dot).unwrap();
    assert_eq!((parsed.name.as_str(), &parsed.graph, parsed.labels), ("skw", &skw.e, None));

    let empty = DirectedGraph::new::<&str>(&[], &[]).unwrap();
    let parsed = from_dot(&to_dot(&empty, "empty", None)).unwrap();
    assert_eq!(parsed.graph, empty);
}

#[test]
fn labeled_dot_export_golden() {
    let skw = fixtures::skw();
    let p = skew_product(&skw.e, &skw.action, &skw.f, &skw.labeling).unwrap();
    let labels = EdgeLabeling::new(skw.labeling.group().clone(), vec![1, 1]).unwrap();
    let dot = to_dot(&p, "skw-product", Some(&labels));
    let golden = "digraph \"skw-product\" {\n  \"v0×w\" [label=\"v0×w\"];\n  \"v1×w\" [label=\"v1×w\"];\n  \"v1×w\" -> \"v1×w\" [id=\"a×e\", label=\"1\"];\n  \"v0×w\" -> \"v0×w\" [id=\"b×e\", label=\"1\"];\n}\n";
    assert_eq!(dot, golden);
    let parsed = from_dot(&dot).unwrap();
    assert_eq!(dot_labeling(&parsed, labels.group()).unwrap(), Some(labels));
}

#[test]
fn malformed_dot_reports_line() {
    let err = from_dot("digraph g {\n  a -> b [id=\"x\"];\n  c -> \n}\n").unwrap_err();
    assert!(matches!(err, crate::Error::Parse { line: 3, .. }), "{err}");
    assert!(matches!(from_dot("digraph g {\n a;\n"), Err(crate::Error::Parse { .. })));
}

#[test]
fn relabeling_commutes_with_trivial_skew_product() {
    let e = fixtures::two_cycle();
    let f = DirectedGraph::new(&["x", "y"], &[("p", "x", "y"), ("q", "y", "y")]).unwrap();
    let g = FiniteGroup::cyclic(2).unwrap();
    let act = GraphAction::trivial(g.clone(), &e);
    let base = skew_product(&e, &act, &f, &EdgeLabeling::trivial(g.clone(), &f)).unwrap();
    let e2 = e.reorder(&[1, 0], &[1, 0]).unwrap();
    let act2 = GraphAction::trivial(g.clone(), &e2);
    let moved = skew_product(&e2, &act2, &f, &EdgeLabeling::trivial(g, &f)).unwrap();
    let set = |p: &DirectedGraph| {
        let mut v: Vec<_> = p.edges().iter().map(|x| (x.name.clone(), p.vertices()[x.src].clone(), p.vertices()[x.dst].clone())).collect();
        v.sort();
        v
    };
    assert_eq!(set(&base), set(&moved));
}
