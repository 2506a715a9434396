//! Small named inputs shared by tests, examples and the command line.

use crate::graphs::{DirectedGraph, EdgeLabeling, GraphAction, GraphInstance};
use crate::fdalg::{cyclic_dual_action, function_algebra, group_algebra, AlgAction, AlgGrading, FiniteGroup};
use crate::hilbmod::{CorrGrading, Correspondence};
use crate::linalg;

/// An action on one algebra and a grading of another, over the same group.
#[derive(Debug, Clone)]
pub struct TwistData {
    pub name: &'static str,
    pub alpha: AlgAction,
    pub grading: AlgGrading,
}

/// `c₀(ℤ₂)` with translation, and `ℂℤ₂` with its canonical grading.
pub fn translation_z2() -> TwistData {
    let g = FiniteGroup::cyclic(2).expect("order 2");
    TwistData {
        name: "c0(Z2) x CZ2",
        alpha: function_algebra(&g).translation,
        grading: group_algebra(&g).grading,
    }
}

/// `ℂℤ₃` with its dual action, and `ℂℤ₃` with its canonical grading.
pub fn dual_z3() -> TwistData {
    let g = FiniteGroup::cyclic(3).expect("order 3");
    let ga = group_algebra(&g);
    TwistData { name: "CZ3 x CZ3", alpha: cyclic_dual_action(&ga).expect("characters"), grading: ga.grading }
}

/// `Cl₁ = ℂℤ₂` with its parity automorphism, and `Cl₁` with its odd/even grading.
pub fn clifford_z2() -> TwistData {
    let g = FiniteGroup::cyclic(2).expect("order 2");
    let ga = group_algebra(&g);
    TwistData { name: "Cl1 x Cl1", alpha: cyclic_dual_action(&ga).expect("characters"), grading: ga.grading }
}

/// The three formula fixtures.
pub fn twist_fixtures() -> Vec<TwistData> {
    vec![translation_z2(), dual_z3(), clifford_z2()]
}

/// `Cl₁` as a graded correspondence over itself, with its parity automorphism.
pub fn clifford_module() -> (Correspondence, CorrGrading, AlgAction) {
    let data = clifford_z2();
    let c = Correspondence::over_itself(data.grading.algebra());
    let parts = vec![(0, vec![linalg::unit_vec(2, 0)]), (1, vec![linalg::unit_vec(2, 1)])];
    let grading = CorrGrading::new(data.grading.clone(), parts).expect("degrees in range");
    (c, grading, data.alpha)
}

/// `v0 →a v1 →b v0`.
pub fn two_cycle() -> DirectedGraph {
    DirectedGraph::new(&["v0", "v1"], &[("a", "v0", "v1"), ("b", "v1", "v0")]).expect("valid graph")
}

/// One vertex `w` with one loop `e`.
pub fn single_loop() -> DirectedGraph {
    DirectedGraph::new(&["w"], &[("e", "w", "w")]).expect("valid graph")
}

/// `v0 → v1`.
pub fn single_edge() -> DirectedGraph {
    DirectedGraph::new(&["v0", "v1"], &[("e", "v0", "v1")]).expect("valid graph")
}

/// One vertex, no edges.
pub fn isolated_vertex() -> DirectedGraph {
    DirectedGraph::new::<&str>(&["v"], &[]).expect("valid graph")
}

/// The 2-cycle with the `ℤ₂` swap, and a loop labeled by the generator.
pub fn skw() -> GraphInstance {
    let e = two_cycle();
    let action = GraphAction::cyclic(2, vec![1, 0], vec![1, 0]).expect("order 2");
    let f = single_loop();
    let labeling = EdgeLabeling::new(action.group().clone(), vec![1]).expect("label in range");
    GraphInstance { e, action, f, labeling }
}

/// `v0 → v1` with trivial `ℤ₂` action, and a loop labeled by the generator.
pub fn edge_times_loop() -> GraphInstance {
    let e = single_edge();
    let group = FiniteGroup::cyclic(2).expect("order 2");
    let action = GraphAction::trivial(group.clone(), &e);
    let labeling = EdgeLabeling::new(group, vec![1]).expect("label in range");
    GraphInstance { e, action, f: single_loop(), labeling }
}

/// The 2-cycle with the swap, and an edgeless `F`.
pub fn cycle_times_point() -> GraphInstance {
    let skw = skw();
    let labeling = EdgeLabeling::new(skw.action.group().clone(), vec![]).expect("no edges");
    GraphInstance { f: isolated_vertex(), labeling, ..skw }
}

/// `u0 → w ← u1`, `w → z → t` with the `ℤ₂` swap of the `u`s, and `x0 →f x1 →g x2` with `f` of degree 1.
///
/// Both graphs are acyclic, so their Cuntz-Krieger families live on finite path spaces.
pub fn fork_times_chain() -> GraphInstance {
    let e = DirectedGraph::new(
        &["u0", "u1", "w", "z", "t"],
        &[("e0", "u0", "w"), ("e1", "u1", "w"), ("h", "w", "z"), ("k", "z", "t")],
    )
    .expect("valid graph");
    let action = GraphAction::cyclic(2, vec![1, 0, 2, 3, 4], vec![1, 0, 2, 3]).expect("order 2");
    let f = DirectedGraph::new(&["x0", "x1", "x2"], &[("f", "x0", "x1"), ("g", "x1", "x2")]).expect("valid graph");
    let labeling = EdgeLabeling::new(action.group().clone(), vec![1, 0]).expect("labels in range");
    GraphInstance { e, action, f, labeling }
}

/// `u0 → w ← u1` with the `ℤ₂` swap, and `x1 ←f x0 →g x2` with `f` of degree 1 and `g` of degree 0.
pub fn merge_times_split() -> GraphInstance {
    let e = DirectedGraph::new(&["u0", "u1", "w"], &[("e0", "u0", "w"), ("e1", "u1", "w")]).expect("valid graph");
    let action = GraphAction::cyclic(2, vec![1, 0, 2], vec![1, 0]).expect("order 2");
    let f = DirectedGraph::new(&["x0", "x1", "x2"], &[("f", "x0", "x1"), ("g", "x0", "x2")]).expect("valid graph");
    let labeling = EdgeLabeling::new(action.group().clone(), vec![1, 0]).expect("labels in range");
    GraphInstance { e, action, f, labeling }
}

/// Named graph-product inputs.
pub fn graph_fixtures() -> Vec<(&'static str, GraphInstance)> {
    vec![("skw", skw()), ("edge-x-loop", edge_times_loop()), ("cycle-x-point", cycle_times_point()), ("fork-x-chain", fork_times_chain()), ("merge-x-split", merge_times_split())]
}
