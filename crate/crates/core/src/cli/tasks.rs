//! Execution of spec-file tasks. Each task calls one library operation and returns its report.

use serde_json::{json, Map, Value};

use crate::balanced::{
    balanced_subalgebra, conditional_expectation, induced_action_check, lambda_action, saturation_check, BalancedAlgebra,
    DualGrading, DualGroup, Turn,
};
use crate::error::{Error, Result};
use crate::fdalg::{
    function_algebra, group_algebra, homogeneous_decomposition, involution, make_cyclic_group, multiply, operator_norm,
    verify_action, verify_grading, AlgElement, MatrixAlgebra,
};
use crate::fock::{
    ck_representation, compacts_product_check, cp_covariance_defect, cp_product_check, fock_toeplitz_rep,
    generator_factorization_check, path_toeplitz_representation, product_representation, psi_n, tensor_power,
    GeneratorData, LevelElement, ProductRep, ToeplitzRep,
};
use crate::graphs::{
    dot_labeling, edge_triples, from_dot, graph_action_lift, graph_correspondence, graph_regularity_report,
    ideal_compatibility_check, katsura_agreement, labeling_grading, random_instances, skew_product, to_dot,
    vertex_algebra, verify_graph_product_isomorphism, DirectedGraph, EdgeLabeling, GraphAction, GraphJson, RandomBounds,
};
use crate::hilbmod::{
    adjoint_of, is_full, is_katsura_nondegenerate, katsura_ideal, katsura_ideal_by_annihilator, linking_algebra, theta,
    verify_corr_action, verify_corr_grading, verify_correspondence_isomorphism, AlgebraMap, CorrAction, CorrGrading,
    Correspondence, GeneratingSystem,
};
use crate::linalg::{self, CVec};
use crate::report::{Report, Tolerance};
use crate::twist::{
    crossed_by_action, crossed_by_coaction, flip_sigma23, graded_tensor_product, heisenberg_model, twisted_algebra,
    twisted_correspondence, twisted_generating_system, TwistedAlgebra,
};

use super::resolve::{element, input, matrix, vector, Env, Kind};
use super::spec::{
    CorrActionSpec, CorrGradingSpec, CorrSpec, DualGradingSpec, ElementSpec, Expect, LevelSpec, RepSpec, TaskSpec,
    VectorSpec,
};

/// Task name and the module operation it exercises.
pub const TASK_REGISTRY: &[(&str, &str)] = &[
    ("make_cyclic_group", "fdalg::make_cyclic_group"),
    ("multiply", "fdalg::multiply"),
    ("involution", "fdalg::involution"),
    ("operator_norm", "fdalg::operator_norm"),
    ("group_algebra", "fdalg::group_algebra"),
    ("function_algebra", "fdalg::function_algebra"),
    ("verify_action", "fdalg::verify_action"),
    ("verify_grading", "fdalg::verify_grading"),
    ("homogeneous_decomposition", "fdalg::homogeneous_decomposition"),
    ("theta", "hilbmod::theta"),
    ("adjoint_of", "hilbmod::adjoint_of"),
    ("linking_algebra", "hilbmod::linking_algebra"),
    ("katsura_ideal", "hilbmod::katsura_ideal"),
    ("is_katsura_nondegenerate", "hilbmod::is_katsura_nondegenerate"),
    ("is_full", "hilbmod::is_full"),
    ("verify_correspondence_isomorphism", "hilbmod::verify_correspondence_isomorphism"),
    ("heisenberg_model", "twist::heisenberg_model"),
    ("twisted_algebra", "twist::twisted_algebra"),
    ("twisted_correspondence", "twist::twisted_correspondence"),
    ("twisted_generating_system", "twist::twisted_generating_system"),
    ("graded_tensor_product", "twist::graded_tensor_product"),
    ("crossed_by_action", "twist::crossed_by_action"),
    ("crossed_by_coaction", "twist::crossed_by_coaction"),
    ("flip_sigma23", "twist::flip_sigma23"),
    ("balanced_subalgebra", "balanced::balanced_subalgebra"),
    ("lambda_action", "balanced::lambda_action"),
    ("conditional_expectation", "balanced::conditional_expectation"),
    ("induced_action_check", "balanced::induced_action_check"),
    ("saturation_check", "balanced::saturation_check"),
    ("skew_product", "graphs::skew_product"),
    ("graph_correspondence", "graphs::graph_correspondence"),
    ("graph_action_lift", "graphs::graph_action_lift"),
    ("labeling_grading", "graphs::labeling_grading"),
    ("graph_katsura_ideal", "graphs::graph_katsura_ideal"),
    ("graph_regularity_report", "graphs::graph_regularity_report"),
    ("ideal_compatibility_check", "graphs::ideal_compatibility_check"),
    ("verify_graph_product_isomorphism", "graphs::verify_graph_product_isomorphism"),
    ("graph_io", "graphs::graph_io"),
    ("random_graph_products", "graphs::verify_graph_product_isomorphism"),
    ("tensor_power", "fock::tensor_power"),
    ("fock_toeplitz_rep", "fock::fock_toeplitz_rep"),
    ("psi_n", "fock::psi_n"),
    ("psi_paren_n", "fock::psi_paren_n"),
    ("cp_covariance_defect", "fock::cp_covariance_defect"),
    ("ck_representation", "fock::ck_representation"),
    ("product_representation", "fock::product_representation"),
    ("compacts_product_check", "fock::compacts_product_check"),
    ("cp_product_check", "fock::cp_product_check"),
    ("generator_factorization_check", "fock::generator_factorization_check"),
];

/// A task's report plus machine-readable results.
#[derive(Debug)]
pub struct TaskOutcome {
    pub report: Report,
    pub outputs: Map<String, Value>,
}

impl TaskOutcome {
    fn new(report: Report) -> Self {
        TaskOutcome { report, outputs: Map::new() }
    }

    fn out(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }
}

/// Named references made by a task: pointer suffix, kind, name.
pub fn references(task: &TaskSpec) -> Vec<(String, Kind, String)> {
    let mut out = Vec::new();
    let mut r = |field: &str, kind: Kind, name: &str| out.push((field.to_string(), kind, name.to_string()));
    fn corr(r: &mut dyn FnMut(&str, Kind, &str), field: &str, c: &CorrSpec) {
        match c {
            CorrSpec::Graph { graph } => r(&format!("{field}/graph"), Kind::Graph, graph),
            CorrSpec::OverItself { algebra } => r(&format!("{field}/algebra"), Kind::Algebra, algebra),
        }
    }
    fn corr_action(r: &mut dyn FnMut(&str, Kind, &str), field: &str, a: &CorrActionSpec) {
        match a {
            CorrActionSpec::GraphLift { action } => r(&format!("{field}/action"), Kind::GraphAction, action),
            CorrActionSpec::Trivial { group } => r(&format!("{field}/group"), Kind::Group, group),
            CorrActionSpec::Algebra { action } => r(&format!("{field}/action"), Kind::Action, action),
        }
    }
    fn corr_grading(r: &mut dyn FnMut(&str, Kind, &str), field: &str, g: &CorrGradingSpec) {
        match g {
            CorrGradingSpec::Labeling { labeling } => r(&format!("{field}/labeling"), Kind::Labeling, labeling),
            CorrGradingSpec::Trivial { group } => r(&format!("{field}/group"), Kind::Group, group),
            CorrGradingSpec::Algebra { grading } => r(&format!("{field}/grading"), Kind::Grading, grading),
        }
    }
    fn rep(r: &mut dyn FnMut(&str, Kind, &str), field: &str, s: &RepSpec) {
        match s {
            RepSpec::Fock { corr: c, .. } => corr(r, &format!("{field}/corr"), c),
            RepSpec::Ck { graph } | RepSpec::PathToeplitz { graph } => r(&format!("{field}/graph"), Kind::Graph, graph),
        }
    }
    fn dual(r: &mut dyn FnMut(&str, Kind, &str), field: &str, s: &DualGradingSpec) {
        if let DualGradingSpec::FromCyclic { grading } = s {
            r(&format!("{field}/grading"), Kind::Grading, grading);
        }
    }
    fn product(r: &mut dyn FnMut(&str, Kind, &str), e: &str, action: &str, f: &str, labeling: &str) {
        r("e", Kind::Graph, e);
        r("action", Kind::GraphAction, action);
        r("f", Kind::Graph, f);
        r("labeling", Kind::Labeling, labeling);
    }
    use TaskSpec::*;
    match task {
        MakeCyclicGroup { .. } | RandomGraphProducts { .. } => {}
        Multiply { algebra, .. } | Involution { algebra, .. } | OperatorNorm { algebra, .. } => r("algebra", Kind::Algebra, algebra),
        GroupAlgebra { group } | FunctionAlgebra { group } | HeisenbergModel { group } => r("group", Kind::Group, group),
        VerifyAction { action } => r("action", Kind::Action, action),
        VerifyGrading { grading } | HomogeneousDecomposition { grading, .. } => r("grading", Kind::Grading, grading),
        Theta { corr: c, .. }
        | AdjointOf { corr: c, .. }
        | LinkingAlgebra { corr: c }
        | KatsuraIdeal { corr: c, .. }
        | IsKatsuraNondegenerate { corr: c, .. }
        | IsFull { corr: c, .. }
        | VerifyCorrespondenceIsomorphism { corr: c }
        | TensorPower { corr: c, .. }
        | FockToeplitzRep { corr: c, .. } => corr(&mut r, "corr", c),
        TwistedAlgebra { action, grading, .. } => {
            r("action", Kind::Action, action);
            r("grading", Kind::Grading, grading);
        }
        TwistedCorrespondence { x, x_action, y, y_grading } | TwistedGeneratingSystem { x, x_action, y, y_grading } => {
            corr(&mut r, "x", x);
            corr_action(&mut r, "x_action", x_action);
            corr(&mut r, "y", y);
            corr_grading(&mut r, "y_grading", y_grading);
        }
        GradedTensorProduct { x, x_grading, parity, y, y_grading, .. } => {
            corr(&mut r, "x", x);
            corr_grading(&mut r, "x_grading", x_grading);
            r("parity", Kind::Action, parity);
            corr(&mut r, "y", y);
            corr_grading(&mut r, "y_grading", y_grading);
        }
        CrossedByAction { x, x_action } => {
            corr(&mut r, "x", x);
            corr_action(&mut r, "x_action", x_action);
        }
        CrossedByCoaction { y, y_grading } => {
            corr(&mut r, "y", y);
            corr_grading(&mut r, "y_grading", y_grading);
        }
        FlipSigma23 { action, grading, c } => {
            r("action", Kind::Action, action);
            r("grading", Kind::Grading, grading);
            r("c", Kind::Algebra, c);
        }
        BalancedSubalgebra { action, grading, a_grading, b_grading, .. }
        | LambdaAction { action, grading, a_grading, b_grading, .. }
        | ConditionalExpectation { action, grading, a_grading, b_grading }
        | InducedActionCheck { action, grading, a_grading, b_grading }
        | SaturationCheck { action, grading, a_grading, b_grading, .. } => {
            r("action", Kind::Action, action);
            r("grading", Kind::Grading, grading);
            dual(&mut r, "a_grading", a_grading);
            dual(&mut r, "b_grading", b_grading);
        }
        SkewProduct { e, action, f, labeling, .. }
        | IdealCompatibilityCheck { e, action, f, labeling }
        | VerifyGraphProductIsomorphism { e, action, f, labeling }
        | ProductRepresentation { e, action, f, labeling }
        | CompactsProductCheck { e, action, f, labeling, .. }
        | CpProductCheck { e, action, f, labeling }
        | GeneratorFactorizationCheck { e, action, f, labeling, .. } => product(&mut r, e, action, f, labeling),
        GraphCorrespondence { graph }
        | GraphKatsuraIdeal { graph }
        | GraphRegularityReport { graph, .. }
        | CkRepresentation { graph, .. } => r("graph", Kind::Graph, graph),
        GraphActionLift { graph, action } => {
            r("graph", Kind::Graph, graph);
            r("action", Kind::GraphAction, action);
        }
        LabelingGrading { graph, labeling } => {
            r("graph", Kind::Graph, graph);
            r("labeling", Kind::Labeling, labeling);
        }
        GraphIo { graph, labeling } => {
            r("graph", Kind::Graph, graph);
            if let Some(l) = labeling {
                r("labeling", Kind::Labeling, l);
            }
        }
        PsiN { rep: s, .. } | PsiParenN { rep: s, .. } | CpCovarianceDefect { rep: s, .. } => rep(&mut r, "rep", s),
    }
    out
}

/// A correspondence together with the graph it came from, if any.
struct Corr<'e> {
    corr: Correspondence,
    graph: Option<(&'e str, &'e DirectedGraph)>,
    algebra: Option<&'e str>,
}

/// Everything a task needs to run.
pub struct Ctx<'e> {
    pub env: &'e Env,
    pub tol: Tolerance,
    pub seed: u64,
    /// JSON pointer of the task.
    pub base: String,
}

impl<'e> Ctx<'e> {
    fn p(&self, field: &str) -> String {
        format!("{}/{field}", self.base)
    }

    fn corr(&self, spec: &'e CorrSpec, field: &str) -> Result<Corr<'e>> {
        match spec {
            CorrSpec::Graph { graph } => {
                let g = self.env.graph(graph, &self.p(&format!("{field}/graph")))?;
                Ok(Corr { corr: graph_correspondence(g), graph: Some((graph.as_str(), g)), algebra: None })
            }
            CorrSpec::OverItself { algebra } => {
                let a = self.env.algebra(algebra, &self.p(&format!("{field}/algebra")))?;
                Ok(Corr { corr: Correspondence::over_itself(&a.algebra), graph: None, algebra: Some(algebra.as_str()) })
            }
        }
    }

    fn graph_of<'c>(&self, c: &'c Corr<'e>, field: &str) -> Result<(&'e str, &'e DirectedGraph)> {
        c.graph.ok_or_else(|| input(self.p(field), "needs a graph correspondence"))
    }

    fn algebra_of(&self, c: &Corr<'e>, field: &str) -> Result<&'e MatrixAlgebra> {
        let name = c.algebra.ok_or_else(|| input(self.p(field), "needs a correspondence over an algebra itself"))?;
        Ok(&self.env.algebras[name].algebra)
    }

    fn corr_action(&self, spec: &CorrActionSpec, c: &Corr<'e>, field: &str) -> Result<CorrAction> {
        match spec {
            CorrActionSpec::GraphLift { action } => {
                let q = self.p(&format!("{field}/action"));
                let entry = self.env.graph_action(action, &q)?;
                let (name, g) = self.graph_of(c, field)?;
                if entry.graph != name {
                    return Err(input(q, format!("'{action}' acts on '{}', not '{name}'", entry.graph)));
                }
                graph_action_lift(g, &entry.action)
            }
            CorrActionSpec::Trivial { group } => {
                let g = self.env.group(group, &self.p(&format!("{field}/group")))?;
                Ok(CorrAction::trivial(g.clone(), &c.corr))
            }
            CorrActionSpec::Algebra { action } => {
                let q = self.p(&format!("{field}/action"));
                let alpha = self.env.action(action, &q)?;
                let a = self.algebra_of(c, field)?;
                if alpha.algebra() != a {
                    return Err(input(q, format!("'{action}' acts on a different algebra")));
                }
                let gamma = alpha.group().elements().map(|s| alpha.coord_matrix(s)).collect();
                CorrAction::new(alpha.clone(), gamma)
            }
        }
    }

    fn corr_grading(&self, spec: &CorrGradingSpec, c: &Corr<'e>, field: &str) -> Result<CorrGrading> {
        match spec {
            CorrGradingSpec::Labeling { labeling } => {
                let q = self.p(&format!("{field}/labeling"));
                let entry = self.env.labeling(labeling, &q)?;
                let (name, g) = self.graph_of(c, field)?;
                if entry.graph != name {
                    return Err(input(q, format!("'{labeling}' labels '{}', not '{name}'", entry.graph)));
                }
                labeling_grading(g, &entry.labeling)
            }
            CorrGradingSpec::Trivial { group } => {
                let g = self.env.group(group, &self.p(&format!("{field}/group")))?;
                Ok(CorrGrading::trivial(g.clone(), &c.corr))
            }
            CorrGradingSpec::Algebra { grading } => {
                let q = self.p(&format!("{field}/grading"));
                let gr = self.env.grading(grading, &q)?;
                let a = self.algebra_of(c, field)?;
                if gr.algebra() != a {
                    return Err(input(q, format!("'{grading}' grades a different algebra")));
                }
                let parts = gr
                    .group()
                    .elements()
                    .map(|s| (s, gr.component(s).iter().map(|x| a.coords(x)).collect()))
                    .collect();
                CorrGrading::new(gr.clone(), parts)
            }
        }
    }

    fn rep(&self, spec: &'e RepSpec, field: &str) -> Result<ToeplitzRep> {
        match spec {
            RepSpec::Fock { corr, level } => fock_toeplitz_rep(&self.corr(corr, &format!("{field}/corr"))?.corr, *level),
            RepSpec::Ck { graph } => Ok(ck_representation(self.env.graph(graph, &self.p(&format!("{field}/graph")))?)?.rep),
            RepSpec::PathToeplitz { graph } => {
                Ok(path_toeplitz_representation(self.env.graph(graph, &self.p(&format!("{field}/graph")))?)?.rep)
            }
        }
    }

    fn twist(&self, action: &str, grading: &str) -> Result<TwistedAlgebra> {
        let alpha = self.env.action(action, &self.p("action"))?;
        let gr = self.env.grading(grading, &self.p("grading"))?;
        twisted_algebra(alpha, gr, self.tol)
    }

    fn dual(&self, spec: &DualGradingSpec, alg: &MatrixAlgebra, field: &str) -> Result<DualGrading> {
        let t = self.tol.get();
        let parts = |parts: &[super::spec::DualPart]| -> Result<Vec<(i64, Vec<AlgElement>)>> {
            parts
                .iter()
                .enumerate()
                .map(|(i, part)| {
                    let els = part
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(j, e)| element(alg, None, e, &self.p(&format!("{field}/parts/{i}/basis/{j}"))))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((part.degree, els))
                })
                .collect()
        };
        match spec {
            DualGradingSpec::FromCyclic { grading } => {
                let gr = self.env.grading(grading, &self.p(&format!("{field}/grading")))?;
                DualGrading::from_cyclic(&gr.with_algebra(alg.clone())?, t)
            }
            DualGradingSpec::Circle { parts: ps } => DualGrading::new(DualGroup::Circle, alg.clone(), parts(ps)?, t),
            DualGradingSpec::Cyclic { order, parts: ps } => DualGrading::new(DualGroup::Cyclic(*order), alg.clone(), parts(ps)?, t),
        }
    }

    fn balanced(&self, action: &str, grading: &str, a: &DualGradingSpec, b: &DualGradingSpec) -> Result<BalancedAlgebra> {
        let t = self.twist(action, grading)?;
        let ga = self.dual(a, t.a(), "a_grading")?;
        let gb = self.dual(b, t.b(), "b_grading")?;
        balanced_subalgebra(&t, &ga, &gb, self.tol)
    }

    fn instance(&self, e: &str, action: &str, f: &str, labeling: &str) -> Result<(&'e DirectedGraph, &'e GraphAction, &'e DirectedGraph, &'e EdgeLabeling)> {
        let ge = self.env.graph(e, &self.p("e"))?;
        let act = self.env.graph_action(action, &self.p("action"))?;
        let gf = self.env.graph(f, &self.p("f"))?;
        let lab = self.env.labeling(labeling, &self.p("labeling"))?;
        if act.graph != e {
            return Err(input(self.p("action"), format!("'{action}' acts on '{}', not '{e}'", act.graph)));
        }
        if lab.graph != f {
            return Err(input(self.p("labeling"), format!("'{labeling}' labels '{}', not '{f}'", lab.graph)));
        }
        if act.action.group() != lab.labeling.group() {
            return Err(input(self.p("labeling"), "the action and the labeling use different groups"));
        }
        Ok((ge, &act.action, gf, &lab.labeling))
    }

    fn product(&self, e: &str, action: &str, f: &str, labeling: &str) -> Result<(ProductRep, &'e DirectedGraph, &'e DirectedGraph)> {
        let (ge, act, gf, lab) = self.instance(e, action, f, labeling)?;
        let ex = ck_representation(ge)?;
        let fy = ck_representation(gf)?;
        let lift = graph_action_lift(ge, act)?;
        let grad = labeling_grading(gf, lab)?;
        let gamma = ex.induced_action(act)?;
        let sigma = fy.induced_grading(lab)?;
        let p = product_representation(&ex.rep, &lift, &gamma, &fy.rep, &grad, &sigma, self.tol)?;
        Ok((p, ge, gf))
    }

    fn elem(&self, alg: &MatrixAlgebra, graph: Option<&DirectedGraph>, spec: &ElementSpec, field: &str) -> Result<AlgElement> {
        element(alg, graph, spec, &self.p(field))
    }

    fn vec(&self, dim: usize, graph: Option<&DirectedGraph>, spec: &VectorSpec, field: &str) -> Result<CVec> {
        vector(dim, graph, spec, &self.p(field))
    }

    fn vecs(&self, dim: usize, graph: Option<&DirectedGraph>, specs: &[VectorSpec], field: &str) -> Result<Vec<CVec>> {
        specs.iter().enumerate().map(|(i, s)| self.vec(dim, graph, s, &format!("{field}/{i}"))).collect()
    }

    fn level(&self, dim: usize, g: &DirectedGraph, spec: &LevelSpec, field: &str) -> Result<LevelElement> {
        Ok(match spec {
            LevelSpec::Coeff { element } => LevelElement::Coeff(self.elem(&vertex_algebra(g), Some(g), element, &format!("{field}/element"))?),
            LevelSpec::Word { vectors } => LevelElement::Word(self.vecs(dim, Some(g), vectors, &format!("{field}/vectors"))?),
        })
    }
}

fn expect_close(rep: &mut Report, name: &str, got: f64, want: Option<f64>, tol: Tolerance) {
    if let Some(w) = want {
        rep.residual(name, (got - w).abs(), tol);
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(rep: &mut Report, name: &str, got: &T, want: Option<&T>) {
    if let Some(w) = want {
        rep.flag(name, got == w);
        if got != w {
            rep.witness(format!("{name}: expected {w:?}, got {got:?}"));
        }
    }
}

fn units(n: usize) -> Vec<CVec> {
    (0..n).map(|i| linalg::unit_vec(n, i)).collect()
}

fn span_dim(els: &[AlgElement], tol: f64) -> usize {
    linalg::span_dim(&els.iter().map(AlgElement::to_vec).collect::<Vec<_>>(), tol)
}

/// Runs one task.
pub fn run_task(task: &TaskSpec, cx: &Ctx<'_>) -> Result<TaskOutcome> {
    let tol = cx.tol;
    let t = tol.get();
    let env = cx.env;
    use TaskSpec::*;
    Ok(match task {
        MakeCyclicGroup { order, expect_table } => {
            let g = make_cyclic_group(*order)?;
            let mut rep = Report::new("cyclic group");
            let n = g.order();
            let modular = g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == (a + b) % n));
            rep.flag("table is addition mod n", modular);
            expect_eq(&mut rep, "table matches expectation", &g.table().to_vec(), expect_table.as_ref());
            TaskOutcome::new(rep).out("order", n).out("table", json!(g.table()))
        }
        Multiply { algebra, a, b, expect } => {
            let alg = &env.algebra(algebra, &cx.p("algebra"))?.algebra;
            let (x, y) = (cx.elem(alg, None, a, "a")?, cx.elem(alg, None, b, "b")?);
            let z = multiply(&x, &y)?;
            let mut rep = Report::new("multiply");
            rep.residual("product lies in the algebra", alg.residual(&z), tol);
            if let Some(e) = expect {
                rep.residual("product matches expectation", z.dist(&cx.elem(alg, None, e, "expect")?), tol);
            }
            TaskOutcome::new(rep).out("norm", operator_norm(&z))
        }
        Involution { algebra, a, expect } => {
            let alg = &env.algebra(algebra, &cx.p("algebra"))?.algebra;
            let x = cx.elem(alg, None, a, "a")?;
            let s = involution(&x);
            let mut rep = Report::new("involution");
            rep.residual("adjoint lies in the algebra", alg.residual(&s), tol)
                .residual("involutive", involution(&s).dist(&x), tol)
                .residual("anti-multiplicative", involution(&(&x * &s)).dist(&(&x * &s)), tol);
            if let Some(e) = expect {
                rep.residual("adjoint matches expectation", s.dist(&cx.elem(alg, None, e, "expect")?), tol);
            }
            TaskOutcome::new(rep)
        }
        OperatorNorm { algebra, a, expect } => {
            let alg = &env.algebra(algebra, &cx.p("algebra"))?.algebra;
            let x = cx.elem(alg, None, a, "a")?;
            let n = operator_norm(&x);
            let mut rep = Report::new("operator norm");
            rep.residual("C*-identity", (operator_norm(&(&involution(&x) * &x)) - n * n).abs(), tol);
            expect_close(&mut rep, "norm matches expectation", n, *expect, tol);
            TaskOutcome::new(rep).out("norm", n)
        }
        GroupAlgebra { group } => {
            let g = env.group(group, &cx.p("group"))?;
            let ga = group_algebra(g);
            let mut rep = verify_grading(&ga.grading, tol);
            rep.flag("dimension is |G|", ga.algebra.dim() == g.order());
            TaskOutcome::new(rep).out("dim", ga.algebra.dim())
        }
        FunctionAlgebra { group } => {
            let g = env.group(group, &cx.p("group"))?;
            let fa = function_algebra(g);
            let mut rep = verify_action(&fa.translation, tol);
            rep.flag("dimension is |G|", fa.algebra.dim() == g.order());
            TaskOutcome::new(rep).out("dim", fa.algebra.dim())
        }
        VerifyAction { action } => TaskOutcome::new(verify_action(env.action(action, &cx.p("action"))?, tol)),
        VerifyGrading { grading } => TaskOutcome::new(verify_grading(env.grading(grading, &cx.p("grading"))?, tol)),
        HomogeneousDecomposition { grading, element: e } => {
            let gr = env.grading(grading, &cx.p("grading"))?;
            let a = cx.elem(gr.algebra(), None, e, "element")?;
            let parts = homogeneous_decomposition(gr, &a, tol)?;
            let sum = parts.iter().fold(gr.algebra().zero(), |acc, (_, x)| &acc + x);
            let worst = parts.iter().map(|(s, x)| gr.residual_in(*s, x)).fold(0.0, f64::max);
            let mut rep = Report::new("homogeneous decomposition");
            rep.residual("components sum to the element", sum.dist(&a), tol).residual("components are homogeneous", worst, tol);
            let degrees: Vec<&str> = parts.iter().map(|(s, _)| gr.group().label(*s)).collect();
            TaskOutcome::new(rep).out("degrees", json!(degrees))
        }

        Theta { corr, x, y } => {
            let c = cx.corr(corr, "corr")?;
            let g = c.graph.map(|(_, g)| g);
            let (xv, yv) = (cx.vec(c.corr.dim(), g, x, "x")?, cx.vec(c.corr.dim(), g, y, "y")?);
            let m = c.corr.module();
            let op = theta(m, &xv, &yv);
            let action = units(m.dim())
                .iter()
                .map(|z| (&op.matrix * z - m.right_mul(&xv, &m.inner(&yv, z))).norm())
                .fold(0.0, f64::max);
            let mut rep = Report::new("rank-one operator");
            rep.residual("theta(x,y)z = x<y,z>", action, tol);
            if let Some(adj) = &op.adjoint {
                rep.residual("adjoint is theta(y,x)", linalg::max_abs(&(adj - theta(m, &yv, &xv).matrix)), tol);
            }
            TaskOutcome::new(rep).out("operator_norm", linalg::spectral_norm(&op.matrix))
        }
        AdjointOf { corr, matrix: ms, expect_adjointable } => {
            let c = cx.corr(corr, "corr")?;
            let m = c.corr.module();
            let tm = matrix(ms, &cx.p("matrix"))?;
            if tm.nrows() != m.dim() || tm.ncols() != m.dim() {
                return Err(input(cx.p("matrix"), format!("expected a {0}x{0} matrix", m.dim())));
            }
            let mut rep = Report::new("adjoint");
            let adjointable = match adjoint_of(m, &tm, tol) {
                Ok(op) => {
                    let adj = op.adjoint.expect("adjointable operators carry their adjoint");
                    let basis = units(m.dim());
                    let mut worst: f64 = 0.0;
                    for u in &basis {
                        for v in &basis {
                            worst = worst.max(m.inner(&(&tm * u), v).dist(&m.inner(u, &(&adj * v))));
                        }
                    }
                    rep.residual("<Tx,y> = <x,T*y>", worst, tol);
                    true
                }
                Err(Error::NotAdjointable(r)) => {
                    rep.witness(format!("no adjoint (residual {r:.3e})"));
                    false
                }
                Err(e) => return Err(e),
            };
            let want = expect_adjointable.unwrap_or(true);
            rep.flag("adjointability as expected", adjointable == want);
            TaskOutcome::new(rep).out("adjointable", adjointable)
        }
        LinkingAlgebra { corr } => {
            let c = cx.corr(corr, "corr")?;
            let l = linking_algebra(c.corr.module(), t);
            TaskOutcome::new(l.verify(tol)).out("dim", l.algebra.dim())
        }
        KatsuraIdeal { corr, expect_dim } => {
            let c = cx.corr(corr, "corr")?;
            let k = katsura_ideal(&c.corr, tol);
            let ann = katsura_ideal_by_annihilator(&c.corr, tol);
            let both: Vec<AlgElement> = k.basis.iter().chain(&ann).cloned().collect();
            let (dk, da, db) = (span_dim(&k.basis, t), span_dim(&ann, t), span_dim(&both, t));
            let mut rep = Report::new("katsura ideal");
            rep.flag("block description agrees with the annihilator description", dk == da && da == db);
            expect_eq(&mut rep, "dimension matches expectation", &dk, expect_dim.as_ref());
            TaskOutcome::new(rep).out("dim", dk).out("blocks", json!(k.blocks))
        }
        IsKatsuraNondegenerate { corr, expect } => {
            let c = cx.corr(corr, "corr")?;
            let v = is_katsura_nondegenerate(&c.corr, tol);
            let mut rep = Report::new("katsura nondegeneracy");
            expect_eq(&mut rep, "value matches expectation", &v, expect.as_ref());
            TaskOutcome::new(rep).out("value", v)
        }
        IsFull { corr, expect } => {
            let c = cx.corr(corr, "corr")?;
            let v = is_full(c.corr.module(), tol);
            let mut rep = Report::new("fullness");
            expect_eq(&mut rep, "value matches expectation", &v, expect.as_ref());
            TaskOutcome::new(rep).out("value", v)
        }
        VerifyCorrespondenceIsomorphism { corr } => {
            let c = cx.corr(corr, "corr")?.corr;
            let n = c.dim();
            let perm: Vec<usize> = (0..n).rev().collect();
            let p = linalg::permutation_matrix(&perm);
            let copy = c.change_basis(&p, t)?;
            let images: Vec<CVec> = units(n).iter().map(|e| p.transpose() * e).collect();
            let gens = GeneratingSystem { a0: c.left().basis().to_vec(), x0: units(n), b0: c.coeff().basis().to_vec() };
            let rep = verify_correspondence_isomorphism(
                &c,
                &copy,
                &AlgebraMap::identity(c.left()),
                &AlgebraMap::identity(c.coeff()),
                &gens,
                &images,
                tol,
            );
            TaskOutcome::new(rep)
        }

        HeisenbergModel { group } => TaskOutcome::new(heisenberg_model(env.group(group, &cx.p("group"))?).verify(tol)),
        TwistedAlgebra { action, grading, expect_dim, expect_signature, expect_center_dim } => {
            let tw = cx.twist(action, grading)?;
            let mut rep = Report::new("twisted algebra");
            for r in [
                tw.verify_formulas(tol),
                tw.verify_commutation(tol),
                tw.verify_models(tol),
                tw.verify_abstract_associativity(tol),
            ] {
                rep.absorb(r);
            }
            let literal = tw.verify_inverse_commutation(tol);
            rep.witness(format!(
                "literal alpha_(s^-1) commutation form {} (residual {:.2e})",
                if literal.passed() { "holds" } else { "fails" },
                literal.max_residual()
            ));
            let sig = tw.concrete().wedderburn_signature(t)?;
            let center = tw.concrete().center_dim(t);
            expect_eq(&mut rep, "dimension matches expectation", &tw.dim(), expect_dim.as_ref());
            expect_eq(&mut rep, "signature matches expectation", &sig, expect_signature.as_ref());
            expect_eq(&mut rep, "center dimension matches expectation", &center, expect_center_dim.as_ref());
            TaskOutcome::new(rep).out("dim", tw.dim()).out("signature", json!(sig)).out("center_dim", center)
        }
        TwistedCorrespondence { x, x_action, y, y_grading } => {
            let (cxr, cyr) = (cx.corr(x, "x")?, cx.corr(y, "y")?);
            let act = cx.corr_action(x_action, &cxr, "x_action")?;
            let grad = cx.corr_grading(y_grading, &cyr, "y_grading")?;
            let tc = twisted_correspondence(&cxr.corr, &act, &cyr.corr, &grad, tol)?;
            TaskOutcome::new(tc.verify(tol)).out("dim", tc.dim())
        }
        TwistedGeneratingSystem { x, x_action, y, y_grading } => {
            let (cxr, cyr) = (cx.corr(x, "x")?, cx.corr(y, "y")?);
            let act = cx.corr_action(x_action, &cxr, "x_action")?;
            let grad = cx.corr_grading(y_grading, &cyr, "y_grading")?;
            let tc = twisted_correspondence(&cxr.corr, &act, &cyr.corr, &grad, tol)?;
            let (xc, yc) = (&cxr.corr, &cyr.corr);
            let xg = GeneratingSystem { a0: xc.left().basis().to_vec(), x0: units(xc.dim()), b0: xc.coeff().basis().to_vec() };
            let yg = GeneratingSystem {
                a0: yc.left().basis().to_vec(),
                x0: grad.homogeneous_basis().into_iter().map(|(_, v)| v).collect(),
                b0: grad.coeff().homogeneous_basis().into_iter().map(|(_, b)| b).collect(),
            };
            let gens = twisted_generating_system(&tc, &xg, &yg, tol)?;
            TaskOutcome::new(gens.verify(tc.correspondence(), tol)).out("generators", gens.x0.len())
        }
        GradedTensorProduct { x, x_grading, parity, y, y_grading, expect_signature } => {
            let (cxr, cyr) = (cx.corr(x, "x")?, cx.corr(y, "y")?);
            let gx = cx.corr_grading(x_grading, &cxr, "x_grading")?;
            let gy = cx.corr_grading(y_grading, &cyr, "y_grading")?;
            let par = env.action(parity, &cx.p("parity"))?;
            let g = graded_tensor_product(&cxr.corr, &gx, par, &cyr.corr, &gy, tol)?;
            let mut rep = g.verify(tol);
            let sig = g.graded.left().wedderburn_signature(t)?;
            expect_eq(&mut rep, "signature matches expectation", &sig, expect_signature.as_ref());
            TaskOutcome::new(rep).out("dim", g.graded.dim()).out("signature", json!(sig))
        }
        CrossedByAction { x, x_action } => {
            let c = cx.corr(x, "x")?;
            let act = cx.corr_action(x_action, &c, "x_action")?;
            let cr = crossed_by_action(&c.corr, &act, tol)?;
            TaskOutcome::new(cr.verify(tol)).out("dim", cr.corr.dim())
        }
        CrossedByCoaction { y, y_grading } => {
            let c = cx.corr(y, "y")?;
            let grad = cx.corr_grading(y_grading, &c, "y_grading")?;
            let cr = crossed_by_coaction(&c.corr, &grad, tol)?;
            TaskOutcome::new(cr.verify(tol)).out("dim", cr.corr.dim())
        }
        FlipSigma23 { action, grading, c } => {
            let alpha = env.action(action, &cx.p("action"))?;
            let gr = env.grading(grading, &cx.p("grading"))?;
            let ce = &env.algebra(c, &cx.p("c"))?.algebra;
            if !ce.is_full() {
                return Err(input(cx.p("c"), "the third factor must be a full block algebra"));
            }
            let f = flip_sigma23(alpha, gr, ce.ambient(), tol)?;
            TaskOutcome::new(f.verify(alpha, ce.ambient(), tol)).out("dim", f.source.dim())
        }

        BalancedSubalgebra { action, grading, a_grading, b_grading, expect_dim } => {
            let b = cx.balanced(action, grading, a_grading, b_grading)?;
            let mut rep = b.verify(tol);
            rep.absorb(b.verify_bimodule(tol));
            expect_eq(&mut rep, "dimension matches expectation", &b.dim(), expect_dim.as_ref());
            TaskOutcome::new(rep).out("dim", b.dim()).out("parent_dim", b.parent().dim())
        }
        LambdaAction { action, grading, a_grading, b_grading, turn } => {
            let b = cx.balanced(action, grading, a_grading, b_grading)?;
            let z = Turn(*turn);
            let parent = b.parent().concrete().basis();
            let (mut fixes, mut inverse, mut mult): (f64, f64, f64) = (0.0, 0.0, 0.0);
            for x in b.algebra().basis() {
                fixes = fixes.max(lambda_action(&b, z, x, tol)?.dist(x));
            }
            let images = parent.iter().map(|d| lambda_action(&b, z, d, tol)).collect::<Result<Vec<_>>>()?;
            for (d, ld) in parent.iter().zip(&images) {
                inverse = inverse.max(lambda_action(&b, z.inverse(), ld, tol)?.dist(d));
            }
            for (i, d1) in parent.iter().enumerate() {
                for (j, d2) in parent.iter().enumerate() {
                    mult = mult.max(lambda_action(&b, z, &(d1 * d2), tol)?.dist(&(&images[i] * &images[j])));
                }
            }
            let mut rep = Report::new("lambda action");
            rep.residual("fixes the balanced algebra", fixes, tol)
                .residual("lambda_z^-1 inverts lambda_z", inverse, tol)
                .residual("multiplicative", mult, tol);
            TaskOutcome::new(rep)
        }
        ConditionalExpectation { action, grading, a_grading, b_grading } => {
            let b = cx.balanced(action, grading, a_grading, b_grading)?;
            let parent = b.parent().concrete().basis();
            let (mut idem, mut inside, mut fixes): (f64, f64, f64) = (0.0, 0.0, 0.0);
            let mut images = Vec::with_capacity(parent.len());
            for d in parent {
                let e = conditional_expectation(&b, d, tol)?;
                idem = idem.max(conditional_expectation(&b, &e, tol)?.dist(&e));
                inside = inside.max(b.algebra().residual(&e));
                images.push(e);
            }
            for x in b.algebra().basis() {
                fixes = fixes.max(conditional_expectation(&b, x, tol)?.dist(x));
            }
            let mut rep = Report::new("conditional expectation");
            rep.residual("idempotent", idem, tol)
                .residual("image lies in the balanced algebra", inside, tol)
                .residual("identity on the balanced algebra", fixes, tol)
                .flag("image spans the balanced algebra", span_dim(&images, t) == b.dim());
            TaskOutcome::new(rep).out("rank", span_dim(&images, t))
        }
        InducedActionCheck { action, grading, a_grading, b_grading } => {
            TaskOutcome::new(induced_action_check(&cx.balanced(action, grading, a_grading, b_grading)?, tol))
        }
        SaturationCheck { action, grading, a_grading, b_grading, expect } => {
            let r = saturation_check(&cx.balanced(action, grading, a_grading, b_grading)?, tol);
            match expect {
                Expect::Pass => TaskOutcome::new(r),
                Expect::Fail => {
                    let mut rep = Report::new("saturation (expected to fail)");
                    rep.flag("saturation fails", !r.passed());
                    for c in r.failures() {
                        rep.witness(format!("failing check: {}", c.name));
                    }
                    TaskOutcome::new(rep)
                }
            }
        }

        SkewProduct { e, action, f, labeling, expect_vertices, expect_edges } => {
            let (ge, act, gf, lab) = cx.instance(e, action, f, labeling)?;
            let p = skew_product(ge, act, gf, lab)?;
            let mut rep = Report::new("skew product");
            rep.flag("vertex count is |E0||F0|", p.num_vertices() == ge.num_vertices() * gf.num_vertices())
                .flag("edge count is |E1||F1|", p.num_edges() == ge.num_edges() * gf.num_edges());
            expect_eq(&mut rep, "vertex count matches expectation", &p.num_vertices(), expect_vertices.as_ref());
            expect_eq(&mut rep, "edge count matches expectation", &p.num_edges(), expect_edges.as_ref());
            let graph = serde_json::to_value(GraphJson::from_graph(&p, None)).expect("graph serializes");
            TaskOutcome::new(rep).out("graph", graph)
        }
        GraphCorrespondence { graph } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            TaskOutcome::new(graph_correspondence(g).verify(tol)).out("dim", g.num_edges())
        }
        GraphActionLift { graph, action } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let entry = env.graph_action(action, &cx.p("action"))?;
            if entry.graph != *graph {
                return Err(input(cx.p("action"), format!("'{action}' acts on '{}', not '{graph}'", entry.graph)));
            }
            let lift = graph_action_lift(g, &entry.action)?;
            TaskOutcome::new(verify_corr_action(&graph_correspondence(g), &lift, tol))
        }
        LabelingGrading { graph, labeling } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let entry = env.labeling(labeling, &cx.p("labeling"))?;
            if entry.graph != *graph {
                return Err(input(cx.p("labeling"), format!("'{labeling}' labels '{}', not '{graph}'", entry.graph)));
            }
            let grad = labeling_grading(g, &entry.labeling)?;
            TaskOutcome::new(verify_corr_grading(&graph_correspondence(g), &grad, tol))
        }
        GraphKatsuraIdeal { graph } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let vertices: Vec<&str> = g.receivers().into_iter().map(|v| g.vertices()[v].as_str()).collect();
            TaskOutcome::new(katsura_agreement(g, tol)).out("vertices", json!(vertices))
        }
        GraphRegularityReport { graph, expect_nondegenerate, expect_full } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let r = graph_regularity_report(g, tol);
            let mut rep = Report::new("graph regularity");
            rep.flag("graph conditions agree with the module computation", r.consistent());
            expect_eq(&mut rep, "nondegeneracy matches expectation", &r.is_katsura_nondegenerate, expect_nondegenerate.as_ref());
            expect_eq(&mut rep, "fullness matches expectation", &r.is_full, expect_full.as_ref());
            let value = serde_json::to_value(&r).expect("report serializes");
            let mut out = TaskOutcome::new(rep);
            if let Value::Object(m) = value {
                out.outputs.extend(m);
            }
            out
        }
        IdealCompatibilityCheck { e, action, f, labeling } => {
            let (ge, act, gf, lab) = cx.instance(e, action, f, labeling)?;
            TaskOutcome::new(ideal_compatibility_check(ge, act, gf, lab, tol))
        }
        VerifyGraphProductIsomorphism { e, action, f, labeling } => {
            let (ge, act, gf, lab) = cx.instance(e, action, f, labeling)?;
            TaskOutcome::new(verify_graph_product_isomorphism(ge, act, gf, lab, tol))
        }
        GraphIo { graph, labeling } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let lab = match labeling {
                Some(l) => {
                    let entry = env.labeling(l, &cx.p("labeling"))?;
                    if entry.graph != *graph {
                        return Err(input(cx.p("labeling"), format!("'{l}' labels '{}', not '{graph}'", entry.graph)));
                    }
                    Some(&entry.labeling)
                }
                None => None,
            };
            let dot = to_dot(g, graph, lab);
            let back = from_dot(&dot)?;
            let mut rep = Report::new("graph io");
            rep.flag("DOT round trip keeps vertices", back.graph.vertices() == g.vertices())
                .flag("DOT round trip keeps edges", edge_triples(&back.graph) == edge_triples(g))
                .flag("DOT export is stable", to_dot(&back.graph, &back.name, lab) == dot);
            if let Some(l) = lab {
                let relabeled = dot_labeling(&back, l.group())?;
                rep.flag("DOT round trip keeps labels", relabeled.as_ref().map(EdgeLabeling::labels) == Some(l.labels()));
            }
            let text = serde_json::to_string(&GraphJson::from_graph(g, lab)).expect("graph serializes");
            let parsed: GraphJson = serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
            let g2 = parsed.to_graph()?;
            rep.flag("JSON round trip keeps the graph", g2.vertices() == g.vertices() && edge_triples(&g2) == edge_triples(g));
            if let Some(l) = lab {
                rep.flag("JSON round trip keeps labels", parsed.labeling(l.group())?.labels() == l.labels());
            }
            TaskOutcome::new(rep).out("dot", dot)
        }
        RandomGraphProducts { count, max_vertices, max_edges } => {
            let bounds = RandomBounds { max_vertices: *max_vertices, max_edges: *max_edges };
            let mut rep = Report::new("random graph products");
            let mut orders = Vec::with_capacity(*count);
            for (k, inst) in random_instances(cx.seed, *count, bounds).iter().enumerate() {
                let mut one = Report::new(format!("instance {k}"));
                one.absorb(verify_graph_product_isomorphism(&inst.e, &inst.action, &inst.f, &inst.labeling, tol));
                one.absorb(ideal_compatibility_check(&inst.e, &inst.action, &inst.f, &inst.labeling, tol));
                orders.push(inst.action.group().order());
                rep.absorb(one);
            }
            TaskOutcome::new(rep).out("seed", cx.seed).out("group_orders", json!(orders))
        }

        TensorPower { corr, n, expect_dim } => {
            let c = cx.corr(corr, "corr")?;
            let p = tensor_power(&c.corr, *n)?;
            let mut rep = p.verify(tol);
            expect_eq(&mut rep, "dimension matches expectation", &p.dim(), expect_dim.as_ref());
            TaskOutcome::new(rep).out("dim", p.dim())
        }
        FockToeplitzRep { corr, level } => {
            let c = cx.corr(corr, "corr")?;
            let rep = fock_toeplitz_rep(&c.corr, *level)?;
            TaskOutcome::new(rep.verify(tol))
                .out("target_dim", rep.target().rep_dim())
                .out("level_dims", json!(rep.powers().dims()))
                .out("truncation_defect", rep.truncation_defect())
        }
        PsiN { rep: spec, n } => {
            let rep = cx.rep(spec, "rep")?;
            if *n == 0 || *n > rep.level_bound() {
                return Err(input(cx.p("n"), format!("n must lie in 1..={}", rep.level_bound())));
            }
            let d = rep.correspondence().dim();
            let mut worst: f64 = 0.0;
            let mut words = 0usize;
            let mut idx = vec![0usize; *n];
            let basis = units(d);
            if d > 0 {
                loop {
                    let xs: Vec<CVec> = idx.iter().map(|&i| basis[i].clone()).collect();
                    let xi = rep.powers().word(&xs);
                    worst = worst.max(psi_n(&rep, *n, &xi)?.dist(&rep.psi_word(&xs)));
                    words += 1;
                    let Some(k) = idx.iter().rposition(|&i| i + 1 < d) else { break };
                    idx[k] += 1;
                    idx[k + 1..].iter_mut().for_each(|i| *i = 0);
                }
            }
            let mut r = Report::new("psi_n");
            r.residual("psi_n on elementary tensors is the product of psi", worst, tol);
            TaskOutcome::new(r).out("words", words)
        }
        PsiParenN { rep: spec, n } => {
            let rep = cx.rep(spec, "rep")?;
            TaskOutcome::new(rep.verify_compacts(*n, tol)?)
        }
        CpCovarianceDefect { rep: spec, expect } => {
            let rep = cx.rep(spec, "rep")?;
            let j = katsura_ideal(rep.correspondence(), tol);
            let d = cp_covariance_defect(&rep, &j.basis, tol)?;
            let mut r = Report::new("covariance defect");
            match expect {
                Some(w) => r.residual("defect matches expectation", (d - w).abs(), tol),
                None => r.residual("covariant", d, tol),
            };
            TaskOutcome::new(r).out("defect", d)
        }
        CkRepresentation { graph, expect_dim } => {
            let g = env.graph(graph, &cx.p("graph"))?;
            let pr = ck_representation(g)?;
            let mut rep = pr.rep.verify(tol);
            let j = katsura_ideal(pr.rep.correspondence(), tol);
            rep.residual("covariance defect", cp_covariance_defect(&pr.rep, &j.basis, tol)?, tol);
            expect_eq(&mut rep, "dimension matches expectation", &pr.dim(), expect_dim.as_ref());
            TaskOutcome::new(rep).out("dim", pr.dim()).out("paths", pr.paths.len())
        }
        ProductRepresentation { e, action, f, labeling } => {
            let (p, _, _) = cx.product(e, action, f, labeling)?;
            TaskOutcome::new(p.rep().verify(tol)).out("target_dim", p.rep().target().rep_dim())
        }
        CompactsProductCheck { e, action, f, labeling, s, t: tt, thetas } => {
            let (p, ge, gf) = cx.product(e, action, f, labeling)?;
            let (x, y) = (p.x_rep().correspondence(), p.y_rep().correspondence());
            let (dx, dy) = (x.dim(), y.dim());
            let (s0, s1) = (cx.vec(dx, Some(ge), &s[0], "s/0")?, cx.vec(dx, Some(ge), &s[1], "s/1")?);
            let (t0, t1) = (cx.vec(dy, Some(gf), &tt[0], "t/0")?, cx.vec(dy, Some(gf), &tt[1], "t/1")?);
            let s_op = theta(x.module(), &s0, &s1).matrix;
            let t_op = theta(y.module(), &t0, &t1).matrix;
            let data = thetas
                .iter()
                .enumerate()
                .map(|(i, th)| {
                    let q = |k: &str| format!("thetas/{i}/{k}");
                    Ok((
                        cx.vec(dx, Some(ge), &th.x, &q("x"))?,
                        cx.vec(dx, Some(ge), &th.xp, &q("xp"))?,
                        cx.vec(dy, Some(gf), &th.y, &q("y"))?,
                        cx.vec(dy, Some(gf), &th.yp, &q("yp"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            TaskOutcome::new(compacts_product_check(&p, &s_op, &t_op, &data, tol)?)
        }
        CpProductCheck { e, action, f, labeling } => {
            let (p, _, _) = cx.product(e, action, f, labeling)?;
            TaskOutcome::new(cp_product_check(&p, tol)?)
        }
        GeneratorFactorizationCheck { e, action, f, labeling, data } => {
            let (p, ge, gf) = cx.product(e, action, f, labeling)?;
            let (dx, dy) = (p.x_rep().correspondence().dim(), p.y_rep().correspondence().dim());
            let ve = vertex_algebra(ge);
            let d = GeneratorData {
                x0: cx.vecs(dx, Some(ge), &data.x0, "data/x0")?,
                a: cx.elem(&ve, Some(ge), &data.a, "data/a")?,
                x0p: cx.level(dx, ge, &data.x0p, "data/x0p")?,
                ap: cx.elem(&ve, Some(ge), &data.ap, "data/ap")?,
                y1: cx.vecs(dy, Some(gf), &data.y1, "data/y1")?,
                y2: cx.level(dy, gf, &data.y2, "data/y2")?,
                y1p: cx.level(dy, gf, &data.y1p, "data/y1p")?,
                y2p: cx.level(dy, gf, &data.y2p, "data/y2p")?,
            };
            let r = generator_factorization_check(&p, &d, tol)?;
            TaskOutcome::new(r).out("spanning_element_norm", p.spanning_element(&d).norm())
        }
    })
}
