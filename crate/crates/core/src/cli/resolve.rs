//! Turns the named sections of a spec file into library objects.
//!
//! Every failure is an [`Error::Input`] carrying the JSON pointer of the offending value.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::fdalg::{
    cyclic_dual_action, function_algebra, group_algebra, AlgAction, AlgElement, AlgGrading, FDAlgebra, FiniteGroup,
    MatrixAlgebra,
};
use crate::graphs::{skew_product, vertex_algebra, DirectedGraph, EdgeLabeling, GraphAction};
use crate::linalg::CVec;

use super::spec::{ActionSpec, AlgebraSpec, ElementSpec, GradingSpec, GraphSpec, GroupSpec, MatrixSpec, SpecFile, VectorSpec};

/// Escapes one JSON-pointer reference token.
pub fn token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

pub fn input(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Input { pointer: pointer.into(), message: message.into() }
}

/// How an algebra was declared, for constructions that need more than its basis.
#[derive(Debug, Clone)]
pub enum AlgebraSource {
    Plain,
    GroupAlgebra(FiniteGroup),
    FunctionAlgebra(FiniteGroup),
}

#[derive(Debug, Clone)]
pub struct AlgebraEntry {
    pub algebra: MatrixAlgebra,
    pub source: AlgebraSource,
}

/// A labeling together with the name of the graph it labels.
#[derive(Debug, Clone)]
pub struct LabelingEntry {
    pub graph: String,
    pub labeling: EdgeLabeling,
}

#[derive(Debug, Clone)]
pub struct GraphActionEntry {
    pub graph: String,
    pub action: GraphAction,
}

/// All named objects of a spec file.
#[derive(Debug, Default)]
pub struct Env {
    pub groups: BTreeMap<String, FiniteGroup>,
    pub algebras: BTreeMap<String, AlgebraEntry>,
    pub gradings: BTreeMap<String, AlgGrading>,
    pub actions: BTreeMap<String, AlgAction>,
    pub graph_actions: BTreeMap<String, GraphActionEntry>,
    pub graphs: BTreeMap<String, DirectedGraph>,
    pub labelings: BTreeMap<String, LabelingEntry>,
}

/// The kinds of named object a task can refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Group,
    Algebra,
    Grading,
    Action,
    GraphAction,
    Graph,
    Labeling,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Algebra => "algebra",
            Kind::Grading => "grading",
            Kind::Action => "algebra action",
            Kind::GraphAction => "graph action",
            Kind::Graph => "graph",
            Kind::Labeling => "labeling",
        }
    }
}

impl Env {
    /// Resolves every section of `spec`.
    pub fn build(spec: &SpecFile) -> Result<Env> {
        let mut env = Env::default();
        for (name, g) in &spec.groups {
            let p = format!("/groups/{}", token(name));
            env.groups.insert(name.clone(), resolve_group(g, &p)?);
        }
        for (name, a) in &spec.algebras {
            let p = format!("/algebras/{}", token(name));
            let entry = env.resolve_algebra(a, &p)?;
            env.algebras.insert(name.clone(), entry);
        }
        for (name, g) in &spec.gradings {
            let p = format!("/gradings/{}", token(name));
            let grading = env.resolve_grading(g, &p)?;
            env.gradings.insert(name.clone(), grading);
        }
        for (name, a) in &spec.actions {
            if !matches!(a, ActionSpec::Graph { .. }) {
                let p = format!("/actions/{}", token(name));
                let action = env.resolve_action(a, &p)?;
                env.actions.insert(name.clone(), action);
            }
        }
        let mut graphs = GraphResolver { spec, env: &mut env, active: BTreeSet::new() };
        for name in spec.graphs.keys() {
            graphs.graph(name, &format!("/graphs/{}", token(name)))?;
        }
        for (name, a) in &spec.actions {
            if matches!(a, ActionSpec::Graph { .. }) {
                graphs.graph_action(name, &format!("/actions/{}", token(name)))?;
            }
        }
        for name in spec.labelings.keys() {
            graphs.labeling(name, &format!("/labelings/{}", token(name)))?;
        }
        Ok(env)
    }

    /// Whether `name` is declared with the given kind.
    pub fn has(&self, kind: Kind, name: &str) -> bool {
        match kind {
            Kind::Group => self.groups.contains_key(name),
            Kind::Algebra => self.algebras.contains_key(name),
            Kind::Grading => self.gradings.contains_key(name),
            Kind::Action => self.actions.contains_key(name),
            Kind::GraphAction => self.graph_actions.contains_key(name),
            Kind::Graph => self.graphs.contains_key(name),
            Kind::Labeling => self.labelings.contains_key(name),
        }
    }

    /// The error for a dangling reference.
    pub fn dangling(&self, kind: Kind, name: &str, pointer: &str) -> Error {
        let hint = match kind {
            Kind::Action if self.graph_actions.contains_key(name) => " (it is a graph action)",
            Kind::GraphAction if self.actions.contains_key(name) => " (it is an algebra action)",
            _ => "",
        };
        input(pointer, format!("unknown {} '{name}'{hint}", kind.noun()))
    }

    pub fn group(&self, name: &str, pointer: &str) -> Result<&FiniteGroup> {
        self.groups.get(name).ok_or_else(|| self.dangling(Kind::Group, name, pointer))
    }

    pub fn algebra(&self, name: &str, pointer: &str) -> Result<&AlgebraEntry> {
        self.algebras.get(name).ok_or_else(|| self.dangling(Kind::Algebra, name, pointer))
    }

    pub fn grading(&self, name: &str, pointer: &str) -> Result<&AlgGrading> {
        self.gradings.get(name).ok_or_else(|| self.dangling(Kind::Grading, name, pointer))
    }

    pub fn action(&self, name: &str, pointer: &str) -> Result<&AlgAction> {
        self.actions.get(name).ok_or_else(|| self.dangling(Kind::Action, name, pointer))
    }

    pub fn graph_action(&self, name: &str, pointer: &str) -> Result<&GraphActionEntry> {
        self.graph_actions.get(name).ok_or_else(|| self.dangling(Kind::GraphAction, name, pointer))
    }

    pub fn graph(&self, name: &str, pointer: &str) -> Result<&DirectedGraph> {
        self.graphs.get(name).ok_or_else(|| self.dangling(Kind::Graph, name, pointer))
    }

    pub fn labeling(&self, name: &str, pointer: &str) -> Result<&LabelingEntry> {
        self.labelings.get(name).ok_or_else(|| self.dangling(Kind::Labeling, name, pointer))
    }

    fn resolve_algebra(&self, spec: &AlgebraSpec, p: &str) -> Result<AlgebraEntry> {
        let plain = |algebra| AlgebraEntry { algebra, source: AlgebraSource::Plain };
        Ok(match spec {
            AlgebraSpec::Blocks { dims } => plain(MatrixAlgebra::full(fd(dims, &format!("{p}/dims"))?)),
            AlgebraSpec::Matrices { n } => plain(MatrixAlgebra::full(fd(&[*n], &format!("{p}/n"))?)),
            AlgebraSpec::Diagonal { n } => plain(MatrixAlgebra::full(fd(&vec![1; *n], &format!("{p}/n"))?)),
            AlgebraSpec::GroupAlgebra { group } => {
                let g = self.group(group, &format!("{p}/group"))?;
                AlgebraEntry { algebra: group_algebra(g).algebra, source: AlgebraSource::GroupAlgebra(g.clone()) }
            }
            AlgebraSpec::FunctionAlgebra { group } => {
                let g = self.group(group, &format!("{p}/group"))?;
                AlgebraEntry { algebra: function_algebra(g).algebra, source: AlgebraSource::FunctionAlgebra(g.clone()) }
            }
            AlgebraSpec::Span { dims, elements } => {
                let amb = fd(dims, &format!("{p}/dims"))?;
                let full = MatrixAlgebra::full(amb.clone());
                let els = elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| element(&full, None, e, &format!("{p}/elements/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                let alg = MatrixAlgebra::span_of(amb, els, 1e-12).map_err(|e| input(p, e.to_string()))?;
                plain(alg)
            }
        })
    }

    fn resolve_grading(&self, spec: &GradingSpec, p: &str) -> Result<AlgGrading> {
        match spec {
            GradingSpec::Canonical { algebra } => {
                let entry = self.algebra(algebra, &format!("{p}/algebra"))?;
                match &entry.source {
                    AlgebraSource::GroupAlgebra(g) => Ok(group_algebra(g).grading),
                    _ => Err(input(format!("{p}/algebra"), format!("'{algebra}' is not a group algebra"))),
                }
            }
            GradingSpec::Trivial { algebra, group } => {
                let a = self.algebra(algebra, &format!("{p}/algebra"))?;
                let g = self.group(group, &format!("{p}/group"))?;
                Ok(AlgGrading::trivial(g.clone(), a.algebra.clone()))
            }
            GradingSpec::Explicit { algebra, group, parts } => {
                let a = &self.algebra(algebra, &format!("{p}/algebra"))?.algebra;
                let g = self.group(group, &format!("{p}/group"))?;
                let mut out = Vec::with_capacity(parts.len());
                for (i, part) in parts.iter().enumerate() {
                    let q = format!("{p}/parts/{i}");
                    let s = group_element(g, &part.degree, &format!("{q}/degree"))?;
                    let els = part
                        .basis
                        .iter()
                        .enumerate()
                        .map(|(j, e)| element(a, None, e, &format!("{q}/basis/{j}")))
                        .collect::<Result<Vec<_>>>()?;
                    out.push((s, els));
                }
                AlgGrading::new(g.clone(), a.clone(), out).map_err(|e| input(p, e.to_string()))
            }
        }
    }

    fn resolve_action(&self, spec: &ActionSpec, p: &str) -> Result<AlgAction> {
        let wrap = |r: Result<AlgAction>| r.map_err(|e| input(p, e.to_string()));
        match spec {
            ActionSpec::Translation { algebra } => match &self.algebra(algebra, &format!("{p}/algebra"))?.source {
                AlgebraSource::FunctionAlgebra(g) => Ok(function_algebra(g).translation),
                _ => Err(input(format!("{p}/algebra"), format!("'{algebra}' is not a function algebra"))),
            },
            ActionSpec::Dual { algebra } => match &self.algebra(algebra, &format!("{p}/algebra"))?.source {
                AlgebraSource::GroupAlgebra(g) => {
                    if !is_cyclic_labelled(g) {
                        return Err(input(format!("{p}/algebra"), "the dual action needs a cyclic group"));
                    }
                    wrap(cyclic_dual_action(&group_algebra(g)))
                }
                _ => Err(input(format!("{p}/algebra"), format!("'{algebra}' is not a group algebra"))),
            },
            ActionSpec::Trivial { algebra, group } => {
                let a = self.algebra(algebra, &format!("{p}/algebra"))?;
                let g = self.group(group, &format!("{p}/group"))?;
                Ok(AlgAction::trivial(g.clone(), a.algebra.clone()))
            }
            ActionSpec::Inner { algebra, group, unitaries } => {
                let a = self.algebra(algebra, &format!("{p}/algebra"))?;
                let g = self.group(group, &format!("{p}/group"))?;
                let us = unitaries
                    .iter()
                    .enumerate()
                    .map(|(i, m)| matrix(m, &format!("{p}/unitaries/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                wrap(AlgAction::inner(g.clone(), a.algebra.clone(), us))
            }
            ActionSpec::Graph { .. } => Err(input(p, "graph actions are not algebra actions")),
        }
    }
}

/// The cyclic groups built by `cyclic` carry labels `0..n`; the dual action indexes characters by them.
fn is_cyclic_labelled(g: &FiniteGroup) -> bool {
    let n = g.order();
    g.elements().all(|a| g.elements().all(|b| g.mul(a, b) == (a + b) % n))
}

fn fd(dims: &[usize], p: &str) -> Result<FDAlgebra> {
    FDAlgebra::new(dims.to_vec()).map_err(|e| input(p, e.to_string()))
}

pub fn matrix(m: &MatrixSpec, p: &str) -> Result<crate::linalg::CMat> {
    m.to_matrix().map_err(|e| input(p, e))
}

fn resolve_group(spec: &GroupSpec, p: &str) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic { order } => FiniteGroup::cyclic(*order).map_err(|e| input(format!("{p}/order"), e.to_string())),
        GroupSpec::Table { labels, table } => {
            let index = |l: &str, q: String| labels.iter().position(|x| x == l).ok_or_else(|| input(q, format!("unknown label '{l}'")));
            let mut mult = Vec::with_capacity(table.len());
            for (i, row) in table.iter().enumerate() {
                let r = row
                    .iter()
                    .enumerate()
                    .map(|(j, l)| index(l, format!("{p}/table/{i}/{j}")))
                    .collect::<Result<Vec<_>>>()?;
                mult.push(r);
            }
            FiniteGroup::from_table(labels.clone(), mult).map_err(|e| input(format!("{p}/table"), e.to_string()))
        }
    }
}

pub fn group_element(g: &FiniteGroup, label: &str, p: &str) -> Result<usize> {
    g.index_of(label).ok_or_else(|| input(p, format!("'{label}' is not an element of the group")))
}

/// Resolves an element of `alg`; vertex names need `graph`, whose vertex algebra `alg` must be.
pub fn element(alg: &MatrixAlgebra, graph: Option<&DirectedGraph>, spec: &ElementSpec, p: &str) -> Result<AlgElement> {
    match spec {
        ElementSpec::Blocks { blocks } => {
            let ms = blocks
                .iter()
                .enumerate()
                .map(|(k, m)| matrix(m, &format!("{p}/blocks/{k}")))
                .collect::<Result<Vec<_>>>()?;
            let a = alg.ambient().element(ms).map_err(|e| input(format!("{p}/blocks"), e.to_string()))?;
            let r = alg.residual(&a);
            if r > 1e-9 {
                return Err(input(format!("{p}/blocks"), format!("element is not in the algebra (residual {r:.3e})")));
            }
            Ok(a)
        }
        ElementSpec::Coords { coords } => {
            if coords.len() != alg.dim() {
                return Err(input(format!("{p}/coords"), format!("expected {} coordinates, got {}", alg.dim(), coords.len())));
            }
            Ok(alg.element(&CVec::from_iterator(coords.len(), coords.iter().map(|c| c.value()))))
        }
        ElementSpec::Basis { basis } => alg
            .basis()
            .get(*basis)
            .cloned()
            .ok_or_else(|| input(format!("{p}/basis"), format!("basis index {basis} out of range (dimension {})", alg.dim()))),
        ElementSpec::Vertex { vertex } => {
            let g = graph.ok_or_else(|| input(format!("{p}/vertex"), "vertex names are only valid in a graph's vertex algebra"))?;
            let v = g.vertex_index(vertex).ok_or_else(|| input(format!("{p}/vertex"), format!("unknown vertex '{vertex}'")))?;
            Ok(vertex_algebra(g).basis()[v].clone())
        }
    }
}

/// Resolves a module vector of dimension `dim`; edge names need `graph`.
pub fn vector(dim: usize, graph: Option<&DirectedGraph>, spec: &VectorSpec, p: &str) -> Result<CVec> {
    match spec {
        VectorSpec::Coords { coords } => {
            if coords.len() != dim {
                return Err(input(format!("{p}/coords"), format!("expected {dim} coordinates, got {}", coords.len())));
            }
            Ok(CVec::from_iterator(dim, coords.iter().map(|c| c.value())))
        }
        VectorSpec::Basis { basis } => {
            if *basis >= dim {
                return Err(input(format!("{p}/basis"), format!("basis index {basis} out of range (dimension {dim})")));
            }
            Ok(crate::linalg::unit_vec(dim, *basis))
        }
        VectorSpec::Edge { edge } => {
            let g = graph.ok_or_else(|| input(format!("{p}/edge"), "edge names are only valid in a graph correspondence"))?;
            let e = g.edge_index(edge).ok_or_else(|| input(format!("{p}/edge"), format!("unknown edge '{edge}'")))?;
            Ok(crate::linalg::unit_vec(dim, e))
        }
    }
}

/// Graphs, graph actions and labelings may refer to each other in any order.
struct GraphResolver<'a> {
    spec: &'a SpecFile,
    env: &'a mut Env,
    active: BTreeSet<String>,
}

impl GraphResolver<'_> {
    fn enter(&mut self, key: String, p: &str) -> Result<()> {
        if !self.active.insert(key) {
            return Err(input(p, "cyclic reference"));
        }
        Ok(())
    }

    fn graph(&mut self, name: &str, p: &str) -> Result<DirectedGraph> {
        if let Some(g) = self.env.graphs.get(name) {
            return Ok(g.clone());
        }
        let spec = self.spec.graphs.get(name).ok_or_else(|| self.env.dangling(Kind::Graph, name, p))?;
        let here = format!("/graphs/{}", token(name));
        self.enter(format!("graph:{name}"), p)?;
        let g = match spec {
            GraphSpec::Explicit { vertices, edges } => {
                let es: Vec<(&str, &str, &str)> = edges.iter().map(|e| (e.name.as_str(), e.src.as_str(), e.dst.as_str())).collect();
                let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
                DirectedGraph::new(&vs, &es).map_err(|e| input(&here, e.to_string()))?
            }
            GraphSpec::SkewProduct { e, action, f, labeling } => {
                let ge = self.graph(e, &format!("{here}/e"))?;
                let act = self.graph_action(action, &format!("{here}/action"))?;
                let gf = self.graph(f, &format!("{here}/f"))?;
                let lab = self.labeling(labeling, &format!("{here}/labeling"))?;
                if act.graph != *e {
                    return Err(input(format!("{here}/action"), format!("action '{action}' acts on '{}', not '{e}'", act.graph)));
                }
                if lab.graph != *f {
                    return Err(input(format!("{here}/labeling"), format!("labeling '{labeling}' labels '{}', not '{f}'", lab.graph)));
                }
                skew_product(&ge, &act.action, &gf, &lab.labeling).map_err(|err| input(&here, err.to_string()))?
            }
        };
        self.env.graphs.insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn graph_action(&mut self, name: &str, p: &str) -> Result<GraphActionEntry> {
        if let Some(a) = self.env.graph_actions.get(name) {
            return Ok(a.clone());
        }
        let Some(ActionSpec::Graph { graph, group, vertices, edges }) = self.spec.actions.get(name) else {
            return Err(self.env.dangling(Kind::GraphAction, name, p));
        };
        let here = format!("/actions/{}", token(name));
        self.enter(format!("action:{name}"), p)?;
        let g = self.graph(graph, &format!("{here}/graph"))?;
        let grp = self.env.group(group, &format!("{here}/group"))?.clone();
        let perms = |maps: &BTreeMap<String, BTreeMap<String, String>>,
                     n: usize,
                     index: &dyn Fn(&str) -> Option<usize>,
                     what: &str|
         -> Result<Vec<Vec<usize>>> {
            let mut out = vec![(0..n).collect::<Vec<_>>(); grp.order()];
            for (s_label, map) in maps {
                let q = format!("{here}/{what}/{}", token(s_label));
                let s = group_element(&grp, s_label, &q)?;
                for (from, to) in map {
                    let qq = format!("{q}/{}", token(from));
                    let i = index(from).ok_or_else(|| input(&qq, format!("unknown name '{from}'")))?;
                    let j = index(to).ok_or_else(|| input(&qq, format!("unknown name '{to}'")))?;
                    out[s][i] = j;
                }
            }
            Ok(out)
        };
        let vp = perms(vertices, g.num_vertices(), &|v| g.vertex_index(v), "vertices")?;
        let ep = perms(edges, g.num_edges(), &|e| g.edge_index(e), "edges")?;
        let action = GraphAction::new(grp, vp, ep).map_err(|e| input(&here, e.to_string()))?;
        let report = action.verify(&g);
        if !report.passed() {
            let what = report.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ");
            return Err(input(&here, format!("not a graph action: {what}")));
        }
        let entry = GraphActionEntry { graph: graph.clone(), action };
        self.env.graph_actions.insert(name.to_string(), entry.clone());
        Ok(entry)
    }

    fn labeling(&mut self, name: &str, p: &str) -> Result<LabelingEntry> {
        if let Some(l) = self.env.labelings.get(name) {
            return Ok(l.clone());
        }
        let spec = self.spec.labelings.get(name).ok_or_else(|| self.env.dangling(Kind::Labeling, name, p))?;
        let here = format!("/labelings/{}", token(name));
        self.enter(format!("labeling:{name}"), p)?;
        let g = self.graph(&spec.graph, &format!("{here}/graph"))?;
        let grp = self.env.group(&spec.group, &format!("{here}/group"))?.clone();
        let mut labels = vec![grp.identity(); g.num_edges()];
        for (edge, label) in &spec.labels {
            let q = format!("{here}/labels/{}", token(edge));
            let e = g.edge_index(edge).ok_or_else(|| input(&q, format!("unknown edge '{edge}'")))?;
            labels[e] = group_element(&grp, label, &q)?;
        }
        let labeling = EdgeLabeling::new(grp, labels).map_err(|e| input(&here, e.to_string()))?;
        let entry = LabelingEntry { graph: spec.graph.clone(), labeling };
        self.env.labelings.insert(name.to_string(), entry.clone());
        Ok(entry)
    }
}
