use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fdalg::FiniteGroup;
use crate::report::Report;

/// An edge `e` with source `s(e)` and range `r(e)`, as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite directed graph with ordered vertex and edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(name, source, range)` triples of vertex names.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::InvalidGraph("repeated vertex name".into()));
        }
        let lookup = |name: &str, what: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidGraph(format!("{what} '{name}' is not a declared vertex")))
        };
        let mut out = Vec::with_capacity(edges.len());
        for (name, s, r) in edges {
            out.push(Edge { name: name.as_ref().to_string(), src: lookup(s.as_ref(), "source")?, dst: lookup(r.as_ref(), "range")? });
        }
        DirectedGraph::from_indices(vertices, out)
    }

    /// Builds a graph from vertex names and index-based edges.
    pub fn from_indices(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.src >= n || e.dst >= n) {
            return Err(Error::InvalidGraph(format!("edge '{}' has an undeclared endpoint", e.name)));
        }
        let mut names: Vec<&str> = edges.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("repeated edge name".into()));
        }
        Ok(DirectedGraph { vertices, edges })
    }

    /// Vertices `v0, v1, …` and edges `e0, e1, …` from `(source, range)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| format!("v{i}")).collect();
        let edges = pairs.iter().enumerate().map(|(i, &(src, dst))| Edge { name: format!("e{i}"), src, dst }).collect();
        DirectedGraph::from_indices(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// Number of edges with `r(e) = v`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.dst == v).count()
    }

    /// Number of edges with `s(e) = v`.
    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.src == v).count()
    }

    /// Vertices emitting no edges.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.out_degree(v) == 0).collect()
    }

    /// Vertices receiving no edges.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.in_degree(v) == 0).collect()
    }

    /// Vertices receiving no edges and emitting at least one.
    pub fn proper_sources(&self) -> Vec<usize> {
        self.sources().into_iter().filter(|&v| self.out_degree(v) > 0).collect()
    }

    /// Vertices receiving at least one edge.
    pub fn receivers(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.in_degree(v) > 0).collect()
    }

    /// True when no path of positive length returns to its start.
    pub fn is_acyclic(&self) -> bool {
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for e in self.edges.iter().filter(|e| e.src == v) {
                indeg[e.dst] -= 1;
                if indeg[e.dst] == 0 {
                    stack.push(e.dst);
                }
            }
        }
        seen == n
    }

    /// Same graph with vertices and edges reordered: new vertex `i` is old vertex `vperm[i]`,
    /// new edge `j` is old edge `eperm[j]`.
    pub fn reorder(&self, vperm: &[usize], eperm: &[usize]) -> Result<Self> {
        let mut inv = vec![usize::MAX; self.num_vertices()];
        for (i, &old) in vperm.iter().enumerate() {
            inv[old] = i;
        }
        if vperm.len() != self.num_vertices() || inv.contains(&usize::MAX) || eperm.len() != self.num_edges() {
            return Err(Error::InvalidGraph("reordering is not a permutation".into()));
        }
        let vertices = vperm.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = eperm
            .iter()
            .map(|&e| {
                let old = &self.edges[e];
                Edge { name: old.name.clone(), src: inv[old.src], dst: inv[old.dst] }
            })
            .collect();
        DirectedGraph::from_indices(vertices, edges)
    }
}

/// An action of a finite group by graph automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAction {
    group: FiniteGroup,
    vertex_perm: Vec<Vec<usize>>,
    edge_perm: Vec<Vec<usize>>,
}

impl GraphAction {
    /// `vertex_perm[s][v] = α_s(v)`, `edge_perm[s][e] = α_s(e)`.
    pub fn new(group: FiniteGroup, vertex_perm: Vec<Vec<usize>>, edge_perm: Vec<Vec<usize>>) -> Result<Self> {
        if vertex_perm.len() != group.order() || edge_perm.len() != group.order() {
            return Err(Error::ShapeMismatch("one vertex and one edge permutation per group element".into()));
        }
        Ok(GraphAction { group, vertex_perm, edge_perm })
    }

    pub fn trivial(group: FiniteGroup, graph: &DirectedGraph) -> Self {
        let n = group.order();
        GraphAction {
            vertex_perm: vec![(0..graph.num_vertices()).collect(); n],
            edge_perm: vec![(0..graph.num_edges()).collect(); n],
            group,
        }
    }

    /// The action of `ℤ_n` generated by one automorphism of order dividing `n`.
    pub fn cyclic(n: usize, vertex_gen: Vec<usize>, edge_gen: Vec<usize>) -> Result<Self> {
        let group = FiniteGroup::cyclic(n)?;
        let power = |p: &[usize], k: usize| -> Vec<usize> {
            (0..p.len()).map(|i| (0..k).fold(i, |j, _| p[j])).collect()
        };
        let vertex_perm = (0..n).map(|k| power(&vertex_gen, k)).collect();
        let edge_perm = (0..n).map(|k| power(&edge_gen, k)).collect();
        GraphAction::new(group, vertex_perm, edge_perm)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn vertex(&self, s: usize, v: usize) -> usize {
        self.vertex_perm[s][v]
    }

    pub fn edge(&self, s: usize, e: usize) -> usize {
        self.edge_perm[s][e]
    }

    /// Bijections commuting with `s` and `r`, forming a homomorphism from the group.
    pub fn verify(&self, graph: &DirectedGraph) -> Report {
        let mut rep = Report::new("graph action");
        let g = &self.group;
        let is_perm = |p: &[usize], n: usize| {
            let mut seen = vec![false; n];
            p.len() == n && p.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        let perms = g.elements().all(|s| {
            is_perm(&self.vertex_perm[s], graph.num_vertices()) && is_perm(&self.edge_perm[s], graph.num_edges())
        });
        rep.flag("vertex and edge maps are bijections", perms);
        if !perms {
            return rep;
        }
        let mut intertwines = true;
        for s in g.elements() {
            for (e, edge) in graph.edges().iter().enumerate() {
                let img = &graph.edges()[self.edge(s, e)];
                if img.src != self.vertex(s, edge.src) || img.dst != self.vertex(s, edge.dst) {
                    if intertwines {
                        rep.witness(format!("alpha_{} does not carry the endpoints of edge '{}'", g.label(s), edge.name));
                    }
                    intertwines = false;
                }
            }
        }
        let mut hom = true;
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                let v_ok = (0..graph.num_vertices()).all(|v| self.vertex(s, self.vertex(t, v)) == self.vertex(st, v));
                let e_ok = (0..graph.num_edges()).all(|e| self.edge(s, self.edge(t, e)) == self.edge(st, e));
                hom &= v_ok && e_ok;
            }
        }
        let id = g.identity();
        let unital = (0..graph.num_vertices()).all(|v| self.vertex(id, v) == v)
            && (0..graph.num_edges()).all(|e| self.edge(id, e) == e);
        rep.flag("alpha commutes with s and r", intertwines)
            .flag("alpha_s alpha_t = alpha_st", hom)
            .flag("alpha_e = id", unital);
        rep
    }
}

/// A map `δ: F¹ → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    group: FiniteGroup,
    labels: Vec<usize>,
}

impl EdgeLabeling {
    pub fn new(group: FiniteGroup, labels: Vec<usize>) -> Result<Self> {
        if let Some(&l) = labels.iter().find(|&&l| l >= group.order()) {
            return Err(Error::ShapeMismatch(format!("label {l} outside the group")));
        }
        Ok(EdgeLabeling { group, labels })
    }

    /// Every edge labeled by the identity.
    pub fn trivial(group: FiniteGroup, graph: &DirectedGraph) -> Self {
        EdgeLabeling { labels: vec![group.identity(); graph.num_edges()], group }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// One label per edge.
    pub fn check(&self, graph: &DirectedGraph) -> Result<()> {
        if self.labels.len() != graph.num_edges() {
            return Err(Error::ShapeMismatch(format!("{} labels for {} edges", self.labels.len(), graph.num_edges())));
        }
        Ok(())
    }
}

/// Index of `v × w` in the product vertex list.
pub fn product_vertex(f: &DirectedGraph, v: usize, w: usize) -> usize {
    v * f.num_vertices() + w
}

/// Index of `e × f` in the product edge list.
pub fn product_edge(f: &DirectedGraph, e: usize, g: usize) -> usize {
    e * f.num_edges() + g
}

/// `E × F` with `s(e×f) = α_{δ(f)}(s(e)) × s(f)` and `r(e×f) = r(e) × r(f)`.
pub fn skew_product(e: &DirectedGraph, action: &GraphAction, f: &DirectedGraph, labeling: &EdgeLabeling) -> Result<DirectedGraph> {
    if action.group().table() != labeling.group().table() {
        return Err(Error::GroupMismatch("the action and the labeling use different groups".into()));
    }
    labeling.check(f)?;
    let vertices = e
        .vertices()
        .iter()
        .flat_map(|v| f.vertices().iter().map(move |w| format!("{v}×{w}")))
        .collect();
    let mut edges = Vec::with_capacity(e.num_edges() * f.num_edges());
    for ee in e.edges() {
        for (j, ff) in f.edges().iter().enumerate() {
            let src = product_vertex(f, action.vertex(labeling.label(j), ee.src), ff.src);
            let dst = product_vertex(f, ee.dst, ff.dst);
            edges.push(Edge { name: format!("{}×{}", ee.name, ff.name), src, dst });
        }
    }
    DirectedGraph::from_indices(vertices, edges)
}
