use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdalg::FiniteGroup;

use super::graph::{DirectedGraph, Edge, EdgeLabeling};

/// JSON form of a graph, with optional edge labels given as group element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub name: String,
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl GraphJson {
    pub fn from_graph(g: &DirectedGraph, labeling: Option<&EdgeLabeling>) -> Self {
        GraphJson {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeJson {
                    name: e.name.clone(),
                    src: g.vertices()[e.src].clone(),
                    dst: g.vertices()[e.dst].clone(),
                    label: labeling.map(|l| l.group().label(l.label(i)).to_string()),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<DirectedGraph> {
        let edges: Vec<(&str, &str, &str)> =
            self.edges.iter().map(|e| (e.name.as_str(), e.src.as_str(), e.dst.as_str())).collect();
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        DirectedGraph::new(&vertices, &edges)
    }

    /// Labels resolved in `group`; every edge must carry one.
    pub fn labeling(&self, group: &FiniteGroup) -> Result<EdgeLabeling> {
        let labels = self
            .edges
            .iter()
            .map(|e| {
                let l = e.label.as_deref().ok_or_else(|| Error::InvalidGraph(format!("edge '{}' has no label", e.name)))?;
                group.index_of(l).ok_or_else(|| Error::InvalidGraph(format!("label '{l}' of edge '{}' is not a group element", e.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeLabeling::new(group.clone(), labels)
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text: one node per vertex labeled by its name, one arrow per edge with its name as `id`
/// and, when a labeling is given, the label of `δ(e)` as `label`.
pub fn to_dot(g: &DirectedGraph, name: &str, labeling: Option<&EdgeLabeling>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).expect("string write");
    for v in g.vertices() {
        writeln!(out, "  {} [label={}];", quote(v), quote(v)).expect("string write");
    }
    for (i, e) in g.edges().iter().enumerate() {
        let mut attrs = format!("id={}", quote(&e.name));
        if let Some(l) = labeling {
            write!(attrs, ", label={}", quote(l.group().label(l.label(i)))).expect("string write");
        }
        writeln!(out, "  {} -> {} [{}];", quote(&g.vertices()[e.src]), quote(&g.vertices()[e.dst]), attrs)
            .expect("string write");
    }
    out.push_str("}\n");
    out
}

/// A parsed DOT graph and the raw edge `label` attributes, if any edge had one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub graph: DirectedGraph,
    pub labels: Option<Vec<String>>,
}

struct Cursor<'a> {
    s: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        self.s = self.s.trim_start();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if let Some(rest) = self.s.strip_prefix(tok) {
            self.s = rest;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{tok}'")))
        }
    }

    /// A quoted string or a bare identifier.
    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        if let Some(rest) = self.s.strip_prefix('"') {
            let mut out = String::new();
            let mut chars = rest.char_indices();
            while let Some((i, c)) = chars.next() {
                match c {
                    '\\' => match chars.next() {
                        Some((_, c)) => out.push(c),
                        None => break,
                    },
                    '"' => {
                        self.s = &rest[i + 1..];
                        return Ok(out);
                    }
                    c => out.push(c),
                }
            }
            return Err(self.err("unterminated string"));
        }
        let end = self.s.find(|c: char| !(c.is_alphanumeric() || c == '_' || c == '.')).unwrap_or(self.s.len());
        if end == 0 {
            return Err(self.err("expected an identifier"));
        }
        let (id, rest) = self.s.split_at(end);
        self.s = rest;
        Ok(id.to_string())
    }

    fn attrs(&mut self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        if !self.eat("[") {
            return Ok(out);
        }
        loop {
            if self.eat("]") {
                return Ok(out);
            }
            let k = self.ident()?;
            self.expect("=")?;
            let v = self.ident()?;
            out.push((k, v));
            if !self.eat(",") && !self.eat(";") {
                self.expect("]")?;
                return Ok(out);
            }
        }
    }

    fn end(&mut self) -> Result<()> {
        self.eat(";");
        self.skip_ws();
        if self.s.is_empty() {
            Ok(())
        } else {
            Err(self.err(format!("unexpected trailing text '{}'", self.s)))
        }
    }
}

/// Parses the subset of DOT written by [`to_dot`]: one statement per line.
/// Edge names default to `e0, e1, …` when no `id` is given.
pub fn from_dot(text: &str) -> Result<DotGraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with("//")
    });
    let (first, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
    let mut c = Cursor { s: header, line: first };
    c.expect("digraph")?;
    let name = if c.eat("{") {
        String::new()
    } else {
        let n = c.ident()?;
        c.expect("{")?;
        n
    };
    c.end()?;
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut closed = false;
    for (no, line) in lines {
        let mut c = Cursor { s: line, line: no };
        if closed {
            return Err(c.err("text after the closing brace"));
        }
        if c.eat("}") {
            c.end()?;
            closed = true;
            continue;
        }
        let a = c.ident()?;
        if c.eat("->") {
            let b = c.ident()?;
            let attrs = c.attrs()?;
            c.end()?;
            let mut id = None;
            let mut label = None;
            for (k, v) in attrs {
                match k.as_str() {
                    "id" => id = Some(v),
                    "label" => label = Some(v),
                    other => return Err(c.err(format!("unsupported edge attribute '{other}'"))),
                }
            }
            for v in [&a, &b] {
                if !vertices.contains(v) {
                    vertices.push(v.clone());
                }
            }
            edges.push((id.unwrap_or_else(|| format!("e{}", edges.len())), a, b));
            labels.push(label);
        } else {
            let attrs = c.attrs()?;
            c.end()?;
            if let Some((k, _)) = attrs.iter().find(|(k, _)| k != "label") {
                return Err(c.err(format!("unsupported node attribute '{k}'")));
            }
            if vertices.contains(&a) {
                if edges.iter().all(|(_, s, r)| s != &a && r != &a) {
                    return Err(c.err(format!("vertex '{a}' declared twice")));
                }
            } else {
                vertices.push(a);
            }
        }
    }
    if !closed {
        return Err(Error::Parse { line: text.lines().count().max(1), message: "missing closing brace".into() });
    }
    let graph = DirectedGraph::new(&vertices, &edges)?;
    let labels = if labels.iter().any(Option::is_some) {
        Some(
            labels
                .into_iter()
                .enumerate()
                .map(|(i, l)| l.ok_or_else(|| Error::InvalidGraph(format!("edge '{}' has no label", edges[i].0))))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    Ok(DotGraph { name, graph, labels })
}

/// Resolves DOT edge labels in a group.
pub fn dot_labeling(dot: &DotGraph, group: &FiniteGroup) -> Result<Option<EdgeLabeling>> {
    let Some(labels) = &dot.labels else { return Ok(None) };
    let idx = labels
        .iter()
        .map(|l| group.index_of(l).ok_or_else(|| Error::InvalidGraph(format!("label '{l}' is not a group element"))))
        .collect::<Result<Vec<_>>>()?;
    EdgeLabeling::new(group.clone(), idx).map(Some)
}

/// Edge list of `g` as `(name, source, range)` names, for diagnostics.
pub fn edge_triples(g: &DirectedGraph) -> Vec<(String, String, String)> {
    g.edges()
        .iter()
        .map(|Edge { name, src, dst }| (name.clone(), g.vertices()[*src].clone(), g.vertices()[*dst].clone()))
        .collect()
}
