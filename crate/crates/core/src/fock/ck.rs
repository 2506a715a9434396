use crate::balanced::{DualGrading, DualGroup};
use crate::error::{Error, Result};
use crate::fdalg::{AlgAction, AlgElement, AlgGrading, FDAlgebra, MatrixAlgebra, SpatialAutomorphism};
use crate::graphs::{graph_correspondence, DirectedGraph, EdgeLabeling, GraphAction};
use crate::linalg::{self, re, CMat};

use super::rep::{ToeplitzRep, Validity};

/// A path `e_k ⋯ e_1` travelled from `start`, stored in travel order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Current endpoint.
    pub fn end(&self, g: &DirectedGraph) -> usize {
        self.edges.last().map_or(self.start, |&e| g.edges()[e].dst)
    }
}

/// A path-space representation of `X(E)`: `π(χ_v)` projects onto paths ending at `v` and `ψ(χ_e)`
/// extends a path ending at `s(e)` by `e`.
#[derive(Debug, Clone)]
pub struct PathRep {
    pub graph: DirectedGraph,
    pub paths: Vec<Path>,
    pub rep: ToeplitzRep,
}

fn enumerate_paths(g: &DirectedGraph, starts: &[usize]) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = starts.iter().map(|&v| Path { start: v, edges: vec![] }).collect();
    let mut frontier = out.clone();
    let bound = g.num_vertices() + 1;
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.end(g);
            for (e, edge) in g.edges().iter().enumerate() {
                if edge.src == end {
                    let mut q = p.clone();
                    q.edges.push(e);
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            return Ok(out);
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Err(Error::InvalidGraph("graph has a cycle reachable from the chosen starts".into()))
}

fn path_rep(g: &DirectedGraph, starts: Vec<usize>, max_level: usize) -> Result<PathRep> {
    if g.num_vertices() == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    if !g.is_acyclic() {
        return Err(Error::InvalidGraph("path-space representations need an acyclic graph".into()));
    }
    let paths = enumerate_paths(g, &starts)?;
    let d = paths.len();
    let target = FDAlgebra::matrices(d);
    let index = |p: &Path| paths.iter().position(|q| q == p);
    let corr = graph_correspondence(g);
    let psi = (0..g.num_edges())
        .map(|e| {
            let mut m = CMat::zeros(d, d);
            for (j, p) in paths.iter().enumerate() {
                if p.end(g) == g.edges()[e].src {
                    let mut q = p.clone();
                    q.edges.push(e);
                    if let Some(i) = index(&q) {
                        m[(i, j)] = re(1.0);
                    }
                }
            }
            target.element(vec![m]).expect("square")
        })
        .collect();
    let proj = |v: usize| {
        let diag = paths.iter().map(|p| re(if p.end(g) == v { 1.0 } else { 0.0 })).collect::<Vec<_>>();
        target.element(vec![CMat::from_diagonal(&linalg::CVec::from_vec(diag))]).expect("square")
    };
    let pi = corr
        .coeff()
        .basis()
        .iter()
        .map(|b| (0..g.num_vertices()).fold(target.zero(), |acc, v| &acc + &proj(v).scale(b.block(v)[(0, 0)])))
        .collect();
    let rep = ToeplitzRep::new(corr, target, psi, pi, Validity::Full, max_level)?;
    Ok(PathRep { graph: g.clone(), paths, rep })
}

/// The Cuntz-Krieger family on paths starting at vertices that receive no edges.
///
/// `π(χ_v) = Σ_{r(e)=v} ψ(χ_e)ψ(χ_e)*` holds exactly at every receiver, so the covariance
/// defect on `J_{X(E)}` is zero.
pub fn ck_representation(g: &DirectedGraph) -> Result<PathRep> {
    let starts = (0..g.num_vertices()).filter(|&v| g.in_degree(v) == 0).collect();
    path_rep(g, starts, 2)
}

/// The Toeplitz family on all paths; not covariant at receivers.
pub fn path_toeplitz_representation(g: &DirectedGraph) -> Result<PathRep> {
    path_rep(g, (0..g.num_vertices()).collect(), 2)
}

impl PathRep {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    fn path_index(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|q| q == p)
    }

    /// `γ'_s = Ad U_s` with `U_s δ_μ = δ_{α_{s⁻¹}(μ)}`, so that `ψ(γ_s x) = γ'_s(ψ(x))`.
    pub fn induced_action(&self, action: &GraphAction) -> Result<AlgAction> {
        let grp = action.group();
        let amb = self.rep.target().clone();
        let mut autos = Vec::with_capacity(grp.order());
        for s in grp.elements() {
            let inv = grp.inv(s);
            let mut u = CMat::zeros(self.dim(), self.dim());
            for (j, p) in self.paths.iter().enumerate() {
                let q = Path { start: action.vertex(inv, p.start), edges: p.edges.iter().map(|&e| action.edge(inv, e)).collect() };
                let i = self
                    .path_index(&q)
                    .ok_or_else(|| Error::precondition("action preserves the path space", format!("image of path {j} missing")))?;
                u[(i, j)] = re(1.0);
            }
            autos.push(SpatialAutomorphism::inner(&amb, u)?);
        }
        AlgAction::new(grp.clone(), MatrixAlgebra::full(amb), autos)
    }

    /// `deg |μ⟩⟨ν| = δ(μ)δ(ν)⁻¹`, with `δ(e_1⋯e_k) = δ(e_k)⋯δ(e_1)` along travel order.
    pub fn induced_grading(&self, labeling: &EdgeLabeling) -> Result<AlgGrading> {
        let grp = labeling.group();
        labeling.check(&self.graph)?;
        let deg = |p: &Path| p.edges.iter().fold(grp.identity(), |acc, &e| grp.mul(labeling.label(e), acc));
        let amb = self.rep.target().clone();
        let mut parts: Vec<Vec<AlgElement>> = vec![Vec::new(); grp.order()];
        for (i, p) in self.paths.iter().enumerate() {
            for (j, q) in self.paths.iter().enumerate() {
                parts[grp.mul(deg(p), grp.inv(deg(q)))].push(amb.unit(0, i, j));
            }
        }
        AlgGrading::new(grp.clone(), MatrixAlgebra::full(amb), parts.into_iter().enumerate().collect())
    }

    /// The gauge grading on the target: `deg |μ⟩⟨ν| = |μ| − |ν|`, so `ψⁿ(x)ψᵐ(y)*` has degree `n − m`.
    pub fn gauge_grading(&self) -> DualGrading {
        let amb = self.rep.target().clone();
        let parts = self
            .paths
            .iter()
            .enumerate()
            .flat_map(|(i, p)| self.paths.iter().enumerate().map(move |(j, q)| (p.len() as i64 - q.len() as i64, i, j)))
            .map(|(k, i, j)| (k, vec![amb.unit(0, i, j)]))
            .collect();
        DualGrading::new(DualGroup::Circle, MatrixAlgebra::full(amb.clone()), parts, 1e-9).expect("matrix units")
    }

    /// Longest path length.
    pub fn depth(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }
}
