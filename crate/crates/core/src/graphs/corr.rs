use serde::Serialize;

use crate::error::Result;
use crate::fdalg::{AlgAction, AlgElement, AlgGrading, FDAlgebra, MatrixAlgebra, SpatialAutomorphism};
use crate::hilbmod::{
    is_full, is_katsura_nondegenerate, katsura_ideal, verify_correspondence_isomorphism, AlgebraMap, CorrAction,
    CorrGrading, Correspondence, GeneratingSystem, HilbertModule,
};
use crate::linalg::{self, re, CMat, CVec};
use crate::report::{Report, Tolerance};
use crate::twist::{twisted_correspondence, TwistedCorrespondence};

use super::graph::{product_edge, product_vertex, skew_product, DirectedGraph, EdgeLabeling, GraphAction};

/// `c₀(E⁰)` as diagonal matrices.
pub fn vertex_algebra(g: &DirectedGraph) -> MatrixAlgebra {
    MatrixAlgebra::full(FDAlgebra::diagonal(g.num_vertices().max(1)))
}

/// `X(E)` over `c₀(E⁰)`: basis `χ_e`, `⟨χ_e, χ_f⟩ = δ_{e,f} χ_{s(e)}`, `χ_v·χ_e = [r(e)=v] χ_e`,
/// `χ_e·χ_v = [s(e)=v] χ_e`.
///
/// A graph without vertices gets the zero module over `ℂ`.
pub fn graph_correspondence(g: &DirectedGraph) -> Correspondence {
    let alg = vertex_algebra(g);
    let d = g.num_edges();
    let n = g.num_vertices();
    let indicator = |f: &dyn Fn(usize) -> bool| CMat::from_diagonal(&CVec::from_iterator(d, (0..d).map(|e| re(f(e) as u8 as f64))));
    let edges = g.edges();
    let right = (0..alg.dim()).map(|v| indicator(&|e| edges[e].src == v)).collect();
    let phi = (0..alg.dim()).map(|v| indicator(&|e| edges[e].dst == v)).collect();
    let mut gram = Vec::with_capacity(d * d);
    for (e, edge) in edges.iter().enumerate() {
        for f in 0..d {
            gram.push(if e == f && n > 0 { alg.ambient().unit(edge.src, 0, 0) } else { alg.zero() });
        }
    }
    let module = HilbertModule::new(alg.clone(), d, right, gram).expect("shapes agree");
    Correspondence::new(alg, module, phi).expect("shapes agree")
}

/// `α_s(χ_v) = χ_{α_{s⁻¹}(v)}` on `c₀(E⁰)` and `γ_s(χ_e) = χ_{α_{s⁻¹}(e)}` on `X(E)`.
pub fn graph_action_lift(g: &DirectedGraph, action: &GraphAction) -> Result<CorrAction> {
    let grp = action.group();
    let alg = vertex_algebra(g);
    let mut autos = Vec::with_capacity(grp.order());
    let mut gamma = Vec::with_capacity(grp.order());
    for s in grp.elements() {
        let inv = grp.inv(s);
        let perm: Vec<usize> = if g.num_vertices() == 0 { vec![0] } else { (0..g.num_vertices()).map(|v| action.vertex(inv, v)).collect() };
        autos.push(SpatialAutomorphism::permutation(alg.ambient(), perm)?);
        let d = g.num_edges();
        let mut m = CMat::zeros(d, d);
        for e in 0..d {
            m[(action.edge(inv, e), e)] = re(1.0);
        }
        gamma.push(m);
    }
    CorrAction::new(AlgAction::new(grp.clone(), alg, autos)?, gamma)
}

/// `X_s = span{χ_f : δ(f) = s}` with the coefficient algebra in degree `e`.
pub fn labeling_grading(f: &DirectedGraph, labeling: &EdgeLabeling) -> Result<CorrGrading> {
    labeling.check(f)?;
    let grp = labeling.group().clone();
    let alg = vertex_algebra(f);
    let d = f.num_edges();
    let parts = grp
        .elements()
        .map(|s| (s, (0..d).filter(|&e| labeling.label(e) == s).map(|e| linalg::unit_vec(d, e)).collect()))
        .collect();
    CorrGrading::new(AlgGrading::trivial(grp, alg), parts)
}

/// `J_{X(E)}` read off the graph: the span of `χ_v` over vertices receiving an edge.
#[derive(Debug, Clone)]
pub struct GraphKatsura {
    pub vertices: Vec<usize>,
    pub basis: Vec<AlgElement>,
}

pub fn graph_katsura_ideal(g: &DirectedGraph) -> GraphKatsura {
    let alg = vertex_algebra(g);
    let vertices = g.receivers();
    let basis = vertices.iter().map(|&v| alg.ambient().unit(v, 0, 0)).collect();
    GraphKatsura { vertices, basis }
}

/// The graph ideal agrees with the ideal computed from `X(E)` by linear algebra.
pub fn katsura_agreement(g: &DirectedGraph, tol: Tolerance) -> Report {
    let c = graph_correspondence(g);
    let from_graph = graph_katsura_ideal(g);
    let from_module = katsura_ideal(&c, tol);
    let mut rep = Report::new("katsura ideal agreement");
    let blocks = if g.num_vertices() == 0 { Some(Vec::new()) } else { from_module.blocks.clone() };
    rep.flag("receivers = blocks where phi is injective", blocks.as_deref() == Some(&from_graph.vertices[..]));
    rep
}

/// Sinks, sources and the two regularity conditions, read off the graph and cross-checked on `X(E)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphRegularity {
    pub sinks: Vec<String>,
    pub sources: Vec<String>,
    pub proper_sources: Vec<String>,
    /// No proper sources; the infinite-receiver clause is vacuous for finite graphs.
    pub is_katsura_nondegenerate: bool,
    /// No sinks.
    pub is_full: bool,
    pub infinite_receivers: &'static str,
    /// `X·J_X = X` computed on the module.
    pub module_nondegenerate: bool,
    /// `span⟨X, X⟩ = c₀(E⁰)` computed on the module.
    pub module_full: bool,
}

impl GraphRegularity {
    pub fn consistent(&self) -> bool {
        self.is_katsura_nondegenerate == self.module_nondegenerate && self.is_full == self.module_full
    }
}

pub fn graph_regularity_report(g: &DirectedGraph, tol: Tolerance) -> GraphRegularity {
    let names = |vs: Vec<usize>| vs.into_iter().map(|v| g.vertices()[v].clone()).collect::<Vec<_>>();
    let c = graph_correspondence(g);
    let proper = g.proper_sources();
    let sinks = g.sinks();
    GraphRegularity {
        is_katsura_nondegenerate: proper.is_empty(),
        is_full: sinks.is_empty(),
        sinks: names(sinks),
        sources: names(g.sources()),
        proper_sources: names(proper),
        infinite_receivers: "none (finite graph)",
        module_nondegenerate: is_katsura_nondegenerate(&c, tol),
        module_full: g.num_vertices() == 0 || is_full(c.module(), tol),
    }
}

/// `X(E) ⊠ X(F)` together with the skew product and the identification maps.
#[derive(Debug, Clone)]
pub struct GraphProduct {
    pub product: DirectedGraph,
    pub skew: Correspondence,
    pub twisted: TwistedCorrespondence,
    /// `χ_{v×w} ↦ χ_v ⊠ χ_w`.
    pub phi: AlgebraMap,
}

/// Builds `X(E×F)`, `X(E) ⊠ X(F)` and `φ`.
pub fn graph_product(
    e: &DirectedGraph,
    action: &GraphAction,
    f: &DirectedGraph,
    labeling: &EdgeLabeling,
    tol: Tolerance,
) -> Result<GraphProduct> {
    let product = skew_product(e, action, f, labeling)?;
    let skew = graph_correspondence(&product);
    let xe = graph_correspondence(e);
    let xf = graph_correspondence(f);
    let twisted = twisted_correspondence(&xe, &graph_action_lift(e, action)?, &xf, &labeling_grading(f, labeling)?, tol)?;
    let ta = twisted.algebra();
    let chi = |alg: &MatrixAlgebra, v: usize| alg.ambient().unit(v, 0, 0);
    let mut cols = vec![CVec::zeros(ta.dim()); skew.coeff().dim()];
    for v in 0..e.num_vertices() {
        for w in 0..f.num_vertices() {
            cols[product_vertex(f, v, w)] = ta.coords(&ta.elementary(&chi(ta.a(), v), &chi(ta.b(), w)));
        }
    }
    let phi = AlgebraMap {
        source: skew.coeff().clone(),
        target: ta.concrete().clone(),
        matrix: linalg::columns_to_matrix(ta.dim(), &cols),
    };
    Ok(GraphProduct { product, skew, twisted, phi })
}

impl GraphProduct {
    /// Image of `χ_{e×f}`, namely `χ_e ⊠ χ_f`.
    pub fn image(&self, e: usize, f: usize) -> CVec {
        let (de, df) = (self.twisted.x().dim(), self.twisted.y().dim());
        self.twisted.tensor(&linalg::unit_vec(de, e), &linalg::unit_vec(df, f))
    }

    /// Certifies `χ_{e×f} ↦ χ_e ⊠ χ_f` over `φ`.
    pub fn verify_isomorphism(&self, f: &DirectedGraph, tol: Tolerance) -> Report {
        let d = self.skew.dim();
        let (ne, nf) = (self.twisted.x().dim(), f.num_edges());
        let x0: Vec<CVec> = (0..d).map(|i| linalg::unit_vec(d, i)).collect();
        let mut images = vec![CVec::zeros(self.twisted.dim()); d];
        for e in 0..ne {
            for g in 0..nf {
                images[product_edge(f, e, g)] = self.image(e, g);
            }
        }
        let gens = GeneratingSystem { a0: self.skew.coeff().basis().to_vec(), x0, b0: self.skew.coeff().basis().to_vec() };
        verify_correspondence_isomorphism(&self.skew, self.twisted.correspondence(), &self.phi, &self.phi, &gens, &images, tol)
    }

    /// `J_{X(E×F)}` against `J_{X(E)} ⊠ J_{X(F)}` inside the twisted algebra.
    pub fn verify_ideal_compatibility(&self, e: &DirectedGraph, f: &DirectedGraph, tol: Tolerance) -> Report {
        let t = tol.get();
        let ta = self.twisted.algebra();
        let lhs: Vec<CVec> = graph_katsura_ideal(&self.product).basis.iter().map(|j| self.phi.apply(j).to_vec()).collect();
        let (je, jf) = (graph_katsura_ideal(e), graph_katsura_ideal(f));
        let chi = |alg: &MatrixAlgebra, v: usize| alg.ambient().unit(v, 0, 0);
        let rhs: Vec<CVec> = je
            .vertices
            .iter()
            .flat_map(|&v| jf.vertices.iter().map(move |&w| (v, w)))
            .map(|(v, w)| ta.elementary(&chi(ta.a(), v), &chi(ta.b(), w)).to_vec())
            .collect();
        let (dl, dr) = (linalg::span_dim(&lhs, t), linalg::span_dim(&rhs, t));
        let mut both = lhs.clone();
        both.extend(rhs);
        let du = linalg::span_dim(&both, t);
        let mut rep = Report::new("ideal compatibility");
        rep.witness(format!("dim J(ExF) = {dl}, dim J(E) x J(F) = {dr}"));
        rep.flag("J_X(ExF) = J_X(E) x J_X(F)", dl == dr && dr == du);
        rep.absorb(katsura_agreement(&self.product, tol));
        rep
    }
}

/// Certifies `X(E×F) ≅ X(E) ⊠ X(F)`.
pub fn verify_graph_product_isomorphism(
    e: &DirectedGraph,
    action: &GraphAction,
    f: &DirectedGraph,
    labeling: &EdgeLabeling,
    tol: Tolerance,
) -> Report {
    match graph_product(e, action, f, labeling, tol) {
        Ok(p) => p.verify_isomorphism(f, tol),
        Err(err) => {
            let mut rep = Report::new("correspondence isomorphism");
            rep.witness(err.to_string());
            rep.flag("inputs accepted", false);
            rep
        }
    }
}

/// `J_{X(E×F)} = J_{X(E)} ⊠ J_{X(F)}`.
pub fn ideal_compatibility_check(
    e: &DirectedGraph,
    action: &GraphAction,
    f: &DirectedGraph,
    labeling: &EdgeLabeling,
    tol: Tolerance,
) -> Report {
    match graph_product(e, action, f, labeling, tol) {
        Ok(p) => p.verify_ideal_compatibility(e, f, tol),
        Err(err) => {
            let mut rep = Report::new("ideal compatibility");
            rep.witness(err.to_string());
            rep.flag("inputs accepted", false);
            rep
        }
    }
}
