use crate::error::{Error, Result};
use crate::fdalg::{verify_action, verify_grading, AlgAction, AlgGrading, FiniteGroup};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::module::Correspondence;

/// An action `(γ, α)` of a finite group on a correspondence over one algebra.
#[derive(Debug, Clone)]
pub struct CorrAction {
    alpha: AlgAction,
    gamma: Vec<CMat>,
}

impl CorrAction {
    pub fn new(alpha: AlgAction, gamma: Vec<CMat>) -> Result<Self> {
        if gamma.len() != alpha.group().order() {
            return Err(Error::ShapeMismatch("one module map per group element".into()));
        }
        Ok(CorrAction { alpha, gamma })
    }

    /// `γ_s = id`, `α_s = id`.
    pub fn trivial(group: FiniteGroup, c: &Correspondence) -> Self {
        let d = c.dim();
        CorrAction {
            gamma: vec![CMat::identity(d, d); group.order()],
            alpha: AlgAction::trivial(group, c.coeff().clone()),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.alpha.group()
    }

    pub fn alpha(&self) -> &AlgAction {
        &self.alpha
    }

    pub fn gamma(&self, s: usize) -> &CMat {
        &self.gamma[s]
    }

    pub fn apply(&self, s: usize, x: &CVec) -> CVec {
        &self.gamma[s] * x
    }
}

/// Module, inner-product and left-action compatibility plus the homomorphism law.
pub fn verify_corr_action(c: &Correspondence, act: &CorrAction, tol: Tolerance) -> Report {
    let mut rep = Report::new("correspondence action");
    rep.absorb(verify_action(&act.alpha, tol));
    let g = act.group();
    let d = c.dim();
    let alg = c.coeff();
    if !c.is_over_itself() || act.alpha.algebra() != alg || act.gamma.iter().any(|m| m.shape() != (d, d)) {
        rep.flag("action data matches the correspondence", false);
        return rep;
    }
    let (mut right, mut inner, mut left, mut hom): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut invertible = true;
    for s in g.elements() {
        let gs = &act.gamma[s];
        for b in alg.basis() {
            let ab = act.alpha.apply(s, b);
            right = right.max(linalg::max_abs(&(gs * c.module().right_matrix(b) - c.module().right_matrix(&ab) * gs)));
            left = left.max(linalg::max_abs(&(gs * c.phi(b) - c.phi(&ab) * gs)));
        }
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (c.module().basis_vector(i), c.module().basis_vector(j));
                let lhs = c.inner(&(gs * &x), &(gs * &y));
                inner = inner.max(lhs.dist(&act.alpha.apply(s, &c.inner(&x, &y))));
            }
        }
        for t in g.elements() {
            hom = hom.max(linalg::max_abs(&(gs * &act.gamma[t] - &act.gamma[g.mul(s, t)])));
        }
        if linalg::rank(gs, tol.get()) != d {
            invertible = false;
        }
    }
    let ident = linalg::max_abs(&(&act.gamma[g.identity()] - CMat::identity(d, d)));
    rep.residual("gamma_s(x a) = gamma_s(x) alpha_s(a)", right, tol)
        .residual("<gamma_s x, gamma_s y> = alpha_s(<x,y>)", inner, tol)
        .residual("gamma_s(a x) = alpha_s(a) gamma_s(x)", left, tol)
        .residual("gamma_s gamma_t = gamma_st", hom, tol)
        .residual("gamma_e = id", ident, tol)
        .flag("gamma_s invertible", invertible);
    rep
}

/// A grading `X = ⊕ X_s` compatible with a grading of the coefficient algebra.
#[derive(Debug, Clone)]
pub struct CorrGrading {
    coeff: AlgGrading,
    components: Vec<Vec<CVec>>,
    ranges: Vec<CMat>,
}

impl CorrGrading {
    /// Components given as `(degree, basis)`.
    pub fn new(coeff: AlgGrading, parts: Vec<(usize, Vec<CVec>)>) -> Result<Self> {
        let n = coeff.group().order();
        let mut components = vec![Vec::new(); n];
        for (s, vs) in parts {
            if s >= n {
                return Err(Error::ShapeMismatch(format!("degree {s} outside the group")));
            }
            components[s].extend(vs);
        }
        let ranges = components
            .iter()
            .map(|vs| {
                let dim = vs.first().map_or(0, |v: &CVec| v.len());
                linalg::range_basis(&linalg::columns_to_matrix(dim, vs), 1e-12)
            })
            .collect();
        Ok(CorrGrading { coeff, components, ranges })
    }

    /// Everything in degree `e`, coefficient algebra trivially graded.
    pub fn trivial(group: FiniteGroup, c: &Correspondence) -> Self {
        let coeff = AlgGrading::trivial(group.clone(), c.coeff().clone());
        let basis = (0..c.dim()).map(|i| c.module().basis_vector(i)).collect();
        CorrGrading::new(coeff, vec![(group.identity(), basis)]).expect("identity degree")
    }

    pub fn group(&self) -> &FiniteGroup {
        self.coeff.group()
    }

    pub fn coeff(&self) -> &AlgGrading {
        &self.coeff
    }

    pub fn component(&self, s: usize) -> &[CVec] {
        &self.components[s]
    }

    /// Concatenated component bases with their degrees.
    pub fn homogeneous_basis(&self) -> Vec<(usize, CVec)> {
        self.group()
            .elements()
            .flat_map(|s| self.components[s].iter().map(move |v| (s, v.clone())))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.homogeneous_basis().into_iter().map(|(s, _)| s).collect()
    }

    /// Distance from `x` to `X_s`.
    pub fn residual_in(&self, s: usize, x: &CVec) -> f64 {
        if self.ranges[s].nrows() == 0 {
            return x.norm();
        }
        linalg::distance_to_span(&self.ranges[s], x)
    }

    /// Degree of a nonzero homogeneous vector.
    pub fn degree_of(&self, x: &CVec, tol: f64) -> Option<usize> {
        if x.norm() <= tol {
            return None;
        }
        self.group().elements().find(|&s| self.residual_in(s, x) <= tol)
    }

    /// Change-of-basis matrix onto the homogeneous basis.
    pub fn basis_matrix(&self, dim: usize) -> CMat {
        let cols: Vec<CVec> = self.homogeneous_basis().into_iter().map(|(_, v)| v).collect();
        linalg::columns_to_matrix(dim, &cols)
    }

    /// The correspondence rewritten in the homogeneous module basis and homogeneous coefficient basis,
    /// with this grading moved along.
    pub fn graded_correspondence(&self, c: &Correspondence, tol: f64) -> Result<(Correspondence, CorrGrading)> {
        let p = self.basis_matrix(c.dim());
        let alg = self.coeff.graded_algebra(tol)?;
        let rebased = c.change_basis(&p, tol)?.with_coeff(alg.clone())?;
        let rebased = if c.is_over_itself() { rebased.with_left(alg.clone())? } else { rebased };
        let mut parts = Vec::new();
        let mut k = 0;
        for s in self.group().elements() {
            let n = self.components[s].len();
            parts.push((s, (k..k + n).map(|i| linalg::unit_vec(c.dim(), i)).collect()));
            k += n;
        }
        let grading = CorrGrading::new(self.coeff.with_algebra(alg)?, parts)?;
        Ok((rebased, grading))
    }
}

/// `X_s·A_t ⊆ X_{st}`, `⟨X_s, X_t⟩ ⊆ A_{s⁻¹t}`, `A_s·X_t ⊆ X_{st}`, and the components span `X`.
pub fn verify_corr_grading(c: &Correspondence, grad: &CorrGrading, tol: Tolerance) -> Report {
    let mut rep = Report::new("correspondence grading");
    rep.absorb(verify_grading(&grad.coeff, tol));
    let g = grad.group();
    let hx = grad.homogeneous_basis();
    let ha = grad.coeff.homogeneous_basis();
    let vecs: Vec<CVec> = hx.iter().map(|(_, v)| v.clone()).collect();
    let independent = linalg::span_dim(&vecs, tol.get());
    let direct = independent == hx.len() && hx.len() == c.dim();
    if !direct {
        rep.witness(format!("{} homogeneous vectors span {} of {} dimensions", hx.len(), independent, c.dim()));
    }
    let same_alg = grad.coeff.algebra() == c.coeff() || grad.coeff.algebra().ambient() == c.coeff().ambient();
    let (mut right, mut inner, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for (s, x) in &hx {
        for (t, a) in &ha {
            let st = g.mul(*s, *t);
            let r = grad.residual_in(st, &c.right_mul(x, a));
            if r > tol.get() && right <= tol.get() {
                rep.witness(format!("X_{} A_{} leaves X_{}", g.label(*s), g.label(*t), g.label(st)));
            }
            right = right.max(r);
            if c.is_over_itself() {
                let ts = g.mul(*t, *s);
                let r = grad.residual_in(ts, &c.left_mul(a, x));
                if r > tol.get() && left <= tol.get() {
                    rep.witness(format!("A_{} X_{} leaves X_{}", g.label(*t), g.label(*s), g.label(ts)));
                }
                left = left.max(r);
            }
        }
        for (t, y) in &hx {
            let deg = g.mul(g.inv(*s), *t);
            let r = grad.coeff.residual_in(deg, &c.inner(x, y));
            if r > tol.get() && inner <= tol.get() {
                rep.witness(format!("<X_{}, X_{}> leaves A_{}", g.label(*s), g.label(*t), g.label(deg)));
            }
            inner = inner.max(r);
        }
    }
    rep.flag("coefficient grading matches the module", same_alg)
        .flag("direct sum spanning the module", direct)
        .residual("X_s A_t in X_st", right, tol)
        .residual("<X_s, X_t> in A_(s^-1 t)", inner, tol)
        .residual("A_s X_t in X_st", left, tol);
    rep
}
