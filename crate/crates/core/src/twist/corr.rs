use crate::error::{Error, Result};
use crate::fdalg::{AlgAction, AlgElement, AlgGrading, FiniteGroup};
use crate::hilbmod::{
    linking_algebra, lookup, theta, verify_corr_action, verify_corr_grading, CorrAction, CorrGrading, Correspondence,
    GeneratingSystem, HilbertModule, LinkingAlgebra, Lookup,
};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::algebra::{require, same_group, twisted_algebra, TwistedAlgebra};

/// `X ⊠ Y` for a correspondence `X` over `A` with an action and a graded correspondence `Y` over `B`.
///
/// The module space is `X ⊗ Y` with basis `x_k ⊗ y_l` at index `k·dim Y + l`, where the `y_l`
/// form the homogeneous basis of `Y`; the coefficient and left algebra is the concrete `A ⊠ B`.
#[derive(Debug, Clone)]
pub struct TwistedCorrespondence {
    algebra: TwistedAlgebra,
    corr: Correspondence,
    x: Correspondence,
    action: CorrAction,
    y: Correspondence,
    grading: CorrGrading,
    /// Original coordinates of `Y` to homogeneous coordinates.
    y_in: CMat,
    y_degrees: Vec<usize>,
}

/// Builds `X ⊠ Y` from the displayed structure maps.
pub fn twisted_correspondence(
    x: &Correspondence,
    action: &CorrAction,
    y: &Correspondence,
    grading: &CorrGrading,
    tol: Tolerance,
) -> Result<TwistedCorrespondence> {
    same_group(action.group(), grading.group())?;
    require(verify_corr_action(x, action, tol))?;
    require(verify_corr_grading(y, grading, tol))?;
    let t = tol.get();
    let p = grading.basis_matrix(y.dim());
    let y_in = p.clone().try_inverse().ok_or_else(|| Error::Verification("homogeneous basis is singular".into()))?;
    let (y, grading) = grading.graded_correspondence(y, t)?;
    let algebra = twisted_algebra(action.alpha(), grading.coeff(), tol)?;
    let y_degrees = grading.degrees();
    let g = algebra.group().clone();
    let (dx, dy) = (x.dim(), y.dim());
    let (a, b) = (algebra.a().basis().to_vec(), algebra.b().basis().to_vec());
    let proj = |l: usize| linalg::matrix_unit(dy, l, l);

    let mut right = Vec::with_capacity(algebra.dim());
    let mut phi = Vec::with_capacity(algebra.dim());
    for ai in &a {
        for (j, bj) in b.iter().enumerate() {
            let yr = y.module().right_matrix(bj);
            let mut r = CMat::zeros(dx * dy, dx * dy);
            for (l, &tl) in y_degrees.iter().enumerate() {
                let xr = x.module().right_matrix(&action.alpha().apply(tl, ai));
                r += linalg::kron(&xr, &(&yr * proj(l)));
            }
            right.push(r);
            let s = algebra.degrees()[j];
            phi.push(linalg::kron(&(x.phi(ai) * action.gamma(s)), &y.phi(bj)));
        }
    }
    let mut gram = Vec::with_capacity(dx * dx * dy * dy);
    for k in 0..dx {
        for (l, &tl) in y_degrees.iter().enumerate() {
            for k2 in 0..dx {
                for l2 in 0..dy {
                    let ax = action.alpha().apply(g.inv(tl), x.module().gram_entry(k, k2));
                    gram.push(algebra.elementary(&ax, y.module().gram_entry(l, l2)));
                }
            }
        }
    }
    let module = HilbertModule::new(algebra.concrete().clone(), dx * dy, right, gram)?;
    let corr = Correspondence::new(algebra.concrete().clone(), module, phi)?;
    Ok(TwistedCorrespondence { algebra, corr, x: x.clone(), action: action.clone(), y, grading, y_in, y_degrees })
}

impl TwistedCorrespondence {
    pub fn algebra(&self) -> &TwistedAlgebra {
        &self.algebra
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.corr
    }

    pub fn x(&self) -> &Correspondence {
        &self.x
    }

    pub fn action(&self) -> &CorrAction {
        &self.action
    }

    /// `Y` in its homogeneous basis.
    pub fn y(&self) -> &Correspondence {
        &self.y
    }

    /// Grading of `Y` in its homogeneous basis.
    pub fn grading(&self) -> &CorrGrading {
        &self.grading
    }

    pub fn y_degrees(&self) -> &[usize] {
        &self.y_degrees
    }

    pub fn dim(&self) -> usize {
        self.corr.dim()
    }

    /// Homogeneous coordinates of a vector given in the original coordinates of `Y`.
    pub fn y_coords(&self, y: &CVec) -> CVec {
        &self.y_in * y
    }

    /// `x ⊠ y`, with `y` in the original coordinates of `Y`.
    pub fn tensor(&self, x: &CVec, y: &CVec) -> CVec {
        linalg::kron_vec(x, &self.y_coords(y))
    }

    /// `x ⊠ y`, with `y` in homogeneous coordinates.
    pub fn tensor_graded(&self, x: &CVec, y: &CVec) -> CVec {
        linalg::kron_vec(x, y)
    }

    /// `a ⊠ b`.
    pub fn elementary(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        self.algebra.elementary(a, b)
    }

    /// Right action, inner product and left action against the displayed formulas on homogeneous
    /// generators, with one inhomogeneous second factor where the formula allows it.
    pub fn verify_formulas(&self, tol: Tolerance) -> Report {
        let g = self.algebra.group();
        let alpha = self.action.alpha();
        let (dx, dy) = (self.x.dim(), self.y.dim());
        let a = self.algebra.a().basis();
        let b = self.algebra.b().basis();
        let mut b_samples = b.to_vec();
        if b.len() > 1 {
            b_samples.push(b.iter().skip(1).fold(b[0].clone(), |acc, v| &acc + v));
        }
        let y_all = CVec::from_element(dy, linalg::re(1.0));
        let (mut right, mut inner, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for k in 0..dx {
            let x = self.x.module().basis_vector(k);
            for (l, &s) in self.y_degrees.iter().enumerate() {
                let ys = self.y.module().basis_vector(l);
                let xi = self.tensor_graded(&x, &ys);
                for ai in a {
                    for bj in &b_samples {
                        let lhs = self.corr.right_mul(&xi, &self.elementary(ai, bj));
                        let rhs = self.tensor_graded(
                            &self.x.right_mul(&x, &alpha.apply(s, ai)),
                            &self.y.right_mul(&ys, bj),
                        );
                        right = right.max(linalg::max_abs_vec(&(lhs - rhs)));
                    }
                }
                for k2 in 0..dx {
                    let x2 = self.x.module().basis_vector(k2);
                    for y2 in (0..dy).map(|l2| self.y.module().basis_vector(l2)).chain(std::iter::once(y_all.clone())) {
                        let lhs = self.corr.inner(&xi, &self.tensor_graded(&x2, &y2));
                        let rhs = self.elementary(&alpha.apply(g.inv(s), &self.x.inner(&x, &x2)), &self.y.inner(&ys, &y2));
                        inner = inner.max(lhs.dist(&rhs));
                    }
                }
            }
            for (j, bj) in b.iter().enumerate() {
                let s = self.algebra.degrees()[j];
                for ai in a {
                    for y in (0..dy).map(|l| self.y.module().basis_vector(l)).chain(std::iter::once(y_all.clone())) {
                        let lhs = self.corr.left_mul(&self.elementary(ai, bj), &self.tensor_graded(&x, &y));
                        let rhs = self.tensor_graded(&self.x.left_mul(ai, &self.action.apply(s, &x)), &self.y.left_mul(bj, &y));
                        left = left.max(linalg::max_abs_vec(&(lhs - rhs)));
                    }
                }
            }
        }
        let mut rep = Report::new("twisted correspondence formulas");
        rep.residual("(x x y_s)(a x b) = x alpha_s(a) x y_s b", right, tol)
            .residual("<x x y_s, x' x y> = alpha_(s^-1)(<x,x'>) x <y_s,y>", inner, tol)
            .residual("(a x b_s)(x x y) = a gamma_s(x) x b_s y", left, tol);
        rep
    }

    /// Correspondence axioms, the displayed formulas, and the corner model.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("twisted correspondence");
        rep.absorb(self.corr.module().verify(tol));
        rep.absorb(self.corr.verify(tol));
        rep.absorb(self.verify_formulas(tol));
        match self.corner_model(tol) {
            Ok(model) => {
                rep.absorb(model.verify(self, tol));
            }
            Err(e) => {
                rep.witness(e.to_string());
                rep.flag("corner model built", false);
            }
        }
        rep
    }

    /// `ι_{L(X)}(X)·ι_{L(Y)}(Y)` inside `L(X) ⊠ L(Y)`.
    pub fn corner_model(&self, tol: Tolerance) -> Result<CornerModel> {
        let t = tol.get();
        let lx = linking_algebra(self.x.module(), t);
        let ly = linking_algebra(self.y.module(), t);
        let action = linking_action(&lx, &self.action, t)?;
        let grading = linking_grading(&ly, &self.grading, t)?;
        let algebra = twisted_algebra(&action, &grading, tol)?;
        Ok(CornerModel { lx, ly, algebra })
    }

    /// Dimensions of `𝒦(X⊠Y)` and of `𝒦(X) ⊠ 𝒦(Y)`.
    pub fn compacts_dims(&self, tol: f64) -> (usize, usize) {
        (compacts_dim(self.corr.module(), tol), compacts_dim(self.x.module(), tol) * compacts_dim(self.y.module(), tol))
    }
}

/// Dimension of the span of the rank-one operators.
pub fn compacts_dim(m: &HilbertModule, tol: f64) -> usize {
    let d = m.dim();
    let mut vecs = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            vecs.push(linalg::vec_of(&theta(m, &m.basis_vector(i), &m.basis_vector(j)).matrix));
        }
    }
    linalg::span_dim(&vecs, tol)
}

/// The action on `L(X)` by conjugation with `V_s ⊕ U_s`, where `V_s E(x) = E(γ_s x) U_s`.
fn linking_action(lx: &LinkingAlgebra, act: &CorrAction, tol: f64) -> Result<AlgAction> {
    let real = lx.realization();
    let (r, n) = (real.space_dim, real.rep_dim);
    let d = real.ops.len();
    let g = act.group();
    let mut unitaries = Vec::with_capacity(g.order());
    for s in g.elements() {
        let u = act.alpha().unitary(s);
        let mut lhs = CMat::zeros(r, n * d);
        let mut rhs = CMat::zeros(r, n * d);
        for (j, e) in real.ops.iter().enumerate() {
            lhs.view_mut((0, j * n), (r, n)).copy_from(e);
            let image = real.embed(&act.apply(s, &linalg::unit_vec(d, j))) * &u;
            rhs.view_mut((0, j * n), (r, n)).copy_from(&image);
        }
        let v = &rhs * linalg::pinv(&lhs, tol);
        let resid = linalg::max_abs(&(&v * &lhs - &rhs));
        if resid > tol.max(1e-9) * 10.0 {
            return Err(Error::Verification(format!("action does not lift to the linking algebra ({resid:.3e})")));
        }
        let mut w = CMat::zeros(r + n, r + n);
        w.view_mut((0, 0), (r, r)).copy_from(&v);
        w.view_mut((r, r), (n, n)).copy_from(&u);
        unitaries.push(w);
    }
    AlgAction::inner(g.clone(), lx.algebra.clone(), unitaries)
}

/// Grading of `L(Y)` spanned by `ι(y_s)`, `ι(y_s)*`, `ι(y_s)ι(y_t)*` and `ι(b_s)`.
fn linking_grading(ly: &LinkingAlgebra, grad: &CorrGrading, tol: f64) -> Result<AlgGrading> {
    let g = grad.group();
    let hy: Vec<(usize, AlgElement)> = grad.homogeneous_basis().into_iter().map(|(s, y)| (s, ly.x(&y))).collect();
    let mut spanning: Vec<Vec<AlgElement>> = vec![Vec::new(); g.order()];
    for (s, e) in &hy {
        spanning[*s].push(e.clone());
        spanning[g.inv(*s)].push(e.adjoint());
        for (t, f) in &hy {
            spanning[g.mul(*s, g.inv(*t))].push(e * &f.adjoint());
        }
    }
    for (s, b) in grad.coeff().homogeneous_basis() {
        spanning[s].push(ly.b(&b));
    }
    let parts = spanning
        .into_iter()
        .enumerate()
        .map(|(s, els)| {
            let vecs: Vec<CVec> = els.iter().map(|e| e.to_vec()).collect();
            let keep = linalg::greedy_independent(&vecs, tol);
            (s, keep.into_iter().map(|i| els[i].clone()).collect())
        })
        .collect();
    AlgGrading::new(g.clone(), ly.algebra.clone(), parts)
}

/// `L(X) ⊠ L(Y)` with the embeddings of `X ⊠ Y` and `A ⊠ B` into it.
#[derive(Debug, Clone)]
pub struct CornerModel {
    pub lx: LinkingAlgebra,
    pub ly: LinkingAlgebra,
    pub algebra: TwistedAlgebra,
}

impl CornerModel {
    /// `ι(x)ι(y)` for module coordinates of `X ⊠ Y`.
    pub fn embed(&self, tc: &TwistedCorrespondence, xi: &CVec) -> AlgElement {
        let dy = tc.y.dim();
        let mut out = self.algebra.concrete().zero();
        for (p, c) in xi.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let (k, l) = (p / dy, p % dy);
            let x = self.lx.x(&tc.x.module().basis_vector(k));
            let y = self.ly.x(&tc.y.module().basis_vector(l));
            out = &out + &self.algebra.elementary(&x, &y).scale(*c);
        }
        out
    }

    /// Image of a coefficient `a ⊠ b` in the lower corner.
    pub fn coeff(&self, tc: &TwistedCorrespondence, c: &AlgElement) -> AlgElement {
        self.lift(tc, c, |lx, a| lx.b(a), |ly, b| ly.b(b))
    }

    /// Image of a left coefficient `a ⊠ b` acting through `φ` in the upper corner.
    pub fn left(&self, tc: &TwistedCorrespondence, c: &AlgElement, tol: f64) -> AlgElement {
        self.lift(tc, c, |lx, a| lx.compact(&tc.x.phi(a), tol), |ly, b| ly.compact(&tc.y.phi(b), tol))
    }

    fn lift(
        &self,
        tc: &TwistedCorrespondence,
        c: &AlgElement,
        fa: impl Fn(&LinkingAlgebra, &AlgElement) -> AlgElement,
        fb: impl Fn(&LinkingAlgebra, &AlgElement) -> AlgElement,
    ) -> AlgElement {
        let coords = tc.algebra.coords(c);
        let nb = tc.algebra.b().dim();
        let mut out = self.algebra.concrete().zero();
        for (p, v) in coords.iter().enumerate() {
            if v.norm() == 0.0 {
                continue;
            }
            let a = fa(&self.lx, &tc.algebra.a().basis()[p / nb]);
            let b = fb(&self.ly, &tc.algebra.b().basis()[p % nb]);
            out = &out + &self.algebra.elementary(&a, &b).scale(*v);
        }
        out
    }

    /// The module structure of `X ⊠ Y` agrees with multiplication in `L(X) ⊠ L(Y)`, the corner
    /// is a faithful copy of `X ⊗ Y`, and `𝒦(X⊠Y)` matches `𝒦(X) ⊠ 𝒦(Y)`.
    pub fn verify(&self, tc: &TwistedCorrespondence, tol: Tolerance) -> Report {
        let t = tol.get();
        let mut rep = Report::new("corner model");
        rep.absorb(self.lx.verify(tol));
        rep.absorb(self.ly.verify(tol));
        let d = tc.dim();
        let basis: Vec<CVec> = (0..d).map(|i| linalg::unit_vec(d, i)).collect();
        let images: Vec<AlgElement> = basis.iter().map(|xi| self.embed(tc, xi)).collect();
        let coeff_basis = tc.algebra.concrete().basis();
        let (mut inner, mut right, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for (i, xi) in basis.iter().enumerate() {
            for (j, eta) in basis.iter().enumerate() {
                let lhs = &images[i].adjoint() * &images[j];
                inner = inner.max(lhs.dist(&self.coeff(tc, &tc.corr.inner(xi, eta))));
            }
            for c in coeff_basis {
                let lhs = &images[i] * &self.coeff(tc, c);
                right = right.max(lhs.dist(&self.embed(tc, &tc.corr.right_mul(xi, c))));
                let lhs = &self.left(tc, c, t) * &images[i];
                left = left.max(lhs.dist(&self.embed(tc, &tc.corr.left_mul(c, xi))));
            }
        }
        let vecs: Vec<CVec> = images.iter().map(|e| e.to_vec()).collect();
        let faithful = linalg::span_dim(&vecs, t) == d;

        // ι(ξ)ι(η)* against 𝒦(X) ⊠ 𝒦(Y) = span{ι(θ_x)ι(θ_y)}.
        let mut rank_one = Vec::new();
        for a in &images {
            for b in &images {
                rank_one.push((a * &b.adjoint()).to_vec());
            }
        }
        let mut elementary = Vec::new();
        let (mx, my) = (tc.x.module(), tc.y.module());
        let thetas = |m: &HilbertModule, l: &LinkingAlgebra| -> Vec<AlgElement> {
            let d = m.dim();
            let mut out = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    out.push(l.compact(&theta(m, &m.basis_vector(i), &m.basis_vector(j)).matrix, t));
                }
            }
            out
        };
        let (tx, ty) = (thetas(mx, &self.lx), thetas(my, &self.ly));
        for a in &tx {
            for b in &ty {
                elementary.push(self.algebra.elementary(a, b).to_vec());
            }
        }
        let dk = linalg::span_dim(&rank_one, t);
        let de = linalg::span_dim(&elementary, t);
        let mut both = rank_one.clone();
        both.extend(elementary);
        let du = linalg::span_dim(&both, t);
        let (dk_abs, dprod) = tc.compacts_dims(t);
        rep.residual("iota(xi)* iota(eta) = <xi, eta>", inner, tol)
            .residual("iota(xi) iota(c) = iota(xi c)", right, tol)
            .residual("iota(phi(c)) iota(xi) = iota(c xi)", left, tol)
            .flag("corner is a faithful copy of X (x) Y", faithful)
            .flag("K(X x Y) = K(X) x K(Y) in L(X) x L(Y)", dk == de && de == du)
            .flag("dim K(X x Y) = dim K(X) * dim K(Y)", dk_abs == dprod && dk_abs == dk);
        rep
    }
}

/// Elementary tensors of generators, after checking `γ`-stability of `X⁰`, `α`-stability of
/// `A⁰` and homogeneity of `Y⁰`, `B⁰`.
pub fn twisted_generating_system(
    tc: &TwistedCorrespondence,
    x_gens: &GeneratingSystem,
    y_gens: &GeneratingSystem,
    tol: Tolerance,
) -> Result<GeneratingSystem> {
    let t = tol.get();
    let g = tc.algebra.group();
    let alpha = tc.action.alpha();
    let stable_alg = |els: &[AlgElement], what: &str| -> Result<()> {
        let vecs: Vec<CVec> = els.iter().map(|a| a.to_vec()).collect();
        for s in g.elements() {
            for (i, a) in els.iter().enumerate() {
                if lookup(&vecs, &alpha.apply(s, a).to_vec(), t) == Lookup::Outside {
                    return Err(Error::precondition(
                        format!("{what} is not stable under the action"),
                        format!("alpha_{}({what}[{i}]) is not a multiple of a generator", g.label(s)),
                    ));
                }
            }
        }
        Ok(())
    };
    stable_alg(&x_gens.a0, "A0")?;
    stable_alg(&x_gens.b0, "B0 of X")?;
    for s in g.elements() {
        for (i, x) in x_gens.x0.iter().enumerate() {
            if lookup(&x_gens.x0, &tc.action.apply(s, x), t) == Lookup::Outside {
                return Err(Error::precondition(
                    "X0 is not stable under the action",
                    format!("gamma_{}(x0[{i}]) is not a multiple of a generator", g.label(s)),
                ));
            }
        }
    }
    let ys: Vec<CVec> = y_gens.x0.iter().map(|y| tc.y_coords(y)).collect();
    for (i, y) in ys.iter().enumerate() {
        if y.norm() > t && tc.grading.degree_of(y, t).is_none() {
            return Err(Error::precondition("Y0 is not homogeneous", format!("y0[{i}] has no degree")));
        }
    }
    let bg = tc.grading.coeff();
    for (what, els) in [("A0 of Y", &y_gens.a0), ("B0 of Y", &y_gens.b0)] {
        for (i, b) in els.iter().enumerate() {
            if !b.is_zero(t) && bg.degree_of(b, t).is_none() {
                return Err(Error::precondition(format!("{what} is not homogeneous"), format!("element {i} has no degree")));
            }
        }
    }
    let pairs = |l: &[AlgElement], r: &[AlgElement]| -> Vec<AlgElement> {
        l.iter().flat_map(|a| r.iter().map(move |b| tc.elementary(a, b))).collect()
    };
    Ok(GeneratingSystem {
        a0: pairs(&x_gens.a0, &y_gens.a0),
        x0: x_gens.x0.iter().flat_map(|x| ys.iter().map(move |y| linalg::kron_vec(x, y))).collect(),
        b0: pairs(&x_gens.b0, &y_gens.b0),
    })
}

/// A group's trivial data on a correspondence, for degenerate factors.
pub fn trivial_data(group: &FiniteGroup, c: &Correspondence) -> (CorrAction, CorrGrading) {
    (CorrAction::trivial(group.clone(), c), CorrGrading::trivial(group.clone(), c))
}
