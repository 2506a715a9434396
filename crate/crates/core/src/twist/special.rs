use crate::error::{Error, Result};
use crate::fdalg::{
    function_algebra, group_algebra, verify_action, AlgAction, AlgElement, AlgGrading, FDAlgebra, FiniteGroup,
    FunctionAlgebra, GroupAlgebra, MatrixAlgebra,
};
use crate::hilbmod::{
    verify_corr_grading, verify_correspondence_isomorphism, AlgebraMap, CorrAction, CorrGrading, Correspondence,
    GeneratingSystem, HilbertModule,
};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::algebra::{require, twisted_algebra, TwistedAlgebra};
use super::corr::{twisted_correspondence, TwistedCorrespondence};

fn sign(odd: bool) -> f64 {
    if odd {
        -1.0
    } else {
        1.0
    }
}

/// `X ⊗̂ Y` with Koszul signs next to `X ⊠ Y` built from the same data.
///
/// Both factors are rewritten in homogeneous bases; `A ⊗̂ B` is realized by
/// `a ⊗̂ b ↦ aΓ^{∂b} ⊗ b`, where `Γ` implements the parity automorphism of `A`.
#[derive(Debug, Clone)]
pub struct GradedTensorProduct {
    pub graded: Correspondence,
    pub twisted: TwistedCorrespondence,
    x_parity: Vec<bool>,
    y_parity: Vec<bool>,
    a_parity: Vec<bool>,
    b_parity: Vec<bool>,
    gamma: CMat,
}

/// Builds `X ⊗̂ Y` and `X ⊠ Y` for `ℤ₂`-graded correspondences; `parity` is the automorphism
/// `a ↦ (-1)^{∂a} a` of the coefficient algebra of `X`.
pub fn graded_tensor_product(
    x: &Correspondence,
    gx: &CorrGrading,
    parity: &AlgAction,
    y: &Correspondence,
    gy: &CorrGrading,
    tol: Tolerance,
) -> Result<GradedTensorProduct> {
    let t = tol.get();
    let z2 = FiniteGroup::cyclic(2)?;
    for g in [gx.group(), gy.group(), parity.group()] {
        if g.table() != z2.table() {
            return Err(Error::GroupMismatch(format!("graded tensor products need Z2, got a group of order {}", g.order())));
        }
    }
    require(verify_corr_grading(x, gx, tol))?;
    require(verify_corr_grading(y, gy, tol))?;
    require(verify_action(parity, tol))?;
    let (x, gx) = gx.graded_correspondence(x, t)?;
    let (y, gy) = gy.graded_correspondence(y, t)?;
    let a = x.coeff().clone();
    let parity = parity.restrict(a.clone())?;
    let a_parity: Vec<bool> = gx.coeff().degrees().iter().map(|&s| s == 1).collect();
    for (ai, &odd) in a.basis().iter().zip(&a_parity) {
        let r = parity.apply(1, ai).dist(&ai.scale(linalg::re(sign(odd))));
        if r > t {
            return Err(Error::Verification(format!("parity action disagrees with the grading ({r:.3e})")));
        }
    }
    let gamma = parity.unitary(1);
    let n = gamma.nrows();
    let inv = linalg::max_abs(&(&gamma * &gamma - CMat::identity(n, n)));
    if inv > t {
        return Err(Error::Verification(format!("parity unitary is not an involution ({inv:.3e})")));
    }
    let b = y.coeff().clone();
    let b_parity: Vec<bool> = gy.coeff().degrees().iter().map(|&s| s == 1).collect();
    let x_parity: Vec<bool> = gx.degrees().iter().map(|&s| s == 1).collect();
    let y_parity: Vec<bool> = gy.degrees().iter().map(|&s| s == 1).collect();

    let mn = FDAlgebra::matrices(n);
    let ambient = mn.tensor(b.ambient());
    let rho = |am: &CMat, bm: &AlgElement, odd: bool| -> AlgElement {
        let left = if odd { am * &gamma } else { am.clone() };
        mn.element(vec![left]).expect("square").kron(bm)
    };
    let mut basis = Vec::new();
    for ai in a.basis() {
        for (bj, &odd) in b.basis().iter().zip(&b_parity) {
            basis.push(rho(&ai.to_matrix(), bj, odd));
        }
    }
    let coeff = MatrixAlgebra::from_basis(ambient, basis, t * 1e-3)?;

    let (dx, dy) = (x.dim(), y.dim());
    let mut right = Vec::new();
    let mut phi = Vec::new();
    for (ai, &ao) in a.basis().iter().zip(&a_parity) {
        for (bj, &bo) in b.basis().iter().zip(&b_parity) {
            let mut r = CMat::zeros(dx * dy, dx * dy);
            let yr = y.module().right_matrix(bj);
            for (l, &yo) in y_parity.iter().enumerate() {
                r += linalg::kron(&x.module().right_matrix(ai), &(&yr * linalg::matrix_unit(dy, l, l))) * linalg::re(sign(yo && ao));
            }
            right.push(r);
            let mut p = CMat::zeros(dx * dy, dx * dy);
            for (k, &xo) in x_parity.iter().enumerate() {
                p += linalg::kron(&(x.phi(ai) * linalg::matrix_unit(dx, k, k)), &y.phi(bj)) * linalg::re(sign(bo && xo));
            }
            phi.push(p);
        }
    }
    let mut gram = Vec::new();
    for (k, &xo) in x_parity.iter().enumerate() {
        for (l, &yo) in y_parity.iter().enumerate() {
            for (k2, &xo2) in x_parity.iter().enumerate() {
                for (l2, &yo2) in y_parity.iter().enumerate() {
                    let s = sign(yo && (xo != xo2));
                    let v = rho(&x.module().gram_entry(k, k2).to_matrix(), y.module().gram_entry(l, l2), yo != yo2);
                    gram.push(v.scale(linalg::re(s)));
                }
            }
        }
    }
    let module = HilbertModule::new(coeff.clone(), dx * dy, right, gram)?;
    let graded = Correspondence::new(coeff, module, phi)?;

    let gamma_x = CMat::from_diagonal(&CVec::from_iterator(dx, x_parity.iter().map(|&o| linalg::re(sign(o)))));
    let act = CorrAction::new(parity, vec![CMat::identity(dx, dx), gamma_x])?;
    let twisted = twisted_correspondence(&x, &act, &y, &gy, tol)?;
    Ok(GradedTensorProduct { graded, twisted, x_parity, y_parity, a_parity, b_parity, gamma })
}

impl GradedTensorProduct {
    /// `ρ(a ⊗̂ b) = aΓ^{∂b} ⊗ b` for homogeneous `b`.
    fn rho(&self, a: &AlgElement, b: &AlgElement, odd: bool) -> AlgElement {
        let n = self.gamma.nrows();
        let m = if odd { a.to_matrix() * &self.gamma } else { a.to_matrix() };
        FDAlgebra::matrices(n).element(vec![m]).expect("square").kron(b)
    }

    pub fn parities(&self) -> (&[bool], &[bool], &[bool], &[bool]) {
        (&self.x_parity, &self.y_parity, &self.a_parity, &self.b_parity)
    }

    /// The Koszul inner product on all basis pairs; pairs with `∂y₁(∂x₁+∂x₂)` odd must carry `-1`.
    pub fn verify_koszul(&self, tol: Tolerance) -> Report {
        let x = self.twisted.x();
        let y = self.twisted.y();
        let (dx, dy) = (x.dim(), y.dim());
        let (mut formula, mut flipped, mut sign_pairs) = (0.0_f64, true, 0usize);
        for k in 0..dx {
            for l in 0..dy {
                let xi = linalg::kron_vec(&linalg::unit_vec(dx, k), &linalg::unit_vec(dy, l));
                for k2 in 0..dx {
                    for l2 in 0..dy {
                        let eta = linalg::kron_vec(&linalg::unit_vec(dx, k2), &linalg::unit_vec(dy, l2));
                        let unsigned = self.rho(
                            x.module().gram_entry(k, k2),
                            y.module().gram_entry(l, l2),
                            self.y_parity[l] != self.y_parity[l2],
                        );
                        let odd = self.y_parity[l] && (self.x_parity[k] != self.x_parity[k2]);
                        let got = self.graded.inner(&xi, &eta);
                        formula = formula.max(got.dist(&unsigned.scale(linalg::re(sign(odd)))));
                        if odd && !unsigned.is_zero(tol.get()) {
                            sign_pairs += 1;
                            flipped &= got.dist(&unsigned.scale(linalg::re(-1.0))) <= tol.get();
                        }
                    }
                }
            }
        }
        let mut rep = Report::new("koszul signs");
        rep.residual("<x1 y1, x2 y2> = (-1)^(dy1 (dx1 + dx2)) <x1,x2> <y1,y2>", formula, tol)
            .flag("sign-carrying pairs acquire -1", flipped);
        rep.witness(format!("{sign_pairs} nonzero pairs carry the sign -1"));
        rep
    }

    /// Certifies `x ⊗̂ y ↦ x ⊠ y` as a correspondence isomorphism.
    pub fn verify_isomorphism(&self, tol: Tolerance) -> Report {
        let src = &self.graded;
        let dst = self.twisted.correspondence();
        let phi = AlgebraMap {
            source: src.coeff().clone(),
            target: dst.coeff().clone(),
            matrix: CMat::identity(src.coeff().dim(), dst.coeff().dim()),
        };
        let d = src.dim();
        let units: Vec<CVec> = (0..d).map(|i| linalg::unit_vec(d, i)).collect();
        let gens = GeneratingSystem { a0: src.coeff().basis().to_vec(), x0: units.clone(), b0: src.coeff().basis().to_vec() };
        verify_correspondence_isomorphism(src, dst, &phi, &phi, &gens, &units, tol)
    }

    /// Correspondence axioms, Koszul signs and the isomorphism onto `X ⊠ Y`.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("graded tensor product");
        rep.absorb(self.graded.module().verify(tol));
        rep.absorb(self.graded.verify(tol));
        rep.absorb(self.verify_koszul(tol));
        rep.absorb(self.verify_isomorphism(tol));
        rep
    }
}

/// `X ⊠ C*(G)`, the crossed product of `X` by an action.
#[derive(Debug, Clone)]
pub struct ActionCrossed {
    pub corr: TwistedCorrespondence,
    pub group_algebra: GroupAlgebra,
}

/// `X ⊠ C*(G)` with the canonical grading of the group algebra.
pub fn crossed_by_action(x: &Correspondence, act: &crate::hilbmod::CorrAction, tol: Tolerance) -> Result<ActionCrossed> {
    let ga = group_algebra(act.group());
    let y = Correspondence::over_itself(&ga.algebra);
    let n = ga.group.order();
    let parts = ga.group.elements().map(|s| (s, vec![linalg::unit_vec(n, s)])).collect();
    let grading = CorrGrading::new(ga.grading.clone(), parts)?;
    let corr = twisted_correspondence(x, act, &y, &grading, tol)?;
    Ok(ActionCrossed { corr, group_algebra: ga })
}

impl ActionCrossed {
    /// `x ⊠ u_s`.
    pub fn generator(&self, x: &CVec, s: usize) -> CVec {
        self.corr.tensor(x, &linalg::unit_vec(self.group_algebra.group.order(), s))
    }

    /// `a ⊠ u_s`.
    pub fn coeff_generator(&self, a: &AlgElement, s: usize) -> AlgElement {
        self.corr.elementary(a, self.group_algebra.u(s))
    }

    /// The right action, inner product and left action on generators `x ⊠ u_s`.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let g = &self.group_algebra.group;
        let x = self.corr.x();
        let act = self.corr.action();
        let alpha = act.alpha();
        let c = self.corr.correspondence();
        let (mut right, mut inner, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for k in 0..x.dim() {
            let xk = x.module().basis_vector(k);
            for s in g.elements() {
                let xs = self.generator(&xk, s);
                for t in g.elements() {
                    let st = g.mul(s, t);
                    for a in x.coeff().basis() {
                        let lhs = c.right_mul(&xs, &self.coeff_generator(a, t));
                        let rhs = self.generator(&x.right_mul(&xk, &alpha.apply(s, a)), st);
                        right = right.max(linalg::max_abs_vec(&(lhs - rhs)));
                        let lhs = c.left_mul(&self.coeff_generator(a, s), &self.generator(&xk, t));
                        let rhs = self.generator(&x.left_mul(a, &act.apply(s, &xk)), st);
                        left = left.max(linalg::max_abs_vec(&(lhs - rhs)));
                    }
                    for k2 in 0..x.dim() {
                        let yk = x.module().basis_vector(k2);
                        let lhs = c.inner(&xs, &self.generator(&yk, t));
                        let rhs = self.coeff_generator(&alpha.apply(g.inv(s), &x.inner(&xk, &yk)), g.mul(g.inv(s), t));
                        inner = inner.max(lhs.dist(&rhs));
                    }
                }
            }
        }
        let mut rep = Report::new("crossed product by an action");
        rep.absorb(c.verify(tol));
        rep.residual("(x u_s)(a u_t) = x alpha_s(a) u_st", right, tol)
            .residual("<x u_s, y u_t> = alpha_(s^-1)(<x,y>) u_(s^-1 t)", inner, tol)
            .residual("(a u_s)(x u_t) = a gamma_s(x) u_st", left, tol);
        rep
    }
}

/// `c₀(G) ⊠ Y`, carrying the crossed product of `Y` by the coaction given by its grading.
///
/// The generator `j(y_s)j(f)` corresponds to `λ_s(f) ⊠ y_s`.
#[derive(Debug, Clone)]
pub struct CoactionCrossed {
    pub corr: TwistedCorrespondence,
    pub functions: FunctionAlgebra,
}

/// `c₀(G) ⊠ Y` with the translation action on `c₀(G)`.
pub fn crossed_by_coaction(y: &Correspondence, grading: &CorrGrading, tol: Tolerance) -> Result<CoactionCrossed> {
    let fa = function_algebra(grading.group());
    let x = Correspondence::over_itself(&fa.algebra);
    let gamma = fa.group.elements().map(|s| fa.translation.coord_matrix(s)).collect();
    let act = CorrAction::new(fa.translation.clone(), gamma)?;
    let corr = twisted_correspondence(&x, &act, y, grading, tol)?;
    Ok(CoactionCrossed { corr, functions: fa })
}

impl CoactionCrossed {
    /// `j(y)j(f)` for `y` of degree `s`, given in homogeneous coordinates.
    pub fn generator(&self, s: usize, y: &CVec, f: &AlgElement) -> CVec {
        let lf = self.functions.translation.apply(s, f);
        self.corr.tensor_graded(&self.functions.algebra.coords(&lf), y)
    }

    /// `j(b)j(f)` for `b` of degree `s`.
    pub fn coeff_generator(&self, s: usize, b: &AlgElement, f: &AlgElement) -> AlgElement {
        self.corr.elementary(&self.functions.translation.apply(s, f), b)
    }

    /// The right action, inner product and left action relations on generators.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let g = &self.functions.group;
        let lam = &self.functions.translation;
        let y = self.corr.y();
        let c = self.corr.correspondence();
        let ydeg = self.corr.y_degrees();
        let bdeg = self.corr.algebra().degrees();
        let b = self.corr.algebra().b().basis();
        let fs: Vec<&AlgElement> = g.elements().map(|h| self.functions.chi(h)).collect();
        let (mut right, mut inner, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for (l, &r) in ydeg.iter().enumerate() {
            let yr = y.module().basis_vector(l);
            for f in &fs {
                let gen = self.generator(r, &yr, f);
                for g2 in &fs {
                    for (j, bj) in b.iter().enumerate() {
                        let s = bdeg[j];
                        // (j(y_r)j(f))(j(b_s)j(g)) = j(y_r b_s) j(λ_{s⁻¹}(f)g)
                        let lhs = c.right_mul(&gen, &self.coeff_generator(s, bj, g2));
                        let h = &lam.apply(g.inv(s), f) * *g2;
                        let rhs = self.generator(g.mul(r, s), &y.right_mul(&yr, bj), &h);
                        right = right.max(linalg::max_abs_vec(&(lhs - rhs)));
                        // (j(b_s)j(f))(j(y_r)j(g)) = j(b_s y_r) j(λ_{r⁻¹}(f)g)
                        let lhs = c.left_mul(&self.coeff_generator(s, bj, f), &self.generator(r, &yr, g2));
                        let h = &lam.apply(g.inv(r), f) * *g2;
                        let rhs = self.generator(g.mul(s, r), &y.left_mul(bj, &yr), &h);
                        left = left.max(linalg::max_abs_vec(&(lhs - rhs)));
                    }
                    for (l2, &t) in ydeg.iter().enumerate() {
                        // ⟨j(y_r)j(f), j(y_t)j(g)⟩ = j(⟨y_r,y_t⟩) j(λ_{t⁻¹r}(f̄)g)
                        let yt = y.module().basis_vector(l2);
                        let lhs = c.inner(&gen, &self.generator(t, &yt, g2));
                        let h = &lam.apply(g.mul(g.inv(t), r), &f.adjoint()) * *g2;
                        let rhs = self.coeff_generator(g.mul(g.inv(r), t), &y.inner(&yr, &yt), &h);
                        inner = inner.max(lhs.dist(&rhs));
                    }
                }
            }
        }
        let mut rep = Report::new("crossed product by a coaction");
        rep.absorb(c.verify(tol));
        rep.residual("(y f)(b_s g) = y b_s lambda_(s^-1)(f) g", right, tol)
            .residual("<y_s f, y_t g> = <y_s,y_t> lambda_(t^-1 s)(f*) g", inner, tol)
            .residual("(b f)(y_s g) = b y_s lambda_(s^-1)(f) g", left, tol);
        rep
    }
}

/// The identification `σ₂₃: A ⊠ (B ⊗ C) → (A ⊗ C) ⊠ B`.
#[derive(Debug, Clone)]
pub struct FlipIsomorphism {
    pub source: TwistedAlgebra,
    pub target: TwistedAlgebra,
    pub map: AlgebraMap,
}

/// Builds `σ₂₃` on elementary tensors `a ⊠ (b ⊗ c) ↦ (a ⊗ c) ⊠ b`; `B ⊗ C` is graded by the
/// grading of `B` and `A ⊗ C` carries `α ⊗ id`.
pub fn flip_sigma23(alpha: &AlgAction, grading: &AlgGrading, c: &FDAlgebra, tol: Tolerance) -> Result<FlipIsomorphism> {
    let t = tol.get();
    let c = MatrixAlgebra::full(c.clone());
    let b = grading.graded_algebra(t)?;
    let grading = grading.with_algebra(b.clone())?;
    let bc = b.tensor(&c, t * 1e-3)?;
    let degrees = grading.degrees();
    let parts = b
        .basis()
        .iter()
        .zip(&degrees)
        .map(|(bj, &s)| (s, c.basis().iter().map(|ck| bj.kron(ck)).collect()))
        .collect();
    let grading_bc = AlgGrading::new(grading.group().clone(), bc, parts)?;
    let source = twisted_algebra(alpha, &grading_bc, tol)?;
    let target = twisted_algebra(&alpha.tensor_trivial(&c, t * 1e-3)?, &grading, tol)?;
    let (na, nb, nc) = (alpha.algebra().dim(), b.dim(), c.dim());
    let mut matrix = CMat::zeros(na * nb * nc, na * nb * nc);
    for i in 0..na {
        for j in 0..nb {
            for k in 0..nc {
                matrix[((i * nc + k) * nb + j, i * nb * nc + j * nc + k)] = linalg::re(1.0);
            }
        }
    }
    let map = AlgebraMap { source: source.concrete().clone(), target: target.concrete().clone(), matrix };
    Ok(FlipIsomorphism { source, target, map })
}

impl FlipIsomorphism {
    /// Multiplicative, star-preserving and bijective, plus agreement on elementary tensors
    /// computed independently in both concrete models.
    pub fn verify(&self, alpha: &AlgAction, c: &FDAlgebra, tol: Tolerance) -> Report {
        let mut rep = Report::new("sigma_23");
        rep.absorb(self.map.verify_isomorphism(tol));
        let c = MatrixAlgebra::full(c.clone());
        let mut worst: f64 = 0.0;
        for a in alpha.algebra().basis() {
            for bj in self.target.b().basis() {
                for ck in c.basis() {
                    let lhs = self.map.apply(&self.source.elementary(a, &bj.kron(ck)));
                    let rhs = self.target.elementary(&a.kron(ck), bj);
                    worst = worst.max(lhs.dist(&rhs));
                }
            }
        }
        rep.residual("sigma(a x (b (x) c)) = (a (x) c) x b", worst, tol);
        rep
    }
}
