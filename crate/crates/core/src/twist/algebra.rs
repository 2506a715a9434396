use crate::error::{Error, Result};
use crate::fdalg::{verify_action, verify_grading, AlgAction, AlgElement, AlgGrading, FDAlgebra, FiniteGroup, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec, C64};
use crate::report::{Report, Tolerance};

use super::heisenberg::{heisenberg_model, HeisenbergModel};

/// `A ⊠ B` for an action `α` on `A` and a grading of `B`.
///
/// Concrete model: the span of `i_A(a)i_B(b)` inside `A ⊗ B ⊗ M_{|G|}`, with
/// `i_A(a) = Σ_g α_{g⁻¹}(a) ⊗ 1 ⊗ m(χ_g)` and `i_B(b_s) = 1 ⊗ b_s ⊗ λ(s)`.
/// Abstract model: coordinates on `a_i ⊠ b_j` (homogeneous `b_j`) with the product and
/// adjoint `(a⊠b_s)(a'⊠b) = aα_s(a')⊠b_s b`, `(a⊠b_s)* = α_{s⁻¹}(a)*⊠b_s*`.
/// The concrete basis is `i_A(a_i)i_B(b_j)` in the same order, so both models share coordinates.
#[derive(Debug, Clone)]
pub struct TwistedAlgebra {
    alpha: AlgAction,
    grading: AlgGrading,
    degrees: Vec<usize>,
    heis: HeisenbergModel,
    concrete: MatrixAlgebra,
    i_a_basis: Vec<AlgElement>,
    i_b_basis: Vec<AlgElement>,
    alpha_coords: Vec<CMat>,
}

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a.table() != b.table() {
        return Err(Error::GroupMismatch(format!("groups of order {} and {} differ", a.order(), b.order())));
    }
    Ok(())
}

pub(crate) fn require(rep: Report) -> Result<()> {
    if rep.passed() {
        return Ok(());
    }
    let names: Vec<String> = rep.failures().map(|c| format!("{} ({:.3e})", c.name, c.residual)).collect();
    Err(Error::Verification(format!("{}: {}", rep.name, names.join(", "))))
}

/// Builds both models; fails on group mismatch or unverified inputs.
pub fn twisted_algebra(alpha: &AlgAction, grading: &AlgGrading, tol: Tolerance) -> Result<TwistedAlgebra> {
    same_group(alpha.group(), grading.group())?;
    require(verify_action(alpha, tol))?;
    require(verify_grading(grading, tol))?;
    let b = grading.graded_algebra(tol.get())?;
    let grading = grading.with_algebra(b)?;
    Ok(build(alpha.clone(), grading, tol.get()))
}

fn build(alpha: AlgAction, grading: AlgGrading, tol: f64) -> TwistedAlgebra {
    let g = alpha.group().clone();
    let heis = heisenberg_model(&g);
    let n = g.order();
    let mn = FDAlgebra::matrices(n);
    let a_amb = alpha.algebra().ambient().clone();
    let b_amb = grading.algebra().ambient().clone();
    let ambient = a_amb.tensor(&b_amb).tensor(&mn);
    let degrees = grading.degrees();
    let one_a = a_amb.one();
    let one_b = b_amb.one();
    let i_a = |a: &AlgElement| -> AlgElement {
        let mut out = ambient.zero();
        for h in g.elements() {
            let m = mn.element(vec![heis.m[h].clone()]).expect("square");
            out = &out + &alpha.apply(g.inv(h), a).kron(&one_b).kron(&m);
        }
        out
    };
    let i_a_basis: Vec<AlgElement> = alpha.algebra().basis().iter().map(i_a).collect();
    let i_b_basis: Vec<AlgElement> = grading
        .algebra()
        .basis()
        .iter()
        .zip(&degrees)
        .map(|(b, &s)| one_a.kron(b).kron(&mn.element(vec![heis.lambda[s].clone()]).expect("square")))
        .collect();
    let basis: Vec<AlgElement> = i_a_basis.iter().flat_map(|x| i_b_basis.iter().map(move |y| x * y)).collect();
    let concrete = MatrixAlgebra::from_basis(ambient, basis, tol * 1e-3).expect("elementary tensors are independent");
    let alpha_coords = g.elements().map(|s| alpha.coord_matrix(s)).collect();
    TwistedAlgebra { alpha, grading, degrees, heis, concrete, i_a_basis, i_b_basis, alpha_coords }
}

impl TwistedAlgebra {
    pub fn group(&self) -> &FiniteGroup {
        self.alpha.group()
    }

    pub fn alpha(&self) -> &AlgAction {
        &self.alpha
    }

    /// Grading of `B` over its homogeneous basis.
    pub fn grading(&self) -> &AlgGrading {
        &self.grading
    }

    pub fn a(&self) -> &MatrixAlgebra {
        self.alpha.algebra()
    }

    /// `B`, presented by its homogeneous basis.
    pub fn b(&self) -> &MatrixAlgebra {
        self.grading.algebra()
    }

    /// Degrees of the basis of `B`.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn heisenberg(&self) -> &HeisenbergModel {
        &self.heis
    }

    /// The concrete model; its basis is `a_i ⊠ b_j` at index `i·dim B + j`.
    pub fn concrete(&self) -> &MatrixAlgebra {
        &self.concrete
    }

    pub fn dim(&self) -> usize {
        self.concrete.dim()
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.b().dim() + j
    }

    /// `i_A(a)`.
    pub fn i_a(&self, a: &AlgElement) -> AlgElement {
        let c = self.a().coords(a);
        crate::fdalg::combination(&self.concrete.zero(), c.as_slice(), &self.i_a_basis)
    }

    /// `i_B(b)`, extended linearly from the homogeneous basis.
    pub fn i_b(&self, b: &AlgElement) -> AlgElement {
        let c = self.b().coords(b);
        crate::fdalg::combination(&self.concrete.zero(), c.as_slice(), &self.i_b_basis)
    }

    /// `a ⊠ b = i_A(a)i_B(b)`.
    pub fn elementary(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        &self.i_a(a) * &self.i_b(b)
    }

    /// Abstract coordinates of `a ⊠ b`.
    pub fn elementary_coords(&self, a: &AlgElement, b: &AlgElement) -> CVec {
        linalg::kron_vec(&self.a().coords(a), &self.b().coords(b))
    }

    /// Abstract product of basis elements `p` and `q`.
    pub fn abstract_basis_product(&self, p: usize, q: usize) -> CVec {
        let nb = self.b().dim();
        let (i, j) = (p / nb, p % nb);
        let (k, l) = (q / nb, q % nb);
        let s = self.degrees[j];
        let (a, b) = (self.a().basis(), self.b().basis());
        let ak = self.alpha.apply(s, &a[k]);
        linalg::kron_vec(&self.a().coords(&(&a[i] * &ak)), &self.b().coords(&(&b[j] * &b[l])))
    }

    /// Abstract product, bilinear extension of the product formula.
    pub fn abstract_product(&self, x: &CVec, y: &CVec) -> CVec {
        let mut out = CVec::zeros(self.dim());
        let zero = C64::new(0.0, 0.0);
        for (p, xp) in x.iter().enumerate() {
            if *xp == zero {
                continue;
            }
            for (q, yq) in y.iter().enumerate() {
                if *yq == zero {
                    continue;
                }
                out += self.abstract_basis_product(p, q) * (*xp * *yq);
            }
        }
        out
    }

    /// Abstract adjoint, conjugate-linear extension of the adjoint formula.
    pub fn abstract_star(&self, x: &CVec) -> CVec {
        let nb = self.b().dim();
        let mut out = CVec::zeros(self.dim());
        let (a, b) = (self.a().basis(), self.b().basis());
        for (p, xp) in x.iter().enumerate() {
            if *xp == C64::new(0.0, 0.0) {
                continue;
            }
            let (i, j) = (p / nb, p % nb);
            let s = self.degrees[j];
            let ai = self.alpha.apply(self.group().inv(s), &a[i]).adjoint();
            out += linalg::kron_vec(&self.a().coords(&ai), &self.b().coords(&b[j].adjoint())) * xp.conj();
        }
        out
    }

    /// Intertwiner from abstract coordinates to the concrete model.
    pub fn intertwine(&self, x: &CVec) -> AlgElement {
        self.concrete.element(x)
    }

    /// Abstract coordinates of a concrete element.
    pub fn coords(&self, d: &AlgElement) -> CVec {
        self.concrete.coords(d)
    }

    /// Matrix of `α_s` on the coordinates of `A`.
    pub fn alpha_coords(&self, s: usize) -> &CMat {
        &self.alpha_coords[s]
    }

    /// Product and adjoint formulas in the concrete model, over homogeneous generators.
    pub fn verify_formulas(&self, tol: Tolerance) -> Report {
        let (a, b) = (self.a().basis(), self.b().basis());
        let g = self.group();
        let mut b_samples: Vec<AlgElement> = b.to_vec();
        if b.len() > 1 {
            // One non-homogeneous second factor.
            b_samples.push(b.iter().skip(1).fold(b[0].clone(), |acc, x| &acc + x));
        }
        let (mut prod, mut star): (f64, f64) = (0.0, 0.0);
        for (j, bs) in b.iter().enumerate() {
            let s = self.degrees[j];
            for ai in a {
                let x = self.elementary(ai, bs);
                let rhs = self.elementary(&self.alpha.apply(g.inv(s), ai).adjoint(), &bs.adjoint());
                star = star.max(x.adjoint().dist(&rhs));
                for ak in a {
                    for bl in &b_samples {
                        let lhs = &x * &self.elementary(ak, bl);
                        let rhs = self.elementary(&(ai * &self.alpha.apply(s, ak)), &(bs * bl));
                        prod = prod.max(lhs.dist(&rhs));
                    }
                }
            }
        }
        let mut rep = Report::new("twisted product formulas");
        rep.residual("(a x b_s)(a' x b) = a alpha_s(a') x b_s b", prod, tol)
            .residual("(a x b_s)* = alpha_(s^-1)(a)* x b_s*", star, tol);
        rep
    }

    fn commutation(&self, inverse: bool) -> f64 {
        let g = self.group();
        let mut worst: f64 = 0.0;
        for (j, bs) in self.b().basis().iter().enumerate() {
            let s = self.degrees[j];
            let t = if inverse { g.inv(s) } else { s };
            let ib = self.i_b(bs);
            for a in self.a().basis() {
                let lhs = &ib * &self.i_a(a);
                let rhs = &self.i_a(&self.alpha.apply(t, a)) * &ib;
                worst = worst.max(lhs.dist(&rhs));
            }
        }
        worst
    }

    /// `i_B(b_s)i_A(a) = i_A(α_s(a))i_B(b_s)`: the commutation rule the product formula rests on.
    pub fn verify_commutation(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("commutation");
        rep.residual("i_B(b_s) i_A(a) = i_A(alpha_s(a)) i_B(b_s)", self.commutation(false), tol);
        rep
    }

    /// The same rule written with `α_{s⁻¹}`; it agrees with the product formula only when
    /// `α_s = α_{s⁻¹}` on the degrees that occur, for instance for `ℤ₂`.
    pub fn verify_inverse_commutation(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("commutation with inverse");
        rep.residual("i_B(b_s) i_A(a) = i_A(alpha_(s^-1)(a)) i_B(b_s)", self.commutation(true), tol);
        rep
    }

    /// Structure constants and adjoints of both models agree through the intertwiner.
    pub fn verify_models(&self, tol: Tolerance) -> Report {
        let n = self.dim();
        let (mut prod, mut star, mut closure): (f64, f64, f64) = (0.0, 0.0, 0.0);
        let basis = self.concrete.basis();
        for p in 0..n {
            let ep = linalg::unit_vec(n, p);
            let sp = self.abstract_star(&ep);
            star = star.max(self.intertwine(&sp).dist(&basis[p].adjoint()));
            for q in 0..n {
                let conc = &basis[p] * &basis[q];
                closure = closure.max(self.concrete.residual(&conc));
                let abs = self.abstract_basis_product(p, q);
                prod = prod.max(linalg::max_abs_vec(&(self.concrete.coords(&conc) - &abs)));
            }
        }
        let mut rep = Report::new("model equivalence");
        rep.residual("concrete model closed under products", closure, tol)
            .residual("structure constants agree", prod, tol)
            .residual("adjoints agree", star, tol);
        rep
    }

    /// Associativity of the abstract product on basis triples.
    pub fn verify_abstract_associativity(&self, tol: Tolerance) -> Report {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for p in 0..n {
            for q in 0..n {
                let pq = self.abstract_basis_product(p, q);
                for r in 0..n {
                    let er = linalg::unit_vec(n, r);
                    let left = self.abstract_product(&pq, &er);
                    let qr = self.abstract_basis_product(q, r);
                    let right = self.abstract_product(&linalg::unit_vec(n, p), &qr);
                    worst = worst.max(linalg::max_abs_vec(&(left - right)));
                }
            }
        }
        let mut rep = Report::new("abstract associativity");
        rep.residual("(xy)z = x(yz)", worst, tol);
        rep
    }
}
