use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fdalg::{AlgElement, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};
use crate::twist::TwistedAlgebra;

use super::grading::{DualGroup, DualGrading, Turn};

/// An elementary tensor `a ⊠ b` with `a ∈ A_χ`, `b ∈ B_ω`.
#[derive(Debug, Clone)]
pub struct Bihomogeneous {
    pub a_degree: i64,
    pub b_degree: i64,
    pub a: AlgElement,
    pub b: AlgElement,
    pub element: AlgElement,
}

/// `A ⊠_Z B = span{S_χ}` inside `A ⊠ B`, with `S_χ = {a ⊠ b : a ∈ A_χ, b ∈ B_χ}`.
#[derive(Debug, Clone)]
pub struct BalancedAlgebra {
    parent: TwistedAlgebra,
    ga: DualGrading,
    gb: DualGrading,
    bihomogeneous: Vec<Bihomogeneous>,
    /// Maps coordinates in the parent to coordinates in `bihomogeneous`.
    to_bihomogeneous: CMat,
    algebra: MatrixAlgebra,
}

fn same_space(what: &str, target: &MatrixAlgebra, g: &DualGrading, tol: f64) -> Result<()> {
    if g.algebra().ambient() != target.ambient() || g.algebra().dim() != target.dim() {
        return Err(Error::ShapeMismatch(format!("{what} grading is not on the factor of the twisted algebra")));
    }
    let r = g.algebra().basis().iter().map(|a| target.residual(a)).fold(0.0, f64::max);
    if r > tol {
        return Err(Error::NotInSpan { what: format!("{what} grading basis"), residual: r });
    }
    Ok(())
}

/// Collects the matched-degree elementary tensors of `T`.
pub fn balanced_subalgebra(t: &TwistedAlgebra, ga: &DualGrading, gb: &DualGrading, tol: Tolerance) -> Result<BalancedAlgebra> {
    if ga.group() != gb.group() {
        return Err(Error::GroupMismatch(format!("{:?} and {:?}", ga.group(), gb.group())));
    }
    same_space("A", t.a(), ga, tol.get())?;
    same_space("B", t.b(), gb, tol.get())?;
    let mut bihomogeneous = Vec::with_capacity(t.dim());
    for (ka, a) in ga.homogeneous_basis() {
        for (kb, b) in gb.homogeneous_basis() {
            bihomogeneous.push(Bihomogeneous {
                a_degree: *ka,
                b_degree: *kb,
                a: a.clone(),
                b: b.clone(),
                element: t.elementary(a, b),
            });
        }
    }
    let cols: Vec<CVec> = bihomogeneous.iter().map(|x| t.coords(&x.element)).collect();
    let to_bihomogeneous = linalg::columns_to_matrix(t.dim(), &cols)
        .try_inverse()
        .ok_or_else(|| Error::precondition("elementary tensors of homogeneous bases span", "singular change of basis"))?;
    let matched: Vec<AlgElement> =
        bihomogeneous.iter().filter(|x| x.a_degree == x.b_degree).map(|x| x.element.clone()).collect();
    let algebra = MatrixAlgebra::from_basis(t.concrete().ambient().clone(), matched, tol.get() * 1e-3)?;
    Ok(BalancedAlgebra { parent: t.clone(), ga: ga.clone(), gb: gb.clone(), bihomogeneous, to_bihomogeneous, algebra })
}

impl BalancedAlgebra {
    pub fn parent(&self) -> &TwistedAlgebra {
        &self.parent
    }

    pub fn a_grading(&self) -> &DualGrading {
        &self.ga
    }

    pub fn b_grading(&self) -> &DualGrading {
        &self.gb
    }

    pub fn group(&self) -> DualGroup {
        self.ga.group()
    }

    /// The balanced subalgebra with basis `S = ⋃ S_χ`.
    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Elementary tensors of the two homogeneous bases, matched or not.
    pub fn bihomogeneous(&self) -> &[Bihomogeneous] {
        &self.bihomogeneous
    }

    /// `S_χ` for each degree in the support of the balanced algebra.
    pub fn components(&self) -> BTreeMap<i64, Vec<&Bihomogeneous>> {
        let mut out: BTreeMap<i64, Vec<&Bihomogeneous>> = BTreeMap::new();
        for x in self.bihomogeneous.iter().filter(|x| x.a_degree == x.b_degree) {
            out.entry(x.a_degree).or_default().push(x);
        }
        out
    }

    /// Coefficients of `d` against the bihomogeneous elementary tensors.
    pub fn bihomogeneous_coords(&self, d: &AlgElement, tol: Tolerance) -> Result<CVec> {
        let r = self.parent.concrete().residual(d);
        if r > tol.get() {
            return Err(Error::NotInSpan { what: "element of the twisted algebra".into(), residual: r });
        }
        Ok(&self.to_bihomogeneous * self.parent.coords(d))
    }

    fn rescale(&self, d: &AlgElement, tol: Tolerance, weight: impl Fn(&Bihomogeneous) -> linalg::C64) -> Result<AlgElement> {
        let c = self.bihomogeneous_coords(d, tol)?;
        let zero = self.parent.concrete().zero();
        Ok(self.bihomogeneous.iter().zip(c.iter()).fold(zero, |acc, (x, k)| &acc + &x.element.scale(*k * weight(x))))
    }

    /// `λ_z = μ_z ⊠ ν_{z⁻¹}`: the phase `χ(z)ω(z)⁻¹` on bidegree `(χ, ω)`.
    pub fn lambda(&self, z: Turn, d: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
        let g = self.group();
        self.rescale(d, tol, |x| g.character(x.a_degree, z) * g.character(x.b_degree, z.inverse()))
    }

    /// `Υ`: keeps the matched-bidegree part.
    pub fn expectation(&self, d: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
        self.rescale(d, tol, |x| linalg::re(if x.a_degree == x.b_degree { 1.0 } else { 0.0 }))
    }

    /// Points of `Z` on which averaging `λ` is exact for these gradings.
    pub fn haar_points(&self) -> Vec<Turn> {
        self.group().haar_points(self.ga.max_degree().max(self.gb.max_degree()))
    }

    /// `∫_Z λ_z(d) dz`, evaluated as the uniform average over [`Self::haar_points`].
    pub fn average(&self, d: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
        let pts = self.haar_points();
        let mut acc = self.parent.concrete().zero();
        for z in &pts {
            acc = &acc + &self.lambda(*z, d, tol)?;
        }
        Ok(acc.scale(linalg::re(1.0 / pts.len() as f64)))
    }

    /// `γ_z`: the phase `χ(z)` on `S_χ`.
    pub fn gamma(&self, z: Turn, x: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
        let r = self.algebra.residual(x);
        if r > tol.get() {
            return Err(Error::NotInSpan { what: "element of the balanced algebra".into(), residual: r });
        }
        let g = self.group();
        self.rescale(x, tol, |b| g.character(b.a_degree, z))
    }

    /// Product and star closure, and the fixed-point description.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("balanced subalgebra");
        rep.absorb(self.algebra.verify_closure(tol));
        let pts = self.haar_points();
        let mut fixed = 0.0f64;
        let mut avg = 0.0f64;
        let mut idem = 0.0f64;
        let mut matched = 0.0f64;
        for x in &self.bihomogeneous {
            let d = &x.element;
            let (Ok(e), Ok(a)) = (self.expectation(d, tol), self.average(d, tol)) else {
                rep.flag("decomposition", false);
                return rep;
            };
            avg = avg.max(e.dist(&a));
            idem = idem.max(self.expectation(&e, tol).map_or(f64::INFINITY, |ee| ee.dist(&e)));
            let is_fixed = pts.iter().all(|z| self.lambda(*z, d, tol).is_ok_and(|l| l.dist(d) <= tol.get()));
            let is_matched = x.a_degree == x.b_degree;
            if is_fixed != is_matched {
                fixed = f64::INFINITY;
            }
            matched = matched.max(if is_matched { e.dist(d) } else { e.max_abs() });
        }
        rep.residual("expectation = Haar average", avg, tol);
        rep.residual("expectation idempotent", idem, tol);
        rep.residual("matched part kept, unmatched part killed", matched, tol);
        rep.residual("fixed by lambda iff matched", fixed, tol);
        rep
    }

    /// `Υ(x d y) = x Υ(d) y` for `x, y` in the balanced basis and `d` in the parent basis.
    pub fn verify_bimodule(&self, tol: Tolerance) -> Report {
        let mut worst = 0.0f64;
        for x in self.algebra.basis() {
            for y in self.algebra.basis() {
                for d in self.parent.concrete().basis() {
                    let lhs = self.expectation(&(&(x * d) * y), tol);
                    let rhs = self.expectation(d, tol).map(|e| &(x * &e) * y);
                    worst = worst.max(match (lhs, rhs) {
                        (Ok(l), Ok(r)) => l.dist(&r),
                        _ => f64::INFINITY,
                    });
                }
            }
        }
        let mut rep = Report::new("expectation bimodule property");
        rep.residual("E(xdy) = xE(d)y", worst, tol);
        rep
    }
}

/// `λ_z(d)`.
pub fn lambda_action(b: &BalancedAlgebra, z: Turn, d: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
    b.lambda(z, d, tol)
}

/// `Υ(d)`.
pub fn conditional_expectation(b: &BalancedAlgebra, d: &AlgElement, tol: Tolerance) -> Result<AlgElement> {
    b.expectation(d, tol)
}

/// Sample points for actions of the circle beyond the exact Haar grid.
fn sample_points(b: &BalancedAlgebra) -> Vec<Turn> {
    let mut pts = b.haar_points();
    if b.group() == DualGroup::Circle {
        pts.extend([Turn(0.137), Turn(0.5), Turn(0.7123)]);
    }
    pts
}

/// `γ = μ ⊠ id = id ⊠ ν` on `S`, the exchange identity `μ_z(a) ⊠ b = a ⊠ ν_z(b)`, and
/// `γ` being an action.
pub fn induced_action_check(b: &BalancedAlgebra, tol: Tolerance) -> Report {
    let t = b.parent();
    let pts = sample_points(b);
    let (mut left, mut right, mut exchange, mut comp) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for x in b.bihomogeneous().iter().filter(|x| x.a_degree == x.b_degree) {
        for &z in &pts {
            let mu_a = t.elementary(&b.a_grading().mu(z, &x.a), &x.b);
            let nu_b = t.elementary(&x.a, &b.b_grading().mu(z, &x.b));
            let Ok(g) = b.gamma(z, &x.element, tol) else {
                left = f64::INFINITY;
                continue;
            };
            left = left.max(g.dist(&mu_a));
            right = right.max(g.dist(&nu_b));
            exchange = exchange.max(mu_a.dist(&nu_b));
            for &w in &pts {
                let zw = b.gamma(z.compose(w), &x.element, tol);
                let gg = b.gamma(w, &x.element, tol).and_then(|gw| b.gamma(z, &gw, tol));
                comp = comp.max(match (zw, gg) {
                    (Ok(p), Ok(q)) => p.dist(&q),
                    _ => f64::INFINITY,
                });
            }
        }
    }
    let mut rep = Report::new("induced action");
    rep.residual("gamma = mu x id", left, tol)
        .residual("gamma = id x nu", right, tol)
        .residual("mu(a) x b = a x nu(b)", exchange, tol)
        .residual("gamma is an action", comp, tol);
    rep
}

/// Saturation of both factor gradings, and, when both hold, `span(S_χ S_ω) = S_{χω}`.
pub fn saturation_check(b: &BalancedAlgebra, tol: Tolerance) -> Report {
    let mut rep = Report::new("balanced saturation");
    let fa = b.a_grading().saturation(tol);
    let fb = b.b_grading().saturation(tol);
    let factors_ok = fa.passed() && fb.passed();
    let mut fa_named = Report::new("A");
    fa_named.absorb(fa);
    let mut fb_named = Report::new("B");
    fb_named.absorb(fb);
    rep.absorb(fa_named).absorb(fb_named);
    let t = tol.get();
    let comps = b.components();
    let g = b.group();
    let coords = |x: &AlgElement| x.to_vec();
    for (&k, sk) in &comps {
        for (&j, sj) in &comps {
            let prods: Vec<CVec> =
                sk.iter().flat_map(|x| sj.iter().map(move |y| coords(&(&x.element * &y.element)))).collect();
            let target: Vec<CVec> =
                comps.get(&g.add(k, j)).map(|v| v.iter().map(|x| coords(&x.element)).collect()).unwrap_or_default();
            let (dp, dt) = (linalg::span_dim(&prods, t), target.len());
            let mut both = prods;
            both.extend(target);
            let du = linalg::span_dim(&both, t);
            rep.witness(format!("dim span S_{k} S_{j} = {dp}, dim S_{} = {dt}", g.add(k, j)));
            if factors_ok {
                rep.flag(format!("S_{k} S_{j} = S_{}", g.add(k, j)), dp == dt && du == dt);
            }
        }
    }
    if !factors_ok {
        rep.witness("a factor grading is not saturated; conclusion not asserted");
    }
    rep
}
