use crate::error::{Error, Result};
use crate::fdalg::{AlgAction, AlgElement, AlgGrading, FiniteGroup};
use crate::hilbmod::{katsura_ideal, theta, CorrAction, CorrGrading, Correspondence};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};
use crate::twist::{twisted_algebra, twisted_correspondence, TwistedAlgebra, TwistedCorrespondence};

use super::rep::{cp_covariance_defect, ToeplitzRep, Validity};

/// `ψ_X ⊠ ψ_Y` and `π_X ⊠ π_Y` on `X ⊠ Y`, valued in `C ⊠ D`.
#[derive(Debug, Clone)]
pub struct ProductRep {
    rep_x: ToeplitzRep,
    rep_y: ToeplitzRep,
    corr: TwistedCorrespondence,
    target: TwistedAlgebra,
    rep: ToeplitzRep,
    /// Homogeneous basis of `Y` in its original coordinates, as columns.
    y_basis: CMat,
}

fn require_full(rep: &ToeplitzRep, which: &str) -> Result<()> {
    match rep.validity() {
        Validity::Full => Ok(()),
        Validity::Truncated { level, .. } => {
            Err(Error::precondition(format!("{which} is a genuine Toeplitz representation"), format!("truncated at level {level}")))
        }
    }
}

fn check_small(what: &str, residual: f64, tol: Tolerance) -> Result<()> {
    if tol.accepts(residual) {
        Ok(())
    } else {
        Err(Error::precondition(what, format!("residual {residual:.3e}")))
    }
}

/// Builds the product representation.
///
/// `gamma_c` acts on the whole target of `rep_x` and `sigma_d` grades the whole target of `rep_y`;
/// `ψ_X, π_X` must be equivariant and `ψ_Y, π_Y` must preserve degrees.
pub fn product_representation(
    rep_x: &ToeplitzRep,
    x_action: &CorrAction,
    gamma_c: &AlgAction,
    rep_y: &ToeplitzRep,
    y_grading: &CorrGrading,
    sigma_d: &AlgGrading,
    tol: Tolerance,
) -> Result<ProductRep> {
    require_full(rep_x, "the X representation")?;
    require_full(rep_y, "the Y representation")?;
    let (x, y) = (rep_x.correspondence(), rep_y.correspondence());
    let g = x_action.group();

    let mut equi = 0.0f64;
    for s in g.elements() {
        for k in 0..x.dim() {
            let e = linalg::unit_vec(x.dim(), k);
            equi = equi.max(rep_x.psi(&x_action.apply(s, &e)).dist(&gamma_c.apply(s, &rep_x.psi(&e))));
        }
        for a in x.coeff().basis() {
            equi = equi.max(rep_x.pi(&x_action.alpha().apply(s, a)).dist(&gamma_c.apply(s, &rep_x.pi(a))));
        }
    }
    check_small("psi_X and pi_X intertwine the actions", equi, tol)?;

    let mut graded = 0.0f64;
    for (s, v) in y_grading.homogeneous_basis() {
        graded = graded.max(sigma_d.residual_in(s, &rep_y.psi(&v)));
    }
    for (s, b) in y_grading.coeff().homogeneous_basis() {
        graded = graded.max(sigma_d.residual_in(s, &rep_y.pi(&b)));
    }
    check_small("psi_Y and pi_Y preserve degrees", graded, tol)?;

    let corr = twisted_correspondence(x, x_action, y, y_grading, tol)?;
    let target = twisted_algebra(gamma_c, sigma_d, tol)?;
    let y_basis = y_grading.basis_matrix(y.dim());
    let dy = y.dim();
    let mut psi = Vec::with_capacity(corr.dim());
    for k in 0..x.dim() {
        let px = rep_x.psi(&linalg::unit_vec(x.dim(), k));
        for l in 0..dy {
            let yl: CVec = y_basis.column(l).into_owned();
            psi.push(target.elementary(&px, &rep_y.psi(&yl)));
        }
    }
    let ab = corr.algebra();
    let mut pi = Vec::with_capacity(ab.dim());
    for a in ab.a().basis() {
        for b in ab.b().basis() {
            pi.push(target.elementary(&rep_x.pi(a), &rep_y.pi(b)));
        }
    }
    let rep = ToeplitzRep::new(corr.correspondence().clone(), target.concrete().ambient().clone(), psi, pi, Validity::Full, 1)?;
    Ok(ProductRep { rep_x: rep_x.clone(), rep_y: rep_y.clone(), corr, target, rep, y_basis })
}

impl ProductRep {
    pub fn rep(&self) -> &ToeplitzRep {
        &self.rep
    }

    pub fn x_rep(&self) -> &ToeplitzRep {
        &self.rep_x
    }

    pub fn y_rep(&self) -> &ToeplitzRep {
        &self.rep_y
    }

    pub fn correspondence(&self) -> &TwistedCorrespondence {
        &self.corr
    }

    pub fn target(&self) -> &TwistedAlgebra {
        &self.target
    }

    fn group(&self) -> &FiniteGroup {
        self.corr.algebra().group()
    }

    /// `x ⊠ y` in the module coordinates of `X ⊠ Y`, with `y` in the original coordinates of `Y`.
    pub fn tensor(&self, x: &CVec, y: &CVec) -> CVec {
        self.corr.tensor(x, y)
    }

    /// `k(S ⊠ T) = Σ_u Sγ_u ⊗ T_u`, where `T_u` is the part of `T` raising degrees by `u`.
    ///
    /// `S` acts on `X`, `T` on `Y` in its original coordinates.
    pub fn operator_tensor(&self, s: &CMat, t: &CMat) -> CMat {
        let y_in = self.y_basis.clone().try_inverse().expect("homogeneous basis is invertible");
        let th = &y_in * t * &self.y_basis;
        let degs = self.corr.y_degrees();
        let g = self.group();
        let n = degs.len();
        let mut out = CMat::zeros(s.nrows() * n, s.ncols() * n);
        for u in g.elements() {
            let mut tu = CMat::zeros(n, n);
            for l in 0..n {
                for l2 in 0..n {
                    if degs[l] == g.mul(u, degs[l2]) {
                        tu[(l, l2)] = th[(l, l2)];
                    }
                }
            }
            if tu.iter().any(|c| c.norm() > 0.0) {
                out += linalg::kron(&(s * self.corr.action().gamma(u)), &tu);
            }
        }
        out
    }

    /// Degree of a homogeneous vector of `Y` in original coordinates.
    fn y_degree(&self, y: &CVec, tol: f64) -> Result<usize> {
        let grading = self.corr.grading();
        let yh = self.corr.y_coords(y);
        grading.degree_of(&yh, tol).ok_or_else(|| Error::precondition("homogeneous vector of Y", format!("norm {:.3e}", y.norm())))
    }

    fn b_degree(&self, b: &AlgElement, tol: f64) -> Result<usize> {
        self.corr
            .grading()
            .coeff()
            .degree_of(b, tol)
            .ok_or_else(|| Error::precondition("homogeneous element of B", format!("norm {:.3e}", b.norm())))
    }
}

/// `ψ⁽¹⁾(k(S ⊠ T)) = ψ_X⁽¹⁾(S) ⊠ ψ_Y⁽¹⁾(T)` for operators on `X` and `Y`,
/// and the rank-one form `Θ_{x⊠y, γ_{ts⁻¹}(x')⊠y'}` for homogeneous `y ∈ Y_s`, `y' ∈ Y_t`.
pub fn compacts_product_check(
    p: &ProductRep,
    s_op: &CMat,
    t_op: &CMat,
    thetas: &[(CVec, CVec, CVec, CVec)],
    tol: Tolerance,
) -> Result<Report> {
    let k = p.operator_tensor(s_op, t_op);
    let lhs = p.rep.psi_paren_operator(1, &k, tol)?;
    let rhs = p.target.elementary(&p.rep_x.psi_paren_operator(1, s_op, tol)?, &p.rep_y.psi_paren_operator(1, t_op, tol)?);
    let mut rep = Report::new("compacts of the product");
    rep.residual("psi(k(S x T)) = psi_X(S) x psi_Y(T)", lhs.dist(&rhs), tol);

    let g = p.group().clone();
    let (xm, ym) = (p.corr.x().module(), p.rep_y.correspondence().module());
    let mut rank_one = 0.0f64;
    let mut operator = 0.0f64;
    for (x, x2, y, y2) in thetas {
        let s = p.y_degree(y, tol.get())?;
        let t = p.y_degree(y2, tol.get())?;
        let twisted = p.corr.action().apply(g.mul(t, g.inv(s)), x2);
        let l = &p.rep.psi(&p.tensor(x, y)) * &p.rep.psi(&p.tensor(&twisted, y2)).adjoint();
        let r = p.target.elementary(&(&p.rep_x.psi(x) * &p.rep_x.psi(x2).adjoint()), &(&p.rep_y.psi(y) * &p.rep_y.psi(y2).adjoint()));
        rank_one = rank_one.max(l.dist(&r));
        let th = theta(p.corr.correspondence().module(), &p.tensor(x, y), &p.tensor(&twisted, y2)).matrix;
        let kk = p.operator_tensor(&theta(xm, x, x2).matrix, &theta(ym, y, y2).matrix);
        operator = operator.max(linalg::max_abs(&(&th - &kk)));
    }
    if !thetas.is_empty() {
        rep.residual("psi(x(x)y)psi(g_ts^-1(x')(x)y')* = psi_X(x)psi_X(x')* x psi_Y(y)psi_Y(y')*", rank_one, tol)
            .residual("theta of twisted pair = k(theta x theta)", operator, tol);
    }
    Ok(rep)
}

/// Covariance of the product on `J_X ⊠ J_Y`, given covariant factors and `J_{X⊠Y} = J_X ⊠ J_Y`.
pub fn cp_product_check(p: &ProductRep, tol: Tolerance) -> Result<Report> {
    let (x, y) = (p.rep_x.correspondence(), p.rep_y.correspondence());
    let jx = katsura_ideal(x, tol).basis;
    let jy = katsura_ideal(y, tol).basis;
    let dx = cp_covariance_defect(&p.rep_x, &jx, tol)?;
    check_small("the X representation is covariant", dx, tol)?;
    let dy = cp_covariance_defect(&p.rep_y, &jy, tol)?;
    check_small("the Y representation is covariant", dy, tol)?;

    let jxy = katsura_ideal(p.corr.correspondence(), tol).basis;
    let prod: Vec<AlgElement> = jx.iter().flat_map(|a| jy.iter().map(move |b| (a, b))).map(|(a, b)| p.corr.elementary(a, b)).collect();
    let t = tol.get();
    let dim = p.corr.algebra().concrete().ambient().dim();
    let basis_of = |v: &[AlgElement]| {
        let cols: Vec<CVec> = v.iter().map(AlgElement::to_vec).collect();
        linalg::range_basis(&linalg::columns_to_matrix(dim, &cols), t)
    };
    let (q1, q2) = (basis_of(&jxy), basis_of(&prod));
    let gap = jxy.iter().map(|a| linalg::distance_to_span(&q2, &a.to_vec())).chain(prod.iter().map(|a| linalg::distance_to_span(&q1, &a.to_vec()))).fold(0.0, f64::max);
    if q1.ncols() != q2.ncols() || !tol.accepts(gap) {
        return Err(Error::precondition(
            "J of the product equals J_X x J_Y",
            format!("dimensions {} and {}, gap {gap:.3e}", q1.ncols(), q2.ncols()),
        ));
    }
    let defect = cp_covariance_defect(&p.rep, &prod, tol)?;
    let mut rep = Report::new("covariance of the product");
    rep.witness(format!("dim J = {}", prod.len()));
    rep.residual("factor X covariant", dx, tol)
        .residual("factor Y covariant", dy, tol)
        .residual("J of product = J_X x J_Y", gap, tol)
        .residual("psi^(1)(phi(c)) = pi(c) on J_X x J_Y", defect, tol);
    Ok(rep)
}

/// An element of a tensor power: a coefficient-algebra element at level zero or a word of vectors.
#[derive(Debug, Clone)]
pub enum LevelElement {
    Coeff(AlgElement),
    Word(Vec<CVec>),
}

impl LevelElement {
    pub fn level(&self) -> usize {
        match self {
            LevelElement::Coeff(_) => 0,
            LevelElement::Word(w) => w.len(),
        }
    }

    fn eval(&self, rep: &ToeplitzRep) -> AlgElement {
        match self {
            LevelElement::Coeff(a) => rep.pi(a),
            LevelElement::Word(w) => rep.psi_word(w),
        }
    }

    /// `ξ·a`, acting on the last factor.
    fn times(&self, c: &Correspondence, a: &AlgElement) -> LevelElement {
        match self {
            LevelElement::Coeff(b) => LevelElement::Coeff(b * a),
            LevelElement::Word(w) if w.is_empty() => LevelElement::Coeff(a.clone()),
            LevelElement::Word(w) => {
                let mut w = w.clone();
                let last = w.len() - 1;
                w[last] = c.right_mul(&w[last], a);
                LevelElement::Word(w)
            }
        }
    }
}

/// Data for the spanning-element factorization with `m = n + l`, `l ∈ {0, 1}`.
///
/// The spanning element is `ψ^{n+1}(x ⊠ y)ψ^n(x' ⊠ y')*` with `x = x₀a`, `x' = x'₀a'`,
/// `y = y⁽¹⁾ ⊗ y⁽²⁾` and `y' = y'⁽¹⁾ ⊗ y'⁽²⁾`; `y⁽¹⁾` has `n+1` factors, `y'⁽¹⁾` has `n`,
/// and `y⁽²⁾, y'⁽²⁾` live at level `l`. All `Y` data must be homogeneous.
#[derive(Debug, Clone)]
pub struct GeneratorData {
    pub x0: Vec<CVec>,
    pub a: AlgElement,
    pub x0p: LevelElement,
    pub ap: AlgElement,
    pub y1: Vec<CVec>,
    pub y2: LevelElement,
    pub y1p: LevelElement,
    pub y2p: LevelElement,
}

impl ProductRep {
    fn level_degree(&self, e: &LevelElement, tol: f64) -> Result<usize> {
        let g = self.group();
        match e {
            LevelElement::Coeff(b) => self.b_degree(b, tol),
            LevelElement::Word(w) => w.iter().try_fold(g.identity(), |acc, y| Ok(g.mul(acc, self.y_degree(y, tol)?))),
        }
    }

    /// `(ψ_X^{n+1}(x)ψ_X^n(x')*) ⊠ (ψ_Y^{m+1}(y)ψ_Y^m(y')*)`, the element being factorized.
    pub fn spanning_element(&self, data: &GeneratorData) -> AlgElement {
        let x = self.rep_x.correspondence();
        let xw = LevelElement::Word(data.x0.clone()).times(x, &data.a);
        let xpw = data.x0p.times(x, &data.ap);
        let ry = &self.rep_y.psi_word(&data.y1) * &data.y2.eval(&self.rep_y);
        let ryp = &data.y1p.eval(&self.rep_y) * &data.y2p.eval(&self.rep_y);
        self.target.elementary(&(&xw.eval(&self.rep_x) * &xpw.eval(&self.rep_x).adjoint()), &(&ry * &ryp.adjoint()))
    }

    /// `ψ` of the word `w_i = γ_{(s_1⋯s_{i−1})⁻¹}(x_i) ⊠ y_i`, which realizes `x ⊠ y` at level `|x|`.
    fn product_word(&self, xs: &[CVec], ys: &[CVec], tol: f64) -> Result<AlgElement> {
        let g = self.group();
        let mut prefix = g.identity();
        let mut acc = self.rep.target().one();
        for (x, y) in xs.iter().zip(ys) {
            let xt = self.corr.action().apply(g.inv(prefix), x);
            acc = &acc * &self.rep.psi(&self.tensor(&xt, y));
            prefix = g.mul(prefix, self.y_degree(y, tol)?);
        }
        Ok(acc)
    }
}

/// Verifies the chain of identities writing a spanning element of the product as
/// `ψ^{n+1}(x₀ ⊠ y⁽¹⁾) · middle · ψ^n(γ_{ts⁻¹}(x'₀) ⊠ y'⁽¹⁾)*`,
/// where the middle factor is `π(c' ⊠ y⁽²⁾y'⁽²⁾*)` for `l = 0` and
/// `ψ⁽¹⁾(k(φ_X(c') ⊠ Θ_{y⁽²⁾,y'⁽²⁾}))` for `l = 1`, with `c' = α_{s₁⁻¹}(a)α_{s₂s⁻¹}(a')*`.
pub fn generator_factorization_check(p: &ProductRep, data: &GeneratorData, tol: Tolerance) -> Result<Report> {
    let t = tol.get();
    let n = data.x0.len().checked_sub(1).ok_or_else(|| Error::precondition("x0 has at least one factor", "empty word"))?;
    if data.y1.len() != n + 1 || data.x0p.level() != n || data.y1p.level() != n {
        return Err(Error::ShapeMismatch(format!("x0, y1 need {} factors and x0', y1' need {n}", n + 1)));
    }
    let l = data.y2.level();
    if data.y2p.level() != l {
        return Err(Error::ShapeMismatch("y2 and y2' must sit at the same level".into()));
    }
    if l > 1 {
        return Err(Error::precondition("m - n in {0, 1}", format!("m - n = {l}")));
    }
    let x = p.rep_x.correspondence();
    let ideal = katsura_ideal(x, tol).basis;
    let jspan = x.coeff().ambient().dim();
    let q = linalg::range_basis(&linalg::columns_to_matrix(jspan, &ideal.iter().map(AlgElement::to_vec).collect::<Vec<_>>()), t);
    let outside = [&data.a, &data.ap].iter().map(|a| linalg::distance_to_span(&q, &a.to_vec())).fold(0.0, f64::max);
    check_small("a and a' lie in J_X", outside, tol)?;

    let g = p.group().clone();
    let s1 = data.y1.iter().try_fold(g.identity(), |acc, y| Ok::<_, Error>(g.mul(acc, p.y_degree(y, t)?)))?;
    let s2 = p.level_degree(&data.y2, t)?;
    let t1 = p.level_degree(&data.y1p, t)?;
    let t2 = p.level_degree(&data.y2p, t)?;
    let (s, tt) = (g.mul(s1, s2), g.mul(t1, t2));

    let lhs = p.spanning_element(data);

    let coeff = x.coeff();
    let act = p.corr.action();
    let c = &act.alpha().apply(g.inv(s1), &data.a) * &act.alpha().apply(g.mul(s2, g.inv(s)), &data.ap).adjoint();
    check_small("c' lies in A", coeff.residual(&c), tol)?;
    let first = p.product_word(&data.x0, &data.y1, t)?;
    let middle = match (&data.y2, &data.y2p) {
        (LevelElement::Coeff(b), LevelElement::Coeff(bp)) => p.rep.pi(&p.corr.elementary(&c, &(b * &bp.adjoint()))),
        (LevelElement::Word(w), LevelElement::Word(wp)) => {
            let th = theta(p.rep_y.correspondence().module(), &w[0], &wp[0]).matrix;
            p.rep.psi_paren_operator(1, &p.operator_tensor(&x.phi(&c), &th), tol)?
        }
        _ => unreachable!("levels checked above"),
    };
    let shift = g.mul(tt, g.inv(s));
    let last = match &data.x0p {
        LevelElement::Coeff(a0) => p.rep.pi(&p.corr.elementary(&act.alpha().apply(shift, a0), match &data.y1p {
            LevelElement::Coeff(b) => b,
            LevelElement::Word(_) => unreachable!("levels checked above"),
        })),
        LevelElement::Word(w) => {
            let moved: Vec<CVec> = w.iter().map(|v| act.apply(shift, v)).collect();
            let LevelElement::Word(yw) = &data.y1p else { unreachable!("levels checked above") };
            p.product_word(&moved, yw, t)?
        }
    };
    let rhs = &(&first * &middle) * &last.adjoint();

    let identification = first.dist(&p.target.elementary(&p.rep_x.psi_word(&data.x0), &p.rep_y.psi_word(&data.y1)));
    let mut rep = Report::new(format!("generator factorization n={n}, m={}", n + l));
    rep.witness(format!("degrees s1={}, s2={}, t1={}, t2={}", g.label(s1), g.label(s2), g.label(t1), g.label(t2)));
    rep.residual("word realizes x0 (x) y1", identification, tol).residual("spanning element factorizes", lhs.dist(&rhs), tol);
    Ok(rep)
}
