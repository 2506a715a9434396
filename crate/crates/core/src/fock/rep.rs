use crate::error::{Error, Result};
use crate::fdalg::{AlgElement, FDAlgebra};
use crate::hilbmod::{compact_expansion, Correspondence};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::tensor::{defining_space, internal_tensor, tensor_powers, TensorPowers};

/// Where the Toeplitz identities are claimed to hold.
#[derive(Debug, Clone)]
pub enum Validity {
    Full,
    /// Truncated at `level`; `levels[m]` projects onto the `m`-th summand, `m = 0..=level`.
    Truncated { level: usize, levels: Vec<AlgElement> },
}

/// A linear map `ψ: X → C` and a homomorphism `π: A → C`, given on bases.
#[derive(Debug, Clone)]
pub struct ToeplitzRep {
    corr: Correspondence,
    target: FDAlgebra,
    psi: Vec<AlgElement>,
    pi: Vec<AlgElement>,
    validity: Validity,
    powers: TensorPowers,
}

impl ToeplitzRep {
    /// `psi[k] = ψ(e_k)` for the module basis, `pi[i] = π(a_i)` for the algebra basis.
    pub fn new(corr: Correspondence, target: FDAlgebra, psi: Vec<AlgElement>, pi: Vec<AlgElement>, validity: Validity, max_level: usize) -> Result<Self> {
        if psi.len() != corr.dim() || pi.len() != corr.coeff().dim() {
            return Err(Error::ShapeMismatch("one image per basis element".into()));
        }
        for z in psi.iter().chain(&pi) {
            target.check(z)?;
        }
        let powers = tensor_powers(&corr, max_level.max(1))?;
        Ok(ToeplitzRep { corr, target, psi, pi, validity, powers })
    }

    pub fn correspondence(&self) -> &Correspondence {
        &self.corr
    }

    pub fn target(&self) -> &FDAlgebra {
        &self.target
    }

    pub fn validity(&self) -> &Validity {
        &self.validity
    }

    pub fn powers(&self) -> &TensorPowers {
        &self.powers
    }

    pub fn psi_basis(&self) -> &[AlgElement] {
        &self.psi
    }

    pub fn pi_basis(&self) -> &[AlgElement] {
        &self.pi
    }

    /// `ψ(x)`.
    pub fn psi(&self, x: &CVec) -> AlgElement {
        crate::fdalg::combination(&self.target.zero(), x.as_slice(), &self.psi)
    }

    /// `π(a)`.
    pub fn pi(&self, a: &AlgElement) -> AlgElement {
        let c = self.corr.coeff().coords(a);
        crate::fdalg::combination(&self.target.zero(), c.as_slice(), &self.pi)
    }

    /// Largest level `n` for which `ψⁿ` is meaningful.
    pub fn level_bound(&self) -> usize {
        match &self.validity {
            Validity::Full => usize::MAX,
            Validity::Truncated { level, .. } => *level,
        }
    }

    /// `z` restricted to the summands from which `depth` creation steps stay inside the truncation.
    pub fn compress(&self, z: &AlgElement, depth: usize) -> AlgElement {
        match &self.validity {
            Validity::Full => z.clone(),
            Validity::Truncated { level, levels } => {
                let keep = levels.iter().take((level + 1).saturating_sub(depth)).fold(self.target.zero(), |acc, p| &acc + p);
                z * &keep
            }
        }
    }

    /// Tensor powers extended to at least level `n`.
    fn powers_to(&self, n: usize) -> Result<std::borrow::Cow<'_, TensorPowers>> {
        if n <= self.powers.max_level() {
            Ok(std::borrow::Cow::Borrowed(&self.powers))
        } else {
            Ok(std::borrow::Cow::Owned(tensor_powers(&self.corr, n)?))
        }
    }

    /// `ψⁿ` on the basis of `X^{⊗n}`.
    pub fn psi_n_basis(&self, n: usize) -> Result<Vec<AlgElement>> {
        if n > self.level_bound() {
            return Err(Error::precondition(format!("level {n} within the validity domain"), format!("truncated at level {}", self.level_bound())));
        }
        let powers = self.powers_to(n)?;
        let mut cur = self.pi.clone();
        if n >= 1 {
            cur = self.psi.clone();
        }
        for k in 2..=n {
            let t = powers.tensor(k).expect("level k >= 2");
            let d_prev = powers.level(k - 1).dim();
            let dx = self.corr.dim();
            let next = (0..t.lift.ncols())
                .map(|i| {
                    let mut acc = self.target.zero();
                    for kx in 0..dx {
                        for (l, cl) in cur.iter().enumerate().take(d_prev) {
                            let c = t.lift[(kx * d_prev + l, i)];
                            if c.norm() > 0.0 {
                                acc = &acc + &(&self.psi[kx] * cl).scale(c);
                            }
                        }
                    }
                    acc
                })
                .collect();
            cur = next;
        }
        Ok(cur)
    }

    /// `ψⁿ(ξ)` for `ξ` in coordinates of `X^{⊗n}`; `ψ⁰ = π`.
    pub fn psi_n(&self, n: usize, xi: &CVec) -> Result<AlgElement> {
        let basis = self.psi_n_basis(n)?;
        if xi.len() != basis.len() {
            return Err(Error::ShapeMismatch(format!("level {n} has dimension {}", basis.len())));
        }
        Ok(crate::fdalg::combination(&self.target.zero(), xi.as_slice(), &basis))
    }

    /// `ψⁿ(x_1 ⊗ … ⊗ x_n) = ψ(x_1)⋯ψ(x_n)`.
    pub fn psi_word(&self, xs: &[CVec]) -> AlgElement {
        xs.iter().fold(self.target.one(), |acc, x| &acc * &self.psi(x))
    }

    /// `ψ⁽ⁿ⁾(Σ c_ij Θ_{e_i,e_j}) = Σ c_ij ψⁿ(e_i)ψⁿ(e_j)*`.
    pub fn psi_paren_n(&self, n: usize, coeffs: &CMat) -> Result<AlgElement> {
        let basis = self.psi_n_basis(n)?;
        let d = basis.len();
        if coeffs.nrows() != d || coeffs.ncols() != d {
            return Err(Error::ShapeMismatch(format!("Θ-coefficients must be {d}x{d}")));
        }
        let mut acc = self.target.zero();
        for i in 0..d {
            for j in 0..d {
                let c = coeffs[(i, j)];
                if c.norm() > 0.0 {
                    acc = &acc + &(&basis[i] * &basis[j].adjoint()).scale(c);
                }
            }
        }
        Ok(acc)
    }

    /// `ψ⁽ⁿ⁾(k)` for an operator `k` on `X^{⊗n}` given as a matrix.
    pub fn psi_paren_operator(&self, n: usize, k: &CMat, tol: Tolerance) -> Result<AlgElement> {
        let powers = self.powers_to(n)?;
        let (coeffs, resid) = compact_expansion(powers.level(n).module(), k, tol.get());
        if resid > tol.get() {
            return Err(Error::NotInSpan { what: "operator in the span of Θ-operators".into(), residual: resid });
        }
        self.psi_paren_n(n, &coeffs)
    }

    /// The three Toeplitz identities on basis elements, compressed to the validity domain.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let c = &self.corr;
        let d = c.dim();
        let alg = c.coeff();
        let (mut right, mut inner, mut left, mut hom) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for i in 0..d {
            let x = linalg::unit_vec(d, i);
            for a in alg.basis() {
                right = right.max(self.psi(&c.right_mul(&x, a)).dist(&(&self.psi(&x) * &self.pi(a))));
                left = left.max(self.psi(&c.left_mul(a, &x)).dist(&(&self.pi(a) * &self.psi(&x))));
            }
            for j in 0..d {
                let y = linalg::unit_vec(d, j);
                let lhs = self.compress(&self.pi(&c.inner(&x, &y)), 1);
                let rhs = self.compress(&(&self.psi(&x).adjoint() * &self.psi(&y)), 1);
                inner = inner.max(lhs.dist(&rhs));
            }
        }
        for a in alg.basis() {
            hom = hom.max(self.pi(&a.adjoint()).dist(&self.pi(a).adjoint()));
            for b in alg.basis() {
                hom = hom.max(self.pi(&(a * b)).dist(&(&self.pi(a) * &self.pi(b))));
            }
        }
        let mut rep = Report::new("toeplitz representation");
        rep.residual("psi(xa) = psi(x)pi(a)", right, tol)
            .residual("pi<x,y> = psi(x)*psi(y)", inner, tol)
            .residual("psi(ax) = pi(a)psi(x)", left, tol)
            .residual("pi is a *-homomorphism", hom, tol);
        rep
    }

    /// `‖P_N(ψ(x)*ψ(y) − π⟨x,y⟩)P_N‖` at the truncation level; zero for full representations.
    pub fn truncation_defect(&self) -> f64 {
        let Validity::Truncated { level, levels } = &self.validity else { return 0.0 };
        let p = &levels[*level];
        let d = self.corr.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (linalg::unit_vec(d, i), linalg::unit_vec(d, j));
                let diff = &(&self.psi(&x).adjoint() * &self.psi(&y)) - &self.pi(&self.corr.inner(&x, &y));
                worst = worst.max((&(p * &diff) * p).norm());
            }
        }
        worst
    }

    /// Properties of `ψ⁽ⁿ⁾` on Θ-basis operators:
    /// `π(a)ψ⁽ⁿ⁾(k) = ψ⁽ⁿ⁾(φ(a)k)` and `ψ⁽ⁿ⁾(k)ψⁿ(ξ) = ψⁿ(kξ)`, and `ψ⁽¹⁾` multiplicative.
    pub fn verify_compacts(&self, n: usize, tol: Tolerance) -> Result<Report> {
        let powers = self.powers_to(n)?;
        let lvl = powers.level(n);
        let d = lvl.dim();
        let basis = self.psi_n_basis(n)?;
        let unit = |i: usize, j: usize| {
            let mut m = CMat::zeros(d, d);
            m[(i, j)] = linalg::re(1.0);
            m
        };
        let theta = |i: usize, j: usize| crate::hilbmod::theta(lvl.module(), &linalg::unit_vec(d, i), &linalg::unit_vec(d, j));
        let (mut p1, mut p2, mut mult) = (0.0f64, 0.0f64, 0.0f64);
        for i in 0..d {
            for j in 0..d {
                let k = self.psi_paren_n(n, &unit(i, j))?;
                let km = theta(i, j).matrix;
                for a in self.corr.coeff().basis() {
                    let ak = lvl.phi(a) * &km;
                    let lhs = self.compress(&(&self.pi(a) * &k), n);
                    let rhs = self.compress(&self.psi_paren_operator(n, &ak, tol)?, n);
                    p1 = p1.max(lhs.dist(&rhs));
                }
                for (l, bl) in basis.iter().enumerate().take(d) {
                    let xi = linalg::unit_vec(d, l);
                    let lhs = self.compress(&(&k * bl), n);
                    let rhs = self.compress(&self.psi_n(n, &(&km * &xi))?, n);
                    p2 = p2.max(lhs.dist(&rhs));
                }
                if n == 1 {
                    for i2 in 0..d {
                        for j2 in 0..d {
                            let k2 = self.psi_paren_n(1, &unit(i2, j2))?;
                            let prod = &km * &theta(i2, j2).matrix;
                            let lhs = self.compress(&(&k * &k2), 1);
                            let rhs = self.compress(&self.psi_paren_operator(1, &prod, tol)?, 1);
                            mult = mult.max(lhs.dist(&rhs));
                        }
                    }
                }
            }
        }
        let mut rep = Report::new(format!("psi^({n})"));
        rep.residual("pi(a)psi(k) = psi(phi(a)k)", p1, tol).residual("psi(k)psi^n(xi) = psi^n(k xi)", p2, tol);
        if n == 1 {
            rep.residual("psi^(1) multiplicative", mult, tol);
        }
        Ok(rep)
    }
}

/// Free-function form of [`ToeplitzRep::psi_n`].
pub fn psi_n(rep: &ToeplitzRep, n: usize, xi: &CVec) -> Result<AlgElement> {
    rep.psi_n(n, xi)
}

/// Free-function form of [`ToeplitzRep::psi_paren_n`].
pub fn psi_paren_n(rep: &ToeplitzRep, n: usize, coeffs: &CMat) -> Result<AlgElement> {
    rep.psi_paren_n(n, coeffs)
}

/// `max_j ‖ψ⁽¹⁾(φ(j)) − π(j)‖` over a basis of `J`, on the validity domain.
pub fn cp_covariance_defect(rep: &ToeplitzRep, ideal: &[AlgElement], tol: Tolerance) -> Result<f64> {
    let c = rep.correspondence();
    let mut worst = 0.0f64;
    for j in ideal {
        let k = rep.psi_paren_operator(1, &c.phi(j), tol)?;
        worst = worst.max(rep.compress(&(&k - &rep.pi(j)), 1).norm());
    }
    Ok(worst)
}

/// Creation operators on `⊕_{n ≤ N} X^{⊗n} ⊗_A ℂ^r`, with `π` acting diagonally.
///
/// The Toeplitz identities hold on the summands below `N`; `ψ(x)` maps the top summand to zero.
pub fn fock_toeplitz_rep(x: &Correspondence, level: usize) -> Result<ToeplitzRep> {
    if level == 0 {
        return Err(Error::precondition("truncation level at least 1", "level 0"));
    }
    if !x.is_over_itself() {
        return Err(Error::precondition("X is a correspondence over a single algebra", "left and coefficient algebras differ"));
    }
    let mut spaces = vec![defining_space(x.coeff())];
    let mut lifts = vec![];
    for n in 1..=level {
        let t = internal_tensor(x, &spaces[n - 1])?;
        spaces.push(t.corr.clone());
        lifts.push(t.quotient.clone());
    }
    let dims: Vec<usize> = spaces.iter().map(Correspondence::dim).collect();
    let total: usize = dims.iter().sum();
    if total == 0 {
        return Err(Error::precondition("nonzero Fock space", "all levels are zero"));
    }
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, &d| { let o = *acc; *acc += d; Some(o) }).collect();
    let target = FDAlgebra::matrices(total);
    let embed = |m: &CMat, row: usize, col: usize| {
        let mut out = CMat::zeros(total, total);
        out.view_mut((offsets[row], offsets[col]), (m.nrows(), m.ncols())).copy_from(m);
        target.element(vec![out]).expect("square")
    };
    let dx = x.dim();
    let psi = (0..dx)
        .map(|k| {
            let xk = CMat::from_column_slice(dx, 1, linalg::unit_vec(dx, k).as_slice());
            (0..level).fold(target.zero(), |acc, n| {
                let create = &lifts[n] * linalg::kron(&xk, &CMat::identity(dims[n], dims[n]));
                &acc + &embed(&create, n + 1, n)
            })
        })
        .collect();
    let pi = x
        .coeff()
        .basis()
        .iter()
        .map(|a| (0..=level).fold(target.zero(), |acc, n| &acc + &embed(&spaces[n].phi(a), n, n)))
        .collect();
    let levels = (0..=level).map(|n| embed(&CMat::identity(dims[n], dims[n]), n, n)).collect();
    ToeplitzRep::new(x.clone(), target, psi, pi, Validity::Truncated { level, levels }, level)
}

/// `span{ψⁿ(x)ψᵐ(y)* : n, m ≤ L}` contains all products of at most three generators.
pub fn spanning_check(rep: &ToeplitzRep, max_level: usize, tol: Tolerance) -> Result<Report> {
    let t = tol.get();
    let mut span: Vec<CVec> = Vec::new();
    let levels: Vec<Vec<AlgElement>> = (0..=max_level.min(rep.level_bound())).map(|n| rep.psi_n_basis(n)).collect::<Result<_>>()?;
    for a in &levels {
        for b in &levels {
            for p in a {
                for q in b {
                    span.push((p * &q.adjoint()).to_vec());
                }
            }
        }
    }
    let keep = linalg::greedy_independent(&span, t);
    let q = linalg::range_basis(&linalg::columns_to_matrix(rep.target().dim(), &keep.iter().map(|&i| span[i].clone()).collect::<Vec<_>>()), t);
    let mut gens: Vec<AlgElement> = rep.pi_basis().to_vec();
    gens.extend(rep.psi_basis().iter().cloned());
    gens.extend(rep.psi_basis().iter().map(AlgElement::adjoint));
    let mut words: Vec<AlgElement> = gens.clone();
    let mut frontier = gens.clone();
    for _ in 1..3 {
        frontier = frontier.iter().flat_map(|w| gens.iter().map(move |g| w * g)).collect();
        words.extend(frontier.iter().cloned());
    }
    let worst = words.iter().map(|w| linalg::distance_to_span(&q, &w.to_vec())).fold(0.0, f64::max);
    let mut rep_out = Report::new("spanning structure");
    rep_out.witness(format!("dim span = {}, {} words", keep.len(), words.len()));
    rep_out.residual("words of length <= 3 in span", worst, tol);
    Ok(rep_out)
}
