use crate::error::{Error, Result};
use crate::fdalg::{AlgElement, FDAlgebra, MatrixAlgebra};
use crate::hilbmod::{Correspondence, HilbertModule};
use crate::linalg::{self, CMat, CVec, C64};

/// Rank cutoff for null vectors of internal tensor products.
pub const NULL_TOL: f64 = 1e-9;

/// `τ(a) = Σ_k tr(a_k)`, a faithful positive trace on a block algebra.
pub fn trace(a: &AlgElement) -> C64 {
    a.blocks().iter().map(|m| m.trace()).sum()
}

/// `X ⊗_B Y` with its quotient data.
///
/// Algebraic tensors `x_k ⊗ y_l` sit at index `k·dim Y + l`. `quotient` sends algebraic coordinates
/// to coordinates in the chosen basis of the quotient and `lift` is a right inverse of it.
#[derive(Debug, Clone)]
pub struct InternalTensor {
    pub corr: Correspondence,
    pub quotient: CMat,
    pub lift: CMat,
}

impl InternalTensor {
    /// Class of `x ⊗ y`.
    pub fn elementary(&self, x: &CVec, y: &CVec) -> CVec {
        &self.quotient * linalg::kron_vec(x, y)
    }
}

/// Internal tensor product of `X` (over `B`) and `Y` (with left algebra `B`).
///
/// `⟨x⊗y, x'⊗y'⟩ = ⟨y, φ_Y(⟨x,x'⟩) y'⟩`; null vectors are removed by the rank of the scalar Gram
/// matrix `τ(⟨e_p, e_q⟩)` at [`NULL_TOL`], and the quotient basis is orthonormal for that form.
pub fn internal_tensor(x: &Correspondence, y: &Correspondence) -> Result<InternalTensor> {
    if x.coeff().ambient() != y.left().ambient() || x.coeff().dim() != y.left().dim() {
        return Err(Error::ShapeMismatch("coefficient algebra of X is not the left algebra of Y".into()));
    }
    let (dx, dy) = (x.dim(), y.dim());
    let n = dx * dy;
    let coeff = y.coeff().clone();
    let mut big = vec![coeff.zero(); n * n];
    for k in 0..dx {
        for k2 in 0..dx {
            let p = y.phi(x.module().gram_entry(k, k2));
            for l in 0..dy {
                for l2 in 0..dy {
                    let v = p.column(l2).into_owned();
                    big[(k * dy + l) * n + k2 * dy + l2] = y.inner(&linalg::unit_vec(dy, l), &v);
                }
            }
        }
    }
    let scalar = CMat::from_fn(n, n, |p, q| trace(&big[p * n + q]));
    let quotient = linalg::gram_factor(&scalar, NULL_TOL * scalar.iter().map(|z| z.norm()).fold(1.0, f64::max));
    let lift = linalg::pinv(&quotient, NULL_TOL);
    let r = quotient.nrows();

    let descend = |m: &CMat| &quotient * m * &lift;
    let right = coeff.basis().iter().map(|b| descend(&linalg::kron(&CMat::identity(dx, dx), &y.module().right_matrix(b)))).collect();
    let phi = x.left().basis().iter().map(|a| descend(&linalg::kron(&x.phi(a), &CMat::identity(dy, dy)))).collect();
    let mut gram = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut acc = coeff.zero();
            for p in 0..n {
                let cp = lift[(p, i)].conj();
                if cp.norm() == 0.0 {
                    continue;
                }
                for q in 0..n {
                    let c = cp * lift[(q, j)];
                    if c.norm() != 0.0 {
                        acc = &acc + &big[p * n + q].scale(c);
                    }
                }
            }
            gram.push(acc);
        }
    }
    let module = HilbertModule::new(coeff, r, right, gram)?;
    let corr = Correspondence::new(x.left().clone(), module, phi)?;
    Ok(InternalTensor { corr, quotient, lift })
}

/// `A`'s defining representation `ℂ^r` as a correspondence from `A` to `ℂ`.
pub fn defining_space(a: &MatrixAlgebra) -> Correspondence {
    let r = a.ambient().rep_dim();
    let scalars = MatrixAlgebra::full(FDAlgebra::matrices(1));
    let one = scalars.ambient().one();
    let gram = (0..r * r).map(|p| if p / r == p % r { one.clone() } else { scalars.zero() }).collect();
    let module = HilbertModule::new(scalars, r, vec![CMat::identity(r, r)], gram).expect("shapes agree");
    let phi = a.basis().iter().map(AlgElement::to_matrix).collect();
    Correspondence::new(a.clone(), module, phi).expect("shapes agree")
}

/// `X^{⊗0} = A, X^{⊗1} = X, X^{⊗n} = X ⊗_A X^{⊗(n−1)}`.
#[derive(Debug, Clone)]
pub struct TensorPowers {
    levels: Vec<Correspondence>,
    /// `tensors[n]` realizes level `n ≥ 2` as `X ⊗ X^{⊗(n−1)}`.
    tensors: Vec<Option<InternalTensor>>,
}

/// Tensor powers up to `max_level`; `X` must be a correspondence over its own coefficient algebra.
pub fn tensor_powers(x: &Correspondence, max_level: usize) -> Result<TensorPowers> {
    if !x.is_over_itself() {
        return Err(Error::precondition("X is a correspondence over a single algebra", "left and coefficient algebras differ"));
    }
    let mut levels = vec![Correspondence::over_itself(x.coeff())];
    let mut tensors = vec![None];
    if max_level >= 1 {
        levels.push(x.clone());
        tensors.push(None);
    }
    for n in 2..=max_level {
        let t = internal_tensor(x, &levels[n - 1])?;
        levels.push(t.corr.clone());
        tensors.push(Some(t));
    }
    Ok(TensorPowers { levels, tensors })
}

/// `X^{⊗n}` as a correspondence over `A`.
pub fn tensor_power(x: &Correspondence, n: usize) -> Result<Correspondence> {
    Ok(tensor_powers(x, n)?.levels.swap_remove(n))
}

impl TensorPowers {
    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Correspondence {
        &self.levels[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Correspondence::dim).collect()
    }

    pub fn x(&self) -> &Correspondence {
        &self.levels[1]
    }

    /// The realization of level `n ≥ 2` as `X ⊗ X^{⊗(n−1)}`.
    pub fn tensor(&self, n: usize) -> Option<&InternalTensor> {
        self.tensors.get(n).and_then(Option::as_ref)
    }

    /// Class of `x ⊗ ξ` in level `n`, for `x ∈ X` and `ξ` in level `n − 1`; at `n = 1` this is `x·ξ`.
    pub fn elementary(&self, n: usize, x: &CVec, xi: &CVec) -> CVec {
        match n {
            1 => self.x().right_mul(x, &self.levels[0].coeff().element(xi)),
            _ => self.tensor(n).expect("level n >= 2").elementary(x, xi),
        }
    }

    /// Class of `x_1 ⊗ … ⊗ x_n`.
    pub fn word(&self, xs: &[CVec]) -> CVec {
        let n = xs.len();
        if n == 0 {
            return self.levels[0].coeff().coords(&self.levels[0].coeff().ambient().one());
        }
        let mut acc = xs[n - 1].clone();
        for (i, x) in xs[..n - 1].iter().enumerate().rev() {
            acc = self.elementary(n - i, x, &acc);
        }
        acc
    }
}
