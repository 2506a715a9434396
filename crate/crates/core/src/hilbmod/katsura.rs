use serde::Serialize;

use crate::fdalg::{AlgElement, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec};
use crate::report::Tolerance;

use super::module::Correspondence;

/// `J_X = φ⁻¹(𝒦(X)) ∩ (ker φ)^⊥`.
#[derive(Debug, Clone)]
pub struct KatsuraIdeal {
    /// Blocks of the left algebra making up `J_X`, when the left algebra is a full block algebra.
    pub blocks: Option<Vec<usize>>,
    pub basis: Vec<AlgElement>,
}

impl KatsuraIdeal {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Matrix whose columns are the flattened `φ(a_k)`.
fn phi_matrix(c: &Correspondence) -> CMat {
    let d = c.dim();
    let cols: Vec<CVec> = (0..c.left().dim()).map(|k| linalg::vec_of(c.phi_basis(k))).collect();
    linalg::columns_to_matrix(d * d, &cols)
}

/// In finite dimensions every adjointable operator is compact, so only the annihilator condition remains.
/// For full block algebras this is the sum of the blocks on which `φ` is injective.
pub fn katsura_ideal(c: &Correspondence, tol: Tolerance) -> KatsuraIdeal {
    let left = c.left();
    if !left.is_full() {
        return KatsuraIdeal { blocks: None, basis: katsura_ideal_by_annihilator(c, tol) };
    }
    let amb = left.ambient();
    let d = c.dim();
    let mut blocks = Vec::new();
    let mut basis = Vec::new();
    for (k, &n) in amb.block_dims().iter().enumerate() {
        let units: Vec<AlgElement> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| amb.unit(k, i, j)).collect();
        let cols: Vec<CVec> = units.iter().map(|u| linalg::vec_of(&c.phi(u))).collect();
        if d > 0 && linalg::rank(&linalg::columns_to_matrix(d * d, &cols), tol.get()) == n * n {
            blocks.push(k);
            basis.extend(units);
        }
    }
    KatsuraIdeal { blocks: Some(blocks), basis }
}

/// `{a : ab = 0 for all b ∈ ker φ}`, computed by linear algebra without reference to blocks.
pub fn katsura_ideal_by_annihilator(c: &Correspondence, tol: Tolerance) -> Vec<AlgElement> {
    let left = c.left();
    let n = left.dim();
    let kernel = linalg::null_space(&phi_matrix(c), tol.get());
    let kernel: Vec<AlgElement> = (0..kernel.ncols()).map(|j| left.element(&kernel.column(j).into_owned())).collect();
    if kernel.is_empty() {
        return left.basis().to_vec();
    }
    let amb = left.ambient().dim();
    let mut m = CMat::zeros(amb * kernel.len(), n);
    for (r, b) in kernel.iter().enumerate() {
        for (k, a) in left.basis().iter().enumerate() {
            m.view_mut((r * amb, k), (amb, 1)).copy_from(&(a * b).to_vec());
        }
    }
    let ann = linalg::null_space(&m, tol.get());
    (0..ann.ncols()).map(|j| left.element(&ann.column(j).into_owned())).collect()
}

/// Both readings of Katsura nondegeneracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nondegeneracy {
    pub module_dim: usize,
    /// `dim span{φ(j)x}`.
    pub j_dot_x: usize,
    /// `dim span{x·j}`; only defined when the correspondence is over a single algebra.
    pub x_dot_j: Option<usize>,
}

impl Nondegeneracy {
    pub fn left_full(&self) -> bool {
        self.j_dot_x == self.module_dim
    }

    pub fn right_full(&self) -> Option<bool> {
        self.x_dot_j.map(|k| k == self.module_dim)
    }
}

/// Dimensions of `J_X·X` and `X·J_X`.
pub fn katsura_nondegeneracy(c: &Correspondence, tol: Tolerance) -> Nondegeneracy {
    let j = katsura_ideal(c, tol);
    let d = c.dim();
    let basis: Vec<CVec> = (0..d).map(|i| c.module().basis_vector(i)).collect();
    let left: Vec<CVec> = j.basis.iter().flat_map(|a| basis.iter().map(move |x| c.left_mul(a, x))).collect();
    let x_dot_j = c.is_over_itself().then(|| {
        let right: Vec<CVec> = basis.iter().flat_map(|x| j.basis.iter().map(move |a| c.right_mul(x, a))).collect();
        linalg::span_dim(&right, tol.get())
    });
    Nondegeneracy { module_dim: d, j_dot_x: linalg::span_dim(&left, tol.get()), x_dot_j }
}

/// `X·J_X = X` for a correspondence over one algebra; falls back to `J_X·X = X` otherwise.
///
/// The right-hand form is the one that characterizes graphs without proper sources
/// and the one used when factoring generators as `x₀a` with `a ∈ J_X`.
pub fn is_katsura_nondegenerate(c: &Correspondence, tol: Tolerance) -> bool {
    let nd = katsura_nondegeneracy(c, tol);
    nd.right_full().unwrap_or_else(|| nd.left_full())
}

/// The ideal as a subspace of the left algebra's ambient algebra.
pub fn ideal_subspace(c: &Correspondence, tol: Tolerance) -> Option<MatrixAlgebra> {
    let j = katsura_ideal(c, tol);
    if j.is_zero() {
        return None;
    }
    MatrixAlgebra::from_basis(c.left().ambient().clone(), j.basis, tol.get()).ok()
}
