use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, re, CMat, CVec, C64};
use crate::report::{Report, Tolerance};

/// A direct sum of full matrix algebras `M_{n_1} ⊕ … ⊕ M_{n_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FDAlgebra {
    block_dims: Vec<usize>,
    block_labels: Option<Vec<String>>,
}

impl FDAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::ShapeMismatch("algebra needs at least one block".into()));
        }
        if block_dims.contains(&0) {
            return Err(Error::ShapeMismatch("block dimensions must be positive".into()));
        }
        Ok(FDAlgebra { block_dims, block_labels: None })
    }

    /// `M_n(ℂ)` as a single block.
    pub fn matrices(n: usize) -> Self {
        FDAlgebra::new(vec![n]).expect("positive size")
    }

    /// `ℂ^k` as `k` one-dimensional blocks.
    pub fn diagonal(k: usize) -> Self {
        FDAlgebra::new(vec![1; k]).expect("positive count")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.block_dims.len() {
            return Err(Error::ShapeMismatch("one label per block".into()));
        }
        self.block_labels = Some(labels);
        Ok(self)
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn block_labels(&self) -> Option<&[String]> {
        self.block_labels.as_deref()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// Vector-space dimension `Σ n_i²`.
    pub fn dim(&self) -> usize {
        self.block_dims.iter().map(|n| n * n).sum()
    }

    /// Dimension `Σ n_i` of the space the algebra acts on.
    pub fn rep_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }

    /// Offset of block `k` inside the representation space.
    pub fn rep_offset(&self, k: usize) -> usize {
        self.block_dims[..k].iter().sum()
    }

    /// Offset of block `k` inside the flattened coordinate vector.
    pub fn vec_offset(&self, k: usize) -> usize {
        self.block_dims[..k].iter().map(|n| n * n).sum()
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement { blocks: self.block_dims.iter().map(|&n| CMat::zeros(n, n)).collect() }
    }

    pub fn one(&self) -> AlgElement {
        AlgElement { blocks: self.block_dims.iter().map(|&n| CMat::identity(n, n)).collect() }
    }

    /// Matrix unit `e_{ij}` in block `k`.
    pub fn unit(&self, k: usize, i: usize, j: usize) -> AlgElement {
        let mut a = self.zero();
        a.blocks[k][(i, j)] = re(1.0);
        a
    }

    /// Matrix units in flattened-coordinate order.
    pub fn matrix_units(&self) -> Vec<AlgElement> {
        let mut out = Vec::with_capacity(self.dim());
        for (k, &n) in self.block_dims.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    out.push(self.unit(k, i, j));
                }
            }
        }
        out
    }

    /// Element from blocks, checking shapes.
    pub fn element(&self, blocks: Vec<CMat>) -> Result<AlgElement> {
        let a = AlgElement { blocks };
        self.check(&a)?;
        Ok(a)
    }

    /// Element with `block k = m` and zero elsewhere.
    pub fn in_block(&self, k: usize, m: CMat) -> Result<AlgElement> {
        let mut a = self.zero();
        if a.blocks.get(k).map(|b| b.shape()) != Some(m.shape()) {
            return Err(Error::ShapeMismatch(format!("block {k} shape")));
        }
        a.blocks[k] = m;
        Ok(a)
    }

    /// Element with scalar `values[k]` times the identity in block `k`.
    pub fn scalars(&self, values: &[C64]) -> AlgElement {
        AlgElement {
            blocks: self.block_dims.iter().zip(values).map(|(&n, &v)| CMat::identity(n, n) * v).collect(),
        }
    }

    pub fn check(&self, a: &AlgElement) -> Result<()> {
        if a.blocks.len() != self.block_dims.len()
            || a.blocks.iter().zip(&self.block_dims).any(|(b, &n)| b.shape() != (n, n))
        {
            return Err(Error::ShapeMismatch(format!(
                "element shape {:?} does not match blocks {:?}",
                a.blocks.iter().map(|b| b.nrows()).collect::<Vec<_>>(),
                self.block_dims
            )));
        }
        Ok(())
    }

    /// Element from flattened coordinates.
    pub fn from_vec(&self, v: &CVec) -> AlgElement {
        let mut off = 0;
        let blocks = self
            .block_dims
            .iter()
            .map(|&n| {
                let m = linalg::mat_of(&v.as_slice()[off..off + n * n], n, n);
                off += n * n;
                m
            })
            .collect();
        AlgElement { blocks }
    }

    /// Tensor product algebra; block `(i, j)` has size `n_i·m_j` and is stored at index `i·k' + j`.
    pub fn tensor(&self, other: &FDAlgebra) -> FDAlgebra {
        let dims = self
            .block_dims
            .iter()
            .flat_map(|&n| other.block_dims.iter().map(move |&m| n * m))
            .collect();
        FDAlgebra { block_dims: dims, block_labels: None }
    }
}

/// An element of an [`FDAlgebra`]: one square complex matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElement {
    blocks: Vec<CMat>,
}

impl AlgElement {
    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn into_blocks(self) -> Vec<CMat> {
        self.blocks
    }

    fn same_shape(&self, other: &AlgElement) -> bool {
        self.blocks.len() == other.blocks.len()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.shape() == b.shape())
    }

    /// Blockwise product, rejecting shape mismatch.
    pub fn multiply(&self, other: &AlgElement) -> Result<AlgElement> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch("factors live in different algebras".into()));
        }
        Ok(AlgElement { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect() })
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    /// C*-norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: C64) -> AlgElement {
        AlgElement { blocks: self.blocks.iter().map(|b| b * c).collect() }
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    /// Flattened row-major coordinates, block after block.
    pub fn to_vec(&self) -> CVec {
        let total: usize = self.blocks.iter().map(|b| b.len()).sum();
        let mut out = CVec::zeros(total);
        let mut off = 0;
        for b in &self.blocks {
            let (r, c) = b.shape();
            for i in 0..r {
                for j in 0..c {
                    out[off + i * c + j] = b[(i, j)];
                }
            }
            off += r * c;
        }
        out
    }

    /// Block diagonal matrix acting on the representation space.
    pub fn to_matrix(&self) -> CMat {
        linalg::block_diag(&self.blocks)
    }

    /// Tensor product element in `A.tensor(B)`.
    pub fn kron(&self, other: &AlgElement) -> AlgElement {
        AlgElement {
            blocks: self.blocks.iter().flat_map(|a| other.blocks.iter().map(move |b| linalg::kron(a, b))).collect(),
        }
    }

    /// Distance in max-entry norm.
    pub fn dist(&self, other: &AlgElement) -> f64 {
        (self - other).max_abs()
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;
    fn add(self, rhs: &AlgElement) -> AlgElement {
        assert!(self.same_shape(rhs), "shape mismatch in addition");
        AlgElement { blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;
    fn sub(self, rhs: &AlgElement) -> AlgElement {
        assert!(self.same_shape(rhs), "shape mismatch in subtraction");
        AlgElement { blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &AlgElement {
    type Output = AlgElement;
    /// Panics on shape mismatch; use [`AlgElement::multiply`] for a checked product.
    fn mul(self, rhs: &AlgElement) -> AlgElement {
        self.multiply(rhs).expect("shape mismatch in product")
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.scale(re(-1.0))
    }
}

/// Checked blockwise product.
pub fn multiply(a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
    a.multiply(b)
}

/// Blockwise conjugate transpose.
pub fn involution(a: &AlgElement) -> AlgElement {
    a.adjoint()
}

/// Operator norm of a block direct sum.
pub fn operator_norm(a: &AlgElement) -> f64 {
    a.norm()
}

/// Linear combination `Σ c_k x_k`; `zero` is returned for empty input.
pub fn combination(zero: &AlgElement, coeffs: &[C64], elems: &[AlgElement]) -> AlgElement {
    let mut blocks: Vec<CMat> = zero.blocks.clone();
    for (c, e) in coeffs.iter().zip(elems) {
        if *c == C64::new(0.0, 0.0) {
            continue;
        }
        for (acc, b) in blocks.iter_mut().zip(&e.blocks) {
            *acc += b * *c;
        }
    }
    AlgElement { blocks }
}

/// A *-subalgebra of an [`FDAlgebra`] presented by a vector-space basis.
///
/// Every concrete algebra in the crate is one of these: full block algebras,
/// group algebras inside `M_{|G|}`, linking algebras, twisted products.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra {
    ambient: FDAlgebra,
    basis: Vec<AlgElement>,
    /// Pseudo-inverse of the basis matrix; `None` when the basis is the matrix units.
    solver: Option<CMat>,
    /// Orthonormal basis of the span inside the flattened ambient space.
    range: Option<CMat>,
}

impl PartialEq for MatrixAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl MatrixAlgebra {
    /// The whole ambient algebra with its matrix-unit basis.
    pub fn full(ambient: FDAlgebra) -> Self {
        let basis = ambient.matrix_units();
        MatrixAlgebra { ambient, basis, solver: None, range: None }
    }

    /// Subspace with the given basis; fails if the basis is dependent.
    pub fn from_basis(ambient: FDAlgebra, basis: Vec<AlgElement>, tol: f64) -> Result<Self> {
        for b in &basis {
            ambient.check(b)?;
        }
        let m = linalg::columns_to_matrix(ambient.dim(), &basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        let (r, solver, range) = linalg::column_space(&m, tol);
        if r != basis.len() {
            return Err(Error::Verification(format!("basis of {} elements has rank {r}", basis.len())));
        }
        Ok(MatrixAlgebra { ambient, basis, solver: Some(solver), range: Some(range) })
    }

    /// Subspace spanned by `spanning`, keeping a greedy independent subset.
    pub fn span_of(ambient: FDAlgebra, spanning: Vec<AlgElement>, tol: f64) -> Result<Self> {
        let vecs: Vec<CVec> = spanning.iter().map(|b| b.to_vec()).collect();
        let keep = linalg::greedy_independent(&vecs, tol);
        let basis = keep.into_iter().map(|i| spanning[i].clone()).collect();
        MatrixAlgebra::from_basis(ambient, basis, tol)
    }

    pub fn ambient(&self) -> &FDAlgebra {
        &self.ambient
    }

    pub fn basis(&self) -> &[AlgElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.solver.is_none()
    }

    pub fn zero(&self) -> AlgElement {
        self.ambient.zero()
    }

    /// Element with the given basis coordinates.
    pub fn element(&self, coords: &CVec) -> AlgElement {
        if self.is_full() {
            return self.ambient.from_vec(coords);
        }
        combination(&self.ambient.zero(), coords.as_slice(), &self.basis)
    }

    /// Least-squares coordinates of `a` in the basis.
    pub fn coords(&self, a: &AlgElement) -> CVec {
        match &self.solver {
            None => a.to_vec(),
            Some(p) => p * a.to_vec(),
        }
    }

    /// Distance from `a` to the subalgebra.
    pub fn residual(&self, a: &AlgElement) -> f64 {
        match &self.range {
            None => 0.0,
            Some(q) => linalg::distance_to_span(q, &a.to_vec()),
        }
    }

    /// Coordinates, failing when `a` is not in the subalgebra.
    pub fn coords_checked(&self, a: &AlgElement, tol: f64) -> Result<CVec> {
        let r = self.residual(a);
        if r > tol {
            return Err(Error::NotInSpan { what: "algebra element".into(), residual: r });
        }
        Ok(self.coords(a))
    }

    /// Same subspace, new basis (must be a basis of the same span).
    pub fn rebase(&self, basis: Vec<AlgElement>, tol: f64) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!("rebase needs {} elements, got {}", self.dim(), basis.len())));
        }
        let worst = basis.iter().map(|b| self.residual(b)).fold(0.0, f64::max);
        if worst > tol {
            return Err(Error::NotInSpan { what: "new basis element".into(), residual: worst });
        }
        MatrixAlgebra::from_basis(self.ambient.clone(), basis, tol)
    }

    /// Coordinates of the product of basis elements `i` and `j`.
    pub fn structure_constants(&self, i: usize, j: usize) -> CVec {
        self.coords(&(&self.basis[i] * &self.basis[j]))
    }

    /// Unit of the subalgebra, if it has one.
    pub fn unit(&self, tol: f64) -> Option<AlgElement> {
        let n = self.dim();
        if n == 0 {
            return Some(self.zero());
        }
        // Solve Σ c_k b_k b_j = b_j and b_j Σ c_k b_k = b_j for all j.
        let amb = self.ambient.dim();
        let mut lhs = CMat::zeros(2 * n * amb, n);
        let mut rhs = CVec::zeros(2 * n * amb);
        for j in 0..n {
            let bj = self.basis[j].to_vec();
            for k in 0..n {
                let l = (&self.basis[k] * &self.basis[j]).to_vec();
                let r = (&self.basis[j] * &self.basis[k]).to_vec();
                lhs.view_mut((2 * j * amb, k), (amb, 1)).copy_from(&l);
                lhs.view_mut(((2 * j + 1) * amb, k), (amb, 1)).copy_from(&r);
            }
            rhs.rows_mut(2 * j * amb, amb).copy_from(&bj);
            rhs.rows_mut((2 * j + 1) * amb, amb).copy_from(&bj);
        }
        let c = linalg::pinv(&lhs, tol) * &rhs;
        let resid = linalg::max_abs_vec(&(&lhs * &c - &rhs));
        (resid <= tol).then(|| self.element(&c))
    }

    /// Checks closure under product and adjoint on basis elements.
    pub fn verify_closure(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("subalgebra closure");
        let mut prod: f64 = 0.0;
        let mut star: f64 = 0.0;
        for a in &self.basis {
            star = star.max(self.residual(&a.adjoint()));
            for b in &self.basis {
                prod = prod.max(self.residual(&(a * b)));
            }
        }
        rep.residual("product closed", prod, tol);
        rep.residual("adjoint closed", star, tol);
        rep
    }

    /// `A ⊗ C` with basis `a_i ⊗ c_k` at index `i·dim C + k`.
    pub fn tensor(&self, other: &MatrixAlgebra, tol: f64) -> Result<MatrixAlgebra> {
        let basis = self.basis.iter().flat_map(|a| other.basis.iter().map(move |c| a.kron(c))).collect();
        MatrixAlgebra::from_basis(self.ambient.tensor(&other.ambient), basis, tol)
    }

    /// Dimension of the center.
    pub fn center_dim(&self, tol: f64) -> usize {
        let n = self.dim();
        if n == 0 {
            return 0;
        }
        let amb = self.ambient.dim();
        // Σ c_k [b_k, b_j] = 0 for all j.
        let mut m = CMat::zeros(n * amb, n);
        for j in 0..n {
            for k in 0..n {
                let c = &(&self.basis[k] * &self.basis[j]) - &(&self.basis[j] * &self.basis[k]);
                m.view_mut((j * amb, k), (amb, 1)).copy_from(&c.to_vec());
            }
        }
        n - linalg::rank(&m, tol)
    }

    /// Basis of the center.
    pub fn center(&self, tol: f64) -> Vec<AlgElement> {
        let n = self.dim();
        if n == 0 {
            return Vec::new();
        }
        let amb = self.ambient.dim();
        let mut m = CMat::zeros(n * amb, n);
        for j in 0..n {
            for k in 0..n {
                let c = &(&self.basis[k] * &self.basis[j]) - &(&self.basis[j] * &self.basis[k]);
                m.view_mut((j * amb, k), (amb, 1)).copy_from(&c.to_vec());
            }
        }
        let z = linalg::null_space(&m, tol);
        (0..z.ncols()).map(|j| self.element(&z.column(j).into_owned())).collect()
    }

    /// Sizes `n_i` of the simple summands `M_{n_i}`, in increasing order.
    ///
    /// The minimal central projections are the spectral projections of a generic
    /// self-adjoint central element; each cuts out one matrix block.
    pub fn wedderburn_signature(&self, tol: f64) -> Result<Vec<usize>> {
        let center = self.center(tol);
        if center.is_empty() {
            return Ok(Vec::new());
        }
        let mut h = self.zero();
        for (k, z) in center.iter().enumerate() {
            let c = re(1.0 / (k as f64 + std::f64::consts::SQRT_2));
            let d = C64::new(0.0, 1.0 / (k as f64 + std::f64::consts::PI));
            h = &h + &(z + &z.adjoint()).scale(c);
            h = &h + &(z - &z.adjoint()).scale(d);
        }
        let hm = h.to_matrix();
        let eig = hm.clone().symmetric_eigen();
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().filter(|v| v.abs() > 1e-7).collect();
        values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        values.dedup_by(|a, b| (*a - *b).abs() <= 1e-7);
        let mut sizes = Vec::new();
        let mut total = 0;
        for lam in values {
            let cols: Vec<CVec> = (0..eig.eigenvalues.len())
                .filter(|&i| (eig.eigenvalues[i] - lam).abs() <= 1e-7)
                .map(|i| eig.eigenvectors.column(i).into_owned())
                .collect();
            let v = linalg::columns_to_matrix(hm.nrows(), &cols);
            let p = &v * v.adjoint();
            let cut: Vec<CVec> = self.basis.iter().map(|b| linalg::vec_of(&(&p * b.to_matrix()))).collect();
            let d = linalg::span_dim(&cut, tol);
            let n = (d as f64).sqrt().round() as usize;
            if n * n != d {
                return Err(Error::Verification(format!("central summand of dimension {d} is not a full matrix block")));
            }
            total += d;
            sizes.push(n);
        }
        if total != self.dim() || sizes.len() != center.len() {
            return Err(Error::Verification("central decomposition does not exhaust the algebra".into()));
        }
        sizes.sort_unstable();
        Ok(sizes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> C64 {
        C64::new(x, y)
    }

    #[test]
    fn diagonal_product() {
        let a = FDAlgebra::diagonal(2);
        let x = a.scalars(&[re(2.0), re(3.0)]);
        let y = a.scalars(&[re(5.0), re(7.0)]);
        assert_eq!(multiply(&x, &y).unwrap(), a.scalars(&[re(10.0), re(21.0)]));
        assert_eq!(&a.one() * &x, x);
    }

    #[test]
    fn mismatched_product_rejected() {
        let x = FDAlgebra::diagonal(2).one();
        let y = FDAlgebra::matrices(2).one();
        assert!(multiply(&x, &y).is_err());
    }

    #[test]
    fn involution_of_diagonal() {
        let a = FDAlgebra::diagonal(2);
        let x = a.scalars(&[c(0.0, 1.0), re(2.0)]);
        assert_eq!(involution(&x), a.scalars(&[c(0.0, -1.0), re(2.0)]));
    }

    #[test]
    fn norm_of_block_sum() {
        let a = FDAlgebra::new(vec![2, 2]).unwrap();
        let x = a
            .element(vec![
                CMat::from_row_slice(2, 2, &[re(2.0), re(0.0), re(0.0), re(0.0)]),
                CMat::from_row_slice(2, 2, &[re(0.0), re(0.0), re(0.0), re(3.0)]),
            ])
            .unwrap();
        assert!((operator_norm(&x) - 3.0).abs() < 1e-12);
        assert_eq!(operator_norm(&a.zero()), 0.0);
    }

    #[test]
    fn center_of_full_and_diagonal() {
        let m2 = MatrixAlgebra::full(FDAlgebra::matrices(2));
        assert_eq!(m2.center_dim(1e-9), 1);
        let d = MatrixAlgebra::full(FDAlgebra::new(vec![1, 2]).unwrap());
        assert_eq!(d.center_dim(1e-9), 2);
    }

    #[test]
    fn unit_of_corner_subalgebra() {
        let amb = FDAlgebra::matrices(2);
        let sub = MatrixAlgebra::from_basis(amb.clone(), vec![amb.unit(0, 0, 0)], 1e-9).unwrap();
        assert_eq!(sub.unit(1e-9).unwrap(), amb.unit(0, 0, 0));
        let off = MatrixAlgebra::from_basis(amb.clone(), vec![amb.unit(0, 0, 1)], 1e-9).unwrap();
        assert!(off.unit(1e-9).is_none());
    }

    #[test]
    fn coords_round_trip() {
        let amb = FDAlgebra::matrices(2);
        let sub = MatrixAlgebra::from_basis(amb.clone(), vec![amb.one(), &amb.unit(0, 0, 1) + &amb.unit(0, 1, 0)], 1e-9)
            .unwrap();
        let x = &amb.one().scale(re(2.0)) + &(&amb.unit(0, 0, 1) + &amb.unit(0, 1, 0)).scale(c(0.0, 1.0));
        let k = sub.coords_checked(&x, 1e-9).unwrap();
        assert!((k[0] - re(2.0)).norm() < 1e-12 && (k[1] - c(0.0, 1.0)).norm() < 1e-12);
        assert!(sub.coords_checked(&amb.unit(0, 0, 0), 1e-9).is_err());
    }

    #[test]
    fn wedderburn_signatures() {
        let m2 = MatrixAlgebra::full(FDAlgebra::matrices(2));
        assert_eq!(m2.wedderburn_signature(1e-9).unwrap(), vec![2]);
        let mixed = MatrixAlgebra::full(FDAlgebra::new(vec![2, 1, 3]).unwrap());
        assert_eq!(mixed.wedderburn_signature(1e-9).unwrap(), vec![1, 2, 3]);
        // Diagonal matrices in M_2, not containing the off-diagonal units.
        let amb = FDAlgebra::matrices(2);
        let diag = MatrixAlgebra::from_basis(amb.clone(), vec![amb.unit(0, 0, 0), amb.unit(0, 1, 1)], 1e-9).unwrap();
        assert_eq!(diag.wedderburn_signature(1e-9).unwrap(), vec![1, 1]);
        // M_2 embedded as a ⊗ 1 in M_4 still has one block of size 2.
        let amb4 = FDAlgebra::matrices(4);
        let basis = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| amb4.element(vec![linalg::kron(&linalg::matrix_unit(2, i, j), &CMat::identity(2, 2))]).unwrap())
            .collect();
        let amp = MatrixAlgebra::from_basis(amb4, basis, 1e-9).unwrap();
        assert_eq!(amp.wedderburn_signature(1e-9).unwrap(), vec![2]);
    }
}
