use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::algebra::{AlgElement, FDAlgebra, MatrixAlgebra};
use super::group::FiniteGroup;

/// `a ↦ (U_i a_i U_i*)` placed in block `perm[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialAutomorphism {
    perm: Vec<usize>,
    unitaries: Vec<CMat>,
}

impl SpatialAutomorphism {
    pub fn new(alg: &FDAlgebra, perm: Vec<usize>, unitaries: Vec<CMat>) -> Result<Self> {
        let dims = alg.block_dims();
        let k = dims.len();
        if perm.len() != k || unitaries.len() != k {
            return Err(Error::ShapeMismatch(format!("automorphism needs {k} blocks")));
        }
        let mut seen = vec![false; k];
        for (i, &p) in perm.iter().enumerate() {
            if p >= k || seen[p] {
                return Err(Error::ShapeMismatch("block map is not a permutation".into()));
            }
            seen[p] = true;
            if dims[p] != dims[i] {
                return Err(Error::ShapeMismatch(format!("block {i} and block {p} differ in size")));
            }
            if unitaries[i].shape() != (dims[i], dims[i]) {
                return Err(Error::ShapeMismatch(format!("conjugator for block {i} has wrong size")));
            }
        }
        Ok(SpatialAutomorphism { perm, unitaries })
    }

    pub fn identity(alg: &FDAlgebra) -> Self {
        SpatialAutomorphism {
            perm: (0..alg.num_blocks()).collect(),
            unitaries: alg.block_dims().iter().map(|&n| CMat::identity(n, n)).collect(),
        }
    }

    /// Block permutation only.
    pub fn permutation(alg: &FDAlgebra, perm: Vec<usize>) -> Result<Self> {
        let us = alg.block_dims().iter().map(|&n| CMat::identity(n, n)).collect();
        SpatialAutomorphism::new(alg, perm, us)
    }

    /// Conjugation by a single unitary on a one-block algebra.
    pub fn inner(alg: &FDAlgebra, u: CMat) -> Result<Self> {
        SpatialAutomorphism::new(alg, vec![0], vec![u])
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    pub fn apply(&self, a: &AlgElement) -> AlgElement {
        let mut blocks: Vec<CMat> = a.blocks().to_vec();
        for (i, b) in a.blocks().iter().enumerate() {
            let u = &self.unitaries[i];
            blocks[self.perm[i]] = u * b * u.adjoint();
        }
        FDAlgebra::new(blocks.iter().map(|b| b.nrows()).collect())
            .expect("nonempty")
            .element(blocks)
            .expect("shapes preserved")
    }

    /// The operator on the representation space implementing the automorphism.
    pub fn as_unitary(&self, alg: &FDAlgebra) -> CMat {
        let n = alg.rep_dim();
        let mut w = CMat::zeros(n, n);
        for (i, u) in self.unitaries.iter().enumerate() {
            let (src, dst) = (alg.rep_offset(i), alg.rep_offset(self.perm[i]));
            w.view_mut((dst, src), u.shape()).copy_from(u);
        }
        w
    }
}

/// An action of a finite group on a [`MatrixAlgebra`] by spatial automorphisms of its ambient algebra.
#[derive(Debug, Clone)]
pub struct AlgAction {
    group: FiniteGroup,
    algebra: MatrixAlgebra,
    autos: Vec<SpatialAutomorphism>,
}

impl AlgAction {
    pub fn new(group: FiniteGroup, algebra: MatrixAlgebra, autos: Vec<SpatialAutomorphism>) -> Result<Self> {
        if autos.len() != group.order() {
            return Err(Error::ShapeMismatch(format!("need one automorphism per element ({})", group.order())));
        }
        let k = algebra.ambient().num_blocks();
        if autos.iter().any(|a| a.perm.len() != k) {
            return Err(Error::ShapeMismatch("automorphism does not match the ambient algebra".into()));
        }
        Ok(AlgAction { group, algebra, autos })
    }

    pub fn trivial(group: FiniteGroup, algebra: MatrixAlgebra) -> Self {
        let id = SpatialAutomorphism::identity(algebra.ambient());
        let autos = vec![id; group.order()];
        AlgAction { group, algebra, autos }
    }

    /// Action through a homomorphism to unitaries on a one-block ambient algebra.
    pub fn inner(group: FiniteGroup, algebra: MatrixAlgebra, unitaries: Vec<CMat>) -> Result<Self> {
        let autos = unitaries
            .into_iter()
            .map(|u| SpatialAutomorphism::inner(algebra.ambient(), u))
            .collect::<Result<Vec<_>>>()?;
        AlgAction::new(group, algebra, autos)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn automorphism(&self, s: usize) -> &SpatialAutomorphism {
        &self.autos[s]
    }

    /// `α_s(a)`.
    pub fn apply(&self, s: usize, a: &AlgElement) -> AlgElement {
        self.autos[s].apply(a)
    }

    /// Matrix of `α_s` in the algebra's basis coordinates.
    pub fn coord_matrix(&self, s: usize) -> CMat {
        let cols: Vec<CVec> = self.algebra.basis().iter().map(|b| self.algebra.coords(&self.apply(s, b))).collect();
        linalg::columns_to_matrix(self.algebra.dim(), &cols)
    }

    /// Unitary on the ambient representation space implementing `α_s`.
    pub fn unitary(&self, s: usize) -> CMat {
        self.autos[s].as_unitary(self.algebra.ambient())
    }

    /// `α ⊗ id` on `A ⊗ C`.
    pub fn tensor_trivial(&self, other: &MatrixAlgebra, tol: f64) -> Result<Self> {
        let algebra = self.algebra.tensor(other, tol)?;
        let cdims = other.ambient().block_dims();
        let kc = cdims.len();
        let autos = self
            .autos
            .iter()
            .map(|auto| {
                let mut perm = Vec::new();
                let mut us = Vec::new();
                for (i, u) in auto.unitaries.iter().enumerate() {
                    for (j, &m) in cdims.iter().enumerate() {
                        perm.push(auto.perm[i] * kc + j);
                        us.push(linalg::kron(u, &CMat::identity(m, m)));
                    }
                }
                SpatialAutomorphism::new(algebra.ambient(), perm, us)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgAction::new(self.group.clone(), algebra, autos)
    }

    /// Same action viewed on another subalgebra of the same ambient algebra.
    pub fn restrict(&self, algebra: MatrixAlgebra) -> Result<Self> {
        if algebra.ambient() != self.algebra.ambient() {
            return Err(Error::ShapeMismatch("restriction needs the same ambient algebra".into()));
        }
        Ok(AlgAction { group: self.group.clone(), algebra, autos: self.autos.clone() })
    }
}

/// Checks automorphism and homomorphism identities on the basis.
pub fn verify_action(alpha: &AlgAction, tol: Tolerance) -> Report {
    let mut rep = Report::new("action");
    let a = &alpha.algebra;
    let g = &alpha.group;
    let basis = a.basis();
    let (mut invariant, mut mult, mut star, mut hom, mut unital): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    let mut bijective = true;
    let unit = a.unit(tol.get());
    for s in g.elements() {
        for x in basis {
            let ax = alpha.apply(s, x);
            invariant = invariant.max(a.residual(&ax));
            star = star.max(alpha.apply(s, &x.adjoint()).dist(&ax.adjoint()));
            for y in basis {
                mult = mult.max(alpha.apply(s, &(x * y)).dist(&(&ax * &alpha.apply(s, y))));
            }
            for t in g.elements() {
                let lhs = alpha.apply(s, &alpha.apply(t, x));
                hom = hom.max(lhs.dist(&alpha.apply(g.mul(s, t), x)));
            }
        }
        if let Some(u) = &unit {
            unital = unital.max(alpha.apply(s, u).dist(u));
        }
        if linalg::rank(&alpha.coord_matrix(s), tol.get()) != a.dim() {
            bijective = false;
            rep.witness(format!("alpha_{} is not bijective", g.label(s)));
        }
    }
    let ident = basis.iter().map(|x| alpha.apply(g.identity(), x).dist(x)).fold(0.0, f64::max);
    rep.residual("leaves the algebra invariant", invariant, tol)
        .residual("multiplicative", mult, tol)
        .residual("star-preserving", star, tol)
        .residual("unital", unital, tol)
        .flag("bijective", bijective)
        .residual("alpha_s alpha_t = alpha_st", hom, tol)
        .residual("alpha_e = id", ident, tol);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::re;

    #[test]
    fn swap_action_passes() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let alg = FDAlgebra::diagonal(2);
        let autos =
            vec![SpatialAutomorphism::identity(&alg), SpatialAutomorphism::permutation(&alg, vec![1, 0]).unwrap()];
        let act = AlgAction::new(g, MatrixAlgebra::full(alg), autos).unwrap();
        assert!(verify_action(&act, Tolerance::DEFAULT).passed());
    }

    #[test]
    fn non_unitary_conjugator_fails_multiplicativity() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let alg = FDAlgebra::matrices(2);
        let bad = CMat::from_diagonal(&CVec::from_vec(vec![re(2.0), re(1.0)]));
        let act = AlgAction::inner(g, MatrixAlgebra::full(alg), vec![CMat::identity(2, 2), bad]).unwrap();
        let rep = verify_action(&act, Tolerance::DEFAULT);
        assert!(!rep.passed());
        assert!(!rep.check("multiplicative").unwrap().passed);
        assert!(!rep.check("unital").unwrap().passed);
    }

    #[test]
    fn unitary_implements_automorphism() {
        let alg = FDAlgebra::new(vec![2, 1, 2]).unwrap();
        let u = CMat::from_row_slice(2, 2, &[re(0.0), re(1.0), re(1.0), re(0.0)]);
        let aut = SpatialAutomorphism::new(&alg, vec![2, 1, 0], vec![u.clone(), CMat::identity(1, 1), u]).unwrap();
        let w = aut.as_unitary(&alg);
        for x in alg.matrix_units() {
            let lhs = aut.apply(&x).to_matrix();
            let rhs = &w * x.to_matrix() * w.adjoint();
            assert!(linalg::max_abs(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn mismatched_block_sizes_rejected() {
        let alg = FDAlgebra::new(vec![1, 2]).unwrap();
        assert!(SpatialAutomorphism::permutation(&alg, vec![1, 0]).is_err());
    }
}
