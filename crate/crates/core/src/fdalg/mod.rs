//! Finite groups and finite-dimensional C*-algebras presented as matrix-block
//! direct sums, with actions (spatial automorphisms) and gradings.

mod action;
mod algebra;
mod grading;
mod group;

pub use action::{verify_action, AlgAction, SpatialAutomorphism};
pub use algebra::{combination, involution, multiply, operator_norm, AlgElement, FDAlgebra, MatrixAlgebra};
pub use grading::{homogeneous_decomposition, verify_grading, AlgGrading};
pub use group::{make_cyclic_group, FiniteGroup};

use crate::linalg::{self, CMat, CVec, C64};

/// `C*(G)` realized by left-regular permutation matrices in `M_{|G|}`.
#[derive(Debug, Clone)]
pub struct GroupAlgebra {
    pub group: FiniteGroup,
    pub algebra: MatrixAlgebra,
    pub grading: AlgGrading,
}

impl GroupAlgebra {
    /// `u_s`.
    pub fn u(&self, s: usize) -> &AlgElement {
        &self.algebra.basis()[s]
    }
}

/// Left-regular permutation matrix of `s`: `e_g ↦ e_{sg}`.
pub fn left_regular(g: &FiniteGroup, s: usize) -> CMat {
    let perm: Vec<usize> = g.elements().map(|h| g.mul(s, h)).collect();
    linalg::permutation_matrix(&perm)
}

/// The group algebra with basis `{u_s}` and its canonical grading `span{u_s}` in degree `s`.
pub fn group_algebra(g: &FiniteGroup) -> GroupAlgebra {
    let amb = FDAlgebra::matrices(g.order());
    let basis: Vec<AlgElement> =
        g.elements().map(|s| amb.element(vec![left_regular(g, s)]).expect("square")).collect();
    let algebra = MatrixAlgebra::from_basis(amb, basis.clone(), 1e-12).expect("regular representation is faithful");
    let parts = basis.into_iter().enumerate().map(|(s, u)| (s, vec![u])).collect();
    let grading = AlgGrading::new(g.clone(), algebra.clone(), parts).expect("degrees in range");
    GroupAlgebra { group: g.clone(), algebra, grading }
}

/// `c₀(G)` with its translation action.
#[derive(Debug, Clone)]
pub struct FunctionAlgebra {
    pub group: FiniteGroup,
    pub algebra: MatrixAlgebra,
    pub translation: AlgAction,
}

impl FunctionAlgebra {
    /// Indicator `χ_g`.
    pub fn chi(&self, g: usize) -> &AlgElement {
        &self.algebra.basis()[g]
    }
}

/// Diagonal matrices indexed by `G`, with `λ_s(χ_g) = χ_{sg}`.
pub fn function_algebra(g: &FiniteGroup) -> FunctionAlgebra {
    let amb = FDAlgebra::diagonal(g.order());
    let algebra = MatrixAlgebra::full(amb.clone());
    let autos = g
        .elements()
        .map(|s| SpatialAutomorphism::permutation(&amb, g.elements().map(|h| g.mul(s, h)).collect()).expect("perm"))
        .collect();
    let translation = AlgAction::new(g.clone(), algebra.clone(), autos).expect("one per element");
    FunctionAlgebra { group: g.clone(), algebra, translation }
}

/// Action of `z` on the group algebra of `g` by `u_s ↦ χ_z(s) u_s`, for a family of characters.
///
/// Implemented by conjugation with `diag(χ_z(h))`.
pub fn phase_action(
    ga: &GroupAlgebra,
    acting: &FiniteGroup,
    character: impl Fn(usize, usize) -> C64,
) -> crate::error::Result<AlgAction> {
    let n = ga.group.order();
    let us = acting
        .elements()
        .map(|z| CMat::from_diagonal(&CVec::from_iterator(n, (0..n).map(|h| character(z, h)))))
        .collect();
    AlgAction::inner(acting.clone(), ga.algebra.clone(), us)
}

/// The dual action of `ℤ_n` on `C*(ℤ_n)`: `u_s ↦ e^{2πi zs/n} u_s`.
pub fn cyclic_dual_action(ga: &GroupAlgebra) -> crate::error::Result<AlgAction> {
    let n = ga.group.order();
    phase_action(ga, &ga.group, |z, h| linalg::root_of_unity((z * h) as i64, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Tolerance;

    #[test]
    fn group_algebra_z2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let ga = group_algebra(&g);
        assert!(ga.u(0).dist(&ga.algebra.ambient().one()) < 1e-15);
        assert!((ga.u(1) * ga.u(1)).dist(ga.u(0)) < 1e-15);
        assert!(verify_grading(&ga.grading, Tolerance::DEFAULT).passed());
    }

    #[test]
    fn group_algebra_z3_products() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let ga = group_algebra(&g);
        // Permutation-composition oracle: u_s e_h = e_{s+h}.
        for s in 0..3 {
            for h in 0..3 {
                let col = ga.u(s).block(0).column(h).into_owned();
                assert_eq!(col, linalg::unit_vec(3, (s + h) % 3));
            }
        }
        assert!((ga.u(1) * ga.u(2)).dist(ga.u(0)) < 1e-15);
    }

    #[test]
    fn trivial_group_algebra() {
        let ga = group_algebra(&FiniteGroup::trivial());
        assert_eq!(ga.algebra.dim(), 1);
        assert_eq!(ga.grading.support(), vec![0]);
    }

    #[test]
    fn translation_on_z3() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let fa = function_algebra(&g);
        for h in 0..3 {
            assert_eq!(fa.translation.apply(1, fa.chi(h)), fa.chi((1 + h) % 3).clone());
        }
        assert!(verify_action(&fa.translation, Tolerance::DEFAULT).passed());
    }

    #[test]
    fn both_coordinates_in_degree_one_fails() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let alg = MatrixAlgebra::full(FDAlgebra::diagonal(2));
        let gr = AlgGrading::new(g, alg.clone(), vec![(1, alg.basis().to_vec())]).unwrap();
        let rep = verify_grading(&gr, Tolerance::DEFAULT);
        assert!(!rep.passed());
        assert!(!rep.check("A_s A_t in A_st").unwrap().passed);
    }

    #[test]
    fn dual_action_scales_generators() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let ga = group_algebra(&g);
        let act = cyclic_dual_action(&ga).unwrap();
        assert!(verify_action(&act, Tolerance::DEFAULT).passed());
        let lhs = act.apply(1, ga.u(3));
        let rhs = ga.u(3).scale(linalg::root_of_unity(3, 4));
        assert!(lhs.dist(&rhs) < 1e-12);
    }

    #[test]
    fn decomposition_in_z2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let ga = group_algebra(&g);
        let x = ga.u(0) + ga.u(1);
        let parts = homogeneous_decomposition(&ga.grading, &x, Tolerance::DEFAULT).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, 0);
        assert!(parts[0].1.dist(ga.u(0)) < 1e-12);
        assert!(parts[1].1.dist(ga.u(1)) < 1e-12);
    }
}
