use crate::fdalg::{left_regular, FiniteGroup};
use crate::linalg::{self, CMat};
use crate::report::{Report, Tolerance};

/// Multiplication operators `m(χ_g)` and the left regular representation `λ` on `ℓ²(G)`.
#[derive(Debug, Clone)]
pub struct HeisenbergModel {
    pub group: FiniteGroup,
    /// `m[g] = m(χ_g)`, the projection onto `e_g`.
    pub m: Vec<CMat>,
    /// `lambda[s] = λ(s)`, with `λ(s)e_g = e_{sg}`.
    pub lambda: Vec<CMat>,
}

impl HeisenbergModel {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `λ` is a unitary representation and `λ(s)* m(f) λ(s) = m(f∘λ_s)`, where `(f∘λ_s)(g) = f(sg)`.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let g = &self.group;
        let n = g.order();
        let id = CMat::identity(n, n);
        let (mut unitary, mut hom, mut cov): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for s in g.elements() {
            let l = &self.lambda[s];
            unitary = unitary.max(linalg::max_abs(&(l.adjoint() * l - &id)));
            for t in g.elements() {
                hom = hom.max(linalg::max_abs(&(l * &self.lambda[t] - &self.lambda[g.mul(s, t)])));
            }
            for h in g.elements() {
                // χ_h∘λ_s = χ_{s⁻¹h}
                let lhs = l.adjoint() * &self.m[h] * l;
                cov = cov.max(linalg::max_abs(&(lhs - &self.m[g.mul(g.inv(s), h)])));
            }
        }
        let mut rep = Report::new("heisenberg pair");
        rep.residual("lambda(s) unitary", unitary, tol)
            .residual("lambda(s) lambda(t) = lambda(st)", hom, tol)
            .residual("lambda(s)* m(f) lambda(s) = m(f o lambda_s)", cov, tol);
        rep
    }
}

/// The pair `(m, λ)` for a finite group.
pub fn heisenberg_model(g: &FiniteGroup) -> HeisenbergModel {
    let n = g.order();
    HeisenbergModel {
        group: g.clone(),
        m: g.elements().map(|h| linalg::matrix_unit(n, h, h)).collect(),
        lambda: g.elements().map(|s| left_regular(g, s)).collect(),
    }
}
