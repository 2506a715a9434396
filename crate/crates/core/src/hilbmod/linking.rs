use crate::fdalg::{AlgElement, FDAlgebra, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::module::{theta, HilbertModule, Realization};

/// `L(X) = 𝒦(X ⊕ B)` realized on `K ⊕ H`, where `K = X ⊗_B H`.
#[derive(Debug, Clone)]
pub struct LinkingAlgebra {
    pub algebra: MatrixAlgebra,
    realization: Realization,
    module: HilbertModule,
}

impl LinkingAlgebra {
    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    fn sizes(&self) -> (usize, usize) {
        (self.realization.space_dim, self.realization.rep_dim)
    }

    fn place(&self, row: usize, col: usize, m: &CMat) -> AlgElement {
        let (r, n) = self.sizes();
        let mut out = CMat::zeros(r + n, r + n);
        let (i, j) = (if row == 0 { 0 } else { r }, if col == 0 { 0 } else { r });
        if m.nrows() > 0 && m.ncols() > 0 {
            out.view_mut((i, j), m.shape()).copy_from(m);
        }
        self.algebra.ambient().element(vec![out]).expect("square")
    }

    /// `[0 x; 0 0]`.
    pub fn x(&self, x: &CVec) -> AlgElement {
        self.place(0, 1, &self.realization.embed(x))
    }

    /// `[0 0; 0 b]`.
    pub fn b(&self, b: &AlgElement) -> AlgElement {
        self.place(1, 1, &b.to_matrix())
    }

    /// `[T 0; 0 0]` for a module map `T` given in module coordinates.
    pub fn compact(&self, t: &CMat, tol: f64) -> AlgElement {
        let (op, _) = self.realization.induced(t, tol);
        self.place(0, 0, &op)
    }

    /// The corner projection `p`.
    pub fn p(&self) -> AlgElement {
        let (r, _) = self.sizes();
        self.place(0, 0, &CMat::identity(r, r))
    }

    /// The corner projection `q`.
    pub fn q(&self) -> AlgElement {
        let (_, n) = self.sizes();
        self.place(1, 1, &CMat::identity(n, n))
    }

    /// The multiplication identities linking `L(X)` to the module structure, on basis elements.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("linking algebra");
        let m = &self.module;
        let d = m.dim();
        let (mut right, mut inner, mut thet, mut left): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
        for i in 0..d {
            let x = m.basis_vector(i);
            let lx = self.x(&x);
            for b in m.coeff().basis() {
                right = right.max((&lx * &self.b(b)).dist(&self.x(&m.right_mul(&x, b))));
            }
            for j in 0..d {
                let y = m.basis_vector(j);
                let ly = self.x(&y);
                inner = inner.max((&lx.adjoint() * &ly).dist(&self.b(&m.inner(&x, &y))));
                let th = theta(m, &x, &y).matrix;
                let k = self.compact(&th, tol.get());
                thet = thet.max((&lx * &ly.adjoint()).dist(&k));
                for l in 0..d {
                    let z = m.basis_vector(l);
                    left = left.max((&k * &self.x(&z)).dist(&self.x(&(&th * &z))));
                }
            }
        }
        let p = self.p();
        let q = self.q();
        let proj = (&p * &p).dist(&p) + (&q * &q).dist(&q) + (&p * &q).max_abs() + (&(&p + &q) - &self.algebra.ambient().one()).max_abs();
        rep.residual("[0 x;0 0][0 0;0 b] = [0 xb;0 0]", right, tol)
            .residual("[0 x;0 0]*[0 y;0 0] = [0 0;0 <x,y>]", inner, tol)
            .residual("[0 x;0 0][0 y;0 0]* = [Theta_xy 0;0 0]", thet, tol)
            .residual("[T 0;0 0][0 x;0 0] = [0 Tx;0 0]", left, tol)
            .residual("p, q complementary projections", proj, tol);
        rep.absorb(self.algebra.verify_closure(tol));
        rep
    }
}

/// The linking algebra of a Hilbert module.
pub fn linking_algebra(module: &HilbertModule, tol: f64) -> LinkingAlgebra {
    let realization = module.realize(tol);
    let (r, n) = (realization.space_dim, realization.rep_dim);
    let ambient = FDAlgebra::matrices(r + n);
    let mut tmp = LinkingAlgebra { algebra: MatrixAlgebra::full(ambient.clone()), realization, module: module.clone() };
    let mut spanning = Vec::new();
    let ops = tmp.realization.ops.clone();
    for ei in &ops {
        for ej in &ops {
            spanning.push(tmp.place(0, 0, &(ei * ej.adjoint())));
        }
        spanning.push(tmp.place(0, 1, ei));
        spanning.push(tmp.place(1, 0, &ei.adjoint()));
    }
    for b in module.coeff().basis() {
        spanning.push(tmp.b(b));
    }
    let vecs: Vec<CVec> = spanning.iter().map(|s| s.to_vec()).collect();
    let keep = linalg::greedy_independent(&vecs, tol);
    let basis = keep.into_iter().map(|i| spanning[i].clone()).collect();
    tmp.algebra = MatrixAlgebra::from_basis(ambient, basis, tol).expect("independent subset");
    tmp
}
