use crate::error::{Error, Result};
use crate::fdalg::{combination, AlgElement, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec, C64};
use crate::report::{Report, Tolerance};

/// A finite-dimensional right Hilbert module over a [`MatrixAlgebra`], stored against a fixed basis `e_1..e_d`.
#[derive(Debug, Clone)]
pub struct HilbertModule {
    coeff: MatrixAlgebra,
    dim: usize,
    /// `right[k]` is the matrix of `x ↦ x·b_k`.
    right: Vec<CMat>,
    /// `gram[i*d + j] = ⟨e_i, e_j⟩`.
    gram: Vec<AlgElement>,
}

impl HilbertModule {
    pub fn new(coeff: MatrixAlgebra, dim: usize, right: Vec<CMat>, gram: Vec<AlgElement>) -> Result<Self> {
        if right.len() != coeff.dim() || right.iter().any(|r| r.shape() != (dim, dim)) {
            return Err(Error::ShapeMismatch("one d×d right-action matrix per coefficient basis element".into()));
        }
        if gram.len() != dim * dim {
            return Err(Error::ShapeMismatch("gram needs d² entries".into()));
        }
        for g in &gram {
            coeff.ambient().check(g)?;
        }
        Ok(HilbertModule { coeff, dim, right, gram })
    }

    /// The zero module over `coeff`.
    pub fn zero(coeff: MatrixAlgebra) -> Self {
        let right = vec![CMat::zeros(0, 0); coeff.dim()];
        HilbertModule { coeff, dim: 0, right, gram: Vec::new() }
    }

    pub fn coeff(&self) -> &MatrixAlgebra {
        &self.coeff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_vector(&self, i: usize) -> CVec {
        linalg::unit_vec(self.dim, i)
    }

    /// `⟨e_i, e_j⟩`.
    pub fn gram_entry(&self, i: usize, j: usize) -> &AlgElement {
        &self.gram[i * self.dim + j]
    }

    /// Matrix of `x ↦ x·b`.
    pub fn right_matrix(&self, b: &AlgElement) -> CMat {
        let c = self.coeff.coords(b);
        let mut out = CMat::zeros(self.dim, self.dim);
        for (k, ck) in c.iter().enumerate() {
            if *ck != C64::new(0.0, 0.0) {
                out += &self.right[k] * *ck;
            }
        }
        out
    }

    /// Right-action matrix of the `k`-th coefficient basis element.
    pub fn right_basis_matrix(&self, k: usize) -> &CMat {
        &self.right[k]
    }

    pub fn right_mul(&self, x: &CVec, b: &AlgElement) -> CVec {
        self.right_matrix(b) * x
    }

    /// `⟨x, y⟩`, conjugate-linear in `x`.
    pub fn inner(&self, x: &CVec, y: &CVec) -> AlgElement {
        let d = self.dim;
        let mut coeffs = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                coeffs.push(x[i].conj() * y[j]);
            }
        }
        combination(&self.coeff.zero(), &coeffs, &self.gram)
    }

    /// `‖x‖ = ‖⟨x,x⟩‖^{1/2}`.
    pub fn norm(&self, x: &CVec) -> f64 {
        self.inner(x, x).norm().sqrt()
    }

    /// Re-express the module in a new basis given by the columns of `p` (old coordinates).
    pub fn change_basis(&self, p: &CMat, tol: f64) -> Result<HilbertModule> {
        if p.nrows() != self.dim || p.ncols() != self.dim || linalg::rank(p, tol) != self.dim {
            return Err(Error::ShapeMismatch("change of basis must be invertible".into()));
        }
        let pinv = linalg::pinv(p, tol);
        let right = self.right.iter().map(|r| &pinv * r * p).collect();
        let cols: Vec<CVec> = (0..self.dim).map(|j| p.column(j).into_owned()).collect();
        let mut gram = Vec::with_capacity(self.dim * self.dim);
        for x in &cols {
            for y in &cols {
                gram.push(self.inner(x, y));
            }
        }
        HilbertModule::new(self.coeff.clone(), self.dim, right, gram)
    }

    /// Hilbert-space realization `X ⊗_B H`, where `H` is the space the ambient coefficient algebra acts on.
    pub fn realize(&self, tol: f64) -> Realization {
        let n = self.coeff.ambient().rep_dim();
        let d = self.dim;
        let mut big = CMat::zeros(d * n, d * n);
        for i in 0..d {
            for j in 0..d {
                big.view_mut((i * n, j * n), (n, n)).copy_from(&self.gram_entry(i, j).to_matrix());
            }
        }
        let t = linalg::gram_factor(&big, tol);
        let ops = (0..d).map(|i| t.columns(i * n, n).into_owned()).collect();
        Realization { space_dim: t.nrows(), rep_dim: n, ops }
    }

    /// Module axioms on basis elements.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("hilbert module");
        let d = self.dim;
        let basis = self.coeff.basis();
        let (mut herm, mut linear, mut assoc): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                herm = herm.max(self.gram_entry(i, j).adjoint().dist(self.gram_entry(j, i)));
                let ei = self.basis_vector(i);
                for (k, b) in basis.iter().enumerate() {
                    let lhs = self.inner(&ei, &(&self.right[k] * self.basis_vector(j)));
                    linear = linear.max(lhs.dist(&(self.gram_entry(i, j) * b)));
                }
            }
        }
        for (k, bk) in basis.iter().enumerate() {
            for (l, bl) in basis.iter().enumerate() {
                // (x·b_k)·b_l = x·(b_k b_l)
                let lhs = &self.right[l] * &self.right[k];
                assoc = assoc.max(linalg::max_abs(&(lhs - self.right_matrix(&(bk * bl)))));
            }
        }
        let n = self.coeff.ambient().rep_dim();
        let mut big = CMat::zeros(d * n, d * n);
        for i in 0..d {
            for j in 0..d {
                big.view_mut((i * n, j * n), (n, n)).copy_from(&self.gram_entry(i, j).to_matrix());
            }
        }
        let positivity = (-linalg::min_eigenvalue(&big)).max(0.0);
        let real = self.realize(tol.get());
        let definite = d == 0 || linalg::rank(&real.stacked(), tol.get()) == d;
        let inside = self.gram.iter().map(|g| self.coeff.residual(g)).fold(0.0, f64::max);
        rep.residual("inner products lie in the coefficient algebra", inside, tol)
            .residual("<x,y>* = <y,x>", herm, tol)
            .residual("<x, y b> = <x,y> b", linear, tol)
            .residual("(x b) b' = x (b b')", assoc, tol)
            .residual("<x,x> >= 0", positivity, tol)
            .flag("<x,x> = 0 only for x = 0", definite);
        rep
    }
}

/// The module realized as operators `H → K` with `E(x)*E(y) = ⟨x,y⟩`.
#[derive(Debug, Clone)]
pub struct Realization {
    pub space_dim: usize,
    pub rep_dim: usize,
    /// `ops[i] = E(e_i)`.
    pub ops: Vec<CMat>,
}

impl Realization {
    pub fn embed(&self, x: &CVec) -> CMat {
        let mut out = CMat::zeros(self.space_dim, self.rep_dim);
        for (xi, e) in x.iter().zip(&self.ops) {
            if *xi != C64::new(0.0, 0.0) {
                out += e * *xi;
            }
        }
        out
    }

    /// `[E(e_1) … E(e_d)]` flattened, one column per basis vector.
    pub fn stacked(&self) -> CMat {
        let cols: Vec<CVec> = self.ops.iter().map(linalg::vec_of).collect();
        linalg::columns_to_matrix(self.space_dim * self.rep_dim, &cols)
    }

    /// Operator on `K` induced by a module map `T` (given on module coordinates): `T̃ E(e_j) = E(T e_j)`.
    pub fn induced(&self, t: &CMat, tol: f64) -> (CMat, f64) {
        let d = self.ops.len();
        let lhs = hcat(&self.ops, self.space_dim, self.rep_dim);
        let images: Vec<CMat> = (0..d).map(|j| self.embed(&t.column(j).into_owned())).collect();
        let rhs = hcat(&images, self.space_dim, self.rep_dim);
        let op = &rhs * linalg::pinv(&lhs, tol);
        let resid = linalg::max_abs(&(&op * &lhs - &rhs));
        (op, resid)
    }

    /// Operator `K → K'` induced by a module map into another realized module.
    pub fn induced_into(&self, target: &Realization, t: &CMat, tol: f64) -> (CMat, f64) {
        let d = self.ops.len();
        let lhs = hcat(&self.ops, self.space_dim, self.rep_dim);
        let images: Vec<CMat> = (0..d).map(|j| target.embed(&t.column(j).into_owned())).collect();
        let rhs = hcat(&images, target.space_dim, target.rep_dim);
        let op = &rhs * linalg::pinv(&lhs, tol);
        let resid = linalg::max_abs(&(&op * &lhs - &rhs));
        (op, resid)
    }
}

fn hcat(ms: &[CMat], rows: usize, cols: usize) -> CMat {
    let mut out = CMat::zeros(rows, cols * ms.len());
    for (i, m) in ms.iter().enumerate() {
        out.view_mut((0, i * cols), (rows, cols)).copy_from(m);
    }
    out
}

/// A C*-correspondence `(A, X, B)`: a Hilbert `B`-module with a left action `φ` of `A`.
#[derive(Debug, Clone)]
pub struct Correspondence {
    left: MatrixAlgebra,
    module: HilbertModule,
    /// `phi[k]` is the matrix of `φ(a_k)`.
    phi: Vec<CMat>,
}

impl Correspondence {
    pub fn new(left: MatrixAlgebra, module: HilbertModule, phi: Vec<CMat>) -> Result<Self> {
        let d = module.dim();
        if phi.len() != left.dim() || phi.iter().any(|p| p.shape() != (d, d)) {
            return Err(Error::ShapeMismatch("one d×d left-action matrix per algebra basis element".into()));
        }
        Ok(Correspondence { left, module, phi })
    }

    /// `A` as a correspondence over itself: `⟨x,y⟩ = x*y`, actions by multiplication.
    pub fn over_itself(a: &MatrixAlgebra) -> Self {
        let basis = a.basis();
        let d = a.dim();
        let mat = |f: &dyn Fn(&AlgElement) -> AlgElement| {
            let cols: Vec<CVec> = basis.iter().map(|x| a.coords(&f(x))).collect();
            linalg::columns_to_matrix(d, &cols)
        };
        let right = basis.iter().map(|b| mat(&|x| x * b)).collect();
        let phi = basis.iter().map(|b| mat(&|x| b * x)).collect();
        let gram = basis.iter().flat_map(|x| basis.iter().map(move |y| &x.adjoint() * y)).collect();
        let module = HilbertModule::new(a.clone(), d, right, gram).expect("shapes agree");
        Correspondence { left: a.clone(), module, phi }
    }

    pub fn left(&self) -> &MatrixAlgebra {
        &self.left
    }

    pub fn module(&self) -> &HilbertModule {
        &self.module
    }

    pub fn coeff(&self) -> &MatrixAlgebra {
        self.module.coeff()
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// True when the left and coefficient algebras coincide.
    pub fn is_over_itself(&self) -> bool {
        self.left == *self.module.coeff()
    }

    /// Matrix of `φ(a)`.
    pub fn phi(&self, a: &AlgElement) -> CMat {
        let c = self.left.coords(a);
        let d = self.dim();
        let mut out = CMat::zeros(d, d);
        for (k, ck) in c.iter().enumerate() {
            if *ck != C64::new(0.0, 0.0) {
                out += &self.phi[k] * *ck;
            }
        }
        out
    }

    pub fn phi_basis(&self, k: usize) -> &CMat {
        &self.phi[k]
    }

    pub fn left_mul(&self, a: &AlgElement, x: &CVec) -> CVec {
        self.phi(a) * x
    }

    pub fn right_mul(&self, x: &CVec, b: &AlgElement) -> CVec {
        self.module.right_mul(x, b)
    }

    pub fn inner(&self, x: &CVec, y: &CVec) -> AlgElement {
        self.module.inner(x, y)
    }

    /// Same correspondence in a new module basis (columns of `p`).
    pub fn change_basis(&self, p: &CMat, tol: f64) -> Result<Correspondence> {
        let module = self.module.change_basis(p, tol)?;
        let pinv = linalg::pinv(p, tol);
        let phi = self.phi.iter().map(|m| &pinv * m * p).collect();
        Correspondence::new(self.left.clone(), module, phi)
    }

    /// Same correspondence with the left algebra re-presented (same subspace, new basis).
    pub fn with_left(&self, left: MatrixAlgebra) -> Result<Correspondence> {
        let phi = left.basis().iter().map(|a| self.phi(a)).collect();
        Correspondence::new(left, self.module.clone(), phi)
    }

    /// Same correspondence with the coefficient algebra re-presented.
    pub fn with_coeff(&self, coeff: MatrixAlgebra) -> Result<Correspondence> {
        let right = coeff.basis().iter().map(|b| self.module.right_matrix(b)).collect();
        let module = HilbertModule::new(coeff, self.dim(), right, self.module.gram.clone())?;
        Correspondence::new(self.left.clone(), module, self.phi.clone())
    }

    /// Module axioms plus: `φ` is a *-homomorphism into module maps.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("correspondence");
        rep.absorb(self.module.verify(tol));
        let d = self.dim();
        let (mut adj, mut hom, mut modmap): (f64, f64, f64) = (0.0, 0.0, 0.0);
        for (k, a) in self.left.basis().iter().enumerate() {
            let pa = &self.phi[k];
            let pas = self.phi(&a.adjoint());
            for i in 0..d {
                for j in 0..d {
                    let ei = self.module.basis_vector(i);
                    let ej = self.module.basis_vector(j);
                    let lhs = self.inner(&(pa * &ei), &ej);
                    let rhs = self.inner(&ei, &(&pas * &ej));
                    adj = adj.max(lhs.dist(&rhs));
                }
            }
            for (l, b) in self.left.basis().iter().enumerate() {
                hom = hom.max(linalg::max_abs(&(pa * &self.phi[l] - self.phi(&(a * b)))));
            }
            for r in &self.module.right {
                modmap = modmap.max(linalg::max_abs(&(pa * r - r * pa)));
            }
        }
        rep.residual("<phi(a)x, y> = <x, phi(a*)y>", adj, tol)
            .residual("phi multiplicative", hom, tol)
            .residual("phi(a) is a module map", modmap, tol);
        rep
    }
}

/// An operator on module coordinates, with its adjoint when certified.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    pub matrix: CMat,
    pub adjoint: Option<CMat>,
}

/// `Θ_{x,y}: z ↦ x⟨y,z⟩`, with adjoint `Θ_{y,x}`.
pub fn theta(module: &HilbertModule, x: &CVec, y: &CVec) -> ModuleOperator {
    ModuleOperator { matrix: theta_matrix(module, x, y), adjoint: Some(theta_matrix(module, y, x)) }
}

fn theta_matrix(module: &HilbertModule, x: &CVec, y: &CVec) -> CMat {
    let d = module.dim();
    let cols: Vec<CVec> =
        (0..d).map(|j| module.right_mul(x, &module.inner(y, &module.basis_vector(j)))).collect();
    linalg::columns_to_matrix(d, &cols)
}

/// Solves `⟨T*x, y⟩ = ⟨x, Ty⟩` on basis pairs; errors when `T` is not an adjointable module map.
pub fn adjoint_of(module: &HilbertModule, t: &CMat, tol: Tolerance) -> Result<ModuleOperator> {
    let d = module.dim();
    if t.shape() != (d, d) {
        return Err(Error::ShapeMismatch("operator must be d×d".into()));
    }
    if d == 0 {
        return Ok(ModuleOperator { matrix: t.clone(), adjoint: Some(t.clone()) });
    }
    let amb = module.coeff().ambient().dim();
    // Unknown column i of conj(S): Σ_k conj(S_ki) ⟨e_k, e_j⟩ = Σ_k T_kj ⟨e_i, e_k⟩ for all j.
    let mut m = CMat::zeros(d * amb, d);
    for k in 0..d {
        for j in 0..d {
            m.view_mut((j * amb, k), (amb, 1)).copy_from(&module.gram_entry(k, j).to_vec());
        }
    }
    let solver = linalg::pinv(&m, tol.get() * 1e-3);
    let mut s = CMat::zeros(d, d);
    let mut resid: f64 = 0.0;
    for i in 0..d {
        let mut rhs = CVec::zeros(d * amb);
        for j in 0..d {
            let mut acc = module.coeff().zero();
            for k in 0..d {
                acc = &acc + &module.gram_entry(i, k).scale(t[(k, j)]);
            }
            rhs.rows_mut(j * amb, amb).copy_from(&acc.to_vec());
        }
        let sol = &solver * &rhs;
        resid = resid.max(linalg::max_abs_vec(&(&m * &sol - &rhs)));
        for k in 0..d {
            s[(k, i)] = sol[k].conj();
        }
    }
    // An adjointable map is automatically a module map; check T commutes with the right action.
    for r in &module.right {
        resid = resid.max(linalg::max_abs(&(t * r - r * t)));
    }
    if resid > tol.get() {
        return Err(Error::NotAdjointable(resid));
    }
    Ok(ModuleOperator { matrix: t.clone(), adjoint: Some(s) })
}

/// Coefficients `c_ij` with `T = Σ c_ij Θ_{e_i,e_j}`, and the fit residual.
pub fn compact_expansion(module: &HilbertModule, t: &CMat, tol: f64) -> (CMat, f64) {
    let d = module.dim();
    if d == 0 {
        return (CMat::zeros(0, 0), 0.0);
    }
    let mut cols = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let ei = module.basis_vector(i);
            let ej = module.basis_vector(j);
            cols.push(linalg::vec_of(&theta_matrix(module, &ei, &ej)));
        }
    }
    let m = linalg::columns_to_matrix(d * d, &cols);
    let target = linalg::vec_of(t);
    let c = linalg::pinv(&m, tol) * &target;
    let resid = linalg::max_abs_vec(&(&m * &c - &target));
    (linalg::mat_of(c.as_slice(), d, d), resid)
}

/// `span{⟨x,y⟩} = B`.
pub fn is_full(module: &HilbertModule, tol: Tolerance) -> bool {
    let d = module.dim();
    let vecs: Vec<CVec> = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| module.coeff().coords(module.gram_entry(i, j)))
        .collect();
    linalg::span_dim(&vecs, tol.get()) == module.coeff().dim()
}
