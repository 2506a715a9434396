use crate::fdalg::{AlgElement, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec, C64};
use crate::report::{Report, Tolerance};

use super::module::Correspondence;

/// Spanning lists `(A⁰, X⁰, B⁰)` with `X⁰` closed under both actions, up to scalars and zero.
#[derive(Debug, Clone)]
pub struct GeneratingSystem {
    pub a0: Vec<AlgElement>,
    pub x0: Vec<CVec>,
    pub b0: Vec<AlgElement>,
}

/// Where `v` sits relative to a generator list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lookup {
    Zero,
    /// `v = c·x_j`.
    Multiple(usize, C64),
    Outside,
}

/// Finds `v` among `ℂ·x0 ∪ {0}`.
pub fn lookup(x0: &[CVec], v: &CVec, tol: f64) -> Lookup {
    if v.norm() <= tol {
        return Lookup::Zero;
    }
    for (j, x) in x0.iter().enumerate() {
        let n2 = x.norm_squared();
        if n2 == 0.0 {
            continue;
        }
        let c = x.dotc(v) / linalg::re(n2);
        if (v - x * c).norm() <= tol {
            return Lookup::Multiple(j, c);
        }
    }
    Lookup::Outside
}

impl GeneratingSystem {
    /// Spanning and closure conditions.
    pub fn verify(&self, c: &Correspondence, tol: Tolerance) -> Report {
        let mut rep = Report::new("generating system");
        let t = tol.get();
        let coords = |alg: &MatrixAlgebra, xs: &[AlgElement]| -> (usize, f64) {
            let v: Vec<CVec> = xs.iter().map(|a| alg.coords(a)).collect();
            let inside = xs.iter().map(|a| alg.residual(a)).fold(0.0, f64::max);
            (linalg::span_dim(&v, t), inside)
        };
        let (da, ra) = coords(c.left(), &self.a0);
        let (db, rb) = coords(c.coeff(), &self.b0);
        let dx = linalg::span_dim(&self.x0, t);
        let mut closed = true;
        for (i, x) in self.x0.iter().enumerate() {
            for (k, a) in self.a0.iter().enumerate() {
                if lookup(&self.x0, &c.left_mul(a, x), t) == Lookup::Outside {
                    if closed {
                        rep.witness(format!("a0[{k}]·x0[{i}] is not a multiple of a generator"));
                    }
                    closed = false;
                }
            }
            for (k, b) in self.b0.iter().enumerate() {
                if lookup(&self.x0, &c.right_mul(x, b), t) == Lookup::Outside {
                    if closed {
                        rep.witness(format!("x0[{i}]·b0[{k}] is not a multiple of a generator"));
                    }
                    closed = false;
                }
            }
        }
        rep.residual("A0, B0 lie in the algebras", ra.max(rb), tol)
            .flag("span A0 = A", da == c.left().dim())
            .flag("span X0 = X", dx == c.dim())
            .flag("span B0 = B", db == c.coeff().dim())
            .flag("X0 closed under A0 and B0", closed);
        rep
    }
}

/// A linear map between two presented algebras, stored on basis coordinates.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    pub source: MatrixAlgebra,
    pub target: MatrixAlgebra,
    pub matrix: CMat,
}

impl AlgebraMap {
    /// The linear map agreeing with `f` on the source basis.
    pub fn from_fn(source: &MatrixAlgebra, target: &MatrixAlgebra, f: impl Fn(&AlgElement) -> AlgElement) -> Self {
        let cols: Vec<CVec> = source.basis().iter().map(|b| target.coords(&f(b))).collect();
        AlgebraMap {
            source: source.clone(),
            target: target.clone(),
            matrix: linalg::columns_to_matrix(target.dim(), &cols),
        }
    }

    pub fn identity(a: &MatrixAlgebra) -> Self {
        AlgebraMap::from_fn(a, a, |x| x.clone())
    }

    pub fn apply(&self, a: &AlgElement) -> AlgElement {
        self.target.element(&(&self.matrix * self.source.coords(a)))
    }

    /// Multiplicative, star-preserving and bijective on bases.
    pub fn verify_isomorphism(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("algebra isomorphism");
        let (mut mult, mut star): (f64, f64) = (0.0, 0.0);
        let basis = self.source.basis();
        for x in basis {
            let fx = self.apply(x);
            star = star.max(self.apply(&x.adjoint()).dist(&fx.adjoint()));
            for y in basis {
                mult = mult.max(self.apply(&(x * y)).dist(&(&fx * &self.apply(y))));
            }
        }
        let bij = self.source.dim() == self.target.dim() && linalg::rank(&self.matrix, tol.get()) == self.source.dim();
        rep.residual("multiplicative", mult, tol)
            .residual("star-preserving", star, tol)
            .flag("bijective", bij);
        rep
    }
}

/// The linear extension of `x0[i] ↦ images[i]`, as a matrix between module coordinates.
pub fn linear_extension(src_dim: usize, dst_dim: usize, x0: &[CVec], images: &[CVec], tol: f64) -> CMat {
    let x = linalg::columns_to_matrix(src_dim, x0);
    let y = linalg::columns_to_matrix(dst_dim, images);
    y * linalg::pinv(&x, tol)
}

/// Checks that `x0[i] ↦ images[i]` extends to an isomorphism `src → dst` covering `φ_A`, `φ_B`.
pub fn verify_correspondence_isomorphism(
    src: &Correspondence,
    dst: &Correspondence,
    phi_a: &AlgebraMap,
    phi_b: &AlgebraMap,
    gens: &GeneratingSystem,
    images: &[CVec],
    tol: Tolerance,
) -> Report {
    let mut rep = Report::new("correspondence isomorphism");
    let t = tol.get();
    if images.len() != gens.x0.len() {
        rep.flag("one image per generator", false);
        return rep;
    }
    rep.absorb(phi_a.verify_isomorphism(tol));
    rep.absorb(phi_b.verify_isomorphism(tol));
    rep.absorb(gens.verify(src, tol));
    let image_gens = GeneratingSystem {
        a0: gens.a0.iter().map(|a| phi_a.apply(a)).collect(),
        x0: images.to_vec(),
        b0: gens.b0.iter().map(|b| phi_b.apply(b)).collect(),
    };
    let mut target = image_gens.verify(dst, tol);
    target.name = "image generating system".into();
    rep.absorb(target);

    let (mut ip, mut left, mut right, mut scalar): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let note = |rep: &mut Report, what: String, r: f64, worst: &mut f64| {
        if r > t && *worst <= t {
            rep.witness(what);
        }
        *worst = worst.max(r);
    };
    let resolve = |v: &CVec| -> Option<CVec> {
        match lookup(&gens.x0, v, t) {
            Lookup::Zero => Some(CVec::zeros(dst.dim())),
            Lookup::Multiple(j, c) => Some(&images[j] * c),
            Lookup::Outside => None,
        }
    };
    for (i, x) in gens.x0.iter().enumerate() {
        for (j, y) in gens.x0.iter().enumerate() {
            let r = dst.inner(&images[i], &images[j]).dist(&phi_b.apply(&src.inner(x, y)));
            note(&mut rep, format!("<Phi(x{i}), Phi(x{j})> differs from phi_B(<x{i}, x{j}>)"), r, &mut ip);
            // Φ0(c·x) = c·Φ0(x) whenever two generators are proportional.
            if i != j {
                if let Lookup::Multiple(k, c) = lookup(std::slice::from_ref(x), y, t) {
                    debug_assert_eq!(k, 0);
                    let r = (&images[j] - &images[i] * c).norm();
                    note(&mut rep, format!("x{j} = c·x{i} but the images are not"), r, &mut scalar);
                }
            }
        }
        for (k, a) in gens.a0.iter().enumerate() {
            let r = match resolve(&src.left_mul(a, x)) {
                Some(img) => (img - dst.left_mul(&phi_a.apply(a), &images[i])).norm(),
                None => f64::INFINITY,
            };
            note(&mut rep, format!("Phi(a{k} x{i}) differs from phi_A(a{k}) Phi(x{i})"), r, &mut left);
        }
        for (k, b) in gens.b0.iter().enumerate() {
            let r = match resolve(&src.right_mul(x, b)) {
                Some(img) => (img - dst.right_mul(&images[i], &phi_b.apply(b))).norm(),
                None => f64::INFINITY,
            };
            note(&mut rep, format!("Phi(x{i} b{k}) differs from Phi(x{i}) phi_B(b{k})"), r, &mut right);
        }
    }
    rep.residual("inner product preserved", ip, tol)
        .residual("left action preserved", left, tol)
        .residual("right action preserved", right, tol)
        .residual("scalar multiplication preserved", scalar, tol);

    // Linear relations among generators must be respected by the images.
    let xm = linalg::columns_to_matrix(src.dim(), &gens.x0);
    let ym = linalg::columns_to_matrix(dst.dim(), images);
    let relations = linalg::null_space(&xm, t);
    let well_defined = if relations.ncols() == 0 { 0.0 } else { linalg::max_abs(&(&ym * &relations)) };
    rep.residual("well defined on span(X0)", well_defined, tol);
    let phi = linear_extension(src.dim(), dst.dim(), &gens.x0, images, t);
    let bij = src.dim() == dst.dim() && linalg::rank(&phi, t) == src.dim();
    rep.flag("bijective", bij);
    rep
}
