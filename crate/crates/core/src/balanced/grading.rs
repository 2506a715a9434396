use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fdalg::{AlgElement, AlgGrading, FiniteGroup, MatrixAlgebra};
use crate::linalg::{self, CMat, CVec, C64};
use crate::report::{Report, Tolerance};

/// The character group `Ẑ` of a compact abelian `Z`: `ℤ` for the circle, `ℤ_n` for `ℤ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualGroup {
    Circle,
    Cyclic(usize),
}

/// A point `z = exp(2πi·t)` of `Z`; the element `k` of `ℤ_n` is `Turn(k/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Turn(pub f64);

impl Turn {
    pub fn compose(self, other: Turn) -> Turn {
        Turn((self.0 + other.0).rem_euclid(1.0))
    }

    pub fn inverse(self) -> Turn {
        Turn((-self.0).rem_euclid(1.0))
    }
}

impl DualGroup {
    /// Canonical representative of a degree.
    pub fn reduce(self, k: i64) -> i64 {
        match self {
            DualGroup::Circle => k,
            DualGroup::Cyclic(n) => k.rem_euclid(n as i64),
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        self.reduce(a + b)
    }

    pub fn neg(self, a: i64) -> i64 {
        self.reduce(-a)
    }

    /// `χ_k(z)`.
    pub fn character(self, k: i64, z: Turn) -> C64 {
        let theta = 2.0 * std::f64::consts::PI * (k as f64) * z.0;
        C64::new(theta.cos(), theta.sin())
    }

    /// Points whose uniform average equals Haar integration on characters of degree at most
    /// `max_degree` in absolute value.
    pub fn haar_points(self, max_degree: u64) -> Vec<Turn> {
        let n = match self {
            DualGroup::Cyclic(n) => n,
            DualGroup::Circle => 2 * max_degree as usize + 1,
        };
        (0..n).map(|k| Turn(k as f64 / n as f64)).collect()
    }
}

/// A finitely supported `Ẑ`-grading of a finite-dimensional algebra, stored as homogeneous
/// bases per degree.
#[derive(Debug, Clone)]
pub struct DualGrading {
    group: DualGroup,
    algebra: MatrixAlgebra,
    parts: BTreeMap<i64, Vec<AlgElement>>,
    basis: Vec<(i64, AlgElement)>,
    /// Maps algebra coordinates to coordinates in `basis`.
    to_homogeneous: CMat,
}

impl DualGrading {
    /// Components must together form a basis of `algebra`.
    pub fn new(group: DualGroup, algebra: MatrixAlgebra, parts: Vec<(i64, Vec<AlgElement>)>, tol: f64) -> Result<Self> {
        if let DualGroup::Cyclic(0) = group {
            return Err(Error::InvalidGroup("ℤ_0 is not a finite dual group".into()));
        }
        let mut merged: BTreeMap<i64, Vec<AlgElement>> = BTreeMap::new();
        for (k, elems) in parts {
            merged.entry(group.reduce(k)).or_default().extend(elems);
        }
        merged.retain(|_, v| !v.is_empty());
        let basis: Vec<(i64, AlgElement)> =
            merged.iter().flat_map(|(&k, v)| v.iter().map(move |a| (k, a.clone()))).collect();
        let d = algebra.dim();
        if basis.len() != d {
            return Err(Error::ShapeMismatch(format!("{} homogeneous elements for a {d}-dimensional algebra", basis.len())));
        }
        for (k, a) in &basis {
            let r = algebra.residual(a);
            if r > tol {
                return Err(Error::NotInSpan { what: format!("degree {k} element outside the algebra"), residual: r });
            }
        }
        let cols: Vec<CVec> = basis.iter().map(|(_, a)| algebra.coords(a)).collect();
        let m = linalg::columns_to_matrix(d, &cols);
        if linalg::rank(&m, tol) < d {
            return Err(Error::precondition("components form a basis", "homogeneous elements are linearly dependent"));
        }
        let to_homogeneous = m.try_inverse().unwrap_or_else(|| CMat::zeros(0, 0));
        Ok(DualGrading { group, algebra, parts: merged, basis, to_homogeneous })
    }

    /// Everything in degree zero.
    pub fn trivial(group: DualGroup, algebra: MatrixAlgebra) -> Self {
        let parts = vec![(0, algebra.basis().to_vec())];
        DualGrading::new(group, algebra, parts, 1e-9).expect("algebra basis")
    }

    /// A grading by a cyclic group whose elements are labeled `0, …, n−1` in the standard way.
    pub fn from_cyclic(grading: &AlgGrading, tol: f64) -> Result<Self> {
        let g = grading.group();
        if g.table() != FiniteGroup::cyclic(g.order())?.table() {
            return Err(Error::InvalidGroup("dual group must be the standard cyclic group".into()));
        }
        let parts = g.elements().map(|s| (s as i64, grading.component(s).to_vec())).collect();
        DualGrading::new(DualGroup::Cyclic(g.order()), grading.algebra().clone(), parts, tol)
    }

    pub fn group(&self) -> DualGroup {
        self.group
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    /// Degrees with a nonzero component, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.parts.keys().copied().collect()
    }

    pub fn component(&self, k: i64) -> &[AlgElement] {
        self.parts.get(&self.group.reduce(k)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn homogeneous_basis(&self) -> &[(i64, AlgElement)] {
        &self.basis
    }

    /// Largest `|k|` over the support.
    pub fn max_degree(&self) -> u64 {
        self.parts.keys().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    /// Coefficients of `a` in the homogeneous basis.
    pub fn homogeneous_coords(&self, a: &AlgElement) -> CVec {
        &self.to_homogeneous * self.algebra.coords(a)
    }

    /// Homogeneous components of `a` over the support.
    pub fn decompose(&self, a: &AlgElement) -> Vec<(i64, AlgElement)> {
        let c = self.homogeneous_coords(a);
        let zero = self.algebra.zero();
        let mut out: BTreeMap<i64, AlgElement> = BTreeMap::new();
        for ((k, b), x) in self.basis.iter().zip(c.iter()) {
            let slot = out.entry(*k).or_insert_with(|| zero.clone());
            *slot = &*slot + &b.scale(*x);
        }
        out.into_iter().collect()
    }

    /// Distance of `a` from the degree-`k` component, measured by its other components.
    pub fn residual_in(&self, k: i64, a: &AlgElement) -> f64 {
        let k = self.group.reduce(k);
        let outside = self.decompose(a).into_iter().filter(|(j, _)| *j != k).map(|(_, x)| x.max_abs()).fold(0.0, f64::max);
        outside.max(self.algebra.residual(a))
    }

    /// The associated action: `μ_z(a) = χ(z)a` on `A_χ`.
    pub fn mu(&self, z: Turn, a: &AlgElement) -> AlgElement {
        let zero = self.algebra.zero();
        self.decompose(a).into_iter().fold(zero, |acc, (k, x)| &acc + &x.scale(self.group.character(k, z)))
    }

    /// `A_χ A_ω ⊆ A_{χω}` and `A_χ* ⊆ A_{χ⁻¹}` on homogeneous bases.
    pub fn verify(&self, tol: Tolerance) -> Report {
        let mut rep = Report::new("dual grading");
        let mut mult = 0.0f64;
        let mut star = 0.0f64;
        for (k, a) in &self.basis {
            star = star.max(self.residual_in(self.group.neg(*k), &a.adjoint()));
            for (j, b) in &self.basis {
                mult = mult.max(self.residual_in(self.group.add(*k, *j), &(a * b)));
            }
        }
        rep.residual("multiplicative", mult, tol);
        rep.residual("star compatible", star, tol);
        rep
    }

    /// `span(A_χ A_ω) = A_{χω}` for every pair in the support.
    pub fn saturation(&self, tol: Tolerance) -> Report {
        let t = tol.get();
        let mut rep = Report::new("saturation");
        let support = self.support();
        for &k in &support {
            for &j in &support {
                let prods: Vec<CVec> = self
                    .component(k)
                    .iter()
                    .flat_map(|a| self.component(j).iter().map(move |b| a * b))
                    .map(|p| self.algebra.coords(&p))
                    .collect();
                let target: Vec<CVec> =
                    self.component(self.group.add(k, j)).iter().map(|c| self.algebra.coords(c)).collect();
                let dp = linalg::span_dim(&prods, t);
                let dt = target.len();
                let mut both = prods;
                both.extend(target);
                let ok = dp == dt && linalg::span_dim(&both, t) == dt;
                rep.flag(format!("A_{k} A_{j} = A_{}", self.group.add(k, j)), ok);
                if !ok {
                    rep.witness(format!("dim span A_{k} A_{j} = {dp}, dim A_{} = {dt}", self.group.add(k, j)));
                }
            }
        }
        rep
    }
}
