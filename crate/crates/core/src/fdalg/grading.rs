use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::report::{Report, Tolerance};

use super::algebra::{combination, AlgElement, MatrixAlgebra};
use super::group::FiniteGroup;

/// A grading `A = ⊕_s A_s` of a [`MatrixAlgebra`] by a finite group.
#[derive(Debug, Clone)]
pub struct AlgGrading {
    group: FiniteGroup,
    algebra: MatrixAlgebra,
    components: Vec<Vec<AlgElement>>,
    /// Orthonormal basis of each component inside the flattened ambient space.
    ranges: Vec<CMat>,
    /// Pseudo-inverse of the stacked homogeneous basis.
    solver: CMat,
}

impl AlgGrading {
    /// Components given as `(degree, basis)`; repeated degrees are merged, absent degrees are zero.
    pub fn new(group: FiniteGroup, algebra: MatrixAlgebra, parts: Vec<(usize, Vec<AlgElement>)>) -> Result<Self> {
        let mut components = vec![Vec::new(); group.order()];
        for (s, basis) in parts {
            if s >= group.order() {
                return Err(Error::ShapeMismatch(format!("degree {s} outside the group")));
            }
            for b in &basis {
                algebra.ambient().check(b)?;
            }
            components[s].extend(basis);
        }
        Ok(Self::assemble(group, algebra, components))
    }

    fn assemble(group: FiniteGroup, algebra: MatrixAlgebra, components: Vec<Vec<AlgElement>>) -> Self {
        let amb = algebra.ambient().dim();
        let ranges = components
            .iter()
            .map(|c| {
                let m = linalg::columns_to_matrix(amb, &c.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
                linalg::range_basis(&m, 1e-12)
            })
            .collect();
        let all: Vec<CVec> = components.iter().flatten().map(|b| b.to_vec()).collect();
        let solver = linalg::pinv(&linalg::columns_to_matrix(amb, &all), 1e-12);
        AlgGrading { group, algebra, components, ranges, solver }
    }

    /// Everything in degree `e`.
    pub fn trivial(group: FiniteGroup, algebra: MatrixAlgebra) -> Self {
        let mut components = vec![Vec::new(); group.order()];
        components[group.identity()] = algebra.basis().to_vec();
        Self::assemble(group, algebra, components)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &MatrixAlgebra {
        &self.algebra
    }

    pub fn component(&self, s: usize) -> &[AlgElement] {
        &self.components[s]
    }

    /// Degrees with nonzero components.
    pub fn support(&self) -> Vec<usize> {
        self.group.elements().filter(|&s| !self.components[s].is_empty()).collect()
    }

    /// Concatenated component bases with their degrees.
    pub fn homogeneous_basis(&self) -> Vec<(usize, AlgElement)> {
        self.group
            .elements()
            .flat_map(|s| self.components[s].iter().map(move |b| (s, b.clone())))
            .collect()
    }

    /// Degrees of the homogeneous basis, in order.
    pub fn degrees(&self) -> Vec<usize> {
        self.homogeneous_basis().into_iter().map(|(s, _)| s).collect()
    }

    /// The algebra rebased onto the homogeneous basis.
    pub fn graded_algebra(&self, tol: f64) -> Result<MatrixAlgebra> {
        let basis = self.homogeneous_basis().into_iter().map(|(_, b)| b).collect();
        self.algebra.rebase(basis, tol)
    }

    /// Distance from `a` to `A_s`.
    pub fn residual_in(&self, s: usize, a: &AlgElement) -> f64 {
        linalg::distance_to_span(&self.ranges[s], &a.to_vec())
    }

    /// Degree of `a` if it is homogeneous and nonzero.
    pub fn degree_of(&self, a: &AlgElement, tol: f64) -> Option<usize> {
        if a.is_zero(tol) {
            return None;
        }
        self.group.elements().find(|&s| self.residual_in(s, a) <= tol)
    }

    /// Coordinates in the concatenated homogeneous basis.
    pub fn homogeneous_coords(&self, a: &AlgElement) -> CVec {
        &self.solver * a.to_vec()
    }

    /// Same components over another presentation of the algebra.
    pub fn with_algebra(&self, algebra: MatrixAlgebra) -> Result<Self> {
        if algebra.ambient() != self.algebra.ambient() {
            return Err(Error::ShapeMismatch("grading moved to a different ambient algebra".into()));
        }
        Ok(Self::assemble(self.group.clone(), algebra, self.components.clone()))
    }
}

/// Checks direct-sum spanning, `A_s·A_t ⊆ A_{st}` and `A_s* = A_{s⁻¹}`.
pub fn verify_grading(grading: &AlgGrading, tol: Tolerance) -> Report {
    let mut rep = Report::new("grading");
    let g = &grading.group;
    let a = &grading.algebra;
    let hb = grading.homogeneous_basis();
    let inside = hb.iter().map(|(_, b)| a.residual(b)).fold(0.0, f64::max);
    let vecs: Vec<CVec> = hb.iter().map(|(_, b)| b.to_vec()).collect();
    let independent = linalg::span_dim(&vecs, tol.get());
    let direct = independent == hb.len() && hb.len() == a.dim();
    if !direct {
        rep.witness(format!("{} homogeneous elements span {} of {} dimensions", hb.len(), independent, a.dim()));
    }
    let mut mult: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (s, x) in &hb {
        let r = grading.residual_in(g.inv(*s), &x.adjoint());
        if r > tol.get() && star <= tol.get() {
            rep.witness(format!("adjoint of a degree-{} element leaves degree {}", g.label(*s), g.label(g.inv(*s))));
        }
        star = star.max(r);
        for (t, y) in &hb {
            let r = grading.residual_in(g.mul(*s, *t), &(x * y));
            if r > tol.get() && mult <= tol.get() {
                rep.witness(format!(
                    "product of degrees {} and {} leaves degree {}",
                    g.label(*s),
                    g.label(*t),
                    g.label(g.mul(*s, *t))
                ));
            }
            mult = mult.max(r);
        }
    }
    rep.residual("components lie in the algebra", inside, tol)
        .flag("direct sum spanning the algebra", direct)
        .residual("A_s A_t in A_st", mult, tol)
        .residual("A_s* in A_(s^-1)", star, tol);
    rep
}

/// Splits `a` into homogeneous components; fails when the grading does not span `a`.
pub fn homogeneous_decomposition(grading: &AlgGrading, a: &AlgElement, tol: Tolerance) -> Result<Vec<(usize, AlgElement)>> {
    let c = grading.homogeneous_coords(a);
    let mut out = Vec::new();
    let zero = grading.algebra.zero();
    let mut total = zero.clone();
    let mut off = 0;
    for s in grading.group.elements() {
        let comp = &grading.components[s];
        if comp.is_empty() {
            continue;
        }
        let part = combination(&zero, &c.as_slice()[off..off + comp.len()], comp);
        off += comp.len();
        total = &total + &part;
        if !part.is_zero(tol.get()) {
            out.push((s, part));
        }
    }
    let resid = total.dist(a);
    if resid > tol.get() {
        return Err(Error::NotInSpan { what: "homogeneous decomposition".into(), residual: resid });
    }
    Ok(out)
}
