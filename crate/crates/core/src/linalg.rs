//! Dense complex linear algebra helpers shared by every module.

use nalgebra::{Complex, DMatrix, DVector};

/// Double precision complex scalar.
pub type C64 = Complex<f64>;
/// Dense complex matrix.
pub type CMat = DMatrix<C64>;
/// Dense complex column vector.
pub type CVec = DVector<C64>;

/// Real scalar as a complex number.
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `exp(2πi·k/n)`.
pub fn root_of_unity(k: i64, n: usize) -> C64 {
    let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
    C64::new(theta.cos(), theta.sin())
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry modulus of a vector.
pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of vectors.
pub fn kron_vec(a: &CVec, b: &CVec) -> CVec {
    let mut out = CVec::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Numerical rank: number of singular values above `tol`.
pub fn rank(m: &CMat, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > tol)
        .count()
}

/// Moore-Penrose pseudo-inverse with singular values below `tol` dropped.
pub fn pinv(m: &CMat, tol: f64) -> CMat {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return CMat::zeros(c, r);
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors");
    let vt = svd.v_t.expect("right singular vectors");
    let k = svd.singular_values.len();
    let mut out = CMat::zeros(c, r);
    for i in 0..k {
        let s = svd.singular_values[i];
        if s > tol {
            let ui = u.column(i);
            let vi = vt.row(i).adjoint();
            out += (vi * ui.adjoint()) * re(1.0 / s);
        }
    }
    out
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn null_space(m: &CMat, tol: f64) -> CMat {
    let (r, c) = m.shape();
    if c == 0 {
        return CMat::zeros(0, 0);
    }
    if r == 0 {
        return CMat::identity(c, c);
    }
    // Pad to at least square so the full right singular basis is available.
    let padded = if r < c {
        let mut p = CMat::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors");
    let cols: Vec<CVec> = (0..c)
        .filter(|&i| svd.singular_values[i] <= tol)
        .map(|i| vt.row(i).adjoint().column(0).into_owned())
        .collect();
    columns_to_matrix(c, &cols)
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn range_basis(m: &CMat, tol: f64) -> CMat {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return CMat::zeros(r, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors");
    let cols: Vec<CVec> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol)
        .map(|i| u.column(i).into_owned())
        .collect();
    columns_to_matrix(r, &cols)
}

/// Rank, pseudo-inverse and orthonormal range basis of `m`, from one factorization.
///
/// Large tall matrices go through the Gram matrix `m*m`, computed from the nonzero entries;
/// singular values below `1e-7·σ_max` are then treated as zero as well.
pub fn column_space(m: &CMat, tol: f64) -> (usize, CMat, CMat) {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return (0, CMat::zeros(c, r), CMat::zeros(r, 0));
    }
    if r * c < 100_000 || r < 2 * c {
        let svd = m.clone().svd(true, true);
        let u = svd.u.expect("left singular vectors");
        let vt = svd.v_t.expect("right singular vectors");
        let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol).collect();
        let mut pinv = CMat::zeros(c, r);
        for &i in &keep {
            pinv += (vt.row(i).adjoint() * u.column(i).adjoint()) * re(1.0 / svd.singular_values[i]);
        }
        let cols: Vec<CVec> = keep.iter().map(|&i| u.column(i).into_owned()).collect();
        return (keep.len(), pinv, columns_to_matrix(r, &cols));
    }
    let sparse: Vec<Vec<(usize, C64)>> =
        (0..c).map(|j| m.column(j).iter().enumerate().filter(|(_, z)| z.norm() > 0.0).map(|(i, z)| (i, *z)).collect()).collect();
    let mut gram = CMat::zeros(c, c);
    let mut dense = vec![C64::new(0.0, 0.0); r];
    for j in 0..c {
        for &(i, z) in &sparse[j] {
            dense[i] = z;
        }
        for k in 0..=j {
            let v: C64 = sparse[k].iter().map(|&(i, z)| z.conj() * dense[i]).sum();
            gram[(k, j)] = v;
            gram[(j, k)] = v.conj();
        }
        for &(i, _) in &sparse[j] {
            dense[i] = C64::new(0.0, 0.0);
        }
    }
    let eig = gram.symmetric_eigen();
    let smax = eig.eigenvalues.iter().fold(0.0f64, |a, &l| a.max(l)).max(0.0).sqrt();
    let cut = tol.max(1e-7 * smax);
    let keep: Vec<usize> = (0..c).filter(|&i| eig.eigenvalues[i].max(0.0).sqrt() > cut).collect();
    let mut v = CMat::zeros(c, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        v.set_column(col, &(eig.eigenvectors.column(i) * re(1.0 / eig.eigenvalues[i].sqrt())));
    }
    let w = &v * v.adjoint();
    let mut range = CMat::zeros(r, keep.len());
    let mut pinv = CMat::zeros(c, r);
    for (k, col) in sparse.iter().enumerate() {
        for &(i, z) in col {
            for j in 0..keep.len() {
                range[(i, j)] += z * v[(k, j)];
            }
            for j in 0..c {
                pinv[(j, i)] += w[(j, k)] * z.conj();
            }
        }
    }
    (keep.len(), pinv, range)
}

/// Stack vectors of length `rows` as matrix columns.
pub fn columns_to_matrix(rows: usize, cols: &[CVec]) -> CMat {
    let mut out = CMat::zeros(rows, cols.len());
    for (j, v) in cols.iter().enumerate() {
        out.set_column(j, v);
    }
    out
}

/// Least-squares solution of `a·x = b`.
pub fn lstsq(a: &CMat, b: &CMat, tol: f64) -> CMat {
    pinv(a, tol) * b
}

/// Distance from `v` to the column span of an orthonormal basis `q`.
pub fn distance_to_span(q: &CMat, v: &CVec) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    let proj = q * (q.adjoint() * v);
    (v - proj).norm()
}

/// Indices of a maximal linearly independent prefix-greedy subset of `vectors`.
pub fn greedy_independent(vectors: &[CVec], tol: f64) -> Vec<usize> {
    let mut basis: Vec<CVec> = Vec::new();
    let mut picked = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        // Two passes of modified Gram-Schmidt for stability.
        for _ in 0..2 {
            for q in &basis {
                let c = q.dotc(&w);
                w -= q * c;
            }
        }
        let n = w.norm();
        if n > tol {
            basis.push(w / re(n));
            picked.push(i);
        }
    }
    picked
}

/// Dimension of the span of `vectors`.
pub fn span_dim(vectors: &[CVec], tol: f64) -> usize {
    greedy_independent(vectors, tol).len()
}

/// Flatten a matrix row-major into a vector.
pub fn vec_of(m: &CMat) -> CVec {
    let (r, c) = m.shape();
    let mut out = CVec::zeros(r * c);
    for i in 0..r {
        for j in 0..c {
            out[i * c + j] = m[(i, j)];
        }
    }
    out
}

/// Inverse of [`vec_of`].
pub fn mat_of(v: &[C64], rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |i, j| v[i * cols + j])
}

/// Block diagonal matrix from square blocks.
pub fn block_diag(blocks: &[CMat]) -> CMat {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let m: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = CMat::zeros(n, m);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        out.view_mut((r, c), b.shape()).copy_from(b);
        r += b.nrows();
        c += b.ncols();
    }
    out
}

/// Permutation matrix sending basis vector `j` to `perm[j]`.
pub fn permutation_matrix(perm: &[usize]) -> CMat {
    let n = perm.len();
    let mut out = CMat::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        out[(i, j)] = re(1.0);
    }
    out
}

/// Matrix unit `e_{ij}` of size `n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMat {
    let mut out = CMat::zeros(n, n);
    out[(i, j)] = re(1.0);
    out
}

/// Unit column vector `e_i` of length `n`.
pub fn unit_vec(n: usize, i: usize) -> CVec {
    let mut out = CVec::zeros(n);
    out[i] = re(1.0);
    out
}

/// Gram factorization: for a positive semidefinite `g`, returns `t` with
/// `t.adjoint() * t ≈ g` and full row rank.
pub fn gram_factor(g: &CMat, tol: f64) -> CMat {
    let n = g.nrows();
    if n == 0 {
        return CMat::zeros(0, 0);
    }
    let h = (g + g.adjoint()) * re(0.5);
    let eig = h.symmetric_eigen();
    let keep: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > tol).collect();
    let mut t = CMat::zeros(keep.len(), n);
    for (row, &i) in keep.iter().enumerate() {
        let s = eig.eigenvalues[i].sqrt();
        let v = eig.eigenvectors.column(i);
        for j in 0..n {
            t[(row, j)] = v[j].conj() * re(s);
        }
    }
    t
}

/// Smallest eigenvalue of the Hermitian part of `g`.
pub fn min_eigenvalue(g: &CMat) -> f64 {
    if g.nrows() == 0 {
        return 0.0;
    }
    let h = (g + g.adjoint()) * re(0.5);
    h.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
