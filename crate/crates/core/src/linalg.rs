//! Dense complex linear algebra on small local spaces.
//!
//! Kets are column vectors and operators are square matrices over
//! [`Complex64`]. Every decision that compares against zero (orthogonality,
//! rank, positivity) is thresholded by a caller-supplied tolerance, normally
//! [`DEFAULT_TOL`].

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for orthogonality, rank and positivity decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub type CVec = DVector<Complex64>;
pub type CMat = DMatrix<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Computational basis ket `|i⟩` in dimension `dim`.
pub fn basis(dim: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(dim);
    v[i] = re(1.0);
    v
}

/// Ket from real amplitudes, left unnormalized.
pub fn from_reals(amps: &[f64]) -> CVec {
    CVec::from_iterator(amps.len(), amps.iter().map(|&x| re(x)))
}

/// Ket with the listed `(index, amplitude)` components, left unnormalized.
pub fn sparse_ket(dim: usize, terms: &[(usize, Complex64)]) -> CVec {
    let mut v = CVec::zeros(dim);
    for &(i, a) in terms {
        v[i] += a;
    }
    v
}

pub fn normalize(v: &CVec) -> Result<CVec> {
    let n = v.norm();
    if !n.is_finite() || n == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.unscale(n))
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn inner(u: &CVec, v: &CVec) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(u.dotc(v))
}

/// `⟨u|M|w⟩`.
pub fn sandwich(u: &CVec, m: &CMat, w: &CVec) -> Complex64 {
    u.dotc(&(m * w))
}

/// Rank-one projector `|v⟩⟨v| / ⟨v|v⟩`.
pub fn projector(v: &CVec) -> Result<CMat> {
    let v = normalize(v)?;
    Ok(&v * v.adjoint())
}

/// Orthonormal basis of `span(vs)`, by two-pass modified Gram–Schmidt.
///
/// A vector counts as independent when its residual after projecting out the
/// previous basis has squared norm above `tol` times the largest squared
/// input norm, which is the same criterion [`rank_of`] applies to the Gram
/// spectrum.
pub fn orthonormal_basis(vs: &[CVec], tol: f64) -> Vec<CVec> {
    let scale = vs.iter().map(|v| v.norm_squared()).fold(0.0, f64::max);
    let mut out: Vec<CVec> = Vec::new();
    if scale == 0.0 {
        return out;
    }
    for v in vs {
        if let Some(q) = residual_direction(&out, v, tol * scale) {
            out.push(q);
        }
    }
    out
}

fn residual_direction(basis: &[CVec], v: &CVec, threshold_sq: f64) -> Option<CVec> {
    let mut w = v.clone();
    for _ in 0..2 {
        for q in basis {
            let coeff = q.dotc(&w);
            w -= q * coeff;
        }
    }
    let n2 = w.norm_squared();
    if n2 > threshold_sq {
        Some(w.unscale(n2.sqrt()))
    } else {
        None
    }
}

/// Orthonormal basis of the orthogonal complement of `span(vs)` in `C^dim`.
pub fn orthonormal_complement(vs: &[CVec], dim: usize, tol: f64) -> Result<Vec<CVec>> {
    for v in vs {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    let mut span = orthonormal_basis(vs, tol);
    let rank = span.len();
    let mut out = Vec::with_capacity(dim - rank);
    // Extend with computational basis vectors; each accepted residual has
    // squared norm at least 1/dim for the best remaining candidate.
    for i in 0..dim {
        if span.len() == dim {
            break;
        }
        if let Some(q) = residual_direction(&span, &basis(dim, i), 0.25 / dim as f64) {
            span.push(q.clone());
            out.push(q);
        }
    }
    debug_assert_eq!(out.len(), dim - rank);
    Ok(out)
}

/// Orthogonal projector onto `span(vs)` in `C^dim`.
pub fn span_projector(vs: &[CVec], dim: usize, tol: f64) -> CMat {
    let mut p = CMat::zeros(dim, dim);
    for q in orthonormal_basis(vs, tol) {
        p += &q * q.adjoint();
    }
    p
}

/// Numerical rank of a list of vectors: the number of Gram-matrix singular
/// values above `tol` times the largest.
pub fn rank_of(vs: &[CVec], tol: f64) -> Result<usize> {
    if vs.is_empty() {
        return Ok(0);
    }
    let dim = vs[0].len();
    if let Some(bad) = vs.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let n = vs.len();
    let gram = CMat::from_fn(n, n, |i, j| vs[i].dotc(&vs[j]));
    let sv = gram.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * max).count())
}

/// Frobenius distance between `m` and its adjoint.
pub fn hermitian_residual(m: &CMat) -> f64 {
    (m - m.adjoint()).norm()
}

fn check_hermitian(m: &CMat, tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let r = hermitian_residual(m);
    if r > tol * m.norm().max(1.0) {
        return Err(Error::NotHermitian { residual: r });
    }
    Ok(())
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat, tol: f64) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    let mut ev: Vec<f64> = SymmetricEigen::new(hermitize(m))
        .eigenvalues
        .iter()
        .cloned()
        .collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// `max(0, -λ_min(E))` for Hermitian `E`.
pub fn psd_residual(e: &CMat) -> Result<f64> {
    let ev = hermitian_eigenvalues(e, DEFAULT_TOL)?;
    Ok(ev.first().map_or(0.0, |&l| (-l).max(0.0)))
}

/// PSD square root `E^{1/2}`; eigenvalues below zero are clamped.
pub fn psd_sqrt(e: &CMat) -> Result<CMat> {
    check_hermitian(e, DEFAULT_TOL)?;
    let eig = SymmetricEigen::new(hermitize(e));
    let d = eig.eigenvalues.len();
    let mut out = CMat::zeros(d, d);
    for k in 0..d {
        let lam = eig.eigenvalues[k].max(0.0);
        if lam == 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        out += (v * v.adjoint()).scale(lam.sqrt());
    }
    Ok(out)
}

/// The `dim²` real-coordinate basis of Hermitian matrices: diagonal units,
/// then for each `k < l` the symmetric and antisymmetric off-diagonal units.
pub fn hermitian_unit_basis(dim: usize) -> Vec<CMat> {
    let mut out = Vec::with_capacity(dim * dim);
    for k in 0..dim {
        let mut m = CMat::zeros(dim, dim);
        m[(k, k)] = re(1.0);
        out.push(m);
    }
    for k in 0..dim {
        for l in (k + 1)..dim {
            let mut s = CMat::zeros(dim, dim);
            s[(k, l)] = re(1.0);
            s[(l, k)] = re(1.0);
            out.push(s);
            let mut a = CMat::zeros(dim, dim);
            a[(k, l)] = c(0.0, 1.0);
            a[(l, k)] = c(0.0, -1.0);
            out.push(a);
        }
    }
    out
}

/// Basis, over the reals, of the Hermitian `dim × dim` matrices `E` with
/// `⟨u|E|w⟩ = 0` for every constraint `(u, w)`.
///
/// The constraints are rewritten as a real linear system on the `dim²`
/// coordinates of [`hermitian_unit_basis`] and its null space is read off an
/// SVD. Each returned matrix has its first nonzero coordinate positive.
pub fn hermitian_solution_space(
    constraints: &[(CVec, CVec)],
    dim: usize,
    tol: f64,
) -> Result<Vec<CMat>> {
    for (u, w) in constraints {
        for v in [u, w] {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
        }
    }
    let units = hermitian_unit_basis(dim);
    let n = units.len();
    if constraints.is_empty() {
        return Ok(units);
    }
    let rows = (2 * constraints.len()).max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for (ci, (u, w)) in constraints.iter().enumerate() {
        for (j, b) in units.iter().enumerate() {
            let g = sandwich(u, b, w);
            a[(2 * ci, j)] = g.re;
            a[(2 * ci + 1, j)] = g.im;
        }
    }
    let svd = SVD::new(a, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let threshold = tol * smax.max(1.0);
    let mut out = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s > threshold {
            continue;
        }
        let mut x: Vec<f64> = v_t.row(k).iter().cloned().collect();
        if let Some(first) = x.iter().find(|v| v.abs() > 1e-12).cloned() {
            if first < 0.0 {
                x.iter_mut().for_each(|v| *v = -*v);
            }
        }
        let mut m = CMat::zeros(dim, dim);
        for (j, b) in units.iter().enumerate() {
            if x[j] != 0.0 {
                m += b.scale(x[j]);
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// True when `u = e^{iθ} v` for some phase, up to `tol` on `1 - |⟨u|v⟩|`.
/// Both inputs are assumed normalized.
pub fn same_ray(u: &CVec, v: &CVec, tol: f64) -> bool {
    u.len() == v.len() && (1.0 - u.dotc(v).norm()).abs() <= tol
}
