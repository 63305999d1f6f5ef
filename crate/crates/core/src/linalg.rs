//! Dense complex matrix helpers shared by every module.

use nalgebra::DMatrix;
pub use num_complex::Complex64;

/// Dense complex square matrix. Unitarity is checked, not enforced by type.
pub type CMat = DMatrix<Complex64>;

pub const UNITARY_TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iθ}`.
pub fn expi(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_rows(rows: &[&[Complex64]]) -> CMat {
    let n = rows.len();
    CMat::from_fn(n, rows[0].len(), |i, j| rows[i][j])
}

pub fn diag(entries: &[Complex64]) -> CMat {
    let n = entries.len();
    CMat::from_fn(n, n, |i, j| if i == j { entries[i] } else { Complex64::new(0.0, 0.0) })
}

/// Largest elementwise modulus of `a - b`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Elementwise deviation of `U†U` from the identity.
pub fn unitarity_error(u: &CMat) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}

pub fn is_unitary(u: &CMat, tol: f64) -> bool {
    unitarity_error(u) <= tol
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Operator norm: square root of the largest eigenvalue of `A†A`.
pub fn op_norm(a: &CMat) -> f64 {
    a.clone().singular_values().max()
}

/// Square root of the smallest eigenvalue of `A†A`.
pub fn min_singular(a: &CMat) -> f64 {
    a.clone().singular_values().min()
}

/// Leading `dim × dim` block.
pub fn leading_block(m: &CMat, dim: usize) -> CMat {
    m.view((0, 0), (dim, dim)).into_owned()
}

/// Submatrix on the given rows and columns (same index list for both).
pub fn restrict(m: &CMat, idx: &[usize]) -> CMat {
    CMat::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}
