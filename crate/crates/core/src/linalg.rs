//! Dense complex matrices for small dimensions.
//!
//! Everything here is sized for the handful-of-levels systems this crate
//! deals with (d up to a few dozen): row-major storage, naive products and a
//! cyclic Jacobi eigensolver for Hermitian input.

use std::fmt;
use std::ops::{Add, Deref, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest tolerated `|M_jk - conj(M_kj)|` when building a [`HermitianMatrix`],
/// relative to `max(1, max |M_jk|)`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Eigenvalues down to `-PSD_TOLERANCE` are treated as zero by [`sqrt_psd`],
/// as are positive ones below `dim * f64::EPSILON` times the largest.
pub const PSD_TOLERANCE: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;
const JACOBI_TARGET: f64 = 1e-13;

/// A square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from nested rows, rejecting ragged, empty or non-finite input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: dim,
                });
            }
            for (c, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                data.push(*z);
            }
        }
        Ok(Self { dim, data })
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of vectors with different lengths");
        Self::from_fn(u.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(<[C64]>::to_vec).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm_sq(self).sqrt()
    }

    /// `max |M_jk - conj(M_kj)|` over all index pairs.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `<u|M|u>` for a column vector `u`.
    pub fn quadratic_form(&self, u: &[C64]) -> C64 {
        assert_eq!(u.len(), self.dim);
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..self.dim {
            let mut row = C64::new(0.0, 0.0);
            for c in 0..self.dim {
                row += self[(r, c)] * u[c];
            }
            acc += u[r].conj() * row;
        }
        acc
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.data[k * d + c];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.dim)).finish()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Commutator `XY - YX`.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(&(x * y) - &(y * x))
}

/// Sum of squared entry moduli, i.e. `tr(X^dagger X)`.
pub fn frobenius_norm_sq(x: &ComplexMatrix) -> f64 {
    x.data.iter().map(C64::norm_sqr).sum()
}

/// A complex matrix equal to its own conjugate transpose.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

impl HermitianMatrix {
    /// Accepts `m` if it is Hermitian up to [`HERMITIAN_TOLERANCE`] and
    /// stores the symmetrized `(M + M^dagger)/2`.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let asymmetry = m.hermitian_asymmetry();
        if asymmetry > HERMITIAN_TOLERANCE * m.max_abs().max(1.0) {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self::symmetrized(&m))
    }

    fn symmetrized(m: &ComplexMatrix) -> Self {
        let inner = ComplexMatrix::from_fn(m.dim(), |r, c| {
            if r == c {
                C64::new(m[(r, r)].re, 0.0)
            } else {
                (m[(r, c)] + m[(c, r)].conj()) * 0.5
            }
        });
        Self { inner }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        Self::new(ComplexMatrix::from_rows(rows)?)
    }

    pub fn from_real_diagonal(diagonal: &[f64]) -> Self {
        let inner = ComplexMatrix::from_fn(diagonal.len(), |r, c| {
            if r == c {
                C64::new(diagonal[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self { inner }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: ComplexMatrix::identity(dim),
        }
    }

    pub fn pauli_x() -> Self {
        Self::pauli(|r, c| if r != c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn pauli_y() -> Self {
        Self::pauli(|r, c| match (r, c) {
            (0, 1) => C64::new(0.0, -1.0),
            (1, 0) => C64::new(0.0, 1.0),
            _ => C64::new(0.0, 0.0),
        })
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diagonal(&[1.0, -1.0])
    }

    fn pauli(f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            inner: ComplexMatrix::from_fn(2, f),
        }
    }

    /// `sum_k w_k |v_k><v_k|` for real weights.
    pub fn from_spectrum(weights: &[f64], vectors: &[Vec<C64>]) -> Self {
        assert_eq!(weights.len(), vectors.len());
        let dim = vectors.first().map_or(0, Vec::len);
        let mut m = ComplexMatrix::zeros(dim);
        for (w, v) in weights.iter().zip(vectors) {
            for r in 0..dim {
                for c in 0..dim {
                    m[(r, c)] += v[r] * v[c].conj() * *w;
                }
            }
        }
        Self::symmetrized(&m)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    /// `A + c I`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut inner = self.inner.clone();
        for k in 0..inner.dim() {
            inner[(k, k)] += c;
        }
        Self { inner }
    }

    /// Hermitian square, `A A`.
    pub fn squared(&self) -> Self {
        Self::symmetrized(&(&self.inner * &self.inner))
    }

    /// Unitary conjugation `U A U^dagger`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Self {
        Self::symmetrized(&(&(u * &self.inner) * &u.adjoint()))
    }
}

impl Deref for HermitianMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.inner
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: &HermitianMatrix) -> HermitianMatrix {
        HermitianMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn mul(self, rhs: f64) -> HermitianMatrix {
        HermitianMatrix {
            inner: self.inner.scale(C64::new(rhs, 0.0)),
        }
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn neg(self) -> HermitianMatrix {
        self * -1.0
    }
}

/// Eigenvalues in ascending order with their orthonormal eigenvectors.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<C64>>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `sum_k lambda_k |v_k><v_k|`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_spectrum(&self.eigenvalues, &self.eigenvectors)
    }

    /// Matrix with the eigenvectors as columns.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), |r, c| self.eigenvectors[c][r])
    }

    /// Spectral calculus: `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        HermitianMatrix::from_spectrum(&weights, &self.eigenvectors)
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut acc = 0.0;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies the
/// real symmetric Jacobi rotation that annihilates it. Sweeps stop once the
/// off-diagonal Frobenius norm falls below `1e-13 * ||A||_F`.
///
/// Eigenvalues come back ascending. A stable sort keeps the solver's order
/// among exact ties, and every eigenvector is rescaled so that its first
/// non-negligible component is real and positive.
pub fn hermitian_eig(matrix: &HermitianMatrix) -> Result<EigenSystem> {
    let d = matrix.dim();
    let mut a = matrix.as_matrix().clone();
    let mut v = ComplexMatrix::identity(d);
    let target = JACOBI_TARGET * a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let residual = off_diagonal_norm(&a);
        if residual <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| {
            let mut col: Vec<C64> = (0..d).map(|r| v[(r, k)]).collect();
            fix_phase(&mut col);
            col
        })
        .collect();
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates `a[(p, q)]` with the unitary `V = diag(1, conj(w)) R(theta)` on
/// the (p, q) plane, where `w = a_pq / |a_pq|`, then accumulates `V` into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let w = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta < 0.0 { -1.0 } else { 1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let vpp = C64::new(c, 0.0);
    let vpq = C64::new(s, 0.0);
    let vqp = -w.conj() * s;
    let vqq = w.conj() * c;

    let d = a.dim();
    // A <- A V
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * vpp + akq * vqp;
        a[(k, q)] = akp * vpq + akq * vqq;
    }
    // A <- V^dagger A
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = vpp.conj() * apk + vqp.conj() * aqk;
        a[(q, k)] = vpq.conj() * apk + vqq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..d {
        let ekp = v[(k, p)];
        let ekq = v[(k, q)];
        v[(k, p)] = ekp * vpp + ekq * vqp;
        v[(k, q)] = ekp * vpq + ekq * vqq;
    }
}

fn fix_phase(vector: &mut [C64]) {
    if let Some(lead) = vector.iter().copied().find(|z| z.norm() > 1e-12) {
        let phase = lead.conj() / lead.norm();
        for z in vector.iter_mut() {
            *z *= phase;
        }
        // The leading entry is real by construction; drop rounding residue.
        if let Some(first) = vector.iter_mut().find(|z| z.norm() > 1e-12) {
            first.im = 0.0;
        }
    }
}

/// Principal square root of a positive semidefinite matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything more negative
/// is rejected with [`Error::NotPsd`].
pub fn sqrt_psd(matrix: &HermitianMatrix) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(matrix)?;
    sqrt_from_eigensystem(&eig)
}

pub(crate) fn sqrt_from_eigensystem(eig: &EigenSystem) -> Result<HermitianMatrix> {
    if let Some(&lowest) = eig.eigenvalues.first() {
        if lowest < -PSD_TOLERANCE {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
    }
    let largest = eig.eigenvalues.last().map_or(0.0, |l| l.abs());
    let floor = eig.dim() as f64 * f64::EPSILON * largest;
    Ok(eig.map(|l| if l <= floor { 0.0 } else { l.sqrt() }))
}
