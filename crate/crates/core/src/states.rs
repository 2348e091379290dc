//! Density matrices and the constructors used by examples and fuzzing.
//!
//! Basis states are indexed `|0>, |1>, ...` from zero everywhere in the crate.
//! Random constructors draw from a [`ChaCha8Rng`] seeded with the caller's
//! `u64`, and turn uniforms into normals with the Box-Muller transform, so a
//! seed reproduces the same matrix on every platform.

use std::f64::consts::PI;
use std::ops::Deref;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, sqrt_from_eigensystem, ComplexMatrix, EigenSystem, HermitianMatrix, C64, PSD_TOLERANCE,
};

pub const TRACE_TOLERANCE: f64 = 1e-10;
const NORM_TOLERANCE: f64 = 1e-8;
const BLOCH_TOLERANCE: f64 = 1e-12;

/// A Hermitian, positive semidefinite, unit-trace matrix.
///
/// The spectrum is computed once on construction; the square root used by
/// skew information is derived from it lazily and cached.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    inner: HermitianMatrix,
    spectrum: EigenSystem,
    sqrt: OnceLock<HermitianMatrix>,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::TraceNotOne { trace });
        }
        let spectrum = hermitian_eig(&matrix)?;
        if let Some(&lowest) = spectrum.eigenvalues.first() {
            if lowest < -PSD_TOLERANCE {
                return Err(Error::NotPsd { eigenvalue: lowest });
            }
        }
        Ok(Self {
            inner: matrix,
            spectrum,
            sqrt: OnceLock::new(),
        })
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.spectrum.eigenvalues.iter().map(|p| p * p).sum()
    }

    /// Memoized `sqrt(rho)`.
    pub fn sqrt(&self) -> &HermitianMatrix {
        self.sqrt
            .get_or_init(|| sqrt_from_eigensystem(&self.spectrum).expect("spectrum validated on construction"))
    }

    /// `U rho U^dagger` for a unitary `U`.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Self::new(self.inner.conjugate_by(unitary))
    }
}

impl Deref for DensityMatrix {
    type Target = HermitianMatrix;

    fn deref(&self) -> &HermitianMatrix {
        &self.inner
    }
}

impl PartialEq for DensityMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Real Bloch vector of a qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub fn new(rx: f64, ry: f64, rz: f64) -> Self {
        Self { rx, ry, rz }
    }

    pub fn length(&self) -> f64 {
        (self.rx * self.rx + self.ry * self.ry + self.rz * self.rz).sqrt()
    }
}

/// `|psi><psi|` for a normalized amplitude vector.
///
/// The norm must be 1 within `1e-8`; the vector is renormalized exactly before
/// the outer product.
pub fn pure_state(amplitudes: &[C64]) -> Result<DensityMatrix> {
    if amplitudes.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if let Some(row) = amplitudes.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite { row, col: 0 });
    }
    let norm = amplitudes.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    Ok(projector(amplitudes, norm))
}

fn projector(amplitudes: &[C64], norm: f64) -> DensityMatrix {
    let psi: Vec<C64> = amplitudes.iter().map(|z| z / norm).collect();
    let matrix = HermitianMatrix::from_spectrum(&[1.0], &[psi]);
    DensityMatrix::new(matrix).expect("normalized projector is a valid state")
}

/// `(I + r . sigma) / 2`.
pub fn from_bloch(r: BlochVector) -> Result<DensityMatrix> {
    let length = r.length();
    if !length.is_finite() || length > 1.0 + BLOCH_TOLERANCE {
        return Err(Error::OutsideBlochBall { length });
    }
    let m = &(&(&HermitianMatrix::identity(2) + &(&HermitianMatrix::pauli_x() * r.rx))
        + &(&HermitianMatrix::pauli_y() * r.ry))
        + &(&HermitianMatrix::pauli_z() * r.rz);
    DensityMatrix::new(&m * 0.5)
}

/// Box-Muller normal variates over a seeded ChaCha8 stream.
struct Gaussian {
    rng: ChaCha8Rng,
}

impl Gaussian {
    fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// One complex number with independent standard normal real and imaginary parts.
    fn complex(&mut self) -> C64 {
        // 1 - U keeps the logarithm's argument in (0, 1].
        let u1: f64 = 1.0 - self.rng.random::<f64>();
        let u2: f64 = self.rng.random();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * PI * u2;
        C64::new(radius * angle.cos(), radius * angle.sin())
    }

    fn matrix(&mut self, dim: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(dim, |_, _| self.complex())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    Ok(())
}

/// Haar-random pure state from `d` complex normals.
pub fn random_pure(dim: usize, seed: u64) -> Result<DensityMatrix> {
    check_dim(dim)?;
    let mut g = Gaussian::new(seed);
    let psi: Vec<C64> = (0..dim).map(|_| g.complex()).collect();
    let norm = psi.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
    Ok(projector(&psi, norm))
}

/// Ginibre-ensemble mixed state `G G^dagger / tr(G G^dagger)`.
pub fn random_mixed(dim: usize, seed: u64) -> Result<DensityMatrix> {
    check_dim(dim)?;
    let g = Gaussian::new(seed).matrix(dim);
    let gram = &g * &g.adjoint();
    let trace = gram.trace().re;
    let m = HermitianMatrix::new(gram.scale(C64::new(1.0 / trace, 0.0)))?;
    DensityMatrix::new(m)
}

/// GUE-style observable `(G + G^dagger) / 2`.
pub fn random_observable(dim: usize, seed: u64) -> Result<HermitianMatrix> {
    check_dim(dim)?;
    let g = Gaussian::new(seed).matrix(dim);
    HermitianMatrix::new((&g + &g.adjoint()).scale(C64::new(0.5, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn max_entry_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
        (a - b).max_abs()
    }

    #[test]
    fn pure_state_of_basis_vector() {
        let rho = pure_state(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(
            rho.as_matrix(),
            HermitianMatrix::from_real_diagonal(&[1.0, 0.0]).as_matrix()
        );
    }

    #[test]
    fn pure_state_of_plus() {
        let rho = pure_state(&[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
        for r in 0..2 {
            for col in 0..2 {
                assert_abs_diff_eq!(rho[(r, col)].re, 0.5, epsilon = 1e-15);
                assert_abs_diff_eq!(rho[(r, col)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn pure_state_is_idempotent() {
        let phase = C64::from_polar(1.0, PI / 4.0);
        let h = FRAC_1_SQRT_2;
        // cos(pi/4)|1> + e^{i pi/4} sin(pi/4)|0>, written in |0>,|1> order.
        let rho = pure_state(&[phase * h, c(h, 0.0)]).unwrap();
        let sq = rho.as_matrix() * rho.as_matrix();
        assert!(max_entry_diff(&sq, rho.as_matrix()) < 1e-10);
        assert_abs_diff_eq!(rho[(0, 1)].re, 0.5 * (PI / 4.0).cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(rho[(0, 1)].im, 0.5 * (PI / 4.0).sin(), epsilon = 1e-15);
    }

    #[test]
    fn pure_state_errors() {
        assert_eq!(pure_state(&[c(0.0, 0.0), c(0.0, 0.0)]), Err(Error::ZeroVector));
        assert!(matches!(
            pure_state(&[c(2.0, 0.0), c(0.0, 0.0)]),
            Err(Error::NotNormalized { .. })
        ));
        // Within tolerance: renormalized exactly.
        let rho = pure_state(&[c(1.0 + 5e-9, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(rho[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn bloch_examples() {
        let mixed = from_bloch(BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(mixed.as_matrix(), (&HermitianMatrix::identity(2) * 0.5).as_matrix());

        let pole = from_bloch(BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(
            pole.as_matrix(),
            HermitianMatrix::from_real_diagonal(&[1.0, 0.0]).as_matrix()
        );

        let r = 3f64.sqrt() / 2.0;
        let rho = from_bloch(BlochVector::new(r, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(rho.eigenvalues()[0], (1.0 - r) / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.eigenvalues()[1], (1.0 + r) / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn bloch_rejects_outside_ball() {
        assert!(matches!(
            from_bloch(BlochVector::new(1.0, 1.0, 0.0)),
            Err(Error::OutsideBlochBall { .. })
        ));
    }

    #[test]
    fn density_rejects_bad_trace_and_negative_eigenvalue() {
        let two = HermitianMatrix::from_real_diagonal(&[1.0, 1.0]);
        assert!(matches!(DensityMatrix::new(two), Err(Error::TraceNotOne { .. })));
        let neg = HermitianMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert_eq!(DensityMatrix::new(neg), Err(Error::NotPsd { eigenvalue: -0.5 }));
    }

    #[test]
    fn random_constructors_are_deterministic() {
        assert_eq!(random_pure(2, 7).unwrap(), random_pure(2, 7).unwrap());
        assert_eq!(random_mixed(2, 7).unwrap(), random_mixed(2, 7).unwrap());
        assert_eq!(random_observable(3, 7).unwrap(), random_observable(3, 7).unwrap());
        assert_ne!(random_observable(3, 7).unwrap(), random_observable(3, 8).unwrap());
    }

    #[test]
    fn random_constructors_reject_small_dim() {
        assert_eq!(random_pure(1, 0), Err(Error::DimensionTooSmall { dim: 1, min: 2 }));
        assert!(random_mixed(0, 0).is_err());
        assert!(random_observable(1, 0).is_err());
    }

    #[test]
    fn random_pure_has_unit_purity() {
        for seed in 0..50 {
            let rho = random_pure(4, seed).unwrap();
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn random_mixed_purity_in_range() {
        for seed in 0..50 {
            let d = 2 + (seed as usize % 4);
            let rho = random_mixed(d, seed).unwrap();
            let purity = rho.purity();
            assert!(purity >= 1.0 / d as f64 - 1e-12 && purity <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn random_observable_spectrum_is_real() {
        let a = random_observable(4, 3).unwrap();
        assert_eq!(a.hermitian_asymmetry(), 0.0);
        let eig = hermitian_eig(&a).unwrap();
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}
