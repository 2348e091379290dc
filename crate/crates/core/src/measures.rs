//! Variance, Wigner-Yanase skew information and per-eigenbranch amplitude vectors.

use crate::error::{Error, Result};
use crate::linalg::{commutator, frobenius_norm_sq, hermitian_eig, HermitianMatrix};
use crate::states::DensityMatrix;

fn check_dims(rho: &DensityMatrix, a: &HermitianMatrix) -> Result<()> {
    if rho.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}

// Eigenstates produce tiny negative variances from rounding.
fn clamp_rounding(x: f64) -> f64 {
    x.max(0.0)
}

/// `<A> = tr(rho A)`.
pub fn expectation(rho: &DensityMatrix, a: &HermitianMatrix) -> Result<f64> {
    check_dims(rho, a)?;
    let d = a.dim();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for r in 0..d {
        for c in 0..d {
            acc += rho[(r, c)] * a[(c, r)];
        }
    }
    debug_assert!(acc.im.abs() <= 1e-10 * a.max_abs().max(1.0));
    Ok(acc.re)
}

/// `(Delta A)^2 = <A^2> - <A>^2`, evaluated as `<(A - <A>)^2>`.
pub fn variance(rho: &DensityMatrix, a: &HermitianMatrix) -> Result<f64> {
    let mean = expectation(rho, a)?;
    let centered = a.shifted(-mean);
    Ok(clamp_rounding(expectation(rho, &centered.squared())?))
}

/// `I_rho(A) = 1/2 ||[sqrt(rho), A]||_F^2`.
pub fn skew_information(rho: &DensityMatrix, a: &HermitianMatrix) -> Result<f64> {
    check_dims(rho, a)?;
    let k = commutator(rho.sqrt(), a)?;
    Ok(0.5 * frobenius_norm_sq(&k))
}

/// Components `|u_k - <A>| sqrt(<u_k|rho|u_k>)` over the eigenbranches of an
/// observable, ordered by ascending eigenvalue. The squared norm is the variance.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeVector(Vec<f64>);

impl AmplitudeVector {
    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    /// The components rearranged into ascending order.
    pub fn sorted_ascending(&self) -> Vec<f64> {
        let mut sorted = self.0.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
    }

    /// `(a_{perm[0]}, a_{perm[1]}, ...)`.
    pub fn permuted(&self, perm: &[usize]) -> Vec<f64> {
        perm.iter().map(|&k| self.0[k]).collect()
    }
}

pub fn amplitude_vector(rho: &DensityMatrix, a: &HermitianMatrix) -> Result<AmplitudeVector> {
    let mean = expectation(rho, a)?;
    let eig = hermitian_eig(a)?;
    let components = eig
        .eigenvalues
        .iter()
        .zip(&eig.eigenvectors)
        .map(|(u, v)| {
            let p = rho.quadratic_form(v).re.max(0.0);
            (u - mean).abs() * p.sqrt()
        })
        .collect();
    Ok(AmplitudeVector(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use crate::states::{from_bloch, pure_state, BlochVector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ket0() -> DensityMatrix {
        pure_state(&[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap()
    }

    fn plus() -> DensityMatrix {
        pure_state(&[C64::new(FRAC_1_SQRT_2, 0.0), C64::new(FRAC_1_SQRT_2, 0.0)]).unwrap()
    }

    fn maximally_mixed() -> DensityMatrix {
        from_bloch(BlochVector::new(0.0, 0.0, 0.0)).unwrap()
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expectation(&ket0(), &HermitianMatrix::pauli_z()).unwrap(), 1.0);
        assert_eq!(
            expectation(&maximally_mixed(), &HermitianMatrix::pauli_x()).unwrap(),
            0.0
        );
        let rho = from_bloch(BlochVector::new(0.3, -0.4, 0.5)).unwrap();
        assert_abs_diff_eq!(
            expectation(&rho, &HermitianMatrix::pauli_x()).unwrap(),
            0.3,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            expectation(&rho, &HermitianMatrix::pauli_y()).unwrap(),
            -0.4,
            epsilon = 1e-15
        );
    }

    #[test]
    fn variance_examples() {
        let z = HermitianMatrix::pauli_z();
        assert_eq!(variance(&ket0(), &z).unwrap(), 0.0);
        assert_abs_diff_eq!(variance(&maximally_mixed(), &z).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(variance(&plus(), &z).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn skew_examples() {
        let z = HermitianMatrix::pauli_z();
        assert_abs_diff_eq!(skew_information(&maximally_mixed(), &z).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(skew_information(&plus(), &z).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            skew_information(&plus(), &z).unwrap(),
            variance(&plus(), &z).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn skew_of_partially_mixed_state() {
        // sqrt(rho) = a I + b sigma_x, so [sqrt(rho), sigma_z] = -2ib sigma_y and
        // I = 4 b^2 = (sqrt(p1) - sqrt(p2))^2 = 1 - 2 sqrt(p1 p2) = 1/2 when p1 p2 = 1/16.
        let rho = from_bloch(BlochVector::new(3f64.sqrt() / 2.0, 0.0, 0.0)).unwrap();
        let i_z = skew_information(&rho, &HermitianMatrix::pauli_z()).unwrap();
        assert_abs_diff_eq!(i_z, 0.5, epsilon = 1e-14);
        let i_x = skew_information(&rho, &HermitianMatrix::pauli_x()).unwrap();
        let i_y = skew_information(&rho, &HermitianMatrix::pauli_y()).unwrap();
        assert_abs_diff_eq!(i_x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(i_x + i_y + i_z, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn amplitude_examples() {
        let a = amplitude_vector(&ket0(), &HermitianMatrix::pauli_x()).unwrap();
        assert_abs_diff_eq!(a.components()[0], FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a.components()[1], FRAC_1_SQRT_2, epsilon = 1e-15);

        let a = amplitude_vector(&ket0(), &HermitianMatrix::pauli_z()).unwrap();
        assert_eq!(a.components(), &[0.0, 0.0]);

        let a = amplitude_vector(&maximally_mixed(), &HermitianMatrix::pauli_z()).unwrap();
        assert_abs_diff_eq!(a.components()[0], FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(a.components()[1], FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn amplitude_helpers() {
        let a = AmplitudeVector(vec![0.3, 0.1, 0.2]);
        assert_eq!(a.sorted_ascending(), vec![0.1, 0.2, 0.3]);
        assert_eq!(a.permuted(&[2, 0, 1]), vec![0.2, 0.3, 0.1]);
        assert_abs_diff_eq!(a.norm_sq(), 0.14, epsilon = 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = HermitianMatrix::identity(3);
        let expected = Err(Error::DimensionMismatch { expected: 2, found: 3 });
        assert_eq!(expectation(&ket0(), &a), expected);
        assert_eq!(variance(&ket0(), &a), expected);
        assert_eq!(skew_information(&ket0(), &a), expected);
        assert_eq!(
            amplitude_vector(&ket0(), &a).map(|_| ()),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }
}
