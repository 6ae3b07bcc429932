//! Two-qubit concurrence.
//!
//! `C(ρ) = max{0, ν1 - ν2 - ν3 - ν4}` where the `ν` are the square roots of
//! the eigenvalues of `ρ ρ̃`, in decreasing order, and `ρ̃` is the spin-flipped
//! matrix.

use crate::error::{Error, Result};
use crate::linalg::{self, HermitianEigen, Matrix, Matrix4};
use crate::model::{x_violation, Complex, DensityMatrix4, PSD_FLOOR};

/// Largest tolerated asymmetry of an input density matrix.
pub const HERMITIAN_TOLERANCE: f64 = 1e-8;
/// Largest tolerated off-X entry for the X-state shortcut.
pub const X_SHAPE_TOLERANCE: f64 = 1e-10;

/// A concurrence in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    fn clamped(x: f64) -> Self {
        Concurrence(x.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Sign of basis index `i` in the spin-flip map: `+` for 00 and 11.
#[inline]
fn flip_sign(i: usize) -> f64 {
    if i == 0 || i == 3 {
        1.0
    } else {
        -1.0
    }
}

/// `(σy ⊗ σy) ρ* (σy ⊗ σy)`.
pub fn spin_flip(rho: &Matrix4) -> Matrix4 {
    let mut out = linalg::zeros::<4>();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = rho[3 - i][3 - j].conj() * (flip_sign(i) * flip_sign(j));
        }
    }
    out
}

fn checked_eigen(rho: &DensityMatrix4) -> Result<HermitianEigen<4>> {
    let asymmetry = linalg::max_asymmetry(rho.entries());
    if !asymmetry.is_finite() || asymmetry > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { asymmetry });
    }
    let eig = linalg::hermitian_eigen(rho.entries());
    if eig.values[3] < PSD_FLOOR {
        return Err(Error::NotPositive {
            eigenvalue: eig.values[3],
        });
    }
    Ok(eig)
}

/// Eigenvalues of `ρ ρ̃`, descending and non-negative.
///
/// Computed as the spectrum of the Hermitian matrix `√ρ ρ̃ √ρ`, which is
/// similar to `ρ ρ̃`.
pub fn eigenvalues_rho_rhotilde(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    let eig = checked_eigen(rho)?;
    let sqrt_rho = eig.map_values(|x| x.max(0.0).sqrt());
    let h = linalg::mul(
        &linalg::mul(&sqrt_rho, &spin_flip(rho.entries())),
        &sqrt_rho,
    );
    let values = linalg::hermitian_eigen(&h).values;
    if values[3] < PSD_FLOOR {
        return Err(Error::NotPositive {
            eigenvalue: values[3],
        });
    }
    Ok(values.map(|x| x.max(0.0)))
}

/// The `ν` values: square roots of the eigenvalues of `ρ ρ̃`, descending.
///
/// With `ρ = L L†` (`L = V √D` from the eigen-decomposition), the `ν` are
/// the singular values of the symmetric matrix `τ = L† (σy⊗σy) L*`. They
/// are read off the Hermitian dilation `[[0, τ], [τ†, 0]]`, whose spectrum
/// is `±ν`. Working with `ν` directly keeps small values accurate to
/// roundoff instead of to its square root.
pub fn wootters_values(rho: &DensityMatrix4) -> Result<[f64; 4]> {
    let eig = checked_eigen(rho)?;
    let mut l = eig.vectors;
    for k in 0..4 {
        let w = eig.values[k].max(0.0).sqrt();
        for row in l.iter_mut() {
            row[k] *= w;
        }
    }
    let mut tau = linalg::zeros::<4>();
    for i in 0..4 {
        for j in 0..4 {
            let mut z = Complex::new(0.0, 0.0);
            for k in 0..4 {
                // (σy⊗σy)[k][3-k] = -flip_sign(k)
                z -= l[k][i].conj() * l[3 - k][j].conj() * flip_sign(k);
            }
            tau[i][j] = z;
        }
    }
    let mut dilation: Matrix<8> = linalg::zeros();
    for i in 0..4 {
        for j in 0..4 {
            dilation[i][4 + j] = tau[i][j];
            dilation[4 + j][i] = tau[i][j].conj();
        }
    }
    let spectrum = linalg::hermitian_eigen(&dilation).values;
    let mut nu = [
        spectrum[0].abs(),
        spectrum[1].abs(),
        spectrum[2].abs(),
        spectrum[3].abs(),
    ];
    nu.sort_by(|a, b| b.total_cmp(a));
    Ok(nu)
}

/// Concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &DensityMatrix4) -> Result<Concurrence> {
    let nu = wootters_values(rho)?;
    Ok(Concurrence::clamped(nu[0] - nu[1] - nu[2] - nu[3]))
}

/// Closed form for matrices with the X pattern:
/// `2 max{0, |ρ23| - √(ρ11 ρ44), |ρ14| - √(ρ22 ρ33)}`.
pub fn concurrence_x_state(rho: &DensityMatrix4) -> Result<Concurrence> {
    let m = rho.entries();
    if let Some((row, col, modulus)) = x_violation(m, X_SHAPE_TOLERANCE) {
        return Err(Error::NotXShaped { row, col, modulus });
    }
    let d = |i: usize| m[i][i].re.max(0.0);
    let inner = m[1][2].norm() - (d(0) * d(3)).sqrt();
    let outer = m[0][3].norm() - (d(1) * d(2)).sqrt();
    Ok(Concurrence::clamped(2.0 * inner.max(outer).max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{initial_coefficients, BellFamily, InitialState};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn projector(i: usize) -> Matrix4 {
        let mut m = linalg::zeros::<4>();
        m[i][i] = c(1.0);
        m
    }

    fn bell(family: BellFamily) -> DensityMatrix4 {
        DensityMatrix4::new(initial_coefficients(&InitialState::bell(family)).unwrap()).unwrap()
    }

    fn werner(family: BellFamily, purity: f64) -> DensityMatrix4 {
        DensityMatrix4::new(
            initial_coefficients(&InitialState::werner(family, purity).unwrap()).unwrap(),
        )
        .unwrap()
    }

    /// Spin flip through the explicit Pauli product.
    fn spin_flip_by_matrices(rho: &Matrix4) -> Matrix4 {
        let i = Complex::new(0.0, 1.0);
        let y = [[c(0.0), -i], [i, c(0.0)]];
        let mut yy = linalg::zeros::<4>();
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    for d in 0..2 {
                        yy[2 * a + b][2 * cc + d] = y[a][cc] * y[b][d];
                    }
                }
            }
        }
        let mut conj = *rho;
        for row in conj.iter_mut() {
            for z in row.iter_mut() {
                *z = z.conj();
            }
        }
        linalg::mul(&linalg::mul(&yy, &conj), &yy)
    }

    #[test]
    fn spin_flip_examples() {
        assert_eq!(spin_flip(&projector(0)), projector(3));
        let phi = *bell(BellFamily::Phi).entries();
        assert!(linalg::max_abs_diff(&spin_flip(&phi), &phi) < 1e-15);
        let psi = *bell(BellFamily::Psi).entries();
        assert!(linalg::max_abs_diff(&spin_flip(&psi), &psi) < 1e-15);
    }

    #[test]
    fn spin_flip_matches_pauli_product_and_is_an_involution() {
        let amp = [
            Complex::new(0.3, 0.1),
            Complex::new(-0.2, 0.5),
            Complex::new(0.4, -0.3),
            Complex::new(0.1, 0.2),
        ];
        let norm: f64 = amp.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let rho = DensityMatrix4::from_pure(amp.map(|a| a / norm)).unwrap();
        let m = rho.entries();
        assert!(linalg::max_abs_diff(&spin_flip(m), &spin_flip_by_matrices(m)) < 1e-15);
        assert!(linalg::max_abs_diff(&spin_flip(&spin_flip(m)), m) == 0.0);
    }

    #[test]
    fn rho_rhotilde_spectrum_examples() {
        let mixed = werner(BellFamily::Psi, 0.0);
        for x in eigenvalues_rho_rhotilde(&mixed).unwrap() {
            assert!((x - 1.0 / 16.0).abs() < 1e-15);
        }
        let e = eigenvalues_rho_rhotilde(&bell(BellFamily::Phi)).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14);
        assert!(e[1..].iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(
            concurrence(&DensityMatrix4::new(projector(0)).unwrap())
                .unwrap()
                .value(),
            0.0
        );
        for f in [BellFamily::Phi, BellFamily::Psi] {
            assert!((concurrence(&bell(f)).unwrap().value() - 1.0).abs() < 1e-14);
            assert!((concurrence_x_state(&bell(f)).unwrap().value() - 1.0).abs() < 1e-15);
        }
        assert!(
            concurrence(&werner(BellFamily::Phi, 1.0 / 3.0))
                .unwrap()
                .value()
                < 1e-14
        );
        assert_eq!(
            concurrence(&werner(BellFamily::Phi, 0.2)).unwrap().value(),
            0.0
        );
        assert!(
            (concurrence(&werner(BellFamily::Phi, 2.0 / 3.0))
                .unwrap()
                .value()
                - 0.5)
                .abs()
                < 1e-14
        );
        assert_eq!(
            concurrence_x_state(&werner(BellFamily::Psi, 0.0))
                .unwrap()
                .value(),
            0.0
        );
    }

    #[test]
    fn pure_product_state_has_zero_concurrence() {
        let h = FRAC_1_SQRT_2;
        let s = InitialState::product([c(h), Complex::new(0.0, h)], [c(0.6), c(0.8)]).unwrap();
        let rho = DensityMatrix4::new(initial_coefficients(&s).unwrap()).unwrap();
        assert!(concurrence(&rho).unwrap().value() < 1e-15);
    }

    #[test]
    fn rejects_invalid_input() {
        let mut m = *bell(BellFamily::Phi).entries();
        m[0][3] = Complex::new(0.5, 0.01);
        let skew = DensityMatrix4::from_entries_unchecked(m);
        assert!(matches!(
            concurrence(&skew),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            eigenvalues_rho_rhotilde(&skew),
            Err(Error::NotHermitian { .. })
        ));

        let mut neg = linalg::zeros::<4>();
        neg[0][0] = c(1.2);
        neg[1][1] = c(-0.2);
        let neg = DensityMatrix4::from_entries_unchecked(neg);
        assert!(matches!(concurrence(&neg), Err(Error::NotPositive { .. })));

        let mut not_x = *werner(BellFamily::Phi, 0.5).entries();
        not_x[0][1] = c(0.01);
        not_x[1][0] = c(0.01);
        let not_x = DensityMatrix4::from_entries_unchecked(not_x);
        assert!(matches!(
            concurrence_x_state(&not_x),
            Err(Error::NotXShaped { row: 0, col: 1, .. })
        ));
    }
}
