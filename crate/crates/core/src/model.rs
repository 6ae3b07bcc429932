//! Domain types for the two-qubit system, its bath and its initial states.
//!
//! Units: ħ = 1 and every frequency or coupling is expressed in units of a
//! reference frequency chosen by the caller.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix4};
use crate::sweep::sample_white_noise;

pub type Complex = Complex64;

/// Normalization tolerance for amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-12;
/// Hermiticity and trace tolerance for density matrices.
pub const DENSITY_TOLERANCE: f64 = 1e-10;
/// Eigenvalues above this are treated as roundoff and clamped to zero.
pub const PSD_FLOOR: f64 = -1e-9;

/// Row/column index of the two-qubit basis state `|l m⟩` (order 00, 01, 10, 11).
#[inline]
pub fn basis_index(l: usize, m: usize) -> usize {
    2 * l + m
}

fn check_non_negative(what: &'static str, x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::validation(
            what,
            format!("expected a finite value >= 0, got {x}"),
        ));
    }
    Ok(())
}

fn check_finite(what: &'static str, z: Complex) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::validation(what, format!("non-finite amplitude {z}")));
    }
    Ok(())
}

fn check_normalized(what: &'static str, a: Complex, b: Complex) -> Result<()> {
    check_finite(what, a)?;
    check_finite(what, b)?;
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::validation(
            what,
            format!("|a0|^2 + |a1|^2 = {norm}, expected 1"),
        ));
    }
    Ok(())
}

/// Frequencies of the two system qubits and their mutual σz⊗σz coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub omega_s1: f64,
    pub omega_s2: f64,
    pub omega_s1s2: f64,
}

impl SystemParams {
    pub fn new(omega_s1: f64, omega_s2: f64, omega_s1s2: f64) -> Result<Self> {
        let p = SystemParams {
            omega_s1,
            omega_s2,
            omega_s1s2,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_non_negative("omega_s1", self.omega_s1)?;
        check_non_negative("omega_s2", self.omega_s2)?;
        check_non_negative("omega_s1s2", self.omega_s1s2)
    }
}

/// One bath qubit: its couplings to each system qubit and its initial state
/// `alpha |0⟩ + beta |1⟩`.
///
/// A qubit in a shared bath has both couplings nonzero; a qubit belonging to
/// only one system qubit's private bath has the other coupling set to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvQubit {
    omega_e: f64,
    gamma_s1: f64,
    gamma_s2: f64,
    alpha: Complex,
    beta: Complex,
}

impl EnvQubit {
    pub fn new(
        omega_e: f64,
        gamma_s1: f64,
        gamma_s2: f64,
        alpha: Complex,
        beta: Complex,
    ) -> Result<Self> {
        if !omega_e.is_finite() {
            return Err(Error::validation(
                "omega_e",
                format!("non-finite value {omega_e}"),
            ));
        }
        check_non_negative("gamma_s1", gamma_s1)?;
        check_non_negative("gamma_s2", gamma_s2)?;
        check_normalized("bath qubit amplitudes", alpha, beta)?;
        Ok(EnvQubit {
            omega_e,
            gamma_s1,
            gamma_s2,
            alpha,
            beta,
        })
    }

    /// Bath qubit prepared in `(|0⟩ + |1⟩)/√2` with zero self-frequency.
    pub fn unbiased(gamma_s1: f64, gamma_s2: f64) -> Result<Self> {
        let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        EnvQubit::new(0.0, gamma_s1, gamma_s2, h, h)
    }

    pub fn with_omega_e(mut self, omega_e: f64) -> Result<Self> {
        if !omega_e.is_finite() {
            return Err(Error::validation(
                "omega_e",
                format!("non-finite value {omega_e}"),
            ));
        }
        self.omega_e = omega_e;
        Ok(self)
    }

    pub fn omega_e(&self) -> f64 {
        self.omega_e
    }
    pub fn gamma_s1(&self) -> f64 {
        self.gamma_s1
    }
    pub fn gamma_s2(&self) -> f64 {
        self.gamma_s2
    }
    pub fn alpha(&self) -> Complex {
        self.alpha
    }
    pub fn beta(&self) -> Complex {
        self.beta
    }
}

/// The bath as an ordered list of qubits. Empty means a closed system.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct EnvironmentSpec {
    qubits: Vec<EnvQubit>,
}

impl EnvironmentSpec {
    pub fn new(qubits: Vec<EnvQubit>) -> Self {
        EnvironmentSpec { qubits }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn qubits(&self) -> &[EnvQubit] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn concat(mut self, other: EnvironmentSpec) -> Self {
        self.qubits.extend(other.qubits);
        self
    }
}

/// Recipes for the bath configurations studied: shared (mutual) baths,
/// private (distinct) baths per system qubit, and a mixture of both kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvironmentKind {
    /// `n` qubits, each coupled with strength `gamma` to both system qubits.
    HomogeneousMutual { n: usize, gamma: f64 },
    /// `n` qubits coupled to both system qubits, every coupling drawn
    /// uniformly from `[|mu - f|, mu + f]`.
    WhiteNoiseMutual {
        n: usize,
        mu: f64,
        f: f64,
        seed: u64,
    },
    /// `n1` qubits on S1 only with `gamma_s1`, `n2` on S2 only with `gamma_s2`.
    DistinctHomogeneous {
        n1: usize,
        gamma_s1: f64,
        n2: usize,
        gamma_s2: f64,
    },
    /// Distinct baths with `gamma_s1 = m * gamma_s2`.
    DistinctScaled {
        n1: usize,
        n2: usize,
        gamma_s2: f64,
        m: f64,
    },
    /// Homogeneous private bath on S1 and a white-noise private bath on S2.
    Mixed {
        n1: usize,
        gamma_s1: f64,
        n2: usize,
        mu: f64,
        f: f64,
        seed: u64,
    },
}

fn homogeneous(n: usize, gamma_s1: f64, gamma_s2: f64) -> Result<EnvironmentSpec> {
    let q = EnvQubit::unbiased(gamma_s1, gamma_s2)?;
    Ok(EnvironmentSpec::new(vec![q; n]))
}

/// Builds the bath for a recipe. Deterministic in its arguments, seed included.
pub fn make_environment(kind: EnvironmentKind) -> Result<EnvironmentSpec> {
    match kind {
        EnvironmentKind::HomogeneousMutual { n, gamma } => {
            check_non_negative("gamma", gamma)?;
            homogeneous(n, gamma, gamma)
        }
        EnvironmentKind::WhiteNoiseMutual { n, mu, f, seed } => {
            check_non_negative("mu", mu)?;
            check_non_negative("f", f)?;
            let draws = sample_white_noise(mu, f, seed, 2 * n);
            let qubits = draws
                .chunks_exact(2)
                .map(|g| EnvQubit::unbiased(g[0], g[1]))
                .collect::<Result<Vec<_>>>()?;
            Ok(EnvironmentSpec::new(qubits))
        }
        EnvironmentKind::DistinctHomogeneous {
            n1,
            gamma_s1,
            n2,
            gamma_s2,
        } => {
            check_non_negative("gamma_s1", gamma_s1)?;
            check_non_negative("gamma_s2", gamma_s2)?;
            Ok(homogeneous(n1, gamma_s1, 0.0)?.concat(homogeneous(n2, 0.0, gamma_s2)?))
        }
        EnvironmentKind::DistinctScaled {
            n1,
            n2,
            gamma_s2,
            m,
        } => {
            check_non_negative("gamma_s2", gamma_s2)?;
            check_non_negative("M", m)?;
            make_environment(EnvironmentKind::DistinctHomogeneous {
                n1,
                gamma_s1: m * gamma_s2,
                n2,
                gamma_s2,
            })
        }
        EnvironmentKind::Mixed {
            n1,
            gamma_s1,
            n2,
            mu,
            f,
            seed,
        } => {
            check_non_negative("gamma_s1", gamma_s1)?;
            check_non_negative("mu", mu)?;
            check_non_negative("f", f)?;
            let noisy = sample_white_noise(mu, f, seed, n2)
                .into_iter()
                .map(|g| EnvQubit::unbiased(0.0, g))
                .collect::<Result<Vec<_>>>()?;
            Ok(homogeneous(n1, gamma_s1, 0.0)?.concat(EnvironmentSpec::new(noisy)))
        }
    }
}

/// Which pair of basis states the Bell component of a Werner-like state
/// superposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellFamily {
    /// `(|00⟩ ± |11⟩)/√2`
    #[serde(alias = "w0011")]
    Phi,
    /// `(|01⟩ ± |10⟩)/√2`
    #[serde(alias = "w0110")]
    Psi,
}

impl BellFamily {
    /// The two basis indices the Bell component couples.
    pub fn pair(self) -> (usize, usize) {
        match self {
            BellFamily::Phi => (0, 3),
            BellFamily::Psi => (1, 2),
        }
    }
}

/// Initial two-qubit state: a product of two pure qubits, or an extended
/// Werner-like mixture `purity * |Bell⟩⟨Bell| + (1 - purity) I/4`.
///
/// The sign of the Bell component is not represented; the density matrix
/// does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialState {
    Product { s1: [Complex; 2], s2: [Complex; 2] },
    Werner { family: BellFamily, purity: f64 },
}

impl InitialState {
    /// Both qubits in `(|0⟩ + |1⟩)/√2`.
    pub fn unbiased_product() -> Self {
        let h = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        InitialState::Product {
            s1: [h, h],
            s2: [h, h],
        }
    }

    pub fn product(s1: [Complex; 2], s2: [Complex; 2]) -> Result<Self> {
        let s = InitialState::Product { s1, s2 };
        s.validate()?;
        Ok(s)
    }

    pub fn werner(family: BellFamily, purity: f64) -> Result<Self> {
        let s = InitialState::Werner { family, purity };
        s.validate()?;
        Ok(s)
    }

    pub fn bell(family: BellFamily) -> Self {
        InitialState::Werner {
            family,
            purity: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialState::Product { s1, s2 } => {
                check_normalized("S1 amplitudes", s1[0], s1[1])?;
                check_normalized("S2 amplitudes", s2[0], s2[1])
            }
            InitialState::Werner { purity, .. } => {
                if !(0.0..=1.0).contains(&purity) {
                    return Err(Error::validation(
                        "purity",
                        format!("expected a value in [0, 1], got {purity}"),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Two-qubit amplitudes `a_lm = a_l^(1) a_m^(2)` of a product state.
    pub fn product_amplitudes(&self) -> Option<[Complex; 4]> {
        match *self {
            InitialState::Product { s1, s2 } => {
                Some([s1[0] * s2[0], s1[0] * s2[1], s1[1] * s2[0], s1[1] * s2[1]])
            }
            InitialState::Werner { .. } => None,
        }
    }
}

/// Initial density matrix of the system, `A[lm][no]`, which the dynamics
/// multiplies entrywise by the decoherence factors.
pub fn initial_coefficients(state: &InitialState) -> Result<Matrix4> {
    state.validate()?;
    let mut a = linalg::zeros::<4>();
    match *state {
        InitialState::Product { .. } => {
            let amp = state.product_amplitudes().expect("product state");
            for i in 0..4 {
                for j in 0..4 {
                    a[i][j] = amp[i] * amp[j].conj();
                }
            }
        }
        InitialState::Werner { family, purity } => {
            let mixed = (1.0 - purity) / 4.0;
            let (i, j) = family.pair();
            for (k, row) in a.iter_mut().enumerate() {
                row[k] = Complex::new(mixed, 0.0);
            }
            let half = Complex::new(purity / 2.0, 0.0);
            a[i][i] += half;
            a[j][j] += half;
            a[i][j] = half;
            a[j][i] = half;
        }
    }
    Ok(a)
}

/// A two-qubit density matrix in the basis order 00, 01, 10, 11.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    entries: Matrix4,
}

impl DensityMatrix4 {
    /// Checks Hermiticity, unit trace and positivity (down to roundoff).
    pub fn new(entries: Matrix4) -> Result<Self> {
        let asymmetry = linalg::max_asymmetry(&entries);
        if !asymmetry.is_finite() || asymmetry > DENSITY_TOLERANCE {
            return Err(Error::NotHermitian { asymmetry });
        }
        let tr = linalg::trace(&entries);
        if (tr - Complex::new(1.0, 0.0)).norm() > DENSITY_TOLERANCE {
            return Err(Error::validation(
                "density matrix",
                format!("trace is {tr}, expected 1"),
            ));
        }
        let lowest = linalg::hermitian_eigen(&entries).values[3];
        if lowest < PSD_FLOOR {
            return Err(Error::NotPositive { eigenvalue: lowest });
        }
        Ok(DensityMatrix4 { entries })
    }

    /// Wraps entries without checking them. Consumers that need the
    /// invariants (concurrence) re-check what they rely on.
    pub fn from_entries_unchecked(entries: Matrix4) -> Self {
        DensityMatrix4 { entries }
    }

    /// `|ψ⟩⟨ψ|` for a normalized two-qubit vector.
    pub fn from_pure(amplitudes: [Complex; 4]) -> Result<Self> {
        let mut m = linalg::zeros::<4>();
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = amplitudes[i] * amplitudes[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex {
        linalg::trace(&self.entries)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::hermitian_eigen(&self.entries).values
    }

    /// True when every entry outside the diagonal and the anti-diagonal has
    /// modulus at most `tol`.
    pub fn is_x_shaped(&self, tol: f64) -> bool {
        x_violation(&self.entries, tol).is_none()
    }
}

/// First entry off the X pattern with modulus above `tol`.
pub(crate) fn x_violation(m: &Matrix4, tol: f64) -> Option<(usize, usize, f64)> {
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j && i + j != 3 && z.norm() > tol {
                return Some((i, j, z.norm()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn unbiased_product_state() {
        let s = InitialState::unbiased_product();
        match s {
            InitialState::Product { s1, s2 } => {
                for a in s1.iter().chain(s2.iter()) {
                    assert_eq!(*a, c(FRAC_1_SQRT_2));
                }
            }
            _ => panic!("expected product"),
        }
        let amp = s.product_amplitudes().unwrap();
        for a in amp {
            assert!((a - c(0.5)).norm() < 1e-15);
        }
        let norm: f64 = amp.iter().map(|a| a.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unbiased_product_coefficients_are_a_quarter() {
        let a = initial_coefficients(&InitialState::unbiased_product()).unwrap();
        for row in a {
            for z in row {
                assert!((z - c(0.25)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bell_phi_coefficients() {
        let a = initial_coefficients(&InitialState::bell(BellFamily::Phi)).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| a[i][i].re).collect();
        assert_eq!(diag, vec![0.5, 0.0, 0.0, 0.5]);
        assert_eq!(a[0][3], c(0.5));
        assert_eq!(a[3][0], c(0.5));
        assert_eq!(a[1][2], c(0.0));
    }

    #[test]
    fn fully_mixed_psi_is_identity_over_four() {
        let a = initial_coefficients(&InitialState::werner(BellFamily::Psi, 0.0).unwrap()).unwrap();
        assert_eq!(a, {
            let mut m = linalg::zeros::<4>();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = c(0.25);
            }
            m
        });
    }

    #[test]
    fn werner_psi_general_purity() {
        let lambda = 0.6;
        let a =
            initial_coefficients(&InitialState::werner(BellFamily::Psi, lambda).unwrap()).unwrap();
        let mixed = (1.0 - lambda) / 4.0;
        assert!((a[0][0].re - mixed).abs() < 1e-15);
        assert!((a[3][3].re - mixed).abs() < 1e-15);
        assert!((a[1][1].re - (mixed + lambda / 2.0)).abs() < 1e-15);
        assert!((a[1][2].re - lambda / 2.0).abs() < 1e-15);
        assert_eq!(a[0][3], c(0.0));
    }

    #[test]
    fn rejects_out_of_range_purity() {
        assert!(InitialState::werner(BellFamily::Phi, 1.2).is_err());
        assert!(InitialState::werner(BellFamily::Phi, -0.1).is_err());
        let bad = InitialState::Werner {
            family: BellFamily::Phi,
            purity: f64::NAN,
        };
        assert!(initial_coefficients(&bad).is_err());
    }

    #[test]
    fn rejects_unnormalized_product() {
        assert!(InitialState::product([c(1.0), c(1.0)], [c(1.0), c(0.0)]).is_err());
        assert!(InitialState::product([c(1.0), c(0.0)], [c(0.0), Complex::new(0.0, 1.0)]).is_ok());
    }

    #[test]
    fn homogeneous_mutual_environment() {
        let env =
            make_environment(EnvironmentKind::HomogeneousMutual { n: 2, gamma: 1.0 }).unwrap();
        assert_eq!(env.len(), 2);
        for q in env.qubits() {
            assert_eq!((q.gamma_s1(), q.gamma_s2()), (1.0, 1.0));
            assert_eq!(q.alpha(), c(FRAC_1_SQRT_2));
            assert_eq!(q.beta(), c(FRAC_1_SQRT_2));
            assert_eq!(q.omega_e(), 0.0);
        }
    }

    #[test]
    fn distinct_scaled_environment() {
        let env = make_environment(EnvironmentKind::DistinctScaled {
            n1: 1,
            n2: 1,
            gamma_s2: 2.0,
            m: 3.0,
        })
        .unwrap();
        let q = env.qubits();
        assert_eq!((q[0].gamma_s1(), q[0].gamma_s2()), (6.0, 0.0));
        assert_eq!((q[1].gamma_s1(), q[1].gamma_s2()), (0.0, 2.0));
    }

    #[test]
    fn zero_width_white_noise_is_exact() {
        let env = make_environment(EnvironmentKind::WhiteNoiseMutual {
            n: 4,
            mu: 0.5,
            f: 0.0,
            seed: 99,
        })
        .unwrap();
        assert_eq!(env.len(), 4);
        for q in env.qubits() {
            assert_eq!((q.gamma_s1(), q.gamma_s2()), (0.5, 0.5));
        }
    }

    #[test]
    fn mixed_environment_layout() {
        let env = make_environment(EnvironmentKind::Mixed {
            n1: 2,
            gamma_s1: 0.7,
            n2: 3,
            mu: 0.5,
            f: 0.1,
            seed: 1,
        })
        .unwrap();
        let q = env.qubits();
        assert_eq!(q.len(), 5);
        assert!(q[..2]
            .iter()
            .all(|q| q.gamma_s1() == 0.7 && q.gamma_s2() == 0.0));
        assert!(q[2..]
            .iter()
            .all(|q| q.gamma_s1() == 0.0 && (0.4..=0.6).contains(&q.gamma_s2())));
    }

    #[test]
    fn environment_constructors_are_deterministic() {
        let kind = EnvironmentKind::WhiteNoiseMutual {
            n: 6,
            mu: 1.0,
            f: 0.3,
            seed: 5,
        };
        assert_eq!(
            make_environment(kind).unwrap(),
            make_environment(kind).unwrap()
        );
    }

    #[test]
    fn rejects_negative_strengths() {
        assert!(
            make_environment(EnvironmentKind::HomogeneousMutual { n: 1, gamma: -1.0 }).is_err()
        );
        assert!(make_environment(EnvironmentKind::WhiteNoiseMutual {
            n: 1,
            mu: -0.1,
            f: 0.0,
            seed: 0
        })
        .is_err());
        assert!(make_environment(EnvironmentKind::WhiteNoiseMutual {
            n: 1,
            mu: 0.1,
            f: -0.2,
            seed: 0
        })
        .is_err());
        assert!(make_environment(EnvironmentKind::DistinctScaled {
            n1: 1,
            n2: 1,
            gamma_s2: 1.0,
            m: -2.0
        })
        .is_err());
        assert!(SystemParams::new(1.0, -1.0, 0.0).is_err());
        assert!(EnvQubit::new(0.0, 1.0, 1.0, c(1.0), c(1.0)).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let a = initial_coefficients(&InitialState::bell(BellFamily::Psi)).unwrap();
        assert!(DensityMatrix4::new(a).is_ok());
        let mut skew = a;
        skew[1][2] = Complex::new(0.5, 0.1);
        assert!(matches!(
            DensityMatrix4::new(skew),
            Err(Error::NotHermitian { .. })
        ));
        let mut neg = linalg::zeros::<4>();
        neg[0][0] = c(1.5);
        neg[1][1] = c(-0.5);
        assert!(matches!(
            DensityMatrix4::new(neg),
            Err(Error::NotPositive { .. })
        ));
        let mut heavy = a;
        heavy[0][0] = c(0.2);
        assert!(DensityMatrix4::new(heavy).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn qubit() -> impl Strategy<Value = [Complex; 2]> {
            (
                0.0..std::f64::consts::PI,
                0.0..std::f64::consts::TAU,
                0.0..std::f64::consts::TAU,
            )
                .prop_map(|(theta, p0, p1)| {
                    [
                        Complex::from_polar((theta / 2.0).cos(), p0),
                        Complex::from_polar((theta / 2.0).sin(), p1),
                    ]
                })
        }

        fn state() -> impl Strategy<Value = InitialState> {
            prop_oneof![
                (qubit(), qubit()).prop_map(|(s1, s2)| InitialState::Product { s1, s2 }),
                (any::<bool>(), 0.0..=1.0f64).prop_map(|(phi, purity)| InitialState::Werner {
                    family: if phi {
                        BellFamily::Phi
                    } else {
                        BellFamily::Psi
                    },
                    purity,
                }),
            ]
        }

        proptest! {
            #[test]
            fn coefficients_are_density_matrices(s in state()) {
                let a = initial_coefficients(&s).unwrap();
                prop_assert!(linalg::max_asymmetry(&a) < 1e-15);
                prop_assert!((linalg::trace(&a).re - 1.0).abs() < 1e-12);
                let rho = DensityMatrix4::new(a).unwrap();
                if let InitialState::Werner { .. } = s {
                    prop_assert!(rho.is_x_shaped(0.0));
                }
            }
        }
    }
}
