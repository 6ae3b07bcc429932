//! Brute-force reference: evolve the full system-plus-bath state on its
//! `2^(N+2)`-dimensional space and trace the bath out explicitly.
//!
//! Basis order is `(S1, S2, E1, ..., EN)` with S1 the most significant bit.
//! The Hamiltonian is diagonal in this basis, so evolution is a phase per
//! basis state.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::dynamics::basis_sign;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix4};
use crate::model::{
    BellFamily, Complex, DensityMatrix4, EnvironmentSpec, InitialState, SystemParams,
};

pub const MAX_ORACLE_QUBITS: usize = 24;

fn check_capacity(env: &EnvironmentSpec) -> Result<()> {
    if env.len() > MAX_ORACLE_QUBITS {
        return Err(Error::Capacity {
            qubits: env.len(),
            limit: MAX_ORACLE_QUBITS,
        });
    }
    Ok(())
}

/// Energy of every composite basis state.
pub fn diagonal_energies(p: &SystemParams, env: &EnvironmentSpec) -> Result<Vec<f64>> {
    check_capacity(env)?;
    let n = env.len();
    let energies = (0..1usize << (n + 2))
        .map(|idx| {
            let e1 = basis_sign((idx >> (n + 1)) & 1);
            let e2 = basis_sign((idx >> n) & 1);
            let mut e = e1 * p.omega_s1 + e2 * p.omega_s2 + e1 * e2 * p.omega_s1s2;
            for (k, q) in env.qubits().iter().enumerate() {
                let ek = basis_sign((idx >> (n - 1 - k)) & 1);
                e += ek * (q.omega_e() + q.gamma_s1() * e1 + q.gamma_s2() * e2);
            }
            0.5 * e
        })
        .collect();
    Ok(energies)
}

/// Pure state of the system and bath together.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeState {
    amplitudes: Vec<Complex>,
    bath_qubits: usize,
}

impl CompositeState {
    /// `|system⟩ ⊗ |ψ_E1⟩ ⊗ ... ⊗ |ψ_EN⟩`.
    pub fn product(system: [Complex; 4], env: &EnvironmentSpec) -> Result<Self> {
        check_capacity(env)?;
        let n = env.len();
        let bath: Vec<Complex> = (0..1usize << n)
            .map(|b| {
                env.qubits()
                    .iter()
                    .enumerate()
                    .map(|(k, q)| {
                        if (b >> (n - 1 - k)) & 1 == 0 {
                            q.alpha()
                        } else {
                            q.beta()
                        }
                    })
                    .product()
            })
            .collect();
        let amplitudes = system
            .iter()
            .flat_map(|s| bath.iter().map(move |b| s * b))
            .collect();
        Ok(CompositeState {
            amplitudes,
            bath_qubits: n,
        })
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `exp(-i E t)` basis state by basis state.
    pub fn evolve(&self, energies: &[f64], t: f64) -> Self {
        assert_eq!(energies.len(), self.amplitudes.len());
        CompositeState {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(energies)
                .map(|(a, e)| a * Complex::cis(-e * t))
                .collect(),
            bath_qubits: self.bath_qubits,
        }
    }

    /// `Tr_E |Φ⟩⟨Φ|` by summing over bath bit strings.
    #[allow(clippy::needless_range_loop)]
    pub fn reduce(&self) -> Matrix4 {
        let block = 1usize << self.bath_qubits;
        let mut rho = linalg::zeros::<4>();
        for i in 0..4 {
            for j in 0..4 {
                let a = &self.amplitudes[i * block..(i + 1) * block];
                let b = &self.amplitudes[j * block..(j + 1) * block];
                rho[i][j] = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
            }
        }
        rho
    }
}

/// The `+` and `-` Bell vectors of a family.
fn bell_vectors(family: BellFamily) -> [[Complex; 4]; 2] {
    let h = Complex::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex::new(0.0, 0.0);
    match family {
        BellFamily::Phi => [[h, z, z, h], [h, z, z, -h]],
        BellFamily::Psi => [[z, h, h, z], [z, h, -h, z]],
    }
}

/// Writes an initial state as a weighted sum of pure projectors. A Werner
/// state is diagonal in the Bell basis: its own Bell vector carries
/// `purity + (1 - purity)/4`, the other three `(1 - purity)/4` each.
pub fn pure_decomposition(state: &InitialState) -> Result<Vec<(f64, [Complex; 4])>> {
    state.validate()?;
    match *state {
        InitialState::Product { .. } => {
            Ok(vec![(1.0, state.product_amplitudes().expect("product"))])
        }
        InitialState::Werner { family, purity } => {
            let other = match family {
                BellFamily::Phi => BellFamily::Psi,
                BellFamily::Psi => BellFamily::Phi,
            };
            let [own_plus, own_minus] = bell_vectors(family);
            let [other_plus, other_minus] = bell_vectors(other);
            let background = (1.0 - purity) / 4.0;
            Ok(vec![
                (purity + background, own_plus),
                (background, own_minus),
                (background, other_plus),
                (background, other_minus),
            ])
        }
    }
}

/// Reduced system state at time `t`, by explicit evolution and partial trace.
pub fn brute_force_reduced_density(
    p: &SystemParams,
    env: &EnvironmentSpec,
    state: &InitialState,
    t: f64,
) -> Result<DensityMatrix4> {
    let energies = diagonal_energies(p, env)?;
    let mut rho = linalg::zeros::<4>();
    for (weight, vector) in pure_decomposition(state)? {
        if weight == 0.0 {
            continue;
        }
        let part = CompositeState::product(vector, env)?
            .evolve(&energies, t)
            .reduce();
        for i in 0..4 {
            for j in 0..4 {
                rho[i][j] += part[i][j] * weight;
            }
        }
    }
    Ok(DensityMatrix4::from_entries_unchecked(rho))
}
