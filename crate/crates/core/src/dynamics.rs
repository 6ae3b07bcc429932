//! Closed-form evolution of the system's reduced density matrix.
//!
//! Every term of the Hamiltonian is diagonal in the σz product basis, so the
//! reduced matrix evolves entrywise: `ρ(t)[lm][no] = A[lm][no] · r_lmno(t)`,
//! where each decoherence factor `r_lmno` is a system phase times a product
//! of single bath-qubit overlaps. Shared and private baths use the same
//! formula; a private-bath qubit simply has one coupling equal to zero.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix4};
use crate::model::{
    initial_coefficients, Complex, DensityMatrix4, EnvQubit, EnvironmentSpec, InitialState,
    SystemParams,
};

const ONE: Complex = Complex::new(1.0, 0.0);

/// σz eigenvalue of a basis bit: `|0⟩ → +1`, `|1⟩ → -1`.
#[inline]
pub fn basis_sign(bit: usize) -> f64 {
    debug_assert!(bit < 2);
    if bit == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Energy of the system basis state `|l m⟩` under the system Hamiltonian.
fn system_energy(p: &SystemParams, l: usize, m: usize) -> f64 {
    let (el, em) = (basis_sign(l), basis_sign(m));
    0.5 * (el * p.omega_s1 + em * p.omega_s2 + el * em * p.omega_s1s2)
}

/// Phase `s_lm(t)` acquired by the system basis state `|l m⟩`.
pub fn s_factor(p: &SystemParams, l: usize, m: usize, t: f64) -> Complex {
    Complex::cis(-system_energy(p, l, m) * t)
}

/// Overlap `⟨ψ_no(t)|ψ_lm(t)⟩` of one bath qubit evolved conditionally on the
/// system being in `|l m⟩` and in `|n o⟩`. The bath qubit's own frequency
/// cancels.
pub fn env_overlap_factor(q: &EnvQubit, l: usize, m: usize, n: usize, o: usize, t: f64) -> Complex {
    let delta = (basis_sign(l) - basis_sign(n)) * q.gamma_s1()
        + (basis_sign(m) - basis_sign(o)) * q.gamma_s2();
    // The bath state is normalised, so the overlap is exactly 1 at t = 0.
    if delta == 0.0 || t == 0.0 {
        return ONE;
    }
    let (a, b) = (q.alpha().norm_sqr(), q.beta().norm_sqr());
    let (sin, cos) = (0.5 * delta * t).sin_cos();
    // a e^{-iθ} + b e^{iθ}
    Complex::new((a + b) * cos, (b - a) * sin)
}

/// Decoherence factor `r_lmno(t)`; exactly 1 on the diagonal.
pub fn decoherence_factor(
    p: &SystemParams,
    env: &EnvironmentSpec,
    l: usize,
    m: usize,
    n: usize,
    o: usize,
    t: f64,
) -> Complex {
    if (l, m) == (n, o) || t == 0.0 {
        return ONE;
    }
    let phase = Complex::cis(-(system_energy(p, l, m) - system_energy(p, n, o)) * t);
    env.qubits()
        .iter()
        .fold(phase, |acc, q| acc * env_overlap_factor(q, l, m, n, o, t))
}

/// A bath of `n` identical qubits shared by both system qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousBath {
    pub n: usize,
    pub gamma: f64,
    /// `|α|²`
    pub p0: f64,
    /// `|β|²`
    pub p1: f64,
}

/// Above this size binomial weights are formed from logarithms.
const DIRECT_BINOMIAL_LIMIT: usize = 50;

fn binomial_weights(n: usize, p0: f64, p1: f64) -> Vec<f64> {
    if n <= DIRECT_BINOMIAL_LIMIT {
        let mut choose = 1.0_f64;
        (0..=n)
            .map(|k| {
                if k > 0 {
                    choose = choose * (n - k + 1) as f64 / k as f64;
                }
                choose * p0.powi(k as i32) * p1.powi((n - k) as i32)
            })
            .collect()
    } else {
        let (ln0, ln1) = (p0.ln(), p1.ln());
        let mut ln_choose = 0.0_f64;
        (0..=n)
            .map(|k| {
                if k > 0 {
                    ln_choose += ((n - k + 1) as f64).ln() - (k as f64).ln();
                }
                // 0 * ln(0) must contribute nothing.
                let from0 = if k == 0 { 0.0 } else { k as f64 * ln0 };
                let from1 = if k == n { 0.0 } else { (n - k) as f64 * ln1 };
                (ln_choose + from0 + from1).exp()
            })
            .collect()
    }
}

/// Decoherence factor of a homogeneous shared bath written as a binomial sum
/// over the number of bath qubits found in `|0⟩`.
pub fn decoherence_factor_binomial(
    p: &SystemParams,
    bath: &HomogeneousBath,
    l: usize,
    m: usize,
    n: usize,
    o: usize,
    t: f64,
) -> Complex {
    if (l, m) == (n, o) || t == 0.0 {
        return ONE;
    }
    let phase = Complex::cis(-(system_energy(p, l, m) - system_energy(p, n, o)) * t);
    // Per-qubit overlap is p0 e^{-i c Γ t} + p1 e^{i c Γ t}.
    let c = 0.5 * ((basis_sign(l) - basis_sign(n)) + (basis_sign(m) - basis_sign(o)));
    let weights = binomial_weights(bath.n, bath.p0, bath.p1);
    let sum: Complex = weights
        .iter()
        .enumerate()
        .map(|(k, w)| Complex::cis(c * bath.gamma * (bath.n as f64 - 2.0 * k as f64) * t) * *w)
        .sum();
    phase * sum
}

/// All sixteen decoherence factors at one instant, indexed like the density
/// matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoherenceFactors {
    pub r: Matrix4,
}

impl DecoherenceFactors {
    pub fn at(p: &SystemParams, env: &EnvironmentSpec, t: f64) -> Self {
        let mut r = linalg::zeros::<4>();
        for (i, j) in upper_pairs() {
            let (l, m, n, o) = (i >> 1, i & 1, j >> 1, j & 1);
            let z = if i == j {
                ONE
            } else {
                decoherence_factor(p, env, l, m, n, o, t)
            };
            r[i][j] = z;
            r[j][i] = z.conj();
        }
        DecoherenceFactors { r }
    }
}

fn upper_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i..4).map(move |j| (i, j)))
}

/// Evaluates the reduced density matrix of one configuration at many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    params: SystemParams,
    env: EnvironmentSpec,
    coefficients: Matrix4,
}

impl Propagator {
    pub fn new(params: SystemParams, env: EnvironmentSpec, state: &InitialState) -> Result<Self> {
        params.validate()?;
        let coefficients = initial_coefficients(state)?;
        Ok(Propagator {
            params,
            env,
            coefficients,
        })
    }

    pub fn coefficients(&self) -> &Matrix4 {
        &self.coefficients
    }

    /// `ρ(t)`. Entries whose initial coefficient vanishes stay zero, so their
    /// factors are never evaluated.
    pub fn at(&self, t: f64) -> DensityMatrix4 {
        let mut rho = self.coefficients;
        for (i, j) in upper_pairs().filter(|(i, j)| i != j) {
            if self.coefficients[i][j] == Complex::new(0.0, 0.0) {
                continue;
            }
            let (l, m, n, o) = (i >> 1, i & 1, j >> 1, j & 1);
            let z = self.coefficients[i][j]
                * decoherence_factor(&self.params, &self.env, l, m, n, o, t);
            rho[i][j] = z;
            rho[j][i] = z.conj();
        }
        DensityMatrix4::from_entries_unchecked(rho)
    }
}

/// Reduced density matrix of the two system qubits at time `t`.
pub fn reduced_density(
    p: &SystemParams,
    env: &EnvironmentSpec,
    state: &InitialState,
    t: f64,
) -> Result<DensityMatrix4> {
    if !t.is_finite() {
        return Err(Error::validation("time", format!("non-finite value {t}")));
    }
    Ok(Propagator::new(*p, env.clone(), state)?.at(t))
}
