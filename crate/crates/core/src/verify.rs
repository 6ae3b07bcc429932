//! Self-check suite behind `qbath verify`: closed-form dynamics against the
//! brute-force oracle, plus the analytic laws and orderings the model must
//! obey.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{reduced_density, Propagator};
use crate::entanglement::{concurrence, concurrence_x_state};
use crate::error::Result;
use crate::linalg::max_abs_diff;
use crate::model::{
    BellFamily, Complex, DensityMatrix4, EnvQubit, EnvironmentSpec, InitialState, SystemParams,
};
use crate::oracle::brute_force_reduced_density;
use crate::sweep::{
    dissipation_time, linspace, max_concurrence, run_sweep, AxisParameter, EnvironmentRecipe,
    SweepSpec, SweptAxis, TimeGrid, Width,
};

pub const ORACLE_CASES: usize = 200;
pub const ORACLE_TOLERANCE: f64 = 1e-10;
pub const ORACLE_SEED: u64 = 0x5EED_0AC1E;
const X_STATE_CASES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Largest deviation seen, for checks that measure one.
    pub worst: Option<f64>,
    pub note: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            passed: 0,
            failed: 0,
            worst: None,
            note: None,
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }

    fn compare(&mut self, deviation: f64, tol: f64) {
        self.worst = Some(self.worst.map_or(deviation, |w| w.max(deviation)));
        self.expect(deviation <= tol);
    }

    fn expect(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn absorb(&mut self, result: Result<()>) {
        if let Err(e) = result {
            self.failed += 1;
            self.note.get_or_insert_with(|| e.to_string());
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} ({}/{})",
            self.name,
            self.passed,
            self.passed + self.failed
        )?;
        if let Some(w) = self.worst {
            write!(f, " worst {w:.2e}")?;
        }
        if let Some(note) = &self.note {
            write!(f, ": {note}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn is_success(&self) -> bool {
        self.failed() == 0
    }
}

pub fn run_all() -> Report {
    let mut checks = vec![oracle_check(ORACLE_SEED, ORACLE_CASES)];
    checks.extend(invariant_checks());
    Report { checks }
}

/// One randomly drawn configuration for the oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCase {
    pub system: SystemParams,
    pub environment: EnvironmentSpec,
    pub state: InitialState,
    pub t: f64,
}

fn random_qubit_state(rng: &mut ChaCha8Rng) -> [Complex; 2] {
    let theta = rng.gen_range(0.0..PI / 2.0);
    [
        Complex::from_polar(theta.cos(), rng.gen_range(0.0..2.0 * PI)),
        Complex::from_polar(theta.sin(), rng.gen_range(0.0..2.0 * PI)),
    ]
}

fn random_env_qubit(rng: &mut ChaCha8Rng, gamma_s1: f64, gamma_s2: f64) -> Result<EnvQubit> {
    let [alpha, beta] = random_qubit_state(rng);
    EnvQubit::new(rng.gen_range(0.0..5.0), gamma_s1, gamma_s2, alpha, beta)
}

/// Shared and separate baths of up to six qubits with random, generally
/// biased amplitudes; product and Werner-like states; parameters in
/// `[0, 5]` and times in `[0, 20]`.
pub fn random_oracle_cases(seed: u64, count: usize) -> Result<Vec<OracleCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    for i in 0..count {
        let system = SystemParams::new(
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
        )?;
        let mut qubits = Vec::new();
        if i % 2 == 0 {
            for _ in 0..rng.gen_range(0..=6) {
                let (g1, g2) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
                qubits.push(random_env_qubit(&mut rng, g1, g2)?);
            }
        } else {
            let n1 = rng.gen_range(0..=6);
            let n2 = rng.gen_range(0..=6 - n1);
            for _ in 0..n1 {
                let g = rng.gen_range(0.0..5.0);
                qubits.push(random_env_qubit(&mut rng, g, 0.0)?);
            }
            for _ in 0..n2 {
                let g = rng.gen_range(0.0..5.0);
                qubits.push(random_env_qubit(&mut rng, 0.0, g)?);
            }
        }
        let state = if rng.gen_bool(0.5) {
            let s1 = random_qubit_state(&mut rng);
            InitialState::product(s1, random_qubit_state(&mut rng))?
        } else {
            let family = if rng.gen_bool(0.5) {
                BellFamily::Phi
            } else {
                BellFamily::Psi
            };
            InitialState::werner(family, rng.gen_range(0.0..=1.0))?
        };
        cases.push(OracleCase {
            system,
            environment: EnvironmentSpec::new(qubits),
            state,
            t: rng.gen_range(0.0..=20.0),
        });
    }
    Ok(cases)
}

/// Largest entrywise difference between the closed form and the oracle.
pub fn oracle_deviation(case: &OracleCase) -> Result<f64> {
    let fast = reduced_density(&case.system, &case.environment, &case.state, case.t)?;
    let slow = brute_force_reduced_density(&case.system, &case.environment, &case.state, case.t)?;
    Ok(max_abs_diff(fast.entries(), slow.entries()))
}

pub fn oracle_check(seed: u64, count: usize) -> CheckOutcome {
    checked("oracle_equivalence", |out| {
        for case in random_oracle_cases(seed, count)? {
            out.compare(oracle_deviation(&case)?, ORACLE_TOLERANCE);
        }
        Ok(())
    })
}

pub fn invariant_checks() -> Vec<CheckOutcome> {
    vec![
        closed_system_law(),
        werner_initial_concurrence(),
        x_state_agreement(),
        phi_homogeneous_law(),
        psi_constant(),
        frequency_invariance(),
        periodicity(),
        attenuation_with_bath_size(),
        gap_at_integer_ratio(),
        width_controls_dissipation(),
        distinct_bath_distribution(),
    ]
}

fn homogeneous(n: usize, gamma: f64) -> Result<EnvironmentSpec> {
    Ok(EnvironmentSpec::new(vec![
        EnvQubit::unbiased(gamma, gamma)?;
        n
    ]))
}

fn concurrence_row(
    system: SystemParams,
    env: EnvironmentSpec,
    state: &InitialState,
    times: &[f64],
) -> Result<Vec<f64>> {
    let propagator = Propagator::new(system, env, state)?;
    times
        .iter()
        .map(|&t| Ok(concurrence(&propagator.at(t))?.value()))
        .collect()
}

fn checked(name: &'static str, body: impl FnOnce(&mut CheckOutcome) -> Result<()>) -> CheckOutcome {
    let mut out = CheckOutcome::new(name);
    let result = body(&mut out);
    out.absorb(result);
    out
}

fn closed_system_law() -> CheckOutcome {
    checked("closed_system_law", |out| {
        let times = linspace(0.0, 4.0 * PI, 400);
        for w12 in [0.5, 1.0, 2.3] {
            let row = concurrence_row(
                SystemParams::new(1.0, 1.0, w12)?,
                EnvironmentSpec::empty(),
                &InitialState::unbiased_product(),
                &times,
            )?;
            for (c, t) in row.iter().zip(&times) {
                out.compare((c - (w12 * t).sin().abs()).abs(), 1e-10);
            }
        }
        Ok(())
    })
}

fn werner_initial_concurrence() -> CheckOutcome {
    checked("werner_initial_concurrence", |out| {
        for family in [BellFamily::Phi, BellFamily::Psi] {
            for lambda in [0.0, 0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0] {
                let state = InitialState::werner(family, lambda)?;
                let rho = DensityMatrix4::new(crate::model::initial_coefficients(&state)?)?;
                let expected = ((3.0 * lambda - 1.0) / 2.0).max(0.0);
                out.compare((concurrence(&rho)?.value() - expected).abs(), 1e-10);
            }
        }
        Ok(())
    })
}

/// Random X-shaped density matrix: positive diagonal, coherences bounded by
/// the geometric mean of their diagonal pair.
pub fn random_x_state(rng: &mut impl Rng) -> Result<DensityMatrix4> {
    let weights: [f64; 4] = std::array::from_fn(|_| -rng.gen::<f64>().ln());
    let total: f64 = weights.iter().sum();
    let p = weights.map(|w| w / total);
    let mut m = [[Complex::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        m[i][i] = Complex::new(p[i], 0.0);
    }
    for (i, j) in [(0, 3), (1, 2)] {
        let z = Complex::from_polar(
            rng.gen::<f64>() * (p[i] * p[j]).sqrt(),
            rng.gen_range(0.0..2.0 * PI),
        );
        m[i][j] = z;
        m[j][i] = z.conj();
    }
    DensityMatrix4::new(m)
}

fn x_state_agreement() -> CheckOutcome {
    checked("x_state_agreement", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED ^ 0x0A);
        for _ in 0..X_STATE_CASES {
            let rho = random_x_state(&mut rng)?;
            out.compare(
                (concurrence(&rho)?.value() - concurrence_x_state(&rho)?.value()).abs(),
                1e-9,
            );
        }
        Ok(())
    })
}

fn phi_homogeneous_law() -> CheckOutcome {
    checked("phi_homogeneous_law", |out| {
        let times = linspace(0.0, 4.0 * PI, 400);
        for gamma in [0.5, 1.0] {
            for n in [1, 2, 5, 10] {
                let row = concurrence_row(
                    SystemParams::new(1.0, 1.0, 1.0)?,
                    homogeneous(n, gamma)?,
                    &InitialState::bell(BellFamily::Phi),
                    &times,
                )?;
                for (c, t) in row.iter().zip(&times) {
                    out.compare(
                        (c - (2.0 * gamma * t).cos().abs().powi(n as i32)).abs(),
                        1e-9,
                    );
                }
            }
        }
        Ok(())
    })
}

fn psi_constant() -> CheckOutcome {
    checked("psi_constant", |out| {
        let times = linspace(0.0, 4.0 * PI, 400);
        for lambda in [0.5, 1.0] {
            for n in [1, 5] {
                let state = InitialState::werner(BellFamily::Psi, lambda)?;
                let row = concurrence_row(
                    SystemParams::new(1.0, 1.0, 1.0)?,
                    homogeneous(n, 1.0)?,
                    &state,
                    &times,
                )?;
                let expected = ((3.0 * lambda - 1.0) / 2.0).max(0.0);
                for c in row {
                    out.compare((c - expected).abs(), 1e-10);
                }
            }
        }
        Ok(())
    })
}

fn sweep_spec(
    state: InitialState,
    environment: EnvironmentRecipe,
    parameter: AxisParameter,
    values: Vec<f64>,
    t_max: f64,
) -> Result<SweepSpec> {
    Ok(SweepSpec {
        system: SystemParams::new(1.0, 1.0, 1.0)?,
        environment,
        state,
        axis: SweptAxis { parameter, values },
        time_grid: TimeGrid::linear(0.0, t_max, 400)?,
        master_seed: ORACLE_SEED,
        repeats: 1,
    })
}

fn row_spread(values: &[Vec<f64>]) -> f64 {
    values[1..]
        .iter()
        .flat_map(|row| row.iter().zip(&values[0]).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

fn frequency_invariance() -> CheckOutcome {
    checked("frequency_invariance", |out| {
        let env = EnvironmentRecipe::HomogeneousMutual { n: 3, gamma: 0.8 };
        let states = [
            InitialState::unbiased_product(),
            InitialState::bell(BellFamily::Phi),
            InitialState::werner(BellFamily::Phi, 0.6)?,
            InitialState::werner(BellFamily::Psi, 0.7)?,
        ];
        let values = linspace(0.0, 5.0, 11);
        for (i, state) in states.iter().enumerate() {
            let mut axes = vec![AxisParameter::OmegaS1, AxisParameter::OmegaS2];
            if i > 0 {
                axes.push(AxisParameter::OmegaS1s2);
            }
            for axis in axes {
                let grid = run_sweep(&sweep_spec(*state, env, axis, values.clone(), 4.0 * PI)?)?;
                out.compare(row_spread(&grid.values), 1e-10);
            }
        }
        Ok(())
    })
}

fn periodicity() -> CheckOutcome {
    checked("periodicity", |out| {
        for gamma in [0.5, 1.0, 1.7] {
            let period = 2.0 * PI / gamma;
            let times = linspace(0.0, period, 400);
            let shifted: Vec<f64> = times.iter().map(|t| t + period).collect();
            for n in [1, 3] {
                for state in [
                    InitialState::unbiased_product(),
                    InitialState::bell(BellFamily::Phi),
                ] {
                    let system = SystemParams::new(1.0, 1.0, gamma)?;
                    let a = concurrence_row(system, homogeneous(n, gamma)?, &state, &times)?;
                    let b = concurrence_row(system, homogeneous(n, gamma)?, &state, &shifted)?;
                    for (x, y) in a.iter().zip(&b) {
                        out.compare((x - y).abs(), 1e-9);
                    }
                }
            }
        }
        Ok(())
    })
}

fn attenuation_with_bath_size() -> CheckOutcome {
    checked("attenuation_with_bath_size", |out| {
        let times = linspace(0.0, 4.0 * PI, 400);
        let mut previous = f64::INFINITY;
        for n in [1, 2, 4, 8] {
            let row = concurrence_row(
                SystemParams::new(1.0, 1.0, 1.0)?,
                homogeneous(n, 1.0)?,
                &InitialState::unbiased_product(),
                &times,
            )?;
            let peak = max_concurrence(&row);
            out.expect(peak < 0.99);
            out.expect(peak <= previous);
            previous = peak;
        }
        Ok(())
    })
}

fn gap_at_integer_ratio() -> CheckOutcome {
    checked("gap_at_integer_ratio", |out| {
        let times = linspace(0.0, 4.0 * PI, 400);
        let peak = |w12: f64| -> Result<f64> {
            let row = concurrence_row(
                SystemParams::new(1.0, 1.0, w12)?,
                homogeneous(1, 1.0)?,
                &InitialState::unbiased_product(),
                &times,
            )?;
            Ok(max_concurrence(&row))
        };
        out.expect(peak(1.0)? < peak(0.5)?);
        Ok(())
    })
}

fn width_controls_dissipation() -> CheckOutcome {
    checked("width_controls_dissipation", |out| {
        for state in [
            InitialState::unbiased_product(),
            InitialState::bell(BellFamily::Phi),
        ] {
            let mut previous = f64::INFINITY;
            for f in [0.05, 0.1, 0.2] {
                let env = EnvironmentRecipe::WhiteNoiseMutual {
                    n: 100,
                    mu: 0.5,
                    width: Width::Absolute(f),
                };
                let mut spec = sweep_spec(state, env, AxisParameter::F, vec![f], 100.0)?;
                spec.time_grid.samples = 4000;
                let grid = run_sweep(&spec)?;
                match dissipation_time(grid.row(0), &grid.times, 0.05) {
                    Some(t) => {
                        out.expect(t <= previous);
                        previous = t;
                    }
                    None => out.expect(false),
                }
            }
        }
        Ok(())
    })
}

fn distinct_bath_distribution() -> CheckOutcome {
    checked("distinct_bath_distribution", |out| {
        let env = EnvironmentRecipe::DistinctScaled {
            n1: 4,
            n2: 4,
            gamma_s2: 1.0,
            m: 1.0,
        };
        let split = vec![6.0, 4.0];
        let ps = run_sweep(&sweep_spec(
            InitialState::unbiased_product(),
            env,
            AxisParameter::N1Share,
            split.clone(),
            4.0 * PI,
        )?)?;
        out.expect(row_spread(&ps.values) > 1e-3);
        let phi = run_sweep(&sweep_spec(
            InitialState::bell(BellFamily::Phi),
            env,
            AxisParameter::N1Share,
            split,
            4.0 * PI,
        )?)?;
        out.compare(row_spread(&phi.values), 1e-10);
        Ok(())
    })
}
