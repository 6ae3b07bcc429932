//! Parameter sweeps: one row of concurrence values over a time grid for
//! every value of a swept parameter.
//!
//! Rows are independent. Each row gets its own seed, derived from the
//! master seed and the row index, so any row can be reproduced alone and
//! the grid does not depend on how rows are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Propagator;
use crate::entanglement::concurrence;
use crate::error::{Error, Result};
use crate::model::{
    make_environment, EnvironmentKind, EnvironmentSpec, InitialState, SystemParams,
};

pub const DEFAULT_TIME_SAMPLES: usize = 400;
pub const DEFAULT_AXIS_SAMPLES: usize = 100;

/// Odd constant (2^64 / golden ratio) spreading row indices across seeds.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
pub fn mix_seed(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of child `index` of `parent`: `mix(parent ^ index * stride)`.
pub fn derive_seed(parent: u64, index: u64) -> u64 {
    mix_seed(parent ^ index.wrapping_mul(SEED_STRIDE))
}

/// Draws `count` couplings uniformly from `[|mu - f|, mu + f]`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`,
/// and each draw maps 53 random bits onto the interval, so sequences are
/// identical on every platform.
pub fn sample_white_noise(mu: f64, f: f64, seed: u64, count: usize) -> Vec<f64> {
    let lo = (mu - f).abs();
    let width = mu + f - lo;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| lo + width * rng.gen::<f64>()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisTransform {
    #[default]
    Linear,
    /// Report `1/t` instead of `t`. Evaluation still happens on the linear grid.
    Reciprocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    #[serde(default)]
    pub axis_transform: AxisTransform,
}

impl TimeGrid {
    pub fn new(
        t_min: f64,
        t_max: f64,
        samples: usize,
        axis_transform: AxisTransform,
    ) -> Result<Self> {
        let g = TimeGrid {
            t_min,
            t_max,
            samples,
            axis_transform,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(t_min: f64, t_max: f64, samples: usize) -> Result<Self> {
        Self::new(t_min, t_max, samples, AxisTransform::Linear)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min.is_finite() && self.t_max.is_finite())
            || self.t_min < 0.0
            || self.t_max <= self.t_min
        {
            return Err(Error::validation(
                "time grid",
                format!(
                    "need 0 <= t_min < t_max, got [{}, {}]",
                    self.t_min, self.t_max
                ),
            ));
        }
        if self.samples < 2 {
            return Err(Error::validation(
                "time grid",
                format!("need at least 2 samples, got {}", self.samples),
            ));
        }
        if self.axis_transform == AxisTransform::Reciprocal && self.t_min <= 0.0 {
            return Err(Error::validation(
                "time grid",
                "reciprocal axis needs t_min > 0",
            ));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.t_max - self.t_min) / (self.samples - 1) as f64
    }

    /// Evaluation times; the last one is exactly `t_max`.
    pub fn times(&self) -> Vec<f64> {
        let last = self.samples - 1;
        (0..self.samples)
            .map(|i| {
                if i == last {
                    self.t_max
                } else {
                    self.t_min + (self.t_max - self.t_min) * i as f64 / last as f64
                }
            })
            .collect()
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Half-width of a white-noise distribution, fixed or proportional to its mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Width {
    Absolute(f64),
    RelativeToMean(f64),
}

impl Width {
    pub fn resolve(self, mu: f64) -> f64 {
        match self {
            Width::Absolute(f) => f,
            Width::RelativeToMean(ratio) => ratio * mu,
        }
    }
}

/// Serializable description of a bath. White-noise couplings are drawn when
/// the recipe is built with a seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnvironmentRecipe {
    HomogeneousMutual {
        n: usize,
        gamma: f64,
    },
    WhiteNoiseMutual {
        n: usize,
        mu: f64,
        width: Width,
    },
    DistinctHomogeneous {
        n1: usize,
        gamma_s1: f64,
        n2: usize,
        gamma_s2: f64,
    },
    DistinctScaled {
        n1: usize,
        n2: usize,
        gamma_s2: f64,
        m: f64,
    },
    /// Homogeneous bath on S1, white-noise bath on S2. When `m` is set the
    /// homogeneous coupling follows the white-noise mean: `gamma_s1 = m * mu`.
    Mixed {
        n1: usize,
        gamma_s1: f64,
        n2: usize,
        mu: f64,
        width: Width,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<f64>,
    },
}

impl EnvironmentRecipe {
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            EnvironmentRecipe::WhiteNoiseMutual { .. } | EnvironmentRecipe::Mixed { .. }
        )
    }

    pub fn kind(&self, seed: u64) -> EnvironmentKind {
        match *self {
            EnvironmentRecipe::HomogeneousMutual { n, gamma } => {
                EnvironmentKind::HomogeneousMutual { n, gamma }
            }
            EnvironmentRecipe::WhiteNoiseMutual { n, mu, width } => {
                EnvironmentKind::WhiteNoiseMutual {
                    n,
                    mu,
                    f: width.resolve(mu),
                    seed,
                }
            }
            EnvironmentRecipe::DistinctHomogeneous {
                n1,
                gamma_s1,
                n2,
                gamma_s2,
            } => EnvironmentKind::DistinctHomogeneous {
                n1,
                gamma_s1,
                n2,
                gamma_s2,
            },
            EnvironmentRecipe::DistinctScaled {
                n1,
                n2,
                gamma_s2,
                m,
            } => EnvironmentKind::DistinctScaled {
                n1,
                n2,
                gamma_s2,
                m,
            },
            EnvironmentRecipe::Mixed {
                n1,
                gamma_s1,
                n2,
                mu,
                width,
                m,
            } => EnvironmentKind::Mixed {
                n1,
                gamma_s1: m.map_or(gamma_s1, |m| m * mu),
                n2,
                mu,
                f: width.resolve(mu),
                seed,
            },
        }
    }

    pub fn build(&self, seed: u64) -> Result<EnvironmentSpec> {
        make_environment(self.kind(seed))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisParameter {
    OmegaS1,
    OmegaS2,
    OmegaS1s2,
    Gamma,
    Lambda,
    #[serde(alias = "N")]
    N,
    Mu,
    F,
    #[serde(alias = "M")]
    M,
    /// Number of qubits in the S1 bath; the S2 bath keeps the remainder of
    /// the base recipe's total.
    #[serde(alias = "N1_share")]
    N1Share,
}

impl AxisParameter {
    pub fn name(self) -> &'static str {
        match self {
            AxisParameter::OmegaS1 => "omega_s1",
            AxisParameter::OmegaS2 => "omega_s2",
            AxisParameter::OmegaS1s2 => "omega_s1s2",
            AxisParameter::Gamma => "gamma",
            AxisParameter::Lambda => "lambda",
            AxisParameter::N => "n",
            AxisParameter::Mu => "mu",
            AxisParameter::F => "f",
            AxisParameter::M => "m",
            AxisParameter::N1Share => "n1_share",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweptAxis {
    pub parameter: AxisParameter,
    pub values: Vec<f64>,
}

fn default_repeats() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub system: SystemParams,
    pub environment: EnvironmentRecipe,
    pub state: InitialState,
    pub axis: SweptAxis,
    pub time_grid: TimeGrid,
    pub master_seed: u64,
    /// Independent white-noise draws averaged per row. Ignored for
    /// deterministic baths.
    #[serde(default = "default_repeats")]
    pub repeats: u32,
}

/// Everything needed to evaluate one row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowConfig {
    pub system: SystemParams,
    pub environment: EnvironmentRecipe,
    pub state: InitialState,
}

fn as_count(parameter: AxisParameter, value: f64) -> Result<usize> {
    if !value.is_finite() || value < 0.0 || value.fract() != 0.0 {
        return Err(Error::validation(
            "axis value",
            format!(
                "{} must be a non-negative integer, got {value}",
                parameter.name()
            ),
        ));
    }
    Ok(value as usize)
}

fn not_applicable(parameter: AxisParameter, recipe: &EnvironmentRecipe) -> Error {
    Error::validation(
        "swept axis",
        format!(
            "{} does not apply to the {} bath",
            parameter.name(),
            recipe_name(recipe)
        ),
    )
}

fn recipe_name(recipe: &EnvironmentRecipe) -> &'static str {
    match recipe {
        EnvironmentRecipe::HomogeneousMutual { .. } => "homogeneous_mutual",
        EnvironmentRecipe::WhiteNoiseMutual { .. } => "white_noise_mutual",
        EnvironmentRecipe::DistinctHomogeneous { .. } => "distinct_homogeneous",
        EnvironmentRecipe::DistinctScaled { .. } => "distinct_scaled",
        EnvironmentRecipe::Mixed { .. } => "mixed",
    }
}

impl SweepSpec {
    /// Base configuration with the swept parameter set to `value`.
    pub fn configure(&self, value: f64) -> Result<RowConfig> {
        use AxisParameter as P;
        use EnvironmentRecipe as R;

        let mut system = self.system;
        let mut environment = self.environment;
        let mut state = self.state;
        let parameter = self.axis.parameter;
        match parameter {
            P::OmegaS1 => system.omega_s1 = value,
            P::OmegaS2 => system.omega_s2 = value,
            P::OmegaS1s2 => system.omega_s1s2 = value,
            P::Lambda => match &mut state {
                InitialState::Werner { purity, .. } => *purity = value,
                InitialState::Product { .. } => {
                    return Err(Error::validation(
                        "swept axis",
                        "lambda needs a Werner-like initial state",
                    ))
                }
            },
            P::Gamma => match &mut environment {
                R::HomogeneousMutual { gamma, .. } => *gamma = value,
                R::DistinctHomogeneous {
                    gamma_s1, gamma_s2, ..
                } => {
                    *gamma_s1 = value;
                    *gamma_s2 = value;
                }
                R::DistinctScaled { gamma_s2, .. } => *gamma_s2 = value,
                R::Mixed { gamma_s1, m, .. } if m.is_none() => *gamma_s1 = value,
                other => return Err(not_applicable(parameter, other)),
            },
            P::N => {
                let count = as_count(parameter, value)?;
                match &mut environment {
                    R::HomogeneousMutual { n, .. } | R::WhiteNoiseMutual { n, .. } => *n = count,
                    other => return Err(not_applicable(parameter, other)),
                }
            }
            P::Mu => match &mut environment {
                R::WhiteNoiseMutual { mu, .. } | R::Mixed { mu, .. } => *mu = value,
                other => return Err(not_applicable(parameter, other)),
            },
            P::F => match &mut environment {
                R::WhiteNoiseMutual { width, .. } | R::Mixed { width, .. } => {
                    *width = Width::Absolute(value)
                }
                other => return Err(not_applicable(parameter, other)),
            },
            P::M => match &mut environment {
                R::DistinctScaled { m, .. } => *m = value,
                R::Mixed { m, .. } => *m = Some(value),
                other => return Err(not_applicable(parameter, other)),
            },
            P::N1Share => {
                let count = as_count(parameter, value)?;
                match &mut environment {
                    R::DistinctHomogeneous { n1, n2, .. }
                    | R::DistinctScaled { n1, n2, .. }
                    | R::Mixed { n1, n2, .. } => {
                        let total = *n1 + *n2;
                        if count > total {
                            return Err(Error::validation(
                                "axis value",
                                format!(
                                    "n1_share {count} exceeds the total of {total} bath qubits"
                                ),
                            ));
                        }
                        *n1 = count;
                        *n2 = total - count;
                    }
                    other => return Err(not_applicable(parameter, other)),
                }
            }
        }
        system.validate()?;
        state.validate()?;
        // Building with any seed checks every strength and width.
        environment.build(0)?;
        Ok(RowConfig {
            system,
            environment,
            state,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.time_grid.validate()?;
        if self.axis.values.is_empty() {
            return Err(Error::validation("swept axis", "no values"));
        }
        if self.repeats == 0 {
            return Err(Error::validation("repeats", "must be at least 1"));
        }
        for (row, &value) in self.axis.values.iter().enumerate() {
            self.configure(value).map_err(|e| Error::Row {
                row,
                value,
                cause: Box::new(e),
            })?;
        }
        Ok(())
    }

    pub fn row_seed(&self, row: usize) -> u64 {
        derive_seed(self.master_seed, row as u64)
    }

    pub fn row_seeds(&self) -> Vec<u64> {
        (0..self.axis.values.len())
            .map(|r| self.row_seed(r))
            .collect()
    }

    /// Concurrence over the time grid for one row.
    pub fn evaluate_row(&self, row: usize, times: &[f64]) -> Result<Vec<f64>> {
        let value = self.axis.values[row];
        let wrap = |e: Error| Error::Row {
            row,
            value,
            cause: Box::new(e),
        };
        let config = self.configure(value).map_err(wrap)?;
        let repeats = if config.environment.is_random() {
            self.repeats
        } else {
            1
        };
        let row_seed = self.row_seed(row);

        let mut sums = vec![0.0; times.len()];
        for repeat in 0..repeats {
            let env = config
                .environment
                .build(derive_seed(row_seed, repeat as u64))
                .map_err(wrap)?;
            let propagator = Propagator::new(config.system, env, &config.state).map_err(wrap)?;
            for (acc, &t) in sums.iter_mut().zip(times) {
                *acc += concurrence(&propagator.at(t)).map_err(wrap)?.value();
            }
        }
        if repeats > 1 {
            for x in &mut sums {
                *x /= repeats as f64;
            }
        }
        Ok(sums)
    }
}

/// Concurrence over (swept value × time), with the configuration that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceGrid {
    pub axis_values: Vec<f64>,
    pub times: Vec<f64>,
    /// `values[row][column]`, rows following `axis_values`.
    pub values: Vec<Vec<f64>>,
    pub spec: SweepSpec,
    pub row_seeds: Vec<u64>,
}

impl ConcurrenceGrid {
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<ConcurrenceGrid> {
    spec.validate()?;
    let times = spec.time_grid.times();
    let values = (0..spec.axis.values.len())
        .into_par_iter()
        .map(|row| spec.evaluate_row(row, &times))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcurrenceGrid {
        axis_values: spec.axis.values.clone(),
        times,
        values,
        spec: spec.clone(),
        row_seeds: spec.row_seeds(),
    })
}

pub fn max_concurrence(row: &[f64]) -> f64 {
    row.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// First grid time from which the row stays below `threshold` until the end
/// of the grid. `None` if the last sample is still at or above it.
pub fn dissipation_time(row: &[f64], times: &[f64], threshold: f64) -> Option<f64> {
    assert_eq!(row.len(), times.len());
    match row.iter().rposition(|&c| c >= threshold) {
        None => times.first().copied(),
        Some(i) if i + 1 < row.len() => Some(times[i + 1]),
        Some(_) => None,
    }
}

/// Smallest grid shift `s` with `|row[i + s] - row[i]| <= tol` for every
/// overlapping sample, returned as a time. Shifts are limited to half the
/// row so that a match covers at least half of it.
pub fn revival_period(row: &[f64], times: &[f64], tol: f64) -> Option<f64> {
    assert_eq!(row.len(), times.len());
    if row.len() < 2 {
        return None;
    }
    let step = times[1] - times[0];
    (1..=row.len() / 2)
        .find(|&s| row.iter().zip(&row[s..]).all(|(a, b)| (a - b).abs() <= tol))
        .map(|s| s as f64 * step)
}
