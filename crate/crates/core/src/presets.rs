//! Named sweep configurations, one per figure id.
//!
//! Each preset pins the parameters that define its figure. The rest (time
//! range, axis range, bath size where the figure leaves it open) are
//! defaults listed in [`Preset::assumed`] and flagged in the manifest.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{BellFamily, InitialState, SystemParams};
use crate::sweep::{
    linspace, AxisParameter, AxisTransform, EnvironmentRecipe, SweepSpec, SweptAxis, TimeGrid,
    Width, DEFAULT_AXIS_SAMPLES, DEFAULT_TIME_SAMPLES,
};

/// Master seed used when none is given.
pub const DEFAULT_MASTER_SEED: u64 = 0x2545_F491_4F6C_DD1D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetId {
    Fig2a,
    Fig2bGamma,
    Fig2bOmega,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9a,
    Fig9b,
    Fig10,
}

impl PresetId {
    pub const ALL: [PresetId; 12] = [
        PresetId::Fig2a,
        PresetId::Fig2bGamma,
        PresetId::Fig2bOmega,
        PresetId::Fig3,
        PresetId::Fig4,
        PresetId::Fig5,
        PresetId::Fig6,
        PresetId::Fig7,
        PresetId::Fig8,
        PresetId::Fig9a,
        PresetId::Fig9b,
        PresetId::Fig10,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PresetId::Fig2a => "fig2a",
            PresetId::Fig2bGamma => "fig2b_gamma",
            PresetId::Fig2bOmega => "fig2b_omega",
            PresetId::Fig3 => "fig3",
            PresetId::Fig4 => "fig4",
            PresetId::Fig5 => "fig5",
            PresetId::Fig6 => "fig6",
            PresetId::Fig7 => "fig7",
            PresetId::Fig8 => "fig8",
            PresetId::Fig9a => "fig9a",
            PresetId::Fig9b => "fig9b",
            PresetId::Fig10 => "fig10",
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = PresetId::ALL.iter().map(|id| id.as_str()).collect();
                Error::validation(
                    "preset",
                    format!("unknown preset '{s}', expected one of {}", known.join(", ")),
                )
            })
    }
}

/// One grid of a preset. Single-grid presets have one unnamed panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: Option<&'static str>,
    pub spec: SweepSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub id: PresetId,
    pub panels: Vec<Panel>,
    /// Parameters that are defaults rather than defining values.
    pub assumed: Vec<&'static str>,
}

/// Command-line overrides applied on top of a preset or spec file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub t_max: Option<f64>,
}

impl Overrides {
    pub fn apply(&self, spec: &mut SweepSpec) -> Result<()> {
        if let Some(seed) = self.seed {
            spec.master_seed = seed;
        }
        if let Some(samples) = self.samples {
            spec.time_grid.samples = samples;
        }
        if let Some(t_max) = self.t_max {
            spec.time_grid.t_max = t_max;
        }
        spec.time_grid.validate()
    }
}

const OMEGA: f64 = 1.0;

fn unit_system(omega_s1s2: f64) -> SystemParams {
    SystemParams {
        omega_s1: OMEGA,
        omega_s2: OMEGA,
        omega_s1s2,
    }
}

fn grid(t_min: f64, t_max: f64, axis_transform: AxisTransform) -> TimeGrid {
    TimeGrid {
        t_min,
        t_max,
        samples: DEFAULT_TIME_SAMPLES,
        axis_transform,
    }
}

fn spec(
    system: SystemParams,
    environment: EnvironmentRecipe,
    state: InitialState,
    parameter: AxisParameter,
    values: Vec<f64>,
    time_grid: TimeGrid,
) -> SweepSpec {
    SweepSpec {
        system,
        environment,
        state,
        axis: SweptAxis { parameter, values },
        time_grid,
        master_seed: DEFAULT_MASTER_SEED,
        repeats: 1,
    }
}

fn panel(name: &'static str, spec: SweepSpec) -> Panel {
    Panel {
        name: Some(name),
        spec,
    }
}

fn single(spec: SweepSpec) -> Vec<Panel> {
    vec![Panel { name: None, spec }]
}

fn integers(lo: usize, hi: usize) -> Vec<f64> {
    (lo..=hi).map(|n| n as f64).collect()
}

fn bell(family: BellFamily) -> InitialState {
    InitialState::bell(family)
}

/// Builds a preset with the overrides applied to every panel.
pub fn build_preset(id: PresetId, overrides: &Overrides) -> Result<Preset> {
    use AxisParameter as P;
    use BellFamily::{Phi, Psi};

    let ps = InitialState::unbiased_product();
    let linear = |t_max| grid(0.0, t_max, AxisTransform::Linear);
    let homogeneous = |gamma| EnvironmentRecipe::HomogeneousMutual { n: 1, gamma };
    let coupling_axis = linspace(0.0, 5.0, DEFAULT_AXIS_SAMPLES);

    let (panels, assumed): (Vec<Panel>, Vec<&'static str>) = match id {
        PresetId::Fig2a => (
            single(spec(
                unit_system(1.0),
                homogeneous(1.0),
                ps,
                P::OmegaS1,
                coupling_axis,
                linear(4.0 * PI),
            )),
            vec!["environment.n", "axis.values", "time_grid"],
        ),
        PresetId::Fig2bGamma => (
            single(spec(
                unit_system(1.0),
                homogeneous(1.0),
                ps,
                P::Gamma,
                coupling_axis,
                linear(4.0 * PI),
            )),
            vec!["environment.n", "axis.values", "time_grid"],
        ),
        PresetId::Fig2bOmega => (
            single(spec(
                unit_system(1.0),
                homogeneous(1.0),
                ps,
                P::OmegaS1s2,
                coupling_axis,
                linear(4.0 * PI),
            )),
            vec!["environment.n", "axis.values", "time_grid"],
        ),
        PresetId::Fig3 => {
            let lambdas = linspace(0.0, 1.0, DEFAULT_AXIS_SAMPLES);
            let make = |family| {
                spec(
                    unit_system(1.0),
                    homogeneous(0.5),
                    bell(family),
                    P::Lambda,
                    lambdas.clone(),
                    linear(4.0 * PI),
                )
            };
            (
                vec![panel("phi", make(Phi)), panel("psi", make(Psi))],
                vec!["environment.n", "time_grid"],
            )
        }
        PresetId::Fig4 => (
            vec![
                panel(
                    "gamma",
                    spec(
                        unit_system(1.0),
                        homogeneous(1.0),
                        bell(Phi),
                        P::Gamma,
                        coupling_axis.clone(),
                        linear(4.0 * PI),
                    ),
                ),
                panel(
                    "omega",
                    spec(
                        unit_system(1.0),
                        homogeneous(1.0),
                        bell(Phi),
                        P::OmegaS1s2,
                        coupling_axis,
                        linear(4.0 * PI),
                    ),
                ),
            ],
            vec!["environment.n", "axis.values", "time_grid"],
        ),
        PresetId::Fig5 => {
            let reciprocal = grid(0.25, 4.0 * PI, AxisTransform::Reciprocal);
            (
                vec![
                    panel(
                        "gamma",
                        spec(
                            unit_system(1.0),
                            homogeneous(1.0),
                            ps,
                            P::Gamma,
                            coupling_axis.clone(),
                            reciprocal,
                        ),
                    ),
                    panel(
                        "omega",
                        spec(
                            unit_system(1.0),
                            homogeneous(1.0),
                            ps,
                            P::OmegaS1s2,
                            coupling_axis,
                            reciprocal,
                        ),
                    ),
                ],
                vec!["axis.values", "time_grid"],
            )
        }
        PresetId::Fig6 => {
            let noise = EnvironmentRecipe::WhiteNoiseMutual {
                n: 10,
                mu: 0.5,
                width: Width::Absolute(0.1),
            };
            let mus = linspace(0.0, 2.0, DEFAULT_AXIS_SAMPLES);
            let make = |state| {
                spec(
                    unit_system(1.0),
                    noise,
                    state,
                    P::Mu,
                    mus.clone(),
                    linear(8.0 * PI),
                )
            };
            (
                vec![
                    panel("ps", make(ps)),
                    panel("phi", make(bell(Phi))),
                    panel("psi", make(bell(Psi))),
                ],
                vec!["environment.n", "axis.values", "time_grid"],
            )
        }
        PresetId::Fig7 => {
            let noise = EnvironmentRecipe::WhiteNoiseMutual {
                n: 1,
                mu: 0.5,
                width: Width::Absolute(0.1),
            };
            let make = |state| {
                spec(
                    unit_system(1.0),
                    noise,
                    state,
                    P::N,
                    integers(1, DEFAULT_AXIS_SAMPLES),
                    linear(8.0 * PI),
                )
            };
            (
                vec![
                    panel("ps", make(ps)),
                    panel("phi", make(bell(Phi))),
                    panel("psi", make(bell(Psi))),
                ],
                vec!["axis.values", "time_grid"],
            )
        }
        PresetId::Fig8 => {
            let distinct = EnvironmentRecipe::DistinctScaled {
                n1: 2,
                n2: 2,
                gamma_s2: 1.0,
                m: 1.0,
            };
            let ms = linspace(0.0, 5.0, DEFAULT_AXIS_SAMPLES);
            let make = |state| {
                spec(
                    unit_system(1.0),
                    distinct,
                    state,
                    P::M,
                    ms.clone(),
                    linear(4.0 * PI),
                )
            };
            (
                vec![panel("ps", make(ps)), panel("phi", make(bell(Phi)))],
                vec![
                    "environment.n1",
                    "environment.n2",
                    "axis.values",
                    "time_grid",
                ],
            )
        }
        PresetId::Fig9a | PresetId::Fig9b => {
            let state = if id == PresetId::Fig9a { ps } else { bell(Phi) };
            let distinct = EnvironmentRecipe::DistinctScaled {
                n1: 4,
                n2: 4,
                gamma_s2: 1.0,
                m: 1.0,
            };
            (
                single(spec(
                    unit_system(1.0),
                    distinct,
                    state,
                    P::N1Share,
                    integers(0, 8),
                    linear(4.0 * PI),
                )),
                vec![
                    "environment.n1 + environment.n2",
                    "system.omega_s1s2",
                    "time_grid",
                ],
            )
        }
        PresetId::Fig10 => {
            let mixed = EnvironmentRecipe::Mixed {
                n1: 4,
                gamma_s1: 0.5,
                n2: 4,
                mu: 0.5,
                width: Width::RelativeToMean(0.1),
                m: Some(1.0),
            };
            let mus = linspace(0.0, 2.0, DEFAULT_AXIS_SAMPLES);
            let make = |state| {
                spec(
                    unit_system(1.0),
                    mixed,
                    state,
                    P::Mu,
                    mus.clone(),
                    linear(8.0 * PI),
                )
            };
            (
                vec![panel("ps", make(ps)), panel("phi", make(bell(Phi)))],
                vec![
                    "environment.n1",
                    "environment.n2",
                    "axis.values",
                    "time_grid",
                ],
            )
        }
    };

    let mut panels = panels;
    for p in &mut panels {
        overrides.apply(&mut p.spec)?;
        p.spec.validate()?;
    }
    Ok(Preset {
        id,
        panels,
        assumed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_builds_and_validates() {
        for id in PresetId::ALL {
            let preset = build_preset(id, &Overrides::default()).unwrap();
            assert!(!preset.panels.is_empty(), "{id}");
            let names: Vec<_> = preset.panels.iter().map(|p| p.name).collect();
            assert!(
                names.len() == 1 || names.iter().all(Option::is_some),
                "{id}"
            );
            assert_eq!(id.as_str().parse::<PresetId>().unwrap(), id);
        }
    }

    #[test]
    fn unknown_preset_is_rejected() {
        let err = "fig11".parse::<PresetId>().unwrap_err().to_string();
        assert!(err.contains("fig11") && !err.contains('\n'));
    }

    #[test]
    fn fig3_fixed_parameters() {
        let preset = build_preset(PresetId::Fig3, &Overrides::default()).unwrap();
        assert_eq!(preset.panels.len(), 2);
        for (panel, family) in preset.panels.iter().zip([BellFamily::Phi, BellFamily::Psi]) {
            let s = &panel.spec;
            assert_eq!(s.axis.parameter, AxisParameter::Lambda);
            assert_eq!(s.axis.values.first(), Some(&0.0));
            assert_eq!(s.axis.values.last(), Some(&1.0));
            assert_eq!(s.state, InitialState::bell(family));
            match s.environment {
                EnvironmentRecipe::HomogeneousMutual { gamma, .. } => {
                    assert_eq!(gamma / s.system.omega_s1s2, 0.5)
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn fig7_noise_settings() {
        let preset = build_preset(PresetId::Fig7, &Overrides::default()).unwrap();
        assert_eq!(preset.panels.len(), 3);
        for p in &preset.panels {
            assert_eq!(
                p.spec.environment,
                EnvironmentRecipe::WhiteNoiseMutual {
                    n: 1,
                    mu: 0.5,
                    width: Width::Absolute(0.1)
                }
            );
        }
    }

    #[test]
    fn overrides_reach_every_panel() {
        let o = Overrides {
            seed: Some(42),
            samples: Some(7),
            t_max: Some(3.0),
        };
        let preset = build_preset(PresetId::Fig6, &o).unwrap();
        for p in &preset.panels {
            assert_eq!(p.spec.master_seed, 42);
            assert_eq!(p.spec.time_grid.samples, 7);
            assert_eq!(p.spec.time_grid.t_max, 3.0);
        }
        let bad = Overrides {
            samples: Some(1),
            ..Overrides::default()
        };
        assert!(build_preset(PresetId::Fig2a, &bad).is_err());
    }
}
