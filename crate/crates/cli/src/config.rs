use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::path::{Path, PathBuf};

use cayley_cavity::{CavityParams, CayleyGraph, ManifoldState};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::Format;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// Two photons shared symmetrically by all cavities.
    #[default]
    W,
    /// Two photons in one cavity.
    Photon,
    /// One excited atom.
    Excite,
}

/// Unit for `--tmax` and `--time-factor`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TimeUnit {
    #[default]
    Unit,
    Pi,
    PiOverXi,
}

impl TimeUnit {
    pub fn scale(self, xi: f64) -> Result<f64, CliError> {
        match self {
            TimeUnit::Unit => Ok(1.0),
            TimeUnit::Pi => Ok(PI),
            TimeUnit::PiOverXi if xi > 0.0 => Ok(PI / xi),
            TimeUnit::PiOverXi => Err(CliError::config("time unit pi-over-xi needs xi > 0")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    pub omega_a: f64,
    pub omega_c: f64,
    pub lambda: f64,
    pub xi: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            omega_a: 2.0,
            omega_c: 1.0,
            lambda: FRAC_1_SQRT_2,
            xi: 1.0,
        }
    }
}

impl ModelParams {
    pub fn cavity(&self) -> Result<CavityParams<f64>, CliError> {
        Ok(CavityParams::new(self.omega_a, self.omega_c, self.lambda, self.xi)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Times {
    /// `steps + 1` evenly spaced points on `[0, t_max]`.
    Grid { t_max: f64, steps: usize },
    Single { t: f64 },
}

pub const DEFAULT_T_MAX: f64 = TAU;
pub const DEFAULT_STEPS: usize = 200;

impl Default for Times {
    fn default() -> Self {
        Times::Grid {
            t_max: DEFAULT_T_MAX,
            steps: DEFAULT_STEPS,
        }
    }
}

impl Times {
    pub fn points(&self) -> Vec<f64> {
        match *self {
            Times::Grid { t_max, steps } => (0..=steps)
                .map(|k| t_max * k as f64 / steps as f64)
                .collect(),
            Times::Single { t } => vec![t],
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        match *self {
            Times::Grid { steps: 0, .. } => Err(CliError::config("steps must be at least 1")),
            Times::Grid { t_max, .. } if !(t_max.is_finite() && t_max >= 0.0) => Err(
                CliError::config(format!("tmax must be finite and non-negative, got {t_max}")),
            ),
            Times::Single { t } if !(t.is_finite() && t >= 0.0) => Err(CliError::config(format!(
                "time must be finite and non-negative, got {t}"
            ))),
            _ => Ok(()),
        }
    }
}

/// A fully resolved run: graph, initial condition, couplings, time points and output target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: String,
    pub generators: String,
    pub scenario: Scenario,
    pub site: usize,
    pub params: ModelParams,
    pub time: Times,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let (group, generators) = expand_preset("c6").expect("built-in preset");
        RunConfig {
            group,
            generators,
            scenario: Scenario::default(),
            site: 0,
            params: ModelParams::default(),
            time: Times::default(),
            format: Format::default(),
            output: None,
        }
    }
}

impl RunConfig {
    pub fn graph(&self) -> Result<CayleyGraph, CliError> {
        Ok(CayleyGraph::parse(&self.group, &self.generators)?)
    }

    pub fn cavity(&self) -> Result<CavityParams<f64>, CliError> {
        self.params.cavity()
    }

    pub fn initial_state(&self, n: usize) -> Result<ManifoldState<f64>, CliError> {
        Ok(match self.scenario {
            Scenario::W => ManifoldState::w_state(n)?,
            Scenario::Photon => ManifoldState::photon_at(n, self.site)?,
            Scenario::Excite => ManifoldState::excitation_at(n, self.site)?,
        })
    }

    /// Checks everything that can be checked without running: graph, site, couplings, times.
    pub fn validate(&self) -> Result<(), CliError> {
        let graph = self.graph()?;
        if self.site >= graph.order() {
            return Err(CliError::config(format!(
                "site {} out of range for a graph with {} nodes",
                self.site,
                graph.order()
            )));
        }
        self.cavity()?;
        self.time.validate()
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        let config: RunConfig = serde_json::from_str(&text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }
}

/// Expands a preset name into group and generator specs.
///
/// `cN` is the N-cycle (`c6` by default), `qD` the D-dimensional hypercube (`q2` is the square).
pub fn expand_preset(name: &str) -> Result<(String, String), CliError> {
    let name = name.trim().to_ascii_lowercase();
    let bad = || CliError::config(format!("unknown preset '{name}' (expected cN or qD, e.g. c6, q2)"));
    let (kind, size) = name.split_at(name.len().min(1));
    let size: usize = size.parse().map_err(|_| bad())?;
    match kind {
        "c" if size >= 3 => Ok((format!("z{size}"), format!("1,{}", size - 1))),
        "q" if size >= 1 => {
            let group = vec!["z2"; size].join("x");
            let gens = (0..size)
                .map(|i| {
                    (0..size)
                        .map(|j| if i == j { "1" } else { "0" })
                        .collect::<Vec<_>>()
                        .join(":")
                })
                .collect::<Vec<_>>()
                .join(",");
            Ok((group, gens))
        }
        _ => Err(bad()),
    }
}
