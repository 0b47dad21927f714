use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{expand_preset, DEFAULT_STEPS, DEFAULT_T_MAX, RunConfig, Scenario, TimeUnit, Times};
use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "cayley-cavity", version, about = "Two-photon cavity arrays on Cayley graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Site probabilities over time.
    Simulate(ConfigArgs),
    /// Graph eigenvalues and the two energies of each block.
    Spectrum(ConfigArgs),
    /// Negativity of a pair of atoms over time.
    Negativity {
        #[command(flatten)]
        config: ConfigArgs,
        /// Atom pair `l,m`.
        #[arg(long, value_parser = parse_pair, default_value = "0,1")]
        pair: (usize, usize),
    },
    /// Cross-check the closed form against the numerical oracles.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Extra random instances checked against numerical propagation.
        #[arg(long, default_value_t = 8)]
        random_instances: usize,
    },
}

#[derive(Debug, Default, Args)]
pub struct ConfigArgs {
    /// Load a JSON config; other flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Print the resolved config as JSON and exit.
    #[arg(long)]
    pub dump_config: bool,
    /// `cN` (cycle) or `qD` (hypercube).
    #[arg(long, conflicts_with_all = ["group", "gens"])]
    pub preset: Option<String>,
    /// Group, e.g. `z6` or `z2xz2`.
    #[arg(long, requires = "gens")]
    pub group: Option<String>,
    /// Comma-separated generators: indices (`1,5`) or residues (`1:0,0:1`).
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long, value_enum)]
    pub scenario: Option<Scenario>,
    /// Initial cavity or atom for the photon and excite scenarios.
    #[arg(long)]
    pub site: Option<usize>,
    /// Atomic frequency; defaults to twice the cavity frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub omega_a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega_c: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Hopping strength.
    #[arg(long)]
    pub xi: Option<f64>,
    /// End of the time grid, in `--time-unit`.
    #[arg(long, conflicts_with_all = ["time", "time_factor"])]
    pub tmax: Option<f64>,
    /// Number of grid intervals.
    #[arg(long, conflicts_with_all = ["time", "time_factor"])]
    pub steps: Option<usize>,
    /// A single absolute time.
    #[arg(long, conflicts_with = "time_factor")]
    pub time: Option<f64>,
    /// A single time, in `--time-unit`.
    #[arg(long)]
    pub time_factor: Option<f64>,
    #[arg(long, value_enum, default_value_t = TimeUnit::Unit)]
    pub time_unit: TimeUnit,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl ConfigArgs {
    /// Layers the flags over the loaded (or default) config and validates the result.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(preset) = &self.preset {
            (cfg.group, cfg.generators) = expand_preset(preset)?;
        }
        if let Some(group) = &self.group {
            cfg.group = group.clone();
        }
        if let Some(gens) = &self.gens {
            cfg.generators = gens.clone();
        }
        if let Some(s) = self.scenario {
            cfg.scenario = s;
        }
        if let Some(site) = self.site {
            cfg.site = site;
        }
        if let Some(omega_c) = self.omega_c {
            cfg.params.omega_c = omega_c;
            cfg.params.omega_a = 2.0 * omega_c;
        }
        if let Some(omega_a) = self.omega_a {
            cfg.params.omega_a = omega_a;
        }
        if let Some(lambda) = self.lambda {
            cfg.params.lambda = lambda;
        }
        if let Some(xi) = self.xi {
            cfg.params.xi = xi;
        }
        let scale = || self.time_unit.scale(cfg.params.xi);
        if let Some(t) = self.time {
            cfg.time = Times::Single { t };
        } else if let Some(f) = self.time_factor {
            cfg.time = Times::Single { t: f * scale()? };
        } else if self.tmax.is_some() || self.steps.is_some() {
            let (base_max, base_steps) = match cfg.time {
                Times::Grid { t_max, steps } => (t_max, steps),
                Times::Single { .. } => (DEFAULT_T_MAX, DEFAULT_STEPS),
            };
            cfg.time = Times::Grid {
                t_max: match self.tmax {
                    Some(v) => v * scale()?,
                    None => base_max,
                },
                steps: self.steps.unwrap_or(base_steps),
            };
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(out) = &self.output {
            cfg.output = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (l, m) = s
        .split_once(',')
        .ok_or_else(|| format!("expected l,m, got '{s}'"))?;
    let parse = |v: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad site '{v}': {e}"))
    };
    Ok((parse(l)?, parse(m)?))
}
