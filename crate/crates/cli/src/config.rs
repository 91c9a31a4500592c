//! Panel configuration files.
//!
//! A config is a TOML document; field names are part of the interface:
//!
//! ```toml
//! n = 3                  # panel size, must match the model vectors
//! c = 0.5                # prior probability that the hidden state is 1
//! tie_tolerance = 1e-9   # optional
//! seed = 42              # optional, default 0; drives coin resolution
//! lfp_grid_step = 0.01   # optional; grid step for `jury lfp`
//! max_n = 3              # optional; cap for exhaustive searches
//!
//! [model]                # exactly one of the three shapes
//! type = "known"         # gammas = [...]
//! type = "beta"          # alphas = [...], betas = [...]
//! type = "interval"      # epsilons = [...]
//!
//! [box]                  # optional; overrides the minimax search domain
//! gamma_lo = [0.0, 0.0, 0.0]
//! gamma_hi = [1.0, 1.0, 1.0]
//! thetas = [0, 1]        # optional, default both states
//! ```

use std::path::Path;

use serde::Deserialize;

use jury_core::risk::ParameterBox;
use jury_core::{AccuracyModel, PanelConfig, Theta, ThetaPrior};

use crate::error::{from_config_context, CliError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: usize,
    c: f64,
    #[serde(default = "default_tie_tolerance")]
    tie_tolerance: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_lfp_grid_step")]
    lfp_grid_step: f64,
    #[serde(default = "default_max_n")]
    max_n: usize,
    model: ModelSection,
    #[serde(rename = "box")]
    bounds: Option<BoxSection>,
}

fn default_tie_tolerance() -> f64 {
    PanelConfig::DEFAULT_TIE_TOLERANCE
}

fn default_lfp_grid_step() -> f64 {
    0.01
}

fn default_max_n() -> usize {
    jury_core::minimax::DEFAULT_MAX_N
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ModelSection {
    Known { gammas: Vec<f64> },
    Beta { alphas: Vec<f64>, betas: Vec<f64> },
    Interval { epsilons: Vec<f64> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxSection {
    gamma_lo: Vec<f64>,
    gamma_hi: Vec<f64>,
    thetas: Option<Vec<u8>>,
}

/// A parsed and validated configuration.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub panel: PanelConfig,
    pub lfp_grid_step: f64,
    pub max_n: usize,
    /// Explicit minimax search domain, when the config carries one.
    pub bounds: Option<ParameterBox>,
}

pub fn load_config(path: &Path) -> Result<LoadedConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let file: ConfigFile =
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;

    let model = match file.model {
        ModelSection::Known { gammas } => AccuracyModel::known(gammas),
        ModelSection::Beta { alphas, betas } => AccuracyModel::beta_prior(alphas, betas),
        ModelSection::Interval { epsilons } => AccuracyModel::interval(epsilons),
    }
    .map_err(from_config_context)?;

    if model.n() != file.n {
        return Err(CliError::Config(format!(
            "n = {} does not match the model vectors (length {})",
            file.n,
            model.n()
        )));
    }

    let prior = ThetaPrior::new(file.c).map_err(from_config_context)?;
    let panel = PanelConfig::new(model, prior, file.tie_tolerance, file.seed)
        .map_err(from_config_context)?;

    if !(file.lfp_grid_step > 0.0 && file.lfp_grid_step < 1.0) {
        return Err(CliError::Config(format!(
            "lfp_grid_step = {} must lie strictly inside (0, 1)",
            file.lfp_grid_step
        )));
    }
    if file.max_n == 0 {
        return Err(CliError::Config("max_n must be at least 1".into()));
    }

    let bounds = match file.bounds {
        None => None,
        Some(section) => {
            let thetas = match section.thetas {
                None => Theta::BOTH.to_vec(),
                Some(bits) => bits
                    .into_iter()
                    .map(Theta::from_bit)
                    .collect::<jury_core::Result<Vec<_>>>()
                    .map_err(from_config_context)?,
            };
            let bounds = ParameterBox::new(thetas, section.gamma_lo, section.gamma_hi)
                .map_err(from_config_context)?;
            if bounds.n() != panel.n() {
                return Err(CliError::Config(format!(
                    "box bounds have length {}, config n = {}",
                    bounds.n(),
                    panel.n()
                )));
            }
            Some(bounds)
        }
    };

    Ok(LoadedConfig {
        panel,
        lfp_grid_step: file.lfp_grid_step,
        max_n: file.max_n,
        bounds,
    })
}

/// Accuracy vector each model pins down for point risk evaluation: known
/// values, Beta prior means, or the guaranteed interval floor `1/2 + eps`.
pub fn evaluation_accuracies(model: &AccuracyModel) -> Vec<f64> {
    match model {
        AccuracyModel::Known { gammas } => gammas.clone(),
        AccuracyModel::BetaPrior { alphas, betas } => alphas
            .iter()
            .zip(betas)
            .map(|(&a, &b)| a / (a + b))
            .collect(),
        AccuracyModel::Interval { epsilons } => epsilons.iter().map(|&e| 0.5 + e).collect(),
    }
}
