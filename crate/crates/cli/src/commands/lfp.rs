//! Least-favorable-prior scan: plot-ready Bayes-risk curve over a prior grid.

use std::fmt::Write as _;
use std::path::Path;

use jury_core::minimax::least_favorable_scan;
use jury_core::AccuracyModel;

use crate::config::load_config;
use crate::error::{from_config_context, io_data, CliError};

/// Grid of priors: `step, 2*step, ...` strictly below 1. A step of 0.01
/// gives the canonical 0.01..0.99 sweep.
fn prior_grid(step: f64) -> Vec<f64> {
    let count = ((1.0 - step) / step + 0.5).floor() as usize;
    (1..=count).map(|k| k as f64 * step).collect()
}

pub fn run(config_path: &Path, out_path: &Path) -> Result<(), CliError> {
    let config = load_config(config_path)?;
    let panel = &config.panel;
    let gammas = match panel.model() {
        AccuracyModel::Known { gammas } => gammas.clone(),
        other => {
            return Err(CliError::Config(format!(
                "lfp needs a known model, got {}",
                other.kind()
            )))
        }
    };

    let grid = prior_grid(config.lfp_grid_step);
    let scan =
        least_favorable_scan(&gammas, &grid, panel.tie_tolerance()).map_err(from_config_context)?;

    let mut text = String::new();
    writeln!(text, "# argmax_c: {}", scan.argmax_c).unwrap();
    writeln!(text, "# peak_bayes_risk: {}", scan.peak_risk).unwrap();
    writeln!(text, "# flat_peak: {}", scan.flat_peak).unwrap();
    writeln!(text, "c,bayes_risk").unwrap();
    for &(c, r) in &scan.curve {
        writeln!(text, "{c},{r}").unwrap();
    }
    std::fs::write(out_path, text).map_err(|e| io_data(out_path, e))?;

    println!(
        "lfp: argmax c = {} (peak Bayes risk {}), curve at {}",
        scan.argmax_c,
        scan.peak_risk,
        out_path.display()
    );
    Ok(())
}
