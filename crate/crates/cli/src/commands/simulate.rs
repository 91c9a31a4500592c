//! Monte Carlo validation of the exact risks.

use std::fmt::Write as _;
use std::path::Path;

use jury_core::risk::{monte_carlo_risk, risk_exact};
use jury_core::Theta;

use crate::config::{evaluation_accuracies, load_config};
use crate::error::{from_config_context, io_data, CliError};
use crate::rules::resolve_rule;

pub fn run(
    config_path: &Path,
    rule_spec: &str,
    trials: u64,
    out_path: &Path,
    seed_override: Option<u64>,
) -> Result<(), CliError> {
    let config = load_config(config_path)?;
    let panel = &config.panel;
    let rule = resolve_rule(rule_spec, &config)?;
    let gammas = evaluation_accuracies(panel.model());
    let seed = seed_override.unwrap_or(panel.seed());

    let mut text = String::from("theta,trials,estimate,std_error,exact_risk,z_score\n");
    for theta in Theta::BOTH {
        // Separate substream per state so the two estimates are independent.
        let stream_seed = seed.wrapping_add(u64::from(theta.bit()));
        let mc = monte_carlo_risk(&rule, theta, &gammas, trials, stream_seed)
            .map_err(from_config_context)?;
        let exact = risk_exact(&rule, theta, &gammas).map_err(from_config_context)?;
        let z = if mc.std_error > 0.0 {
            (mc.estimate - exact) / mc.std_error
        } else if mc.estimate == exact {
            0.0
        } else {
            f64::INFINITY
        };
        writeln!(
            text,
            "{theta},{trials},{},{},{exact},{z}",
            mc.estimate, mc.std_error
        )
        .unwrap();
    }
    std::fs::write(out_path, text).map_err(|e| io_data(out_path, e))?;

    println!(
        "simulate: {} trials per state with rule `{rule_spec}`, results at {}",
        trials,
        out_path.display()
    );
    Ok(())
}
