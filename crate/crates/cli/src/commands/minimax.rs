//! Exhaustive minimax search with an upper/lower bound certificate.

use std::fmt::Write as _;
use std::path::Path;

use jury_core::bayes::bayes_rule_known;
use jury_core::minimax::{brute_force_minimax, rule_from_index, WITNESS_TOLERANCE};
use jury_core::risk::{sup_risk_box, ParameterBox};
use jury_core::{AccuracyModel, Theta, ThetaPrior};

use crate::config::{load_config, LoadedConfig};
use crate::error::{from_config_context, io_data, CliError};
use crate::rules::render_table;

const MAX_WITNESS_TABLES: usize = 16;
const MAX_WITNESS_INDICES: usize = 64;

// The search domain: an explicit [box] section wins; otherwise interval
// models span their guaranteed floors to 1 and known models degenerate to
// their exact accuracies.
fn search_bounds(config: &LoadedConfig) -> Result<ParameterBox, CliError> {
    if let Some(bounds) = &config.bounds {
        return Ok(bounds.clone());
    }
    match config.panel.model() {
        AccuracyModel::Interval { epsilons } => {
            ParameterBox::from_interval_epsilons(epsilons).map_err(from_config_context)
        }
        AccuracyModel::Known { gammas } => {
            ParameterBox::degenerate(Theta::BOTH.to_vec(), gammas.clone())
                .map_err(from_config_context)
        }
        AccuracyModel::BetaPrior { .. } => Err(CliError::Config(
            "minimax needs an interval model, a known model, or an explicit [box] section".into(),
        )),
    }
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn run(config_path: &Path, out_path: &Path) -> Result<(), CliError> {
    let config = load_config(config_path)?;
    let panel = &config.panel;
    let bounds = search_bounds(&config)?;

    let result = brute_force_minimax(&bounds, config.max_n).map_err(from_config_context)?;

    // Sandwich certificate: the candidate rule is the constant-risk rule
    // at the box floor. Its worst case over the box upper-bounds the
    // minimax value; the search over the floor-only reduction lower-bounds
    // it. When the two meet, the candidate is provably minimax.
    let floor = bounds.floor_gammas();
    let candidate = bayes_rule_known(ThetaPrior::symmetric(), &floor, panel.tie_tolerance())
        .map_err(from_config_context)?;
    let upper = sup_risk_box(&candidate, &bounds)
        .map_err(from_config_context)?
        .value;
    let reduction = ParameterBox::degenerate(bounds.thetas().to_vec(), floor.clone())
        .map_err(from_config_context)?;
    let lower = brute_force_minimax(&reduction, config.max_n)
        .map_err(from_config_context)?
        .optimum;
    let closed = (upper - lower).abs() <= WITNESS_TOLERANCE;

    let mut text = String::new();
    writeln!(text, "n: {}", bounds.n()).unwrap();
    let thetas: Vec<String> = bounds.thetas().iter().map(|t| t.to_string()).collect();
    writeln!(text, "thetas: {}", thetas.join(",")).unwrap();
    writeln!(text, "gamma_lo: {}", join_floats(bounds.gamma_lo())).unwrap();
    writeln!(text, "gamma_hi: {}", join_floats(bounds.gamma_hi())).unwrap();
    writeln!(text, "rules_enumerated: {}", result.enumerated).unwrap();
    writeln!(text, "minimax_value: {}", result.optimum).unwrap();
    writeln!(text, "upper_bound: {upper}").unwrap();
    writeln!(text, "lower_bound: {lower}").unwrap();
    writeln!(text, "sandwich_closed: {closed}").unwrap();
    writeln!(text, "witnesses_total: {}", result.witnesses.len()).unwrap();

    let shown: Vec<String> = result
        .witnesses
        .iter()
        .take(MAX_WITNESS_INDICES)
        .map(|w| w.to_string())
        .collect();
    let ellipsis = if result.witnesses.len() > MAX_WITNESS_INDICES {
        ",..."
    } else {
        ""
    };
    writeln!(text, "witness_indices: {}{ellipsis}", shown.join(",")).unwrap();

    for &index in result.witnesses.iter().take(MAX_WITNESS_TABLES) {
        let rule = rule_from_index(bounds.n(), index).map_err(from_config_context)?;
        writeln!(text, "witness {index}:").unwrap();
        text.push_str(&render_table(&rule));
    }
    if result.witnesses.len() > MAX_WITNESS_TABLES {
        writeln!(
            text,
            "(omitting {} further witness tables)",
            result.witnesses.len() - MAX_WITNESS_TABLES
        )
        .unwrap();
    }

    std::fs::write(out_path, text).map_err(|e| io_data(out_path, e))?;
    println!(
        "minimax: value {} over {} rules, report at {}",
        result.optimum,
        result.enumerated,
        out_path.display()
    );
    Ok(())
}
