//! Row-wise aggregation: one decision record per item in the vote matrix.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jury_core::bayes::{posterior_beta, posterior_known};
use jury_core::{AccuracyModel, Error, OpinionVector};

use crate::config::load_config;
use crate::error::{from_data_context, io_data, CliError};
use crate::votes::read_votes;

/// Decides every item with the configured model's optimal rule.
///
/// The posterior of each row is compared to 1/2 with the configured tie
/// tolerance; ties (both answers optimal) are resolved with a seeded coin.
/// Coin bit `k` of the stream belongs to row `k` whether or not that row
/// ties, so a record depends only on its own row index, and the whole
/// output is a pure function of the config and votes bytes.
pub fn run(
    config_path: &Path,
    votes_path: &Path,
    out_path: &Path,
    seed_override: Option<u64>,
) -> Result<(), CliError> {
    let config = load_config(config_path)?;
    let panel = &config.panel;
    let seed = seed_override.unwrap_or(panel.seed());
    let votes = read_votes(votes_path, panel.n())?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coin_bits: Vec<bool> = (0..votes.rows.len()).map(|_| rng.gen::<bool>()).collect();

    let posterior = |row: &OpinionVector| -> Result<f64, Error> {
        match panel.model() {
            AccuracyModel::Known { gammas } => posterior_known(panel.prior(), gammas, row),
            AccuracyModel::BetaPrior { alphas, betas } => {
                posterior_beta(panel.prior(), alphas, betas, row)
            }
            // Interval models pin the accuracies at their guaranteed floor.
            AccuracyModel::Interval { epsilons } => {
                let floor: Vec<f64> = epsilons.iter().map(|&e| 0.5 + e).collect();
                posterior_known(panel.prior(), &floor, row)
            }
        }
    };

    let mut writer = csv::Writer::from_path(out_path)
        .map_err(|e| CliError::Data(format!("{}: {e}", out_path.display())))?;
    writer
        .write_record(["item_id", "decision", "posterior", "tied", "coin_outcome"])
        .map_err(|e| CliError::Data(e.to_string()))?;

    let tolerance = panel.tie_tolerance();
    for (index, (item_id, row)) in votes.item_ids.iter().zip(&votes.rows).enumerate() {
        let p = posterior(row).map_err(|e| match e {
            Error::ZeroProbabilityObservation => CliError::Data(format!(
                "row {} (item {item_id}): votes are impossible under the configured model",
                index + 1
            )),
            other => from_data_context(other),
        })?;

        let tied = (p - 0.5).abs() <= tolerance;
        let decision = if tied {
            u8::from(coin_bits[index])
        } else {
            u8::from(p > 0.5)
        };
        let coin_outcome = if tied {
            if coin_bits[index] {
                "1"
            } else {
                "0"
            }
        } else {
            ""
        };
        writer
            .write_record([
                item_id.as_str(),
                &decision.to_string(),
                &format!("{p}"),
                if tied { "true" } else { "false" },
                coin_outcome,
            ])
            .map_err(|e| CliError::Data(e.to_string()))?;
    }
    writer.flush().map_err(|e| io_data(out_path, e))?;

    println!(
        "aggregate: wrote {} records ({} experts) to {}",
        votes.rows.len(),
        votes.experts.len(),
        out_path.display()
    );
    Ok(())
}
