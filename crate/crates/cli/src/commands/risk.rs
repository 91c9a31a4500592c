//! Risk report: per-state risks of a chosen rule plus its action table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use jury_core::bayes::bayes_rule_known_detailed;
use jury_core::risk::{bayes_risk, risk_exact};
use jury_core::{AccuracyModel, RiskReport, Theta};

use crate::config::{evaluation_accuracies, load_config};
use crate::error::{from_config_context, io_data, CliError};
use crate::rules::{render_table, resolve_rule, write_rule_table};

/// Path of the machine-readable companion table: `<out>.rules.csv`.
pub fn table_path(out_path: &Path) -> PathBuf {
    let mut name = out_path.as_os_str().to_owned();
    name.push(".rules.csv");
    PathBuf::from(name)
}

pub fn run(config_path: &Path, rule_spec: &str, out_path: &Path) -> Result<(), CliError> {
    let config = load_config(config_path)?;
    let panel = &config.panel;
    let rule = resolve_rule(rule_spec, &config)?;

    let gammas = evaluation_accuracies(panel.model());
    let risk0 = risk_exact(&rule, Theta::Zero, &gammas).map_err(from_config_context)?;
    let risk1 = risk_exact(&rule, Theta::One, &gammas).map_err(from_config_context)?;
    let bayes = match panel.model() {
        AccuracyModel::Interval { .. } => None,
        model => Some(bayes_risk(&rule, panel.prior(), model).map_err(from_config_context)?),
    };
    let report = RiskReport::new(risk0, risk1, bayes).map_err(from_config_context)?;

    // Patterns that cannot occur under any state (only possible when a
    // known model contains certain experts) carry an arbitrary action.
    let unreachable: Vec<usize> = match (rule_spec, panel.model()) {
        ("bayes", AccuracyModel::Known { gammas }) => {
            bayes_rule_known_detailed(panel.prior(), gammas, panel.tie_tolerance())
                .map_err(from_config_context)?
                .unreachable
                .iter()
                .enumerate()
                .filter_map(|(p, &flag)| flag.then_some(p))
                .collect()
        }
        _ => Vec::new(),
    };

    let mut text = String::new();
    writeln!(text, "rule: {rule_spec}").unwrap();
    writeln!(text, "n: {}", rule.n()).unwrap();
    writeln!(text, "model: {}", panel.model().kind()).unwrap();
    writeln!(text, "risk_theta0: {risk0}").unwrap();
    writeln!(text, "risk_theta1: {risk1}").unwrap();
    writeln!(text, "sup_risk: {}", report.sup_risk).unwrap();
    if let Some(b) = report.bayes_risk {
        writeln!(text, "bayes_risk: {b}").unwrap();
    }
    if !unreachable.is_empty() {
        let list: Vec<String> = unreachable.iter().map(|p| p.to_string()).collect();
        writeln!(text, "unreachable_patterns: {}", list.join(",")).unwrap();
    }
    writeln!(text, "table:").unwrap();
    text.push_str(&render_table(&rule));

    std::fs::write(out_path, text).map_err(|e| io_data(out_path, e))?;
    let rules_path = table_path(out_path);
    write_rule_table(&rules_path, &rule)?;

    println!(
        "risk: wrote report to {} and rule table to {}",
        out_path.display(),
        rules_path.display()
    );
    Ok(())
}
