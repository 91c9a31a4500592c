//! Rule selection and the rule-table file format.
//!
//! A rule table file has `2^n` lines of `pattern_bits,action`, where the
//! pattern string lists expert votes in panel order (expert 1 first, the
//! same position the pattern index keeps in its least significant bit)
//! and the action is `0`, `1` or `coin`. Lines starting with `#` are
//! comments. Reports render the same tables for humans with `coin` shown
//! as `0/1`, since a tie means both answers are optimal.

use std::io::Write;
use std::path::Path;

use jury_core::bayes::{bayes_rule_beta, bayes_rule_known};
use jury_core::minimax::{coin_flip_rule, interval_minimax_rule, majority_rule};
use jury_core::{AccuracyModel, Action, DecisionRule};

use crate::config::LoadedConfig;
use crate::error::{from_config_context, io_data, CliError};

pub fn action_token(action: Action) -> &'static str {
    match action {
        Action::Zero => "0",
        Action::One => "1",
        Action::Coin => "coin",
    }
}

/// Human rendering: a coin action means both answers are optimal.
pub fn action_display(action: Action) -> &'static str {
    match action {
        Action::Zero => "0",
        Action::One => "1",
        Action::Coin => "0/1",
    }
}

fn parse_action(token: &str) -> Option<Action> {
    match token {
        "0" => Some(Action::Zero),
        "1" => Some(Action::One),
        "coin" => Some(Action::Coin),
        _ => None,
    }
}

/// Vote pattern as a bit string, expert 1 first: pattern 1 on a
/// three-expert panel renders as `100`.
pub fn pattern_bits(pattern: usize, n: usize) -> String {
    (0..n)
        .map(|i| if (pattern >> i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Vote pattern as a tuple, expert 1 first: `(1,0,0)`.
pub fn pattern_tuple(pattern: usize, n: usize) -> String {
    let bits: Vec<&str> = (0..n)
        .map(|i| if (pattern >> i) & 1 == 1 { "1" } else { "0" })
        .collect();
    format!("({})", bits.join(","))
}

pub fn write_rule_table(path: &Path, rule: &DecisionRule) -> Result<(), CliError> {
    let mut out = Vec::new();
    writeln!(out, "# rule table, n = {}", rule.n()).unwrap();
    for pattern in 0..rule.num_patterns() {
        writeln!(
            out,
            "{},{}",
            pattern_bits(pattern, rule.n()),
            action_token(rule.action(pattern))
        )
        .unwrap();
    }
    std::fs::write(path, out).map_err(|e| io_data(path, e))
}

pub fn read_rule_table(path: &Path) -> Result<DecisionRule, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_data(path, e))?;
    let bad = |line: usize, msg: String| {
        CliError::Data(format!("{}: line {}: {msg}", path.display(), line + 1))
    };

    let mut n: Option<usize> = None;
    let mut entries: Vec<Option<Action>> = Vec::new();
    let mut seen = 0usize;
    for (line_number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (bits, token) = line
            .split_once(',')
            .ok_or_else(|| bad(line_number, "expected `pattern_bits,action`".into()))?;
        let width = bits.len();
        let n = match n {
            Some(n) if n != width => {
                return Err(bad(
                    line_number,
                    format!("pattern has {width} bits, expected {n}"),
                ))
            }
            Some(n) => n,
            None => {
                if width == 0 || width > DecisionRule::MAX_TABLE_N {
                    return Err(bad(
                        line_number,
                        format!(
                            "pattern width {width} outside 1..={}",
                            DecisionRule::MAX_TABLE_N
                        ),
                    ));
                }
                n = Some(width);
                entries = vec![None; 1usize << width];
                width
            }
        };

        let mut pattern = 0usize;
        for (i, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => pattern |= 1 << i,
                other => return Err(bad(line_number, format!("invalid pattern bit {other:?}"))),
            }
        }
        let action = parse_action(token)
            .ok_or_else(|| bad(line_number, format!("invalid action {token:?}")))?;
        if entries[pattern].replace(action).is_some() {
            return Err(bad(
                line_number,
                format!("duplicate entry for pattern {}", pattern_bits(pattern, n)),
            ));
        }
        seen += 1;
    }

    let n = n.ok_or_else(|| CliError::Data(format!("{}: no table entries", path.display())))?;
    if seen != entries.len() {
        return Err(CliError::Data(format!(
            "{}: table covers {seen} of {} patterns",
            path.display(),
            entries.len()
        )));
    }
    let table = entries.into_iter().map(Option::unwrap).collect();
    DecisionRule::new(n, table).map_err(crate::error::from_data_context)
}

/// Resolves a `--rule` argument: one of the named rules, or a path to an
/// explicit rule table.
pub fn resolve_rule(spec: &str, config: &LoadedConfig) -> Result<DecisionRule, CliError> {
    let panel = &config.panel;
    match spec {
        "bayes" => match panel.model() {
            AccuracyModel::Known { gammas } => {
                bayes_rule_known(panel.prior(), gammas, panel.tie_tolerance())
                    .map_err(from_config_context)
            }
            AccuracyModel::BetaPrior { alphas, betas } => {
                bayes_rule_beta(panel.prior(), alphas, betas, panel.tie_tolerance())
                    .map_err(from_config_context)
            }
            AccuracyModel::Interval { .. } => Err(CliError::Config(
                "rule `bayes` needs a known or beta model; use `interval-minimax` for interval models"
                    .into(),
            )),
        },
        "majority" => majority_rule(panel.n()).map_err(from_config_context),
        "coinflip" => coin_flip_rule(panel.n()).map_err(from_config_context),
        "interval-minimax" => match panel.model() {
            AccuracyModel::Interval { epsilons } => {
                interval_minimax_rule(epsilons, panel.tie_tolerance()).map_err(from_config_context)
            }
            other => Err(CliError::Config(format!(
                "rule `interval-minimax` needs an interval model, got {}",
                other.kind()
            ))),
        },
        path => {
            let rule = read_rule_table(Path::new(path))?;
            if rule.n() != panel.n() {
                return Err(CliError::Data(format!(
                    "rule table {path} is for n = {}, config n = {}",
                    rule.n(),
                    panel.n()
                )));
            }
            Ok(rule)
        }
    }
}

/// The human-facing table block shared by reports: one `pattern action`
/// line per pattern, ties rendered as `0/1`.
pub fn render_table(rule: &DecisionRule) -> String {
    let mut out = String::from("pattern action\n");
    for pattern in 0..rule.num_patterns() {
        out.push_str(&pattern_tuple(pattern, rule.n()));
        out.push(' ');
        out.push_str(action_display(rule.action(pattern)));
        out.push('\n');
    }
    out
}
