//! Named decision rules and exhaustive optimality searches.
//!
//! The searches enumerate the complete rule space: every total map from
//! the `2^n` vote patterns to `{0, 1, coin}`, i.e. `3^(2^n)` rules. That
//! is 6561 rules for a three-expert panel, and grows so fast that
//! [`DEFAULT_MAX_N`] caps searches at `n = 3`; callers may raise the cap
//! at their own expense (`n = 4` already means ~4.3e7 rules, `n = 5`
//! ~1.9e15). Enumeration is split across threads in disjoint index
//! ranges and merged deterministically, so results are reproducible.

use rayon::prelude::*;

use crate::bayes::bayes_rule_known;
use crate::model::{AccuracyModel, Action, DecisionRule, Error, Result, Theta, ThetaPrior};
use crate::risk::{bayes_risk, constant_risk_gap, pattern_probability, ParameterBox};

/// Default cap on panel size for exhaustive searches.
pub const DEFAULT_MAX_N: usize = 3;

/// Two optima within this distance are considered tied.
pub const WITNESS_TOLERANCE: f64 = 1e-12;

// Rule indices are base-3 numbers with one digit per pattern; u64 runs out
// past n = 5.
const MAX_ENUMERABLE_N: usize = 5;

/// Outcome of an exhaustive search: the optimal value, every rule index
/// attaining it within [`WITNESS_TOLERANCE`], and the number of rules
/// examined.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub optimum: f64,
    /// Indices (see [`rule_from_index`]) of all optimal rules, ascending.
    pub witnesses: Vec<u64>,
    pub enumerated: u64,
}

/// Vote with the majority: answer 1 exactly when more than half the
/// experts do. Odd panels only, so there is never a tie to break.
pub fn majority_rule(n: usize) -> Result<DecisionRule> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenPanel(n));
    }
    if n > DecisionRule::MAX_TABLE_N {
        return Err(Error::TableTooLarge {
            n,
            max: DecisionRule::MAX_TABLE_N,
        });
    }
    let table = (0..1usize << n)
        .map(|pattern: usize| {
            if pattern.count_ones() as usize * 2 > n {
                Action::One
            } else {
                Action::Zero
            }
        })
        .collect();
    DecisionRule::new(n, table)
}

/// Ignore the votes entirely and flip a fair coin on every pattern.
pub fn coin_flip_rule(n: usize) -> Result<DecisionRule> {
    DecisionRule::constant(n, Action::Coin)
}

/// The minimax rule when expert `i` is known to beat a fair coin by at
/// least `epsilons[i]`: the symmetric-prior weighted vote rule evaluated
/// at the guaranteed accuracy floor `1/2 + epsilon_i`. With equal
/// epsilons this is exactly the majority rule.
pub fn interval_minimax_rule(epsilons: &[f64], tie_tolerance: f64) -> Result<DecisionRule> {
    AccuracyModel::interval(epsilons.to_vec())?.validate()?;
    let gammas: Vec<f64> = epsilons.iter().map(|&e| 0.5 + e).collect();
    bayes_rule_known(ThetaPrior::symmetric(), &gammas, tie_tolerance)
}

/// Number of decision rules on an `n`-expert panel, `3^(2^n)`, when it
/// fits in a `u64`.
pub fn rule_space_size(n: usize) -> Option<u64> {
    if n == 0 || n > MAX_ENUMERABLE_N {
        return None;
    }
    3u64.checked_pow(1u32 << n)
}

/// Human-readable size of the rule space, usable even when it overflows.
pub fn rule_space_cost(n: usize) -> String {
    match rule_space_size(n) {
        Some(size) => size.to_string(),
        None => {
            let digits = (n as f64).exp2() * 3f64.log10();
            format!("3^(2^{n}) (about 1e{})", digits.ceil() as u64)
        }
    }
}

/// Decodes a rule index into its decision table. The index is a base-3
/// numeral with one digit per pattern (pattern 0 in the least significant
/// digit): 0 answers 0, 1 answers 1, 2 flips the coin.
pub fn rule_from_index(n: usize, index: u64) -> Result<DecisionRule> {
    let size = rule_space_size(n).ok_or_else(|| Error::PanelTooLarge {
        n,
        max_n: MAX_ENUMERABLE_N,
        cost: rule_space_cost(n),
    })?;
    if index >= size {
        return Err(Error::PatternOutOfRange {
            index: index as usize,
            n,
        });
    }
    let mut rest = index;
    let table = (0..1usize << n)
        .map(|_| {
            let digit = rest % 3;
            rest /= 3;
            match digit {
                0 => Action::Zero,
                1 => Action::One,
                _ => Action::Coin,
            }
        })
        .collect();
    DecisionRule::new(n, table)
}

/// Inverse of [`rule_from_index`].
pub fn rule_index(rule: &DecisionRule) -> Result<u64> {
    if rule.n() > MAX_ENUMERABLE_N {
        return Err(Error::PanelTooLarge {
            n: rule.n(),
            max_n: MAX_ENUMERABLE_N,
            cost: rule_space_cost(rule.n()),
        });
    }
    let mut index = 0u64;
    for pattern in (0..rule.num_patterns()).rev() {
        let digit = match rule.action(pattern) {
            Action::Zero => 0,
            Action::One => 1,
            Action::Coin => 2,
        };
        index = index * 3 + digit;
    }
    Ok(index)
}

fn check_search_size(n: usize, max_n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::EmptyPanel);
    }
    let too_large = |n| Error::PanelTooLarge {
        n,
        max_n: max_n.min(MAX_ENUMERABLE_N),
        cost: rule_space_cost(n),
    };
    if n > max_n {
        return Err(too_large(n));
    }
    rule_space_size(n).ok_or_else(|| too_large(n))
}

// Shared enumeration skeleton: given a per-rule objective, find its
// minimum and all indices within tolerance. Chunks of the index range are
// evaluated in parallel; the witness pass preserves ascending order.
fn enumerate_min<F>(size: u64, objective: F) -> (f64, Vec<u64>)
where
    F: Fn(u64) -> f64 + Sync,
{
    let optimum = (0..size)
        .into_par_iter()
        .map(&objective)
        .reduce(|| f64::INFINITY, f64::min);
    let mut witnesses: Vec<u64> = (0..size)
        .into_par_iter()
        .filter(|&index| objective(index) <= optimum + WITNESS_TOLERANCE)
        .collect();
    witnesses.sort_unstable();
    (optimum, witnesses)
}

// Walks a rule's base-3 digits, summing a per-(pattern, action) objective.
fn rule_objective(index: u64, patterns: usize, contrib: &[[f64; 3]]) -> f64 {
    let mut rest = index;
    let mut total = 0.0;
    for row in contrib.iter().take(patterns) {
        total += row[(rest % 3) as usize];
        rest /= 3;
    }
    total
}

/// Finds the minimum Bayes risk over the entire rule space together with
/// every rule attaining it. This is the normal-form check that the
/// constructed weighted vote rules are genuinely optimal.
///
/// Accepts known and Beta accuracy models (the Beta case marginalizes to
/// the prior means, matching [`bayes_risk`]).
pub fn brute_force_bayes(
    prior: ThetaPrior,
    model: &AccuracyModel,
    max_n: usize,
) -> Result<SearchResult> {
    model.validate()?;
    let gammas = match model {
        AccuracyModel::Known { gammas } => gammas.clone(),
        AccuracyModel::BetaPrior { alphas, betas } => alphas
            .iter()
            .zip(betas)
            .map(|(&a, &b)| a / (a + b))
            .collect(),
        AccuracyModel::Interval { .. } => {
            return Err(Error::InvalidModel {
                operation: "brute_force_bayes",
                expected: "known or beta",
                got: "interval",
            })
        }
    };
    let n = gammas.len();
    let size = check_search_size(n, max_n)?;
    let patterns = 1usize << n;

    // Bayes risk decomposes per pattern: each action contributes the
    // prior-weighted probability of the states it gets wrong.
    let contrib: Vec<[f64; 3]> = (0..patterns)
        .map(|pattern| {
            let p1 = prior.prob_one() * pattern_probability(pattern, Theta::One, &gammas);
            let p0 = prior.prob_zero() * pattern_probability(pattern, Theta::Zero, &gammas);
            [p1, p0, 0.5 * (p1 + p0)]
        })
        .collect();

    let (optimum, witnesses) =
        enumerate_min(size, |index| rule_objective(index, patterns, &contrib));
    Ok(SearchResult {
        optimum,
        witnesses,
        enumerated: size,
    })
}

/// Finds the minimax value over a parameter box together with every rule
/// attaining it: the minimum over all rules of the worst-case risk, the
/// latter evaluated exactly at the box vertices.
pub fn brute_force_minimax(bounds: &ParameterBox, max_n: usize) -> Result<SearchResult> {
    let n = bounds.n();
    let size = check_search_size(n, max_n)?;
    let patterns = 1usize << n;

    // Per-pattern expected-loss contribution of each action, for every
    // (state, vertex) corner of the box.
    let corners: Vec<Vec<[f64; 3]>> = bounds
        .thetas()
        .iter()
        .flat_map(|&theta| (0..1usize << n).map(move |mask| (theta, mask)))
        .map(|(theta, mask)| {
            let gammas = bounds.vertex(mask);
            (0..patterns)
                .map(|p| {
                    let prob = pattern_probability(p, theta, &gammas);
                    [
                        prob * Action::Zero.expected_loss(theta),
                        prob * Action::One.expected_loss(theta),
                        prob * 0.5,
                    ]
                })
                .collect()
        })
        .collect();

    let sup_risk = |index: u64| -> f64 {
        corners
            .iter()
            .map(|contrib| rule_objective(index, patterns, contrib))
            .fold(f64::NEG_INFINITY, f64::max)
    };

    let (optimum, witnesses) = enumerate_min(size, sup_risk);
    Ok(SearchResult {
        optimum,
        witnesses,
        enumerated: size,
    })
}

/// One least-favorable-prior scan: the Bayes risk of the optimal rule at
/// each grid prior, its peak, and whether the peak is a plateau.
#[derive(Debug, Clone, PartialEq)]
pub struct LfpScan {
    /// `(prior probability of state 1, Bayes risk of its optimal rule)`.
    pub curve: Vec<(f64, f64)>,
    /// Grid prior with the largest Bayes risk; plateau ties resolve to the
    /// point closest to 1/2, which is the prior whose rule has constant risk.
    pub argmax_c: f64,
    pub peak_risk: f64,
    /// True when more than one grid point attains the peak within
    /// [`WITNESS_TOLERANCE`].
    pub flat_peak: bool,
}

/// Scans a grid of priors, building the optimal rule for each and
/// recording its Bayes risk. The prior maximizing this curve is the least
/// favorable one; the scan is the empirical counterpart of the constant-
/// risk argument that pins it at 1/2 for known accuracies.
pub fn least_favorable_scan(gammas: &[f64], grid: &[f64], tie_tolerance: f64) -> Result<LfpScan> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for (index, &c) in grid.iter().enumerate() {
        if !(0.0..=1.0).contains(&c) || c.is_nan() {
            return Err(Error::ParameterOutOfRange {
                name: "grid",
                index,
                value: c,
                requirement: "lie in [0, 1]",
            });
        }
    }
    let model = AccuracyModel::known(gammas.to_vec())?;
    let mut curve = Vec::with_capacity(grid.len());
    for &c in grid {
        let prior = ThetaPrior::new(c)?;
        let rule = bayes_rule_known(prior, gammas, tie_tolerance)?;
        curve.push((c, bayes_risk(&rule, prior, &model)?));
    }

    let peak_risk = curve
        .iter()
        .map(|&(_, r)| r)
        .fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<f64> = curve
        .iter()
        .filter(|&&(_, r)| r >= peak_risk - WITNESS_TOLERANCE)
        .map(|&(c, _)| c)
        .collect();
    let argmax_c = tied
        .iter()
        .copied()
        .min_by(|a, b| {
            let da = (a - 0.5).abs();
            let db = (b - 0.5).abs();
            da.partial_cmp(&db).unwrap().then(a.partial_cmp(b).unwrap())
        })
        .expect("grid is nonempty");
    Ok(LfpScan {
        curve,
        argmax_c,
        peak_risk,
        flat_peak: tied.len() > 1,
    })
}

/// The two halves of the constant-risk minimax certificate, checked
/// numerically: the rule is Bayes for the prior (its Bayes risk matches
/// the exhaustive optimum) and its risk does not depend on the state. A
/// rule passing both is minimax.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRiskCertificate {
    pub bayes_risk: f64,
    pub optimum: f64,
    pub risk_gap: f64,
    pub is_bayes: bool,
    pub constant_risk: bool,
}

impl ConstantRiskCertificate {
    /// True exactly when both certificate halves hold.
    pub fn holds(&self) -> bool {
        self.is_bayes && self.constant_risk
    }
}

/// Certifies minimaxity of a rule through the constant-risk route:
/// Bayes-ness is established in normal form against [`brute_force_bayes`]
/// and constant risk through [`constant_risk_gap`]. Known models only.
pub fn verify_constant_risk_bayes(
    rule: &DecisionRule,
    prior: ThetaPrior,
    model: &AccuracyModel,
    max_n: usize,
) -> Result<ConstantRiskCertificate> {
    let gammas = match model {
        AccuracyModel::Known { gammas } => gammas,
        other => {
            return Err(Error::InvalidModel {
                operation: "verify_constant_risk_bayes",
                expected: "known",
                got: other.kind(),
            })
        }
    };
    let bayes = bayes_risk(rule, prior, model)?;
    let optimum = brute_force_bayes(prior, model, max_n)?.optimum;
    let risk_gap = constant_risk_gap(rule, gammas)?;
    Ok(ConstantRiskCertificate {
        bayes_risk: bayes,
        optimum,
        risk_gap,
        is_bayes: bayes <= optimum + WITNESS_TOLERANCE,
        constant_risk: risk_gap <= WITNESS_TOLERANCE,
    })
}
