//! Posterior probabilities for the hidden state and construction of the
//! optimal weighted vote rules.
//!
//! Two settings are covered:
//!
//! - **Known accuracies.** Expert `i` votes the truth with probability
//!   `gamma_i`. The optimal rule weighs vote `i` by twice the log odds of
//!   `gamma_i` and compares the weighted sum against a cutoff that shifts
//!   with the prior.
//! - **Beta priors over unknown accuracies.** Each `gamma_i` carries an
//!   independent Beta(alpha_i, beta_i) prior. Marginalizing them out gives
//!   the same weighted-vote structure with weights `2 ln(alpha_i / beta_i)`,
//!   i.e. the known-accuracy rule evaluated at the prior means.
//!
//! Weighted sums that land within `tie_tolerance` of the cutoff are genuine
//! ties: both answers have equal posterior expected loss, and the rule
//! outputs a fair coin.

use crate::model::{Action, DecisionRule, Error, OpinionVector, Result, ThetaPrior};

/// Per-expert vote weights: twice the log odds of each accuracy.
///
/// `gamma = 1/2` maps to weight 0, `gamma = 1` to `+inf`, `gamma = 0` to
/// `-inf`. Accuracies below 1/2 get negative weights, so the rule counts
/// those votes against their face value.
pub fn weights_known(gammas: &[f64]) -> Vec<f64> {
    gammas.iter().map(|&g| 2.0 * (g / (1.0 - g)).ln()).collect()
}

/// A weighted vote rule: answer 1 when the weighted vote sum clears the
/// cutoff, 0 when it falls short, and flip a fair coin within
/// `tie_tolerance` of it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedVoteRule {
    weights: Vec<f64>,
    cutoff: f64,
    tie_tolerance: f64,
}

impl WeightedVoteRule {
    /// Builds the optimal rule for known accuracies. Requires every
    /// accuracy strictly inside (0, 1); certain experts make the weighted
    /// form ill-defined and are handled by [`bayes_rule_known`] instead.
    pub fn from_known(prior: ThetaPrior, gammas: &[f64], tie_tolerance: f64) -> Result<Self> {
        validate_gammas(gammas)?;
        check_tolerance(tie_tolerance)?;
        for (index, &g) in gammas.iter().enumerate() {
            if g == 0.0 || g == 1.0 {
                return Err(Error::DegenerateAccuracy { index, value: g });
            }
        }
        let weights = weights_known(gammas);
        let cutoff = cutoff_for(prior, &weights);
        Ok(WeightedVoteRule {
            weights,
            cutoff,
            tie_tolerance,
        })
    }

    /// Builds the optimal rule under Beta priors on the accuracies:
    /// weights `2 ln(alpha_i / beta_i)`, always finite.
    pub fn from_beta_prior(
        prior: ThetaPrior,
        alphas: &[f64],
        betas: &[f64],
        tie_tolerance: f64,
    ) -> Result<Self> {
        validate_beta(alphas, betas)?;
        check_tolerance(tie_tolerance)?;
        let weights: Vec<f64> = alphas
            .iter()
            .zip(betas)
            .map(|(&a, &b)| 2.0 * (a / b).ln())
            .collect();
        let cutoff = cutoff_for(prior, &weights);
        Ok(WeightedVoteRule {
            weights,
            cutoff,
            tie_tolerance,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    /// Weighted sum of the votes.
    pub fn score(&self, votes: &OpinionVector) -> Result<f64> {
        if votes.n() != self.weights.len() {
            return Err(Error::LengthMismatch {
                expected: self.weights.len(),
                got: votes.n(),
            });
        }
        Ok(self
            .weights
            .iter()
            .zip(votes.bits())
            .filter(|(_, &bit)| bit)
            .map(|(&w, _)| w)
            .sum())
    }

    pub fn decide(&self, votes: &OpinionVector) -> Result<Action> {
        let score = self.score(votes)?;
        Ok(if score > self.cutoff + self.tie_tolerance {
            Action::One
        } else if score < self.cutoff - self.tie_tolerance {
            Action::Zero
        } else {
            Action::Coin
        })
    }

    /// Expands the rule into an explicit decision table.
    pub fn to_decision_rule(&self) -> Result<DecisionRule> {
        let n = self.weights.len();
        if n == 0 {
            return Err(Error::EmptyPanel);
        }
        if n > DecisionRule::MAX_TABLE_N {
            return Err(Error::TableTooLarge {
                n,
                max: DecisionRule::MAX_TABLE_N,
            });
        }
        let table = (0..1usize << n)
            .map(|pattern| {
                let votes = OpinionVector::from_pattern_index(n, pattern)?;
                self.decide(&votes)
            })
            .collect::<Result<Vec<_>>>()?;
        DecisionRule::new(n, table)
    }
}

// Cutoff shared by both weighted forms: log odds against state 1 from the
// prior, plus half the total weight.
fn cutoff_for(prior: ThetaPrior, weights: &[f64]) -> f64 {
    (prior.prob_zero() / prior.prob_one()).ln() + weights.iter().map(|w| w / 2.0).sum::<f64>()
}

/// Posterior probability of state 1 given the votes, for known accuracies.
///
/// Each side's likelihood is accumulated as a sum of per-expert log
/// factors, which keeps certain experts (`gamma` of 0 or 1) exact: a zero
/// factor contributes `-inf` and forces that side's probability to exactly
/// zero rather than overflowing an intermediate weight difference.
///
/// Returns [`Error::ZeroProbabilityObservation`] when the observation is
/// impossible under both states.
pub fn posterior_known(prior: ThetaPrior, gammas: &[f64], votes: &OpinionVector) -> Result<f64> {
    validate_gammas(gammas)?;
    if votes.n() != gammas.len() {
        return Err(Error::LengthMismatch {
            expected: gammas.len(),
            got: votes.n(),
        });
    }
    let mut log_one = prior.prob_one().ln();
    let mut log_zero = prior.prob_zero().ln();
    for (&g, &bit) in gammas.iter().zip(votes.bits()) {
        if bit {
            log_one += g.ln();
            log_zero += (1.0 - g).ln();
        } else {
            log_one += (1.0 - g).ln();
            log_zero += g.ln();
        }
    }
    logistic_from_sides(log_one, log_zero)
}

/// Posterior probability of state 1 given the votes, under Beta priors on
/// the accuracies. Marginalizing each Beta against its Bernoulli vote
/// reduces expert `i`'s contribution to the log odds to `ln(alpha_i /
/// beta_i)` for a 1-vote and `ln(beta_i / alpha_i)` for a 0-vote; the
/// positivity of the hyperparameters keeps everything finite.
pub fn posterior_beta(
    prior: ThetaPrior,
    alphas: &[f64],
    betas: &[f64],
    votes: &OpinionVector,
) -> Result<f64> {
    validate_beta(alphas, betas)?;
    if votes.n() != alphas.len() {
        return Err(Error::LengthMismatch {
            expected: alphas.len(),
            got: votes.n(),
        });
    }
    let mut log_one = prior.prob_one().ln();
    let mut log_zero = prior.prob_zero().ln();
    for ((&a, &b), &bit) in alphas.iter().zip(betas).zip(votes.bits()) {
        if bit {
            log_one += (a / b).ln();
        } else {
            log_zero += (a / b).ln();
        }
    }
    logistic_from_sides(log_one, log_zero)
}

// Normalizes two log-scale unnormalized posteriors into P(state = 1).
fn logistic_from_sides(log_one: f64, log_zero: f64) -> Result<f64> {
    if log_one == f64::NEG_INFINITY && log_zero == f64::NEG_INFINITY {
        return Err(Error::ZeroProbabilityObservation);
    }
    if log_one == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if log_zero == f64::NEG_INFINITY {
        return Ok(1.0);
    }
    Ok(1.0 / (1.0 + (log_zero - log_one).exp()))
}

/// A decision table plus the patterns that were impossible under both
/// states and therefore carry an arbitrary (coin) action.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownBayesRule {
    pub rule: DecisionRule,
    /// `unreachable[p]` is true when pattern `p` has probability zero under
    /// both states; any action is optimal there, and the coin is used so
    /// the rule keeps its symmetric-risk properties.
    pub unreachable: Vec<bool>,
}

/// Builds the optimal decision table for known accuracies.
///
/// When every accuracy is strictly inside (0, 1) and the prior is not
/// degenerate, this expands the weighted vote rule. Otherwise the table is
/// built pattern by pattern from [`posterior_known`] (thresholded at 1/2
/// with the same tolerance): certain experts or certain priors force
/// posteriors of exactly 0 or 1, and patterns impossible under both states
/// fall back to the coin, flagged in [`KnownBayesRule::unreachable`].
pub fn bayes_rule_known_detailed(
    prior: ThetaPrior,
    gammas: &[f64],
    tie_tolerance: f64,
) -> Result<KnownBayesRule> {
    validate_gammas(gammas)?;
    check_tolerance(tie_tolerance)?;
    let n = gammas.len();
    if n > DecisionRule::MAX_TABLE_N {
        return Err(Error::TableTooLarge {
            n,
            max: DecisionRule::MAX_TABLE_N,
        });
    }
    let interior = gammas.iter().all(|&g| g > 0.0 && g < 1.0)
        && prior.prob_one() > 0.0
        && prior.prob_one() < 1.0;
    if interior {
        let rule =
            WeightedVoteRule::from_known(prior, gammas, tie_tolerance)?.to_decision_rule()?;
        let unreachable = vec![false; rule.num_patterns()];
        return Ok(KnownBayesRule { rule, unreachable });
    }

    let mut table = Vec::with_capacity(1usize << n);
    let mut unreachable = vec![false; 1usize << n];
    for (pattern, flag) in unreachable.iter_mut().enumerate() {
        let votes = OpinionVector::from_pattern_index(n, pattern)?;
        match posterior_known(prior, gammas, &votes) {
            Ok(p) => table.push(if p > 0.5 + tie_tolerance {
                Action::One
            } else if p < 0.5 - tie_tolerance {
                Action::Zero
            } else {
                Action::Coin
            }),
            Err(Error::ZeroProbabilityObservation) => {
                *flag = true;
                table.push(Action::Coin);
            }
            Err(other) => return Err(other),
        }
    }
    Ok(KnownBayesRule {
        rule: DecisionRule::new(n, table)?,
        unreachable,
    })
}

/// [`bayes_rule_known_detailed`] without the unreachable-pattern flags.
pub fn bayes_rule_known(
    prior: ThetaPrior,
    gammas: &[f64],
    tie_tolerance: f64,
) -> Result<DecisionRule> {
    Ok(bayes_rule_known_detailed(prior, gammas, tie_tolerance)?.rule)
}

/// Builds the optimal decision table under Beta priors on the accuracies.
pub fn bayes_rule_beta(
    prior: ThetaPrior,
    alphas: &[f64],
    betas: &[f64],
    tie_tolerance: f64,
) -> Result<DecisionRule> {
    WeightedVoteRule::from_beta_prior(prior, alphas, betas, tie_tolerance)?.to_decision_rule()
}

fn validate_gammas(gammas: &[f64]) -> Result<()> {
    if gammas.is_empty() {
        return Err(Error::EmptyPanel);
    }
    for (index, &g) in gammas.iter().enumerate() {
        if !(0.0..=1.0).contains(&g) || g.is_nan() {
            return Err(Error::ParameterOutOfRange {
                name: "gamma",
                index,
                value: g,
                requirement: "lie in [0, 1]",
            });
        }
    }
    Ok(())
}

fn validate_beta(alphas: &[f64], betas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::EmptyPanel);
    }
    if alphas.len() != betas.len() {
        return Err(Error::LengthMismatch {
            expected: alphas.len(),
            got: betas.len(),
        });
    }
    for (name, values) in [("alpha", alphas), ("beta", betas)] {
        for (index, &v) in values.iter().enumerate() {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::ParameterOutOfRange {
                    name,
                    index,
                    value: v,
                    requirement: "be positive and finite",
                });
            }
        }
    }
    Ok(())
}

fn check_tolerance(tie_tolerance: f64) -> Result<()> {
    if tie_tolerance < 0.0 || !tie_tolerance.is_finite() {
        return Err(Error::InvalidTolerance(tie_tolerance));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Action::{Coin, One, Zero};
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn votes(bits: &[u8]) -> OpinionVector {
        OpinionVector::from_bits(bits).unwrap()
    }

    fn prior(c: f64) -> ThetaPrior {
        ThetaPrior::new(c).unwrap()
    }

    #[test]
    fn posterior_known_uninformative_expert() {
        let p = posterior_known(prior(0.5), &[0.5], &votes(&[1])).unwrap();
        assert_eq!(p, 0.5);
    }

    #[test]
    fn posterior_known_matches_product_formula() {
        // Independent oracle: the explicit likelihood-ratio products.
        let c = 0.5;
        let g = [0.8, 0.8, 0.8];
        let y = [1u8, 1, 0];
        let like_one: f64 = g
            .iter()
            .zip(&y)
            .map(|(&g, &y)| if y == 1 { g } else { 1.0 - g })
            .product();
        let like_zero: f64 = g
            .iter()
            .zip(&y)
            .map(|(&g, &y)| if y == 1 { 1.0 - g } else { g })
            .product();
        let expected = c * like_one / (c * like_one + (1.0 - c) * like_zero);
        assert!((expected - 0.8).abs() < 1e-12);

        let p = posterior_known(prior(c), &g, &votes(&y)).unwrap();
        assert!((p - expected).abs() < 1e-12, "got {p}, expected {expected}");
    }

    #[test]
    fn posterior_known_certain_experts_exact() {
        let p = posterior_known(prior(0.5), &[1.0, 1.0, 1.0], &votes(&[1, 1, 1])).unwrap();
        assert_eq!(p, 1.0);
        let p = posterior_known(prior(0.5), &[1.0, 1.0, 1.0], &votes(&[0, 0, 0])).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn posterior_known_impossible_observation() {
        // Two infallible experts disagreeing cannot happen under either state.
        let err = posterior_known(prior(0.5), &[1.0, 1.0], &votes(&[1, 0])).unwrap_err();
        assert_eq!(err, Error::ZeroProbabilityObservation);
    }

    #[test]
    fn weights_known_examples() {
        let w = weights_known(&[0.5, 0.8, 0.2]);
        assert_eq!(w[0], 0.0);
        assert!((w[1] - 2.0 * 4.0_f64.ln()).abs() < 1e-12);
        assert!((w[2] + 2.0 * 4.0_f64.ln()).abs() < 1e-12);
        // Antisymmetry around 1/2.
        assert!((w[1] + w[2]).abs() < 1e-12);

        let w = weights_known(&[0.0, 1.0]);
        assert_eq!(w[0], f64::NEG_INFINITY);
        assert_eq!(w[1], f64::INFINITY);
    }

    #[test]
    fn bayes_rule_known_symmetric_informative_is_majority() {
        let rule = bayes_rule_known(prior(0.5), &[0.8, 0.8, 0.8], TOL).unwrap();
        for pattern in 0..8usize {
            let expected = if pattern.count_ones() >= 2 { One } else { Zero };
            assert_eq!(rule.action(pattern), expected, "pattern {pattern}");
        }
    }

    #[test]
    fn bayes_rule_known_lopsided_prior_is_constant_one() {
        // Oracle: the posterior exceeds 1/2 on both patterns.
        for pattern in 0..2usize {
            let y = OpinionVector::from_pattern_index(1, pattern).unwrap();
            let p = posterior_known(prior(0.99), &[0.6], &y).unwrap();
            assert!(p > 0.5, "pattern {pattern} posterior {p}");
        }
        let rule = bayes_rule_known(prior(0.99), &[0.6], TOL).unwrap();
        assert_eq!(rule.actions(), &[One, One]);
    }

    #[test]
    fn bayes_rule_known_all_coin_when_uninformative() {
        let rule = bayes_rule_known(prior(0.5), &[0.5, 0.5, 0.5], TOL).unwrap();
        assert!(rule.actions().iter().all(|&a| a == Coin));
    }

    #[test]
    fn bayes_rule_known_degenerate_prior_constant() {
        let zero = bayes_rule_known(prior(0.0), &[0.7, 0.6], TOL).unwrap();
        assert!(zero.actions().iter().all(|&a| a == Zero));
        let one = bayes_rule_known(prior(1.0), &[0.7, 0.6], TOL).unwrap();
        assert!(one.actions().iter().all(|&a| a == One));
    }

    #[test]
    fn bayes_rule_known_flags_unreachable_patterns() {
        let detail = bayes_rule_known_detailed(prior(0.5), &[1.0, 1.0], TOL).unwrap();
        // Patterns (1,0) and (0,1) are impossible under both states.
        assert_eq!(detail.rule.actions(), &[Zero, Coin, Coin, One]);
        assert_eq!(detail.unreachable, vec![false, true, true, false]);
    }

    #[test]
    fn weighted_rule_rejects_certain_experts() {
        let err = WeightedVoteRule::from_known(prior(0.5), &[1.0, 0.6], TOL).unwrap_err();
        assert!(matches!(err, Error::DegenerateAccuracy { index: 0, .. }));
    }

    #[test]
    fn posterior_beta_matches_gamma_function_oracle() {
        // Independent oracle: the unsimplified marginal likelihoods written
        // with log-gamma functions.
        use statrs::function::gamma::ln_gamma;
        let c: f64 = 0.5;
        let (alphas, betas) = ([5.0, 1.0, 1.0], [2.0, 1.0, 1.0]);
        let y = [1u8, 0, 0];
        let side = |state_one: bool| -> f64 {
            let mut log = if state_one { c } else { 1.0 - c }.ln();
            for i in 0..3 {
                let (a, b) = (alphas[i], betas[i]);
                let yi = if state_one {
                    f64::from(y[i])
                } else {
                    1.0 - f64::from(y[i])
                };
                log += ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
                    + ln_gamma(a + yi)
                    + ln_gamma(b + 1.0 - yi)
                    - ln_gamma(a + b + 1.0);
            }
            log
        };
        let (l1, l0) = (side(true), side(false));
        let expected = 1.0 / (1.0 + (l0 - l1).exp());
        assert!((expected - 2.5 / 3.5).abs() < 1e-12);

        let p = posterior_beta(prior(c), &alphas, &betas, &votes(&y)).unwrap();
        assert!((p - expected).abs() < 1e-12, "got {p}, expected {expected}");
    }

    #[test]
    fn posterior_beta_symmetric_priors_are_uninformative() {
        let p = posterior_beta(prior(0.5), &[3.0, 1.0], &[3.0, 1.0], &votes(&[1, 0])).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
    }

    #[test]
    fn posterior_beta_uniform_hyperpriors_return_the_prior() {
        for pattern in 0..8usize {
            let y = OpinionVector::from_pattern_index(3, pattern).unwrap();
            let p = posterior_beta(prior(0.3), &[1.0; 3], &[1.0; 3], &y).unwrap();
            assert!((p - 0.3).abs() < 1e-12, "pattern {pattern} posterior {p}");
        }
    }

    #[test]
    fn bayes_rule_beta_trusted_first_expert() {
        // One informative expert, two uninformative: follow expert 1.
        let rule = bayes_rule_beta(prior(0.5), &[5.0, 1.0, 1.0], &[2.0, 1.0, 1.0], TOL).unwrap();
        let expected = [Zero, One, Zero, One, Zero, One, Zero, One];
        assert_eq!(rule.actions(), &expected);
    }

    #[test]
    fn bayes_rule_beta_two_trusted_experts_tie_on_disagreement() {
        let rule = bayes_rule_beta(prior(0.5), &[5.0, 5.0, 1.0], &[2.0, 2.0, 1.0], TOL).unwrap();
        let expected = [Zero, Coin, Coin, One, Zero, Coin, Coin, One];
        assert_eq!(rule.actions(), &expected);
    }

    #[test]
    fn bayes_rule_beta_overrules_the_spammer() {
        let rule = bayes_rule_beta(prior(0.5), &[5.0, 5.0, 2.0], &[2.0, 2.0, 5.0], TOL).unwrap();
        let expected = [Zero, One, One, One, Zero, Zero, Zero, One];
        assert_eq!(rule.actions(), &expected);
    }

    #[test]
    fn bayes_rule_beta_degenerate_priors_constant() {
        let zero = bayes_rule_beta(prior(0.0), &[5.0, 5.0], &[2.0, 2.0], TOL).unwrap();
        assert!(zero.actions().iter().all(|&a| a == Zero));
        let one = bayes_rule_beta(prior(1.0), &[5.0, 5.0], &[2.0, 2.0], TOL).unwrap();
        assert!(one.actions().iter().all(|&a| a == One));
    }

    fn interior_gamma() -> impl Strategy<Value = f64> {
        0.01f64..0.99
    }

    proptest! {
        // The posterior and its complement computed through the mirrored
        // problem must sum to one.
        #[test]
        fn posterior_complementarity(
            c in 0.0f64..=1.0,
            g in proptest::collection::vec(0.0f64..=1.0, 1..=6),
            seed in 0usize..64,
        ) {
            let n = g.len();
            let y = OpinionVector::from_pattern_index(n, seed % (1 << n)).unwrap();
            // P(state = 0 | votes), accumulated from the same per-expert
            // factors with the two sides swapped.
            let state_zero = |c: f64, g: &[f64], y: &OpinionVector| -> Result<f64> {
                let mut log_one = c.ln();
                let mut log_zero = (1.0 - c).ln();
                for (&g, &bit) in g.iter().zip(y.bits()) {
                    if bit {
                        log_one += g.ln();
                        log_zero += (1.0 - g).ln();
                    } else {
                        log_one += (1.0 - g).ln();
                        log_zero += g.ln();
                    }
                }
                match (log_one == f64::NEG_INFINITY, log_zero == f64::NEG_INFINITY) {
                    (true, true) => Err(Error::ZeroProbabilityObservation),
                    (true, false) => Ok(1.0),
                    (false, true) => Ok(0.0),
                    (false, false) => Ok(1.0 / (1.0 + (log_one - log_zero).exp())),
                }
            };
            let p1 = posterior_known(prior(c), &g, &y);
            let p0 = state_zero(c, &g, &y);
            match (p1, p0) {
                (Ok(p1), Ok(p0)) => prop_assert!((p1 + p0 - 1.0).abs() <= 1e-12),
                (Err(Error::ZeroProbabilityObservation), Err(Error::ZeroProbabilityObservation)) => {}
                (a, b) => prop_assert!(false, "inconsistent results {a:?} / {b:?}"),
            }
        }

        // For interior accuracies the expanded weighted rule agrees with
        // thresholding the posterior at 1/2 using the same tolerance.
        #[test]
        fn rule_equivalence_with_posterior_threshold(
            c in 0.01f64..0.99,
            g in proptest::collection::vec(interior_gamma(), 1..=4),
        ) {
            let rule = bayes_rule_known(prior(c), &g, TOL).unwrap();
            for pattern in 0..rule.num_patterns() {
                let y = OpinionVector::from_pattern_index(g.len(), pattern).unwrap();
                let p = posterior_known(prior(c), &g, &y).unwrap();
                let expected = if p > 0.5 + TOL {
                    One
                } else if p < 0.5 - TOL {
                    Zero
                } else {
                    Coin
                };
                prop_assert_eq!(rule.action(pattern), expected, "pattern {}", pattern);
            }
        }

        // The Beta-prior rule is the known-accuracy rule at the prior means.
        #[test]
        fn beta_rule_equals_known_rule_at_prior_means(
            c in 0.01f64..0.99,
            ab in proptest::collection::vec((0.5f64..6.0, 0.5f64..6.0), 1..=4),
        ) {
            let alphas: Vec<f64> = ab.iter().map(|&(a, _)| a).collect();
            let betas: Vec<f64> = ab.iter().map(|&(_, b)| b).collect();
            let means: Vec<f64> = ab.iter().map(|&(a, b)| a / (a + b)).collect();
            let beta_rule = bayes_rule_beta(prior(c), &alphas, &betas, TOL).unwrap();
            let known_rule = bayes_rule_known(prior(c), &means, TOL).unwrap();
            prop_assert_eq!(beta_rule.actions(), known_rule.actions());
        }

        // Flipping a vote to 1 moves the posterior with the expert's skill.
        #[test]
        fn posterior_monotone_in_votes(
            c in 0.01f64..0.99,
            g in proptest::collection::vec(interior_gamma(), 1..=5),
            seed in 0usize..64,
        ) {
            let n = g.len();
            let base = seed % (1 << n);
            for i in 0..n {
                let low = OpinionVector::from_pattern_index(n, base & !(1 << i)).unwrap();
                let high = OpinionVector::from_pattern_index(n, base | (1 << i)).unwrap();
                let p_low = posterior_known(prior(c), &g, &low).unwrap();
                let p_high = posterior_known(prior(c), &g, &high).unwrap();
                if g[i] > 0.5 {
                    prop_assert!(p_high >= p_low - 1e-12);
                } else if g[i] < 0.5 {
                    prop_assert!(p_high <= p_low + 1e-12);
                }
            }
        }

        // Relabeling both states and votes mirrors the posterior.
        #[test]
        fn posterior_label_symmetry(
            c in 0.0f64..=1.0,
            g in proptest::collection::vec(interior_gamma(), 1..=5),
            seed in 0usize..64,
        ) {
            let n = g.len();
            let pattern = seed % (1 << n);
            let y = OpinionVector::from_pattern_index(n, pattern).unwrap();
            let y_flipped = OpinionVector::from_pattern_index(n, !pattern & ((1 << n) - 1)).unwrap();
            let p = posterior_known(prior(c), &g, &y).unwrap();
            let q = posterior_known(prior(1.0 - c), &g, &y_flipped).unwrap();
            prop_assert!((p - (1.0 - q)).abs() <= 1e-12, "p = {}, q = {}", p, q);
        }
    }
}
