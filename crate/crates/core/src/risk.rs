//! Frequentist and Bayes risk of decision rules.
//!
//! All risks are for 0-1 loss: a wrong answer costs one unit, a correct
//! answer nothing, and a coin action costs exactly 1/2 in expectation (the
//! coin is averaged analytically everywhere except in the Monte Carlo
//! estimator, which physically flips it).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{AccuracyModel, Action, DecisionRule, Error, Result, Theta, ThetaPrior};

/// Probability of observing the vote pattern given the state, under
/// conditionally independent experts with the given accuracies.
pub(crate) fn pattern_probability(pattern: usize, theta: Theta, gammas: &[f64]) -> f64 {
    let mut prob = 1.0;
    for (i, &g) in gammas.iter().enumerate() {
        let voted_one = (pattern >> i) & 1 == 1;
        let matches_state = voted_one == (theta == Theta::One);
        prob *= if matches_state { g } else { 1.0 - g };
    }
    prob
}

fn check_rule_matches(rule: &DecisionRule, gammas: &[f64]) -> Result<()> {
    if rule.n() != gammas.len() {
        return Err(Error::LengthMismatch {
            expected: rule.n(),
            got: gammas.len(),
        });
    }
    Ok(())
}

/// Exact risk of a rule given the state: the expected 0-1 loss over the
/// vote distribution, summed over all `2^n` patterns.
pub fn risk_exact(rule: &DecisionRule, theta: Theta, gammas: &[f64]) -> Result<f64> {
    check_rule_matches(rule, gammas)?;
    let mut risk = 0.0;
    for pattern in 0..rule.num_patterns() {
        let loss = rule.action(pattern).expected_loss(theta);
        if loss != 0.0 {
            risk += pattern_probability(pattern, theta, gammas) * loss;
        }
    }
    Ok(risk)
}

/// Expected-accuracy reduction used for Bayes risks under Beta priors: the
/// marginal vote distribution is the known-accuracy one evaluated at the
/// prior means.
fn model_point_accuracies(model: &AccuracyModel, operation: &'static str) -> Result<Vec<f64>> {
    match model {
        AccuracyModel::Known { gammas } => Ok(gammas.clone()),
        AccuracyModel::BetaPrior { alphas, betas } => Ok(alphas
            .iter()
            .zip(betas)
            .map(|(&a, &b)| a / (a + b))
            .collect()),
        AccuracyModel::Interval { .. } => Err(Error::InvalidModel {
            operation,
            expected: "known or beta",
            got: "interval",
        }),
    }
}

/// Bayes risk of a rule: the prior-weighted average of its per-state
/// risks. Under a Beta model the accuracies are marginalized analytically
/// (each pattern factor is linear in its accuracy, so the marginal is the
/// known-accuracy formula at the prior means).
pub fn bayes_risk(rule: &DecisionRule, prior: ThetaPrior, model: &AccuracyModel) -> Result<f64> {
    model.validate()?;
    let gammas = model_point_accuracies(model, "bayes_risk")?;
    let risk1 = risk_exact(rule, Theta::One, &gammas)?;
    let risk0 = risk_exact(rule, Theta::Zero, &gammas)?;
    Ok(prior.prob_one() * risk1 + prior.prob_zero() * risk0)
}

/// Absolute gap between the two per-state risks. Zero (up to float noise)
/// certifies constant risk, the stepping stone from Bayes to minimax.
pub fn constant_risk_gap(rule: &DecisionRule, gammas: &[f64]) -> Result<f64> {
    let r0 = risk_exact(rule, Theta::Zero, gammas)?;
    let r1 = risk_exact(rule, Theta::One, gammas)?;
    Ok((r0 - r1).abs())
}

/// A rectangular set of accuracy vectors together with the admissible
/// states; the domain over which worst-case risk is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterBox {
    thetas: Vec<Theta>,
    gamma_lo: Vec<f64>,
    gamma_hi: Vec<f64>,
}

impl ParameterBox {
    pub fn new(thetas: Vec<Theta>, gamma_lo: Vec<f64>, gamma_hi: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::EmptyThetaSet);
        }
        if gamma_lo.is_empty() {
            return Err(Error::EmptyPanel);
        }
        if gamma_lo.len() != gamma_hi.len() {
            return Err(Error::LengthMismatch {
                expected: gamma_lo.len(),
                got: gamma_hi.len(),
            });
        }
        for (index, (&lo, &hi)) in gamma_lo.iter().zip(&gamma_hi).enumerate() {
            if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                return Err(Error::ParameterOutOfRange {
                    name: "gamma bounds",
                    index,
                    value: lo,
                    requirement: "satisfy 0 <= lo <= hi <= 1",
                });
            }
        }
        // Canonical state order keeps vertex enumeration deterministic.
        let mut thetas = thetas;
        thetas.sort_by_key(|t| t.bit());
        thetas.dedup();
        Ok(ParameterBox {
            thetas,
            gamma_lo,
            gamma_hi,
        })
    }

    /// The unrestricted box: both states, every accuracy in [0, 1].
    pub fn full(n: usize) -> Result<Self> {
        Self::new(Theta::BOTH.to_vec(), vec![0.0; n], vec![1.0; n])
    }

    /// A single accuracy vector (lo = hi) with the given states.
    pub fn degenerate(thetas: Vec<Theta>, gammas: Vec<f64>) -> Result<Self> {
        Self::new(thetas, gammas.clone(), gammas)
    }

    /// The box where expert `i` beats a fair coin by at least `epsilons[i]`.
    pub fn from_interval_epsilons(epsilons: &[f64]) -> Result<Self> {
        let lo: Vec<f64> = epsilons.iter().map(|&e| 0.5 + e).collect();
        let hi = vec![1.0; epsilons.len()];
        Self::new(Theta::BOTH.to_vec(), lo, hi)
    }

    pub fn n(&self) -> usize {
        self.gamma_lo.len()
    }

    pub fn thetas(&self) -> &[Theta] {
        &self.thetas
    }

    pub fn gamma_lo(&self) -> &[f64] {
        &self.gamma_lo
    }

    pub fn gamma_hi(&self) -> &[f64] {
        &self.gamma_hi
    }

    /// The corner of the box with every accuracy at its lower bound.
    pub fn floor_gammas(&self) -> Vec<f64> {
        self.gamma_lo.clone()
    }

    pub(crate) fn vertex(&self, mask: usize) -> Vec<f64> {
        self.gamma_lo
            .iter()
            .zip(&self.gamma_hi)
            .enumerate()
            .map(|(i, (&lo, &hi))| if (mask >> i) & 1 == 1 { hi } else { lo })
            .collect()
    }
}

/// Where the worst case over a [`ParameterBox`] is attained.
#[derive(Debug, Clone, PartialEq)]
pub struct SupRisk {
    pub value: f64,
    pub theta: Theta,
    pub gammas: Vec<f64>,
}

/// Exact supremum of the risk over a box.
///
/// The risk is affine in each accuracy separately (each pattern
/// probability is a product with one linear factor per expert), so the
/// supremum over the box is attained at a vertex; evaluating the `2^n`
/// vertices per state is exact, with no grid resolution to tune.
pub fn sup_risk_box(rule: &DecisionRule, bounds: &ParameterBox) -> Result<SupRisk> {
    check_rule_matches(rule, bounds.gamma_lo())?;
    let n = bounds.n();
    let mut best = SupRisk {
        value: f64::NEG_INFINITY,
        theta: bounds.thetas()[0],
        gammas: Vec::new(),
    };
    for &theta in bounds.thetas() {
        for mask in 0..1usize << n {
            let gammas = bounds.vertex(mask);
            let value = risk_exact(rule, theta, &gammas)?;
            if value > best.value {
                best = SupRisk {
                    value,
                    theta,
                    gammas,
                };
            }
        }
    }
    Ok(best)
}

/// A seeded Monte Carlo risk estimate with its binomial standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloRisk {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Estimates the risk by sampling vote patterns from the model and
/// physically flipping the coin for coin actions. Deterministic for a
/// fixed seed.
pub fn monte_carlo_risk(
    rule: &DecisionRule,
    theta: Theta,
    gammas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<MonteCarloRisk> {
    check_rule_matches(rule, gammas)?;
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut losses: u64 = 0;
    for _ in 0..trials {
        let mut pattern = 0usize;
        for (i, &g) in gammas.iter().enumerate() {
            let p_one = match theta {
                Theta::One => g,
                Theta::Zero => 1.0 - g,
            };
            if rng.gen::<f64>() < p_one {
                pattern |= 1 << i;
            }
        }
        let decided_one = match rule.action(pattern) {
            Action::One => true,
            Action::Zero => false,
            Action::Coin => rng.gen::<bool>(),
        };
        if decided_one != (theta == Theta::One) {
            losses += 1;
        }
    }
    let estimate = losses as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(MonteCarloRisk {
        estimate,
        std_error,
        trials,
    })
}
