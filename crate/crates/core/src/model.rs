//! Shared domain types for panels of binary experts.
//!
//! Every type here validates its invariants at construction and is
//! immutable afterwards; invalid parameters are rejected with [`Error`],
//! never clamped. All values are `Send + Sync` and safe to share across
//! threads.

use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A panel needs at least one expert.
    #[error("panel must contain at least one expert")]
    EmptyPanel,

    /// Two vectors describing the same panel disagree on length.
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A numeric parameter violates its documented range.
    #[error("{name}[{index}] = {value} must satisfy {requirement}")]
    ParameterOutOfRange {
        name: &'static str,
        index: usize,
        value: f64,
        requirement: &'static str,
    },

    #[error("prior probability must lie in [0, 1], got {0}")]
    PriorOutOfRange(f64),

    #[error("tie tolerance must be nonnegative and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("a decision table for n = {n} needs {expected} entries, got {got}")]
    TableSize {
        n: usize,
        expected: usize,
        got: usize,
    },

    /// Explicit decision tables grow as 2^n and are not materialized past this limit.
    #[error("explicit decision tables are limited to n <= {max}, got n = {n}")]
    TableTooLarge { n: usize, max: usize },

    #[error("pattern indices support at most {max} experts, got n = {n}")]
    PanelTooWide { n: usize, max: usize },

    #[error("pattern index {index} is out of range for n = {n}")]
    PatternOutOfRange { index: usize, n: usize },

    /// The observed votes have probability zero under both states.
    #[error("observation has probability zero under both states")]
    ZeroProbabilityObservation,

    /// The weighted form of a rule is undefined when an expert is certain.
    #[error(
        "expert {index} has accuracy {value}; the weighted form needs accuracies strictly inside (0, 1)"
    )]
    DegenerateAccuracy { index: usize, value: f64 },

    #[error("majority rule needs an odd panel, got n = {0}")]
    EvenPanel(usize),

    #[error("theta bit must be 0 or 1, got {0}")]
    InvalidThetaBit(u8),

    #[error("risk must lie in [0, 1], got {0}")]
    RiskOutOfRange(f64),

    /// An operation received an accuracy-model variant it does not support.
    #[error("{operation} supports {expected} models, got a {got} model")]
    InvalidModel {
        operation: &'static str,
        expected: &'static str,
        got: &'static str,
    },

    /// Exhaustive searches enumerate 3^(2^n) rules and are capped by `max_n`.
    #[error("exhaustive search over n = {n} would enumerate {cost} rules (limit max_n = {max_n})")]
    PanelTooLarge {
        n: usize,
        max_n: usize,
        cost: String,
    },

    #[error("parameter box must include at least one state")]
    EmptyThetaSet,

    #[error("monte carlo estimation needs at least one trial")]
    NoTrials,

    #[error("prior grid must contain at least one value")]
    EmptyGrid,
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest panel for which pattern indices fit in a `usize`.
pub const MAX_PATTERN_N: usize = 63;

/// The hidden binary state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    Zero,
    One,
}

impl Theta {
    /// Both states, in a fixed order.
    pub const BOTH: [Theta; 2] = [Theta::Zero, Theta::One];

    pub fn bit(self) -> u8 {
        match self {
            Theta::Zero => 0,
            Theta::One => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Theta::Zero),
            1 => Ok(Theta::One),
            other => Err(Error::InvalidThetaBit(other)),
        }
    }
}

impl std::fmt::Display for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// One panel's votes on a single item: an ordered sequence of 0/1 opinions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpinionVector {
    bits: Vec<bool>,
}

impl OpinionVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyPanel);
        }
        Ok(OpinionVector { bits })
    }

    /// Builds a vector from 0/1 integers, rejecting anything else.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut votes = Vec::with_capacity(bits.len());
        for (index, &b) in bits.iter().enumerate() {
            match b {
                0 => votes.push(false),
                1 => votes.push(true),
                other => {
                    return Err(Error::ParameterOutOfRange {
                        name: "vote",
                        index,
                        value: f64::from(other),
                        requirement: "be 0 or 1",
                    })
                }
            }
        }
        Self::new(votes)
    }

    /// Decodes a pattern index back into votes. Bit `i` of `index` is the
    /// vote of expert `i`, so expert 0 sits in the least significant bit.
    pub fn from_pattern_index(n: usize, index: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPanel);
        }
        if n > MAX_PATTERN_N {
            return Err(Error::PanelTooWide {
                n,
                max: MAX_PATTERN_N,
            });
        }
        if index >> n != 0 {
            return Err(Error::PatternOutOfRange { index, n });
        }
        let bits = (0..n).map(|i| (index >> i) & 1 == 1).collect();
        Ok(OpinionVector { bits })
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Fraction of experts voting 1.
    pub fn mean(&self) -> f64 {
        let ones = self.bits.iter().filter(|&&b| b).count();
        ones as f64 / self.bits.len() as f64
    }

    /// Encodes the votes as an integer in `[0, 2^n)`, expert 0 in the
    /// least significant bit. Inverse of [`OpinionVector::from_pattern_index`].
    ///
    /// # Panics
    /// Panics if the panel is wider than [`MAX_PATTERN_N`].
    pub fn pattern_index(&self) -> usize {
        assert!(
            self.bits.len() <= MAX_PATTERN_N,
            "pattern indices support at most {MAX_PATTERN_N} experts"
        );
        self.bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i))
    }
}

/// What is known (or believed) about each expert's accuracy.
#[derive(Debug, Clone, PartialEq)]
pub enum AccuracyModel {
    /// Accuracies are known exactly; `gammas[i]` is the probability that
    /// expert `i` votes the true state.
    Known { gammas: Vec<f64> },
    /// Accuracies are unknown with independent Beta(alpha, beta) priors.
    BetaPrior { alphas: Vec<f64>, betas: Vec<f64> },
    /// Accuracies are unknown but each exceeds 1/2 by at least `epsilons[i]`.
    Interval { epsilons: Vec<f64> },
}

impl AccuracyModel {
    pub fn known(gammas: Vec<f64>) -> Result<Self> {
        let model = AccuracyModel::Known { gammas };
        model.validate()?;
        Ok(model)
    }

    pub fn beta_prior(alphas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        let model = AccuracyModel::BetaPrior { alphas, betas };
        model.validate()?;
        Ok(model)
    }

    pub fn interval(epsilons: Vec<f64>) -> Result<Self> {
        let model = AccuracyModel::Interval { epsilons };
        model.validate()?;
        Ok(model)
    }

    /// Panel size described by this model.
    pub fn n(&self) -> usize {
        match self {
            AccuracyModel::Known { gammas } => gammas.len(),
            AccuracyModel::BetaPrior { alphas, .. } => alphas.len(),
            AccuracyModel::Interval { epsilons } => epsilons.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AccuracyModel::Known { .. } => "known",
            AccuracyModel::BetaPrior { .. } => "beta",
            AccuracyModel::Interval { .. } => "interval",
        }
    }

    /// Checks every invariant; constructors call this, and ingestion code
    /// that builds the enum directly should too.
    pub fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::EmptyPanel);
        }
        match self {
            AccuracyModel::Known { gammas } => {
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
            }
            AccuracyModel::BetaPrior { alphas, betas } => {
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
            }
            AccuracyModel::Interval { epsilons } => {
                for (index, &e) in epsilons.iter().enumerate() {
                    if !(e > 0.0 && e < 0.5) {
                        return Err(Error::ParameterOutOfRange {
                            name: "epsilon",
                            index,
                            value: e,
                            requirement: "lie strictly inside (0, 1/2)",
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Prior probability that the hidden state is 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPrior {
    c: f64,
}

impl ThetaPrior {
    pub fn new(c: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c) || c.is_nan() {
            return Err(Error::PriorOutOfRange(c));
        }
        Ok(ThetaPrior { c })
    }

    /// The symmetric prior, `P(state = 1) = 1/2`.
    pub fn symmetric() -> Self {
        ThetaPrior { c: 0.5 }
    }

    pub fn prob_one(self) -> f64 {
        self.c
    }

    pub fn prob_zero(self) -> f64 {
        1.0 - self.c
    }
}

/// What a rule does on one vote pattern: answer 0, answer 1, or output a
/// fair coin flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Zero,
    One,
    Coin,
}

impl Action {
    /// Expected 0-1 loss of this action against a state, with the coin
    /// averaged analytically (it is right half the time regardless of the
    /// state).
    pub fn expected_loss(self, theta: Theta) -> f64 {
        match (self, theta) {
            (Action::Coin, _) => 0.5,
            (Action::Zero, Theta::One) | (Action::One, Theta::Zero) => 1.0,
            _ => 0.0,
        }
    }
}

/// A total decision table: one [`Action`] for each of the `2^n` vote
/// patterns, indexed by [`OpinionVector::pattern_index`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecisionRule {
    n: usize,
    table: Vec<Action>,
}

impl DecisionRule {
    /// Largest panel for which explicit tables are materialized. The table
    /// and the exact-risk sweep both cost `2^n`, so this is a practical
    /// rather than a fundamental bound.
    pub const MAX_TABLE_N: usize = 20;

    pub fn new(n: usize, table: Vec<Action>) -> Result<Self> {
        let expected = Self::num_patterns_for(n)?;
        if table.len() != expected {
            return Err(Error::TableSize {
                n,
                expected,
                got: table.len(),
            });
        }
        Ok(DecisionRule { n, table })
    }

    /// A rule taking the same action on every pattern.
    pub fn constant(n: usize, action: Action) -> Result<Self> {
        let patterns = Self::num_patterns_for(n)?;
        Ok(DecisionRule {
            n,
            table: vec![action; patterns],
        })
    }

    fn num_patterns_for(n: usize) -> Result<usize> {
        if n == 0 {
            return Err(Error::EmptyPanel);
        }
        if n > Self::MAX_TABLE_N {
            return Err(Error::TableTooLarge {
                n,
                max: Self::MAX_TABLE_N,
            });
        }
        Ok(1usize << n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_patterns(&self) -> usize {
        self.table.len()
    }

    /// Action on the pattern with the given index.
    ///
    /// # Panics
    /// Panics if `pattern >= 2^n`, like slice indexing.
    pub fn action(&self, pattern: usize) -> Action {
        self.table[pattern]
    }

    pub fn action_for(&self, votes: &OpinionVector) -> Result<Action> {
        if votes.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: votes.n(),
            });
        }
        Ok(self.table[votes.pattern_index()])
    }

    pub fn actions(&self) -> &[Action] {
        &self.table
    }
}

/// Per-state risks of a rule, their supremum, and optionally a Bayes risk.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskReport {
    pub risk0: f64,
    pub risk1: f64,
    pub sup_risk: f64,
    pub bayes_risk: Option<f64>,
}

impl RiskReport {
    pub fn new(risk0: f64, risk1: f64, bayes_risk: Option<f64>) -> Result<Self> {
        for r in [Some(risk0), Some(risk1), bayes_risk].into_iter().flatten() {
            if !(0.0..=1.0).contains(&r) || r.is_nan() {
                return Err(Error::RiskOutOfRange(r));
            }
        }
        Ok(RiskReport {
            risk0,
            risk1,
            sup_risk: risk0.max(risk1),
            bayes_risk,
        })
    }
}

/// A complete description of one panel problem: the accuracy model, the
/// prior on the state, and the numeric knobs shared by every operation.
/// This is the unit the CLI persists and ingests.
#[derive(Debug, Clone, PartialEq)]
pub struct PanelConfig {
    model: AccuracyModel,
    prior: ThetaPrior,
    tie_tolerance: f64,
    seed: u64,
}

impl PanelConfig {
    pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

    pub fn new(
        model: AccuracyModel,
        prior: ThetaPrior,
        tie_tolerance: f64,
        seed: u64,
    ) -> Result<Self> {
        model.validate()?;
        if tie_tolerance < 0.0 || !tie_tolerance.is_finite() {
            return Err(Error::InvalidTolerance(tie_tolerance));
        }
        Ok(PanelConfig {
            model,
            prior,
            tie_tolerance,
            seed,
        })
    }

    pub fn n(&self) -> usize {
        self.model.n()
    }

    pub fn model(&self) -> &AccuracyModel {
        &self.model
    }

    pub fn prior(&self) -> ThetaPrior {
        self.prior
    }

    pub fn tie_tolerance(&self) -> f64 {
        self.tie_tolerance
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}
