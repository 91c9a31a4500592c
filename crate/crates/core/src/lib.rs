//! Optimal aggregation of binary expert opinions.
//!
//! Given a panel of `n` experts each voting 0/1 on a hidden binary state,
//! this crate builds the decision rules that are optimal under a prior
//! (weighted vote rules minimizing Bayes risk) and under worst-case
//! accuracy assumptions (minimax rules), evaluates their exact and Monte
//! Carlo risks, and verifies optimality claims by exhaustive search over
//! every decision table at small panel sizes.
//!
//! Module map:
//!
//! - [`model`]: validated domain types (opinion vectors, accuracy models,
//!   priors, decision tables, risk summaries).
//! - [`bayes`]: posterior probabilities and construction of the optimal
//!   weighted vote rules, for known accuracies and for Beta priors over
//!   unknown accuracies.
//! - [`risk`]: exact risk per state, Bayes risk, constant-risk checks,
//!   suprema over accuracy boxes, and seeded Monte Carlo estimates.
//! - [`minimax`]: named rules (majority, coin flip, interval minimax),
//!   exhaustive Bayes/minimax searches over the full rule space, and
//!   least-favorable-prior scans.

pub mod bayes;
pub mod minimax;
pub mod model;
pub mod risk;

pub use model::{
    AccuracyModel, Action, DecisionRule, Error, OpinionVector, PanelConfig, Result, RiskReport,
    Theta, ThetaPrior,
};
