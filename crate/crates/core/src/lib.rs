//! Bimatrix games played through coins, hidden variables, and EPR-type
//! correlations.
//!
//! The crate connects three descriptions of the same 2×2 two-player game
//! and follows what happens to its Nash equilibria when the connecting
//! statistics stop being classical:
//!
//! 1. **Game model** ([`game`]) — the bilinear payoff form over strategy
//!    weights, deviation margins, and an exhaustive grid equilibrium
//!    search.
//! 2. **Four-coin statistics** ([`coins`]) — each player owns two coins;
//!    a referee publishes joint outcome frequencies per coin pair, and a
//!    payoff recipe makes those frequencies worth money.  Valid statistics
//!    reproduce the game exactly ([`coins::extract_marginals`],
//!    [`coins::recipe_payoff`]).
//! 3. **Hidden-variable measures** ([`lhv`]) — a deterministic 16-row
//!    outcome table with one weight per row.  Nonnegative weights stay
//!    inside the classical world (CHSH bound ≤ 2); *signed* weights can
//!    violate the bound while every observable block still sums to 1.
//!
//! The payoff layer for perfectly correlated first coins lives in
//! [`correlated`]: closed-form pair payoffs, their split into classical
//! and residual ("quantum") parts, and the two headline effects for the
//! Prisoner's Dilemma — the corner equilibrium *displaced* to negative
//! strategy weights, or *removed entirely* in the second representation.
//! [`montecarlo`] samples physically realizable statistics to show the
//! recipe payoffs emerge from finite tossing, and [`report`] bundles
//! results for serialization.
//!
//! # Example
//!
//! ```
//! use epr_game_lab::{BiMatrixGame, PerfectCorrelationMeasure, Player, StrategyPair};
//! use epr_game_lab::correlated::{correlated_payoff, residual_ne_check_pd1, ResidualWeights};
//!
//! // Mutual defection carried by perfectly correlated coins, with a small
//! // negative residual weight.
//! let measure = PerfectCorrelationMeasure::new(
//!     [0.0, 0.0, 0.0, 1.0],
//!     [-0.1, 0.06, 0.04, 0.0],
//! )?;
//! let game = BiMatrixGame::prisoners_dilemma_v1();
//! let weights = ResidualWeights::of(&measure);
//!
//! // The equilibrium survives but sits at negative strategy weights …
//! let verdict = residual_ne_check_pd1(weights.s2, weights.sprime2);
//! assert_eq!(verdict.label(), "ne_displaced");
//!
//! // … and pays less than the classical punishment value 1.
//! let pair = StrategyPair::ALL[3];
//! let payoff = correlated_payoff(&game, measure.measure(), pair, Player::Alice)?;
//! assert!(payoff < 1.0);
//! # Ok::<(), epr_game_lab::Error>(())
//! ```

pub mod coins;
pub mod correlated;
pub mod error;
pub mod game;
pub mod lhv;
pub mod montecarlo;
pub mod report;

/// Numeric tolerances used across the crate.
pub mod tol {
    /// Slack for analytically exact identities and constructed inputs
    /// (normalisation of measures, margin signs, split consistency).
    pub const ANALYTIC: f64 = 1e-12;
    /// Slack for user-supplied statistics (file input, sampled blocks).
    pub const INPUT: f64 = 1e-9;
}

pub use coins::{
    extract_marginals, factorization_residual, ne_support_constraints, recipe_payoff, validate,
    CoinChoice, FourCoinStats, Outcome, StatsRegime, StrategyMarginals, StrategyPair,
    SupportConstraint, ValidationReport,
};
pub use correlated::{
    correlated_payoff, equilibrium_payoffs_quantum, residual_ne_check_pd1, split_payoff,
    summed_ne_condition, Representation, ResidualWeights, SplitPayoff,
};
pub use error::{Error, Result};
pub use game::{
    bilinear_payoff, classical_ne_search, ne_margins, BiMatrixGame, Player, Profile, Regime,
    StrategyWeight,
};
pub use lhv::{
    chsh_value, correlator, negativity_report, probabilities_from_measure,
    strategy_probs_from_measure, AgreementFace, ChshReport, JointProbabilities, NegativityReport,
    OutcomeTable, PerfectCorrelationMeasure, SignedMeasure,
};
pub use montecarlo::{
    empirical_payoff, estimate_stats, sample_rounds, EstimatedStats, PairPolicy, PayoffEstimate,
    TossRound, TossTranscript,
};
pub use report::{AnalysisReport, EquilibriumSummary, GameSummary, PairReport, PayoffBreakdown};
