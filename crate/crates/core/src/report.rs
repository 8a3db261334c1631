//! Serializable result bundles for consumers such as the command-line
//! front end.
//!
//! The shapes collect what the analysis functions return, with optional
//! sections so one type covers validation-only runs, classical analyses,
//! and correlated analyses.  All numbers are plain `f64` serialized by
//! `serde`, which round-trips them losslessly.

use serde::{Deserialize, Serialize};

use crate::coins::{StatsRegime, StrategyMarginals, StrategyPair, ValidationReport};
use crate::correlated::{EquilibriumPayoffs, NeVerdict, ResidualWeights, SummedVerdict};
use crate::game::BiMatrixGame;
use crate::lhv::{ChshReport, NegativityReport};

/// Echo of the analysed game's constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameSummary {
    pub k: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Whether the constants order as a Prisoner's Dilemma.
    pub prisoners_dilemma: bool,
}

impl GameSummary {
    pub fn of(game: &BiMatrixGame) -> Self {
        Self {
            k: game.k(),
            l: game.l(),
            m: game.m(),
            n: game.n(),
            prisoners_dilemma: game.is_prisoners_dilemma(),
        }
    }
}

/// One pair's payoffs for both players.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub pair: StrategyPair,
    pub alice: PayoffBreakdown,
    pub bob: PayoffBreakdown,
}

/// Payoff of one pair for one player, with whichever companion values the
/// analysis produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffBreakdown {
    /// Recipe payoff (classical analysis) or correlated payoff.
    pub total: f64,
    /// Bilinear payoff at the extracted marginals, for comparison with the
    /// recipe.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bilinear: Option<f64>,
    /// Independent-coin part of a correlated payoff.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical_part: Option<f64>,
    /// Residual-block part of a correlated payoff.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum_part: Option<f64>,
}

impl PayoffBreakdown {
    /// Breakdown carrying only the total.
    pub fn total_only(total: f64) -> Self {
        Self { total, bilinear: None, classical_part: None, quantum_part: None }
    }
}

/// Equilibrium findings of a correlated analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumSummary {
    /// Component sums of the measure.
    pub weights: ResidualWeights,
    /// Corner-equilibrium verdict in the residual weights.
    pub corner: NeVerdict,
    /// Summed deviation-margin condition at the full marginals.
    pub summed: SummedVerdict,
    /// Closed-form payoffs at the (possibly displaced) equilibrium.
    pub payoffs: EquilibriumPayoffs,
}

/// Complete result of one analysis run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub game: GameSummary,
    /// Physical vs signed, judged from the analysed statistics or measure.
    pub regime: StatsRegime,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marginals: Option<StrategyMarginals>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairReport>,
    /// Classical grid equilibria as `(alice, bob)` weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ne_search: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equilibrium: Option<EquilibriumSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chsh: Option<ChshReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negativity: Option<NegativityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization_residual: Option<f64>,
}

impl AnalysisReport {
    /// An empty report for the given game and regime; sections are filled
    /// in by the analysis that produced it.
    pub fn new(game: &BiMatrixGame, regime: StatsRegime) -> Self {
        Self {
            game: GameSummary::of(game),
            regime,
            marginals: None,
            pairs: Vec::new(),
            ne_search: None,
            equilibrium: None,
            chsh: None,
            negativity: None,
            validation: None,
            factorization_residual: None,
        }
    }
}
