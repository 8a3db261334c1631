//! Four-coin statistics: the experimental face of a 2×2 game.
//!
//! Each player owns two coins — Alice `S₁, S₂`, Bob `Ś₁, Ś₂` — and every
//! round one coin per player is tossed.  The data of an experiment is a
//! 16-entry vector of joint outcome frequencies, four entries per strategy
//! pair, stored block-by-block:
//!
//! | entries   | pair        | order within block |
//! |-----------|-------------|--------------------|
//! | p1..p4    | `(S₁, Ś₁)`  | HH, HT, TH, TT     |
//! | p5..p8    | `(S₁, Ś₂)`  | HH, HT, TH, TT     |
//! | p9..p12   | `(S₂, Ś₁)`  | HH, HT, TH, TT     |
//! | p13..p16  | `(S₂, Ś₂)`  | HH, HT, TH, TT     |
//!
//! A payoff recipe turns a block into money: heads counts as playing
//! weight 1.  Valid statistics are normalised per block and give each coin
//! a heads probability that does not depend on which opposing coin it was
//! tossed against; [`validate`] reports how far a vector strays from that.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::game::{BiMatrixGame, Player};
use crate::tol;

/// Which of their two coins a player tosses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoinChoice {
    First,
    Second,
}

/// One coin per player: selects a 4-entry block of the statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrategyPair {
    pub alice: CoinChoice,
    pub bob: CoinChoice,
}

impl StrategyPair {
    /// All four pairs in block order.
    pub const ALL: [StrategyPair; 4] = [
        StrategyPair { alice: CoinChoice::First, bob: CoinChoice::First },
        StrategyPair { alice: CoinChoice::First, bob: CoinChoice::Second },
        StrategyPair { alice: CoinChoice::Second, bob: CoinChoice::First },
        StrategyPair { alice: CoinChoice::Second, bob: CoinChoice::Second },
    ];

    pub const fn new(alice: CoinChoice, bob: CoinChoice) -> Self {
        Self { alice, bob }
    }

    /// Position of this pair's block, 0..4.
    pub fn block_index(self) -> usize {
        let a = matches!(self.alice, CoinChoice::Second) as usize;
        let b = matches!(self.bob, CoinChoice::Second) as usize;
        2 * a + b
    }

    /// Compact token used in files and tables: `S1-Sp1` … `S2-Sp2`.
    pub fn label(self) -> &'static str {
        match self.block_index() {
            0 => "S1-Sp1",
            1 => "S1-Sp2",
            2 => "S2-Sp1",
            _ => "S2-Sp2",
        }
    }

    /// Inverse of [`label`](Self::label).
    pub fn parse(token: &str) -> Option<Self> {
        StrategyPair::ALL.into_iter().find(|p| p.label() == token)
    }
}

impl fmt::Display for StrategyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for StrategyPair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for StrategyPair {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let token = String::deserialize(deserializer)?;
        StrategyPair::parse(&token)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown strategy pair `{token}`")))
    }
}

/// Joint outcome of one round; Alice's face first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    HeadsHeads,
    HeadsTails,
    TailsHeads,
    TailsTails,
}

impl Outcome {
    /// All outcomes in within-block storage order.
    pub const ALL: [Outcome; 4] = [
        Outcome::HeadsHeads,
        Outcome::HeadsTails,
        Outcome::TailsHeads,
        Outcome::TailsTails,
    ];

    /// Position inside a 4-entry block, 0..4.
    pub fn slot(self) -> usize {
        match self {
            Outcome::HeadsHeads => 0,
            Outcome::HeadsTails => 1,
            Outcome::TailsHeads => 2,
            Outcome::TailsTails => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::HeadsHeads => "HH",
            Outcome::HeadsTails => "HT",
            Outcome::TailsHeads => "TH",
            Outcome::TailsTails => "TT",
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        Outcome::ALL.into_iter().find(|o| o.label() == token)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Whether a statistics vector is an ordinary probability table or contains
/// negative entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatsRegime {
    /// All entries ≥ 0 (up to the analytic tolerance): can be sampled.
    Physical,
    /// At least one negative entry: analytic bookkeeping only.
    Signed,
}

/// The 16 joint outcome frequencies of a four-coin experiment.
///
/// Construction only requires finite entries; normalisation and marginal
/// consistency are *reported* by [`validate`] rather than enforced, so that
/// defective tables (mis-normalised input files, raw empirical counts) can
/// still be inspected.  Operations that need valid statistics gate on
/// [`validate`] themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct FourCoinStats {
    p: [f64; 16],
    regime: StatsRegime,
}

impl FourCoinStats {
    /// Wraps a raw 16-entry vector; every entry must be finite.
    ///
    /// The regime tag is derived: [`StatsRegime::Signed`] iff some entry is
    /// below `-1e-12`.
    pub fn new(p: [f64; 16]) -> Result<Self> {
        for &value in &p {
            ensure_finite("joint probability", value)?;
        }
        let regime = if p.iter().any(|&v| v < -tol::ANALYTIC) {
            StatsRegime::Signed
        } else {
            StatsRegime::Physical
        };
        Ok(Self { p, regime })
    }

    /// All four coins fair and independent: every entry 1/4 in its block.
    pub fn uniform() -> Self {
        Self { p: [0.25; 16], regime: StatsRegime::Physical }
    }

    /// Product-form statistics generated by per-coin heads probabilities.
    ///
    /// Every block becomes the outer product of the two selected marginals,
    /// so the result validates exactly and factorises with residual 0.
    pub fn from_marginals(marginals: &StrategyMarginals) -> Result<Self> {
        marginals.check_finite()?;
        let mut p = [0.0; 16];
        for pair in StrategyPair::ALL {
            let (a, b) = marginals.pair_weights(pair);
            let base = 4 * pair.block_index();
            p[base] = a * b;
            p[base + 1] = a * (1.0 - b);
            p[base + 2] = (1.0 - a) * b;
            p[base + 3] = (1.0 - a) * (1.0 - b);
        }
        FourCoinStats::new(p)
    }

    /// The raw entries in block order.
    pub fn probabilities(&self) -> &[f64; 16] {
        &self.p
    }

    /// The 4-entry block for one strategy pair, in HH, HT, TH, TT order.
    pub fn block(&self, pair: StrategyPair) -> [f64; 4] {
        let base = 4 * pair.block_index();
        [self.p[base], self.p[base + 1], self.p[base + 2], self.p[base + 3]]
    }

    pub fn regime(&self) -> StatsRegime {
        self.regime
    }
}

/// Heads probability of each coin, extracted from (or generating)
/// statistics.
///
/// In the classical regime each value lies in `[0, 1]`; signed statistics
/// can push them outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyMarginals {
    /// Heads probability of Alice's first coin `S₁`.
    pub alice_first: f64,
    /// Heads probability of Alice's second coin `S₂`.
    pub alice_second: f64,
    /// Heads probability of Bob's first coin `Ś₁`.
    pub bob_first: f64,
    /// Heads probability of Bob's second coin `Ś₂`.
    pub bob_second: f64,
}

impl StrategyMarginals {
    /// The `(alice, bob)` weights selected by a strategy pair.
    pub fn pair_weights(&self, pair: StrategyPair) -> (f64, f64) {
        let a = match pair.alice {
            CoinChoice::First => self.alice_first,
            CoinChoice::Second => self.alice_second,
        };
        let b = match pair.bob {
            CoinChoice::First => self.bob_first,
            CoinChoice::Second => self.bob_second,
        };
        (a, b)
    }

    fn check_finite(&self) -> Result<()> {
        ensure_finite("marginal alice_first", self.alice_first)?;
        ensure_finite("marginal alice_second", self.alice_second)?;
        ensure_finite("marginal bob_first", self.bob_first)?;
        ensure_finite("marginal bob_second", self.bob_second)?;
        Ok(())
    }
}

/// Diagnostic summary produced by [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    /// Per-block deviation of the sum from 1, in block order.
    pub block_residuals: [f64; 4],
    /// Residuals of the four cross-block identities, in the order
    /// `p1+p2−p5−p6`, `p1+p3−p9−p11`, `p9+p10−p13−p14`, `p5+p7−p13−p15`.
    pub consistency_residuals: [f64; 4],
    /// 1-based indices of entries below `-1e-12`.
    pub negative_entries: Vec<usize>,
}

impl ValidationReport {
    /// Largest absolute residual across both families.
    pub fn max_abs_residual(&self) -> f64 {
        self.block_residuals
            .iter()
            .chain(self.consistency_residuals.iter())
            .fold(0.0, |acc, r| acc.max(r.abs()))
    }

    /// True when every residual is within `tolerance`.  Negative entries are
    /// regime information, not a validity failure.
    pub fn is_within(&self, tolerance: f64) -> bool {
        self.max_abs_residual() <= tolerance
    }
}

/// Names and residuals of the four cross-block identities.
const CONSISTENCY_CONSTRAINTS: [(&str, [usize; 2], [usize; 2]); 4] = [
    ("p1+p2 = p5+p6", [1, 2], [5, 6]),
    ("p1+p3 = p9+p11", [1, 3], [9, 11]),
    ("p9+p10 = p13+p14", [9, 10], [13, 14]),
    ("p5+p7 = p13+p15", [5, 7], [13, 15]),
];

fn index_sum(p: &[f64; 16], indices: [usize; 2]) -> f64 {
    p[indices[0] - 1] + p[indices[1] - 1]
}

/// Checks normalisation per block, the four marginal-consistency identities,
/// and flags negative entries.
pub fn validate(stats: &FourCoinStats) -> ValidationReport {
    let p = stats.probabilities();
    let mut block_residuals = [0.0; 4];
    for pair in StrategyPair::ALL {
        let block = stats.block(pair);
        block_residuals[pair.block_index()] = block.iter().sum::<f64>() - 1.0;
    }
    let mut consistency_residuals = [0.0; 4];
    for (slot, (_, lhs, rhs)) in CONSISTENCY_CONSTRAINTS.iter().enumerate() {
        consistency_residuals[slot] = index_sum(p, *lhs) - index_sum(p, *rhs);
    }
    let negative_entries = p
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < -tol::ANALYTIC)
        .map(|(i, _)| i + 1)
        .collect();
    ValidationReport { block_residuals, consistency_residuals, negative_entries }
}

/// [`extract_marginals`] with a caller-chosen residual tolerance.
pub fn extract_marginals_with_tolerance(
    stats: &FourCoinStats,
    tolerance: f64,
) -> Result<StrategyMarginals> {
    let report = validate(stats);
    for (slot, residual) in report.block_residuals.iter().enumerate() {
        if residual.abs() > tolerance {
            return Err(Error::Normalization {
                quantity: format!("block {} ({})", slot + 1, StrategyPair::ALL[slot].label()),
                sum: residual + 1.0,
                expected: 1.0,
                tolerance,
            });
        }
    }
    for (slot, residual) in report.consistency_residuals.iter().enumerate() {
        if residual.abs() > tolerance {
            return Err(Error::ConsistencyViolation {
                constraint: CONSISTENCY_CONSTRAINTS[slot].0,
                residual: *residual,
                tolerance,
            });
        }
    }
    let p = stats.probabilities();
    Ok(StrategyMarginals {
        alice_first: p[0] + p[1],
        alice_second: p[8] + p[9],
        bob_first: p[0] + p[2],
        bob_second: p[4] + p[6],
    })
}

/// Reads the per-coin heads probabilities `(r, s, ŕ, ś)` off the statistics:
/// `r = p1+p2`, `s = p9+p10`, `ŕ = p1+p3`, `ś = p5+p7`.
///
/// Rejects statistics whose normalisation or consistency residuals exceed
/// `1e-9`, naming the first violated constraint.
pub fn extract_marginals(stats: &FourCoinStats) -> Result<StrategyMarginals> {
    extract_marginals_with_tolerance(stats, tol::INPUT)
}

/// Money value of one block: heads is played as weight 1, so the four
/// outcome frequencies weight the four payoff constants directly.
pub fn recipe_payoff(
    stats: &FourCoinStats,
    game: &BiMatrixGame,
    pair: StrategyPair,
    player: Player,
) -> f64 {
    let (k, l, m, n) = game.constants_for(player);
    let [hh, ht, th, tt] = stats.block(pair);
    k * hh + l * ht + m * th + n * tt
}

/// How far the statistics are from the product form generated by their own
/// marginals: the largest absolute entry-wise gap.
///
/// Zero (up to float noise) means each block is the outer product of its
/// marginals — the statistics describe independent coins.  Propagates the
/// rejection of [`extract_marginals`] for inconsistent input.
pub fn factorization_residual(stats: &FourCoinStats) -> Result<f64> {
    let marginals = extract_marginals(stats)?;
    let product = FourCoinStats::from_marginals(&marginals)?;
    let residual = stats
        .probabilities()
        .iter()
        .zip(product.probabilities())
        .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
    Ok(residual)
}

/// One linear support constraint on the statistics: a sum of two entries
/// pinned to a required value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportConstraint {
    /// 1-based entry indices whose sum is constrained.
    pub indices: [usize; 2],
    /// Required value of the sum.
    pub required: f64,
}

impl SupportConstraint {
    /// Signed gap between the constrained sum and its required value.
    pub fn residual(&self, stats: &FourCoinStats) -> f64 {
        index_sum(stats.probabilities(), self.indices) - self.required
    }
}

impl fmt::Display for SupportConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{} + p{} = {}", self.indices[0], self.indices[1], self.required)
    }
}

/// Statistics-level constraints forced by a corner Nash equilibrium of the
/// game played through the given strategy pair.
///
/// Derivations exist for two corner patterns at weights `(0, 0)`:
///
/// * pair `(S₂, Ś₂)`: `s = 0` and `ś = 0`, i.e. `p9+p10 = 0`, `p5+p7 = 0`;
/// * pair `(S₁, Ś₂)`: `r = 0` and `ś = 0`, i.e. `p1+p2 = 0`, `p5+p7 = 0`.
///
/// Any other pattern, non-corner weights, or a game where `(0, 0)` is not an
/// equilibrium (`L > N`) is rejected.
pub fn ne_support_constraints(
    game: &BiMatrixGame,
    pair: StrategyPair,
    weights: (f64, f64),
) -> Result<Vec<SupportConstraint>> {
    if game.l() > game.n() + tol::ANALYTIC {
        return Err(Error::UnsupportedPattern {
            detail: format!(
                "weights (0, 0) are not an equilibrium of this game (L = {} > N = {})",
                game.l(),
                game.n()
            ),
        });
    }
    if weights.0.abs() > tol::ANALYTIC || weights.1.abs() > tol::ANALYTIC {
        return Err(Error::UnsupportedPattern {
            detail: format!(
                "only the corner pattern (0, 0) is derived, got ({}, {})",
                weights.0, weights.1
            ),
        });
    }
    let alice_indices = match (pair.alice, pair.bob) {
        (CoinChoice::Second, CoinChoice::Second) => [9, 10],
        (CoinChoice::First, CoinChoice::Second) => [1, 2],
        _ => {
            return Err(Error::UnsupportedPattern {
                detail: format!("no derivation for the pair {}", pair.label()),
            })
        }
    };
    Ok(vec![
        SupportConstraint { indices: alice_indices, required: 0.0 },
        SupportConstraint { indices: [5, 7], required: 0.0 },
    ])
}
