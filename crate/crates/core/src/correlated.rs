//! Games played through perfectly correlated first coins.
//!
//! Once the disagreement weights of a measure vanish (see
//! [`PerfectCorrelationMeasure`]), every pair payoff collapses to a closed
//! form in the residual weights.  Each payoff further splits into a
//! *classical part* — what independent coins with the anchored-block
//! marginals would pay — and a *quantum part* carried entirely by the
//! zero-sum residual block.  Negative residual weights displace the
//! corner Nash equilibrium of a Prisoner's Dilemma to negative strategy
//! weights, and for the second representation can remove it outright.
//!
//! Two caveats the formulas inherit from their derivation:
//!
//! * [`residual_ne_check_pd1`] examines the decisive deviation (both
//!   players moving their weight to 1).  For residual weights in `[-1, 0]`
//!   this coincides with full equilibrium; outside that range it is only
//!   the displayed necessary condition.
//! * The bound "equilibrium payoffs never exceed the classical reward" holds
//!   for the *symmetric* displacement `s₂ = ś₂ < 0`.  Asymmetric splits
//!   break it: at `(s₂, ś₂) = (−1, −0.01)` the first representation pays
//!   Alice `1.95 > 1`.  Payoff bounds are therefore asserted only on the
//!   symmetric line.

use serde::{Deserialize, Serialize};

use crate::coins::{CoinChoice, StrategyPair};
use crate::game::{BiMatrixGame, Player};
use crate::lhv::{AgreementFace, PerfectCorrelationMeasure, SignedMeasure};
use crate::{tol, Result};

/// A pair payoff separated into its independent-coin and residual pieces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitPayoff {
    /// Payoff the anchored-block marginals alone would generate.
    pub classical_part: f64,
    /// Contribution of the zero-sum residual block; vanishes for
    /// nonnegative measures.
    pub quantum_part: f64,
    /// Unsplit correlated payoff; equals the sum of the parts to `1e-12`.
    pub total: f64,
}

/// The four block-component sums of a perfectly correlated measure:
/// `s1 = m1+m2`, `ś1 = m1+m3` from the heads block and `s2 = m13+m14`,
/// `ś2 = m13+m15` from the tails block.
///
/// Under the heads anchor the `1`-components are the classical second-coin
/// marginals and the `2`-components the residuals; the tails anchor mirrors
/// the roles.  Either way the full marginals are `s = s1+s2`,
/// `ś = ś1+ś2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualWeights {
    pub s1: f64,
    pub sprime1: f64,
    pub s2: f64,
    pub sprime2: f64,
}

impl ResidualWeights {
    /// Reads the component sums off a reduced measure.
    pub fn of(measure: &PerfectCorrelationMeasure) -> Self {
        let m = measure.measure().weights();
        Self {
            s1: m[0] + m[1],
            sprime1: m[0] + m[2],
            s2: m[12] + m[13],
            sprime2: m[12] + m[14],
        }
    }

    /// Full second-coin marginals `(s, ś)`.
    pub fn totals(&self) -> (f64, f64) {
        (self.s1 + self.s2, self.sprime1 + self.sprime2)
    }
}

/// Component sums arranged by role: which block is anchored (sums to 1) and
/// which carries the zero-sum residual.
struct Components {
    anchored: (f64, f64),
    residual: (f64, f64),
}

fn components(measure: &PerfectCorrelationMeasure) -> Components {
    let w = ResidualWeights::of(measure);
    match measure.anchor() {
        AgreementFace::Heads => Components {
            anchored: (w.s1, w.sprime1),
            residual: (w.s2, w.sprime2),
        },
        AgreementFace::Tails => Components {
            anchored: (w.s2, w.sprime2),
            residual: (w.s1, w.sprime1),
        },
    }
}

/// Classical and quantum parts for one pair, in the player's constants.
fn split_parts(
    game: &BiMatrixGame,
    measure: &PerfectCorrelationMeasure,
    pair: StrategyPair,
    player: Player,
) -> (f64, f64) {
    let (k, l, m, n) = game.constants_for(player);
    let d = k - l - m + n;
    let Components { anchored: (a1, b1), residual: (a2, b2) } = components(measure);
    // Constants seen through the anchor: with heads-anchored first coins
    // the mixed pairs interpolate from K; with tails they interpolate
    // from N.
    let heads = measure.anchor() == AgreementFace::Heads;
    match (pair.alice, pair.bob) {
        (CoinChoice::First, CoinChoice::First) => (if heads { k } else { n }, 0.0),
        (CoinChoice::First, CoinChoice::Second) => {
            if heads {
                (l + (k - l) * b1, (k - l) * b2)
            } else {
                (n + (m - n) * b1, (m - n) * b2)
            }
        }
        (CoinChoice::Second, CoinChoice::First) => {
            if heads {
                (m + (k - m) * a1, (k - m) * a2)
            } else {
                (n + (l - n) * a1, (l - n) * a2)
            }
        }
        (CoinChoice::Second, CoinChoice::Second) => (
            d * a1 * b1 + (l - n) * a1 + (m - n) * b1 + n,
            d * (a1 * b2 + a2 * b1 + a2 * b2) + (l - n) * a2 + (m - n) * b2,
        ),
    }
}

/// Unsplit correlated payoff in the player's constants, per the closed
/// forms: `P(S₁,Ś₁) = K`, `P(S₁,Ś₂) = L + (K−L)·ś`,
/// `P(S₂,Ś₁) = M + (K−M)·s`, and the full bilinear form at `(s, ś)` for
/// `(S₂,Ś₂)` (heads anchor; the tails anchor interpolates from `N`).
fn correlated_payoff_reduced(
    game: &BiMatrixGame,
    measure: &PerfectCorrelationMeasure,
    pair: StrategyPair,
    player: Player,
) -> f64 {
    let (k, l, m, n) = game.constants_for(player);
    let d = k - l - m + n;
    let (s, sprime) = ResidualWeights::of(measure).totals();
    let heads = measure.anchor() == AgreementFace::Heads;
    match (pair.alice, pair.bob) {
        (CoinChoice::First, CoinChoice::First) => {
            if heads {
                k
            } else {
                n
            }
        }
        (CoinChoice::First, CoinChoice::Second) => {
            if heads {
                l + (k - l) * sprime
            } else {
                n + (m - n) * sprime
            }
        }
        (CoinChoice::Second, CoinChoice::First) => {
            if heads {
                m + (k - m) * s
            } else {
                n + (l - n) * s
            }
        }
        (CoinChoice::Second, CoinChoice::Second) => {
            d * s * sprime + (l - n) * s + (m - n) * sprime + n
        }
    }
}

/// Payoff of one strategy pair when the first coins are perfectly
/// correlated.
///
/// The measure must be in the reduced form; anything else is rejected the
/// same way [`SignedMeasure::reduce_perfect_correlation`] rejects it.
pub fn correlated_payoff(
    game: &BiMatrixGame,
    measure: &SignedMeasure,
    pair: StrategyPair,
    player: Player,
) -> Result<f64> {
    let reduced = measure.reduce_perfect_correlation()?;
    Ok(correlated_payoff_reduced(game, &reduced, pair, player))
}

/// Splits the correlated payoff of one pair into classical and quantum
/// parts.
///
/// The parts are evaluated from their own closed forms and the total from
/// the unsplit form, so the sum identity is a genuine cross-check rather
/// than an arithmetic tautology.
pub fn split_payoff(
    game: &BiMatrixGame,
    measure: &SignedMeasure,
    pair: StrategyPair,
    player: Player,
) -> Result<SplitPayoff> {
    let reduced = measure.reduce_perfect_correlation()?;
    let (classical_part, quantum_part) = split_parts(game, &reduced, pair, player);
    let total = correlated_payoff_reduced(game, &reduced, pair, player);
    Ok(SplitPayoff { classical_part, quantum_part, total })
}

/// Verdict of the corner equilibrium check in the residual weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeVerdict {
    /// Both deviation products are ≤ 0 (within `1e-12`).
    pub is_ne: bool,
    /// Some residual weight is negative (below `-1e-12`): the equilibrium
    /// sits outside the classical strategy square.
    pub displaced: bool,
    /// `(s₂ − 1)(1 + ś₂)`: Alice's deviation product.
    pub product_alice: f64,
    /// `(ś₂ − 1)(1 + s₂)`: Bob's deviation product.
    pub product_bob: f64,
}

impl NeVerdict {
    /// Compact token for tables: `ne`, `ne_displaced`, or `not_ne`.
    pub fn label(&self) -> &'static str {
        match (self.is_ne, self.displaced) {
            (false, _) => "not_ne",
            (true, true) => "ne_displaced",
            (true, false) => "ne",
        }
    }
}

/// Checks whether the first-representation dilemma keeps its corner
/// equilibrium at residual weights `(s₂, ś₂)`.
///
/// The equilibrium survives iff `0 ≥ (s₂−1)(1+ś₂)` and `0 ≥ (ś₂−1)(1+s₂)`
/// — the margin conditions against the decisive deviation.  Negative
/// residual weights keep the equilibrium but displace it off the classical
/// square, which the `displaced` flag reports.
pub fn residual_ne_check_pd1(s2: f64, sprime2: f64) -> NeVerdict {
    let product_alice = (s2 - 1.0) * (1.0 + sprime2);
    let product_bob = (sprime2 - 1.0) * (1.0 + s2);
    NeVerdict {
        is_ne: product_alice <= tol::ANALYTIC && product_bob <= tol::ANALYTIC,
        displaced: s2 < -tol::ANALYTIC || sprime2 < -tol::ANALYTIC,
        product_alice,
        product_bob,
    }
}

/// Verdict of the summed equilibrium condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummedVerdict {
    /// `margin ≥ 0` (within `1e-12`).
    pub holds: bool,
    /// `(s−1)(D·ś+c) + (ś−1)(D·s+c)`: the two deviation margins added.
    pub margin: f64,
}

impl SummedVerdict {
    /// Compact token for tables: `holds` or `violated`.
    pub fn label(&self) -> &'static str {
        if self.holds {
            "holds"
        } else {
            "violated"
        }
    }
}

/// Adds the two corner-equilibrium margins against the deviation to weight
/// 1 for both players.
///
/// A negative sum proves at least one player gains by deviating, so `(s, ś)`
/// is not an equilibrium.  For the second-representation dilemma
/// `(3, 0, 5, 0.2)` the margin is `3.6·[(4(s+ś)+1)/9 − s·ś]`, which on the
/// symmetric line `s = ś = t` flips sign exactly at `t = −1/9`
/// (`s + ś = −2/9`); any symmetric displacement below `−0.25` is therefore
/// comfortably past the boundary.
pub fn summed_ne_condition(game: &BiMatrixGame, s: f64, sprime: f64) -> SummedVerdict {
    let (d, c) = game.margin_coefficients();
    let margin = (s - 1.0) * (d * sprime + c) + (sprime - 1.0) * (d * s + c);
    SummedVerdict { holds: margin >= -tol::ANALYTIC, margin }
}

/// Which closed-form payoff family to evaluate at the displaced
/// equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Dilemma constants `(3, 0, 5, 1)`; the game argument is ignored.
    Pd1,
    /// Dilemma constants `(3, 0, 5, 0.2)`; the game argument is ignored.
    Pd2,
    /// The game's own constants in the general corner formula.
    General,
}

/// Players' payoffs at the (possibly displaced) corner equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumPayoffs {
    pub alice: f64,
    pub bob: f64,
    /// Set when a residual weight leaves `[-1, 1]`, the range reachable by
    /// measures whose marginals stay within the signed unit square.  The
    /// formulas still evaluate; treat the numbers as extrapolation.
    pub out_of_range: bool,
}

/// Evaluates the equilibrium payoffs at residual weights `(s₂, ś₂)`.
///
/// The corner's classical part pays `N` to both players; the residual block
/// adds `D·s₂·ś₂ + (L−N)·s₂ + (M−N)·ś₂` for Alice (Bob swaps `L↔M`).  The
/// [`Representation::Pd1`] and [`Representation::Pd2`] variants evaluate
/// the pinned specialisations `ś₂(4−s₂) − s₂ + 1` and
/// `ś₂(4.8−1.8·s₂) + 0.2(1−s₂)`.
pub fn equilibrium_payoffs_quantum(
    game: &BiMatrixGame,
    s2: f64,
    sprime2: f64,
    representation: Representation,
) -> EquilibriumPayoffs {
    let (alice, bob) = match representation {
        Representation::Pd1 => (
            sprime2 * (4.0 - s2) - s2 + 1.0,
            s2 * (4.0 - sprime2) - sprime2 + 1.0,
        ),
        Representation::Pd2 => (
            sprime2 * (4.8 - 1.8 * s2) + 0.2 * (1.0 - s2),
            s2 * (4.8 - 1.8 * sprime2) + 0.2 * (1.0 - sprime2),
        ),
        Representation::General => {
            let corner = |player: Player, own: f64, other: f64| {
                let (k, l, m, n) = game.constants_for(player);
                let d = k - l - m + n;
                n + d * own * other + (l - n) * own + (m - n) * other
            };
            (corner(Player::Alice, s2, sprime2), corner(Player::Bob, s2, sprime2))
        }
    };
    let out_of_range = s2.abs() > 1.0 + tol::ANALYTIC || sprime2.abs() > 1.0 + tol::ANALYTIC;
    EquilibriumPayoffs { alice, bob, out_of_range }
}
