//! Local-hidden-variable models of the four-coin experiment.
//!
//! A hidden variable λ takes one of 16 values; each value deterministically
//! fixes the face of all four coins.  The [`OutcomeTable`] enumerates these
//! assignments in the canonical order: value 1 maps every coin to heads,
//! value 16 every coin to tails, and in between the sign pattern counts down
//! like a 4-bit binary number over the columns `(S₁, Ś₁, S₂, Ś₂)`.
//!
//! A [`SignedMeasure`] puts a weight `m_i` on each value, constrained only
//! to sum to 1 — individual weights may be negative.  Every observable joint
//! probability is a sum of weights read off the table, every correlator a
//! signed sum, and the CHSH combination of correlators is bounded by 2
//! exactly when the measure is nonnegative; signed measures can break the
//! bound, which is the whole point of admitting them.

use serde::{Deserialize, Serialize};

use crate::coins::{CoinChoice, FourCoinStats, Outcome, StrategyMarginals, StrategyPair};
use crate::error::{ensure_finite, Error, Result};
use crate::tol;

/// One of the four coins, as a column of the outcome table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    AliceFirst,
    BobFirst,
    AliceSecond,
    BobSecond,
}

impl Observable {
    /// Column position in the table, and bit position (from the top) in the
    /// enumeration of sign patterns.
    fn column(self) -> usize {
        match self {
            Observable::AliceFirst => 0,
            Observable::BobFirst => 1,
            Observable::AliceSecond => 2,
            Observable::BobSecond => 3,
        }
    }

    /// The pair of columns a strategy pair observes, Alice's first.
    pub fn pair_columns(pair: StrategyPair) -> (Observable, Observable) {
        let alice = match pair.alice {
            CoinChoice::First => Observable::AliceFirst,
            CoinChoice::Second => Observable::AliceSecond,
        };
        let bob = match pair.bob {
            CoinChoice::First => Observable::BobFirst,
            CoinChoice::Second => Observable::BobSecond,
        };
        (alice, bob)
    }
}

/// Deterministic coin assignment of each hidden-variable value.
///
/// Entry `+1` is heads, `-1` tails.  Row `i` (0-based) shows tails exactly
/// on the columns whose bit is set in `i`, with `S₁` the highest bit — the
/// standard descending enumeration of the 16 sign patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTable {
    rows: [[i8; 4]; 16],
}

const fn build_rows() -> [[i8; 4]; 16] {
    let mut rows = [[0i8; 4]; 16];
    let mut i = 0;
    while i < 16 {
        let mut col = 0;
        while col < 4 {
            let bit = 3 - col;
            rows[i][col] = if i >> bit & 1 == 0 { 1 } else { -1 };
            col += 1;
        }
        i += 1;
    }
    rows
}

/// The canonical table, built once at compile time.
static OUTCOME_TABLE: OutcomeTable = OutcomeTable { rows: build_rows() };

impl OutcomeTable {
    /// The canonical 16-row table.
    pub fn standard() -> &'static OutcomeTable {
        &OUTCOME_TABLE
    }

    /// Sign (`+1` heads, `-1` tails) of one observable under hidden value
    /// `row` (0-based).
    pub fn sign(&self, row: usize, observable: Observable) -> i8 {
        self.rows[row][observable.column()]
    }

    /// All sixteen sign rows in order.
    pub fn rows(&self) -> &[[i8; 4]; 16] {
        &self.rows
    }
}

/// A weight per hidden-variable value, summing to 1; negative entries
/// allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedMeasure {
    m: [f64; 16],
}

impl SignedMeasure {
    /// Wraps raw weights; all finite, total within `1e-12` of 1.
    pub fn new(m: [f64; 16]) -> Result<Self> {
        for &value in &m {
            ensure_finite("measure weight", value)?;
        }
        let sum: f64 = m.iter().sum();
        if (sum - 1.0).abs() > tol::ANALYTIC {
            return Err(Error::Normalization {
                quantity: "measure total".into(),
                sum,
                expected: 1.0,
                tolerance: tol::ANALYTIC,
            });
        }
        Ok(Self { m })
    }

    /// The maximally ignorant measure: 1/16 everywhere.
    pub fn uniform() -> Self {
        Self { m: [1.0 / 16.0; 16] }
    }

    pub fn weights(&self) -> &[f64; 16] {
        &self.m
    }

    /// True when some weight is below `-1e-12`.
    pub fn is_signed(&self) -> bool {
        self.m.iter().any(|&v| v < -tol::ANALYTIC)
    }

    /// Reduces to the perfectly correlated form, if this measure is in it.
    ///
    /// Requires `m5..m12` to vanish (within `1e-12`) and the agreement
    /// weight `m1+m2+m3+m4` to be 0 or 1, which fixes the anchor face.
    /// Residual weights inside the tolerance are snapped to exact zeros.
    pub fn reduce_perfect_correlation(&self) -> Result<PerfectCorrelationMeasure> {
        for (i, &value) in self.m[4..12].iter().enumerate() {
            if value.abs() > tol::ANALYTIC {
                return Err(Error::NotReduced {
                    detail: format!("m{} = {value} but disagreement weights must vanish", i + 5),
                });
            }
        }
        let first = [self.m[0], self.m[1], self.m[2], self.m[3]];
        let last = [self.m[12], self.m[13], self.m[14], self.m[15]];
        let agreement: f64 = first.iter().sum();
        if (agreement - 1.0).abs() <= tol::ANALYTIC {
            PerfectCorrelationMeasure::with_anchor(AgreementFace::Heads, first, last)
        } else if agreement.abs() <= tol::ANALYTIC {
            PerfectCorrelationMeasure::with_anchor(AgreementFace::Tails, first, last)
        } else {
            Err(Error::NotReduced {
                detail: format!("agreement weight m1+m2+m3+m4 = {agreement} is neither 0 nor 1"),
            })
        }
    }
}

/// The 16 joint outcome probabilities induced by a measure, in the same
/// block layout as [`FourCoinStats`].
///
/// Only obtainable through [`probabilities_from_measure`], so the entries
/// always descend from an actual measure via the outcome table.
#[derive(Debug, Clone, PartialEq)]
pub struct JointProbabilities {
    p: [f64; 16],
}

impl JointProbabilities {
    pub fn probabilities(&self) -> &[f64; 16] {
        &self.p
    }

    /// The 4-entry block for one strategy pair, in HH, HT, TH, TT order.
    pub fn block(&self, pair: StrategyPair) -> [f64; 4] {
        let base = 4 * pair.block_index();
        [self.p[base], self.p[base + 1], self.p[base + 2], self.p[base + 3]]
    }

    /// Repackages the probabilities as four-coin statistics.
    pub fn to_stats(&self) -> Result<FourCoinStats> {
        FourCoinStats::new(self.p)
    }
}

/// Face pattern of a joint outcome as signs, heads = `+1`.
fn outcome_signs(outcome: Outcome) -> (i8, i8) {
    match outcome {
        Outcome::HeadsHeads => (1, 1),
        Outcome::HeadsTails => (1, -1),
        Outcome::TailsHeads => (-1, 1),
        Outcome::TailsTails => (-1, -1),
    }
}

/// Sums measure weights over the table: the probability of outcome `o` under
/// pair `(A, B)` collects every hidden value whose row shows `o` on the
/// observed columns.
pub fn probabilities_from_measure(measure: &SignedMeasure) -> JointProbabilities {
    let table = OutcomeTable::standard();
    let mut p = [0.0; 16];
    for pair in StrategyPair::ALL {
        let (obs_a, obs_b) = Observable::pair_columns(pair);
        let base = 4 * pair.block_index();
        for outcome in Outcome::ALL {
            let (sign_a, sign_b) = outcome_signs(outcome);
            let mut total = 0.0;
            for (row, &weight) in measure.weights().iter().enumerate() {
                if table.sign(row, obs_a) == sign_a && table.sign(row, obs_b) == sign_b {
                    total += weight;
                }
            }
            p[base + outcome.slot()] = total;
        }
    }
    JointProbabilities { p }
}

/// Correlator `E(A, B) = Σᵢ mᵢ · sign(A|i) · sign(B|i)` of the two observed
/// coins; equals `p_HH − p_HT − p_TH + p_TT` of the pair's block.
pub fn correlator(measure: &SignedMeasure, pair: StrategyPair) -> f64 {
    let table = OutcomeTable::standard();
    let (obs_a, obs_b) = Observable::pair_columns(pair);
    measure
        .weights()
        .iter()
        .enumerate()
        .map(|(row, &weight)| {
            weight * f64::from(table.sign(row, obs_a)) * f64::from(table.sign(row, obs_b))
        })
        .sum()
}

/// Value and verdict of the CHSH combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshReport {
    /// `E(S₁,Ś₁) + E(S₁,Ś₂) + E(S₂,Ś₁) − E(S₂,Ś₂)`.
    pub value: f64,
    /// True when `|value| > 2 + 1e-12`: impossible for nonnegative measures.
    pub violates: bool,
}

/// Evaluates the CHSH combination of the four correlators.
pub fn chsh_value(measure: &SignedMeasure) -> ChshReport {
    let [e11, e12, e21, e22] =
        StrategyPair::ALL.map(|pair| correlator(measure, pair));
    let value = e11 + e12 + e21 - e22;
    ChshReport { value, violates: value.abs() > 2.0 + tol::ANALYTIC }
}

/// Which face both players' coins agree on with certainty in a perfectly
/// correlated measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgreementFace {
    /// Agreement weight sits on values 1–4: first coins surely heads.
    Heads,
    /// Agreement weight sits on values 13–16: first coins surely tails.
    Tails,
}

/// A measure describing perfect correlation between the players' first
/// coins: all disagreement weights `m5..m12` vanish and the total agreement
/// weight sits entirely on one face.
///
/// With the heads anchor the first-coin marginals are pinned to 1 and the
/// tails-block weights `m13..m16` sum to 0 — they are the *residual*
/// weights that drive every departure from the classical game.  The tails
/// anchor mirrors this (first-coin marginals 0, heads block residual).
#[derive(Debug, Clone, PartialEq)]
pub struct PerfectCorrelationMeasure {
    measure: SignedMeasure,
    anchor: AgreementFace,
}

impl PerfectCorrelationMeasure {
    /// Heads-anchored measure from the two non-vanishing blocks:
    /// `m1..m4` must sum to 1 and `m13..m16` to 0, within `1e-12`.
    pub fn new(heads_block: [f64; 4], tails_block: [f64; 4]) -> Result<Self> {
        Self::with_anchor(AgreementFace::Heads, heads_block, tails_block)
    }

    /// Anchored variant; the block sums swap roles for the tails anchor.
    pub fn with_anchor(
        anchor: AgreementFace,
        heads_block: [f64; 4],
        tails_block: [f64; 4],
    ) -> Result<Self> {
        let (heads_target, tails_target) = match anchor {
            AgreementFace::Heads => (1.0, 0.0),
            AgreementFace::Tails => (0.0, 1.0),
        };
        let heads_sum: f64 = heads_block.iter().sum();
        if (heads_sum - heads_target).abs() > tol::ANALYTIC {
            return Err(Error::Normalization {
                quantity: "agreement block m1..m4".into(),
                sum: heads_sum,
                expected: heads_target,
                tolerance: tol::ANALYTIC,
            });
        }
        let tails_sum: f64 = tails_block.iter().sum();
        if (tails_sum - tails_target).abs() > tol::ANALYTIC {
            return Err(Error::Normalization {
                quantity: "agreement block m13..m16".into(),
                sum: tails_sum,
                expected: tails_target,
                tolerance: tol::ANALYTIC,
            });
        }
        let mut m = [0.0; 16];
        m[..4].copy_from_slice(&heads_block);
        m[12..].copy_from_slice(&tails_block);
        Ok(Self { measure: SignedMeasure::new(m)?, anchor })
    }

    pub fn measure(&self) -> &SignedMeasure {
        &self.measure
    }

    pub fn anchor(&self) -> AgreementFace {
        self.anchor
    }

    /// Weights of the anchored agreement block `m1..m4` (heads anchor) in
    /// table order; for the tails anchor this is the block summing to 0.
    pub fn heads_block(&self) -> [f64; 4] {
        let m = self.measure.weights();
        [m[0], m[1], m[2], m[3]]
    }

    pub fn tails_block(&self) -> [f64; 4] {
        let m = self.measure.weights();
        [m[12], m[13], m[14], m[15]]
    }

    /// Heads probabilities of the four coins under this measure.
    ///
    /// Both first coins inherit the anchor face (1 for heads, 0 for tails);
    /// the second coins sum the table rows with a heads entry:
    /// `s = m1+m2+m13+m14`, `ś = m1+m3+m13+m15`.
    pub fn strategy_marginals(&self) -> StrategyMarginals {
        let m = self.measure.weights();
        let first = match self.anchor {
            AgreementFace::Heads => 1.0,
            AgreementFace::Tails => 0.0,
        };
        StrategyMarginals {
            alice_first: first,
            bob_first: first,
            alice_second: m[0] + m[1] + m[12] + m[13],
            bob_second: m[0] + m[2] + m[12] + m[14],
        }
    }
}

/// Heads probabilities of the four coins induced by a perfectly correlated
/// measure; rejects measures not in the reduced form.
pub fn strategy_probs_from_measure(measure: &SignedMeasure) -> Result<StrategyMarginals> {
    Ok(measure.reduce_perfect_correlation()?.strategy_marginals())
}

/// Where a measure and its induced probabilities go negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativityReport {
    /// 1-based hidden-variable values with weight below `-1e-12`.
    pub measure_indices: Vec<usize>,
    /// 1-based joint-probability entries below `-1e-12`.
    pub probability_indices: Vec<usize>,
}

impl NegativityReport {
    /// True when neither the weights nor the probabilities go negative.
    pub fn is_clean(&self) -> bool {
        self.measure_indices.is_empty() && self.probability_indices.is_empty()
    }
}

/// Flags every negative weight and every negative induced probability.
pub fn negativity_report(measure: &SignedMeasure) -> NegativityReport {
    let negative = |values: &[f64]| -> Vec<usize> {
        values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v < -tol::ANALYTIC)
            .map(|(i, _)| i + 1)
            .collect()
    };
    let probabilities = probabilities_from_measure(measure);
    NegativityReport {
        measure_indices: negative(measure.weights()),
        probability_indices: negative(probabilities.probabilities()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::validate;

    /// Measure concentrated on a single hidden value.
    fn point_measure(value_1_based: usize) -> SignedMeasure {
        let mut m = [0.0; 16];
        m[value_1_based - 1] = 1.0;
        SignedMeasure::new(m).unwrap()
    }

    #[test]
    fn table_enumerates_sign_patterns_in_order() {
        let table = OutcomeTable::standard();
        assert_eq!(table.rows()[0], [1, 1, 1, 1]);
        assert_eq!(table.rows()[1], [1, 1, 1, -1]);
        assert_eq!(table.rows()[2], [1, 1, -1, 1]);
        assert_eq!(table.rows()[7], [1, -1, -1, -1]);
        assert_eq!(table.rows()[8], [-1, 1, 1, 1]);
        assert_eq!(table.rows()[15], [-1, -1, -1, -1]);
        // All rows distinct: the table enumerates every assignment once.
        for i in 0..16 {
            for j in 0..i {
                assert_ne!(table.rows()[i], table.rows()[j]);
            }
        }
    }

    #[test]
    fn probability_entries_collect_the_expected_hidden_values() {
        // Which hidden values feed each of p1..p16, written down
        // independently from the table semantics (1-based).
        const EXPECTED_SUPPORT: [[usize; 4]; 16] = [
            [1, 2, 3, 4],
            [5, 6, 7, 8],
            [9, 10, 11, 12],
            [13, 14, 15, 16],
            [1, 3, 5, 7],
            [2, 4, 6, 8],
            [9, 11, 13, 15],
            [10, 12, 14, 16],
            [1, 2, 9, 10],
            [5, 6, 13, 14],
            [3, 4, 11, 12],
            [7, 8, 15, 16],
            [1, 5, 9, 13],
            [2, 6, 10, 14],
            [3, 7, 11, 15],
            [4, 8, 12, 16],
        ];
        for value in 1..=16 {
            let p = probabilities_from_measure(&point_measure(value));
            for (entry, support) in p.probabilities().iter().zip(EXPECTED_SUPPORT.iter()) {
                let expected = if support.contains(&value) { 1.0 } else { 0.0 };
                assert_eq!(*entry, expected, "value {value} support mismatch");
            }
        }
    }

    #[test]
    fn all_heads_value_fills_the_heads_corner() {
        let p = probabilities_from_measure(&point_measure(1));
        for pair in StrategyPair::ALL {
            assert_eq!(p.block(pair), [1.0, 0.0, 0.0, 0.0]);
        }
        let stats = p.to_stats().unwrap();
        assert!(validate(&stats).is_within(tol::ANALYTIC));
    }

    #[test]
    fn uniform_measure_gives_fair_independent_coins() {
        let p = probabilities_from_measure(&SignedMeasure::uniform());
        for &entry in p.probabilities() {
            assert!((entry - 0.25).abs() <= tol::ANALYTIC);
        }
        for pair in StrategyPair::ALL {
            assert_eq!(correlator(&SignedMeasure::uniform(), pair), 0.0);
        }
    }

    #[test]
    fn two_value_measure_probabilities_and_correlators() {
        // Weight 0.9 on the all-heads value, 0.1 on value 4 (tails on both
        // second coins).
        let mut m = [0.0; 16];
        m[0] = 0.9;
        m[3] = 0.1;
        let measure = SignedMeasure::new(m).unwrap();
        let p = probabilities_from_measure(&measure);
        let mut expected = [0.0; 16];
        expected[0] = 1.0; // p1: first coins agree on heads surely
        expected[4] = 0.9; // p5
        expected[5] = 0.1; // p6
        expected[8] = 0.9; // p9
        expected[10] = 0.1; // p11
        expected[12] = 0.9; // p13
        expected[15] = 0.1; // p16
        for (got, want) in p.probabilities().iter().zip(expected.iter()) {
            assert!((got - want).abs() <= tol::ANALYTIC);
        }

        let e: Vec<f64> = StrategyPair::ALL.iter().map(|&pr| correlator(&measure, pr)).collect();
        assert!((e[0] - 1.0).abs() <= tol::ANALYTIC);
        assert!((e[1] - 0.8).abs() <= tol::ANALYTIC);
        assert!((e[2] - 0.8).abs() <= tol::ANALYTIC);
        // Both second coins flip together between values 1 and 4, so the
        // last pair is also perfectly correlated.
        assert!((e[3] - 1.0).abs() <= tol::ANALYTIC);

        let chsh = chsh_value(&measure);
        assert!((chsh.value - 1.6).abs() <= tol::ANALYTIC);
        assert!(!chsh.violates);
    }

    #[test]
    fn correlator_matches_block_identity() {
        let mut m = [1.0 / 16.0; 16];
        m[2] += 0.2;
        m[9] -= 0.3;
        m[14] += 0.1;
        let measure = SignedMeasure::new(m).unwrap();
        let p = probabilities_from_measure(&measure);
        for pair in StrategyPair::ALL {
            let [hh, ht, th, tt] = p.block(pair);
            let from_block = hh - ht - th + tt;
            assert!((correlator(&measure, pair) - from_block).abs() <= tol::ANALYTIC);
        }
    }

    #[test]
    fn measure_construction_guards() {
        let mut m = [1.0 / 16.0; 16];
        m[0] = f64::NAN;
        assert!(SignedMeasure::new(m).is_err());

        let mut m = [0.0; 16];
        m[0] = 0.9; // sums to 0.9
        assert!(matches!(SignedMeasure::new(m), Err(Error::Normalization { .. })));

        assert!(!SignedMeasure::uniform().is_signed());
        let mut m = [0.0; 16];
        m[0] = 1.3;
        m[5] = -0.3;
        assert!(SignedMeasure::new(m).unwrap().is_signed());
    }

    #[test]
    fn point_measure_is_deterministic_chsh() {
        let chsh = chsh_value(&point_measure(1));
        assert_eq!(chsh.value, 2.0);
        assert!(!chsh.violates);
        assert_eq!(chsh_value(&SignedMeasure::uniform()).value, 0.0);
    }

    #[test]
    fn signed_measures_can_break_the_chsh_bound() {
        // Deterministic search: uniform base plus centred uniform noise,
        // renormalised; accept the first measure whose CHSH leaves [-2, 2]
        // while every induced probability still looks legitimate (in
        // [0, 1]) — the violation hides entirely in the weights.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut found = None;
        for _ in 0..200_000 {
            let mut m = [0.0f64; 16];
            let mut sum = 0.0;
            for entry in &mut m {
                *entry = rng.gen_range(-1.0..1.0);
                sum += *entry;
            }
            for entry in &mut m {
                *entry = 1.0 / 16.0 + 0.12 * (*entry - sum / 16.0);
            }
            let measure = SignedMeasure::new(m).unwrap();
            let plausible = probabilities_from_measure(&measure)
                .probabilities()
                .iter()
                .all(|&p| (0.0..=1.0).contains(&p));
            if plausible && chsh_value(&measure).violates {
                found = Some(measure);
                break;
            }
        }
        let measure = found.expect("no plausible violating measure found in 200000 draws");
        assert!(measure.is_signed());
        assert!(chsh_value(&measure).value.abs() > 2.0);
    }

    #[test]
    fn heads_anchor_reduction_pins_first_coins() {
        let reduced = PerfectCorrelationMeasure::new([0.0, 0.0, 0.0, 1.0], [0.0; 4]).unwrap();
        let marginals = reduced.strategy_marginals();
        assert_eq!(marginals.alice_first, 1.0);
        assert_eq!(marginals.bob_first, 1.0);
        assert_eq!(marginals.alice_second, 0.0);
        assert_eq!(marginals.bob_second, 0.0);

        let p = probabilities_from_measure(reduced.measure());
        assert_eq!(p.block(StrategyPair::ALL[0]), [1.0, 0.0, 0.0, 0.0]);
        // Both second coins surely tails: the last block sits on TT, so the
        // mixed pairs anticorrelate and the CHSH combination is -2.
        assert_eq!(p.block(StrategyPair::ALL[3]), [0.0, 0.0, 0.0, 1.0]);
        assert_eq!(chsh_value(reduced.measure()).value, -2.0);
    }

    #[test]
    fn tails_anchor_mirrors_the_reduction() {
        let reduced = PerfectCorrelationMeasure::with_anchor(
            AgreementFace::Tails,
            [0.0; 4],
            [0.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        let marginals = reduced.strategy_marginals();
        assert_eq!(marginals.alice_first, 0.0);
        assert_eq!(marginals.bob_first, 0.0);
        assert_eq!(marginals.alice_second, 0.0);
        assert_eq!(marginals.bob_second, 0.0);

        // Recovered by reduction with the anchor detected from the weights.
        let again = reduced.measure().reduce_perfect_correlation().unwrap();
        assert_eq!(again.anchor(), AgreementFace::Tails);
    }

    #[test]
    fn reduction_rejects_unreduced_measures() {
        assert!(matches!(
            SignedMeasure::uniform().reduce_perfect_correlation(),
            Err(Error::NotReduced { .. })
        ));

        // Disagreement weights vanish but the agreement weight is split
        // between the two faces.
        let mut m = [0.0; 16];
        m[0] = 0.5;
        m[15] = 0.5;
        let err = SignedMeasure::new(m).unwrap().reduce_perfect_correlation().unwrap_err();
        assert!(matches!(err, Error::NotReduced { .. }));
    }

    #[test]
    fn anchored_constructor_checks_block_sums() {
        let err = PerfectCorrelationMeasure::new([0.0, 0.0, 0.0, 0.9], [0.0; 4]).unwrap_err();
        match err {
            Error::Normalization { quantity, sum, expected, .. } => {
                assert!(quantity.contains("m1..m4"));
                assert_eq!(sum, 0.9);
                assert_eq!(expected, 1.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err =
            PerfectCorrelationMeasure::new([0.0, 0.0, 0.0, 1.0], [0.1, 0.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::Normalization { .. }));
    }

    #[test]
    fn signed_residual_weights_shift_second_coin_marginals() {
        let reduced = PerfectCorrelationMeasure::new(
            [0.0, 0.0, 0.0, 1.0],
            [-0.1, 0.06, 0.04, 0.0],
        )
        .unwrap();
        let marginals = reduced.strategy_marginals();
        assert!((marginals.alice_second - (-0.04)).abs() <= tol::ANALYTIC);
        assert!((marginals.bob_second - (-0.06)).abs() <= tol::ANALYTIC);

        let via_free_fn = strategy_probs_from_measure(reduced.measure()).unwrap();
        assert_eq!(via_free_fn, marginals);

        let p = probabilities_from_measure(reduced.measure());
        // Frozen nonzero entries of the induced probabilities (1-based):
        // p1=1, p6=1, p7=-0.06, p8=0.06, p10=-0.04, p11=1, p12=0.04,
        // p13=-0.1, p14=0.06, p15=0.04, p16=1.
        let expected: [(usize, f64); 11] = [
            (1, 1.0),
            (6, 1.0),
            (7, -0.06),
            (8, 0.06),
            (10, -0.04),
            (11, 1.0),
            (12, 0.04),
            (13, -0.1),
            (14, 0.06),
            (15, 0.04),
            (16, 1.0),
        ];
        let mut want = [0.0; 16];
        for (index, value) in expected {
            want[index - 1] = value;
        }
        for (got, want) in p.probabilities().iter().zip(want.iter()) {
            assert!((got - want).abs() <= tol::ANALYTIC, "{got} vs {want}");
        }

        let report = negativity_report(reduced.measure());
        assert_eq!(report.measure_indices, vec![13]);
        assert_eq!(report.probability_indices, vec![7, 10, 13]);
        assert!(!report.is_clean());

        let chsh = chsh_value(reduced.measure());
        assert!((chsh.value - (-1.6)).abs() <= tol::ANALYTIC);
        assert!(!chsh.violates);
    }

    #[test]
    fn negativity_report_clean_for_probability_measures() {
        assert!(negativity_report(&SignedMeasure::uniform()).is_clean());
        let mut m = [0.0; 16];
        m[0] = 0.35;
        m[1] = 0.35;
        m[2] = 0.35;
        m[3] = -0.05;
        let report = negativity_report(&SignedMeasure::new(m).unwrap());
        assert_eq!(report.measure_indices, vec![4]);
        assert_eq!(report.probability_indices, vec![16]);
    }
}
