//! Repeated tossing of the four-coin protocol.
//!
//! A referee draws a strategy pair each round, the selected coins are
//! tossed with the joint distribution given by the statistics block, and
//! the transcript of `(pair, outcome)` records is the raw material for
//! empirical estimates.  Sampling is restricted to physically realizable
//! (nonnegative) blocks: signed statistics are analytic objects with no
//! sampling semantics and are rejected up front.
//!
//! Everything is driven by a 64-bit-seeded ChaCha8 stream, so a transcript
//! is reproducible from `(seed, statistics, policy, rounds)` alone; the
//! generator name is recorded in exported transcripts to keep files
//! self-describing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coins::{FourCoinStats, Outcome, StrategyPair};
use crate::error::{ensure_finite, Error, Result};
use crate::game::{BiMatrixGame, Player};
use crate::tol;

/// Name of the pseudo-random generator backing [`sample_rounds`], as
/// written into transcript headers.
pub const GENERATOR_NAME: &str = "chacha8";

/// Referee's distribution over the four strategy pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPolicy {
    weights: [f64; 4],
}

impl PairPolicy {
    /// Uniform over the four pairs.
    pub fn uniform() -> Self {
        Self { weights: [0.25; 4] }
    }

    /// Normalises nonnegative weights in block order; at least one must be
    /// positive.
    pub fn new(weights: [f64; 4]) -> Result<Self> {
        let mut total = 0.0;
        for &w in &weights {
            ensure_finite("pair policy weight", w)?;
            if w < 0.0 {
                return Err(Error::NegativePolicyWeight { value: w });
            }
            total += w;
        }
        if total <= 0.0 {
            return Err(Error::Normalization {
                quantity: "pair policy".into(),
                sum: total,
                expected: 1.0,
                tolerance: tol::INPUT,
            });
        }
        Ok(Self { weights: weights.map(|w| w / total) })
    }

    /// Probability of drawing `pair`.
    pub fn weight(&self, pair: StrategyPair) -> f64 {
        self.weights[pair.block_index()]
    }
}

/// One round: which coins were tossed and what they showed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TossRound {
    pub pair: StrategyPair,
    pub outcome: Outcome,
}

/// A reproducible record of many rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct TossTranscript {
    seed: u64,
    generator: String,
    rounds: Vec<TossRound>,
}

impl TossTranscript {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn rounds(&self) -> &[TossRound] {
        &self.rounds
    }

    /// The first `n` rounds as their own transcript (same provenance);
    /// handy for convergence tables.
    pub fn prefix(&self, n: usize) -> TossTranscript {
        TossTranscript {
            seed: self.seed,
            generator: self.generator.clone(),
            rounds: self.rounds[..n.min(self.rounds.len())].to_vec(),
        }
    }

    /// Line-delimited export: a header naming seed and generator, then one
    /// `round_index,pair,outcome` record per round.
    pub fn export(&self) -> String {
        let mut out = String::with_capacity(16 * self.rounds.len() + 64);
        out.push_str(&format!("# seed={} generator={}\n", self.seed, self.generator));
        for (index, round) in self.rounds.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", index, round.pair.label(), round.outcome.label()));
        }
        out
    }

    /// Parses a transcript previously written by [`export`](Self::export).
    pub fn import(text: &str) -> Result<TossTranscript> {
        let mut seed = None;
        let mut generator = None;
        let mut rounds = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line_no = line_no + 1;
            let parse_err = |detail: String| Error::TranscriptParse { line: line_no, detail };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                for token in header.split_whitespace() {
                    if let Some(value) = token.strip_prefix("seed=") {
                        seed = Some(value.parse::<u64>().map_err(|e| {
                            parse_err(format!("bad seed `{value}`: {e}"))
                        })?);
                    } else if let Some(value) = token.strip_prefix("generator=") {
                        generator = Some(value.to_string());
                    }
                }
                continue;
            }
            let mut fields = line.split(',');
            let (index, pair, outcome) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(i), Some(p), Some(o), None) => (i, p, o),
                _ => return Err(parse_err(format!("expected `index,pair,outcome`, got `{line}`"))),
            };
            let index: usize = index
                .parse()
                .map_err(|e| parse_err(format!("bad round index `{index}`: {e}")))?;
            if index != rounds.len() {
                return Err(parse_err(format!(
                    "round index {index} out of sequence (expected {})",
                    rounds.len()
                )));
            }
            let pair = StrategyPair::parse(pair)
                .ok_or_else(|| parse_err(format!("unknown strategy pair `{pair}`")))?;
            let outcome = Outcome::parse(outcome)
                .ok_or_else(|| parse_err(format!("unknown outcome `{outcome}`")))?;
            rounds.push(TossRound { pair, outcome });
        }
        let seed = seed.ok_or(Error::TranscriptParse {
            line: 1,
            detail: "missing `# seed=... generator=...` header".into(),
        })?;
        let generator = generator.ok_or(Error::TranscriptParse {
            line: 1,
            detail: "header does not name a generator".into(),
        })?;
        Ok(TossTranscript { seed, generator, rounds })
    }
}

/// Cumulative distribution over a fixed alphabet, built once per block.
struct Cdf {
    thresholds: [f64; 4],
}

impl Cdf {
    fn new(weights: [f64; 4]) -> Self {
        let mut thresholds = [0.0; 4];
        let mut acc = 0.0;
        for (slot, w) in weights.into_iter().enumerate() {
            acc += w.max(0.0);
            thresholds[slot] = acc;
        }
        // Guard the final threshold so a draw of u → 1 cannot fall through.
        thresholds[3] = f64::INFINITY;
        Self { thresholds }
    }

    fn draw(&self, u: f64) -> usize {
        self.thresholds.iter().position(|&t| u < t).unwrap_or(3)
    }
}

/// Tosses `rounds` rounds from the given statistics.
///
/// Every block the policy can select must be a probability distribution:
/// entries ≥ 0 (within `1e-12`, clamped) and sum within `1e-9` of 1.
/// Each round draws the pair, then the outcome, both by inverse CDF in the
/// fixed block order, from one ChaCha8 stream seeded with `seed` — so equal
/// `(stats, policy, rounds, seed)` give bit-identical transcripts.
pub fn sample_rounds(
    stats: &FourCoinStats,
    policy: &PairPolicy,
    rounds: usize,
    seed: u64,
) -> Result<TossTranscript> {
    let mut block_cdfs: [Option<Cdf>; 4] = [None, None, None, None];
    for pair in StrategyPair::ALL {
        if policy.weight(pair) == 0.0 {
            continue;
        }
        let block = stats.block(pair);
        for (slot, &value) in block.iter().enumerate() {
            if value < -tol::ANALYTIC {
                return Err(Error::NegativeProbability {
                    pair: pair.label(),
                    index: 4 * pair.block_index() + slot + 1,
                    value,
                });
            }
        }
        let sum: f64 = block.iter().sum();
        if (sum - 1.0).abs() > tol::INPUT {
            return Err(Error::Normalization {
                quantity: format!("sampled block {}", pair.label()),
                sum,
                expected: 1.0,
                tolerance: tol::INPUT,
            });
        }
        block_cdfs[pair.block_index()] = Some(Cdf::new(block));
    }

    let policy_cdf = Cdf::new([
        policy.weight(StrategyPair::ALL[0]),
        policy.weight(StrategyPair::ALL[1]),
        policy.weight(StrategyPair::ALL[2]),
        policy.weight(StrategyPair::ALL[3]),
    ]);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut transcript = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let pair = StrategyPair::ALL[policy_cdf.draw(rng.gen::<f64>())];
        let cdf = block_cdfs[pair.block_index()]
            .as_ref()
            .expect("policy only selects validated blocks");
        let outcome = Outcome::ALL[cdf.draw(rng.gen::<f64>())];
        transcript.push(TossRound { pair, outcome });
    }
    Ok(TossTranscript {
        seed,
        generator: GENERATOR_NAME.to_string(),
        rounds: transcript,
    })
}

/// Outcome counts per block of a transcript.
fn block_counts(transcript: &TossTranscript) -> [[u64; 4]; 4] {
    let mut counts = [[0u64; 4]; 4];
    for round in transcript.rounds() {
        counts[round.pair.block_index()][round.outcome.slot()] += 1;
    }
    counts
}

/// Empirical statistics with their sampling uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatedStats {
    /// Per-block relative frequencies in the standard 16-entry layout.
    pub stats: FourCoinStats,
    /// Rounds observed per block.
    pub block_counts: [u64; 4],
    /// Per-entry standard error `√(p̂(1−p̂)/n_block)`.
    pub standard_errors: [f64; 16],
}

/// Turns a transcript into relative frequencies per block.
///
/// Every pair must occur at least once; otherwise the unsampled pairs are
/// listed in the error.
pub fn estimate_stats(transcript: &TossTranscript) -> Result<EstimatedStats> {
    let counts = block_counts(transcript);
    let unsampled: Vec<&'static str> = StrategyPair::ALL
        .into_iter()
        .filter(|pair| counts[pair.block_index()].iter().sum::<u64>() == 0)
        .map(|pair| pair.label())
        .collect();
    if !unsampled.is_empty() {
        return Err(Error::UnsampledPairs { pairs: unsampled });
    }
    let mut p = [0.0; 16];
    let mut standard_errors = [0.0; 16];
    let mut totals = [0u64; 4];
    for block in 0..4 {
        let n: u64 = counts[block].iter().sum();
        totals[block] = n;
        for slot in 0..4 {
            let freq = counts[block][slot] as f64 / n as f64;
            p[4 * block + slot] = freq;
            standard_errors[4 * block + slot] = (freq * (1.0 - freq) / n as f64).sqrt();
        }
    }
    Ok(EstimatedStats {
        stats: FourCoinStats::new(p)?,
        block_counts: totals,
        standard_errors,
    })
}

/// A point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayoffEstimate {
    pub value: f64,
    pub stderr: f64,
}

/// Empirical recipe payoff of one pair from a transcript.
///
/// The estimate weights the payoff constants by outcome counts,
/// `(K·n_HH + L·n_HT + M·n_TH + N·n_TT) / n_block`, so a degenerate game
/// with all constants equal pays that constant exactly.  The standard
/// error propagates the per-entry binomial errors through the linear
/// recipe, treating entries as independent.
pub fn empirical_payoff(
    transcript: &TossTranscript,
    game: &BiMatrixGame,
    pair: StrategyPair,
    player: Player,
) -> Result<PayoffEstimate> {
    let counts = block_counts(transcript)[pair.block_index()];
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(Error::UnsampledPairs { pairs: vec![pair.label()] });
    }
    let (k, l, m, nn) = game.constants_for(player);
    let constants = [k, l, m, nn];
    let value = constants
        .iter()
        .zip(counts.iter())
        .map(|(c, &count)| c * count as f64)
        .sum::<f64>()
        / n as f64;
    let variance: f64 = constants
        .iter()
        .zip(counts.iter())
        .map(|(c, &count)| {
            let freq = count as f64 / n as f64;
            c * c * freq * (1.0 - freq) / n as f64
        })
        .sum();
    Ok(PayoffEstimate { value, stderr: variance.sqrt() })
}
