//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing games, coin
/// statistics, measures, or toss transcripts.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A quantity that must be a finite real was NaN or infinite.
    #[error("{quantity} must be finite, got {value}")]
    NonFinite { quantity: &'static str, value: f64 },

    /// A classical strategy weight lies outside the unit interval.
    #[error("classical strategy weight {value} lies outside [0, 1]")]
    WeightOutOfRange { value: f64 },

    /// Classical and signed strategy weights were mixed in one computation.
    #[error("cannot combine classical and signed strategy weights")]
    RegimeMismatch,

    /// A grid step for the equilibrium search is unusable.
    #[error("grid step {step} lies outside (0, 0.5]")]
    GridStep { step: f64 },

    /// A quantity that must sum to a fixed value missed it by more than the
    /// stated tolerance.
    #[error("{quantity} sums to {sum} but must sum to {expected} (tolerance {tolerance:e})")]
    Normalization {
        quantity: String,
        sum: f64,
        expected: f64,
        tolerance: f64,
    },

    /// A cross-block identity of four-coin statistics fails.
    #[error("marginal consistency violated: {constraint} has residual {residual:e} (tolerance {tolerance:e})")]
    ConsistencyViolation {
        constraint: &'static str,
        residual: f64,
        tolerance: f64,
    },

    /// A signed measure was used where the perfectly correlated reduced form
    /// is required.
    #[error("measure is not in the perfectly correlated reduced form: {detail}; build one with PerfectCorrelationMeasure::new")]
    NotReduced { detail: String },

    /// An equilibrium pattern for which no support-constraint derivation
    /// exists in this framework.
    #[error("no support-constraint derivation for this equilibrium pattern: {detail}")]
    UnsupportedPattern { detail: String },

    /// A referee pair-policy weight was negative.
    #[error("pair policy weight {value} is negative")]
    NegativePolicyWeight { value: f64 },

    /// Sampling was asked to draw from a block containing a negative entry.
    #[error("cannot sample strategy pair {pair}: p{index} = {value} is negative; signed regimes are analytic only")]
    NegativeProbability {
        pair: &'static str,
        /// 1-based position in the 16-entry probability vector.
        index: usize,
        value: f64,
    },

    /// An estimate was requested for strategy pairs that never occur in the
    /// transcript.
    #[error("transcript contains no rounds for strategy pair(s) {pairs:?}")]
    UnsampledPairs { pairs: Vec<&'static str> },

    /// A transcript file could not be parsed.
    #[error("transcript line {line}: {detail}")]
    TranscriptParse { line: usize, detail: String },
}

/// Checks a single value for finiteness, naming the offending quantity.
pub(crate) fn ensure_finite(quantity: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { quantity, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_name_the_offending_quantity() {
        let err = ensure_finite("payoff constant K", f64::NAN).unwrap_err();
        assert!(err.to_string().contains("payoff constant K"));

        let err = Error::Normalization {
            quantity: "measure".into(),
            sum: 0.9,
            expected: 1.0,
            tolerance: 1e-12,
        };
        assert!(err.to_string().contains("0.9"));
        assert!(err.to_string().contains("1e-12"));
    }

    #[test]
    fn ensure_finite_passes_values_through() {
        assert_eq!(ensure_finite("x", 2.5).unwrap(), 2.5);
        assert!(ensure_finite("x", f64::INFINITY).is_err());
    }
}
