//! JSON input files.
//!
//! One schema covers all commands: a top-level object with optional
//! `game`, `stats`, and `measure` sections.  Unknown fields are rejected
//! so a typo cannot silently drop a constant.  Numbers are ordinary JSON
//! decimals.

use std::path::Path;

use serde::Deserialize;

use epr_game_lab::{BiMatrixGame, FourCoinStats, SignedMeasure};

use crate::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub game: Option<GameSpec>,
    pub stats: Option<StatsSpec>,
    pub measure: Option<MeasureSpec>,
}

/// Payoff constants, keyed by their conventional capital letters.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "N")]
    pub n: f64,
}

/// Sixteen joint probabilities in block order (S1-Sp1, S1-Sp2, S2-Sp1,
/// S2-Sp2; HH, HT, TH, TT within each block).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsSpec {
    pub p: [f64; 16],
}

/// Sixteen hidden-variable weights in outcome-table row order.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub m: [f64; 16],
}

fn parse(path: &Path) -> CliResult<InputFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))
}

pub fn load_game(path: &Path) -> CliResult<BiMatrixGame> {
    let spec = parse(path)?
        .game
        .ok_or_else(|| CliError::Config(format!("{}: missing \"game\" section", path.display())))?;
    log::debug!("loaded game {spec:?} from {}", path.display());
    Ok(BiMatrixGame::new(spec.k, spec.l, spec.m, spec.n)?)
}

pub fn load_stats(path: &Path) -> CliResult<FourCoinStats> {
    let spec = parse(path)?
        .stats
        .ok_or_else(|| CliError::Config(format!("{}: missing \"stats\" section", path.display())))?;
    log::debug!("loaded statistics from {}", path.display());
    Ok(FourCoinStats::new(spec.p)?)
}

pub fn load_measure(path: &Path) -> CliResult<SignedMeasure> {
    let spec = parse(path)?.measure.ok_or_else(|| {
        CliError::Config(format!("{}: missing \"measure\" section", path.display()))
    })?;
    log::debug!("loaded measure from {}", path.display());
    Ok(SignedMeasure::new(spec.m)?)
}
