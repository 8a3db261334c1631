//! Implementations of the five subcommands.
//!
//! Human-readable tables go to stdout with fixed 12-decimal formatting;
//! machine-readable artifacts (JSON reports, CSV sweeps, transcripts) are
//! written with full `f64` precision, so reloading them reproduces the
//! in-memory values bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use epr_game_lab::coins::extract_marginals_with_tolerance;
use epr_game_lab::correlated::Representation;
use epr_game_lab::montecarlo::GENERATOR_NAME;
use epr_game_lab::{
    bilinear_payoff, chsh_value, classical_ne_search, empirical_payoff, equilibrium_payoffs_quantum,
    factorization_residual, negativity_report, recipe_payoff, residual_ne_check_pd1, sample_rounds,
    split_payoff, summed_ne_condition, AnalysisReport, EquilibriumSummary, FourCoinStats,
    PairPolicy, PairReport, PayoffBreakdown, PerfectCorrelationMeasure, Player, Profile,
    ResidualWeights, StatsRegime, StrategyPair,
};

use crate::inputs::{load_game, load_measure, load_stats};
use crate::{
    ClassicalArgs, CliError, CliResult, CorrelatedArgs, SimulateArgs, SweepArgs, ValidateArgs,
};

/// Fixed-width cell for the human tables.
fn f12(value: f64) -> String {
    format!("{value:.12}")
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content)
        .map_err(|err| CliError::Config(format!("{}: {err}", path.display())))
}

fn emit_report(report: &AnalysisReport, out: Option<&Path>) -> CliResult<()> {
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(report)
            .map_err(|err| CliError::Config(format!("serializing report: {err}")))?;
        write_file(path, &(json + "\n"))?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

pub fn validate(args: &ValidateArgs) -> CliResult<()> {
    let stats = load_stats(&args.stats)?;
    let report = epr_game_lab::validate(&stats);

    println!("block sums (residual = sum - 1):");
    for pair in StrategyPair::ALL {
        let index = pair.block_index();
        let sum = stats.block(pair).iter().sum::<f64>();
        println!(
            "  {:<7} sum {}  residual {}",
            pair.label(),
            f12(sum),
            f12(report.block_residuals[index])
        );
    }
    println!("consistency residuals:");
    let names = ["p1+p2 - p5-p6", "p1+p3 - p9-p11", "p9+p10 - p13-p14", "p5+p7 - p13-p15"];
    for (name, residual) in names.iter().zip(report.consistency_residuals) {
        println!("  {name:<17} {}", f12(residual));
    }
    match stats.regime() {
        StatsRegime::Physical => println!("regime: physical (no negative entries)"),
        StatsRegime::Signed => println!(
            "regime: signed (negative entries at {:?})",
            report.negative_entries
        ),
    }

    if report.is_within(args.tolerance) {
        println!("OK: all residuals within {:e}", args.tolerance);
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "largest residual {} exceeds tolerance {:e}",
            report.max_abs_residual(),
            args.tolerance
        )))
    }
}

pub fn analyze_classical(args: &ClassicalArgs) -> CliResult<()> {
    let game = load_game(&args.game)?;
    let stats = load_stats(&args.stats)?;
    let validation = epr_game_lab::validate(&stats);
    let marginals = extract_marginals_with_tolerance(&stats, args.tolerance)?;

    let mut report = AnalysisReport::new(&game, stats.regime());
    report.validation = Some(validation);
    report.marginals = Some(marginals);
    report.factorization_residual = Some(factorization_residual(&stats)?);

    println!(
        "game K={} L={} M={} N={}  prisoners_dilemma={}",
        game.k(),
        game.l(),
        game.m(),
        game.n(),
        game.is_prisoners_dilemma()
    );
    println!(
        "marginals r={} s={} r'={} s'={}",
        f12(marginals.alice_first),
        f12(marginals.alice_second),
        f12(marginals.bob_first),
        f12(marginals.bob_second)
    );
    println!(
        "{:<7} {:>18} {:>18} {:>18} {:>18}",
        "pair", "recipe_A", "bilinear_A", "recipe_B", "bilinear_B"
    );
    for pair in StrategyPair::ALL {
        let (a, b) = marginals.pair_weights(pair);
        let profile = Profile::signed(a, b)?;
        let recipe_a = recipe_payoff(&stats, &game, pair, Player::Alice);
        let recipe_b = recipe_payoff(&stats, &game, pair, Player::Bob);
        let bilinear_a = bilinear_payoff(&game, &profile, Player::Alice);
        let bilinear_b = bilinear_payoff(&game, &profile, Player::Bob);
        println!(
            "{:<7} {:>18} {:>18} {:>18} {:>18}",
            pair.label(),
            f12(recipe_a),
            f12(bilinear_a),
            f12(recipe_b),
            f12(bilinear_b)
        );
        report.pairs.push(PairReport {
            pair,
            alice: PayoffBreakdown {
                total: recipe_a,
                bilinear: Some(bilinear_a),
                classical_part: None,
                quantum_part: None,
            },
            bob: PayoffBreakdown {
                total: recipe_b,
                bilinear: Some(bilinear_b),
                classical_part: None,
                quantum_part: None,
            },
        });
    }
    println!(
        "factorization residual: {}",
        f12(report.factorization_residual.unwrap())
    );

    let equilibria = classical_ne_search(&game, args.sweep_step)?;
    if equilibria.is_empty() {
        println!("grid equilibria (step {}): none", args.sweep_step);
    } else {
        println!("grid equilibria (step {}):", args.sweep_step);
        for profile in &equilibria {
            let payoff_a = bilinear_payoff(&game, profile, Player::Alice);
            let payoff_b = bilinear_payoff(&game, profile, Player::Bob);
            println!(
                "  ({}, {})  payoffs ({}, {})",
                profile.alice(),
                profile.bob(),
                f12(payoff_a),
                f12(payoff_b)
            );
        }
    }
    report.ne_search = Some(equilibria.iter().map(|p| [p.alice(), p.bob()]).collect());

    emit_report(&report, args.out.as_deref())
}

pub fn analyze_correlated(args: &CorrelatedArgs) -> CliResult<()> {
    let game = load_game(&args.game)?;
    let measure = load_measure(&args.measure)?;
    let reduced = measure.reduce_perfect_correlation()?;
    let weights = ResidualWeights::of(&reduced);

    let regime = if measure.is_signed() { StatsRegime::Signed } else { StatsRegime::Physical };
    let mut report = AnalysisReport::new(&game, regime);

    println!(
        "game K={} L={} M={} N={}  anchor={:?}",
        game.k(),
        game.l(),
        game.m(),
        game.n(),
        reduced.anchor()
    );
    println!(
        "component sums: s1={} s'1={} s2={} s'2={}",
        f12(weights.s1),
        f12(weights.sprime1),
        f12(weights.s2),
        f12(weights.sprime2)
    );
    println!(
        "{:<7} {:>18} {:>18} {:>18}  (per player A | B)",
        "pair", "total", "classical", "quantum"
    );
    for pair in StrategyPair::ALL {
        let alice = split_payoff(&game, &measure, pair, Player::Alice)?;
        let bob = split_payoff(&game, &measure, pair, Player::Bob)?;
        println!(
            "{:<7} {:>18} {:>18} {:>18} | {} {} {}",
            pair.label(),
            f12(alice.total),
            f12(alice.classical_part),
            f12(alice.quantum_part),
            f12(bob.total),
            f12(bob.classical_part),
            f12(bob.quantum_part)
        );
        report.pairs.push(PairReport {
            pair,
            alice: PayoffBreakdown {
                total: alice.total,
                bilinear: None,
                classical_part: Some(alice.classical_part),
                quantum_part: Some(alice.quantum_part),
            },
            bob: PayoffBreakdown {
                total: bob.total,
                bilinear: None,
                classical_part: Some(bob.classical_part),
                quantum_part: Some(bob.quantum_part),
            },
        });
    }

    let corner = residual_ne_check_pd1(weights.s2, weights.sprime2);
    let (s, sprime) = weights.totals();
    let summed = summed_ne_condition(&game, s, sprime);
    let payoffs = equilibrium_payoffs_quantum(&game, weights.s2, weights.sprime2, Representation::General);
    println!(
        "corner equilibrium at (s2, s'2) = ({}, {}): {}",
        f12(weights.s2),
        f12(weights.sprime2),
        corner.label()
    );
    println!(
        "summed condition at (s, s') = ({}, {}): {} (margin {})",
        f12(s),
        f12(sprime),
        summed.label(),
        f12(summed.margin)
    );
    println!(
        "equilibrium payoffs: A={} B={}{}",
        f12(payoffs.alice),
        f12(payoffs.bob),
        if payoffs.out_of_range { "  [weights outside [-1,1]: extrapolated]" } else { "" }
    );
    report.equilibrium = Some(EquilibriumSummary { weights, corner, summed, payoffs });

    let chsh = chsh_value(&measure);
    println!(
        "CHSH combination: {}{}",
        f12(chsh.value),
        if chsh.violates { "  (violates the classical bound 2)" } else { "" }
    );
    report.chsh = Some(chsh);
    let negativity = negativity_report(&measure);
    if negativity.is_clean() {
        println!("negativity: none");
    } else {
        println!(
            "negativity: measure indices {:?}, probability indices {:?}",
            negativity.measure_indices, negativity.probability_indices
        );
    }
    report.negativity = Some(negativity);

    emit_report(&report, args.out.as_deref())
}

/// Header of the sweep CSV; consumers rely on these exact columns.
const SWEEP_HEADER: &str =
    "m13,m14,m15,m16,s2,sprime2,payoff_A,payoff_B,ne_pd_verdict,summed_condition,chsh";

pub fn sweep_m13(args: &SweepArgs) -> CliResult<()> {
    if !args.sweep_step.is_finite() || args.sweep_step <= 0.0 {
        return Err(CliError::Config(format!(
            "--sweep-step must be positive, got {}",
            args.sweep_step
        )));
    }
    if args.sweep_start > args.sweep_stop {
        return Err(CliError::Config(format!(
            "--sweep-start {} exceeds --sweep-stop {}",
            args.sweep_start, args.sweep_stop
        )));
    }
    let game = load_game(&args.game)?;

    let span = args.sweep_stop - args.sweep_start;
    let points = (span / args.sweep_step + 1.0 + 1e-9).floor() as usize;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for i in 0..points {
        let m13 = args.sweep_start + i as f64 * args.sweep_step;
        let m16 = -(m13 + args.m14 + args.m15);
        // Heads-anchored measure: all agreement weight on the fourth row,
        // residual block carrying the swept weights.
        let reduced = PerfectCorrelationMeasure::new(
            [0.0, 0.0, 0.0, 1.0],
            [m13, args.m14, args.m15, m16],
        )?;
        let weights = ResidualWeights::of(&reduced);
        let verdict = residual_ne_check_pd1(weights.s2, weights.sprime2);
        let (s, sprime) = weights.totals();
        let summed = summed_ne_condition(&game, s, sprime);
        let payoffs =
            equilibrium_payoffs_quantum(&game, weights.s2, weights.sprime2, Representation::General);
        let chsh = chsh_value(reduced.measure());
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{}",
            m13,
            args.m14,
            args.m15,
            m16,
            weights.s2,
            weights.sprime2,
            payoffs.alice,
            payoffs.bob,
            verdict.label(),
            summed.label(),
            chsh.value
        )
        .expect("writing to a string cannot fail");
    }
    log::info!("swept {points} grid points");

    match args.out.as_deref() {
        Some(path) => {
            write_file(path, &csv)?;
            println!("{points} rows written to {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

pub fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let game = load_game(&args.game)?;
    let stats = match args.stats.as_deref() {
        Some(path) => load_stats(path)?,
        None => FourCoinStats::uniform(),
    };
    let rounds = usize::try_from(args.rounds)
        .map_err(|_| CliError::Config(format!("--rounds {} does not fit this platform", args.rounds)))?;
    let transcript = sample_rounds(&stats, &PairPolicy::uniform(), rounds, args.seed)?;
    println!(
        "sampled {rounds} rounds with seed {} ({GENERATOR_NAME})",
        args.seed
    );

    // Convergence of the player-A payoff estimates at powers of ten.
    let mut checkpoints: Vec<usize> = Vec::new();
    let mut cp = 10usize;
    while cp < rounds {
        checkpoints.push(cp);
        cp = cp.saturating_mul(10);
    }
    if rounds > 0 {
        checkpoints.push(rounds);
    }
    println!(
        "{:>10} {:>22} {:>22} {:>22} {:>22}",
        "rounds", "S1-Sp1", "S1-Sp2", "S2-Sp1", "S2-Sp2"
    );
    for &checkpoint in &checkpoints {
        let prefix = transcript.prefix(checkpoint);
        let mut row = format!("{checkpoint:>10}");
        for pair in StrategyPair::ALL {
            let cell = match empirical_payoff(&prefix, &game, pair, Player::Alice) {
                Ok(estimate) => format!("{:.6}±{:.6}", estimate.value, estimate.stderr),
                Err(_) => "-".to_string(),
            };
            write!(row, " {cell:>22}").expect("writing to a string cannot fail");
        }
        println!("{row}");
    }
    let mut analytic = format!("{:>10}", "analytic");
    for pair in StrategyPair::ALL {
        let value = recipe_payoff(&stats, &game, pair, Player::Alice);
        write!(analytic, " {:>22}", format!("{value:.6}")).expect("writing to a string cannot fail");
    }
    println!("{analytic}");

    println!("final estimates (player A | player B, analytic in parentheses):");
    for pair in StrategyPair::ALL {
        let alice = empirical_payoff(&transcript, &game, pair, Player::Alice)?;
        let bob = empirical_payoff(&transcript, &game, pair, Player::Bob)?;
        println!(
            "  {:<7} {:.6}±{:.6} ({:.6}) | {:.6}±{:.6} ({:.6})",
            pair.label(),
            alice.value,
            alice.stderr,
            recipe_payoff(&stats, &game, pair, Player::Alice),
            bob.value,
            bob.stderr,
            recipe_payoff(&stats, &game, pair, Player::Bob)
        );
    }

    if let Some(path) = args.out.as_deref() {
        write_file(path, &transcript.export())?;
        println!("transcript written to {}", path.display());
    }
    Ok(())
}
