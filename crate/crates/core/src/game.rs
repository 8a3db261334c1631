//! Two-player bimatrix games in the mixed-strategy parametrisation.
//!
//! A game is fixed by four payoff constants `(K, L, M, N)` read off the
//! payoff bimatrix for the row player: `K` when both players cooperate-like
//! (weight 1), `L` and `M` for the two mismatched corners, `N` when both
//! play weight 0.  The column player's payoff is the same bimatrix with `L`
//! and `M` exchanged, so symmetric games need only one set of constants.
//!
//! Mixed strategies are single weights `a, b ∈ [0, 1]` (probability of the
//! first pure strategy).  Beyond the classical regime the same bilinear form
//! is evaluated at *signed* weights, which arise from negative measures in
//! the correlation experiments; [`StrategyWeight`] keeps the two regimes
//! apart at the type level.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::tol;

/// The two players of a bimatrix game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Player {
    /// Row player; payoff constants are used as given.
    Alice,
    /// Column player; payoff constants are used with `L` and `M` exchanged.
    Bob,
}

/// A 2×2 bimatrix game described by the row player's payoff constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiMatrixGame {
    k: f64,
    l: f64,
    m: f64,
    n: f64,
}

impl BiMatrixGame {
    /// Builds a game from the row player's payoff constants.
    ///
    /// All four constants must be finite.
    pub fn new(k: f64, l: f64, m: f64, n: f64) -> Result<Self> {
        ensure_finite("payoff constant K", k)?;
        ensure_finite("payoff constant L", l)?;
        ensure_finite("payoff constant M", m)?;
        ensure_finite("payoff constant N", n)?;
        Ok(Self { k, l, m, n })
    }

    /// Prisoner's Dilemma with constants `(3, 0, 5, 1)`.
    pub fn prisoners_dilemma_v1() -> Self {
        Self { k: 3.0, l: 0.0, m: 5.0, n: 1.0 }
    }

    /// Prisoner's Dilemma with constants `(3, 0, 5, 0.2)`; same preference
    /// order as [`prisoners_dilemma_v1`](Self::prisoners_dilemma_v1) but a
    /// different bilinear form.
    pub fn prisoners_dilemma_v2() -> Self {
        Self { k: 3.0, l: 0.0, m: 5.0, n: 0.2 }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    /// True when the constants order as a Prisoner's Dilemma: `M > K > N > L`.
    pub fn is_prisoners_dilemma(&self) -> bool {
        self.m > self.k && self.k > self.n && self.n > self.l
    }

    /// Payoff constants seen by `player`, in `(K, L, M, N)` order.
    ///
    /// Bob's payoffs are Alice's with `L` and `M` exchanged.
    pub fn constants_for(&self, player: Player) -> (f64, f64, f64, f64) {
        match player {
            Player::Alice => (self.k, self.l, self.m, self.n),
            Player::Bob => (self.k, self.m, self.l, self.n),
        }
    }

    /// Coefficients `(D, c) = (K − L − M + N, L − N)` of the best-reply
    /// margins.  Both players share them because the `L↔M` exchange cancels
    /// in the partial derivative.
    pub fn margin_coefficients(&self) -> (f64, f64) {
        (self.k - self.l - self.m + self.n, self.l - self.n)
    }
}

/// Whether strategy weights live in `[0, 1]` or on the whole real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Ordinary mixed strategies, weights in `[0, 1]`.
    Classical,
    /// Signed weights produced by negative measures; any finite real.
    Signed,
}

/// A single mixed-strategy weight together with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyWeight {
    value: f64,
    regime: Regime,
}

impl StrategyWeight {
    /// Classical weight; must be finite and in `[0, 1]`.
    pub fn classical(value: f64) -> Result<Self> {
        ensure_finite("strategy weight", value)?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::WeightOutOfRange { value });
        }
        Ok(Self { value, regime: Regime::Classical })
    }

    /// Signed weight; any finite real.
    pub fn signed(value: f64) -> Result<Self> {
        ensure_finite("strategy weight", value)?;
        Ok(Self { value, regime: Regime::Signed })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// A strategy profile: one weight per player, with matching regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    alice: StrategyWeight,
    bob: StrategyWeight,
}

impl Profile {
    /// Combines two weights; they must share a regime.
    pub fn new(alice: StrategyWeight, bob: StrategyWeight) -> Result<Self> {
        if alice.regime() != bob.regime() {
            return Err(Error::RegimeMismatch);
        }
        Ok(Self { alice, bob })
    }

    /// Classical profile from raw weights in `[0, 1]`.
    pub fn classical(alice: f64, bob: f64) -> Result<Self> {
        Profile::new(StrategyWeight::classical(alice)?, StrategyWeight::classical(bob)?)
    }

    /// Signed profile from raw finite weights.
    pub fn signed(alice: f64, bob: f64) -> Result<Self> {
        Profile::new(StrategyWeight::signed(alice)?, StrategyWeight::signed(bob)?)
    }

    pub fn alice(&self) -> f64 {
        self.alice.value()
    }

    pub fn bob(&self) -> f64 {
        self.bob.value()
    }

    pub fn regime(&self) -> Regime {
        self.alice.regime()
    }
}

/// Expected payoff `K·a·b + L·a·(1−b) + M·(1−a)·b + N·(1−a)·(1−b)` for the
/// requested player at profile `(a, b)`.
///
/// The form is evaluated verbatim in both regimes; signed weights simply
/// leave the unit square.
pub fn bilinear_payoff(game: &BiMatrixGame, profile: &Profile, player: Player) -> f64 {
    let (k, l, m, n) = game.constants_for(player);
    let a = profile.alice();
    let b = profile.bob();
    k * a * b + l * a * (1.0 - b) + m * (1.0 - a) * b + n * (1.0 - a) * (1.0 - b)
}

/// Unilateral-deviation margins of `candidate` against `deviation`.
///
/// Returns `(margin_alice, margin_bob)` where
/// `margin_alice = P_A(candidate) − P_A(deviation_a, candidate_b)` and
/// symmetrically for Bob; both reduce to products with the shared
/// coefficients `(D, c)`:
///
/// * `margin_alice = (a − a') · (D·b + c)`
/// * `margin_bob   = (b − b') · (D·a + c)`
///
/// `candidate` is a Nash equilibrium iff both margins are ≥ 0 for every
/// deviation.  The profiles must share a regime.
pub fn ne_margins(game: &BiMatrixGame, candidate: &Profile, deviation: &Profile) -> Result<(f64, f64)> {
    if candidate.regime() != deviation.regime() {
        return Err(Error::RegimeMismatch);
    }
    let (d, c) = game.margin_coefficients();
    let margin_alice = (candidate.alice() - deviation.alice()) * (d * candidate.bob() + c);
    let margin_bob = (candidate.bob() - deviation.bob()) * (d * candidate.alice() + c);
    Ok((margin_alice, margin_bob))
}

/// Grid `{0, step, 2·step, …, 1}`, with the right endpoint always included.
fn grid_points(step: f64) -> Vec<f64> {
    let mut points = Vec::new();
    let mut k = 0u32;
    loop {
        let value = f64::from(k) * step;
        if value > 1.0 - step * 0.5 {
            break;
        }
        points.push(value);
        k += 1;
    }
    points.push(1.0);
    points
}

/// Exhaustive Nash-equilibrium search over the classical grid
/// `{0, step, …, 1}²`.
///
/// Because each margin is affine in the deviating weight, checking the two
/// endpoint deviations `{0, 1}` per player is sufficient; interior
/// deviations are never examined.  `step` must be finite and in
/// `(0, 0.5]`.  Profiles are returned in row-major grid order.
pub fn classical_ne_search(game: &BiMatrixGame, step: f64) -> Result<Vec<Profile>> {
    if !step.is_finite() || step <= 0.0 || step > 0.5 {
        return Err(Error::GridStep { step });
    }
    let points = grid_points(step);
    let low = Profile::classical(0.0, 0.0)?;
    let high = Profile::classical(1.0, 1.0)?;
    let mut found = Vec::new();
    for &a in &points {
        for &b in &points {
            let candidate = Profile::classical(a, b)?;
            let (ma0, mb0) = ne_margins(game, &candidate, &low)?;
            let (ma1, mb1) = ne_margins(game, &candidate, &high)?;
            let worst = ma0.min(mb0).min(ma1).min(mb1);
            if worst >= -tol::ANALYTIC {
                found.push(candidate);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle used by the fixed-value tests: enumerate the four pure
    /// outcomes with their product weights and sum the payoffs.
    fn enumerated_payoff(game: &BiMatrixGame, a: f64, b: f64, player: Player) -> f64 {
        let (k, l, m, n) = game.constants_for(player);
        let outcomes = [
            (a * b, k),
            (a * (1.0 - b), l),
            ((1.0 - a) * b, m),
            ((1.0 - a) * (1.0 - b), n),
        ];
        outcomes.iter().map(|(w, v)| w * v).sum()
    }

    #[test]
    fn rejects_non_finite_constants() {
        assert!(BiMatrixGame::new(f64::NAN, 0.0, 5.0, 1.0).is_err());
        assert!(BiMatrixGame::new(3.0, f64::INFINITY, 5.0, 1.0).is_err());
    }

    #[test]
    fn prisoners_dilemma_ordering() {
        assert!(BiMatrixGame::prisoners_dilemma_v1().is_prisoners_dilemma());
        assert!(BiMatrixGame::prisoners_dilemma_v2().is_prisoners_dilemma());
        // Coordination game: M > K fails.
        let coordination = BiMatrixGame::new(2.0, 0.0, 0.0, 1.0).unwrap();
        assert!(!coordination.is_prisoners_dilemma());
    }

    #[test]
    fn classical_weight_rejects_out_of_range() {
        assert!(StrategyWeight::classical(-0.1).is_err());
        assert!(StrategyWeight::classical(1.1).is_err());
        assert!(StrategyWeight::classical(f64::NAN).is_err());
        assert!(StrategyWeight::classical(0.0).is_ok());
        assert!(StrategyWeight::classical(1.0).is_ok());
        // Signed weights accept the same values.
        assert!(StrategyWeight::signed(-0.1).is_ok());
        assert!(StrategyWeight::signed(f64::NAN).is_err());
    }

    #[test]
    fn profile_rejects_mixed_regimes() {
        let classical = StrategyWeight::classical(0.5).unwrap();
        let signed = StrategyWeight::signed(0.5).unwrap();
        assert_eq!(Profile::new(classical, signed).unwrap_err(), Error::RegimeMismatch);
    }

    #[test]
    fn payoff_fixed_points_first_dilemma() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        let both_low = Profile::classical(0.0, 0.0).unwrap();
        let both_high = Profile::classical(1.0, 1.0).unwrap();
        let mixed = Profile::classical(0.5, 0.5).unwrap();
        assert_eq!(bilinear_payoff(&game, &both_low, Player::Alice), 1.0);
        assert_eq!(bilinear_payoff(&game, &both_high, Player::Alice), 3.0);
        // Uniform mixing averages all four constants: (3+0+5+1)/4.
        assert_eq!(bilinear_payoff(&game, &mixed, Player::Alice), 2.25);
        assert_eq!(
            bilinear_payoff(&game, &mixed, Player::Alice),
            enumerated_payoff(&game, 0.5, 0.5, Player::Alice)
        );
    }

    #[test]
    fn bob_payoff_swaps_cross_constants() {
        let game = BiMatrixGame::new(3.0, -1.0, 7.0, 0.5).unwrap();
        let swapped = BiMatrixGame::new(3.0, 7.0, -1.0, 0.5).unwrap();
        for (a, b) in [(0.2, 0.9), (0.0, 1.0), (0.5, 0.5)] {
            let profile = Profile::classical(a, b).unwrap();
            assert_eq!(
                bilinear_payoff(&game, &profile, Player::Bob),
                bilinear_payoff(&swapped, &profile, Player::Alice)
            );
        }
    }

    #[test]
    fn margins_match_payoff_differences() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        let candidate = Profile::classical(0.0, 0.0).unwrap();
        let deviation = Profile::classical(1.0, 1.0).unwrap();
        let (ma, mb) = ne_margins(&game, &candidate, &deviation).unwrap();
        // Defecting against a defector loses exactly N − L = 1 for either
        // player, so both margins equal 1 and (0,0) resists this deviation.
        assert_eq!((ma, mb), (1.0, 1.0));

        let alice_moved = Profile::classical(1.0, 0.0).unwrap();
        let diff = bilinear_payoff(&game, &candidate, Player::Alice)
            - bilinear_payoff(&game, &alice_moved, Player::Alice);
        assert!((ma - diff).abs() <= tol::ANALYTIC);

        let same = ne_margins(&game, &candidate, &candidate).unwrap();
        assert_eq!(same, (0.0, 0.0));
    }

    #[test]
    fn margins_reject_mixed_regimes() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        let classical = Profile::classical(0.0, 0.0).unwrap();
        let signed = Profile::signed(0.0, 0.0).unwrap();
        assert_eq!(
            ne_margins(&game, &classical, &signed).unwrap_err(),
            Error::RegimeMismatch
        );
    }

    #[test]
    fn mutual_defection_resists_every_grid_deviation() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        let candidate = Profile::classical(0.0, 0.0).unwrap();
        for i in 0..=100 {
            for j in 0..=100 {
                let deviation = Profile::classical(i as f64 / 100.0, j as f64 / 100.0).unwrap();
                let (ma, mb) = ne_margins(&game, &candidate, &deviation).unwrap();
                assert!(ma >= -tol::ANALYTIC && mb >= -tol::ANALYTIC);
            }
        }
    }

    #[test]
    fn search_rejects_bad_steps() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        assert!(classical_ne_search(&game, 0.0).is_err());
        assert!(classical_ne_search(&game, 0.6).is_err());
        assert!(classical_ne_search(&game, f64::NAN).is_err());
        assert!(classical_ne_search(&game, -0.25).is_err());
    }

    #[test]
    fn search_finds_only_mutual_defection_in_dilemma() {
        let game = BiMatrixGame::prisoners_dilemma_v1();
        let found = classical_ne_search(&game, 0.25).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!((found[0].alice(), found[0].bob()), (0.0, 0.0));
    }

    #[test]
    fn search_flags_whole_grid_when_margins_vanish() {
        // D = 0 and c = 0 make every margin identically zero, so every grid
        // point qualifies.
        let flat = BiMatrixGame::new(2.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(flat.margin_coefficients(), (0.0, 0.0));
        let found = classical_ne_search(&flat, 0.5).unwrap();
        assert_eq!(found.len(), 9);
    }

    #[test]
    fn search_finds_coordination_equilibria() {
        let coordination = BiMatrixGame::new(2.0, 0.0, 0.0, 1.0).unwrap();
        let found = classical_ne_search(&coordination, 0.25).unwrap();
        let profiles: Vec<(f64, f64)> = found.iter().map(|p| (p.alice(), p.bob())).collect();
        assert_eq!(profiles, vec![(0.0, 0.0), (1.0, 1.0)]);

        // With step 1/3 the interior mixed equilibrium lands on the grid:
        // D·b + c = 0 at b = 1/3 for these constants.
        let found = classical_ne_search(&coordination, 1.0 / 3.0).unwrap();
        let profiles: Vec<(f64, f64)> = found.iter().map(|p| (p.alice(), p.bob())).collect();
        assert_eq!(
            profiles,
            vec![(0.0, 0.0), (1.0 / 3.0, 1.0 / 3.0), (1.0, 1.0)]
        );
    }

    #[test]
    fn grid_always_reaches_one() {
        for step in [0.25, 0.3, 1.0 / 3.0, 0.5, 0.07] {
            let points = grid_points(step);
            assert_eq!(points[0], 0.0);
            assert_eq!(*points.last().unwrap(), 1.0);
            assert!(points.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
