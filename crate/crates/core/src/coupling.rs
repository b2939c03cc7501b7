//! Running an ordinary game and a fractional game side by side.
//!
//! Player A plays the fractional game on the advice of an imagined ordinary
//! game. Each fractional round (B, then A) is matched by
//! `⌈i/p⌉ - ⌈(i-1)/p⌉` ordinary rounds in which an imagined B plays the dirty
//! vertex of least `d^B` and A answers with its ordinary strategy. A's
//! fractional move goes to the dirty vertex of largest `d^A`. Afterwards an
//! oracle tops up vertices that are clean in one game but not the other
//! until the clean sets agree.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::game::{GameState, Player};
use crate::graph::Graph;
use crate::rate::FractionParam;
use crate::strategy::Strategy;

/// Per-vertex brush counts for both players in both games. Discrepancies are
/// kept scaled by the rate denominator so they stay integral:
/// `den·d^A(v) = num·x^A(v) - den·y^A(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingLedger {
    rate: FractionParam,
    pub x_a: Vec<u64>,
    pub x_b: Vec<u64>,
    pub y_a: Vec<u64>,
    pub y_b: Vec<u64>,
}

impl CouplingLedger {
    pub fn new(n: usize, rate: FractionParam) -> Self {
        CouplingLedger { rate, x_a: vec![0; n], x_b: vec![0; n], y_a: vec![0; n], y_b: vec![0; n] }
    }

    fn scaled(&self, x: u64, y: u64) -> i64 {
        (self.rate.numer() * x) as i64 - (self.rate.denom() * y) as i64
    }

    pub fn d_a_scaled(&self, v: usize) -> i64 {
        self.scaled(self.x_a[v], self.y_a[v])
    }

    pub fn d_b_scaled(&self, v: usize) -> i64 {
        self.scaled(self.x_b[v], self.y_b[v])
    }

    pub fn d_a(&self, v: usize) -> Ratio<i64> {
        Ratio::new(self.d_a_scaled(v), self.rate.denom() as i64)
    }

    pub fn d_b(&self, v: usize) -> Ratio<i64> {
        Ratio::new(self.d_b_scaled(v), self.rate.denom() as i64)
    }

    /// `Σ_v d^A(v)` and `Σ_v d^B(v)`.
    pub fn sums(&self) -> (Ratio<i64>, Ratio<i64>) {
        let n = self.x_a.len();
        let den = self.rate.denom() as i64;
        let a: i64 = (0..n).map(|v| self.d_a_scaled(v)).sum();
        let b: i64 = (0..n).map(|v| self.d_b_scaled(v)).sum();
        (Ratio::new(a, den), Ratio::new(b, den))
    }

    /// Checks that each discrepancy sum equals `p·(ordinary placements) -
    /// (fractional placements)` for the given placement counts.
    pub fn balances(&self, ordinary: (u64, u64), fractional: (u64, u64)) -> bool {
        let p = Ratio::new(self.rate.numer() as i64, self.rate.denom() as i64);
        let (a, b) = self.sums();
        let expect = |o: u64, f: u64| p * Ratio::from_integer(o as i64) - Ratio::from_integer(f as i64);
        a == expect(ordinary.0, fractional.0) && b == expect(ordinary.1, fractional.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingReport {
    pub rate: FractionParam,
    /// Turns played in the ordinary game, oracle brushes excluded.
    pub ordinary_length: u64,
    /// Turns played in the fractional game, oracle brushes excluded.
    pub fractional_length: u64,
    /// Oracle brushes added to the ordinary game.
    pub oracle_ordinary: u64,
    /// Oracle brushes added to the fractional game.
    pub oracle_fractional: Ratio<u64>,
    pub max_d_a: Ratio<i64>,
    pub min_d_b: Ratio<i64>,
    pub fractional_rounds: u64,
    /// Oracle top-ups that needed more than the per-vertex allowance
    /// `⌈max(-d^A-d^B, 0)/p⌉` (ordinary) or `max(d^A+d^B, 0)` (fractional).
    pub allowance_violations: u64,
    /// Rounds after which a discrepancy sum disagreed with the placement
    /// counts.
    pub ledger_failures: u64,
}

impl CouplingReport {
    /// `ℓ_f - p·ℓ_o`.
    pub fn length_gap(&self) -> Ratio<i64> {
        let p = Ratio::new(self.rate.numer() as i64, self.rate.denom() as i64);
        Ratio::from_integer(self.fractional_length as i64) - p * Ratio::from_integer(self.ordinary_length as i64)
    }

    /// `m_f + p·m_o`.
    pub fn oracle_total(&self) -> Ratio<i64> {
        let p = Ratio::new(self.rate.numer() as i64, self.rate.denom() as i64);
        let m_f = Ratio::new(*self.oracle_fractional.numer() as i64, *self.oracle_fractional.denom() as i64);
        m_f + p * Ratio::from_integer(self.oracle_ordinary as i64)
    }
}

/// Slack in `|ℓ_f - p·ℓ_o|`: both games stop within the same fractional
/// round, which puts the gap in `[-1 - 2p, 2]`.
pub const ROUND_SLACK: i64 = 3;

struct Coupled<'g> {
    ordinary: GameState<'g>,
    fractional: GameState<'g>,
    ledger: CouplingLedger,
    oracle_ordinary: u64,
    oracle_fractional_units: u64,
    violations: u64,
}

impl Coupled<'_> {
    fn argmin_d_b(&self) -> usize {
        let b = self.ordinary.brush();
        b.dirty_vertices()
            .fold(None, |best: Option<usize>, v| match best {
                Some(u) if self.ledger.d_b_scaled(u) <= self.ledger.d_b_scaled(v) => Some(u),
                _ => Some(v),
            })
            .expect("ordinary game is not over")
    }

    fn argmax_d_a(&self) -> usize {
        let b = self.fractional.brush();
        b.dirty_vertices()
            .fold(None, |best: Option<usize>, v| match best {
                Some(u) if self.ledger.d_a_scaled(u) >= self.ledger.d_a_scaled(v) => Some(u),
                _ => Some(v),
            })
            .expect("fractional game is not over")
    }

    fn sync(&mut self) {
        let rate = self.ledger.rate;
        loop {
            let mut changed = false;
            let order: Vec<usize> = self.fractional.brush().firing_order().to_vec();
            for v in order {
                if self.ordinary.brush().is_clean(v) {
                    continue;
                }
                let need = self.ordinary.brush().deficit(v);
                let gap = -(self.ledger.d_a_scaled(v) + self.ledger.d_b_scaled(v));
                let allowance = (gap.max(0) as u64).div_ceil(rate.numer());
                if need > allowance {
                    self.violations += 1;
                }
                self.ordinary.inject(v, need);
                self.oracle_ordinary += need;
                changed = true;
            }
            let order: Vec<usize> = self.ordinary.brush().firing_order().to_vec();
            for v in order {
                if self.fractional.brush().is_clean(v) {
                    continue;
                }
                let need = self.fractional.brush().deficit(v);
                let allowance = (self.ledger.d_a_scaled(v) + self.ledger.d_b_scaled(v)).max(0) as u64;
                if need > allowance {
                    self.violations += 1;
                }
                self.fractional.inject(v, need);
                self.oracle_fractional_units += need;
                changed = true;
            }
            if !changed {
                return;
            }
        }
    }
}

/// Runs the coupled pair of games on `graph` with B moving first in both.
pub fn couple(
    graph: &Graph,
    rate: FractionParam,
    a_is: Player,
    a_ordinary: &mut dyn Strategy,
    b_fractional: &mut dyn Strategy,
    seed: u64,
) -> CouplingReport {
    let n = graph.vertex_count();
    let b_is = a_is.other();
    let init = vec![0; n];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Coupled {
        ordinary: GameState::new(graph, &init, b_is),
        fractional: GameState::with_rate(graph, rate, &init, b_is),
        ledger: CouplingLedger::new(n, rate),
        oracle_ordinary: 0,
        oracle_fractional_units: 0,
        violations: 0,
    };
    let mut placed_o = (0u64, 0u64);
    let mut placed_f = (0u64, 0u64);
    let mut max_d_a = 0i64;
    let mut min_d_b = 0i64;
    let mut ledger_failures = 0;
    let mut round = 0u64;

    while !c.fractional.is_over() {
        round += 1;
        let v = b_fractional.choose(&c.fractional, &mut rng);
        c.fractional.play(v).expect("strategy picks a dirty vertex");
        c.ledger.y_b[v] += 1;
        placed_f.1 += 1;

        for _ in 0..rate.rounds_for(round) {
            if c.ordinary.is_over() {
                break;
            }
            let u = c.argmin_d_b();
            c.ordinary.play(u).expect("dirty vertex");
            c.ledger.x_b[u] += 1;
            placed_o.1 += 1;
            if c.ordinary.is_over() {
                break;
            }
            let w = a_ordinary.choose(&c.ordinary, &mut rng);
            c.ordinary.play(w).expect("strategy picks a dirty vertex");
            c.ledger.x_a[w] += 1;
            placed_o.0 += 1;
        }
        if !c.fractional.is_over() {
            let v = c.argmax_d_a();
            c.fractional.play(v).expect("dirty vertex");
            c.ledger.y_a[v] += 1;
            placed_f.0 += 1;
        }
        c.sync();

        if !c.ledger.balances(placed_o, placed_f) {
            ledger_failures += 1;
        }
        for v in 0..n {
            max_d_a = max_d_a.max(c.ledger.d_a_scaled(v));
            min_d_b = min_d_b.min(c.ledger.d_b_scaled(v));
        }
    }

    let den = rate.denom();
    CouplingReport {
        rate,
        ordinary_length: c.ordinary.turns_elapsed() as u64,
        fractional_length: c.fractional.turns_elapsed() as u64,
        oracle_ordinary: c.oracle_ordinary,
        oracle_fractional: Ratio::new(c.oracle_fractional_units, den),
        max_d_a: Ratio::new(max_d_a, den as i64),
        min_d_b: Ratio::new(min_d_b, den as i64),
        fractional_rounds: round,
        allowance_violations: c.violations,
        ledger_failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chips::chip_bound;
    use crate::families::{complete, cycle, g_nk, path};
    use crate::strategy::{Balanced, Greedy};

    fn check(r: &CouplingReport) {
        assert_eq!(r.allowance_violations, 0);
        assert_eq!(r.ledger_failures, 0);
        let gap = r.length_gap();
        assert!(gap <= Ratio::from_integer(ROUND_SLACK) && gap >= Ratio::from_integer(-ROUND_SLACK), "{r:?}");
    }

    #[test]
    fn unit_rate_games_coincide() {
        for g in [complete(9).unwrap(), path(7).unwrap(), cycle(8).unwrap(), g_nk(3, 2).unwrap()] {
            for a_is in [Player::Min, Player::Max] {
                let r = couple(&g, FractionParam::ONE, a_is, &mut Greedy, &mut Balanced, 1);
                assert_eq!(r.ordinary_length, r.fractional_length, "{r:?}");
                assert_eq!(r.oracle_ordinary, 0);
                assert_eq!(r.oracle_fractional, Ratio::from_integer(0));
                check(&r);
            }
        }
    }

    #[test]
    fn half_rate_on_k30() {
        let g = complete(30).unwrap();
        let p = FractionParam::new(1, 2).unwrap();
        for a_is in [Player::Min, Player::Max] {
            let r = couple(&g, p, a_is, &mut Greedy, &mut Balanced, 3);
            check(&r);
            let gap = r.length_gap();
            let gap = if gap < Ratio::from_integer(0) { -gap } else { gap };
            assert!(gap <= r.oracle_total() + Ratio::from_integer(ROUND_SLACK));
        }
    }

    #[test]
    fn discrepancies_stay_within_chip_bound() {
        let g = complete(200).unwrap();
        let p = FractionParam::new(1, 2).unwrap();
        let r = couple(&g, p, Player::Min, &mut Greedy, &mut Balanced, 0);
        let cap = Ratio::from_integer((chip_bound(2, 200) / 2) as i64);
        assert!(r.max_d_a <= cap, "{r:?}");
        assert!(-r.min_d_b <= cap, "{r:?}");
        check(&r);
    }

    #[test]
    fn ledger_sums() {
        let mut l = CouplingLedger::new(3, FractionParam::new(1, 3).unwrap());
        l.x_a[0] = 3;
        l.y_a[1] = 1;
        l.x_b[2] = 1;
        assert_eq!(l.d_a(0), Ratio::from_integer(1));
        assert_eq!(l.d_b(2), Ratio::new(1, 3));
        assert!(l.balances((3, 1), (1, 0)));
        assert!(!l.balances((3, 1), (0, 0)));
    }
}
