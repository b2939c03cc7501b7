//! The k-chip-stacking game with a greedy defender.
//!
//! Each round the adversary adds `k` chips across `n` piles, then the
//! defender removes up to `k` chips from the largest pile (lowest index on
//! ties). The greedy defender keeps every pile at most
//! `2k⌈log_{4/3} n + 1⌉`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown adversary {0:?}")]
pub struct UnknownAdversary(pub alloc::string::String);

/// `2k·⌈log_{4/3}(n) + 1⌉`.
pub fn chip_bound(k: u64, n: u64) -> u64 {
    let levels = libm::ceil(libm::log(n as f64) / libm::log(4.0 / 3.0) + 1.0);
    2 * k * levels as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adversary {
    /// All `k` chips on the currently largest pile.
    StackOne,
    /// One chip at a time, cycling through the piles.
    Spread,
    /// All `k` chips on the second-largest pile, which the defender will not
    /// touch this round.
    TargetSecondLargest,
    /// Each chip on a uniformly random pile.
    Random,
}

impl Adversary {
    pub const ALL: [Adversary; 4] =
        [Adversary::StackOne, Adversary::Spread, Adversary::TargetSecondLargest, Adversary::Random];

    pub fn name(self) -> &'static str {
        match self {
            Adversary::StackOne => "stack-one",
            Adversary::Spread => "spread",
            Adversary::TargetSecondLargest => "target-second-largest",
            Adversary::Random => "random",
        }
    }

    pub fn from_name(name: &str) -> Result<Adversary, UnknownAdversary> {
        Adversary::ALL.into_iter().find(|a| a.name() == name).ok_or_else(|| UnknownAdversary(name.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChipStackState {
    k: u64,
    piles: Vec<u64>,
    // (size, index) ordered largest first, lowest index first among equals
    order: BTreeSet<(Reverse<u64>, usize)>,
    history_max: u64,
    cursor: usize,
}

impl ChipStackState {
    pub fn new(k: u64, n: usize) -> Self {
        assert!(k >= 1 && n >= 1, "need k >= 1 and n >= 1");
        ChipStackState {
            k,
            piles: alloc::vec![0; n],
            order: (0..n).map(|i| (Reverse(0), i)).collect(),
            history_max: 0,
            cursor: 0,
        }
    }

    pub fn piles(&self) -> &[u64] {
        &self.piles
    }

    pub fn history_max(&self) -> u64 {
        self.history_max
    }

    fn set(&mut self, i: usize, size: u64) {
        self.order.remove(&(Reverse(self.piles[i]), i));
        self.piles[i] = size;
        self.order.insert((Reverse(size), i));
        self.history_max = self.history_max.max(size);
    }

    fn ranked(&self, rank: usize) -> usize {
        // a single pile is also its own runner-up
        self.order.iter().nth(rank).or_else(|| self.order.iter().next()).expect("at least one pile").1
    }

    pub fn adversary_turn(&mut self, adversary: Adversary, rng: &mut ChaCha8Rng) {
        match adversary {
            Adversary::StackOne => {
                let i = self.ranked(0);
                self.set(i, self.piles[i] + self.k);
            }
            Adversary::TargetSecondLargest => {
                let i = self.ranked(1);
                self.set(i, self.piles[i] + self.k);
            }
            Adversary::Spread => {
                for _ in 0..self.k {
                    let i = self.cursor;
                    self.cursor = (self.cursor + 1) % self.piles.len();
                    self.set(i, self.piles[i] + 1);
                }
            }
            Adversary::Random => {
                for _ in 0..self.k {
                    let i = rng.gen_range(0..self.piles.len());
                    self.set(i, self.piles[i] + 1);
                }
            }
        }
    }

    /// Removes as many chips as allowed from the largest pile.
    pub fn defender_turn(&mut self) {
        let i = self.ranked(0);
        self.set(i, self.piles[i].saturating_sub(self.k));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChipRun {
    pub history_max: u64,
    /// Largest pile right after each adversary turn.
    pub peaks: Vec<u64>,
}

pub fn chips_play(k: u64, n: usize, adversary: Adversary, rounds: u64, seed: u64) -> ChipRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = ChipStackState::new(k, n);
    let mut peaks = Vec::with_capacity(rounds as usize);
    for _ in 0..rounds {
        state.adversary_turn(adversary, &mut rng);
        peaks.push(state.piles[state.ranked(0)]);
        state.defender_turn();
    }
    ChipRun { history_max: state.history_max, peaks }
}
