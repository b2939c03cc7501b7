//! The column game that abstracts the brushing game on complete graphs.
//!
//! On `K_n` every dirty vertex has received the same number of brushes from
//! its clean neighbors, so only the brushes played directly on each vertex
//! matter. Sorting vertices by that count (most first), vertex `i` fires
//! exactly when vertices `1..i` have fired and it holds `n - 2i + 1` played
//! brushes. [`TriangleState`] tracks those per-column counts for a board of
//! width `w`, triangle height `h` (column `i` needs `h - 2i + 2`), and `t`
//! opening turns by Max; `K_n` is width `n`, height `n - 1`, no opening.
//!
//! A rate `p` scales every column requirement to `⌈p·(h - 2i + 2)⌉`, which is
//! the same reduction applied to the fractional game on `K_n`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::families::complete;
use crate::game::Player;
use crate::rate::FractionParam;
use crate::strategy::{run_match, Balanced, Greedy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("every column has fired")]
    GameOver,
    #[error("column {0} is not on the board")]
    NoSuchColumn(usize),
    #[error("column {0} has fired")]
    Fired(usize),
    #[error("a brush on column {0} would break the column ordering")]
    Unsorted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnStrategy {
    /// Play the first unfired column until it fires.
    Greedy,
    /// Play the lowest-indexed unfired column among those with the fewest
    /// brushes.
    Balanced,
}

/// `max(h - 2i + 2, 0)` for 1-indexed column `i`.
pub fn threshold(i: usize, h: usize) -> usize {
    (h + 2).saturating_sub(2 * i)
}

/// Brushes inside the critical triangle of `K_n`:
/// `Σ_{i=1}^{⌊n/2⌋} (n - 2i + 1)`.
pub fn count_in_brushes(n: u64) -> u64 {
    (1..=n / 2).map(|i| n - 2 * i + 1).sum()
}

/// Board state. Columns are 1-indexed in the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleState {
    height: usize,
    scale: FractionParam,
    counts: Vec<u64>,
    fired: usize,
    total_turns: u64,
    opening_left: u64,
    after_opening: Player,
    mover: Player,
}

impl TriangleState {
    /// A fresh board; once the opening turns are spent the players alternate,
    /// starting with `after_opening`.
    pub fn new(
        width: usize,
        height: usize,
        opening_turns: u64,
        scale: FractionParam,
        after_opening: Player,
    ) -> Self {
        let mut s = TriangleState {
            height,
            scale,
            counts: alloc::vec![0; width],
            fired: 0,
            total_turns: 0,
            opening_left: opening_turns,
            after_opening,
            mover: if opening_turns > 0 { Player::Max } else { after_opening },
        };
        s.cascade();
        s
    }

    pub fn width(&self) -> usize {
        self.counts.len()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn fired_prefix(&self) -> usize {
        self.fired
    }

    pub fn total_turns(&self) -> u64 {
        self.total_turns
    }

    pub fn mover(&self) -> Player {
        self.mover
    }

    pub fn is_over(&self) -> bool {
        self.fired == self.counts.len()
    }

    /// Brushes column `i` needs before it can fire.
    pub fn column_threshold(&self, i: usize) -> u64 {
        self.scale.ceil_times(threshold(i, self.height) as u64)
    }

    fn cascade(&mut self) {
        while self.fired < self.counts.len() && self.counts[self.fired] >= self.column_threshold(self.fired + 1) {
            self.fired += 1;
        }
    }

    pub fn greedy_move(&self) -> Result<usize, TriangleError> {
        if self.is_over() {
            return Err(TriangleError::GameOver);
        }
        Ok(self.fired + 1)
    }

    pub fn balanced_move(&self) -> Result<usize, TriangleError> {
        if self.is_over() {
            return Err(TriangleError::GameOver);
        }
        let live = &self.counts[self.fired..];
        let least = *live.last().expect("unfired columns exist");
        Ok(self.fired + live.partition_point(|&c| c > least) + 1)
    }

    pub fn choose(&self, strategy: ColumnStrategy) -> Result<usize, TriangleError> {
        match strategy {
            ColumnStrategy::Greedy => self.greedy_move(),
            ColumnStrategy::Balanced => self.balanced_move(),
        }
    }

    /// Adds a brush to column `i` for the player to move and fires whatever
    /// becomes ready.
    pub fn place(&mut self, i: usize) -> Result<(), TriangleError> {
        if self.is_over() {
            return Err(TriangleError::GameOver);
        }
        if i == 0 || i > self.counts.len() {
            return Err(TriangleError::NoSuchColumn(i));
        }
        if i <= self.fired {
            return Err(TriangleError::Fired(i));
        }
        let c = i - 1;
        if c > self.fired && self.counts[c] + 1 > self.counts[c - 1] {
            return Err(TriangleError::Unsorted(i));
        }
        self.counts[c] += 1;
        self.total_turns += 1;
        self.cascade();
        if self.opening_left > 0 {
            self.opening_left -= 1;
            if self.opening_left == 0 {
                self.mover = self.after_opening;
            }
        } else {
            self.mover = self.mover.other();
        }
        Ok(())
    }

    /// Counts are nonincreasing, fired columns form a prefix, and the first
    /// unfired column is still short of its requirement.
    pub fn check_invariants(&self) -> bool {
        let sorted = self.counts[self.fired..].windows(2).all(|w| w[0] >= w[1]);
        let prefix = (0..self.fired).all(|c| self.counts[c] >= self.column_threshold(c + 1));
        let blocked = self.is_over() || self.counts[self.fired] < self.column_threshold(self.fired + 1);
        sorted && prefix && blocked
    }

    /// Plays to the end and returns the total number of placements.
    pub fn play_out(&mut self, min: ColumnStrategy, max: ColumnStrategy) -> u64 {
        while !self.is_over() {
            let strategy = match self.mover {
                Player::Min => min,
                Player::Max => max,
            };
            let i = self.choose(strategy).expect("game is not over");
            self.place(i).expect("strategies keep columns sorted");
        }
        self.total_turns
    }
}

/// Length of the column game with `t` opening Max turns followed by
/// alternation starting with Min.
pub fn simulate_triangle(w: usize, h: usize, t: u64, min: ColumnStrategy, max: ColumnStrategy) -> u64 {
    TriangleState::new(w, h, t, FractionParam::ONE, Player::Min).play_out(min, max)
}

/// Greedy Min against balanced Max on `K_n`, via the column game.
pub fn kn_game_length(n: usize) -> u64 {
    simulate_triangle(n, n.saturating_sub(1), 0, ColumnStrategy::Greedy, ColumnStrategy::Balanced)
}

/// Greedy Min against balanced Max in the fractional game on `K_n`.
pub fn simulate_fractional_kn(n: usize, p: FractionParam) -> u64 {
    TriangleState::new(n, n.saturating_sub(1), 0, p, Player::Min)
        .play_out(ColumnStrategy::Greedy, ColumnStrategy::Balanced)
}

/// The same play as [`kn_game_length`], but on the actual graph `K_n` with
/// the general greedy and balanced strategies.
pub fn kn_full_cross_check(n: usize) -> u64 {
    let g = complete(n).expect("n >= 1");
    run_match(&g, &alloc::vec![0; n], &mut Greedy, &mut Balanced, Player::Min, 0)
        .expect("greedy and balanced play legally")
        .length as u64
}
