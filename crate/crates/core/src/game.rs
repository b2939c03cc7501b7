//! The two-player brushing game.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::cleaning::{BrushState, CleaningTrace};
use crate::graph::Graph;
use crate::rate::FractionParam;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Min,
    Max,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Min => Player::Max,
            Player::Max => Player::Min,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::Min => "min",
            Player::Max => "max",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("the game is over")]
    GameOver,
    #[error("vertex {0} is clean")]
    NotDirty(usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

/// A game position between turns. The brush state is always stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState<'g> {
    brush: BrushState<'g>,
    mover: Player,
    transcript: Vec<(Player, usize)>,
    initial_units: u64,
    injected_units: u64,
}

impl<'g> GameState<'g> {
    /// Places `init` and stabilizes; setup firings cost no turns.
    pub fn new(graph: &'g Graph, init: &[u64], first: Player) -> Self {
        Self::with_rate(graph, FractionParam::ONE, init, first)
    }

    /// The fractional game: firing needs `p` brushes per dirty neighbor.
    pub fn with_rate(graph: &'g Graph, rate: FractionParam, init: &[u64], first: Player) -> Self {
        let mut brush = BrushState::from_configuration(graph, rate, init);
        brush.stabilize();
        let initial_units = brush.total_units();
        GameState { brush, mover: first, transcript: Vec::new(), initial_units, injected_units: 0 }
    }

    /// Starts from an arbitrary (possibly unstable) brush state.
    pub fn from_state(mut brush: BrushState<'g>, first: Player) -> Self {
        brush.stabilize();
        let initial_units = brush.total_units();
        GameState { brush, mover: first, transcript: Vec::new(), initial_units, injected_units: 0 }
    }

    pub fn brush(&self) -> &BrushState<'g> {
        &self.brush
    }

    pub fn graph(&self) -> &'g Graph {
        self.brush.graph()
    }

    pub fn mover(&self) -> Player {
        self.mover
    }

    pub fn turns_elapsed(&self) -> usize {
        self.transcript.len()
    }

    pub fn transcript(&self) -> &[(Player, usize)] {
        &self.transcript
    }

    pub fn is_over(&self) -> bool {
        self.brush.all_clean()
    }

    /// The dirty vertices; empty once the game is over.
    pub fn legal_moves(&self) -> Vec<usize> {
        self.brush.dirty_vertices().collect()
    }

    pub fn is_legal(&self, v: usize) -> bool {
        v < self.brush.vertex_count() && !self.brush.is_clean(v)
    }

    /// Adds one brush to `v` for the player to move, then stabilizes.
    pub fn play(&mut self, v: usize) -> Result<CleaningTrace, MoveError> {
        if self.is_over() {
            return Err(MoveError::GameOver);
        }
        if v >= self.brush.vertex_count() {
            return Err(MoveError::NoSuchVertex(v));
        }
        if self.brush.is_clean(v) {
            return Err(MoveError::NotDirty(v));
        }
        let trace = self.brush.place_and_stabilize(v);
        self.transcript.push((self.mover, v));
        self.mover = self.mover.other();
        Ok(trace)
    }

    /// Upper bound on the length of any game: each turn goes to a dirty
    /// vertex, and a vertex holding `⌈p·deg⌉` brushes has fired.
    pub fn turn_cap(&self) -> usize {
        let g = self.graph();
        let rate = self.brush.rate();
        (0..g.vertex_count()).map(|v| rate.ceil_times(g.degree(v) as u64) as usize).sum::<usize>() + 1
    }

    /// Adds `units` to dirty vertex `v` outside of any turn and stabilizes.
    /// The coupling oracles use this; it does not count as a move.
    pub fn inject(&mut self, v: usize, units: u64) -> CleaningTrace {
        debug_assert!(!self.brush.is_clean(v));
        self.brush.add_units(v, units);
        self.injected_units += units;
        self.brush.stabilize_from(&[v])
    }

    pub fn injected_units(&self) -> u64 {
        self.injected_units
    }

    /// Units present minus units placed during play or injected; constant
    /// over a game.
    pub fn conserved_units(&self) -> u64 {
        self.brush.total_units() - self.turns_elapsed() as u64 * self.brush.rate().denom() - self.injected_units
    }

    pub fn initial_units(&self) -> u64 {
        self.initial_units
    }
}

/// Re-applies `transcript` to a fresh game.
pub fn replay<'g>(
    graph: &'g Graph,
    init: &[u64],
    first: Player,
    transcript: &[(Player, usize)],
) -> Result<GameState<'g>, MoveError> {
    let mut game = GameState::new(graph, init, first);
    for &(_, v) in transcript {
        game.play(v)?;
    }
    Ok(game)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path};

    #[test]
    fn fresh_games() {
        let k3 = complete(3).unwrap();
        let g = GameState::new(&k3, &[0; 3], Player::Min);
        assert_eq!(g.legal_moves(), [0, 1, 2]);
        assert_eq!(g.turns_elapsed(), 0);

        let e5 = Graph::empty(5);
        assert!(GameState::new(&e5, &[0; 5], Player::Min).is_over());

        let p3 = path(3).unwrap();
        assert!(GameState::new(&p3, &[1, 0, 0], Player::Min).is_over());
    }

    #[test]
    fn moves_and_errors() {
        let k2 = complete(2).unwrap();
        let mut g = GameState::new(&k2, &[0, 0], Player::Min);
        g.play(0).unwrap();
        assert!(g.is_over());
        assert_eq!(g.turns_elapsed(), 1);
        assert!(g.legal_moves().is_empty());
        assert_eq!(g.play(1), Err(MoveError::GameOver));

        let p3 = path(3).unwrap();
        let mut g = GameState::new(&p3, &[0; 3], Player::Max);
        let trace = g.play(1).unwrap();
        assert!(trace.firing_order.is_empty());
        assert_eq!(g.mover(), Player::Min);
        assert_eq!(g.play(7), Err(MoveError::NoSuchVertex(7)));

        let k4 = complete(4).unwrap();
        let mut g = GameState::new(&k4, &[0; 4], Player::Min);
        for _ in 0..3 {
            g.play(0).unwrap();
        }
        assert_eq!(g.legal_moves(), [1, 2, 3]);
        let before = g.clone();
        assert_eq!(g.play(0), Err(MoveError::NotDirty(0)));
        assert_eq!(g, before);
    }

    #[test]
    fn replay_reproduces_state() {
        let k4 = complete(4).unwrap();
        let mut g = GameState::new(&k4, &[0; 4], Player::Min);
        for v in [0, 1, 0, 2, 0] {
            g.play(v).unwrap();
        }
        assert!(g.is_over());
        let r = replay(&k4, &[0; 4], Player::Min, g.transcript()).unwrap();
        assert_eq!(r, g);
        assert_eq!(g.conserved_units(), 0);
        assert_eq!(g.turn_cap(), 2 * k4.edge_count() + 1);
    }
}
