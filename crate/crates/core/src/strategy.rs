//! Move-selection strategies and the match runner.

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::game::{GameState, Player};
use crate::graph::Graph;
use crate::rate::FractionParam;

/// Chooses a legal move for the player to move. Only called on games that
/// are not over.
pub trait Strategy {
    fn choose(&mut self, game: &GameState<'_>, rng: &mut dyn RngCore) -> usize;
}

/// Tops up the dirty vertex holding the most brushes (lowest id on ties).
/// On complete graphs this is the optimal strategy for Min.
#[derive(Debug, Clone, Copy, Default)]
pub struct Greedy;

/// Adds to the dirty vertex holding the fewest brushes (lowest id on ties).
/// On complete graphs this is the optimal strategy for Max.
#[derive(Debug, Clone, Copy, Default)]
pub struct Balanced;

/// Uniform over the legal moves.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomMove;

impl Strategy for Greedy {
    fn choose(&mut self, game: &GameState<'_>, _rng: &mut dyn RngCore) -> usize {
        let b = game.brush();
        b.dirty_vertices()
            .fold(None, |best: Option<usize>, v| match best {
                Some(u) if b.amount(u) >= b.amount(v) => Some(u),
                _ => Some(v),
            })
            .expect("game is not over")
    }
}

impl Strategy for Balanced {
    fn choose(&mut self, game: &GameState<'_>, _rng: &mut dyn RngCore) -> usize {
        let b = game.brush();
        b.dirty_vertices()
            .fold(None, |best: Option<usize>, v| match best {
                Some(u) if b.amount(u) <= b.amount(v) => Some(u),
                _ => Some(v),
            })
            .expect("game is not over")
    }
}

impl Strategy for RandomMove {
    fn choose(&mut self, game: &GameState<'_>, rng: &mut dyn RngCore) -> usize {
        let moves = game.legal_moves();
        moves[rng.gen_range(0..moves.len())]
    }
}

/// Strategies selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    Greedy,
    Balanced,
    Random,
    Optimal,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 4] =
        [StrategyKind::Greedy, StrategyKind::Balanced, StrategyKind::Random, StrategyKind::Optimal];

    pub fn from_name(name: &str) -> Option<StrategyKind> {
        StrategyKind::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Greedy => "greedy",
            StrategyKind::Balanced => "balanced",
            StrategyKind::Random => "random",
            StrategyKind::Optimal => "optimal",
        }
    }

    /// Builds the strategy; `Optimal` solves positions exactly on demand and
    /// is only practical on small graphs.
    pub fn build(self) -> Box<dyn Strategy> {
        match self {
            StrategyKind::Greedy => Box::new(Greedy),
            StrategyKind::Balanced => Box::new(Balanced),
            StrategyKind::Random => Box::new(RandomMove),
            StrategyKind::Optimal => Box::new(crate::solver::OptimalPlay::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("game exceeded its turn cap of {0}")]
    TurnCapExceeded(usize),
    #[error("strategy chose illegal vertex {0}")]
    IllegalChoice(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOutcome {
    pub length: usize,
    pub transcript: Vec<(Player, usize)>,
}

/// Plays a full game; the random stream is seeded from `seed` alone.
pub fn run_match(
    graph: &Graph,
    init: &[u64],
    min: &mut dyn Strategy,
    max: &mut dyn Strategy,
    first: Player,
    seed: u64,
) -> Result<MatchOutcome, MatchError> {
    run_match_with_rate(graph, FractionParam::ONE, init, min, max, first, seed)
}

pub fn run_match_with_rate(
    graph: &Graph,
    rate: FractionParam,
    init: &[u64],
    min: &mut dyn Strategy,
    max: &mut dyn Strategy,
    first: Player,
    seed: u64,
) -> Result<MatchOutcome, MatchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut game = GameState::with_rate(graph, rate, init, first);
    let cap = game.turn_cap();
    while !game.is_over() {
        if game.turns_elapsed() >= cap {
            return Err(MatchError::TurnCapExceeded(cap));
        }
        let v = match game.mover() {
            Player::Min => min.choose(&game, &mut rng),
            Player::Max => max.choose(&game, &mut rng),
        };
        game.play(v).map_err(|_| MatchError::IllegalChoice(v))?;
    }
    Ok(MatchOutcome { length: game.turns_elapsed(), transcript: game.transcript().to_vec() })
}
