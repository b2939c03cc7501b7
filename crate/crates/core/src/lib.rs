//! Graph brushing: the cleaning process, the two-player brushing game, exact
//! solving on small graphs, the column game behind complete graphs, the
//! fractional variant, chip stacking, and games on random graphs.
//!
//! Everything here is `no_std` with `alloc`. File formats, the CLI and
//! experiment records live in the `brushgame` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod brush_number;
pub mod chips;
pub mod cleaning;
pub mod coupling;
pub mod families;
pub mod game;
pub mod graph;
pub mod ode;
pub mod random;
pub mod rate;
pub mod seed;
pub mod solver;
pub mod strategy;
pub mod triangle;

pub use cleaning::{BrushState, CleaningTrace};
pub use game::{GameState, Player};
pub use graph::{Graph, GraphError};
pub use rate::FractionParam;
pub use strategy::{Strategy, StrategyKind};
