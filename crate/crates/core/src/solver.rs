//! Exact game values by memoized minimax over stable positions.
//!
//! The remaining length of a game depends only on the stable position (clean
//! set plus residues on dirty vertices) and on who moves, so the memo table
//! is keyed on exactly that. Positions are packed into a `u128`: one bit for
//! the mover, one bit per vertex for the clean set, and a fixed-width residue
//! field per vertex.
//!
//! With [`SymmetryMode::Sorted`], residues are sorted within each class of
//! twin vertices (equal neighborhoods apart from each other) before packing.
//! Permuting twins is a graph automorphism, so the value is unchanged while
//! far fewer positions are stored. Complete graphs form a single class and
//! star leaves form one.

use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::RngCore;
use thiserror::Error;

use crate::cleaning::BrushState;
use crate::game::{GameState, Player};
use crate::graph::Graph;
use crate::strategy::{Greedy, Strategy};

pub const MAX_VERTICES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SymmetryMode {
    #[default]
    None,
    Sorted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph too large for exact solving ({vertices} vertices, max degree {max_degree})")]
    TooLarge { vertices: usize, max_degree: usize },
    #[error("sorted symmetry needs interchangeable vertices, and this graph has no twins")]
    NoSymmetry,
    #[error("position budget of {0} exhausted")]
    BudgetExceeded(u64),
    #[error("the game is already over")]
    GameOver,
    #[error("exact solving covers the ordinary game only")]
    Fractional,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    /// Optimal number of remaining turns; `None` when the budget ran out.
    pub value: Option<u32>,
    /// Lowest-id optimal move, or `None` when the game is already over.
    pub principal_move: Option<usize>,
    pub positions_explored: u64,
    pub budget_hit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    clean: u32,
    amount: [u8; MAX_VERTICES],
}

/// Exact solver for one graph. The memo table survives between queries, so
/// asking for many positions of the same graph is cheap.
#[derive(Debug, Clone)]
pub struct Solver {
    n: usize,
    neighbors: Vec<u32>,
    residue_bits: u32,
    twin_classes: Vec<Vec<usize>>,
    memo: HashMap<u128, u16>,
    budget: u64,
}

impl Solver {
    pub fn new(graph: &Graph, mode: SymmetryMode, budget: u64) -> Result<Self, SolveError> {
        let n = graph.vertex_count();
        let max_degree = graph.max_degree();
        // residues on dirty vertices are below the degree
        let residue_bits = usize::BITS - max_degree.saturating_sub(1).leading_zeros();
        if n > MAX_VERTICES || max_degree > u8::MAX as usize / 2 || 1 + n * (1 + residue_bits as usize) > 128
        {
            return Err(SolveError::TooLarge { vertices: n, max_degree });
        }
        let neighbors: Vec<u32> =
            (0..n).map(|v| graph.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
        let twin_classes = match mode {
            SymmetryMode::None => Vec::new(),
            SymmetryMode::Sorted => {
                let classes = twin_classes(&neighbors);
                if classes.is_empty() {
                    return Err(SolveError::NoSymmetry);
                }
                classes
            }
        };
        Ok(Solver { n, neighbors, residue_bits, twin_classes, memo: HashMap::new(), budget })
    }

    pub fn positions_explored(&self) -> u64 {
        self.memo.len() as u64
    }

    fn full(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn dirty_degree(&self, pos: &Pos, v: usize) -> u8 {
        (self.neighbors[v] & !pos.clean).count_ones() as u8
    }

    fn stabilize(&self, pos: &mut Pos) {
        'outer: loop {
            let mut dirty = !pos.clean & self.full();
            while dirty != 0 {
                let v = dirty.trailing_zeros() as usize;
                dirty &= dirty - 1;
                let dd = self.dirty_degree(pos, v);
                if pos.amount[v] >= dd {
                    pos.amount[v] -= dd;
                    pos.clean |= 1 << v;
                    let mut nb = self.neighbors[v] & !pos.clean;
                    while nb != 0 {
                        let w = nb.trailing_zeros() as usize;
                        nb &= nb - 1;
                        pos.amount[w] += 1;
                    }
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn key(&self, pos: &Pos, mover: Player) -> u128 {
        let mut canon = *pos;
        for class in &self.twin_classes {
            // clean members sort after every residue
            let mut codes: Vec<u16> = class
                .iter()
                .map(|&v| if pos.clean >> v & 1 == 1 { u16::MAX } else { pos.amount[v] as u16 })
                .collect();
            codes.sort_unstable();
            for (&v, &c) in class.iter().zip(&codes) {
                if c == u16::MAX {
                    canon.clean |= 1 << v;
                } else {
                    canon.clean &= !(1 << v);
                    canon.amount[v] = c as u8;
                }
            }
        }
        let mut key = (mover == Player::Max) as u128;
        key |= (canon.clean as u128) << 1;
        let mut shift = 1 + self.n as u32;
        for v in 0..self.n {
            if canon.clean >> v & 1 == 0 {
                key |= (canon.amount[v] as u128) << shift;
            }
            shift += self.residue_bits;
        }
        key
    }

    fn child(&self, pos: &Pos, v: usize) -> Pos {
        let mut c = *pos;
        c.amount[v] += 1;
        self.stabilize(&mut c);
        c
    }

    fn solve(&mut self, pos: &Pos, mover: Player) -> Result<u16, SolveError> {
        if pos.clean == self.full() {
            return Ok(0);
        }
        let key = self.key(pos, mover);
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let mut best: Option<u16> = None;
        let mut dirty = !pos.clean & self.full();
        while dirty != 0 {
            let v = dirty.trailing_zeros() as usize;
            dirty &= dirty - 1;
            let child = self.child(pos, v);
            let value = 1 + self.solve(&child, mover.other())?;
            best = Some(match (best, mover) {
                (None, _) => value,
                (Some(b), Player::Min) => b.min(value),
                (Some(b), Player::Max) => b.max(value),
            });
            // no game can end sooner than the next turn
            if mover == Player::Min && value == 1 {
                break;
            }
        }
        if self.memo.len() as u64 >= self.budget {
            return Err(SolveError::BudgetExceeded(self.budget));
        }
        let best = best.expect("a dirty vertex exists");
        self.memo.insert(key, best);
        Ok(best)
    }

    fn position(&self, state: &BrushState<'_>) -> Result<Pos, SolveError> {
        if !state.rate().is_one() {
            return Err(SolveError::Fractional);
        }
        assert_eq!(state.vertex_count(), self.n, "state belongs to another graph");
        let mut s = state.clone();
        s.stabilize();
        let mut pos = Pos { clean: 0, amount: [0; MAX_VERTICES] };
        for v in 0..self.n {
            if s.is_clean(v) {
                pos.clean |= 1 << v;
            } else {
                pos.amount[v] = s.amount(v) as u8;
            }
        }
        Ok(pos)
    }

    /// Optimal remaining length of the game from `state` with `mover` to play.
    pub fn value(&mut self, state: &BrushState<'_>, mover: Player) -> Result<u32, SolveError> {
        let pos = self.position(state)?;
        self.solve(&pos, mover).map(u32::from)
    }

    /// The lowest-id move achieving the optimal value, with that value.
    pub fn best_move(&mut self, state: &BrushState<'_>, mover: Player) -> Result<(usize, u32), SolveError> {
        let pos = self.position(state)?;
        if pos.clean == self.full() {
            return Err(SolveError::GameOver);
        }
        let mut best: Option<(usize, u16)> = None;
        for v in 0..self.n {
            if pos.clean >> v & 1 == 1 {
                continue;
            }
            let child = self.child(&pos, v);
            let value = 1 + self.solve(&child, mover.other())?;
            let better = match (best, mover) {
                (None, _) => true,
                (Some((_, b)), Player::Min) => value < b,
                (Some((_, b)), Player::Max) => value > b,
            };
            if better {
                best = Some((v, value));
            }
        }
        let (v, value) = best.expect("a dirty vertex exists");
        Ok((v, value as u32))
    }
}

/// Classes (of size at least two) of vertices whose neighborhoods agree
/// outside each other.
fn twin_classes(neighbors: &[u32]) -> Vec<Vec<usize>> {
    let n = neighbors.len();
    let twins = |u: usize, v: usize| neighbors[u] & !(1 << v) == neighbors[v] & !(1 << u);
    let mut assigned = alloc::vec![false; n];
    let mut classes = Vec::new();
    for u in 0..n {
        if assigned[u] {
            continue;
        }
        let mut class = alloc::vec![u];
        for v in u + 1..n {
            if !assigned[v] && class.iter().all(|&w| twins(w, v)) {
                class.push(v);
            }
        }
        if class.len() > 1 {
            for &v in &class {
                assigned[v] = true;
            }
            classes.push(class);
        }
    }
    classes
}

/// Solves the game on `graph` from configuration `init`.
///
/// Running out of budget is reported in the returned report, not as an
/// error; errors are reserved for unsupported inputs.
pub fn game_value(
    graph: &Graph,
    init: &[u64],
    mover: Player,
    mode: SymmetryMode,
    budget: u64,
) -> Result<SolveReport, SolveError> {
    let mut solver = Solver::new(graph, mode, budget)?;
    let mut state = BrushState::from_configuration(graph, crate::rate::FractionParam::ONE, init);
    state.stabilize();
    if state.all_clean() {
        return Ok(SolveReport { value: Some(0), principal_move: None, positions_explored: 0, budget_hit: false });
    }
    match solver.best_move(&state, mover) {
        Ok((v, value)) => Ok(SolveReport {
            value: Some(value),
            principal_move: Some(v),
            positions_explored: solver.positions_explored(),
            budget_hit: false,
        }),
        Err(SolveError::BudgetExceeded(_)) => Ok(SolveReport {
            value: None,
            principal_move: None,
            positions_explored: solver.positions_explored(),
            budget_hit: true,
        }),
        Err(e) => Err(e),
    }
}

/// The lowest-id optimal move for `mover`.
pub fn optimal_move(graph: &Graph, init: &[u64], mover: Player, budget: u64) -> Result<usize, SolveError> {
    let mut solver = Solver::new(graph, SymmetryMode::None, budget)?;
    let state = BrushState::from_configuration(graph, crate::rate::FractionParam::ONE, init);
    solver.best_move(&state, mover).map(|(v, _)| v)
}

/// Plays exactly optimal moves, keeping one memo table per graph. Falls back
/// to [`Greedy`] if the graph is too large or the budget runs out.
#[derive(Debug, Clone)]
pub struct OptimalPlay {
    budget: u64,
    cache: Option<(Vec<(usize, usize)>, Solver)>,
}

impl OptimalPlay {
    pub fn new(budget: u64) -> Self {
        OptimalPlay { budget, cache: None }
    }
}

impl Default for OptimalPlay {
    fn default() -> Self {
        OptimalPlay::new(20_000_000)
    }
}

impl Strategy for OptimalPlay {
    fn choose(&mut self, game: &GameState<'_>, rng: &mut dyn RngCore) -> usize {
        let graph = game.graph();
        let stale = !matches!(&self.cache, Some((edges, _)) if edges.as_slice() == graph.edges());
        if stale {
            self.cache = Solver::new(graph, SymmetryMode::None, self.budget)
                .ok()
                .map(|s| (graph.edges().to_vec(), s));
        }
        if let Some((_, solver)) = &mut self.cache {
            if let Ok((v, _)) = solver.best_move(game.brush(), game.mover()) {
                return v;
            }
        }
        Greedy.choose(game, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, star};

    const BUDGET: u64 = 10_000_000;

    fn bg(g: &Graph, mover: Player) -> u32 {
        game_value(g, &alloc::vec![0; g.vertex_count()], mover, SymmetryMode::None, BUDGET)
            .unwrap()
            .value
            .unwrap()
    }

    #[test]
    fn small_values() {
        let p3 = path(3).unwrap();
        assert_eq!(bg(&p3, Player::Min), 1);
        assert_eq!(bg(&p3, Player::Max), 2);
        assert_eq!(bg(&complete(1).unwrap(), Player::Min), 0);
        assert_eq!(bg(&complete(3).unwrap(), Player::Min), 3);
        for n in 3..=6 {
            let c = cycle(n).unwrap();
            assert_eq!((bg(&c, Player::Min), bg(&c, Player::Max)), (3, 2), "C_{n}");
        }
        let s = star(5).unwrap();
        assert_eq!((bg(&s, Player::Min), bg(&s, Player::Max)), (3, 4));
    }

    #[test]
    fn principal_moves() {
        let p3 = path(3).unwrap();
        assert_eq!(optimal_move(&p3, &[0; 3], Player::Max, BUDGET), Ok(1));
        let k2 = complete(2).unwrap();
        assert_eq!(optimal_move(&k2, &[0; 2], Player::Min, BUDGET), Ok(0));
        assert_eq!(optimal_move(&p3, &[1, 0, 0], Player::Min, BUDGET), Err(SolveError::GameOver));
    }

    #[test]
    fn symmetry_mode_shrinks_search() {
        let k5 = complete(5).unwrap();
        let plain = game_value(&k5, &[0; 5], Player::Min, SymmetryMode::None, BUDGET).unwrap();
        let sorted = game_value(&k5, &[0; 5], Player::Min, SymmetryMode::Sorted, BUDGET).unwrap();
        assert_eq!(plain.value, sorted.value);
        assert!(sorted.positions_explored < plain.positions_explored);
        let k3 = complete(3).unwrap();
        for mode in [SymmetryMode::None, SymmetryMode::Sorted] {
            assert_eq!(game_value(&k3, &[0; 3], Player::Min, mode, BUDGET).unwrap().value, Some(3));
        }
        assert_eq!(Solver::new(&path(4).unwrap(), SymmetryMode::Sorted, BUDGET).unwrap_err(), SolveError::NoSymmetry);
    }

    #[test]
    fn budget_reported() {
        let k6 = complete(6).unwrap();
        let r = game_value(&k6, &[0; 6], Player::Min, SymmetryMode::None, 5).unwrap();
        assert!(r.budget_hit);
        assert_eq!(r.value, None);
    }

    #[test]
    fn twin_classes_of_small_graphs() {
        let s = star(3).unwrap();
        let nb: Vec<u32> = (0..4).map(|v| s.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
        assert_eq!(twin_classes(&nb), [alloc::vec![1, 2, 3]]);
        let k4 = complete(4).unwrap();
        let nb: Vec<u32> = (0..4).map(|v| k4.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
        assert_eq!(twin_classes(&nb), [alloc::vec![0, 1, 2, 3]]);
    }
}
