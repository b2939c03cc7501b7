//! Exact brush number by searching configurations in order of total size.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cleaning::{can_clean, BrushState};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrushNumberError {
    #[error("search budget of {budget} configurations exhausted below total {reached}")]
    BudgetExceeded { budget: u64, reached: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrushNumber {
    pub value: u64,
    /// A cleaning configuration of minimum total.
    pub witness: Vec<u64>,
    pub configurations_checked: u64,
}

/// Half the number of odd-degree vertices.
pub fn odd_lower_bound(g: &Graph) -> u64 {
    (g.degrees().iter().filter(|d| *d % 2 == 1).count() / 2) as u64
}

/// Cleans greedily by topping up the dirty vertex closest to firing;
/// returns the total used and the configuration that achieves it.
pub fn greedy_upper_bound(g: &Graph) -> (u64, Vec<u64>) {
    let mut config = alloc::vec![0; g.vertex_count()];
    let mut state = BrushState::new(g);
    state.stabilize();
    while !state.all_clean() {
        let v = state
            .dirty_vertices()
            .min_by_key(|&v| (state.deficit(v), v))
            .expect("a dirty vertex exists");
        let need = state.deficit(v);
        config[v] += need;
        state.place(v, need);
        state.stabilize_from(&[v]);
    }
    (config.iter().sum(), config)
}

struct Search<'a> {
    graph: &'a Graph,
    caps: Vec<u64>,
    // suffix sums of caps, for feasibility pruning
    room: Vec<u64>,
    config: Vec<u64>,
    checked: u64,
    budget: u64,
}

enum Found {
    Yes,
    No,
    OutOfBudget,
}

impl Search<'_> {
    fn assign(&mut self, v: usize, remaining: u64) -> Found {
        if remaining > self.room[v] {
            return Found::No;
        }
        if v == self.config.len() {
            // someone has to fire first, and that needs a vertex at its cap
            if !self.config.iter().zip(&self.caps).any(|(f, c)| f == c && *c > 0) {
                return Found::No;
            }
            if self.checked >= self.budget {
                return Found::OutOfBudget;
            }
            self.checked += 1;
            return if can_clean(self.graph, &self.config) { Found::Yes } else { Found::No };
        }
        for amount in (0..=remaining.min(self.caps[v])).rev() {
            self.config[v] = amount;
            match self.assign(v + 1, remaining - amount) {
                Found::No => {}
                other => return other,
            }
        }
        self.config[v] = 0;
        Found::No
    }
}

/// Minimum total of a configuration that cleans `g`.
///
/// Totals are tried upward from the odd-degree bound; a vertex never needs
/// more brushes than its degree, so amounts are capped there. `budget` limits
/// the number of configurations whose cleaning is simulated.
pub fn brush_number(g: &Graph, budget: u64) -> Result<BrushNumber, BrushNumberError> {
    let (upper, greedy_config) = greedy_upper_bound(g);
    let mut lower = odd_lower_bound(g);
    if g.edge_count() > 0 {
        lower = lower.max(1);
    }
    let caps: Vec<u64> = g.degrees().into_iter().map(|d| d as u64).collect();
    let mut room = alloc::vec![0; caps.len() + 1];
    for v in (0..caps.len()).rev() {
        room[v] = room[v + 1] + caps[v];
    }
    let mut search =
        Search { graph: g, caps, room, config: alloc::vec![0; g.vertex_count()], checked: 0, budget };
    for total in lower..upper {
        search.config.iter_mut().for_each(|f| *f = 0);
        match search.assign(0, total) {
            Found::Yes => {
                return Ok(BrushNumber {
                    value: total,
                    witness: search.config.clone(),
                    configurations_checked: search.checked,
                })
            }
            Found::No => {}
            Found::OutOfBudget => return Err(BrushNumberError::BudgetExceeded { budget, reached: total }),
        }
    }
    Ok(BrushNumber { value: upper, witness: greedy_config, configurations_checked: search.checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, path, sunlet};

    #[test]
    fn odd_bound_examples() {
        assert_eq!(odd_lower_bound(&sunlet(4).unwrap()), 4);
        assert_eq!(odd_lower_bound(&cycle(6).unwrap()), 0);
        assert_eq!(odd_lower_bound(&complete(4).unwrap()), 2);
    }

    #[test]
    fn small_brush_numbers() {
        assert_eq!(brush_number(&path(5).unwrap(), 1_000).unwrap().value, 1);
        assert_eq!(brush_number(&cycle(5).unwrap(), 10_000).unwrap().value, 2);
        assert_eq!(brush_number(&complete(4).unwrap(), 10_000).unwrap().value, 4);
        assert_eq!(brush_number(&Graph::empty(3), 10).unwrap().value, 0);
    }

    #[test]
    fn witness_cleans() {
        for g in [cycle(7).unwrap(), complete(5).unwrap(), sunlet(4).unwrap()] {
            let b = brush_number(&g, 1_000_000).unwrap();
            assert!(can_clean(&g, &b.witness));
            assert_eq!(b.witness.iter().sum::<u64>(), b.value);
            assert!(b.value >= odd_lower_bound(&g));
        }
    }

    #[test]
    fn budget_failure_is_distinct() {
        let err = brush_number(&complete(6).unwrap(), 1).unwrap_err();
        assert!(matches!(err, BrushNumberError::BudgetExceeded { budget: 1, .. }));
    }
}
