//! Erdős–Rényi graphs and games on them.
//!
//! [`couple_kn_mimic`] has Min play greedily in an imaginary fractional game
//! on `K_n` (rate `p`) and copy those moves into the real game on `G`. Max
//! plays balanced in the real game; his moves are copied into the imaginary
//! game. A vertex that fires in the real game but not the imaginary one is
//! cleaned there by an oracle. A vertex that fires imaginarily but is still
//! dirty in the real game pauses the mirroring: Min tops it up in the real
//! game until it fires, and Max's moves meanwhile are not copied.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cleaning::BrushState;
use crate::families::complete;
use crate::game::{GameState, Player};
use crate::graph::Graph;
use crate::rate::FractionParam;
use crate::strategy::{run_match, Balanced, Greedy, Strategy};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandomError {
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("the order is not a permutation of the {0} vertices")]
    NotPermutation(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GnpSample {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub graph: Graph,
}

/// `G(n, p)`: pairs `(i, j)`, `i < j`, are visited row by row and each is an
/// edge when the next draw from one ChaCha8 stream is below `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<GnpSample, RandomError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(RandomError::BadProbability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                graph.add_edge(i, j).expect("each pair is visited once");
            }
        }
    }
    Ok(GnpSample { n, p, seed, graph })
}

/// Greedy Min against balanced Max, Min first, from the empty configuration.
pub fn heuristic_length(graph: &Graph, seed: u64) -> u64 {
    let n = graph.vertex_count();
    run_match(graph, &vec![0; n], &mut Greedy, &mut Balanced, Player::Min, seed)
        .expect("heuristics play legally")
        .length as u64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MimicRun {
    /// Turns in the real game.
    pub length: u64,
    /// Real turns (either player) taken while some vertex was clean in the
    /// imaginary game but dirty in the real one.
    pub pause_turns: u64,
    /// Units (of `1/den` brushes) the oracle added to the imaginary game.
    pub oracle_units: u64,
    /// The real game's firing order, setup firings included.
    pub firing_order: Vec<usize>,
}

/// Runs the mimic strategy on `graph`; `p` is the imaginary game's rate.
pub fn couple_kn_mimic(graph: &Graph, p: FractionParam, seed: u64) -> MimicRun {
    let n = graph.vertex_count();
    let kn = complete(n).expect("n >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut real = GameState::new(graph, &vec![0; n], Player::Min);
    let mut imag = BrushState::with_rate(&kn, p);
    imag.stabilize();
    let mut pause_turns = 0;
    let mut oracle_units = 0;

    // real-clean vertices are always imaginary-clean
    let sync = |real: &GameState<'_>, imag: &mut BrushState<'_>, oracle_units: &mut u64| {
        for &v in real.brush().firing_order() {
            if !imag.is_clean(v) {
                let need = imag.deficit(v);
                imag.add_units(v, need);
                *oracle_units += need;
                imag.stabilize_from(&[v]);
            }
        }
    };
    sync(&real, &mut imag, &mut oracle_units);

    while !real.is_over() {
        let pending = imag.firing_order().iter().copied().find(|&v| !real.brush().is_clean(v));
        let paused = pending.is_some();
        let v = match (real.mover(), pending) {
            (Player::Min, Some(v)) => v,
            (Player::Min, None) => {
                let v = (0..n)
                    .filter(|&u| !imag.is_clean(u))
                    .fold(None, |best: Option<usize>, u| match best {
                        Some(w) if imag.amount(w) >= imag.amount(u) => Some(w),
                        _ => Some(u),
                    })
                    .expect("imaginary game is not over while the real one is not");
                imag.place_and_stabilize(v);
                v
            }
            (Player::Max, _) => {
                let v = Balanced.choose(&real, &mut rng);
                if !paused && !imag.is_clean(v) {
                    imag.place_and_stabilize(v);
                }
                v
            }
        };
        real.play(v).expect("mimic picks dirty vertices");
        if paused {
            pause_turns += 1;
        }
        sync(&real, &mut imag, &mut oracle_units);
    }

    MimicRun {
        length: real.turns_elapsed() as u64,
        pause_turns,
        oracle_units,
        firing_order: real.brush().firing_order().to_vec(),
    }
}

/// `2·Σ_i max((i-1)p - deg⁻(v_i), 0) + Σ_i max(deg(v_i) - (n-1)p, 0)`, where
/// `deg⁻(v_i)` counts neighbors of `v_i` earlier in `order`.
pub fn discrepancy_d(graph: &Graph, order: &[usize], p: Ratio<u64>) -> Result<Ratio<u64>, RandomError> {
    let n = graph.vertex_count();
    let mut position = vec![usize::MAX; n];
    if order.len() != n {
        return Err(RandomError::NotPermutation(n));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(RandomError::NotPermutation(n));
        }
        position[v] = i;
    }
    let (a, b) = (*p.numer() as u128, *p.denom() as u128);
    let mut total: u128 = 0;
    for (i, &v) in order.iter().enumerate() {
        let back = graph.neighbors(v).iter().filter(|&&u| position[u] < i).count() as u128;
        let deg = graph.degree(v) as u128;
        total += 2 * (i as u128 * a).saturating_sub(back * b);
        total += (deg * b).saturating_sub((n as u128 - 1) * a);
    }
    Ok(Ratio::new(total as u64, b as u64))
}
