//! The sequential cleaning process.
//!
//! A dirty vertex fires once it holds at least `p` brushes per dirty
//! neighbor; firing sends `p` brushes along each dirty edge and the vertex
//! becomes clean, keeping whatever is left over. The ordinary process is
//! `p = 1`. Stabilization is Abelian: the final clean set and residues do not
//! depend on the firing order, which the tests check rather than assume.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::Graph;
use crate::rate::FractionParam;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CleanError {
    #[error("vertex {0} is already clean")]
    AlreadyClean(usize),
    #[error("vertex {vertex} holds {held} units but needs {needed}")]
    Undersupplied { vertex: usize, held: u64, needed: u64 },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

/// Vertices fired during one stabilization, in firing order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CleaningTrace {
    pub firing_order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrushState<'g> {
    graph: &'g Graph,
    rate: FractionParam,
    // brush amounts in units of 1/rate.denom()
    amount: Vec<u64>,
    clean: Vec<bool>,
    dirty_degree: Vec<usize>,
    clean_count: usize,
    fired: Vec<usize>,
}

impl<'g> BrushState<'g> {
    /// All vertices dirty, no brushes, ordinary rate.
    pub fn new(graph: &'g Graph) -> Self {
        Self::with_rate(graph, FractionParam::ONE)
    }

    pub fn with_rate(graph: &'g Graph, rate: FractionParam) -> Self {
        let n = graph.vertex_count();
        BrushState {
            graph,
            rate,
            amount: alloc::vec![0; n],
            clean: alloc::vec![false; n],
            dirty_degree: graph.degrees(),
            clean_count: 0,
            fired: Vec::new(),
        }
    }

    /// Places `config[v]` whole brushes on each `v`, without firing anything.
    pub fn from_configuration(graph: &'g Graph, rate: FractionParam, config: &[u64]) -> Self {
        assert_eq!(config.len(), graph.vertex_count(), "configuration length mismatch");
        let mut s = Self::with_rate(graph, rate);
        for (v, &c) in config.iter().enumerate() {
            s.amount[v] = c * rate.denom();
        }
        s
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn rate(&self) -> FractionParam {
        self.rate
    }

    pub fn vertex_count(&self) -> usize {
        self.clean.len()
    }

    /// Brush amount on `v` in units of `1/rate.denom()`; for the ordinary
    /// process this is simply the brush count.
    pub fn amount(&self, v: usize) -> u64 {
        self.amount[v]
    }

    pub fn amounts(&self) -> &[u64] {
        &self.amount
    }

    pub fn amount_ratio(&self, v: usize) -> Ratio<u64> {
        Ratio::new(self.amount[v], self.rate.denom())
    }

    pub fn total_units(&self) -> u64 {
        self.amount.iter().sum()
    }

    pub fn is_clean(&self, v: usize) -> bool {
        self.clean[v]
    }

    pub fn clean_mask(&self) -> &[bool] {
        &self.clean
    }

    pub fn clean_count(&self) -> usize {
        self.clean_count
    }

    pub fn all_clean(&self) -> bool {
        self.clean_count == self.vertex_count()
    }

    pub fn dirty_degree(&self, v: usize) -> usize {
        self.dirty_degree[v]
    }

    pub fn dirty_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.clean.iter().enumerate().filter(|(_, &c)| !c).map(|(v, _)| v)
    }

    /// Every vertex fired so far, in order.
    pub fn firing_order(&self) -> &[usize] {
        &self.fired
    }

    /// Units `v` must hold before it can fire.
    pub fn threshold(&self, v: usize) -> u64 {
        self.rate.numer() * self.dirty_degree[v] as u64
    }

    /// Units still missing before `v` can fire (zero when it already can).
    pub fn deficit(&self, v: usize) -> u64 {
        self.threshold(v).saturating_sub(self.amount[v])
    }

    pub fn can_fire(&self, v: usize) -> bool {
        !self.clean[v] && self.amount[v] >= self.threshold(v)
    }

    pub fn is_stable(&self) -> bool {
        (0..self.vertex_count()).all(|v| !self.can_fire(v))
    }

    /// Adds `brushes` whole brushes to `v`. No firing happens here.
    pub fn place(&mut self, v: usize, brushes: u64) {
        self.amount[v] += brushes * self.rate.denom();
    }

    pub fn add_units(&mut self, v: usize, units: u64) {
        self.amount[v] += units;
    }

    /// Fires `v`: it turns clean, each dirty neighbor receives `p` brushes,
    /// and the excess stays on `v`.
    pub fn fire(&mut self, v: usize) -> Result<(), CleanError> {
        if v >= self.vertex_count() {
            return Err(CleanError::NoSuchVertex(v));
        }
        if self.clean[v] {
            return Err(CleanError::AlreadyClean(v));
        }
        let needed = self.threshold(v);
        if self.amount[v] < needed {
            return Err(CleanError::Undersupplied { vertex: v, held: self.amount[v], needed });
        }
        self.fire_unchecked(v);
        Ok(())
    }

    fn fire_unchecked(&mut self, v: usize) {
        let share = self.rate.numer();
        self.amount[v] -= share * self.dirty_degree[v] as u64;
        self.clean[v] = true;
        self.clean_count += 1;
        self.fired.push(v);
        for &w in self.graph.neighbors(v) {
            if !self.clean[w] {
                self.amount[w] += share;
                self.dirty_degree[w] -= 1;
            }
        }
        self.dirty_degree[v] = 0;
    }

    /// Fires eligible vertices until none is left, always choosing the
    /// lowest-id eligible vertex.
    pub fn stabilize(&mut self) -> CleaningTrace {
        let candidates: Vec<usize> = (0..self.vertex_count()).collect();
        self.stabilize_from(&candidates)
    }

    /// Stabilizes a state that was stable before the vertices in `touched`
    /// changed; only those and their descendants in the cascade are examined.
    pub fn stabilize_from(&mut self, touched: &[usize]) -> CleaningTrace {
        let mut heap: BinaryHeap<Reverse<usize>> =
            touched.iter().copied().filter(|&v| self.can_fire(v)).map(Reverse).collect();
        let mut trace = CleaningTrace::default();
        while let Some(Reverse(v)) = heap.pop() {
            // a vertex may sit in the heap twice
            if self.clean[v] {
                continue;
            }
            self.fire_unchecked(v);
            trace.firing_order.push(v);
            for &w in self.graph.neighbors(v) {
                if self.can_fire(w) {
                    heap.push(Reverse(w));
                }
            }
        }
        trace
    }

    /// Stabilizes with a caller-chosen order: `choose` receives the current
    /// eligible vertices (ascending) and returns an index into that slice.
    pub fn stabilize_with<F>(&mut self, mut choose: F) -> CleaningTrace
    where
        F: FnMut(&[usize]) -> usize,
    {
        let mut trace = CleaningTrace::default();
        loop {
            let eligible: Vec<usize> = (0..self.vertex_count()).filter(|&v| self.can_fire(v)).collect();
            if eligible.is_empty() {
                return trace;
            }
            let v = eligible[choose(&eligible)];
            self.fire_unchecked(v);
            trace.firing_order.push(v);
        }
    }

    /// Places one brush on `v` and stabilizes.
    pub fn place_and_stabilize(&mut self, v: usize) -> CleaningTrace {
        self.place(v, 1);
        self.stabilize_from(&[v])
    }

    /// Clean set and the residues on dirty vertices (clean vertices report
    /// 0). Both are independent of firing order; what is left behind on a
    /// clean vertex is not (on `K_2` from `(1, 1)`, whichever vertex fires
    /// first ends empty) and never matters again.
    pub fn outcome(&self) -> (Vec<bool>, Vec<u64>) {
        let dirty = self.amount.iter().zip(&self.clean).map(|(&a, &c)| if c { 0 } else { a }).collect();
        (self.clean.clone(), dirty)
    }

    /// Recomputes dirty degrees from scratch and compares with the cache.
    pub fn check_invariants(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            self.clean[v]
                || self.dirty_degree[v] == self.graph.neighbors(v).iter().filter(|&&w| !self.clean[w]).count()
        }) && self.clean.iter().filter(|&&c| c).count() == self.clean_count
            && self.fired.len() == self.clean_count
    }
}

/// Whether the ordinary process started from `config` cleans every vertex.
pub fn can_clean(graph: &Graph, config: &[u64]) -> bool {
    let mut s = BrushState::from_configuration(graph, FractionParam::ONE, config);
    s.stabilize();
    s.all_clean()
}
