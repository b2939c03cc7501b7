#![allow(dead_code)]

use std::collections::HashSet;

use brushgame_core::Graph;
use num_rational::Ratio;
use proptest::prelude::*;

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                g.add_edge(i, j).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Simple graphs on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// A graph together with a configuration whose entries are below `cap`.
pub fn arb_graph_config(max_n: usize, cap: u64) -> impl Strategy<Value = (Graph, Vec<u64>)> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (Just(g), proptest::collection::vec(0..cap, n))
    })
}

/// Plain cleaning over exact rationals with a set of clean vertices: fire the
/// lowest eligible vertex until nothing can fire. Shares no code with the
/// library engine.
pub fn naive_stabilize(g: &Graph, p: Ratio<i64>, amounts: &[Ratio<i64>]) -> (HashSet<usize>, Vec<Ratio<i64>>) {
    let n = g.vertex_count();
    let mut clean = HashSet::new();
    let mut amt = amounts.to_vec();
    loop {
        let next = (0..n).find(|&v| {
            !clean.contains(&v) && {
                let dirty = g.neighbors(v).iter().filter(|w| !clean.contains(*w)).count() as i64;
                amt[v] >= p * dirty
            }
        });
        let Some(v) = next else { return (clean, amt) };
        let dirty: Vec<usize> = g.neighbors(v).iter().copied().filter(|w| !clean.contains(w)).collect();
        for &w in &dirty {
            amt[w] += p;
        }
        amt[v] -= p * dirty.len() as i64;
        clean.insert(v);
    }
}

/// Brush number as the cheapest cleaning order: a vertex fired after the set
/// `S` needs `max(0, |N(v) \ S| - |N(v) ∩ S|)` brushes of its own.
pub fn brush_number_by_orders(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 16);
    let masks: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let mut best = vec![u64::MAX; 1 << n];
    best[0] = 0;
    for s in 0..(1usize << n) {
        if best[s] == u64::MAX {
            continue;
        }
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            let before = (masks[v] & s as u32).count_ones() as i64;
            let after = (masks[v] & !(s as u32)).count_ones() as i64;
            let cost = best[s] + (after - before).max(0) as u64;
            let t = s | 1 << v;
            best[t] = best[t].min(cost);
        }
    }
    best[(1 << n) - 1]
}

/// Unmemoized minimax over the naive cleaning: optimal remaining turns.
pub fn plain_minimax(g: &Graph, clean: &HashSet<usize>, amt: &[Ratio<i64>], min_to_move: bool) -> u32 {
    let n = g.vertex_count();
    if clean.len() == n {
        return 0;
    }
    let one = Ratio::from_integer(1);
    let mut values = Vec::new();
    for v in (0..n).filter(|v| !clean.contains(v)) {
        let mut a = amt.to_vec();
        a[v] += one;
        let (c2, a2) = continue_stabilize(g, clean, &a);
        values.push(1 + plain_minimax(g, &c2, &a2, !min_to_move));
    }
    if min_to_move {
        *values.iter().min().unwrap()
    } else {
        *values.iter().max().unwrap()
    }
}

fn continue_stabilize(g: &Graph, clean: &HashSet<usize>, amt: &[Ratio<i64>]) -> (HashSet<usize>, Vec<Ratio<i64>>) {
    let n = g.vertex_count();
    let mut clean = clean.clone();
    let mut amt = amt.to_vec();
    let one = Ratio::from_integer(1);
    loop {
        let next = (0..n).find(|&v| {
            !clean.contains(&v)
                && amt[v] >= one * g.neighbors(v).iter().filter(|w| !clean.contains(*w)).count() as i64
        });
        let Some(v) = next else { return (clean, amt) };
        let dirty: Vec<usize> = g.neighbors(v).iter().copied().filter(|w| !clean.contains(w)).collect();
        for &w in &dirty {
            amt[w] += one;
        }
        amt[v] -= one * dirty.len() as i64;
        clean.insert(v);
    }
}

/// `b_g` (Min first) or `b̂_g` (Max first) by plain minimax from the empty
/// configuration.
pub fn plain_game_value(g: &Graph, init: &[u64], min_first: bool) -> u32 {
    let amt: Vec<Ratio<i64>> = init.iter().map(|&a| Ratio::from_integer(a as i64)).collect();
    let (clean, amt) = continue_stabilize(g, &HashSet::new(), &amt);
    plain_minimax(g, &clean, &amt, min_first)
}
