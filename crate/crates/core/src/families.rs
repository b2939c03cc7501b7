//! Graph families and seeded starting configurations.
//!
//! Vertex numbering, per family:
//!
//! * `path(n)`: `0 - 1 - ... - n-1`.
//! * `cycle(n)`: the path plus the edge `n-1 - 0`.
//! * `star(l)`: center `0`, leaves `1..=l`.
//! * `complete(n)`: all pairs of `0..n`.
//! * `comb(n)` / `sunlet(n)`: spine `0..n` (a path or cycle), leaf of spine
//!   vertex `i` is `n + i`.
//! * `g_nk(n, k)`: `sunlet(n)` whose pendant edges at spine positions
//!   `0..k` are each subdivided `n` times; thread `j` runs
//!   `j - 2n+jn - 2n+jn+1 - ... - 2n+jn+n-1 - n+j`.
//! * `bouquet(k)`: center `0`; triangle `t` (for `t < 5k`) uses `1+2t` and
//!   `2+2t`.
//! * `comb_union(n_1, ..)`: combs laid out one after another, each with the
//!   numbering above shifted by the vertices before it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{family}: {reason}")]
pub struct FamilyError {
    pub family: &'static str,
    pub reason: &'static str,
}

fn out_of_range(family: &'static str, reason: &'static str) -> FamilyError {
    FamilyError { family, reason }
}

/// A graph with a prescribed starting configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededInstance {
    pub graph: Graph,
    pub init: Vec<u64>,
    pub label: String,
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(out_of_range("path", "n must be at least 1"));
    }
    Ok(Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple"))
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(out_of_range("cycle", "n must be at least 3"));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0).expect("cycle is simple");
    Ok(g)
}

pub fn star(leaves: usize) -> Result<Graph, FamilyError> {
    if leaves < 1 {
        return Err(out_of_range("star", "needs at least one leaf"));
    }
    Ok(Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("star is simple"))
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(out_of_range("complete", "n must be at least 1"));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Ok(Graph::from_edges(n, edges).expect("complete graph is simple"))
}

fn with_pendants(spine: Graph) -> Graph {
    let n = spine.vertex_count();
    let mut g = spine.disjoint_union(&Graph::empty(n));
    for i in 0..n {
        g.add_edge(i, n + i).expect("pendant edges are new");
    }
    g
}

/// `B_n`: a path on `n` vertices with a pendant leaf on every vertex.
pub fn comb(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(out_of_range("comb", "n must be at least 1"));
    }
    Ok(with_pendants(path(n)?))
}

/// `S_n`: a cycle on `n` vertices with a pendant leaf on every vertex.
pub fn sunlet(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(out_of_range("sunlet", "n must be at least 3"));
    }
    Ok(with_pendants(cycle(n)?))
}

pub fn g_nk(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(out_of_range("g_nk", "n must be at least 3"));
    }
    if k < 1 || k > n {
        return Err(out_of_range("g_nk", "k must lie in 1..=n"));
    }
    let s = sunlet(n)?;
    let mut g = Graph::empty(2 * n + n * k);
    for &(u, v) in s.edges() {
        // pendant edges (j, n + j) for j < k are replaced by threads
        if !(v == u + n && u < k) {
            g.add_edge(u, v).expect("sunlet edge");
        }
    }
    for j in 0..k {
        let first = 2 * n + j * n;
        let mut prev = j;
        for s in first..first + n {
            g.add_edge(prev, s).expect("thread edge");
            prev = s;
        }
        g.add_edge(prev, n + j).expect("thread end");
    }
    Ok(g)
}

/// `5k` triangles sharing one vertex.
pub fn bouquet(k: usize) -> Result<Graph, FamilyError> {
    if k < 1 {
        return Err(out_of_range("bouquet", "k must be at least 1"));
    }
    let triangles = 5 * k;
    let mut g = Graph::empty(2 * triangles + 1);
    for t in 0..triangles {
        let (a, b) = (1 + 2 * t, 2 + 2 * t);
        g.add_edge(0, a).expect("spoke");
        g.add_edge(0, b).expect("spoke");
        g.add_edge(a, b).expect("rim");
    }
    Ok(g)
}

/// Disjoint union of combs `B_{n_i}` with one brush on each of the two
/// degree-2 vertices (the spine endpoints) of every comb.
pub fn comb_union_seeded(sizes: &[usize]) -> Result<SeededInstance, FamilyError> {
    if sizes.is_empty() {
        return Err(out_of_range("comb_union", "needs at least one comb"));
    }
    if sizes.iter().any(|&n| n < 2) {
        return Err(out_of_range("comb_union", "every comb needs n >= 2"));
    }
    let mut graph = Graph::empty(0);
    let mut init = Vec::new();
    for &n in sizes {
        let offset = graph.vertex_count();
        graph = graph.disjoint_union(&comb(n)?);
        init.resize(graph.vertex_count(), 0);
        init[offset] = 1;
        init[offset + n - 1] = 1;
    }
    let parts: Vec<String> = sizes.iter().map(|n| format!("{n}")).collect();
    Ok(SeededInstance { graph, init, label: format!("comb_union({})", parts.join(",")) })
}
