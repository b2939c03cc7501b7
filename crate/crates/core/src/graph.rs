//! Simple undirected graphs on vertices `0..n`.

use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
}

/// A finite simple undirected graph.
///
/// Neighbor lists are kept sorted so that iteration order (and therefore
/// every canonical firing order built on top of it) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph { adjacency: alloc::vec![Vec::new(); vertex_count], edges: Vec::new() }
    }

    /// Builds a graph from an edge list, rejecting loops and repeated edges.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(vertex_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let count = self.vertex_count();
        for w in [u, v] {
            if w >= count {
                return Err(GraphError::VertexOutOfRange { vertex: w, count });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                self.edges.push((u.min(v), u.max(v)));
                Ok(())
            }
        }
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adjacency.push(Vec::new());
        self.adjacency.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, each as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = alloc::vec![false; n];
        let mut stack = alloc::vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut g = self.clone();
        g.adjacency.extend(other.adjacency.iter().map(|ns| ns.iter().map(|&w| w + shift).collect()));
        g.edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.vertex_count());
        Graph::from_edges(self.vertex_count(), self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling by a permutation keeps the graph simple")
    }

    /// Checks the structural invariants: symmetric sorted adjacency, no loops,
    /// no repeated edges, and an edge list consistent with the adjacency.
    pub fn check_invariants(&self) -> bool {
        let n = self.vertex_count();
        let mut half_degree_sum = 0;
        for (u, ns) in self.adjacency.iter().enumerate() {
            if ns.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in ns {
                if v >= n || v == u || self.adjacency[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            half_degree_sum += ns.len();
        }
        half_degree_sum == 2 * self.edges.len()
            && self.edges.iter().all(|&(u, v)| u < v && self.has_edge(u, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::Loop(0)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(1, 0)));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, count: 2 })
        ));
    }

    #[test]
    fn union_and_relabel_keep_invariants() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let u = p3.disjoint_union(&p3);
        assert_eq!(u.vertex_count(), 6);
        assert_eq!(u.edge_count(), 4);
        assert!(u.check_invariants());
        assert!(!u.is_connected());
        let r = p3.relabel(&[2, 0, 1]);
        assert_eq!(r.degrees(), [2, 1, 1]);
        assert!(r.check_invariants());
    }
}
