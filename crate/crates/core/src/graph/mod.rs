//! Simple undirected graphs on at most 64 vertices.
//!
//! Each vertex stores its neighbourhood as a `u64` bitset, so `N(v)`,
//! `N[v]`, intersections and degree counts are single word operations.

mod distance;
mod generators;
pub mod graph6;
pub mod iso;

pub use distance::{distance_partition, DistancePartition};
pub use generators::{
    complete, complete_bipartite, cube, cycle, double_candle, duplicate, named_graph, path,
    single_candle, NAMED_GRAPHS,
};

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate over the set bits of a mask in increasing order.
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "vertex count must lie in 1..={MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from neighbourhood bitsets. Fails unless the relation is
    /// symmetric and irreflexive.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        let g = Graph { n, adj };
        Graph::empty(n)?;
        let full = g.vertex_mask();
        for u in 0..n {
            if g.adj[u] & !full != 0 || g.adj[u] & bit(u) != 0 {
                return Err(Error::invalid(format!("bad neighbourhood for vertex {u}")));
            }
            for v in bits(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::invalid(format!("asymmetric pair ({u},{v})")));
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::invalid(format!(
                "vertex {v} out of range for graph on {} vertices",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !bit(v);
            self.adj[v] &= !bit(u);
        }
    }

    /// Copy of the graph with `{u, v}` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Open neighbourhood `N(v)` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> u64 {
        self.adj[v] | bit(v)
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v]).collect()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn adjacency_rows(&self) -> &[u64] {
        &self.adj
    }

    /// Vertices reachable from `start` while staying inside `allowed`.
    pub fn component_mask(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = bit(start) & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0, self.vertex_mask()) == self.vertex_mask()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    pub fn is_independent(&self, set: u64) -> bool {
        bits(set).all(|v| self.adj[v] & set == 0)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in bits(self.adj[u]) {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Relabel so that vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length mismatch"));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen & bit(p) != 0 {
                return Err(Error::invalid("not a permutation"));
            }
            seen |= bit(p);
        }
        Ok(self.permute_unchecked(perm))
    }

    pub(crate) fn permute_unchecked(&self, perm: &[usize]) -> Self {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0;
            for v in bits(self.adj[u]) {
                row |= bit(perm[v]);
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Graph with vertex `v` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(Error::invalid("cannot delete the only vertex"));
        }
        let low = bit(v) - 1;
        let squeeze = |row: u64| (row & low) | ((row >> 1) & !low);
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| squeeze(self.adj[u] & !bit(v)))
            .collect();
        Ok(Graph { n: self.n - 1, adj })
    }

    /// Subgraph induced on the vertices of `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Result<Self> {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut g = Graph::empty(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Self {
        let full = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    /// True when every edge of `self` is an edge of `other` on the same labels.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && (0..self.n).all(|v| self.adj[v] & !other.adj[v] == 0)
    }

    /// Adjacency-list text: one line per vertex, `v: a b c`.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.n {
            let list: Vec<String> = bits(self.adj[v]).map(|u| u.to_string()).collect();
            s.push_str(&format!("{v}: {}\n", list.join(" ")));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_count_is_half_degree_sum() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        assert_eq!(g.edges().len(), 6);
    }

    #[test]
    fn rejects_loops_and_bad_sizes() {
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(65).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 3)]).is_err());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
    }

    #[test]
    fn remove_vertex_shifts_labels() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.remove_vertex(1).unwrap();
        assert_eq!(h.edges(), vec![(1, 2)]);
        let full64 = Graph::empty(64).unwrap();
        assert_eq!(full64.vertex_mask(), u64::MAX);
    }

    #[test]
    fn bipartite_and_connectivity() {
        let c5 = cycle(5).unwrap();
        assert!(!c5.is_bipartite());
        assert!(cycle(6).unwrap().is_bipartite());
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two.is_connected());
        assert!(c5.is_connected());
    }
}
