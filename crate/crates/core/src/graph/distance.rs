use super::{bit, bits, Graph};
use crate::error::{Error, Result};

/// BFS levels `N_0(v), ..., N_ecc(v)` around a root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    pub root: usize,
    /// Vertex sets of each level as bitsets.
    pub levels: Vec<u64>,
    /// `level_of[u]` is the distance from the root to `u`.
    pub level_of: Vec<usize>,
    /// Neighbours of `u` one level closer to the root (0 for the root).
    pub predecessor_counts: Vec<usize>,
}

impl DistancePartition {
    pub fn eccentricity(&self) -> usize {
        self.levels.len() - 1
    }

    /// `(d_0, ..., d_ecc)`.
    pub fn distance_sequence(&self) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| l.count_ones() as usize)
            .collect()
    }

    /// Distance sequence with the last level dropped.
    pub fn truncated_sequence(&self) -> Vec<usize> {
        let mut s = self.distance_sequence();
        s.pop();
        s
    }

    pub fn level(&self, i: usize) -> Vec<usize> {
        bits(self.levels[i]).collect()
    }
}

pub fn distance_partition(g: &Graph, root: usize) -> Result<DistancePartition> {
    if root >= g.n() {
        return Err(Error::invalid(format!("vertex {root} out of range")));
    }
    g.require_connected()?;
    let mut levels = vec![bit(root)];
    let mut level_of = vec![0usize; g.n()];
    let mut predecessor_counts = vec![0usize; g.n()];
    let mut seen = bit(root);
    loop {
        let prev = *levels.last().expect("nonempty");
        let mut next = 0u64;
        for v in bits(prev) {
            next |= g.neighbors(v);
        }
        next &= !seen;
        if next == 0 {
            break;
        }
        for u in bits(next) {
            level_of[u] = levels.len();
            predecessor_counts[u] = (g.neighbors(u) & prev).count_ones() as usize;
        }
        seen |= next;
        levels.push(next);
    }
    Ok(DistancePartition {
        root,
        levels,
        level_of,
        predecessor_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, double_candle, path};
    use std::collections::VecDeque;

    /// Queue-based BFS kept deliberately separate from the bitset sweep.
    fn queue_levels(g: &Graph, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; g.n()];
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for v in g.neighbor_list(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    q.push_back(v);
                }
            }
        }
        let ecc = *dist.iter().max().unwrap();
        let mut seq = vec![0; ecc + 1];
        for d in dist {
            seq[d] += 1;
        }
        seq
    }

    #[test]
    fn examples() {
        let c4 = cycle(4).unwrap();
        for v in 0..4 {
            assert_eq!(
                distance_partition(&c4, v).unwrap().distance_sequence(),
                vec![1, 2, 1]
            );
        }
        let g3 = double_candle(3).unwrap();
        let dp = distance_partition(&g3, 0).unwrap();
        assert_eq!(dp.distance_sequence(), vec![1, 2, 2, 1]);
        for u in 1..6 {
            let expect = if dp.level_of[u] == 1 { 1 } else { 2 };
            assert_eq!(dp.predecessor_counts[u], expect, "vertex {u}");
        }
        let p4 = path(4).unwrap();
        assert_eq!(
            distance_partition(&p4, 0).unwrap().distance_sequence(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            distance_partition(&p4, 0).unwrap().truncated_sequence(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn errors() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(distance_partition(&g, 0), Err(Error::NotConnected));
        assert!(distance_partition(&cycle(4).unwrap(), 9).is_err());
    }

    #[test]
    fn level_sizes_survive_relabelling() {
        let perm = [3, 7, 0, 5, 1, 6, 2, 4];
        let g = double_candle(4).unwrap();
        let h = g.permute(&perm).unwrap();
        for (v, &pv) in perm.iter().enumerate() {
            let a = distance_partition(&g, v).unwrap().distance_sequence();
            let b = distance_partition(&h, pv).unwrap().distance_sequence();
            assert_eq!(a, b);
            assert_eq!(a, queue_levels(&h, pv));
            assert_eq!(a.iter().sum::<usize>(), 8);
        }
    }
}
