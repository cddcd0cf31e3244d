//! Canonical labelling, isomorphism and spanning-subgraph embedding.
//!
//! The canonical form is the lexicographically largest relabelled adjacency
//! over all leaves of the individualisation-refinement tree. Refinement splits
//! cells by neighbour counts into each cell until the partition is equitable.
//! Twins inside a cell generate automorphisms that fix the current partition,
//! so only one twin per class is individualised.

use super::{bit, bits, Graph};

type Cells = Vec<Vec<usize>>;

fn cell_mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0u64, |m, &v| m | bit(v))
}

fn refine(g: &Graph, mut cells: Cells) -> Cells {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cell_mask(&cells[s]);
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            let mut split_any = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((g.neighbors(v) & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    next.push(cell.clone());
                    continue;
                }
                split_any = true;
                let mut current = vec![keyed[0].1];
                for w in keyed.windows(2) {
                    if w[1].0 != w[0].0 {
                        next.push(std::mem::take(&mut current));
                    }
                    current.push(w[1].1);
                }
                next.push(current);
            }
            if split_any {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}

fn leaf_key(g: &Graph, cells: &Cells) -> (Vec<u64>, Vec<usize>) {
    let mut label = vec![0usize; g.n()];
    for (p, cell) in cells.iter().enumerate() {
        label[cell[0]] = p;
    }
    let mut rows = vec![0u64; g.n()];
    for v in 0..g.n() {
        let mut row = 0;
        for u in bits(g.neighbors(v)) {
            row |= bit(label[u]);
        }
        rows[label[v]] = row;
    }
    (rows, label)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Cells) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let leaf = leaf_key(self.g, &cells);
            if self.best.as_ref().is_none_or(|b| leaf.0 > b.0) {
                self.best = Some(leaf);
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            let twin_of_tried = tried
                .iter()
                .any(|&u| self.g.neighbors(u) & !bit(v) == self.g.neighbors(v) & !bit(u));
            if twin_of_tried {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
        }
    }
}

/// Canonically relabelled copy of a graph together with the labelling used.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub graph: Graph,
    /// `labeling[v]` is the canonical label of original vertex `v`.
    pub labeling: Vec<usize>,
}

pub fn canonical_form(g: &Graph) -> Canonical {
    let mut degree_cells: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
    degree_cells.sort_unstable();
    let mut cells: Cells = Vec::new();
    for (i, &(d, v)) in degree_cells.iter().enumerate() {
        if i == 0 || degree_cells[i - 1].0 != d {
            cells.push(Vec::new());
        }
        cells.last_mut().expect("pushed").push(v);
    }
    let mut search = Search { g, best: None };
    search.descend(cells);
    let (_, labeling) = search.best.expect("at least one leaf");
    Canonical {
        graph: g.permute_unchecked(&labeling),
        labeling,
    }
}

pub fn canonical_graph6(g: &Graph) -> String {
    super::graph6::encode(&canonical_form(g).graph)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && sorted_degrees(g) == sorted_degrees(h)
        && canonical_form(g).graph == canonical_form(h).graph
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

/// A map `phi` with `phi[v]` the vertex of `h` matched to vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.graph != ch.graph {
        return None;
    }
    let mut from_label = vec![0usize; h.n()];
    for (v, &l) in ch.labeling.iter().enumerate() {
        from_label[l] = v;
    }
    Some(cg.labeling.iter().map(|&l| from_label[l]).collect())
}

/// Find a bijection `phi` carrying every edge of `sub` onto an edge of `host`
/// (both on the same vertex count). Exhaustive backtracking.
pub fn find_spanning_embedding(sub: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let n = sub.n();
    if n != host.n() || sub.edge_count() > host.edge_count() {
        return None;
    }
    let mut need = sorted_degrees(sub);
    let mut have = sorted_degrees(host);
    need.reverse();
    have.reverse();
    if need.iter().zip(&have).any(|(a, b)| a > b) {
        return None;
    }
    // Order: repeatedly take the unplaced vertex with most placed neighbours,
    // ties by larger degree.
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    (sub.neighbors(v) & placed).count_ones(),
                    sub.degree(v),
                    n - v,
                )
            })
            .expect("unplaced vertex");
        order.push(v);
        placed |= bit(v);
    }
    let mut phi = vec![usize::MAX; n];
    fn go(
        sub: &Graph,
        host: &Graph,
        order: &[usize],
        depth: usize,
        used: u64,
        phi: &mut [usize],
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let mut cand = host.vertex_mask() & !used;
        for u in bits(sub.neighbors(v)) {
            if phi[u] != usize::MAX {
                cand &= host.neighbors(phi[u]);
            }
        }
        for w in bits(cand) {
            if host.degree(w) < sub.degree(v) {
                continue;
            }
            phi[v] = w;
            if go(sub, host, order, depth + 1, used | bit(w), phi) {
                return true;
            }
        }
        phi[v] = usize::MAX;
        false
    }
    go(sub, host, &order, 0, 0, &mut phi).then_some(phi)
}
