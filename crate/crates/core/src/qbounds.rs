//! Lower bounds on `q(G)` and the necessary-condition sieve for `q(G) = 2`.
//!
//! Every rule returns a [`BoundReport`] whose witness can be replayed against
//! the graph without rerunning the search that produced it. The sieve is a
//! conjunction of necessary conditions; it never claims `q(G) = 2`.

use crate::error::{Error, Result};
use crate::graph::iso::{are_isomorphic, find_isomorphism};
use crate::graph::{bit, bits, cube, double_candle, single_candle, Graph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    UniquePath,
    Independence,
    CommonNeighbors,
    NotTwoConnected,
    EdgeCount,
    CombOrth,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// A pair at distance `distance`; `paths` is the shortest-path count (saturated at 2).
    Pair {
        x: usize,
        y: usize,
        distance: usize,
        paths: usize,
    },
    IndependentSet {
        vertices: Vec<usize>,
    },
    /// An independent family and the union of its pairwise common neighbourhoods.
    CommonNeighbors {
        vertices: Vec<usize>,
        common: Vec<usize>,
    },
    CutVertex {
        vertex: usize,
    },
    EdgeCount {
        edges: usize,
        required: usize,
        extremal: bool,
    },
    /// `x - center - y` with `x`, `y` non-adjacent and `center` their only common neighbour.
    TwoPath {
        x: usize,
        center: usize,
        y: usize,
    },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower_bound: usize,
    pub rule: Rule,
    pub witness: Witness,
}

impl BoundReport {
    fn trivial(rule: Rule) -> Self {
        BoundReport {
            lower_bound: 1,
            rule,
            witness: Witness::None,
        }
    }

    pub fn excludes_q2(&self) -> bool {
        self.lower_bound >= 3
    }

    /// Re-check the witness against `g` and confirm it yields `lower_bound`.
    pub fn replay(&self, g: &Graph) -> bool {
        let in_range = |v: &usize| *v < g.n();
        match (&self.rule, &self.witness) {
            (_, Witness::None) => self.lower_bound == 1,
            (
                Rule::UniquePath,
                Witness::Pair {
                    x,
                    y,
                    distance,
                    paths,
                },
            ) => {
                if !in_range(x) || !in_range(y) || x == y {
                    return false;
                }
                let (d, c) = shortest_path_count(g, *x, *y);
                d == Some(*distance)
                    && c == *paths
                    && *paths == 1
                    && self.lower_bound == distance + 1
            }
            (Rule::Independence, Witness::IndependentSet { vertices }) => {
                if !vertices.iter().all(in_range) {
                    return false;
                }
                let set = to_mask(vertices);
                let size = vertices.len();
                if !g.is_independent(set) || set.count_ones() as usize != size {
                    return false;
                }
                if size > g.n() / 2 {
                    self.lower_bound == 3
                } else {
                    self.lower_bound == 1
                }
            }
            (Rule::CommonNeighbors, Witness::CommonNeighbors { vertices, common }) => {
                if !vertices.iter().all(in_range) || vertices.len() < 2 {
                    return false;
                }
                let set = to_mask(vertices);
                g.is_independent(set)
                    && set.count_ones() as usize == vertices.len()
                    && family_qualifies(g, vertices)
                    && pairwise_common(g, vertices) == to_mask(common)
                    && common.len() < vertices.len()
                    && self.lower_bound == 3
            }
            (Rule::NotTwoConnected, Witness::CutVertex { vertex }) => {
                in_range(vertex) && g.n() >= 3 && is_cut_vertex(g, *vertex) && self.lower_bound == 3
            }
            (
                Rule::EdgeCount,
                Witness::EdgeCount {
                    edges,
                    required,
                    extremal,
                },
            ) => {
                if g.n() < 3 || *edges != g.edge_count() || *required != edge_threshold(g.n()) {
                    return false;
                }
                let fires = if edges < required {
                    true
                } else if edges == required {
                    let tag = extremal_tag(g);
                    *extremal == tag.is_some() && tag.is_none()
                } else {
                    false
                };
                fires && self.lower_bound == 3
            }
            (Rule::CombOrth, Witness::TwoPath { x, center, y }) => {
                [x, center, y].into_iter().all(in_range)
                    && g.has_edge(*x, *center)
                    && g.has_edge(*center, *y)
                    && x != y
                    && !g.has_edge(*x, *y)
                    && g.neighbors(*x) & g.neighbors(*y) == bit(*center)
                    && self.lower_bound == 3
            }
            _ => false,
        }
    }
}

fn to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

/// BFS distance from `x` to `y` and the number of shortest paths, saturated at 2.
fn shortest_path_count(g: &Graph, x: usize, y: usize) -> (Option<usize>, usize) {
    let (dist, count) = path_counts_from(g, x);
    (dist[y], count[y])
}

fn path_counts_from(g: &Graph, x: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = g.n();
    let mut dist = vec![None; n];
    let mut count = vec![0usize; n];
    dist[x] = Some(0);
    count[x] = 1;
    let mut seen = bit(x);
    let mut frontier = bit(x);
    let mut d = 0;
    while frontier != 0 {
        d += 1;
        let mut next = 0u64;
        for v in bits(frontier) {
            next |= g.neighbors(v);
        }
        next &= !seen;
        for u in bits(next) {
            dist[u] = Some(d);
            count[u] = bits(g.neighbors(u) & frontier)
                .map(|p| count[p])
                .sum::<usize>()
                .min(2);
        }
        seen |= next;
        frontier = next;
    }
    (dist, count)
}

/// `1 + max d(x, y)` over pairs joined by exactly one shortest path.
pub fn unique_path_bound(g: &Graph) -> Result<BoundReport> {
    g.require_connected()?;
    let mut best: Option<(usize, usize, usize)> = None;
    for x in 0..g.n() {
        let (dist, count) = path_counts_from(g, x);
        for y in (x + 1)..g.n() {
            let d = dist[y].expect("connected");
            if count[y] == 1 && best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, x, y));
            }
        }
    }
    Ok(match best {
        None => BoundReport::trivial(Rule::Trivial),
        Some((distance, x, y)) => BoundReport {
            lower_bound: distance + 1,
            rule: Rule::UniquePath,
            witness: Witness::Pair {
                x,
                y,
                distance,
                paths: 1,
            },
        },
    })
}

/// Greedy partition of `cand` into cliques of `g`; its size bounds the
/// independence number of `g[cand]`.
fn clique_cover_size(g: &Graph, mut cand: u64) -> usize {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut clique_common = g.neighbors(v);
        cand &= !bit(v);
        let mut pool = cand & clique_common;
        while pool != 0 {
            let u = pool.trailing_zeros() as usize;
            cand &= !bit(u);
            clique_common &= g.neighbors(u);
            pool &= clique_common & !bit(u);
        }
        cliques += 1;
    }
    cliques
}

fn mis_expand(g: &Graph, current: u64, cand: u64, best: &mut u64) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    if current.count_ones() as usize + clique_cover_size(g, cand) <= best.count_ones() as usize {
        return;
    }
    // branch on the candidate with fewest candidate neighbours
    let v = bits(cand)
        .min_by_key(|&v| (g.neighbors(v) & cand).count_ones())
        .expect("nonempty");
    mis_expand(g, current | bit(v), cand & !g.closed_neighbors(v), best);
    if g.neighbors(v) & cand != 0 {
        mis_expand(g, current, cand & !bit(v), best);
    }
}

/// Exact maximum independent set by branch and bound.
pub fn maximum_independent_set(g: &Graph) -> Vec<usize> {
    let mut best = 0u64;
    mis_expand(g, 0, g.vertex_mask(), &mut best);
    bits(best).collect()
}

pub fn independence_number(g: &Graph) -> usize {
    maximum_independent_set(g).len()
}

/// Exclude when `α(G) > ⌊n/2⌋`.
pub fn independence_bound(g: &Graph) -> Result<BoundReport> {
    g.require_connected()?;
    let set = maximum_independent_set(g);
    let lower_bound = if set.len() > g.n() / 2 { 3 } else { 1 };
    Ok(BoundReport {
        lower_bound,
        rule: Rule::Independence,
        witness: Witness::IndependentSet { vertices: set },
    })
}

fn family_qualifies(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| {
        vs.iter()
            .enumerate()
            .any(|(j, &w)| i != j && g.neighbors(u) & g.neighbors(w) != 0)
    })
}

fn pairwise_common(g: &Graph, vs: &[usize]) -> u64 {
    let mut union = 0;
    for (i, &u) in vs.iter().enumerate() {
        for &w in &vs[i + 1..] {
            union |= g.neighbors(u) & g.neighbors(w);
        }
    }
    union
}

/// Full exhaustion up to 10 vertices, families of at most 4 beyond that.
pub fn default_max_set_size(n: usize) -> usize {
    if n <= 10 {
        n
    } else {
        4
    }
}

/// Search independent families `{u_1..u_k}` (`k <= max_set_size`) in which
/// every member shares a neighbour with another member, for one whose
/// pairwise common neighbourhoods cover fewer than `k` vertices.
pub fn common_neighbors_bound(g: &Graph, max_set_size: usize) -> Result<BoundReport> {
    if max_set_size < 2 {
        return Err(Error::invalid("max set size must be at least 2"));
    }
    g.require_connected()?;
    if g.n() < 3 {
        return Err(Error::invalid("common-neighbour rule needs n >= 3"));
    }
    fn grow(
        g: &Graph,
        size: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        allowed: u64,
    ) -> Option<Vec<usize>> {
        if chosen.len() == size {
            let ok = family_qualifies(g, chosen)
                && (pairwise_common(g, chosen).count_ones() as usize) < size;
            return ok.then(|| chosen.clone());
        }
        for v in bits(allowed & !(bit(start) - 1)) {
            chosen.push(v);
            let found = grow(g, size, v + 1, chosen, allowed & !g.closed_neighbors(v));
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let limit = max_set_size.min(g.n());
    for size in 2..=limit {
        if let Some(vs) = grow(g, size, 0, &mut Vec::new(), g.vertex_mask()) {
            let common = bits(pairwise_common(g, &vs)).collect();
            return Ok(BoundReport {
                lower_bound: 3,
                rule: Rule::CommonNeighbors,
                witness: Witness::CommonNeighbors {
                    vertices: vs,
                    common,
                },
            });
        }
    }
    Ok(BoundReport::trivial(Rule::CommonNeighbors))
}

fn is_cut_vertex(g: &Graph, v: usize) -> bool {
    let rest = g.vertex_mask() & !bit(v);
    let start = rest.trailing_zeros() as usize;
    rest != 0 && g.component_mask(start, rest) != rest
}

pub fn two_connectivity_check(g: &Graph) -> Result<BoundReport> {
    g.require_connected()?;
    if g.n() < 3 {
        return Ok(BoundReport::trivial(Rule::NotTwoConnected));
    }
    Ok(match (0..g.n()).find(|&v| is_cut_vertex(g, v)) {
        Some(vertex) => BoundReport {
            lower_bound: 3,
            rule: Rule::NotTwoConnected,
            witness: Witness::CutVertex { vertex },
        },
        None => BoundReport::trivial(Rule::NotTwoConnected),
    })
}

/// Minimum edge count of a connected `q = 2` graph on `n >= 3` vertices.
pub fn edge_threshold(n: usize) -> usize {
    if n.is_multiple_of(2) {
        2 * n - 4
    } else {
        2 * n - 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "k", rename_all = "kebab-case")]
pub enum CandleKind {
    Double(usize),
    Single(usize),
}

impl CandleKind {
    pub fn graph(self) -> Result<Graph> {
        match self {
            CandleKind::Double(k) => double_candle(k),
            CandleKind::Single(k) => single_candle(k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "k", rename_all = "kebab-case")]
pub enum ExtremalTag {
    DoubleCandle(usize),
    SingleCandle(usize),
    Q3,
}

/// The candle isomorphic to `g`, with the map from candle labels to `g`.
pub fn candle_isomorphism(g: &Graph) -> Option<(CandleKind, Vec<usize>)> {
    let n = g.n();
    let kind = if n.is_multiple_of(2) {
        (n >= 4).then_some(CandleKind::Double(n / 2))?
    } else {
        (n >= 3).then_some(CandleKind::Single((n - 1) / 2))?
    };
    let candle = kind.graph().ok()?;
    if candle.edge_count() != g.edge_count() {
        return None;
    }
    let mut a = candle.degrees();
    let mut b = g.degrees();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    find_isomorphism(&candle, g).map(|phi| (kind, phi))
}

pub fn is_candle(g: &Graph) -> Option<CandleKind> {
    candle_isomorphism(g).map(|(k, _)| k)
}

pub fn extremal_tag(g: &Graph) -> Option<ExtremalTag> {
    if g.n() == 8 && are_isomorphic(g, &cube()) {
        return Some(ExtremalTag::Q3);
    }
    is_candle(g).map(|k| match k {
        CandleKind::Double(k) => ExtremalTag::DoubleCandle(k),
        CandleKind::Single(k) => ExtremalTag::SingleCandle(k),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBoundCheck {
    pub excluded: bool,
    pub report: BoundReport,
    pub extremal_tag: Option<ExtremalTag>,
}

pub fn edge_bound_check(g: &Graph) -> Result<EdgeBoundCheck> {
    g.require_connected()?;
    let n = g.n();
    if n < 3 {
        return Ok(EdgeBoundCheck {
            excluded: false,
            report: BoundReport::trivial(Rule::EdgeCount),
            extremal_tag: None,
        });
    }
    let edges = g.edge_count();
    let required = edge_threshold(n);
    let extremal_tag = if edges == required {
        extremal_tag(g)
    } else {
        None
    };
    let excluded = edges < required || (edges == required && extremal_tag.is_none());
    let report = if excluded {
        BoundReport {
            lower_bound: 3,
            rule: Rule::EdgeCount,
            witness: Witness::EdgeCount {
                edges,
                required,
                extremal: false,
            },
        }
    } else {
        BoundReport::trivial(Rule::EdgeCount)
    };
    Ok(EdgeBoundCheck {
        excluded,
        report,
        extremal_tag,
    })
}

/// First 2-path `x - u - y` lying on neither a triangle nor a 4-cycle.
pub fn open_two_path(g: &Graph) -> Option<(usize, usize, usize)> {
    for x in 0..g.n() {
        for y in (x + 1)..g.n() {
            if g.has_edge(x, y) {
                continue;
            }
            let common = g.neighbors(x) & g.neighbors(y);
            if common.count_ones() == 1 {
                return Some((x, common.trailing_zeros() as usize, y));
            }
        }
    }
    None
}

fn comb_orth_report(g: &Graph) -> BoundReport {
    match open_two_path(g) {
        Some((x, center, y)) => BoundReport {
            lower_bound: 3,
            rule: Rule::CombOrth,
            witness: Witness::TwoPath { x, center, y },
        },
        None => BoundReport::trivial(Rule::CombOrth),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SieveStatus {
    Excluded,
    Possible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveVerdict {
    pub status: SieveStatus,
    /// Rules that fired; empty when the status is `Possible`.
    pub reports: Vec<BoundReport>,
    pub extremal_tag: Option<ExtremalTag>,
}

/// Run every necessary condition and collect those that fire.
pub fn q2_sieve(g: &Graph) -> Result<SieveVerdict> {
    g.require_connected()?;
    let mut reports = Vec::new();
    let mut extremal = None;
    if g.n() >= 3 {
        let edge = edge_bound_check(g)?;
        extremal = edge.extremal_tag;
        let candidates = [
            unique_path_bound(g)?,
            independence_bound(g)?,
            common_neighbors_bound(g, default_max_set_size(g.n()))?,
            two_connectivity_check(g)?,
            edge.report,
            comb_orth_report(g),
        ];
        reports.extend(candidates.into_iter().filter(BoundReport::excludes_q2));
    }
    let status = if reports.is_empty() {
        SieveStatus::Possible
    } else {
        SieveStatus::Excluded
    };
    Ok(SieveVerdict {
        status,
        reports,
        extremal_tag: extremal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, named_graph, path};
    use proptest::prelude::*;

    #[test]
    fn unique_path_examples() {
        let r = unique_path_bound(&path(4).unwrap()).unwrap();
        assert_eq!(r.lower_bound, 4);
        assert_eq!(
            r.witness,
            Witness::Pair {
                x: 0,
                y: 3,
                distance: 3,
                paths: 1
            }
        );
        assert!(r.replay(&path(4).unwrap()));
        assert_eq!(
            unique_path_bound(&cycle(4).unwrap()).unwrap().lower_bound,
            2
        );
        let g32 = named_graph("G3_2").unwrap();
        let r = unique_path_bound(&g32).unwrap();
        assert!(r.lower_bound >= 3 && r.replay(&g32));
        for n in 2..=10 {
            assert_eq!(unique_path_bound(&path(n).unwrap()).unwrap().lower_bound, n);
        }
        assert_eq!(
            unique_path_bound(&Graph::empty(1).unwrap())
                .unwrap()
                .lower_bound,
            1
        );
    }

    #[test]
    fn independence_examples() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let r = independence_bound(&k23).unwrap();
        assert_eq!(r.lower_bound, 3);
        assert!(r.replay(&k23));
        assert_eq!(
            independence_bound(&double_candle(4).unwrap())
                .unwrap()
                .lower_bound,
            1
        );
        assert_eq!(independence_number(&double_candle(4).unwrap()), 4);
        assert_eq!(
            independence_bound(&cycle(5).unwrap()).unwrap().lower_bound,
            1
        );
        for k in 2..=12 {
            assert_eq!(independence_number(&double_candle(k).unwrap()), k);
            assert_eq!(independence_number(&single_candle(k).unwrap()), k);
        }
    }

    /// `G_3` plus a vertex `z` adjacent to the level-two pair, the
    /// configuration where three independent vertices share only two
    /// pairwise common neighbours.
    fn candle_with_pendant_level() -> Graph {
        let mut rows = double_candle(3).unwrap().adjacency_rows().to_vec();
        rows.push(0);
        let mut g = Graph::from_adjacency(rows).unwrap();
        g.add_edge(6, 3).unwrap();
        g.add_edge(6, 4).unwrap();
        g
    }

    fn brute_common_neighbor_violation(g: &Graph) -> bool {
        let n = g.n();
        (0u64..(1 << n)).any(|s| {
            let vs: Vec<usize> = bits(s).collect();
            vs.len() >= 2
                && g.is_independent(s)
                && family_qualifies(g, &vs)
                && (pairwise_common(g, &vs).count_ones() as usize) < vs.len()
        })
    }

    #[test]
    fn common_neighbor_examples() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let r = common_neighbors_bound(&k23, 3).unwrap();
        assert_eq!(r.lower_bound, 3);
        assert!(
            matches!(&r.witness, Witness::CommonNeighbors { vertices, .. } if vertices == &vec![2, 3, 4])
        );
        assert!(r.replay(&k23));
        assert_eq!(
            common_neighbors_bound(&cycle(4).unwrap(), 4)
                .unwrap()
                .lower_bound,
            1
        );
        let g = candle_with_pendant_level();
        assert!(brute_common_neighbor_violation(&g));
        let r = common_neighbors_bound(&g, 7).unwrap();
        assert_eq!(r.lower_bound, 3);
        assert!(r.replay(&g));
        // the triple {a = end vertex 5, z = 6, b = level-one vertex 1}
        let triple = [1usize, 5, 6];
        assert!(g.is_independent(to_mask(&triple)));
        assert!(family_qualifies(&g, &triple));
        assert_eq!(pairwise_common(&g, &triple).count_ones(), 2);
        assert!(common_neighbors_bound(&k23, 1).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(
            two_connectivity_check(&path(3).unwrap())
                .unwrap()
                .lower_bound,
            3
        );
        for n in 3..9 {
            assert_eq!(
                two_connectivity_check(&cycle(n).unwrap())
                    .unwrap()
                    .lower_bound,
                1
            );
        }
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let r = two_connectivity_check(&bowtie).unwrap();
        assert_eq!(r.witness, Witness::CutVertex { vertex: 2 });
        assert!(r.replay(&bowtie));
    }

    #[test]
    fn edge_bound_examples() {
        let g3 = double_candle(3).unwrap();
        let e = edge_bound_check(&g3).unwrap();
        assert!(!e.excluded);
        assert_eq!(e.extremal_tag, Some(ExtremalTag::DoubleCandle(3)));
        // another connected 6-vertex graph with 8 edges
        let other = cycle(6)
            .unwrap()
            .with_edge(0, 2)
            .unwrap()
            .with_edge(3, 5)
            .unwrap();
        let e = edge_bound_check(&other).unwrap();
        assert!(e.excluded && e.report.replay(&other));
        let seven = cycle(7)
            .unwrap()
            .with_edge(0, 2)
            .unwrap()
            .with_edge(0, 3)
            .unwrap()
            .with_edge(0, 4)
            .unwrap();
        assert_eq!(seven.edge_count(), 10);
        let e = edge_bound_check(&seven).unwrap();
        assert!(e.excluded && e.report.replay(&seven));
        let e = edge_bound_check(&single_candle(3).unwrap()).unwrap();
        assert_eq!(e.extremal_tag, Some(ExtremalTag::SingleCandle(3)));
        assert!(!e.excluded);
        assert_eq!(
            edge_bound_check(&cube()).unwrap().extremal_tag,
            Some(ExtremalTag::Q3)
        );
    }

    #[test]
    fn candle_recognition() {
        assert_eq!(is_candle(&cycle(4).unwrap()), Some(CandleKind::Double(2)));
        assert_eq!(
            is_candle(&complete(3).unwrap()),
            Some(CandleKind::Single(1))
        );
        assert_eq!(is_candle(&cube()), None);
        let h = single_candle(4)
            .unwrap()
            .permute(&[8, 7, 6, 5, 4, 3, 2, 1, 0])
            .unwrap();
        let (kind, phi) = candle_isomorphism(&h).unwrap();
        assert_eq!(kind, CandleKind::Single(4));
        let c = single_candle(4).unwrap();
        assert!(c.edges().iter().all(|&(u, v)| h.has_edge(phi[u], phi[v])));
    }

    #[test]
    fn sieve_examples() {
        let k23 = complete_bipartite(2, 3).unwrap();
        let v = q2_sieve(&k23).unwrap();
        assert_eq!(v.status, SieveStatus::Excluded);
        let rules: Vec<Rule> = v.reports.iter().map(|r| r.rule).collect();
        assert!(rules.contains(&Rule::CommonNeighbors) && rules.contains(&Rule::Independence));
        for k in 2..=8 {
            let v = q2_sieve(&double_candle(k).unwrap()).unwrap();
            assert_eq!(v.status, SieveStatus::Possible, "k={k}");
            assert_eq!(v.extremal_tag, Some(ExtremalTag::DoubleCandle(k)));
        }
        let g32 = named_graph("G3_2").unwrap();
        let v = q2_sieve(&g32).unwrap();
        assert_eq!(v.status, SieveStatus::Excluded);
        assert!(v.reports.iter().any(|r| r.rule == Rule::UniquePath));
        assert!(v.reports.iter().all(|r| r.replay(&g32)));
        assert!(q2_sieve(&Graph::from_edges(3, &[(0, 1)]).unwrap()).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bitsv| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bitsv[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    fn brute_alpha(g: &Graph) -> usize {
        (0u64..(1 << g.n()))
            .filter(|&s| g.is_independent(s))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn brute_paths(g: &Graph, x: usize, y: usize) -> (usize, usize) {
        // all simple paths; return (shortest length, number of that length)
        fn dfs(g: &Graph, v: usize, y: usize, seen: u64, len: usize, out: &mut Vec<usize>) {
            if v == y {
                out.push(len);
                return;
            }
            for w in bits(g.neighbors(v) & !seen) {
                dfs(g, w, y, seen | bit(w), len + 1, out);
            }
        }
        let mut lens = Vec::new();
        dfs(g, x, y, bit(x), 0, &mut lens);
        let d = *lens.iter().min().unwrap();
        (d, lens.iter().filter(|&&l| l == d).count())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn mis_matches_exhaustive(g in arb_graph(12)) {
            let set = maximum_independent_set(&g);
            prop_assert!(g.is_independent(to_mask(&set)));
            prop_assert_eq!(set.len(), brute_alpha(&g));
        }

        #[test]
        fn path_counts_match_enumeration(g in arb_graph(8)) {
            prop_assume!(g.is_connected() && g.n() >= 2);
            for x in 0..g.n() {
                let (dist, count) = path_counts_from(&g, x);
                for y in 0..g.n() {
                    if y == x { continue; }
                    let (d, c) = brute_paths(&g, x, y);
                    prop_assert_eq!(dist[y], Some(d));
                    prop_assert_eq!(count[y], c.min(2));
                }
            }
        }

        #[test]
        fn sieve_witnesses_replay(g in arb_graph(8)) {
            prop_assume!(g.is_connected());
            let v = q2_sieve(&g).unwrap();
            for r in &v.reports {
                prop_assert!(r.replay(&g), "{:?}", r);
            }
            let up = unique_path_bound(&g).unwrap();
            prop_assert!(up.replay(&g));
        }
    }
}
