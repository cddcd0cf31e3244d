//! Graph families and the fixed small graphs used throughout the crate.
//!
//! Candle labels: vertex index `i` carries label `i + 1` in the usual drawing. Vertex 0 is
//! the left end; level `t` (for `t >= 1`) is the pair `{2t - 1, 2t}`, whose
//! first member is the even label on the top row.
//!
//! Adjacency tables for the named six-vertex graphs (0-indexed):
//!
//! ```text
//! G3_1  hexagon 0-1-2-3-4-5-0 plus 2-5, 1-4, 1-5
//! G3_2  hexagon plus 2-5, 1-4, 1-3
//! G3_3  hexagon plus 2-5, 1-4, 0-3            (= K_{3,3})
//! G3_4  hexagon plus 2-5, 1-4, 1-5, 2-4
//! S1    0: 1 2 5 | 1: 0 2 4 | 2: 0 1 3 | 3: 2 4 5 | 4: 1 3 5 | 5: 0 3 4
//! S2    0: 2 4 | 1: 2 3 4 | 2: 0 1 3 5 | 3: 1 2 4 5 | 4: 0 1 3 5 | 5: 2 3 4
//! S3    0: 1 2 3 | 1: 0 2 3 | 2: 0 1 4 5 | 3: 0 1 4 5 | 4: 2 3 5 | 5: 2 3 4
//! ```
//!
//! `G3_plus_edge` is the double candle of diameter 3 with the level-one pair
//! `{1, 2}` joined; `G4_plus_edge` is the diameter-4 candle with the
//! level-two pair `{3, 4}` joined. `Q3` puts vertex `i` next to every `j`
//! differing from it in one bit.

use super::{bit, Graph};
use crate::error::{Error, Result};

/// Names accepted by [`named_graph`] besides the parametrised `P_n`, `C_n`,
/// `K_n` and `K_{m,n}` families.
pub const NAMED_GRAPHS: &[&str] = &[
    "Q3",
    "G3_plus_edge",
    "G4_plus_edge",
    "G3_1",
    "G3_2",
    "G3_3",
    "G3_4",
    "S1",
    "S2",
    "S3",
];

const HEXAGON: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];

pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    Ok(Graph::empty(n)?.complement())
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("complete bipartite parts must be nonempty"));
    }
    let mut g = Graph::empty(m + n)?;
    for u in 0..m {
        for v in m..m + n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn cube() -> Graph {
    let mut g = Graph::empty(8).expect("8 vertices");
    for u in 0..8usize {
        for b in 0..3 {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v).expect("valid");
            }
        }
    }
    g
}

fn join_levels(g: &mut Graph, a: &[usize], b: &[usize]) {
    for &u in a {
        for &v in b {
            g.add_edge(u, v).expect("candle vertices in range");
        }
    }
}

fn level(t: usize) -> [usize; 2] {
    [2 * t - 1, 2 * t]
}

/// Double-ended candle `G_k` on `2k` vertices; `G_2` is `C_4`.
pub fn double_candle(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::invalid(format!(
            "double candle needs k >= 2, got {k}"
        )));
    }
    let n = 2 * k;
    let mut g = Graph::empty(n)?;
    join_levels(&mut g, &[0], &level(1));
    for t in 1..k - 1 {
        join_levels(&mut g, &level(t), &level(t + 1));
    }
    join_levels(&mut g, &level(k - 1), &[n - 1]);
    Ok(g)
}

/// Single-ended candle `G'_k` on `2k + 1` vertices; `G'_1` is `K_3`.
pub fn single_candle(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::invalid("single candle needs k >= 1"));
    }
    let mut g = Graph::empty(2 * k + 1)?;
    join_levels(&mut g, &[0], &level(1));
    for t in 1..k {
        join_levels(&mut g, &level(t), &level(t + 1));
    }
    let [a, b] = level(k);
    g.add_edge(a, b)?;
    Ok(g)
}

/// Add a twin `u = n` of `v`: `N(u) = N(v)`, or `N[v]` when `joined`.
pub fn duplicate(g: &Graph, v: usize, joined: bool) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    let n = g.n() + 1;
    let mut rows = g.adjacency_rows().to_vec();
    rows.push(0);
    let mut h = Graph::from_adjacency(rows)?;
    let mut nbrs = g.neighbors(v);
    if joined {
        nbrs |= bit(v);
    }
    for w in super::bits(nbrs) {
        h.add_edge(n - 1, w)?;
    }
    Ok(h)
}

fn hexagon_plus(extra: &[(usize, usize)]) -> Graph {
    let mut edges = HEXAGON.to_vec();
    edges.extend_from_slice(extra);
    Graph::from_edges(6, &edges).expect("static table")
}

fn parse_count(s: &str) -> Option<usize> {
    let s = s.trim_start_matches('_');
    let s = s.trim_start_matches('{').trim_end_matches('}');
    s.parse().ok()
}

/// Look up a graph by name. See the module docs for vertex orders.
pub fn named_graph(name: &str) -> Result<Graph> {
    let unknown = || Error::invalid(format!("unknown graph name {name:?}"));
    let g = match name {
        "Q3" => cube(),
        "G3_plus_edge" => double_candle(3)?.with_edge(1, 2)?,
        "G4_plus_edge" => double_candle(4)?.with_edge(3, 4)?,
        "G3_1" => hexagon_plus(&[(2, 5), (1, 4), (1, 5)]),
        "G3_2" => hexagon_plus(&[(2, 5), (1, 4), (1, 3)]),
        "G3_3" => hexagon_plus(&[(2, 5), (1, 4), (0, 3)]),
        "G3_4" => hexagon_plus(&[(2, 5), (1, 4), (1, 5), (2, 4)]),
        "S1" => Graph::from_edges(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 5),
                (1, 2),
                (1, 4),
                (2, 3),
                (3, 5),
                (3, 4),
                (4, 5),
            ],
        )?,
        "S2" => Graph::from_edges(
            6,
            &[
                (0, 2),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (3, 5),
                (4, 5),
                (2, 3),
                (3, 4),
            ],
        )?,
        "S3" => Graph::from_edges(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 3),
                (1, 2),
                (2, 4),
                (3, 4),
                (2, 5),
                (3, 5),
                (4, 5),
            ],
        )?,
        _ => {
            let (family, rest) = name.split_at(1);
            match family {
                "P" => path(parse_count(rest).ok_or_else(unknown)?)?,
                "C" => cycle(parse_count(rest).ok_or_else(unknown)?)?,
                "K" => {
                    let rest = rest.trim_start_matches('_');
                    let rest = rest.trim_start_matches('{').trim_end_matches('}');
                    if let Some((m, n)) = rest.split_once(',') {
                        let m = m.trim().parse().map_err(|_| unknown())?;
                        let n = n.trim().parse().map_err(|_| unknown())?;
                        complete_bipartite(m, n)?
                    } else {
                        complete(rest.parse().map_err(|_| unknown())?)?
                    }
                }
                _ => return Err(unknown()),
            }
        }
    };
    Ok(g)
}
