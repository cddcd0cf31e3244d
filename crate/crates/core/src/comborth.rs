//! Combinatorial orthogonality, quadrangular graphs and condensation.

use crate::error::{Error, Result};
use crate::graph::iso::{are_isomorphic, canonical_form};
use crate::graph::{bits, complete, Graph};
use crate::matrix::{Pattern, Support};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Supports overlap in a number of positions other than one.
pub fn comb_orth_vectors(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::invalid("vectors must have equal length"));
    }
    let overlap = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a != 0.0 && **b != 0.0)
        .count();
    Ok(overlap != 1)
}

pub fn is_comb_orth_matrix(a: &impl Support) -> bool {
    let n = a.dim();
    let overlap_rows = |i: usize, j: usize| {
        (0..n)
            .filter(|&k| a.is_nonzero(i, k) && a.is_nonzero(j, k))
            .count()
    };
    let overlap_cols = |i: usize, j: usize| {
        (0..n)
            .filter(|&k| a.is_nonzero(k, i) && a.is_nonzero(k, j))
            .count()
    };
    (0..n).all(|i| ((i + 1)..n).all(|j| overlap_rows(i, j) != 1 && overlap_cols(i, j) != 1))
}

pub fn plus_identity_pattern(g: &Graph) -> Pattern {
    Pattern::from_fn(g.n(), |i, j| i == j || g.has_edge(i, j))
}

/// Some matrix in `S(G)` is combinatorially orthogonal iff `A(G) + I` is.
pub fn pattern_allows_comb_orth(g: &Graph) -> bool {
    is_comb_orth_matrix(&plus_identity_pattern(g))
}

pub fn has_two_path(g: &Graph) -> bool {
    (0..g.n()).any(|u| g.degree(u) >= 2)
}

/// Every path `x - u - y` lies in a 4-cycle (`allow_triangles = false`), or
/// in a 3- or 4-cycle (`allow_triangles = true`). The 4-cycle needs a second
/// common neighbour of `x` and `y`, whether or not `x ~ y`.
pub fn p2_cycle_property(g: &Graph, allow_triangles: bool) -> Result<bool> {
    if !has_two_path(g) {
        return Err(Error::PropertyVacuous(
            "graph has no path of length 2".into(),
        ));
    }
    for u in 0..g.n() {
        let nu: Vec<usize> = bits(g.neighbors(u)).collect();
        for (i, &x) in nu.iter().enumerate() {
            for &y in &nu[i + 1..] {
                if allow_triangles && g.has_edge(x, y) {
                    continue;
                }
                let others = g.neighbors(x) & g.neighbors(y) & !crate::graph::bit(u);
                if others == 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn quadrangular_check(g: &Graph) -> bool {
    let n = g.n();
    (0..n).all(|x| ((x + 1)..n).all(|y| (g.neighbors(x) & g.neighbors(y)).count_ones() != 1))
}

/// `x` with `N(x) = {u, v}`, `N(u) = N(v)` and `deg(u) >= 3`.
pub fn is_condensable(g: &Graph, x: usize) -> bool {
    if x >= g.n() || g.degree(x) != 2 {
        return false;
    }
    let mut it = bits(g.neighbors(x));
    let (u, v) = (it.next().expect("degree 2"), it.next().expect("degree 2"));
    g.neighbors(u) == g.neighbors(v) && g.degree(u) >= 3
}

pub fn condensable_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&x| is_condensable(g, x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationStep {
    /// Graph before the removal.
    pub graph: Graph,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondensationTrace {
    pub steps: Vec<CondensationStep>,
    pub terminal: Graph,
}

impl CondensationTrace {
    /// Every removal is of a condensable vertex and the graphs chain up.
    pub fn replay(&self) -> bool {
        let mut expected: Option<Graph> = None;
        for step in &self.steps {
            if expected.as_ref().is_some_and(|e| *e != step.graph)
                || !is_condensable(&step.graph, step.removed)
            {
                return false;
            }
            match step.graph.remove_vertex(step.removed) {
                Ok(next) => expected = Some(next),
                Err(_) => return false,
            }
        }
        match expected {
            Some(e) => e == self.terminal,
            None => true,
        }
    }

    pub fn start(&self) -> &Graph {
        self.steps.first().map_or(&self.terminal, |s| &s.graph)
    }
}

/// Depth-first search over condensable removals for a graph isomorphic to
/// `target`. `Ok(None)` means the whole choice tree was exhausted;
/// exceeding `max_steps` expanded nodes is an error.
pub fn condense_to(
    g: &Graph,
    target: &Graph,
    max_steps: usize,
) -> Result<Option<CondensationTrace>> {
    struct Dfs<'a> {
        target: &'a Graph,
        budget: usize,
        used: usize,
        dead: HashSet<Graph>,
        path: Vec<CondensationStep>,
    }
    impl Dfs<'_> {
        fn go(&mut self, g: &Graph) -> Result<Option<Graph>> {
            if g.n() == self.target.n() && are_isomorphic(g, self.target) {
                return Ok(Some(g.clone()));
            }
            if g.n() <= self.target.n() {
                return Ok(None);
            }
            let key = canonical_form(g).graph;
            if self.dead.contains(&key) {
                return Ok(None);
            }
            self.used += 1;
            if self.used > self.budget {
                return Err(Error::BudgetExhausted(self.budget));
            }
            for x in condensable_vertices(g) {
                let next = g.remove_vertex(x)?;
                self.path.push(CondensationStep {
                    graph: g.clone(),
                    removed: x,
                });
                if let Some(t) = self.go(&next)? {
                    return Ok(Some(t));
                }
                self.path.pop();
            }
            self.dead.insert(key);
            Ok(None)
        }
    }
    let mut dfs = Dfs {
        target,
        budget: max_steps,
        used: 0,
        dead: HashSet::new(),
        path: Vec::new(),
    };
    Ok(dfs.go(g)?.map(|terminal| CondensationTrace {
        steps: dfs.path,
        terminal,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImplicationRule {
    /// `p(2, <=4)` implies `|E| >= 2n - 4`.
    PathCycleEdges,
    /// Connected non-bipartite quadrangular, other than `K_1`, `K_4`, implies `|E| >= 2n - 1`.
    NonBipartiteQuadrangular,
    /// A combinatorially orthogonal matrix in `S(G)` for connected `G` implies `|E| >= 3n/2 - 2`.
    FullyIndecomposable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImplicationCheck {
    pub rule: ImplicationRule,
    pub hypothesis_holds: bool,
    pub bound_holds: bool,
    pub edges: usize,
    pub bound: f64,
}

impl ImplicationCheck {
    pub fn consistent(&self) -> bool {
        !self.hypothesis_holds || self.bound_holds
    }

    pub fn at_boundary(&self) -> bool {
        self.edges as f64 == self.bound
    }
}

pub fn implication_checks(g: &Graph) -> Result<Vec<ImplicationCheck>> {
    g.require_connected()?;
    let n = g.n() as f64;
    let edges = g.edge_count();
    let check = |rule, hypothesis_holds, bound: f64| ImplicationCheck {
        rule,
        hypothesis_holds,
        bound_holds: edges as f64 >= bound,
        edges,
        bound,
    };
    let p2 = has_two_path(g) && p2_cycle_property(g, true)?;
    let trivial = g.n() == 1 || are_isomorphic(g, &complete(4)?);
    let gz = !trivial && !g.is_bipartite() && quadrangular_check(g);
    Ok(vec![
        check(ImplicationRule::PathCycleEdges, p2, 2.0 * n - 4.0),
        check(ImplicationRule::NonBipartiteQuadrangular, gz, 2.0 * n - 1.0),
        check(
            ImplicationRule::FullyIndecomposable,
            g.n() >= 2 && pattern_allows_comb_orth(g),
            1.5 * n - 2.0,
        ),
    ])
}
