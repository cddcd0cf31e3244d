//! Exhaustive classification of small connected graphs.
//!
//! Each graph goes through the sieve, the closed-form table, a lookup
//! against certificates with the Strong Spectral Property on fewer edges
//! (every spanning supergraph of such a graph also has `q = 2`), and finally
//! the numerical search. Graphs are handled one edge count at a time so the
//! lookup sees every certificate found below.

use crate::certify::{
    candle_closed_form, named_closed_form, verify_certificate, Certificate, NAMED_MATRICES,
};
use crate::comborth::{implication_checks, pattern_allows_comb_orth};
use crate::error::{Error, Result};
use crate::graph::graph6;
use crate::graph::iso::{canonical_form, find_spanning_embedding};
use crate::graph::{bit, bits, distance_partition, Graph};
use crate::orthsearch::{closed_form_certificate, search_orthogonal, SearchOutcome, SearchParams};
use crate::qbounds::{
    edge_threshold, extremal_tag, is_candle, q2_sieve, BoundReport, CandleKind, SieveStatus,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};

pub const MAX_CENSUS_VERTICES: usize = 8;

/// All graphs on `n` vertices up to isomorphism, as canonical forms, by
/// adding one edge at a time and keeping one canonical copy per class.
pub fn enumerate_all(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_CENSUS_VERTICES {
        return Err(Error::invalid(format!(
            "enumeration supports 1..={MAX_CENSUS_VERTICES} vertices"
        )));
    }
    let mut level = vec![Graph::empty(n)?];
    let mut all = level.clone();
    let max_edges = n * (n - 1) / 2;
    for _ in 0..max_edges {
        let children: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|g| {
                g.non_edges()
                    .into_iter()
                    .map(move |(u, v)| canonical_form(&g.with_edge(u, v).expect("non-edge")).graph)
            })
            .collect();
        let mut seen = HashSet::new();
        let mut next: Vec<Graph> = children
            .into_iter()
            .filter(|g| seen.insert(g.clone()))
            .collect();
        next.sort_by_cached_key(graph6::encode);
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

/// One canonical representative per class of connected graphs, ordered by
/// edge count and then graph6 string.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    Ok(enumerate_all(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Sieve,
    ClosedForm,
    Search,
    SspClosure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A verified certificate on this graph.
    Direct { certificate: Certificate },
    /// A certificate with the Strong Spectral Property on a spanning
    /// subgraph; `embedding[v]` is the vertex of this graph that seed vertex `v` maps to.
    Supergraph {
        seed: Certificate,
        embedding: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Excluded {
        reports: Vec<BoundReport>,
    },
    Certified {
        evidence: Evidence,
    },
    Undetermined {
        best_residual: Option<f64>,
        iterations: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub provenance: Provenance,
    #[serde(flatten)]
    pub verdict: Verdict,
}

fn embeds(seed: &Graph, g: &Graph, phi: &[usize]) -> bool {
    let n = g.n();
    if seed.n() != n || phi.len() != n {
        return false;
    }
    let image = phi
        .iter()
        .try_fold(0u64, |m, &v| (v < n && m & bit(v) == 0).then(|| m | bit(v)));
    image.is_some()
        && seed
            .edges()
            .iter()
            .all(|&(u, v)| g.has_edge(phi[u], phi[v]))
}

fn is_ssp_seed(c: &Certificate) -> bool {
    c.is_verified() && c.report.ssp_status == Some(true)
}

impl ClassificationRecord {
    pub fn graph(&self) -> Result<Graph> {
        graph6::decode(&self.graph6)
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, Verdict::Certified { .. })
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self.verdict, Verdict::Excluded { .. })
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self.verdict, Verdict::Undetermined { .. })
    }

    /// Re-check the stored evidence against the stored graph, using only
    /// the record itself. Undetermined records carry nothing to check.
    pub fn replay(&self, tol: f64) -> Result<bool> {
        let g = self.graph()?;
        if g.n() != self.n || g.edge_count() != self.edges {
            return Ok(false);
        }
        Ok(match &self.verdict {
            Verdict::Excluded { reports } => {
                !reports.is_empty() && reports.iter().all(|r| r.excludes_q2() && r.replay(&g))
            }
            Verdict::Certified {
                evidence: Evidence::Direct { certificate },
            } => certificate.graph == g && verify_certificate(certificate, tol)?.verified,
            Verdict::Certified {
                evidence: Evidence::Supergraph { seed, embedding },
            } => {
                let report = verify_certificate(seed, tol)?;
                report.verified
                    && report.ssp_status == Some(true)
                    && embeds(&seed.graph, &g, embedding)
            }
            Verdict::Undetermined { .. } => true,
        })
    }
}

/// Search budgets: a cheap first pass and an optional second pass for
/// graphs the first pass leaves open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusBudget {
    pub first: SearchParams,
    pub escalation: Option<SearchParams>,
}

impl Default for CensusBudget {
    fn default() -> Self {
        CensusBudget {
            first: SearchParams {
                restarts: 20,
                ..SearchParams::default()
            },
            escalation: Some(SearchParams::default()),
        }
    }
}

impl CensusBudget {
    pub fn single(p: SearchParams) -> Self {
        CensusBudget {
            first: p,
            escalation: None,
        }
    }

    fn validate(&self) -> Result<()> {
        self.first.validate()?;
        if let Some(e) = &self.escalation {
            e.validate()?;
        }
        Ok(())
    }
}

/// Closed-form certificates on `n` vertices that have the Strong Spectral Property.
pub fn closed_form_seeds(n: usize) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    let tol = crate::certify::DEFAULT_VERIFY_TOL;
    let kind = match n {
        0..=2 => None,
        n if n % 2 == 0 => Some(CandleKind::Double(n / 2)),
        n => Some(CandleKind::Single((n - 1) / 2)),
    };
    if let Some(kind) = kind {
        out.push(Certificate::from_closed_form(
            &candle_closed_form(kind)?,
            tol,
        )?);
    }
    for name in NAMED_MATRICES {
        let cf = named_closed_form(name)?;
        if cf.graph.n() == n && !out.iter().any(|c: &Certificate| c.graph == cf.graph) {
            out.push(Certificate::from_closed_form(&cf, tol)?);
        }
    }
    out.retain(is_ssp_seed);
    Ok(out)
}

fn lookup_seed(g: &Graph, seeds: &[Certificate]) -> Option<(usize, Vec<usize>)> {
    seeds.iter().enumerate().find_map(|(i, s)| {
        (s.graph.n() == g.n() && s.graph.edge_count() < g.edge_count())
            .then(|| find_spanning_embedding(&s.graph, g))
            .flatten()
            .map(|phi| (i, phi))
    })
}

fn record(g: &Graph, provenance: Provenance, verdict: Verdict) -> ClassificationRecord {
    ClassificationRecord {
        graph6: graph6::encode(g),
        n: g.n(),
        edges: g.edge_count(),
        provenance,
        verdict,
    }
}

/// Classify against an explicit list of seed certificates (each must be
/// verified with the Strong Spectral Property).
pub fn classify_with_seeds(
    g: &Graph,
    budget: &CensusBudget,
    seeds: &[Certificate],
) -> Result<ClassificationRecord> {
    budget.validate()?;
    g.require_connected()?;
    if let Some(bad) = seeds.iter().find(|s| !is_ssp_seed(s)) {
        return Err(Error::invalid(format!(
            "seed {} lacks a verified certificate with the Strong Spectral Property",
            graph6::encode(&bad.graph)
        )));
    }
    let sieve = q2_sieve(g)?;
    if sieve.status == SieveStatus::Excluded {
        return Ok(record(
            g,
            Provenance::Sieve,
            Verdict::Excluded {
                reports: sieve.reports,
            },
        ));
    }
    if g.n() == 1 {
        return Ok(record(
            g,
            Provenance::Sieve,
            Verdict::Undetermined {
                best_residual: None,
                iterations: 0,
            },
        ));
    }
    if let Some(c) = closed_form_certificate(g, budget.first.tolerance)? {
        return Ok(record(
            g,
            Provenance::ClosedForm,
            Verdict::Certified {
                evidence: Evidence::Direct {
                    certificate: c.certificate,
                },
            },
        ));
    }
    if let Some((i, embedding)) = lookup_seed(g, seeds) {
        return Ok(record(
            g,
            Provenance::SspClosure,
            Verdict::Certified {
                evidence: Evidence::Supergraph {
                    seed: seeds[i].clone(),
                    embedding,
                },
            },
        ));
    }
    let mut best_residual = f64::INFINITY;
    let mut iterations = 0;
    for p in std::iter::once(&budget.first).chain(budget.escalation.as_ref()) {
        match search_orthogonal(g, p)? {
            SearchOutcome::Found { certificate, .. } => {
                return Ok(record(
                    g,
                    Provenance::Search,
                    Verdict::Certified {
                        evidence: Evidence::Direct { certificate },
                    },
                ));
            }
            SearchOutcome::Failed {
                best_residual: r,
                iterations: it,
            } => {
                best_residual = best_residual.min(r);
                iterations += it;
            }
        }
    }
    Ok(record(
        g,
        Provenance::Search,
        Verdict::Undetermined {
            best_residual: Some(best_residual),
            iterations,
        },
    ))
}

/// Sieve, closed forms, supergraphs of the closed-form SSP certificates on
/// the same vertex count, then search.
pub fn classify(g: &Graph, budget: &CensusBudget) -> Result<ClassificationRecord> {
    let seeds = closed_form_seeds(g.n())?;
    classify_with_seeds(g, budget, &seeds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureMember {
    pub graph6: String,
    pub seed: usize,
    pub embedding: Vec<usize>,
}

/// Connected graphs on `n` vertices containing one of `seeds` as a spanning subgraph.
pub fn ssp_closure(seeds: &[Certificate], n: usize) -> Result<Vec<ClosureMember>> {
    if let Some(bad) = seeds.iter().find(|s| !is_ssp_seed(s) || s.graph.n() != n) {
        return Err(Error::invalid(format!(
            "seed {} is not a verified SSP certificate on {n} vertices",
            graph6::encode(&bad.graph)
        )));
    }
    Ok(enumerate_connected(n)?
        .par_iter()
        .filter_map(|g| {
            seeds.iter().enumerate().find_map(|(i, s)| {
                find_spanning_embedding(&s.graph, g).map(|embedding| ClosureMember {
                    graph6: graph6::encode(g),
                    seed: i,
                    embedding,
                })
            })
        })
        .collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBucket {
    pub edges: usize,
    pub total: usize,
    pub excluded: usize,
    pub certified: usize,
    pub undetermined: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub graph6: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub total: usize,
    pub excluded: usize,
    pub certified: usize,
    pub undetermined: usize,
    pub by_edges: Vec<EdgeBucket>,
    pub by_provenance: BTreeMap<Provenance, usize>,
    /// Minimum edge count a connected graph with `q = 2` can have.
    pub edge_threshold: Option<usize>,
    /// Certified graphs with exactly `edge_threshold` edges.
    pub extremal_certified: Vec<String>,
    pub contradictions: Vec<Contradiction>,
    pub records: Vec<ClassificationRecord>,
}

impl CensusReport {
    pub fn record(&self, g: &Graph) -> Option<&ClassificationRecord> {
        let key = graph6::encode(&canonical_form(g).graph);
        self.records.iter().find(|r| r.graph6 == key)
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "n={}: {} connected graphs, {} certified, {} excluded, {} undetermined, {} contradictions\n",
            self.n,
            self.total,
            self.certified,
            self.excluded,
            self.undetermined,
            self.contradictions.len()
        );
        for b in &self.by_edges {
            s.push_str(&format!(
                "  |E|={:>2}: {:>5} total {:>5} certified {:>5} excluded {:>5} undetermined\n",
                b.edges, b.total, b.certified, b.excluded, b.undetermined
            ));
        }
        for (p, c) in &self.by_provenance {
            s.push_str(&format!("  {p:?}: {c}\n"));
        }
        for c in &self.contradictions {
            s.push_str(&format!("  CONTRADICTION {}: {}\n", c.graph6, c.message));
        }
        s
    }
}

fn known_q2(g: &Graph) -> bool {
    is_candle(g).is_some() || extremal_tag(g).is_some()
}

fn contradictions_for(r: &ClassificationRecord, g: &Graph) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let n = g.n();
    match &r.verdict {
        Verdict::Certified { .. } => {
            if n >= 3 {
                let t = edge_threshold(n);
                if r.edges < t {
                    out.push(format!(
                        "certified with {} edges, below the minimum {t}",
                        r.edges
                    ));
                } else if r.edges == t && extremal_tag(g).is_none() {
                    out.push(
                        "certified at the minimum edge count but neither a candle nor the cube"
                            .into(),
                    );
                }
            }
            if !pattern_allows_comb_orth(g) {
                out.push("certified but A(G)+I is not combinatorially orthogonal".into());
            }
            for c in implication_checks(g)? {
                if !c.consistent() {
                    out.push(format!("certified but violates {:?}", c.rule));
                }
            }
        }
        Verdict::Excluded { .. } => {
            if known_q2(g) {
                out.push("excluded but is a candle or the cube".into());
            }
            for name in NAMED_MATRICES {
                let cf = named_closed_form(name)?;
                if cf.graph.n() == n && crate::graph::iso::are_isomorphic(&cf.graph, g) {
                    out.push(format!(
                        "excluded but carries the closed-form matrix {name}"
                    ));
                }
            }
        }
        Verdict::Undetermined { .. } => {}
    }
    Ok(out)
}

/// Classify every connected graph on `n` vertices.
pub fn census_report(n: usize, budget: &CensusBudget) -> Result<CensusReport> {
    budget.validate()?;
    let graphs = enumerate_connected(n)?;
    let mut seeds = closed_form_seeds(n)?;
    let mut records: Vec<ClassificationRecord> = Vec::with_capacity(graphs.len());
    let mut start = 0;
    while start < graphs.len() {
        let m = graphs[start].edge_count();
        let end = graphs[start..]
            .iter()
            .position(|g| g.edge_count() != m)
            .map_or(graphs.len(), |p| start + p);
        let level: Vec<ClassificationRecord> = graphs[start..end]
            .par_iter()
            .map(|g| classify_with_seeds(g, budget, &seeds))
            .collect::<Result<_>>()?;
        for r in &level {
            if let Verdict::Certified {
                evidence: Evidence::Direct { certificate },
            } = &r.verdict
            {
                if is_ssp_seed(certificate) && !seeds.iter().any(|s| s.graph == certificate.graph) {
                    seeds.push(certificate.clone());
                }
            }
        }
        records.extend(level);
        start = end;
    }
    let mut by_edges: BTreeMap<usize, EdgeBucket> = BTreeMap::new();
    let mut by_provenance = BTreeMap::new();
    let mut contradictions = Vec::new();
    for (r, g) in records.iter().zip(&graphs) {
        let b = by_edges.entry(r.edges).or_insert_with(|| EdgeBucket {
            edges: r.edges,
            ..EdgeBucket::default()
        });
        b.total += 1;
        match r.verdict {
            Verdict::Excluded { .. } => b.excluded += 1,
            Verdict::Certified { .. } => b.certified += 1,
            Verdict::Undetermined { .. } => b.undetermined += 1,
        }
        *by_provenance.entry(r.provenance).or_insert(0) += 1;
        for message in contradictions_for(r, g)? {
            contradictions.push(Contradiction {
                graph6: r.graph6.clone(),
                message,
            });
        }
    }
    let threshold = (n >= 3).then(|| edge_threshold(n));
    let extremal_certified = records
        .iter()
        .filter(|r| Some(r.edges) == threshold && r.is_certified())
        .map(|r| r.graph6.clone())
        .collect();
    let count = |f: fn(&ClassificationRecord) -> bool| records.iter().filter(|r| f(r)).count();
    Ok(CensusReport {
        n,
        total: records.len(),
        excluded: count(ClassificationRecord::is_excluded),
        certified: count(ClassificationRecord::is_certified),
        undetermined: count(ClassificationRecord::is_undetermined),
        by_edges: by_edges.into_values().collect(),
        by_provenance,
        edge_threshold: threshold,
        extremal_certified,
        contradictions,
        records,
    })
}

/// Largest number of within-level non-edges `level_fills` will enumerate subsets of.
pub const MAX_FILL_PAIRS: usize = 20;

/// Graphs obtained from `g` by adding any subset of the non-edges joining
/// two vertices at the same distance from `root`, up to isomorphism and
/// sorted by `(edges, graph6)`. Includes `g` itself.
pub fn level_fills(g: &Graph, root: usize) -> Result<Vec<Graph>> {
    let part = distance_partition(g, root)?;
    let pairs: Vec<(usize, usize)> = part
        .levels
        .iter()
        .flat_map(|&lvl| {
            let vs: Vec<usize> = bits(lvl).collect();
            let mut out = Vec::new();
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    if !g.has_edge(u, v) {
                        out.push((u, v));
                    }
                }
            }
            out
        })
        .collect();
    if pairs.len() > MAX_FILL_PAIRS {
        return Err(Error::invalid(format!(
            "{} within-level non-edges, at most {MAX_FILL_PAIRS} supported",
            pairs.len()
        )));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut h = g.clone();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                h.add_edge(u, v)?;
            }
        }
        let c = canonical_form(&h).graph;
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out.sort_by_cached_key(|h| (h.edge_count(), graph6::encode(h)));
    Ok(out)
}
