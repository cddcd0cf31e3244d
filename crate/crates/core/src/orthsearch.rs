//! Numerical search for a symmetric orthogonal matrix with a prescribed
//! off-diagonal support.
//!
//! Each restart alternates between the pattern subspace (zero the
//! non-edges) and the symmetric orthogonal matrices (snap eigenvalues to
//! `±1`). Once the residual is small a Gauss-Newton polish on the pattern
//! coordinates drives `X² - I` to rounding level. Restarts run in fixed
//! chunks so the accepted restart does not depend on the thread count.

use crate::certify::{candle_closed_form, named_closed_form, Certificate, NAMED_MATRICES};
use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::graph::iso::find_isomorphism;
use crate::graph::Graph;
use crate::matrix::{CertMatrix, FloatMatrix};
use crate::qbounds::{candle_isomorphism, CandleKind};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const CHUNK: usize = 8;
/// Iterations without a 0.1% improvement of the best residual before a restart is abandoned.
const STALL_WINDOW: usize = 400;
/// Residual levels at which a polish is attempted.
const POLISH_LEVELS: [f64; 3] = [1e-2, 1e-4, 1e-6];
const NEWTON_STEPS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", default, deny_unknown_fields)]
pub struct SearchParams {
    #[serde(rename = "max-iter")]
    pub max_iterations: usize,
    pub restarts: usize,
    #[serde(rename = "tol")]
    pub tolerance: f64,
    pub seed: u64,
    pub polish: bool,
    /// Only accept matrices that also have the Strong Spectral Property.
    pub require_ssp: bool,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            max_iterations: 5000,
            restarts: 200,
            tolerance: 1e-9,
            seed: 0,
            polish: true,
            require_ssp: false,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::invalid("tolerance must be positive and finite"));
        }
        if self.max_iterations == 0 {
            return Err(Error::invalid("max-iter must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be at least 1"));
        }
        Ok(())
    }

    /// Read `max-iter`, `restarts`, `tol`, `seed`, `polish`, `require-ssp`;
    /// missing keys keep defaults.
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let p: SearchParams =
            toml::from_str(s).map_err(|e| Error::invalid(format!("config: {e}")))?;
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum SearchOutcome {
    Found {
        certificate: Certificate,
        restart: usize,
        /// Iterations summed over every restart that ran.
        iterations: usize,
    },
    Failed {
        best_residual: f64,
        iterations: usize,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found { certificate, .. } => Some(certificate),
            SearchOutcome::Failed { .. } => None,
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            SearchOutcome::Found { iterations, .. } | SearchOutcome::Failed { iterations, .. } => {
                *iterations
            }
        }
    }
}

struct Layout {
    n: usize,
    /// `(p, q)` with `p <= q`: the diagonal and the edges.
    vars: Vec<(usize, usize)>,
    edges: Vec<(usize, usize)>,
}

impl Layout {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut vars: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        let edges = g.edges();
        vars.extend(edges.iter().copied());
        Layout { n, vars, edges }
    }

    fn project(&self, y: &DMatrix<f64>) -> DMatrix<f64> {
        let mut x = DMatrix::zeros(self.n, self.n);
        for &(p, q) in &self.vars {
            let v = if p == q {
                y[(p, p)]
            } else {
                0.5 * (y[(p, q)] + y[(q, p)])
            };
            x[(p, q)] = v;
            x[(q, p)] = v;
        }
        x
    }

    fn min_edge(&self, x: &DMatrix<f64>) -> f64 {
        self.edges
            .iter()
            .map(|&(p, q)| x[(p, q)].abs())
            .fold(f64::INFINITY, f64::min)
    }
}

fn residual(x: &DMatrix<f64>) -> f64 {
    let sq = x * x;
    let n = x.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((sq[(i, j)] - target).abs());
        }
    }
    worst
}

/// Nearest symmetric orthogonal matrix: `V sign(Λ) Vᵀ`, zero eigenvalues
/// assigned to whichever sign is currently rarer.
fn nearest_involution(x: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let eig = SymmetricEigen::try_new(x.clone(), 1e-14, 2_000)?;
    let n = x.nrows();
    let mut signs = vec![0.0; n];
    let (mut pos, mut neg) = (0usize, 0usize);
    let mut ties = Vec::new();
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l > 0.0 {
            signs[i] = 1.0;
            pos += 1;
        } else if l < 0.0 {
            signs[i] = -1.0;
            neg += 1;
        } else {
            ties.push(i);
        }
    }
    for i in ties {
        if pos <= neg {
            signs[i] = 1.0;
            pos += 1;
        } else {
            signs[i] = -1.0;
            neg += 1;
        }
    }
    let v = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(n, n, |i, j| v[(i, j)] * signs[j]);
    Some(&scaled * v.transpose())
}

/// Gauss-Newton on `X² = I` over the pattern coordinates, with a
/// minimum-norm step from the SVD.
fn polish(layout: &Layout, x0: &DMatrix<f64>, target: f64) -> Option<(DMatrix<f64>, f64)> {
    let n = layout.n;
    let eqs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..=j).map(move |i| (i, j))).collect();
    let mut x = x0.clone();
    let mut res = residual(&x);
    for _ in 0..NEWTON_STEPS {
        if res <= target {
            break;
        }
        let sq = &x * &x;
        let f = DVector::from_iterator(
            eqs.len(),
            eqs.iter()
                .map(|&(i, j)| sq[(i, j)] - if i == j { 1.0 } else { 0.0 }),
        );
        let mut jac = DMatrix::zeros(eqs.len(), layout.vars.len());
        for (c, &(p, q)) in layout.vars.iter().enumerate() {
            // d(X²) along E_pq + E_qp (or E_pp) is E X + X E
            for (r, &(i, j)) in eqs.iter().enumerate() {
                let mut d = 0.0;
                if i == p {
                    d += x[(q, j)];
                }
                if i == q && p != q {
                    d += x[(p, j)];
                }
                if j == q {
                    d += x[(i, p)];
                }
                if j == p && p != q {
                    d += x[(i, q)];
                }
                jac[(r, c)] = d;
            }
        }
        let svd = jac.svd(true, true);
        let top = svd.singular_values.iter().fold(0.0f64, |m, s| m.max(*s));
        let step = svd.solve(&(-f), 1e-12 * top.max(1e-300)).ok()?;
        let mut next = x.clone();
        for (c, &(p, q)) in layout.vars.iter().enumerate() {
            next[(p, q)] += step[c];
            next[(q, p)] = next[(p, q)];
        }
        let next_res = residual(&next);
        if !next_res.is_finite() || next_res >= res {
            break;
        }
        x = next;
        res = next_res;
    }
    Some((x, res))
}

enum RestartEnd {
    Success(DMatrix<f64>),
    Failure,
}

struct RestartResult {
    end: RestartEnd,
    best_residual: f64,
    iterations: usize,
}

fn random_start(layout: &Layout, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(layout.n, layout.n);
    for &(p, q) in &layout.vars {
        let v: f64 = rng.random_range(-1.0..=1.0);
        x[(p, q)] = v;
        x[(q, p)] = v;
    }
    x
}

fn accept(layout: &Layout, x: &DMatrix<f64>, tol: f64) -> bool {
    residual(x) <= tol && layout.min_edge(x) > tol
}

fn run_restart(layout: &Layout, p: &SearchParams, index: usize) -> RestartResult {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed.wrapping_add(index as u64));
    let mut x = random_start(layout, &mut rng);
    let mut res = residual(&x);
    let mut best = res;
    let mut last_gain = 0usize;
    let mut polished_level = 0usize;
    // polish to well below the acceptance level so verification has slack
    let polish_target = p.tolerance * 1e-3;
    let finish = |end, best, iterations| RestartResult {
        end,
        best_residual: best,
        iterations,
    };
    for it in 1..=p.max_iterations {
        let Some(y) = nearest_involution(&x) else {
            return finish(RestartEnd::Failure, best, it);
        };
        x = layout.project(&y);
        res = residual(&x);
        let full_support = layout.min_edge(&x) > p.tolerance;
        if full_support && res < best * 0.999 {
            last_gain = it;
        }
        if full_support {
            best = best.min(res);
        }
        if res <= p.tolerance {
            // converged; a vanishing edge means a proper subgraph was reached
            let end = if full_support {
                RestartEnd::Success(x)
            } else {
                RestartEnd::Failure
            };
            return finish(end, best, it);
        }
        if p.polish && polished_level < POLISH_LEVELS.len() && res <= POLISH_LEVELS[polished_level]
        {
            while polished_level < POLISH_LEVELS.len() && res <= POLISH_LEVELS[polished_level] {
                polished_level += 1;
            }
            if let Some((xp, rp)) = polish(layout, &x, polish_target) {
                if layout.min_edge(&xp) > p.tolerance {
                    best = best.min(rp);
                }
                if accept(layout, &xp, p.tolerance) {
                    return finish(RestartEnd::Success(xp), best, it);
                }
            }
        }
        if res < 1e-6 && layout.min_edge(&x) < 1e-4 {
            // heading for a matrix in which some edge vanishes
            return finish(RestartEnd::Failure, best, it);
        }
        if it - last_gain > STALL_WINDOW {
            return finish(RestartEnd::Failure, best, it);
        }
    }
    finish(RestartEnd::Failure, best, p.max_iterations)
}

/// Bit-symmetric float matrix with exact zeros off the pattern.
fn to_float_matrix(x: &DMatrix<f64>) -> Result<FloatMatrix> {
    FloatMatrix::from_upper(x.clone())
}

pub fn search_orthogonal(g: &Graph, p: &SearchParams) -> Result<SearchOutcome> {
    p.validate()?;
    g.require_connected()?;
    if g.n() < 2 {
        return Err(Error::invalid("search needs at least two vertices"));
    }
    let layout = Layout::new(g);
    let mut iterations = 0usize;
    let mut best_residual = f64::INFINITY;
    let mut start = 0;
    while start < p.restarts {
        let end = (start + CHUNK).min(p.restarts);
        let results: Vec<RestartResult> = (start..end)
            .into_par_iter()
            .map(|r| run_restart(&layout, p, r))
            .collect();
        for (offset, r) in results.into_iter().enumerate() {
            iterations += r.iterations;
            best_residual = best_residual.min(r.best_residual);
            if let RestartEnd::Success(x) = r.end {
                let m = to_float_matrix(&x)?;
                let certificate = Certificate::new(
                    g.clone(),
                    CertMatrix::from_float(&m),
                    QSqrt2::one(),
                    p.tolerance,
                )?;
                if certificate.is_verified()
                    && (!p.require_ssp || certificate.report.ssp_status == Some(true))
                {
                    return Ok(SearchOutcome::Found {
                        certificate,
                        restart: start + offset,
                        iterations,
                    });
                }
            }
        }
        start = end;
    }
    Ok(SearchOutcome::Failed {
        best_residual,
        iterations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum Provenance {
    Candle { kind: CandleKind },
    Named { name: String },
    Search { restart: usize, iterations: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub certificate: Certificate,
    pub provenance: Provenance,
}

/// Closed-form certificate for `g` if it is a candle or carries a named matrix.
pub fn closed_form_certificate(g: &Graph, tol: f64) -> Result<Option<Certified>> {
    if let Some((kind, phi)) = candle_isomorphism(g) {
        let cf = candle_closed_form(kind)?;
        let c = Certificate::from_closed_form(&cf, tol)?.relabeled(&phi, tol)?;
        if c.is_verified() && c.graph == *g {
            return Ok(Some(Certified {
                certificate: c,
                provenance: Provenance::Candle { kind },
            }));
        }
    }
    for name in NAMED_MATRICES {
        let cf = named_closed_form(name)?;
        if cf.graph.n() != g.n() || cf.graph.edge_count() != g.edge_count() {
            continue;
        }
        if let Some(phi) = find_isomorphism(&cf.graph, g) {
            let c = Certificate::from_closed_form(&cf, tol)?.relabeled(&phi, tol)?;
            if c.is_verified() && c.graph == *g {
                return Ok(Some(Certified {
                    certificate: c,
                    provenance: Provenance::Named {
                        name: name.to_string(),
                    },
                }));
            }
        }
    }
    Ok(None)
}

/// Candle matrix, then the named table, then the numerical search.
pub fn certify_q2(g: &Graph, p: &SearchParams) -> Result<Certified> {
    p.validate()?;
    g.require_connected()?;
    if let Some(c) = closed_form_certificate(g, p.tolerance)? {
        return Ok(c);
    }
    match search_orthogonal(g, p)? {
        SearchOutcome::Found {
            certificate,
            restart,
            iterations,
        } => Ok(Certified {
            certificate,
            provenance: Provenance::Search {
                restart,
                iterations,
            },
        }),
        SearchOutcome::Failed {
            best_residual,
            iterations,
        } => Err(Error::SearchFailed {
            best_residual,
            iterations,
        }),
    }
}
