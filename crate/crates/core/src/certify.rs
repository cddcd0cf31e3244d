//! Closed-form orthogonal matrices and the verification primitives behind
//! certificates: pattern membership, orthogonality, spectra and the Strong
//! Spectral Property.

use crate::error::{Error, Result};
use crate::exact::{exact_rank, ExactMatrix, QSqrt2};
use crate::graph::iso::are_isomorphic;
use crate::graph::{complete, double_candle, single_candle, Graph};
use crate::matrix::{CertMatrix, FloatMatrix, Support};
use crate::qbounds::CandleKind;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

/// Relative clustering tolerance for distinct eigenvalues.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
/// Singular values below this fraction of the largest count as zero.
pub const DEFAULT_SSP_TOL: f64 = 1e-9;
/// Orthogonality residual accepted by [`verify_certificate`] callers by default.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

fn q(a: i64) -> QSqrt2 {
    QSqrt2::int(a)
}

fn r2(b: i64) -> QSqrt2 {
    QSqrt2::sqrt2_times(b)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Chain {
    Ones,
    Alternating,
}

impl Chain {
    fn block(self) -> [[i64; 2]; 2] {
        match self {
            Chain::Ones => [[1, 1], [1, 1]],
            Chain::Alternating => [[-1, 1], [1, -1]],
        }
    }
    fn other(self) -> Chain {
        match self {
            Chain::Ones => Chain::Alternating,
            Chain::Alternating => Chain::Ones,
        }
    }
}

/// Place a 2×2 block between the vertex pairs starting at `r` and `c`.
fn put_pair_block(x: &mut ExactMatrix, r: usize, c: usize, block: [[i64; 2]; 2]) {
    for (i, row) in block.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            x.set_sym(r + i, c + j, q(v));
        }
    }
}

/// Place `√2 [1, ±1]` between a single vertex and the pair starting at `c`.
fn put_end_block(x: &mut ExactMatrix, v: usize, c: usize, alternating: bool) {
    x.set_sym(v, c, r2(1));
    x.set_sym(v, c + 1, r2(if alternating { -1 } else { 1 }));
}

/// The exact symmetric matrix with `X² = 4I` in `S(candle)`, under the
/// generator's vertex labelling. The only single candle without one is
/// `k = 1` (the triangle); see [`candle_closed_form`].
pub fn candle_matrix(kind: CandleKind) -> Result<ExactMatrix> {
    match kind {
        CandleKind::Double(k) => {
            if k < 2 {
                return Err(Error::invalid("double candle needs k >= 2"));
            }
            let n = 2 * k;
            let mut x = ExactMatrix::zeros(n);
            // level t occupies rows 2t-1, 2t
            put_end_block(&mut x, 0, 1, true);
            let mut chain = Chain::Ones;
            for t in 1..k - 1 {
                put_pair_block(&mut x, 2 * t - 1, 2 * t + 1, chain.block());
                chain = chain.other();
            }
            // `√2[1,-1]` is orthogonal to the ones block, `√2[1,1]` to the
            // alternating one and to the opening `√2[1,-1]` when k = 2
            let end_alternating = k > 2 && chain == Chain::Alternating;
            put_end_block(&mut x, n - 1, 2 * k - 3, end_alternating);
            Ok(x)
        }
        CandleKind::Single(k) => {
            if k < 2 {
                return Err(Error::invalid(
                    "single candle matrix needs k >= 2; k = 1 is the triangle",
                ));
            }
            let n = 2 * k + 1;
            let mut x = ExactMatrix::zeros(n);
            // chain block between levels t and t+1 is alternating when k - t - 1 is even
            let chain_at = |t: usize| {
                if (k - t - 1).is_multiple_of(2) {
                    Chain::Alternating
                } else {
                    Chain::Ones
                }
            };
            for t in 1..k {
                put_pair_block(&mut x, 2 * t - 1, 2 * t + 1, chain_at(t).block());
            }
            put_end_block(&mut x, 0, 1, chain_at(1) == Chain::Ones);
            put_pair_block(&mut x, n - 2, n - 2, Chain::Ones.block());
            Ok(x)
        }
    }
}

/// A closed-form certificate matrix: `(matrix / scale)` is orthogonal and
/// its pattern is `graph` under the stored labelling.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub graph: Graph,
    pub matrix: ExactMatrix,
    pub scale: QSqrt2,
}

pub fn candle_closed_form(kind: CandleKind) -> Result<ClosedForm> {
    let graph = kind.graph()?;
    if kind == CandleKind::Single(1) {
        // 2A - I for the triangle squares to 9I
        let mut m = ExactMatrix::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, q(if i == j { -1 } else { 2 }));
            }
        }
        return Ok(ClosedForm {
            graph,
            matrix: m,
            scale: q(3),
        });
    }
    Ok(ClosedForm {
        graph,
        matrix: candle_matrix(kind)?,
        scale: q(2),
    })
}

pub const NAMED_MATRICES: &[&str] = &["M", "M1", "M2"];

fn rows_of(entries: &[&[(i64, i64)]]) -> Vec<Vec<QSqrt2>> {
    entries
        .iter()
        .map(|row| row.iter().map(|&(a, b)| &q(a) + &r2(b)).collect())
        .collect()
}

/// The printed matrices, entries `(a, b)` meaning `a + b√2`.
pub fn named_matrix_exact(name: &str) -> Result<ExactMatrix> {
    const O: (i64, i64) = (0, 0);
    const S: (i64, i64) = (0, 1);
    const NS: (i64, i64) = (0, -1);
    let i = |a: i64| (a, 0);
    let rows = match name {
        "M" => rows_of(&[
            &[O, S, S, O, O],
            &[S, O, O, i(-1), i(1)],
            &[S, O, O, i(1), i(-1)],
            &[O, i(-1), i(1), i(1), i(1)],
            &[O, i(1), i(-1), i(1), i(1)],
        ]),
        "M1" => rows_of(&[
            &[i(-1), i(2), i(2), O, O, O],
            &[i(2), O, i(1), S, NS, O],
            &[i(2), i(1), O, NS, S, O],
            &[O, S, NS, i(1), O, i(2)],
            &[O, NS, S, O, i(1), i(2)],
            &[O, O, O, i(2), i(2), i(-1)],
        ]),
        "M2" => rows_of(&[
            &[i(2), S, S, O, O, O, O, O],
            &[S, i(-2), O, i(-1), i(1), O, O, O],
            &[S, O, i(-2), i(1), i(-1), O, O, O],
            &[O, i(-1), i(1), O, i(-2), i(1), i(1), O],
            &[O, i(1), i(-1), i(-2), O, i(1), i(1), O],
            &[O, O, O, i(1), i(1), i(2), O, NS],
            &[O, O, O, i(1), i(1), O, i(2), S],
            &[O, O, O, O, O, NS, S, i(-2)],
        ]),
        other => return Err(Error::invalid(format!("unknown named matrix {other:?}"))),
    };
    ExactMatrix::symmetric_from_rows(rows)
}

pub fn named_matrix(name: &str) -> Result<FloatMatrix> {
    FloatMatrix::new(named_matrix_exact(name)?.to_float())
}

/// Matrix, pattern graph and scale of a named matrix. `M` lives on the
/// five-vertex single candle, `M1` and `M2` on the double candles of
/// diameter 3 and 4 with the middle pair joined.
pub fn named_closed_form(name: &str) -> Result<ClosedForm> {
    let matrix = named_matrix_exact(name)?;
    let (graph, scale) = match name {
        "M" => (single_candle(2)?, q(2)),
        "M1" => (double_candle(3)?.with_edge(1, 2)?, q(3)),
        "M2" => (double_candle(4)?.with_edge(3, 4)?, r2(2)),
        _ => unreachable!("validated above"),
    };
    Ok(ClosedForm {
        graph,
        matrix,
        scale,
    })
}

/// Graph whose edges are the off-diagonal support of `a`.
pub fn support_graph(a: &impl Support) -> Result<Graph> {
    let n = a.dim();
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if a.is_nonzero(i, j) || a.is_nonzero(j, i) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Label-sensitive: off-diagonal support equals `E(g)`; the diagonal is free.
pub fn pattern_match(a: &impl Support, g: &Graph) -> Result<bool> {
    if a.dim() != g.n() {
        return Err(Error::invalid(format!(
            "matrix is {}x{} but graph has {} vertices",
            a.dim(),
            a.dim(),
            g.n()
        )));
    }
    let n = g.n();
    Ok((0..n).all(|i| (0..n).all(|j| i == j || a.is_nonzero(i, j) == g.has_edge(i, j))))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

pub fn spectrum(a: &DMatrix<f64>, tol: f64) -> Result<Vec<Eigenvalue>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("clustering tolerance must be positive"));
    }
    if !a.is_square() {
        return Err(Error::invalid("matrix must be square"));
    }
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let radius = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gap = tol * radius.max(1.0);
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match clusters.last_mut() {
            Some(c) if v - c[c.len() - 1] <= gap => c.push(v),
            _ => clusters.push(vec![v]),
        }
    }
    Ok(clusters
        .into_iter()
        .map(|c| Eigenvalue {
            value: c.iter().sum::<f64>() / c.len() as f64,
            multiplicity: c.len(),
        })
        .collect())
}

/// `X² == scale² I` in exact arithmetic.
pub fn verify_orthogonality_exact(x: &ExactMatrix, scale: &QSqrt2) -> bool {
    if !x.is_symmetric() {
        return false;
    }
    let Ok(sq) = x.mul(x) else { return false };
    sq == ExactMatrix::identity(x.dim()).scaled(&(scale * scale))
}

/// `max |(A/scale)² - I|`.
pub fn orthogonality_residual(a: &DMatrix<f64>, scale: f64) -> f64 {
    let b = a / scale;
    let sq = &b * &b;
    let n = a.nrows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (sq[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SspResult {
    pub has_ssp: bool,
    pub nullity: usize,
}

/// Unknowns are `X_pq`, `p < q`, over the off-diagonal zeros of `a`.
fn ssp_unknowns(a: &impl Support) -> Vec<(usize, usize)> {
    let n = a.dim();
    (0..n)
        .flat_map(|q| (0..q).map(move |p| (p, q)))
        .filter(|&(p, q)| !a.is_nonzero(p, q))
        .collect()
}

/// Coefficient rows of `(AX - XA)_ij`, `i < j`; `AX - XA` is skew, so the
/// strict upper triangle carries every equation.
fn ssp_system<T: Clone>(
    n: usize,
    unknowns: &[(usize, usize)],
    entry: impl Fn(usize, usize) -> T,
    zero: T,
    add: impl Fn(&T, &T) -> T,
    sub: impl Fn(&T, &T) -> T,
) -> Vec<Vec<T>> {
    let mut rows = Vec::new();
    for j in 1..n {
        for i in 0..j {
            let row = unknowns
                .iter()
                .map(|&(p, q)| {
                    let mut c = zero.clone();
                    if j == q {
                        c = add(&c, &entry(i, p));
                    }
                    if j == p {
                        c = add(&c, &entry(i, q));
                    }
                    if i == p {
                        c = sub(&c, &entry(q, j));
                    }
                    if i == q {
                        c = sub(&c, &entry(p, j));
                    }
                    c
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

pub fn ssp_check(a: &FloatMatrix, tol: f64) -> SspResult {
    let m = a.inner();
    let n = a.dim();
    let unknowns = ssp_unknowns(a);
    if unknowns.is_empty() {
        return SspResult {
            has_ssp: true,
            nullity: 0,
        };
    }
    let rows = ssp_system(
        n,
        &unknowns,
        |i, j| m[(i, j)],
        0.0,
        |x, y| x + y,
        |x, y| x - y,
    );
    let system = DMatrix::from_fn(rows.len(), unknowns.len(), |r, c| rows[r][c]);
    let sv = system.singular_values();
    let top = sv.iter().fold(0.0f64, |acc, s| acc.max(*s));
    let rank = sv.iter().filter(|&&s| top > 0.0 && s > tol * top).count();
    let nullity = unknowns.len() - rank;
    SspResult {
        has_ssp: nullity == 0,
        nullity,
    }
}

pub fn ssp_check_exact(a: &ExactMatrix) -> SspResult {
    let unknowns = ssp_unknowns(a);
    if unknowns.is_empty() {
        return SspResult {
            has_ssp: true,
            nullity: 0,
        };
    }
    let rows = ssp_system(
        a.dim(),
        &unknowns,
        |i, j| a.get(i, j).clone(),
        QSqrt2::zero(),
        |x, y| x + y,
        |x, y| x - y,
    );
    let nullity = unknowns.len() - exact_rank(rows);
    SspResult {
        has_ssp: nullity == 0,
        nullity,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pattern_ok: bool,
    /// Set when the labelled pattern fails but the support graph is isomorphic to the graph.
    pub pattern_isomorphic: bool,
    pub orthogonality_residual: f64,
    /// `Some` when the check ran in exact arithmetic.
    pub exact_orthogonal: Option<bool>,
    pub spectrum: Vec<Eigenvalue>,
    pub distinct_count: usize,
    pub ssp_status: Option<bool>,
    pub ssp_nullity: Option<usize>,
    pub verified: bool,
}

/// A matrix claimed to witness two distinct eigenvalues for `graph`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub graph: Graph,
    pub matrix: CertMatrix,
    pub scale: QSqrt2,
    pub report: VerificationReport,
}

impl Certificate {
    /// Build and verify. Fails only on malformed input.
    pub fn new(graph: Graph, matrix: CertMatrix, scale: QSqrt2, tol: f64) -> Result<Certificate> {
        let report = verify_parts(&graph, &matrix, &scale, tol)?;
        Ok(Certificate {
            graph,
            matrix,
            scale,
            report,
        })
    }

    pub fn from_closed_form(cf: &ClosedForm, tol: f64) -> Result<Certificate> {
        Certificate::new(
            cf.graph.clone(),
            CertMatrix::from_exact(&cf.matrix),
            cf.scale.clone(),
            tol,
        )
    }

    pub fn is_verified(&self) -> bool {
        self.report.verified
    }

    /// The same certificate for `graph.permute(perm)`: vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize], tol: f64) -> Result<Certificate> {
        let graph = self.graph.permute(perm)?;
        let matrix = match self.matrix.exact()? {
            Some(e) => CertMatrix::from_exact(&e.permuted(perm)),
            None => CertMatrix::from_float(&self.matrix.float()?.permuted(perm)),
        };
        Certificate::new(graph, matrix, self.scale.clone(), tol)
    }
}

fn verify_parts(
    graph: &Graph,
    matrix: &CertMatrix,
    scale: &QSqrt2,
    tol: f64,
) -> Result<VerificationReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if scale.signum() <= 0 {
        return Err(Error::invalid("scale must be positive"));
    }
    if matrix.dim() != graph.n() {
        return Err(Error::invalid("matrix and graph dimensions differ"));
    }
    let exact = matrix.exact()?;
    let float = matrix.float()?;
    let (pattern_ok, support) = match &exact {
        Some(e) => (pattern_match(e, graph)?, support_graph(e)?),
        None => {
            let t = float.thresholded(tol);
            (pattern_match(&t, graph)?, support_graph(&t)?)
        }
    };
    let pattern_isomorphic = !pattern_ok && are_isomorphic(&support, graph);
    let residual = orthogonality_residual(float.inner(), scale.to_f64());
    let exact_orthogonal = exact.as_ref().map(|e| verify_orthogonality_exact(e, scale));
    let orthogonality_residual = if exact_orthogonal == Some(true) {
        0.0
    } else {
        residual
    };
    let spectrum = spectrum(float.inner(), DEFAULT_CLUSTER_TOL)?;
    let distinct_count = spectrum.len();
    let ssp = match &exact {
        Some(e) => ssp_check_exact(e),
        None => ssp_check(&float, DEFAULT_SSP_TOL),
    };
    let orthogonal = exact_orthogonal.unwrap_or(residual <= tol);
    Ok(VerificationReport {
        pattern_ok,
        pattern_isomorphic,
        orthogonality_residual,
        exact_orthogonal,
        spectrum,
        distinct_count,
        ssp_status: Some(ssp.has_ssp),
        ssp_nullity: Some(ssp.nullity),
        verified: pattern_ok && orthogonal && distinct_count == 2,
    })
}

/// Recompute the report of `c` from its graph, matrix and scale alone.
pub fn verify_certificate(c: &Certificate, tol: f64) -> Result<VerificationReport> {
    verify_parts(&c.graph, &c.matrix, &c.scale, tol)
}

/// Certificate for the triangle, used by callers that want `K_3` directly.
pub fn triangle_certificate() -> Result<Certificate> {
    let cf = candle_closed_form(CandleKind::Single(1))?;
    debug_assert_eq!(cf.graph, complete(3)?);
    Certificate::from_closed_form(&cf, DEFAULT_VERIFY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, named_graph};

    fn mults(s: &[Eigenvalue]) -> Vec<(i64, usize)> {
        s.iter()
            .map(|e| (e.value.round() as i64, e.multiplicity))
            .collect()
    }

    #[test]
    fn candle_matrices_all_k() {
        for k in 2..=12 {
            for kind in [CandleKind::Double(k), CandleKind::Single(k)] {
                let x = candle_matrix(kind).unwrap();
                assert!(verify_orthogonality_exact(&x, &q(2)), "{kind:?}");
                assert!(
                    pattern_match(&x, &kind.graph().unwrap()).unwrap(),
                    "{kind:?}"
                );
                let s = spectrum(&x.to_float(), DEFAULT_CLUSTER_TOL).unwrap();
                let expected = match kind {
                    CandleKind::Double(_) => vec![(-2, k), (2, k)],
                    CandleKind::Single(_) => vec![(-2, k), (2, k + 1)],
                };
                assert_eq!(mults(&s), expected, "{kind:?}");
            }
        }
        assert!(candle_matrix(CandleKind::Double(1)).is_err());
        assert!(candle_matrix(CandleKind::Single(1)).is_err());
    }

    #[test]
    fn small_single_candle_is_m() {
        let x = candle_matrix(CandleKind::Single(2)).unwrap();
        assert_eq!(x, named_matrix_exact("M").unwrap());
        let c4 = candle_matrix(CandleKind::Double(2)).unwrap();
        let g2 = double_candle(2).unwrap();
        assert!(pattern_match(&c4, &g2).unwrap());
        // same graph as the 4-cycle, but labelled 0-{1,2}-3
        assert!(!pattern_match(&c4, &cycle(4).unwrap()).unwrap());
        assert!(are_isomorphic(&g2, &cycle(4).unwrap()));
    }

    #[test]
    fn named_matrices() {
        let s1 = spectrum(named_matrix("M1").unwrap().inner(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(mults(&s1), vec![(-3, 3), (3, 3)]);
        let s2 = spectrum(named_matrix("M2").unwrap().inner(), DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(s2.len(), 2);
        assert!((s2[1].value - 8f64.sqrt()).abs() < 1e-12 && s2[1].multiplicity == 4);
        assert!((s2[0].value + 8f64.sqrt()).abs() < 1e-12 && s2[0].multiplicity == 4);
        for name in NAMED_MATRICES {
            let cf = named_closed_form(name).unwrap();
            assert!(verify_orthogonality_exact(&cf.matrix, &cf.scale), "{name}");
            assert!(pattern_match(&cf.matrix, &cf.graph).unwrap(), "{name}");
        }
        let m1 = named_closed_form("M1").unwrap();
        assert!(pattern_match(&m1.matrix, &named_graph("G3_plus_edge").unwrap()).unwrap());
        let m2 = named_closed_form("M2").unwrap();
        assert!(pattern_match(&m2.matrix, &named_graph("G4_plus_edge").unwrap()).unwrap());
        assert!(named_matrix("M3").is_err());
    }

    #[test]
    fn pattern_examples() {
        let k2 = complete(2).unwrap();
        assert!(!pattern_match(&DMatrix::<f64>::identity(2, 2), &k2).unwrap());
        assert!(pattern_match(&DMatrix::<f64>::identity(3, 3), &k2).is_err());
    }

    #[test]
    fn exact_orthogonality_rejects_ones() {
        let mut j = ExactMatrix::zeros(2);
        for i in 0..2 {
            for k in 0..2 {
                j.set(i, k, q(1));
            }
        }
        assert!(!verify_orthogonality_exact(&j, &q(2)));
    }

    #[test]
    fn spectrum_zero_and_tolerance_band() {
        let z = spectrum(&DMatrix::zeros(3, 3), 1e-8).unwrap();
        assert_eq!(
            z,
            vec![Eigenvalue {
                value: 0.0,
                multiplicity: 3
            }]
        );
        let mats: Vec<DMatrix<f64>> = (2..=6)
            .flat_map(|k| [CandleKind::Double(k), CandleKind::Single(k)])
            .map(|kind| candle_matrix(kind).unwrap().to_float())
            .chain(
                NAMED_MATRICES
                    .iter()
                    .map(|n| named_matrix(n).unwrap().inner().clone()),
            )
            .collect();
        for m in &mats {
            let reference = mults(&spectrum(m, DEFAULT_CLUSTER_TOL).unwrap());
            for tol in [1e-10, 1e-7, 1e-6, 1e-5, 1e-4] {
                assert_eq!(mults(&spectrum(m, tol).unwrap()), reference);
            }
        }
    }

    #[test]
    fn ssp_examples() {
        let m = named_matrix_exact("M").unwrap();
        assert!(ssp_check_exact(&m).has_ssp);
        let g3 = candle_matrix(CandleKind::Double(3)).unwrap();
        assert!(!ssp_check_exact(&g3).has_ssp);
        let d = FloatMatrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 3.0],
        ])
        .unwrap();
        assert_eq!(
            ssp_check(&d, DEFAULT_SSP_TOL),
            SspResult {
                has_ssp: true,
                nullity: 0
            }
        );
        let eye = FloatMatrix::new(DMatrix::identity(3, 3)).unwrap();
        assert_eq!(ssp_check(&eye, DEFAULT_SSP_TOL).nullity, 3);
    }

    #[test]
    fn ssp_exact_matches_float() {
        let mut mats: Vec<ExactMatrix> = (2..=7)
            .flat_map(|k| [CandleKind::Double(k), CandleKind::Single(k)])
            .map(|kind| candle_matrix(kind).unwrap())
            .collect();
        mats.extend(
            NAMED_MATRICES
                .iter()
                .map(|n| named_matrix_exact(n).unwrap()),
        );
        for m in &mats {
            let e = ssp_check_exact(m);
            let f = ssp_check(&FloatMatrix::new(m.to_float()).unwrap(), DEFAULT_SSP_TOL);
            assert_eq!(e, f);
        }
    }

    #[test]
    fn ssp_brute_force_small() {
        // nullity of the commutant restricted to the zero pattern, by direct
        // column-by-column construction of AX - XA for each basis matrix
        let m = named_matrix("M").unwrap();
        let a = m.inner();
        let unknowns = ssp_unknowns(&m);
        let cols: Vec<DMatrix<f64>> = unknowns
            .iter()
            .map(|&(p, qq)| {
                let mut e = DMatrix::zeros(5, 5);
                e[(p, qq)] = 1.0;
                e[(qq, p)] = 1.0;
                a * &e - &e * a
            })
            .collect();
        let stacked = DMatrix::from_fn(25, cols.len(), |r, c| cols[c][(r / 5, r % 5)]);
        assert_eq!(stacked.rank(1e-9), unknowns.len());
    }

    #[test]
    fn certificate_examples() {
        let g3 = candle_closed_form(CandleKind::Double(3)).unwrap();
        let c = Certificate::from_closed_form(&g3, DEFAULT_VERIFY_TOL).unwrap();
        assert!(c.is_verified());
        assert_eq!(c.report.distinct_count, 2);
        assert_eq!(c.report.ssp_status, Some(false));
        let m = candle_closed_form(CandleKind::Single(2)).unwrap();
        let c = Certificate::from_closed_form(&m, DEFAULT_VERIFY_TOL).unwrap();
        assert!(c.is_verified() && c.report.ssp_status == Some(true));
        let id = Certificate::new(
            cycle(4).unwrap(),
            CertMatrix::from_exact(&ExactMatrix::identity(4)),
            q(1),
            DEFAULT_VERIFY_TOL,
        )
        .unwrap();
        assert!(!id.report.pattern_ok && !id.is_verified());
        let t = triangle_certificate().unwrap();
        assert!(t.is_verified());
    }

    #[test]
    fn certificates_survive_json_and_relabelling() {
        let cf = named_closed_form("M2").unwrap();
        let c = Certificate::from_closed_form(&cf, DEFAULT_VERIFY_TOL).unwrap();
        let back: Certificate = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!(
            verify_certificate(&back, DEFAULT_VERIFY_TOL).unwrap(),
            c.report
        );
        let r = c
            .relabeled(&[7, 6, 5, 4, 3, 2, 1, 0], DEFAULT_VERIFY_TOL)
            .unwrap();
        assert!(r.is_verified());
        assert_eq!(r.report.ssp_status, c.report.ssp_status);
        let f = Certificate::new(
            cf.graph.clone(),
            CertMatrix::from_float(&FloatMatrix::new(cf.matrix.to_float()).unwrap()),
            cf.scale.clone(),
            DEFAULT_VERIFY_TOL,
        )
        .unwrap();
        assert!(f.is_verified() && f.report.exact_orthogonal.is_none());
        assert_eq!(f.report.ssp_nullity, c.report.ssp_nullity);
    }

    #[test]
    fn verified_matrices_are_involutions_after_scaling() {
        for kind in [
            CandleKind::Double(5),
            CandleKind::Single(4),
            CandleKind::Single(1),
        ] {
            let cf = candle_closed_form(kind).unwrap();
            let c = Certificate::from_closed_form(&cf, DEFAULT_VERIFY_TOL).unwrap();
            assert!(c.is_verified());
            let scaled = cf.matrix.to_float() / cf.scale.to_f64();
            for e in spectrum(&scaled, DEFAULT_CLUSTER_TOL).unwrap() {
                assert!((e.value.abs() - 1.0).abs() < 1e-12);
            }
        }
    }
}
