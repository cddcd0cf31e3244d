//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use qtwo::census::{
    census_report, enumerate_connected, ssp_closure, CensusBudget, CensusReport, Provenance,
    Verdict,
};
use qtwo::certify::{
    candle_matrix, named_matrix, named_matrix_exact, pattern_match, spectrum, ssp_check,
    ssp_check_exact, verify_orthogonality_exact, DEFAULT_CLUSTER_TOL, DEFAULT_SSP_TOL,
    DEFAULT_VERIFY_TOL,
};
use qtwo::comborth::{
    condense_to, p2_cycle_property, pattern_allows_comb_orth, quadrangular_check,
};
use qtwo::exact::QSqrt2;
use qtwo::graph::iso::{are_isomorphic, canonical_graph6, find_spanning_embedding};
use qtwo::graph::{
    self, complete, complete_bipartite, cube, cycle, double_candle, named_graph, single_candle,
};
use qtwo::matrix::FloatMatrix;
use qtwo::orthsearch::{search_orthogonal, SearchOutcome, SearchParams};
use qtwo::qbounds::{edge_threshold, q2_sieve, CandleKind, Rule};
use qtwo::{Error, Graph};
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let el = t.elapsed();
    if el > limit {
        return Err(format!("{what} took {el:?}, limit {limit:?}"));
    }
    Ok(())
}

fn multiplicities_at(
    a: &nalgebra::DMatrix<f64>,
    expected: &[(f64, usize)],
    rel: f64,
) -> Result<(), String> {
    let eig = spectrum(a, DEFAULT_CLUSTER_TOL).map_err(err)?;
    let got: Vec<(f64, usize)> = eig.iter().map(|e| (e.value, e.multiplicity)).collect();
    ensure!(
        got.len() == expected.len(),
        "spectrum {got:?}, expected {expected:?}"
    );
    for (&(v, m), &(ev, em)) in got.iter().zip(expected) {
        ensure!(
            m == em && (v - ev).abs() <= rel * ev.abs(),
            "spectrum {got:?}, expected {expected:?}"
        );
    }
    Ok(())
}

fn candles() -> Outcome {
    let two = QSqrt2::int(2);
    let mut slowest = Duration::ZERO;
    for k in 2..=12 {
        for kind in [CandleKind::Double(k), CandleKind::Single(k)] {
            let t = Instant::now();
            let x = candle_matrix(kind).map_err(err)?;
            let g = kind.graph().map_err(err)?;
            ensure!(verify_orthogonality_exact(&x, &two), "{kind:?}: X^2 != 4I");
            ensure!(
                pattern_match(&x, &g).map_err(err)?,
                "{kind:?}: pattern mismatch"
            );
            let (neg, pos) = match kind {
                CandleKind::Double(k) => (k, k),
                CandleKind::Single(k) => (k, k + 1),
            };
            multiplicities_at(&x.to_float(), &[(-2.0, neg), (2.0, pos)], 1e-9)
                .map_err(|e| format!("{kind:?}: {e}"))?;
            within(t, Duration::from_secs(1), &format!("{kind:?}"))?;
            slowest = slowest.max(t.elapsed());
        }
    }
    Ok(format!("22 instances, slowest {slowest:?}"))
}

fn named_spectra() -> Outcome {
    let r2 = 2.0 * 2f64.sqrt();
    let table: [(&str, Vec<(f64, usize)>); 3] = [
        ("M1", vec![(-3.0, 3), (3.0, 3)]),
        ("M2", vec![(-r2, 4), (r2, 4)]),
        ("M", vec![(-2.0, 2), (2.0, 3)]),
    ];
    for (name, expected) in &table {
        let m = named_matrix(name).map_err(err)?;
        multiplicities_at(m.inner(), expected, 1e-9).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("M1, M2, M within 1e-9 relative".into())
}

fn ssp_facts() -> Outcome {
    let m = named_matrix_exact("M").map_err(err)?;
    let g3 = candle_matrix(CandleKind::Double(3)).map_err(err)?;
    let mf = FloatMatrix::new(m.to_float()).map_err(err)?;
    let g3f = FloatMatrix::new(g3.to_float()).map_err(err)?;
    ensure!(
        ssp_check(&mf, DEFAULT_SSP_TOL).has_ssp,
        "M: float SSP false"
    );
    ensure!(
        !ssp_check(&g3f, DEFAULT_SSP_TOL).has_ssp,
        "G3 candle: float SSP true"
    );
    let me = ssp_check_exact(&m);
    let ge = ssp_check_exact(&g3);
    ensure!(me.has_ssp && me.nullity == 0, "M exact: {me:?}");
    ensure!(!ge.has_ssp && ge.nullity >= 1, "G3 exact: {ge:?}");
    Ok(format!("exact nullity M={} G3={}", me.nullity, ge.nullity))
}

fn n6_counts() -> Outcome {
    let t = Instant::now();
    let all = enumerate_connected(6).map_err(err)?;
    let low = all.iter().filter(|g| g.edge_count() <= 8).count();
    let high = all.iter().filter(|g| g.edge_count() >= 9).count();
    ensure!(
        all.len() == 112 && low == 60 && high == 52,
        "counts {} / {low} / {high}",
        all.len()
    );
    within(t, Duration::from_secs(10), "enumeration")?;
    Ok(format!("112 = 60 + 52 in {:?}", t.elapsed()))
}

fn canon_set(gs: &[Graph]) -> BTreeSet<String> {
    gs.iter().map(canonical_graph6).collect()
}

fn extremal(reports: &BTreeMap<usize, CensusReport>, n8_time: Duration) -> Outcome {
    let expected: [(usize, Vec<Graph>); 6] = [
        (3, vec![complete(3).map_err(err)?]),
        (4, vec![cycle(4).map_err(err)?]),
        (5, vec![single_candle(2).map_err(err)?]),
        (6, vec![double_candle(3).map_err(err)?]),
        (7, vec![single_candle(3).map_err(err)?]),
        (8, vec![cube(), double_candle(4).map_err(err)?]),
    ];
    for (n, want) in &expected {
        let rep = &reports[n];
        let bound = edge_threshold(*n);
        ensure!(
            rep.contradictions.is_empty(),
            "n={n}: contradictions {:?}",
            rep.contradictions
        );
        let got: BTreeSet<String> = rep.extremal_certified.iter().cloned().collect();
        ensure!(got == canon_set(want), "n={n}: extremal {got:?}");
        for r in rep.records.iter().filter(|r| r.edges <= bound) {
            ensure!(
                !r.is_undetermined(),
                "n={n}: {} undetermined at {} edges",
                r.graph6,
                r.edges
            );
            if !got.contains(&r.graph6) {
                ensure!(
                    r.is_excluded(),
                    "n={n}: {} not excluded at {} edges",
                    r.graph6,
                    r.edges
                );
            }
        }
    }
    ensure!(
        n8_time < Duration::from_secs(30 * 60),
        "n=8 census took {n8_time:?}"
    );
    Ok(format!(
        "n=3..8 extremal sets match, n=8 census {:.1}s",
        n8_time.as_secs_f64()
    ))
}

fn n5_supergraphs(rep: &CensusReport) -> Outcome {
    let g2 = single_candle(2).map_err(err)?;
    ensure!(rep.total == 21, "n=5 has {} connected graphs", rep.total);
    let mut undetermined = 0;
    for r in &rep.records {
        let g = r.graph().map_err(err)?;
        let sup = find_spanning_embedding(&g2, &g).is_some();
        if sup {
            ensure!(
                r.is_certified(),
                "{} contains G2' but is not certified",
                r.graph6
            );
            if !are_isomorphic(&g, &g2) {
                ensure!(
                    r.provenance == Provenance::SspClosure,
                    "{} certified via {:?}, not the closure of M",
                    r.graph6,
                    r.provenance
                );
            }
        } else {
            ensure!(
                !r.is_certified(),
                "{} certified without containing G2'",
                r.graph6
            );
            undetermined += r.is_undetermined() as usize;
        }
    }
    ensure!(
        undetermined == 0,
        "{undetermined} non-supergraphs undetermined"
    );
    Ok(format!(
        "{} certified supergraphs, 0 undetermined",
        rep.certified
    ))
}

fn ssp_search(name: &str) -> Result<qtwo::certify::Certificate, String> {
    let p = SearchParams {
        require_ssp: true,
        ..SearchParams::default()
    };
    let g = named_graph(name).map_err(err)?;
    match search_orthogonal(&g, &p).map_err(err)? {
        SearchOutcome::Found { certificate, .. } => Ok(certificate),
        SearchOutcome::Failed { best_residual, .. } => Err(format!(
            "{name}: no SSP certificate, best {best_residual:e}"
        )),
    }
}

fn n6_deep_dive(rep: &CensusReport) -> Outcome {
    let high: BTreeSet<String> = rep
        .records
        .iter()
        .filter(|r| r.edges >= 9 && r.is_certified())
        .map(|r| r.graph6.clone())
        .collect();
    ensure!(
        high.len() == 23,
        "{} certified graphs with >= 9 edges",
        high.len()
    );

    let seeds = ["S1", "S2", "S3"]
        .iter()
        .map(|s| ssp_search(s))
        .collect::<Result<Vec<_>, _>>()?;
    let closure: BTreeSet<String> = ssp_closure(&seeds, 6)
        .map_err(err)?
        .into_iter()
        .map(|m| canonical_graph6(&graph::graph6::decode(&m.graph6).unwrap()))
        .collect();
    ensure!(
        closure.is_subset(&high),
        "closure reaches uncertified graphs"
    );
    ensure!(
        closure.len() == 20,
        "closure covers {} graphs",
        closure.len()
    );

    let rest: BTreeSet<String> = high.difference(&closure).cloned().collect();
    let mut named = BTreeSet::new();
    for name in ["G3_1", "G3_3", "G3_4"] {
        let g = named_graph(name).map_err(err)?;
        named.insert(canonical_graph6(&g));
        let out = search_orthogonal(&g, &SearchParams::default()).map_err(err)?;
        ensure!(
            out.certificate().is_some_and(|c| c.is_verified()),
            "{name}: direct search failed"
        );
    }
    ensure!(rest == named, "remaining three are {rest:?}");

    let g32 = named_graph("G3_2").map_err(err)?;
    let sieve = q2_sieve(&g32).map_err(err)?;
    ensure!(
        sieve
            .reports
            .iter()
            .any(|b| b.rule == Rule::UniquePath && b.excludes_q2()),
        "G3_2 not excluded by the unique-path rule"
    );
    let rec = rep.record(&g32).ok_or("G3_2 missing from census")?;
    match &rec.verdict {
        Verdict::Excluded { reports } if reports.iter().any(|b| b.rule == Rule::UniquePath) => {}
        v => return Err(format!("G3_2 census verdict {v:?}")),
    }
    Ok("23 certified = 20 closure + G3_1, G3_3, G3_4; G3_2 excluded".into())
}

fn search_suite() -> Outcome {
    let p = SearchParams::default();
    let mut slowest = Duration::ZERO;
    let yes = [
        "Q3",
        "S1",
        "S2",
        "S3",
        "G3_1",
        "G3_3",
        "G3_4",
        "G3_plus_edge",
        "G4_plus_edge",
    ];
    let no: [(&str, Graph); 2] = [
        ("K23", complete_bipartite(2, 3).map_err(err)?),
        ("G3_2", named_graph("G3_2").map_err(err)?),
    ];
    for name in yes {
        let g = named_graph(name).map_err(err)?;
        let t = Instant::now();
        let out = search_orthogonal(&g, &p).map_err(err)?;
        within(t, Duration::from_secs(60), name)?;
        slowest = slowest.max(t.elapsed());
        let c = out.certificate().ok_or(format!("{name}: search failed"))?;
        ensure!(c.is_verified(), "{name}: certificate not verified");
        ensure!(
            c.report.orthogonality_residual <= 1e-9,
            "{name}: residual {:e}",
            c.report.orthogonality_residual
        );
    }
    for (name, g) in no {
        let t = Instant::now();
        let out = search_orthogonal(&g, &p).map_err(err)?;
        within(t, Duration::from_secs(60), name)?;
        slowest = slowest.max(t.elapsed());
        ensure!(
            out.certificate().is_none(),
            "{name}: search unexpectedly succeeded"
        );
    }
    Ok(format!("9 found, 2 failed, slowest {slowest:?}"))
}

fn vacuous_ok(r: qtwo::Result<bool>) -> Result<Option<bool>, String> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::PropertyVacuous(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn comb_orth_suite(reports: &BTreeMap<usize, CensusReport>) -> Outcome {
    let mut checked = 0;
    for n in 1..=7 {
        for g in enumerate_connected(n).map_err(err)? {
            let key = canonical_graph6(&g);
            let comb = pattern_allows_comb_orth(&g);
            if let Some(p24) = vacuous_ok(p2_cycle_property(&g, true))? {
                ensure!(comb == p24, "{key}: comb-orth {comb} vs p(2,<=4) {p24}");
            }
            if let Some(p4) = vacuous_ok(p2_cycle_property(&g, false))? {
                ensure!(
                    quadrangular_check(&g) == p4,
                    "{key}: quadrangular vs p(2,4)"
                );
            }
            checked += 1;
        }
    }
    for (n, rep) in reports {
        for r in rep.records.iter().filter(|r| r.is_certified()) {
            let g = r.graph().map_err(err)?;
            ensure!(
                pattern_allows_comb_orth(&g),
                "{}: certified but not comb-orth",
                r.graph6
            );
            let lower = 1.5 * *n as f64 - 2.0;
            let e = r.edges as f64;
            ensure!(e >= lower, "{}: {} edges below 1.5n-2", r.graph6, r.edges);
            if *n > 4 {
                ensure!(e > lower, "{}: meets 1.5n-2", r.graph6);
            }
        }
    }
    let c4 = cycle(4).map_err(err)?;
    for k in 2..=8 {
        let g = double_candle(k).map_err(err)?;
        let trace = condense_to(&g, &c4, 1_000_000)
            .map_err(err)?
            .ok_or(format!("G_{k} does not condense to C4"))?;
        ensure!(trace.replay(), "G_{k}: condensation trace does not replay");
    }
    ensure!(
        condense_to(&cube(), &c4, 1_000_000).map_err(err)?.is_none(),
        "Q3 condenses to C4"
    );
    Ok(format!(
        "{checked} graphs on n<=7, candles condense, Q3 does not"
    ))
}

fn replay_all(reports: &BTreeMap<usize, CensusReport>) -> Outcome {
    let mut replayed = 0;
    for rep in reports.values() {
        for r in rep.records.iter().filter(|r| !r.is_undetermined()) {
            let json = serde_json::to_string(r).map_err(|e| e.to_string())?;
            let back: qtwo::census::ClassificationRecord =
                serde_json::from_str(&json).map_err(|e| e.to_string())?;
            ensure!(
                back.replay(DEFAULT_VERIFY_TOL).map_err(err)?,
                "{} fails replay",
                r.graph6
            );
            replayed += 1;
        }
    }
    Ok(format!("{replayed}/{replayed} records replay from JSON"))
}

fn main() {
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "exact candle certificates", candles()),
        (2, "named matrix spectra", named_spectra()),
        (3, "SSP checks", ssp_facts()),
        (4, "n=6 counts", n6_counts()),
    ];

    let budget = CensusBudget::default();
    let mut reports = BTreeMap::new();
    let mut n8_time = Duration::MAX;
    let mut census_err = None;
    for n in 1..=8 {
        let t = Instant::now();
        match census_report(n, &budget) {
            Ok(rep) => {
                if n == 8 {
                    n8_time = t.elapsed();
                }
                reports.insert(n, rep);
            }
            Err(e) => {
                census_err = Some(format!("census n={n}: {e}"));
                break;
            }
        }
    }
    let need = |f: &dyn Fn(&BTreeMap<usize, CensusReport>) -> Outcome| match &census_err {
        Some(e) => Err(e.clone()),
        None => f(&reports),
    };
    results.push((
        5,
        "extremal characterization",
        need(&|r| extremal(r, n8_time)),
    ));
    results.push((
        6,
        "n=5 supergraph characterisation",
        need(&|r| n5_supergraphs(&r[&5])),
    ));
    results.push((7, "n=6 deep dive", need(&|r| n6_deep_dive(&r[&6]))));
    results.push((8, "search success suite", search_suite()));
    results.push((9, "comb-orth property suite", need(&comb_orth_suite)));
    results.push((10, "witness replay", need(&replay_all)));

    let mut failed = 0;
    for (i, name, res) in &results {
        match res {
            Ok(detail) => println!("criterion {i:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {i:>2} FAIL  {name}: {detail}");
            }
        }
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
