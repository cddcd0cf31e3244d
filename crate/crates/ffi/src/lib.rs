//! C ABI over `qtwo`.
//!
//! Graphs and certificates cross the boundary as opaque handles owned by
//! the caller and released with the matching `*_free` function. Every
//! fallible call returns a [`QtStatus`]; on failure a message is available
//! from [`qt_last_error_message`] on the same thread. Strings returned
//! through `char **` out-parameters are released with [`qt_string_free`].

use qtwo::census::{census_report, classify, CensusBudget};
use qtwo::certify::{verify_certificate, Certificate, DEFAULT_VERIFY_TOL};
use qtwo::graph::{graph6, iso::canonical_graph6};
use qtwo::orthsearch::{certify_q2, search_orthogonal, SearchParams};
use qtwo::qbounds::{q2_sieve, SieveStatus};
use qtwo::{Error, Graph};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidParameter = 4,
    NotConnected = 5,
    Numeric = 6,
    /// The search ran to budget without a verified matrix.
    NotFound = 7,
    BudgetExhausted = 8,
    Vacuous = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct QtGraph(Graph);

/// Opaque certificate handle.
pub struct QtCertificate(Certificate);

/// Mirrors the search configuration; obtain defaults from
/// [`qt_search_params_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct QtSearchParams {
    pub max_iterations: usize,
    pub restarts: usize,
    pub tolerance: f64,
    pub seed: u64,
    pub polish: bool,
    pub require_ssp: bool,
}

impl From<&QtSearchParams> for SearchParams {
    fn from(p: &QtSearchParams) -> Self {
        SearchParams {
            max_iterations: p.max_iterations,
            restarts: p.restarts,
            tolerance: p.tolerance,
            seed: p.seed,
            polish: p.polish,
            require_ssp: p.require_ssp,
        }
    }
}

impl From<&SearchParams> for QtSearchParams {
    fn from(p: &SearchParams) -> Self {
        QtSearchParams {
            max_iterations: p.max_iterations,
            restarts: p.restarts,
            tolerance: p.tolerance,
            seed: p.seed,
            polish: p.polish,
            require_ssp: p.require_ssp,
        }
    }
}

/// Outcome of the lower-bound sieve.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QtSieveResult {
    /// Some rule proves more than two distinct eigenvalues.
    pub excluded: bool,
    /// Largest lower bound among the rules that fired, 0 if none did.
    pub lower_bound: usize,
    /// Number of rules that fired.
    pub rules_fired: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QtStatus {
    match e {
        Error::Parse { .. } => QtStatus::Parse,
        Error::InvalidParameter(_) => QtStatus::InvalidParameter,
        Error::NotConnected => QtStatus::NotConnected,
        Error::Numeric(_) => QtStatus::Numeric,
        Error::PropertyVacuous(_) => QtStatus::Vacuous,
        Error::BudgetExhausted(_) => QtStatus::BudgetExhausted,
        Error::SearchFailed { .. } => QtStatus::NotFound,
    }
}

struct Fail(QtStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QtStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside qtwo");
            QtStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(QtStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QtStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s)
        .map_err(|_| Fail(QtStatus::InvalidUtf8, "interior NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(QtStatus::Numeric, e.to_string()))
}

unsafe fn params_arg(p: *const QtSearchParams) -> SearchParams {
    match p.as_ref() {
        Some(p) => p.into(),
        None => SearchParams::default(),
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn qt_search_params_default() -> QtSearchParams {
    (&SearchParams::default()).into()
}

/// # Safety
/// `s` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_from_graph6(
    s: *const c_char,
    out: *mut *mut QtGraph,
) -> QtStatus {
    guard(|| {
        let g = graph6::decode(str_arg(s, "graph6 string")?)?;
        put(out, QtGraph(g))
    })
}

/// # Safety
/// `name` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_named_graph(name: *const c_char, out: *mut *mut QtGraph) -> QtStatus {
    guard(|| {
        let g = qtwo::graph::named_graph(str_arg(name, "name")?)?;
        put(out, QtGraph(g))
    })
}

/// Double-ended candle on `2k` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_double_candle(k: usize, out: *mut *mut QtGraph) -> QtStatus {
    guard(|| put(out, QtGraph(qtwo::graph::double_candle(k)?)))
}

/// Single-ended candle on `2k + 1` vertices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_single_candle(k: usize, out: *mut *mut QtGraph) -> QtStatus {
    guard(|| put(out, QtGraph(qtwo::graph::single_candle(k)?)))
}

/// # Safety
/// `g` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_free(g: *mut QtGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn qt_graph_vertex_count(g: *const QtGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live handle or NULL (returns 0).
#[no_mangle]
pub unsafe extern "C" fn qt_graph_edge_count(g: *const QtGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_to_graph6(g: *const QtGraph, out: *mut *mut c_char) -> QtStatus {
    guard(|| put_string(out, graph6::encode(&ref_arg(g, "graph")?.0)))
}

/// graph6 of the canonical relabelling; equal strings mean isomorphic graphs.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_graph_canonical_graph6(
    g: *const QtGraph,
    out: *mut *mut c_char,
) -> QtStatus {
    guard(|| put_string(out, canonical_graph6(&ref_arg(g, "graph")?.0)))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_sieve(g: *const QtGraph, out: *mut QtSieveResult) -> QtStatus {
    guard(|| {
        let v = q2_sieve(&ref_arg(g, "graph")?.0)?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = QtSieveResult {
            excluded: v.status == SieveStatus::Excluded,
            lower_bound: v.reports.iter().map(|r| r.lower_bound).max().unwrap_or(0),
            rules_fired: v.reports.len(),
        };
        Ok(())
    })
}

/// Full sieve verdict, with witnesses, as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_sieve_json(g: *const QtGraph, out: *mut *mut c_char) -> QtStatus {
    guard(|| put_string(out, to_json(&q2_sieve(&ref_arg(g, "graph")?.0)?)?))
}

/// Closed-form certificate if one applies, else numerical search.
/// Returns `NotFound` when the search budget runs out. `params` may be NULL
/// for defaults.
///
/// # Safety
/// `g` must be a live handle; `params` NULL or valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_certify(
    g: *const QtGraph,
    params: *const QtSearchParams,
    out: *mut *mut QtCertificate,
) -> QtStatus {
    guard(|| {
        let c = certify_q2(&ref_arg(g, "graph")?.0, &params_arg(params))?;
        put(out, QtCertificate(c.certificate))
    })
}

/// Numerical search only. Returns `NotFound` on failure.
///
/// # Safety
/// `g` must be a live handle; `params` NULL or valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_search(
    g: *const QtGraph,
    params: *const QtSearchParams,
    out: *mut *mut QtCertificate,
) -> QtStatus {
    guard(|| {
        let outcome = search_orthogonal(&ref_arg(g, "graph")?.0, &params_arg(params))?;
        match outcome.certificate() {
            Some(c) => put(out, QtCertificate(c.clone())),
            None => Err(Fail(
                QtStatus::NotFound,
                format!("search failed after {} iterations", outcome.iterations()),
            )),
        }
    })
}

/// Classification record (sieve, closed forms, search) as JSON.
///
/// # Safety
/// `g` must be a live handle; `params` NULL or valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_classify_json(
    g: *const QtGraph,
    params: *const QtSearchParams,
    out: *mut *mut c_char,
) -> QtStatus {
    guard(|| {
        let rec = classify(
            &ref_arg(g, "graph")?.0,
            &CensusBudget::single(params_arg(params)),
        )?;
        put_string(out, to_json(&rec)?)
    })
}

/// Census report over all connected graphs on `n` vertices as JSON, with
/// the default two-pass search budget.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_census_json(n: usize, out: *mut *mut c_char) -> QtStatus {
    guard(|| put_string(out, to_json(&census_report(n, &CensusBudget::default())?)?))
}

/// Parse a certificate and re-run its verification; the stored report is
/// replaced by the fresh one.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_from_json(
    json: *const c_char,
    out: *mut *mut QtCertificate,
) -> QtStatus {
    guard(|| {
        let mut c: Certificate = serde_json::from_str(str_arg(json, "json")?)
            .map_err(|e| Fail(QtStatus::Parse, e.to_string()))?;
        c.report = verify_certificate(&c, DEFAULT_VERIFY_TOL)?;
        put(out, QtCertificate(c))
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_to_json(
    c: *const QtCertificate,
    out: *mut *mut c_char,
) -> QtStatus {
    guard(|| put_string(out, to_json(&ref_arg(c, "certificate")?.0)?))
}

/// # Safety
/// `c` must be a live handle or NULL (returns false).
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_is_verified(c: *const QtCertificate) -> bool {
    c.as_ref().is_some_and(|c| c.0.is_verified())
}

/// Number of distinct eigenvalues, 0 for NULL.
///
/// # Safety
/// `c` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_distinct_count(c: *const QtCertificate) -> usize {
    c.as_ref().map_or(0, |c| c.0.report.distinct_count)
}

/// 1 if the matrix has the Strong Spectral Property, 0 if not, -1 if unknown or NULL.
///
/// # Safety
/// `c` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_ssp(c: *const QtCertificate) -> i32 {
    match c.as_ref().and_then(|c| c.0.report.ssp_status) {
        Some(true) => 1,
        Some(false) => 0,
        None => -1,
    }
}

/// # Safety
/// `c` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qt_certificate_free(c: *mut QtCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn qt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
