//! C ABI over `hyperdecomp`.
//!
//! Graphs and certificates are opaque heap handles released with their
//! matching `_free` function. Strings returned through out-pointers are owned
//! by the caller and must be released with [`hd_string_free`]. Every fallible
//! call returns an [`HdStatus`]; on failure [`hd_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperdecomp::bounds::bound_report;
use hyperdecomp::decomp::{
    epsilon_threshold, expand_certificate, solve_decomposition, verify_certificate, DecompositionCertificate,
    SolveStatus,
};
use hyperdecomp::hypergraph::TGraph;
use hyperdecomp::johnson::JohnsonParams;
use hyperdecomp::rational::to_fraction_string;
use hyperdecomp::Error;
use num_bigint::BigInt;
use num_rational::BigRational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdStatus {
    Ok = 0,
    /// The computation ran but its answer is negative.
    Failed = 1,
    InvalidArgument = 2,
    SizeCap = 3,
    NullPointer = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdOutcome {
    Positive = 0,
    PositiveWithZeros = 1,
    HasNegative = 2,
    Singular = 3,
    NoCover = 4,
}

impl From<SolveStatus> for HdOutcome {
    fn from(s: SolveStatus) -> Self {
        match s {
            SolveStatus::Positive => HdOutcome::Positive,
            SolveStatus::PositiveWithZeros => HdOutcome::PositiveWithZeros,
            SolveStatus::HasNegative => HdOutcome::HasNegative,
            SolveStatus::Singular => HdOutcome::Singular,
            SolveStatus::NoCover => HdOutcome::NoCover,
        }
    }
}

/// Opaque t-graph handle.
pub struct HdGraph(TGraph);

/// Opaque decomposition certificate handle.
pub struct HdCertificate(DecompositionCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(HdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SizeCap { .. } => HdStatus::SizeCap,
            Error::Internal(_) => HdStatus::Internal,
            _ => HdStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(HdStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<HdStatus, Fail>) -> HdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == HdStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HdStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HdStatus::InvalidArgument, format!("{what} is not valid UTF-8")))
}

unsafe fn graph<'a>(g: *const HdGraph) -> Result<&'a TGraph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<HdStatus, Fail> {
    let c = CString::new(s).map_err(|_| Fail(HdStatus::Internal, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(HdStatus::Ok)
}

unsafe fn put_graph(out: *mut *mut HdGraph, g: TGraph) -> Result<HdStatus, Fail> {
    *out = Box::into_raw(Box::new(HdGraph(g)));
    Ok(HdStatus::Ok)
}

/// Message for the most recent failure on this thread. Empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn hd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a graph in `.tg` text form.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_from_tg(text: *const c_char, out: *mut *mut HdGraph) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = TGraph::parse_tg(read_str(text, "text")?)?;
        put_graph(out, g)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_complete(t: usize, v: usize, out: *mut *mut HdGraph) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put_graph(out, TGraph::complete(v, t)?)
    })
}

/// Seeded random graph with every codegree at least `(1 - eps_num/eps_den)(v - t + 1)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_generate(
    v: usize,
    t: usize,
    eps_num: u64,
    eps_den: u64,
    seed: u64,
    out: *mut *mut HdGraph,
) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if eps_den == 0 {
            return Err(Fail(HdStatus::InvalidArgument, "zero denominator".into()));
        }
        let eps = BigRational::new(BigInt::from(eps_num), BigInt::from(eps_den));
        put_graph(out, TGraph::gen_dense_random(v, t, &eps, seed)?)
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_free(g: *mut HdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Returns 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_t(g: *const HdGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.t())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_v(g: *const HdGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.v())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_edge_count(g: *const HdGraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_to_tg(g: *const HdGraph, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let g = graph(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, g.to_tg())
    })
}

/// Density parameter epsilon as a `p/q` string.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_graph_density_epsilon(g: *const HdGraph, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let g = graph(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, to_fraction_string(&g.density_epsilon().epsilon))
    })
}

/// Solve for a clique decomposition. `outcome` always receives the solver
/// status. On a positive outcome `cert` receives a verified certificate and the
/// call returns `Ok`; otherwise `*cert` is set to null and the call returns
/// `Failed`.
///
/// # Safety
/// `g` must be a live handle; `outcome` and `cert` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hd_decompose(
    g: *const HdGraph,
    k: usize,
    outcome: *mut HdOutcome,
    cert: *mut *mut HdCertificate,
) -> HdStatus {
    guard(|| {
        let g = graph(g)?;
        if outcome.is_null() || cert.is_null() {
            return Err(null("out"));
        }
        *cert = ptr::null_mut();
        let sol = solve_decomposition(g, k)?;
        *outcome = sol.status.into();
        let Some(x) = sol.x.as_deref().filter(|_| sol.status.is_success()) else {
            return Err(Fail(
                HdStatus::Failed,
                format!("no positive decomposition: {}", sol.status),
            ));
        };
        let c = expand_certificate(g, k, x)?;
        if let hyperdecomp::decomp::Verification::Invalid(why) = verify_certificate(g, &c) {
            return Err(Fail(HdStatus::Internal, format!("solution failed verification: {why}")));
        }
        *cert = Box::into_raw(Box::new(HdCertificate(c)));
        Ok(HdStatus::Ok)
    })
}

/// # Safety
/// `c` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn hd_certificate_free(c: *mut HdCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of weighted cliques; 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live certificate handle.
#[no_mangle]
pub unsafe extern "C" fn hd_certificate_len(c: *const HdCertificate) -> usize {
    c.as_ref().map_or(0, |h| h.0.items.len())
}

/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_certificate_to_json(c: *const HdCertificate, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, c.0.to_json())
    })
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_certificate_from_json(text: *const c_char, out: *mut *mut HdCertificate) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = DecompositionCertificate::from_json(read_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(HdCertificate(c)));
        Ok(HdStatus::Ok)
    })
}

/// Returns `Ok` for a valid certificate and `Failed` (with the reason in
/// [`hd_last_error`]) otherwise.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn hd_verify(g: *const HdGraph, c: *const HdCertificate) -> HdStatus {
    guard(|| {
        let g = graph(g)?;
        let c = c.as_ref().ok_or_else(|| null("certificate"))?;
        match verify_certificate(g, &c.0) {
            hyperdecomp::decomp::Verification::Valid => Ok(HdStatus::Ok),
            hyperdecomp::decomp::Verification::Invalid(why) => Err(Fail(HdStatus::Failed, why.to_string())),
        }
    })
}

/// Johnson-scheme spectrum for `(t, k, v)` as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_spectrum_json(t: usize, k: usize, v: usize, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = JohnsonParams::new(t, k, v)?;
        put_string(out, p.spectrum().to_json().to_string())
    })
}

/// Density threshold for `(t, k)` as a `p/q` string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_epsilon_threshold(t: usize, k: usize, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, to_fraction_string(&epsilon_threshold(t, k)?))
    })
}

/// Perturbation bound report as JSON.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hd_bound_report_json(g: *const HdGraph, k: usize, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let g = graph(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, bound_report(g, k)?.to_json().to_string())
    })
}
