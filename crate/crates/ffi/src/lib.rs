//! C interface to entcount.
//!
//! Graphs and matrices live behind opaque handles created by the
//! `ec_*_parse` and `ec_graph_named` functions and released with the
//! matching `_free`. Counts come back as NUL-terminated decimal strings
//! owned by the library; release them with `ec_string_free`. Every call
//! returns an [`EcStatus`]; on failure `ec_last_error` describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use entcount::count;
use entcount::graph::{parse_graph, parse_matrix, parse_named, Graph, ZeroOneMatrix};
use entcount::verify::{self, CheckSpec, Format, Params};
use entcount::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EcStatus {
    EcOk = 0,
    EcNullPointer = 1,
    EcInvalidUtf8 = 2,
    EcInvalidInput = 3,
    EcCapExceeded = 4,
    EcParse = 5,
    EcIo = 6,
    EcInfeasible = 7,
    EcUnknownCheck = 8,
    EcPanic = 9,
}

/// A graph handle.
pub struct EcGraph(Graph);

/// A square 0-1 matrix handle.
pub struct EcMatrix(ZeroOneMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> EcStatus {
    match e {
        Error::InvalidInput(_) => EcStatus::EcInvalidInput,
        Error::CapExceeded { .. } => EcStatus::EcCapExceeded,
        Error::Parse { .. } => EcStatus::EcParse,
        Error::Io { .. } => EcStatus::EcIo,
        Error::Infeasible(_) => EcStatus::EcInfeasible,
        Error::UnknownCheck(_) => EcStatus::EcUnknownCheck,
    }
}

struct Fail(EcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EcStatus::EcOk
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EcStatus::EcPanic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(EcStatus::EcNullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(EcStatus::EcInvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(EcStatus::EcNullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EcStatus::EcNullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(EcStatus::EcInvalidInput, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Message for the last failed call on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ec_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in the text format.
///
/// # Safety
/// `src` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_graph_parse(src: *const c_char, out: *mut *mut EcGraph) -> EcStatus {
    guard(|| {
        let g = parse_graph(text(src)?)?;
        put(out, Box::into_raw(Box::new(EcGraph(g))))
    })
}

/// Builds a named graph such as `k_dd:3`, `knd:12,3`, `cycle:5` or `h_wr`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_graph_named(spec: *const c_char, out: *mut *mut EcGraph) -> EcStatus {
    guard(|| {
        let g = parse_named(text(spec)?)?;
        put(out, Box::into_raw(Box::new(EcGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ec_graph_free(g: *mut EcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_graph_order(g: *const EcGraph, out: *mut usize) -> EcStatus {
    guard(|| put(out, deref(g)?.0.n()))
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_graph_edge_count(g: *const EcGraph, out: *mut usize) -> EcStatus {
    guard(|| put(out, deref(g)?.0.edge_count()))
}

/// Parses a matrix in the text format (`matrix n` then `n` rows of 0/1).
///
/// # Safety
/// `src` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_matrix_parse(src: *const c_char, out: *mut *mut EcMatrix) -> EcStatus {
    guard(|| {
        let m = parse_matrix(text(src)?)?;
        put(out, Box::into_raw(Box::new(EcMatrix(m))))
    })
}

/// # Safety
/// `m` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn ec_matrix_free(m: *mut EcMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Permanent, as a decimal string.
///
/// # Safety
/// `m` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_permanent(m: *const EcMatrix, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::permanent(&deref(m)?.0)?.to_string()))
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_perfect_matchings(g: *const EcGraph, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::perfect_matchings(&deref(g)?.0)?.to_string()))
}

/// Matchings with exactly `t` edges.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_matchings(g: *const EcGraph, t: usize, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::matchings_of_size(&deref(g)?.0, t)?.to_string()))
}

/// All independent sets, the empty set included.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_independent_sets(g: *const EcGraph, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::independent_sets_total(&deref(g)?.0)?.to_string()))
}

/// Proper colourings with `q` colours.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_colorings(g: *const EcGraph, q: usize, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::colorings(&deref(g)?.0, q)?.to_string()))
}

/// Homomorphisms from `g` to `h`.
///
/// # Safety
/// `g` and `h` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_hom(g: *const EcGraph, h: *const EcGraph, out: *mut *mut c_char) -> EcStatus {
    guard(|| put_string(out, count::hom_count(&deref(g)?.0, &deref(h)?.0)?.to_string()))
}

/// Runs a registered check. `params_json` may be null for defaults. The
/// JSON report list is written to `report_out` and `pass_out` gets 1 or 0.
///
/// # Safety
/// String arguments must be valid C strings (or null where allowed) and
/// the output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ec_check_run(
    name: *const c_char,
    params_json: *const c_char,
    seed: u64,
    report_out: *mut *mut c_char,
    pass_out: *mut i32,
) -> EcStatus {
    guard(|| {
        let params: Params = if params_json.is_null() {
            Params::default()
        } else {
            serde_json::from_str(text(params_json)?).map_err(|e| Fail(EcStatus::EcParse, e.to_string()))?
        };
        let spec = CheckSpec::new(text(name)?).with_params(params).with_seed(seed);
        let report = verify::run_check(&spec)?;
        let pass = report.pass as i32;
        put_string(report_out, verify::render_reports(&[report], Format::Json))?;
        put(pass_out, pass)
    })
}
