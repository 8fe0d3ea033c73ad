//! C ABI over `syslab`.
//!
//! Every fallible call returns a [`SyslabStatus`]; on failure the message is
//! kept per thread and read back with [`syslab_last_error`]. Handles are
//! opaque and must be released with their `_free` function. Vertex ids are
//! `uint32_t` indices into the complex.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use syslab::complex::{check_local_6_large, distance, FlagComplex, Geodesic, Simplex, VertexId};
use syslab::directed::directed_geodesic;
use syslab::eplane::{window, AxialCoord};
use syslab::euclid::{euclidean_geodesic, goodness_constant, select_vertex_geodesic};
use syslab::lab::run::{run_file, RunOptions};
use syslab::Error;

/// Result codes. Values 1 to 24 match the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SyslabStatus {
    Ok = 0,
    Unreachable = 1,
    BoundaryUnsafe = 2,
    NotASimplex = 3,
    EmptyLayer = 4,
    ConstructionFailed = 5,
    ConditionViolated = 6,
    MalformedProfile = 7,
    NoRealizingChain = 8,
    PreconditionViolated = 9,
    NotFlat = 10,
    Timeout = 11,
    NoFilling = 12,
    NotASimplexOfDisk = 13,
    DegenerateDomain = 14,
    OutsideDomain = 15,
    NoCrossing = 16,
    NoSelection = 17,
    Inconclusive = 18,
    NotTranslationLike = 19,
    NoStableSegment = 20,
    NotPlaneBacked = 21,
    Parse = 22,
    Io = 23,
    TaskFailed = 24,
    /// A required pointer argument was null.
    NullArgument = 100,
    /// A vertex id is out of range for the complex.
    BadVertex = 101,
    /// The caller's buffer is too small; the needed length was written.
    BufferTooSmall = 102,
    InvalidUtf8 = 103,
    /// The library panicked; this is a bug.
    Internal = 104,
}

impl SyslabStatus {
    fn from_error(e: &Error) -> Self {
        use SyslabStatus::*;
        const BY_CODE: [SyslabStatus; 24] = [
            Unreachable,
            BoundaryUnsafe,
            NotASimplex,
            EmptyLayer,
            ConstructionFailed,
            ConditionViolated,
            MalformedProfile,
            NoRealizingChain,
            PreconditionViolated,
            NotFlat,
            Timeout,
            NoFilling,
            NotASimplexOfDisk,
            DegenerateDomain,
            OutsideDomain,
            NoCrossing,
            NoSelection,
            Inconclusive,
            NotTranslationLike,
            NoStableSegment,
            NotPlaneBacked,
            Parse,
            Io,
            TaskFailed,
        ];
        BY_CODE.get((e.code() - 1) as usize).copied().unwrap_or(Internal)
    }
}

/// A flag complex.
pub struct SyslabComplex(FlagComplex);

/// A sequence of simplices, as produced by the geodesic constructions.
pub struct SyslabSimplices(Vec<Simplex>);

/// The outcome of a scenario run.
pub struct SyslabReport {
    json: CString,
    passed: bool,
    exit_code: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(SyslabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(SyslabStatus::from_error(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SyslabStatus::NullArgument, format!("{what} is null"))
}

/// Runs `f`, records any failure and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SyslabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SyslabStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            SyslabStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(SyslabStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn complex<'a>(c: *const SyslabComplex) -> Result<&'a FlagComplex, Fail> {
    c.as_ref().map(|c| &c.0).ok_or_else(|| null("complex"))
}

fn vertex(c: &FlagComplex, v: u32) -> Result<VertexId, Fail> {
    let v = VertexId(v);
    if c.contains(v) {
        Ok(v)
    } else {
        Err(Fail(SyslabStatus::BadVertex, format!("vertex {} out of range (complex has {})", v.0, c.len())))
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Copies `src` into `buf`, writing the full length to `len` either way.
unsafe fn fill(src: &[u32], buf: *mut u32, cap: usize, len: *mut usize) -> Result<(), Fail> {
    put(len, src.len())?;
    if src.len() > cap {
        return Err(Fail(SyslabStatus::BufferTooSmall, format!("need {} entries, have {cap}", src.len())));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null("buffer"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

fn ids(vs: &[VertexId]) -> Vec<u32> {
    vs.iter().map(|v| v.0).collect()
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn syslab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn syslab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a complex in the `flagcomplex v1` text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_parse(text: *const c_char, out: *mut *mut SyslabComplex) -> SyslabStatus {
    guard(|| {
        let c = FlagComplex::parse(str_arg(text, "text")?)?;
        put(out, Box::into_raw(Box::new(SyslabComplex(c))))
    })
}

/// Reads and parses a complex file.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_load(path: *const c_char, out: *mut *mut SyslabComplex) -> SyslabStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let c = FlagComplex::parse(&text)?;
        put(out, Box::into_raw(Box::new(SyslabComplex(c))))
    })
}

/// The hexagonal window of the triangular lattice around axial `(a, b)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_window(a: i64, b: i64, radius: u32, out: *mut *mut SyslabComplex) -> SyslabStatus {
    guard(|| put(out, Box::into_raw(Box::new(SyslabComplex(window(AxialCoord::new(a, b), radius))))))
}

/// # Safety
/// `c` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_free(c: *mut SyslabComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of vertices, or 0 for null.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_vertex_count(c: *const SyslabComplex) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// The vertex at axial `(a, b)` of a plane-backed complex.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_vertex_at(c: *const SyslabComplex, a: i64, b: i64, out: *mut u32) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        if !c.is_plane_backed() {
            return Err(Error::NotPlaneBacked.into());
        }
        let v = c
            .vertex_at(AxialCoord::new(a, b))
            .ok_or_else(|| Fail(SyslabStatus::BadVertex, format!("no vertex at ({a}, {b})")))?;
        put(out, v.0)
    })
}

/// Axial coordinates of a vertex of a plane-backed complex.
///
/// # Safety
/// `c` must be a live handle; `a` and `b` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn syslab_complex_coord(c: *const SyslabComplex, v: u32, a: *mut i64, b: *mut i64) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        let p = c.coord(vertex(c, v)?).ok_or(Error::NotPlaneBacked)?;
        put(a, p.a)?;
        put(b, p.b)
    })
}

/// Combinatorial distance, searching at most `budget` steps.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_distance(c: *const SyslabComplex, x: u32, y: u32, budget: u32, out: *mut u32) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        put(out, distance(c, vertex(c, x)?, vertex(c, y)?, budget)?)
    })
}

/// Checks that every vertex link is 6-large. On failure `witness` receives
/// the vertex followed by the short induced cycle of its link, and `len` its
/// length; `witness` may be null when `cap` is 0.
///
/// # Safety
/// `c` must be a live handle; `passed` and `len` valid pointers; `witness`
/// valid for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn syslab_check_local_6_large(
    c: *const SyslabComplex,
    passed: *mut bool,
    witness: *mut u32,
    cap: usize,
    len: *mut usize,
) -> SyslabStatus {
    guard(|| {
        let r = check_local_6_large(complex(c)?);
        put(passed, r.passed)?;
        let w: Vec<u32> = r.witness.map(|(v, cyc)| std::iter::once(v.0).chain(cyc.iter().map(|u| u.0)).collect()).unwrap_or_default();
        fill(&w, witness, cap, len)
    })
}

/// The directed geodesic from `x` to `y`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_directed_geodesic(c: *const SyslabComplex, x: u32, y: u32, out: *mut *mut SyslabSimplices) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        let d = directed_geodesic(c, vertex(c, x)?, vertex(c, y)?)?;
        put(out, Box::into_raw(Box::new(SyslabSimplices(d.simplices))))
    })
}

/// The Euclidean geodesic between `x` and `y`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_euclidean_geodesic(c: *const SyslabComplex, x: u32, y: u32, out: *mut *mut SyslabSimplices) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        let e = euclidean_geodesic(c, vertex(c, x)?, vertex(c, y)?)?;
        put(out, Box::into_raw(Box::new(SyslabSimplices(e.simplices))))
    })
}

/// Number of simplices in the sequence, or 0 for null.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syslab_simplices_len(s: *const SyslabSimplices) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the vertices of simplex `i` into `buf`.
///
/// # Safety
/// `s` must be a live handle, `len` a valid pointer and `buf` valid for
/// `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn syslab_simplices_get(s: *const SyslabSimplices, i: usize, buf: *mut u32, cap: usize, len: *mut usize) -> SyslabStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("simplices"))?;
        let simplex = s
            .0
            .get(i)
            .ok_or_else(|| Fail(SyslabStatus::OutsideDomain, format!("index {i} out of range ({} simplices)", s.0.len())))?;
        fill(&ids(simplex.vertices()), buf, cap, len)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syslab_simplices_free(s: *mut SyslabSimplices) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The vertex geodesic selected from the Euclidean geodesic between `x` and `y`.
///
/// # Safety
/// `c` must be a live handle, `len` a valid pointer and `buf` valid for
/// `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn syslab_vertex_geodesic(c: *const SyslabComplex, x: u32, y: u32, buf: *mut u32, cap: usize, len: *mut usize) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        let e = euclidean_geodesic(c, vertex(c, x)?, vertex(c, y)?)?;
        let g = select_vertex_geodesic(c, &e)?;
        fill(&ids(g.vertices()), buf, cap, len)
    })
}

/// The smallest constant for which the vertex path is good.
///
/// # Safety
/// `c` must be a live handle, `path` valid for `n` entries and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_goodness(c: *const SyslabComplex, path: *const u32, n: usize, out: *mut u32) -> SyslabStatus {
    guard(|| {
        let c = complex(c)?;
        if path.is_null() && n > 0 {
            return Err(null("path"));
        }
        let raw = if n == 0 { &[][..] } else { std::slice::from_raw_parts(path, n) };
        let vs = raw.iter().map(|&v| vertex(c, v)).collect::<Result<Vec<_>, _>>()?;
        let g = Geodesic(vs);
        if !g.is_geodesic(c) {
            return Err(Error::PreconditionViolated("path is not a geodesic".into()).into());
        }
        put(out, goodness_constant(c, &g)?.constant)
    })
}

/// Runs a scenario file. `constants` may be null or an override list such
/// as `"C=300,D=900"`; `out_dir` may be null to use the scenario's own output
/// path. Input errors are returned as a status; failed assertions still
/// produce a report.
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn syslab_run_scenario(
    path: *const c_char,
    constants: *const c_char,
    out_dir: *const c_char,
    out: *mut *mut SyslabReport,
) -> SyslabStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let constants = if constants.is_null() { None } else { Some(str_arg(constants, "constants")?) };
        let dir = if out_dir.is_null() { None } else { Some(str_arg(out_dir, "out_dir")?.into()) };
        let opts = RunOptions { seed: None, out: dir, figures_only: false };
        let (code, rep) = run_file(Path::new(path), constants, &opts);
        let rep = rep?;
        let json = CString::new(rep.to_json()).map_err(|e| Fail(SyslabStatus::Internal, e.to_string()))?;
        put(out, Box::into_raw(Box::new(SyslabReport { json, passed: rep.passed, exit_code: code })))
    })
}

/// The report as JSON, valid while the handle lives.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syslab_report_json(r: *const SyslabReport) -> *const c_char {
    r.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Whether every assertion of every task passed.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syslab_report_passed(r: *const SyslabReport) -> bool {
    r.as_ref().is_some_and(|r| r.passed)
}

/// The process exit code the CLI would use for this run.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn syslab_report_exit_code(r: *const SyslabReport) -> i32 {
    r.as_ref().map_or(2, |r| r.exit_code)
}

/// # Safety
/// `r` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn syslab_report_free(r: *mut SyslabReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
