//! C interface to lensphere.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`LsStatus`]; on failure `ls_last_error` describes the problem for the
//! calling thread. Strings returned through out-parameters are released with
//! `ls_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use lensphere::complexes::export::{from_json, to_dot, to_json};
use lensphere::complexes::{
    build_disk_complex, build_dual_tree, build_pprime_complex, build_primitive_complex, build_sphere_complex,
    component_count, is_forest, verify, Census, ComplexGraph, Suite,
};
use lensphere::splitting::{build_diagram, HandleSide, HeegaardDiagram};
use lensphere::surface::triangulation::MODEL_VERSION;
use lensphere::surface::word::parse_letters;
use lensphere::surface::{intersection_number, Curve};
use lensphere::words::{is_primitive, FreeWord};
use lensphere::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidLens = 3,
    Precondition = 4,
    CacheMismatch = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsSide {
    V = 0,
    W = 1,
}

impl From<LsSide> for HandleSide {
    fn from(s: LsSide) -> Self {
        match s {
            LsSide::V => HandleSide::V,
            LsSide::W => HandleSide::W,
        }
    }
}

/// Complexes that need nothing beyond a census; dual trees have their own call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsComplexKind {
    Disk = 0,
    Primitive = 1,
    PPrime = 2,
    Sphere = 3,
}

/// Seed Heegaard diagram of a lens space.
pub struct LsDiagram(HeegaardDiagram);

/// Disk sets of both handlebodies at one budget.
pub struct LsCensus(Census);

/// An explored complex.
pub struct LsGraph(ComplexGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(LsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidLens { .. } => LsStatus::InvalidLens,
            Error::Precondition(_) => LsStatus::Precondition,
            Error::CacheMismatch(_) => LsStatus::CacheMismatch,
            Error::Parse(_)
            | Error::UnknownSuite(_)
            | Error::InvalidNormal(_)
            | Error::Disconnected(_)
            | Error::Inessential
            | Error::WordOverflow { .. }
            | Error::Json(_) => LsStatus::InvalidArgument,
            _ => LsStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: Option<String>) {
    LAST_ERROR.with(|cell| {
        *cell.borrow_mut() = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior NUL"));
    });
}

/// Runs `f`, turning errors and panics into a status and a recorded message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(None);
            LsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".into());
            set_error(Some(msg));
            LsStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(LsStatus::NullPointer, format!("{} is null", what))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(LsStatus::InvalidArgument, format!("{} is not UTF-8", what)))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(LsStatus::Internal, "string contains NUL".into()))?;
    put(out, c.into_raw(), "out")
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Version tag of the surface model stamped on every artifact.
#[no_mangle]
pub extern "C" fn ls_model_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(MODEL_VERSION).unwrap()).as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the seed diagram of L(p, q).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_diagram_new(p: i64, q: i64, out: *mut *mut LsDiagram) -> LsStatus {
    guard(|| {
        let d = build_diagram(p, q)?;
        put(out, Box::into_raw(Box::new(LsDiagram(d))), "out")
    })
}

/// # Safety
/// `d` must be null or a handle from `ls_diagram_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_diagram_free(d: *mut LsDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Writes the six seed intersection numbers (α1α2, β1β2, α2β2, α1β2, α2β1, α1β1).
///
/// # Safety
/// `d` must be a live diagram; `out` must be valid for six writes.
#[no_mangle]
pub unsafe extern "C" fn ls_diagram_seed_intersections(d: *const LsDiagram, out: *mut u32) -> LsStatus {
    guard(|| {
        let d = borrow(d, "diagram")?;
        if out.is_null() {
            return Err(null("out"));
        }
        for (k, v) in d.0.seed_intersections().into_iter().enumerate() {
            out.add(k).write(v);
        }
        Ok(())
    })
}

/// The diagram's preset document as JSON.
///
/// # Safety
/// `d` must be a live diagram; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_diagram_preset_json(d: *const LsDiagram, out: *mut *mut c_char) -> LsStatus {
    guard(|| {
        let d = borrow(d, "diagram")?;
        let s = serde_json::to_string_pretty(&d.0.to_preset()).map_err(|e| Failure::from(Error::from(e)))?;
        put_string(out, s)
    })
}

/// Enumerates both disk sets at a per-edge budget.
///
/// # Safety
/// `d` must be a live diagram; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_census_new(d: *const LsDiagram, max_weight: u32, out: *mut *mut LsCensus) -> LsStatus {
    guard(|| {
        let d = borrow(d, "diagram")?;
        if max_weight == 0 {
            return Err(Failure(LsStatus::InvalidArgument, "max_weight must be positive".into()));
        }
        put(out, Box::into_raw(Box::new(LsCensus(Census::build(&d.0, max_weight)))), "out")
    })
}

/// # Safety
/// `c` must be null or a handle from `ls_census_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_census_free(c: *mut LsCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of primitive disks on one side.
///
/// # Safety
/// `c` must be a live census; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_census_primitive_count(c: *const LsCensus, side: LsSide, out: *mut usize) -> LsStatus {
    guard(|| {
        let c = borrow(c, "census")?;
        put(out, c.0.primitive_set(side.into()).len(), "out")
    })
}

/// Builds one complex of the V side (or the sphere complex) from a census.
///
/// # Safety
/// `c` must be a live census; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_build(c: *const LsCensus, kind: LsComplexKind, out: *mut *mut LsGraph) -> LsStatus {
    guard(|| {
        let c = &borrow(c, "census")?.0;
        let g = match kind {
            LsComplexKind::Disk => build_disk_complex(c, HandleSide::V),
            LsComplexKind::Primitive => build_primitive_complex(c, HandleSide::V),
            LsComplexKind::PPrime => build_pprime_complex(c, HandleSide::V),
            LsComplexKind::Sphere => build_sphere_complex(c).0,
        };
        put(out, Box::into_raw(Box::new(LsGraph(g))), "out")
    })
}

/// Dual complex of the primitive V-disk with key `base`.
///
/// # Safety
/// `c` must be a live census, `base` a NUL-terminated string; `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_dual_tree(c: *const LsCensus, base: *const c_char, out: *mut *mut LsGraph) -> LsStatus {
    guard(|| {
        let c = &borrow(c, "census")?.0;
        let g = build_dual_tree(c, HandleSide::V, text(base, "base")?)?;
        put(out, Box::into_raw(Box::new(LsGraph(g))), "out")
    })
}

/// Parses a graph document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_from_json(json: *const c_char, out: *mut *mut LsGraph) -> LsStatus {
    guard(|| {
        let g = from_json(text(json, "json")?)?;
        put(out, Box::into_raw(Box::new(LsGraph(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a graph handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_free(g: *mut LsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; zero for a null handle.
///
/// # Safety
/// `g` must be null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_vertex_count(g: *const LsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count; zero for a null handle.
///
/// # Safety
/// `g` must be null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_edge_count(g: *const LsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Connected component count; zero for a null handle.
///
/// # Safety
/// `g` must be null or a live graph.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_component_count(g: *const LsGraph) -> usize {
    g.as_ref().map_or(0, |g| component_count(&g.0))
}

/// # Safety
/// `g` must be a live graph; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_is_forest(g: *const LsGraph, out: *mut bool) -> LsStatus {
    guard(|| put(out, is_forest(&borrow(g, "graph")?.0), "out"))
}

/// # Safety
/// `g` must be a live graph; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_to_json(g: *const LsGraph, out: *mut *mut c_char) -> LsStatus {
    guard(|| put_string(out, to_json(&borrow(g, "graph")?.0)))
}

/// # Safety
/// `g` must be a live graph; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_graph_to_dot(g: *const LsGraph, out: *mut *mut c_char) -> LsStatus {
    guard(|| put_string(out, to_dot(&borrow(g, "graph")?.0)))
}

/// Runs a named suite at `max_weight`; the census budget must cover what the
/// suite needs. `passed` receives the overall verdict and `report`, when not
/// null, the JSON report.
///
/// # Safety
/// `c` must be a live census, `suite` a NUL-terminated string; `passed` must
/// be valid for writes; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn ls_verify(
    c: *const LsCensus,
    suite: *const c_char,
    max_weight: u32,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> LsStatus {
    guard(|| {
        let c = &borrow(c, "census")?.0;
        let suite: Suite = text(suite, "suite")?.parse()?;
        let r = verify(suite, c, max_weight)?;
        put(passed, r.verdict.is_pass(), "passed")?;
        if !report.is_null() {
            let s = serde_json::to_string_pretty(&r).map_err(|e| Failure::from(Error::from(e)))?;
            put_string(report, s)?;
        }
        Ok(())
    })
}

/// Primitivity of a cyclic word in x, y (inverses X, Y).
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_is_primitive_word(word: *const c_char, out: *mut bool) -> LsStatus {
    guard(|| {
        let w = FreeWord::parse(text(word, "word")?)?;
        put(out, is_primitive(&w), "out")
    })
}

/// Geometric intersection number of the free homotopy classes of two surface
/// words in a, b, c, d (inverses A, B, C, D).
///
/// # Safety
/// `a` and `b` must be NUL-terminated strings; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ls_intersection_number(a: *const c_char, b: *const c_char, out: *mut u32) -> LsStatus {
    guard(|| {
        let ca = Curve::from_word(&parse_letters(text(a, "a")?)?)?;
        let cb = Curve::from_word(&parse_letters(text(b, "b")?)?)?;
        put(out, intersection_number(&ca, &cb), "out")
    })
}
