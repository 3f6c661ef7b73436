//! C bindings for the carter-linkage library.
//!
//! Heap objects cross the boundary as opaque handles that the caller owns
//! and releases with the matching `_free` function.  Strings come back
//! through `char **` out parameters as NUL terminated UTF-8 and are
//! released with [`clk_string_free`].  Every fallible entry point returns
//! a [`ClkStatus`]; after a failure [`clk_last_error_message`] describes
//! what went wrong, and the message stays valid on the calling thread
//! until the next failing call.
//!
//! Structured results are delivered as JSON documents with the same
//! schemas the `carter` command line tool prints, so output from either
//! surface can be diffed directly.  The committed header
//! `include/carter_linkage.h` is generated by cbindgen at build time and
//! a unit test keeps it in sync with this source file.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use carter_linkage::gamma::find_gamma_set;
use carter_linkage::{
    criterion_set, enumerate_full, find_transition, orbit_partition, ovsienko_reduce, p_classes,
    spectrum, verify_transition, CarterDiagram, DiagramName, Error, GammaSet, LinkageSystem, Orbit,
    RatMatrix, RootSystem, UnitForm,
};

/// Result of every fallible call in this interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClkStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A diagram or root system name is outside the supported catalog.
    UnknownName = 3,
    /// The input was understood but rejected, for example a matrix that
    /// is not a unit form or a transition between mismatched orders.
    InvalidInput = 4,
    /// No set of roots in the requested ambient system realizes the diagram.
    NoEmbedding = 5,
    /// No single root exchange connects the two diagrams.
    NoTransition = 6,
    /// An internal invariant failed; this indicates a library bug.
    Internal = 7,
}

/// Opaque handle to a parsed Carter diagram.
pub struct ClkDiagram(CarterDiagram);

/// Opaque handle to an enumerated linkage system.
pub struct ClkSystem(LinkageSystem);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn remember(message: String, status: ClkStatus) -> ClkStatus {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").expect("static"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = stored);
    status
}

fn fail(e: Error) -> ClkStatus {
    let status = match &e {
        Error::UnknownDiagram(_) | Error::RankRange { .. } => ClkStatus::UnknownName,
        Error::Parse(_)
        | Error::Dimension(_)
        | Error::InvalidDiagram(_)
        | Error::LabelRange(_)
        | Error::InSpan
        | Error::NonTernary(_)
        | Error::BadFlation(_)
        | Error::NotUnitForm(_, _) => ClkStatus::InvalidInput,
        Error::NoRealization { .. } => ClkStatus::NoEmbedding,
        Error::NoTransition { .. } => ClkStatus::NoTransition,
        Error::Singular { .. }
        | Error::ClosureViolation { .. }
        | Error::NonTermination(_)
        | Error::NotDynkin(_)
        | Error::CountMismatch(_) => ClkStatus::Internal,
    };
    remember(e.to_string(), status)
}

fn fail_null() -> ClkStatus {
    remember(
        "required pointer argument was null".into(),
        ClkStatus::NullArgument,
    )
}

unsafe fn borrow<'a, T>(ptr: *const T) -> Result<&'a T, ClkStatus> {
    ptr.as_ref().ok_or_else(|| fail_null())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ClkStatus> {
    if ptr.is_null() {
        return Err(fail_null());
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| remember("string argument is not valid UTF-8".into(), ClkStatus::InvalidUtf8))
}

unsafe fn put_string(text: String, out: *mut *mut c_char) -> ClkStatus {
    if out.is_null() {
        return fail_null();
    }
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            ClkStatus::Ok
        }
        Err(_) => remember(
            "result contained an interior NUL byte".into(),
            ClkStatus::Internal,
        ),
    }
}

unsafe fn put_json(doc: &serde_json::Value, out: *mut *mut c_char) -> ClkStatus {
    let text = serde_json::to_string_pretty(doc).expect("values built here serialize");
    put_string(text, out)
}

fn parse_diagram(name: &str) -> Result<CarterDiagram, Error> {
    name.parse::<DiagramName>()?.diagram()
}

/// Realize a diagram inside the root system of its own type and rank.
fn realize(d: &CarterDiagram) -> Result<GammaSet, Error> {
    let name: DiagramName = d.name().parse()?;
    let ambient = RootSystem::new(name.typ)?;
    find_gamma_set(d, &ambient).ok_or_else(|| Error::NoRealization {
        diagram: d.name().to_string(),
        ambient: name.typ.to_string(),
    })
}

/// Message for the most recent failure on the calling thread.
///
/// The returned pointer is owned by the library and stays valid until the
/// next failing call on the same thread.  Before any failure it points at
/// an empty string.
#[no_mangle]
pub extern "C" fn clk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned through a `char **` out parameter.
///
/// Passing null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn clk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a diagram name such as `"D5(a1)"` or `"E8"` into a handle.
///
/// On success `*out` owns the new handle; release it with
/// [`clk_diagram_free`].
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_parse(
    name: *const c_char,
    out: *mut *mut ClkDiagram,
) -> ClkStatus {
    if out.is_null() {
        return fail_null();
    }
    let text = match read_str(name) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_diagram(text) {
        Ok(d) => {
            *out = Box::into_raw(Box::new(ClkDiagram(d)));
            ClkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release a diagram handle.  Passing null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_free(d: *mut ClkDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Number of vertices of the diagram, or 0 if the handle is null.
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_order(d: *const ClkDiagram) -> usize {
    d.as_ref().map_or(0, |h| h.0.order())
}

/// Canonical name of the diagram, for example `"D6(a2)"`.
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_name(
    d: *const ClkDiagram,
    out: *mut *mut c_char,
) -> ClkStatus {
    match borrow(d) {
        Ok(h) => put_string(h.0.name().to_string(), out),
        Err(status) => status,
    }
}

/// JSON description of the diagram: vertices, signed edges, cycle count.
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_json(
    d: *const ClkDiagram,
    out: *mut *mut c_char,
) -> ClkStatus {
    match borrow(d) {
        Ok(h) => put_json(&h.0.to_json(), out),
        Err(status) => status,
    }
}

/// Graphviz rendering of the diagram, solid edges for sign -1 and dotted
/// edges for sign +1.
#[no_mangle]
pub unsafe extern "C" fn clk_diagram_dot(d: *const ClkDiagram, out: *mut *mut c_char) -> ClkStatus {
    match borrow(d) {
        Ok(h) => put_string(h.0.to_dot(), out),
        Err(status) => status,
    }
}

/// JSON document with the partial Cartan matrix, its inverse and its
/// determinant.
#[no_mangle]
pub unsafe extern "C" fn clk_gram_json(d: *const ClkDiagram, out: *mut *mut c_char) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    let b = h.0.partial_cartan();
    let inverse = match b.inverse() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let det = match b.det() {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let inverse_rows: Vec<Vec<String>> = (0..inverse.nrows())
        .map(|i| (0..inverse.ncols()).map(|j| inverse[(i, j)].to_string()).collect())
        .collect();
    let vertices: Vec<String> = (0..h.0.order()).map(|v| h.0.vertex_label(v)).collect();
    let doc = serde_json::json!({
        "name": h.0.name(),
        "vertices": vertices,
        "gram": b.int_entries().expect("partial Cartan matrices are integral"),
        "inverse": inverse_rows,
        "det": det.to_string(),
    });
    put_json(&doc, out)
}

/// Size of the criterion set of the diagram, written to `*out`.
#[no_mangle]
pub unsafe extern "C" fn clk_criterion_total(
    d: *const ClkDiagram,
    out: *mut usize,
) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail_null();
    }
    match criterion_set(&h.0) {
        Ok(set) => {
            *out = set.len();
            ClkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Enumerate the full linkage system of the diagram.
///
/// On success `*out` owns the new handle; release it with
/// [`clk_system_free`].
#[no_mangle]
pub unsafe extern "C" fn clk_linkage_enumerate(
    d: *const ClkDiagram,
    out: *mut *mut ClkSystem,
) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    if out.is_null() {
        return fail_null();
    }
    match enumerate_full(&h.0) {
        Ok(system) => {
            *out = Box::into_raw(Box::new(ClkSystem(system)));
            ClkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release a linkage system handle.  Passing null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn clk_system_free(s: *mut ClkSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of label vectors in the criterion set, or 0 if the handle is
/// null.
#[no_mangle]
pub unsafe extern "C" fn clk_system_total(s: *const ClkSystem) -> usize {
    s.as_ref().map_or(0, |h| h.0.total().len())
}

/// JSON description of the linkage system: base diagram, realized
/// partials per ambient type and the criterion total.
#[no_mangle]
pub unsafe extern "C" fn clk_system_json(s: *const ClkSystem, out: *mut *mut c_char) -> ClkStatus {
    match borrow(s) {
        Ok(h) => put_json(&h.0.to_json(), out),
        Err(status) => status,
    }
}

/// JSON document partitioning the criterion set into dual Weyl orbits,
/// grouped by the common value p of the inverse form on each class.
#[no_mangle]
pub unsafe extern "C" fn clk_orbits_json(d: *const ClkDiagram, out: *mut *mut c_char) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    let classes = match p_classes(&h.0) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut groups = Vec::new();
    for (p, labels) in classes {
        let orbits = match orbit_partition(&h.0, &labels) {
            Ok(o) => o,
            Err(e) => return fail(e),
        };
        groups.push(serde_json::json!({
            "p": p.to_string(),
            "orbits": orbits.iter().map(Orbit::to_json).collect::<Vec<_>>(),
        }));
    }
    let doc = serde_json::json!({ "diagram": h.0.name(), "classes": groups });
    put_json(&doc, out)
}

fn reduction_doc(form: &UnitForm) -> Result<serde_json::Value, Error> {
    let reduction = ovsienko_reduce(form)?;
    let mut doc = reduction.to_json();
    doc.as_object_mut()
        .expect("reductions render as objects")
        .insert("verified".into(), serde_json::Value::Bool(reduction.verify(form)));
    Ok(doc)
}

/// Reduce the unit form of the diagram to a disjoint union of simply
/// laced Dynkin forms and return the certificate as JSON.
#[no_mangle]
pub unsafe extern "C" fn clk_reduce_diagram_json(
    d: *const ClkDiagram,
    out: *mut *mut c_char,
) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    let form = UnitForm::of_diagram(&h.0);
    match reduction_doc(&form) {
        Ok(doc) => put_json(&doc, out),
        Err(e) => fail(e),
    }
}

/// Reduce a unit form given as matrix text, rows separated by `;` and
/// entries by whitespace, for example `"2 -1; -1 2"`.  Returns the same
/// certificate document as [`clk_reduce_diagram_json`].
#[no_mangle]
pub unsafe extern "C" fn clk_reduce_matrix_json(
    matrix: *const c_char,
    out: *mut *mut c_char,
) -> ClkStatus {
    let text = match read_str(matrix) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let parsed = match RatMatrix::parse(text) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let form = match UnitForm::new(parsed) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match reduction_doc(&form) {
        Ok(doc) => put_json(&doc, out),
        Err(e) => fail(e),
    }
}

/// Smallest and largest eigenvalue of the partial Cartan matrix, written
/// to `*min` and `*max`.
#[no_mangle]
pub unsafe extern "C" fn clk_spectrum_bounds(
    d: *const ClkDiagram,
    min: *mut f64,
    max: *mut f64,
) -> ClkStatus {
    let h = match borrow(d) {
        Ok(h) => h,
        Err(status) => return status,
    };
    if min.is_null() || max.is_null() {
        return fail_null();
    }
    match spectrum(&h.0.partial_cartan()) {
        Ok(report) => {
            *min = report.min;
            *max = report.max;
            ClkStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Find the single root exchange carrying one diagram to another of the
/// same order and return the certificate as JSON.
///
/// The source diagram is realized inside the root system of its own type
/// and rank.  The document records the moved vertex, the replacement
/// root, the exchange matrix and whether the full verification passed.
#[no_mangle]
pub unsafe extern "C" fn clk_transition_json(
    from: *const c_char,
    to: *const c_char,
    out: *mut *mut c_char,
) -> ClkStatus {
    let from_name = match read_str(from) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let to_name = match read_str(to) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let source = match parse_diagram(from_name) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let target = match parse_diagram(to_name) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let gamma = match realize(&source) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let transition = match find_transition(&gamma, &target) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let verified = match verify_transition(&transition) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let mut doc = transition.to_json();
    doc.as_object_mut()
        .expect("transitions render as objects")
        .insert("verified".into(), serde_json::Value::Bool(verified));
    put_json(&doc, out)
}
