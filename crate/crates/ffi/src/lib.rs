//! C bindings for the `conics` crate.
//!
//! The surface is a small set of `extern "C"` functions over two opaque
//! handle types: a ring handle holding the intersection tables and a class
//! handle holding one homogeneous class. Every fallible call returns a
//! [`ConicsStatus`] and writes its result through an out pointer; a
//! human-readable message for the most recent failure on the calling thread
//! is available from [`conics_last_error_message`].
//!
//! Exact rational results cross the boundary as decimal strings such as
//! `"51"` or `"-3/4"` so that callers are never exposed to a bignum ABI.
//! Structured results (cell tables, the verification report) cross as JSON
//! documents with the same schema the command-line tool prints.
//!
//! Ownership rules: every `char*` returned by this library is freed with
//! [`conics_string_free`], ring handles with [`conics_ring_free`], class
//! handles with [`conics_class_free`]. Handles are not thread-safe; confine
//! each handle to one thread or guard it externally.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use conics::bb::{self, Space};
use conics::chow::{ChowClass, ChowRing, ClassError};
use conics::linalg::format_rat;
use conics::verify::Verifier;
use serde_json::json;

/// Result code for every fallible call in this library.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicsStatus {
    /// The call succeeded and all out parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression could not be parsed; the message names the column.
    ParseError = 3,
    /// The inputs were well formed but the operation is undefined for them,
    /// for example pairing classes whose codimensions do not sum to 5.
    DomainError = 4,
    /// The library caught an internal panic instead of unwinding into C.
    Panic = 5,
}

/// Opaque handle to the ambient ring with its intersection tables.
pub struct ConicsRing {
    inner: ChowRing,
}

/// Opaque handle to a homogeneous class in the ring.
pub struct ConicsClass {
    inner: ChowClass,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_last_error(message: impl Into<String>) {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message.into());
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().clear());
}

/// Allocate a NUL-terminated copy of `s` for the caller. Interior NUL bytes
/// cannot occur in our output, but replace them defensively rather than
/// aborting.
fn into_c_string(s: String) -> *mut c_char {
    let bytes: Vec<u8> = s
        .into_bytes()
        .into_iter()
        .map(|b| if b == 0 { b' ' } else { b })
        .collect();
    CString::new(bytes)
        .expect("NUL bytes were just replaced")
        .into_raw()
}

fn status_for(err: &ClassError) -> ConicsStatus {
    match err {
        ClassError::Parse(_) => ConicsStatus::ParseError,
        ClassError::Chow(_) => ConicsStatus::DomainError,
    }
}

/// Run `body` with a panic guard so no unwinding crosses the C boundary.
fn guarded(body: impl FnOnce() -> ConicsStatus) -> ConicsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            ConicsStatus::Panic
        }
    }
}

/// Read a required UTF-8 string argument, recording an error on failure.
///
/// # Safety
///
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn required_str<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, ConicsStatus> {
    if ptr.is_null() {
        set_last_error(format!("{name} must not be null"));
        return Err(ConicsStatus::NullArgument);
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(s),
        Err(_) => {
            set_last_error(format!("{name} is not valid UTF-8"));
            Err(ConicsStatus::InvalidUtf8)
        }
    }
}

fn null_argument(name: &str) -> ConicsStatus {
    set_last_error(format!("{name} must not be null"));
    ConicsStatus::NullArgument
}

/// Create a ring handle with the standard intersection tables.
///
/// The returned handle is never null and is released with
/// [`conics_ring_free`].
#[no_mangle]
pub extern "C" fn conics_ring_new() -> *mut ConicsRing {
    clear_last_error();
    Box::into_raw(Box::new(ConicsRing {
        inner: ChowRing::new(),
    }))
}

/// Release a ring handle. Passing null is a no-op.
///
/// # Safety
///
/// `ring` must be null or a pointer returned by [`conics_ring_new`] that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn conics_ring_free(ring: *mut ConicsRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parse an expression such as `"(H1+H2)*E1*E2"` into a class handle.
///
/// On success writes a new handle to `out_class`; release it with
/// [`conics_class_free`]. On failure returns [`ConicsStatus::ParseError`]
/// for malformed input (the message reports the 1-based column) or
/// [`ConicsStatus::DomainError`] for well-formed input that mixes
/// codimensions.
///
/// # Safety
///
/// `ring` must be a live ring handle, `expr` a NUL-terminated string, and
/// `out_class` a valid pointer to writable memory.
#[no_mangle]
pub unsafe extern "C" fn conics_class_parse(
    ring: *const ConicsRing,
    expr: *const c_char,
    out_class: *mut *mut ConicsClass,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if ring.is_null() {
            return null_argument("ring");
        }
        if out_class.is_null() {
            return null_argument("out_class");
        }
        let expr = match required_str(expr, "expr") {
            Ok(s) => s,
            Err(status) => return status,
        };
        match (*ring).inner.class(expr) {
            Ok(class) => {
                *out_class = Box::into_raw(Box::new(ConicsClass { inner: class }));
                ConicsStatus::Ok
            }
            Err(err) => {
                let status = status_for(&err);
                set_last_error(err.to_string());
                status
            }
        }
    })
}

/// Release a class handle. Passing null is a no-op.
///
/// # Safety
///
/// `class` must be null or a pointer produced by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn conics_class_free(class: *mut ConicsClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Write the codimension of a class (0 through 5) to `out_codim`.
///
/// # Safety
///
/// `class` must be a live class handle and `out_codim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_class_codim(
    class: *const ConicsClass,
    out_codim: *mut usize,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if class.is_null() {
            return null_argument("class");
        }
        if out_codim.is_null() {
            return null_argument("out_codim");
        }
        *out_codim = (*class).inner.codim();
        ConicsStatus::Ok
    })
}

/// Write the canonical expression for a class, for example
/// `"2*H1^2 - H1*H2"`, to `out_str`. Free the string with
/// [`conics_string_free`].
///
/// # Safety
///
/// `class` must be a live class handle and `out_str` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_class_to_string(
    class: *const ConicsClass,
    out_str: *mut *mut c_char,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if class.is_null() {
            return null_argument("class");
        }
        if out_str.is_null() {
            return null_argument("out_str");
        }
        *out_str = into_c_string((*class).inner.to_expression_string());
        ConicsStatus::Ok
    })
}

/// Evaluate a codimension-5 class against the fundamental class and write
/// the exact rational result, such as `"51"`, to `out_str`. Classes of any
/// other codimension are a [`ConicsStatus::DomainError`].
///
/// # Safety
///
/// `ring` and `class` must be live handles and `out_str` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_intersection_number(
    ring: *const ConicsRing,
    class: *const ConicsClass,
    out_str: *mut *mut c_char,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if ring.is_null() {
            return null_argument("ring");
        }
        if class.is_null() {
            return null_argument("class");
        }
        if out_str.is_null() {
            return null_argument("out_str");
        }
        match (*ring).inner.intersection_number(&(*class).inner) {
            Ok(value) => {
                *out_str = into_c_string(format_rat(&value));
                ConicsStatus::Ok
            }
            Err(err) => {
                set_last_error(err.to_string());
                ConicsStatus::DomainError
            }
        }
    })
}

/// Pair two classes of complementary codimension and write the exact
/// rational result to `out_str`. Codimensions that do not sum to 5 are a
/// [`ConicsStatus::DomainError`].
///
/// # Safety
///
/// `ring`, `left`, and `right` must be live handles and `out_str` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_pair(
    ring: *const ConicsRing,
    left: *const ConicsClass,
    right: *const ConicsClass,
    out_str: *mut *mut c_char,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if ring.is_null() {
            return null_argument("ring");
        }
        if left.is_null() {
            return null_argument("left");
        }
        if right.is_null() {
            return null_argument("right");
        }
        if out_str.is_null() {
            return null_argument("out_str");
        }
        match (*ring).inner.pair(&(*left).inner, &(*right).inner) {
            Ok(value) => {
                *out_str = into_c_string(format_rat(&value));
                ConicsStatus::Ok
            }
            Err(err) => {
                set_last_error(err.to_string());
                ConicsStatus::DomainError
            }
        }
    })
}

/// Write the fixed-point cell table for one space as a JSON document to
/// `out_str`. `space` is `"p5"`, `"m"`, or `"e1"`; anything else is a
/// [`ConicsStatus::DomainError`]. The document has the keys `space`, `rows`
/// (objects with `label` and `dimension`), and `betti` (cell counts by
/// dimension), matching the command-line tool's JSON output.
///
/// # Safety
///
/// `space` must be a NUL-terminated string and `out_str` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_bb_cells_json(
    space: *const c_char,
    out_str: *mut *mut c_char,
) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if out_str.is_null() {
            return null_argument("out_str");
        }
        let name = match required_str(space, "space") {
            Ok(s) => s,
            Err(status) => return status,
        };
        let space: Space = match name.parse() {
            Ok(space) => space,
            Err(message) => {
                set_last_error(message);
                return ConicsStatus::DomainError;
            }
        };
        let table = match space {
            Space::P5 => bb::p5_cell_dimensions(),
            Space::M => bb::m_cell_dimensions(),
            Space::E1 => bb::e1_cell_dimensions(),
        };
        let (table, betti) = match table.and_then(|t| Ok((t, bb::betti_vector(space)?))) {
            Ok(pair) => pair,
            Err(err) => {
                set_last_error(err.to_string());
                return ConicsStatus::DomainError;
            }
        };
        let rows: Vec<serde_json::Value> = table
            .cells
            .iter()
            .map(|(label, dim)| json!({ "dimension": dim, "label": label }))
            .collect();
        let doc = json!({
            "betti": betti,
            "rows": rows,
            "space": space.name(),
        });
        let text = serde_json::to_string_pretty(&doc).expect("serialization cannot fail");
        *out_str = into_c_string(text);
        ConicsStatus::Ok
    })
}

/// Run the full verification suite and write the JSON report to `out_str`.
/// The document matches the command-line tool's `verify --format json`
/// output, minus its trailing newline, including the two expected benign
/// discrepancies.
///
/// # Safety
///
/// `out_str` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_verify_json(out_str: *mut *mut c_char) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if out_str.is_null() {
            return null_argument("out_str");
        }
        let report = Verifier::default().run_all();
        let mut text = report.render_json();
        // render_json ends with a newline for terminal use; a C caller gets
        // the bare document.
        while text.ends_with('\n') {
            text.pop();
        }
        *out_str = into_c_string(text);
        ConicsStatus::Ok
    })
}

/// Run the full verification suite and write its exit code to `out_code`:
/// 0 when every check matches, 3 when the only discrepancies are the known
/// benign ones, 1 when any check fails outright.
///
/// # Safety
///
/// `out_code` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conics_verify_exit_code(out_code: *mut c_int) -> ConicsStatus {
    guarded(|| {
        clear_last_error();
        if out_code.is_null() {
            return null_argument("out_code");
        }
        let report = Verifier::default().run_all();
        *out_code = report.exit_code() as c_int;
        ConicsStatus::Ok
    })
}

/// Release a string returned by this library. Passing null is a no-op.
///
/// # Safety
///
/// `s` must be null or a pointer returned by this library that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn conics_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Return a copy of the message for the most recent failure on the calling
/// thread, or an empty string if the last call succeeded. Free the result
/// with [`conics_string_free`].
#[no_mangle]
pub extern "C" fn conics_last_error_message() -> *mut c_char {
    let message = LAST_ERROR.with(|slot| slot.borrow().clone());
    into_c_string(message)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;
    use std::ptr;

    fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_owned();
        unsafe { conics_string_free(ptr) };
        s
    }

    fn last_error() -> String {
        take_string(conics_last_error_message())
    }

    fn parse(ring: *const ConicsRing, expr: &str) -> *mut ConicsClass {
        let expr = CString::new(expr).unwrap();
        let mut class = ptr::null_mut();
        let status = unsafe { conics_class_parse(ring, expr.as_ptr(), &mut class) };
        assert_eq!(status, ConicsStatus::Ok, "{}", last_error());
        class
    }

    #[test]
    fn parse_inspect_and_round_trip_a_class() {
        let ring = conics_ring_new();
        let class = parse(ring, "H1*E1");

        let mut codim = usize::MAX;
        assert_eq!(
            unsafe { conics_class_codim(class, &mut codim) },
            ConicsStatus::Ok
        );
        assert_eq!(codim, 2);

        let mut text = ptr::null_mut();
        assert_eq!(
            unsafe { conics_class_to_string(class, &mut text) },
            ConicsStatus::Ok
        );
        assert_eq!(take_string(text), "2*H1^2 - H1*H2");

        unsafe {
            conics_class_free(class);
            conics_ring_free(ring);
        }
    }

    #[test]
    fn intersection_numbers_and_pairings_are_exact_strings() {
        let ring = conics_ring_new();
        let quintic = parse(ring, "E1^5");
        let mut value = ptr::null_mut();
        assert_eq!(
            unsafe { conics_intersection_number(ring, quintic, &mut value) },
            ConicsStatus::Ok
        );
        assert_eq!(take_string(value), "51");

        let left = parse(ring, "H2*E2");
        let right = parse(ring, "H1^3");
        let mut paired = ptr::null_mut();
        assert_eq!(
            unsafe { conics_pair(ring, left, right, &mut paired) },
            ConicsStatus::Ok
        );
        assert_eq!(take_string(paired), "6");

        unsafe {
            conics_class_free(quintic);
            conics_class_free(left);
            conics_class_free(right);
            conics_ring_free(ring);
        }
    }

    #[test]
    fn parse_and_domain_failures_set_the_error_message() {
        let ring = conics_ring_new();

        let expr = CString::new("H1^2 +").unwrap();
        let mut class = ptr::null_mut();
        let status = unsafe { conics_class_parse(ring, expr.as_ptr(), &mut class) };
        assert_eq!(status, ConicsStatus::ParseError);
        assert!(class.is_null());
        assert!(last_error().contains("column 7"));

        let mixed = CString::new("H1 + H1^2").unwrap();
        let status = unsafe { conics_class_parse(ring, mixed.as_ptr(), &mut class) };
        assert_eq!(status, ConicsStatus::DomainError);

        let h1 = parse(ring, "H1");
        let mut value = ptr::null_mut();
        let status = unsafe { conics_intersection_number(ring, h1, &mut value) };
        assert_eq!(status, ConicsStatus::DomainError);
        assert!(value.is_null());
        assert!(last_error().contains("codimension 5"));

        let h2 = parse(ring, "H2");
        let status = unsafe { conics_pair(ring, h1, h2, &mut value) };
        assert_eq!(status, ConicsStatus::DomainError);
        assert!(last_error().contains("do not add up to 5"));

        unsafe {
            conics_class_free(h1);
            conics_class_free(h2);
            conics_ring_free(ring);
        }
    }

    #[test]
    fn null_and_non_utf8_arguments_are_rejected() {
        let ring = conics_ring_new();
        let mut class = ptr::null_mut();

        let expr = CString::new("H1").unwrap();
        assert_eq!(
            unsafe { conics_class_parse(ptr::null(), expr.as_ptr(), &mut class) },
            ConicsStatus::NullArgument
        );
        assert_eq!(
            unsafe { conics_class_parse(ring, ptr::null(), &mut class) },
            ConicsStatus::NullArgument
        );
        assert_eq!(
            unsafe { conics_class_parse(ring, expr.as_ptr(), ptr::null_mut()) },
            ConicsStatus::NullArgument
        );
        assert!(last_error().contains("must not be null"));

        let bad = [0xffu8, 0x00];
        assert_eq!(
            unsafe { conics_class_parse(ring, bad.as_ptr().cast(), &mut class) },
            ConicsStatus::InvalidUtf8
        );
        assert!(last_error().contains("not valid UTF-8"));

        unsafe {
            conics_string_free(ptr::null_mut());
            conics_class_free(ptr::null_mut());
            conics_ring_free(ptr::null_mut());
            conics_ring_free(ring);
        }
    }

    #[test]
    fn cell_tables_arrive_as_json() {
        let mut text = ptr::null_mut();
        let space = CString::new("e1").unwrap();
        assert_eq!(
            unsafe { conics_bb_cells_json(space.as_ptr(), &mut text) },
            ConicsStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(text)).unwrap();
        assert_eq!(doc["space"], "e1");
        assert_eq!(doc["betti"], json!([1, 2, 3, 2, 1]));
        assert_eq!(doc["rows"].as_array().unwrap().len(), 9);

        let bogus = CString::new("mars").unwrap();
        assert_eq!(
            unsafe { conics_bb_cells_json(bogus.as_ptr(), &mut text) },
            ConicsStatus::DomainError
        );
        assert!(last_error().contains("unknown space"));
    }

    #[test]
    fn verification_report_and_exit_code() {
        let mut text = ptr::null_mut();
        assert_eq!(unsafe { conics_verify_json(&mut text) }, ConicsStatus::Ok);
        let report = take_string(text);
        assert!(!report.ends_with('\n'));
        let doc: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert_eq!(doc["summary"]["total"], 60);
        assert_eq!(doc["summary"]["match"], 58);
        assert_eq!(doc["summary"]["benign_discrepancy"], 2);
        assert_eq!(doc["summary"]["fail"], 0);

        let mut code = -1;
        assert_eq!(
            unsafe { conics_verify_exit_code(&mut code) },
            ConicsStatus::Ok
        );
        assert_eq!(code, 3);
    }

    #[test]
    fn generated_header_declares_the_surface() {
        let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("include")
            .join("conics.h");
        let text =
            std::fs::read_to_string(&header).expect("build script generates include/conics.h");
        for needle in [
            "#ifndef CONICS_H",
            "typedef struct ConicsRing ConicsRing;",
            "typedef struct ConicsClass ConicsClass;",
            "CONICS_STATUS_OK",
            "conics_ring_new",
            "conics_class_parse",
            "conics_pair",
            "conics_verify_json",
            "conics_string_free",
            "conics_last_error_message",
        ] {
            assert!(text.contains(needle), "header is missing `{needle}`");
        }
    }
}
