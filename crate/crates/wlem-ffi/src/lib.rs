//! C ABI for the wlem library.
//!
//! Conventions:
//! - Every function returns a [`WlemStatus`]; results come back through out
//!   parameters, written only on `WLEM_STATUS_OK`.
//! - Handles (`WlemFormula`, `WlemFrame`, `WlemAlgebra`) are opaque and
//!   must be released with the matching `_free` function.
//! - Strings returned through `char **` are NUL-terminated, allocated by
//!   this library, and must be released with [`wlem_string_free`].
//! - `cap` parameters bound the number of forcing evaluations a query may
//!   spend; pass 0 for the default (10^8).
//! - After any non-OK status, [`wlem_last_error_message`] returns a
//!   human-readable description, valid on the calling thread until the next
//!   failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wlem::budget::Budget;
use wlem::decide;
use wlem::duality;
use wlem::error::Error;
use wlem::formula::{self, Formula};
use wlem::json;
use wlem::kripke::{self, Frame, SearchParams, Validity};
use wlem::sperner;

/// Result of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WlemStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A formula failed to parse.
    SyntaxError = 3,
    /// A JSON document failed to parse.
    BadJson = 4,
    /// Structurally valid input violating a precondition (bad order, bad
    /// bounds, out-of-range index, ...).
    InvalidInput = 5,
    /// The evaluation cap was exhausted before the query finished.
    BudgetExhausted = 6,
    /// A panic was caught at the boundary; this is a bug in the library.
    InternalError = 7,
}

/// Opaque formula handle.
pub struct WlemFormula(Formula);

/// Opaque frame handle; remembers declared world names for JSON output.
pub struct WlemFrame {
    frame: Frame,
    names: Option<Vec<String>>,
}

/// Opaque Brouwer-algebra handle.
pub struct WlemAlgebra(wlem::brouwer::BrouwerAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("no interior NUL");
    });
}

fn fail(status: WlemStatus, message: &str) -> WlemStatus {
    set_last_error(message);
    status
}

fn fail_with(e: &Error) -> WlemStatus {
    let status = match e {
        Error::Syntax { .. } | Error::EmptyInput => WlemStatus::SyntaxError,
        Error::Json(_) => WlemStatus::BadJson,
        Error::BudgetExhausted { .. } => WlemStatus::BudgetExhausted,
        _ => WlemStatus::InvalidInput,
    };
    fail(status, &e.to_string())
}

fn guarded<F: FnOnce() -> WlemStatus>(body: F) -> WlemStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(WlemStatus::InternalError, "internal panic"),
    }
}

/// # Safety
/// `text` must be NULL or a NUL-terminated string.
unsafe fn utf8_in<'a>(text: *const c_char) -> Result<&'a str, WlemStatus> {
    if text.is_null() {
        return Err(fail(WlemStatus::NullArgument, "text argument is NULL"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(WlemStatus::InvalidUtf8, "text argument is not UTF-8"))
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior NUL")
        .into_raw()
}

fn budget_for(cap: u64) -> Budget {
    if cap == 0 {
        Budget::default()
    } else {
        Budget::new(cap)
    }
}

/// Version of the underlying library, as a static string.
#[no_mangle]
pub extern "C" fn wlem_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wlem_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string allocated by this library.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through a `char **`
/// out parameter, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wlem_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

/// Parses a formula from text (`~`, `&`, `|`, `->`, variables `p1`, ...).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_formula_parse(
    text: *const c_char,
    out: *mut *mut WlemFormula,
) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        let text = match utf8_in(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match formula::parse(text) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(WlemFormula(f)));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The k-th testability schema (`k = 1` gives `~p1 | ~~p1`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_gen_phi(k: u32, out: *mut *mut WlemFormula) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        match formula::gen_phi(k) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(WlemFormula(f)));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The k-th topwidth schema over `k + 1` variables.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_gen_sigma(k: u32, out: *mut *mut WlemFormula) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        match formula::gen_sigma(k) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(WlemFormula(f)));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Prints a formula with minimal parentheses.
///
/// # Safety
/// `f` must be a live formula handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_formula_to_string(
    f: *const WlemFormula,
    out: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if f.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        *out = string_out((*f).0.to_string());
        WlemStatus::Ok
    })
}

/// # Safety
/// `f` must be NULL or a live formula handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wlem_formula_free(f: *mut WlemFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// Loads a frame from its JSON form
/// `{"worlds": n | [names], "cover": [[i, j], ...], "root": r}`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_from_json(
    text: *const c_char,
    out: *mut *mut WlemFrame,
) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        let text = match utf8_in(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match json::parse_frame(text) {
            Ok(named) => {
                *out = Box::into_raw(Box::new(WlemFrame {
                    frame: named.frame,
                    names: named.names,
                }));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Serializes a frame back to JSON (with its declared names, if any).
///
/// # Safety
/// `frame` must be a live frame handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_to_json(
    frame: *const WlemFrame,
    out: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if frame.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        let handle = &*frame;
        *out = string_out(json::frame_to_json(&handle.frame, handle.names.as_deref()));
        WlemStatus::Ok
    })
}

/// Number of maximal worlds.
///
/// # Safety
/// `frame` must be a live frame handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_topwidth(frame: *const WlemFrame, out: *mut u32) -> WlemStatus {
    guarded(|| {
        if frame.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        *out = (*frame).frame.topwidth() as u32;
        WlemStatus::Ok
    })
}

/// Checks a formula on every valuation of the frame. On success,
/// `*out_holds` reports validity and, when the formula fails and
/// `out_countermodel_json` is non-NULL, `*out_countermodel_json` receives
/// the first countermodel as JSON (NULL when the formula holds).
///
/// # Safety
/// `frame` and `f` must be live handles; `out_holds` must be valid;
/// `out_countermodel_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_check(
    frame: *const WlemFrame,
    f: *const WlemFormula,
    cap: u64,
    out_holds: *mut bool,
    out_countermodel_json: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if frame.is_null() || f.is_null() || out_holds.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        let handle = &*frame;
        let budget = budget_for(cap);
        match kripke::holds_in_frame(&handle.frame, &(*f).0, &budget) {
            Ok(Validity::Holds) => {
                *out_holds = true;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json = std::ptr::null_mut();
                }
                WlemStatus::Ok
            }
            Ok(Validity::Fails(cm)) => {
                *out_holds = false;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json =
                        string_out(json::countermodel_to_json(&cm, handle.names.as_deref()));
                }
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// `frame` must be NULL or a live frame handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_free(frame: *mut WlemFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

// ---------------------------------------------------------------------------
// Algebras
// ---------------------------------------------------------------------------

/// Loads a Brouwer algebra from its JSON form
/// `{"elements": m, "leq": [[i, j], ...], "bottom": b, "top": t}`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_algebra_from_json(
    text: *const c_char,
    out: *mut *mut WlemAlgebra,
) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        let text = match utf8_in(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match json::parse_algebra(text) {
            Ok(alg) => {
                *out = Box::into_raw(Box::new(WlemAlgebra(alg)));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Serializes an algebra back to JSON.
///
/// # Safety
/// `alg` must be a live algebra handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_algebra_to_json(
    alg: *const WlemAlgebra,
    out: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        *out = string_out(json::algebra_to_json(&(*alg).0));
        WlemStatus::Ok
    })
}

/// Does every assignment evaluate the formula to the bottom element?
///
/// # Safety
/// `alg` and `f` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_algebra_satisfies(
    alg: *const WlemAlgebra,
    f: *const WlemFormula,
    cap: u64,
    out: *mut bool,
) -> WlemStatus {
    guarded(|| {
        if alg.is_null() || f.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        let budget = budget_for(cap);
        match (*alg).0.satisfies(&(*f).0, &budget) {
            Ok(v) => {
                *out = v;
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The open-set algebra of a frame.
///
/// # Safety
/// `frame` must be a live frame handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_frame_to_algebra(
    frame: *const WlemFrame,
    out: *mut *mut WlemAlgebra,
) -> WlemStatus {
    guarded(|| {
        if frame.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        match duality::alg_of_frame(&(*frame).frame) {
            Ok(open) => {
                *out = Box::into_raw(Box::new(WlemAlgebra(open.algebra().clone())));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// The prime-ideal frame of an algebra with meet-irreducible bottom.
///
/// # Safety
/// `alg` must be a live algebra handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_algebra_to_frame(
    alg: *const WlemAlgebra,
    out: *mut *mut WlemFrame,
) -> WlemStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        match duality::frame_of_algebra(&(*alg).0) {
            Ok(frame) => {
                *out = Box::into_raw(Box::new(WlemFrame { frame, names: None }));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// `alg` must be NULL or a live algebra handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wlem_algebra_free(alg: *mut WlemAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

// ---------------------------------------------------------------------------
// Numbers and searches
// ---------------------------------------------------------------------------

/// The middle binomial coefficient `C(n, n/2)`; fails for `n > 67`, where
/// the value no longer fits in 64 bits.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_sperner_number(n: u32, out: *mut u64) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        if n > 67 {
            return fail(
                WlemStatus::InvalidInput,
                "middle binomial coefficients overflow u64 past n = 67",
            );
        }
        *out = sperner::sperner_number(n);
        WlemStatus::Ok
    })
}

/// The least `n >= 1` whose middle binomial coefficient reaches `k`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_min_topwidth_for(k: u64, out: *mut u32) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        match sperner::min_topwidth_for(k) {
            Ok(n) => {
                *out = n;
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Bounded membership of a formula in the logic of the k-th testability
/// schema. `*out_refuted` is set on success; when a countermodel exists and
/// `out_countermodel_json` is non-NULL it receives the witness as JSON
/// (NULL otherwise).
///
/// # Safety
/// `f` must be a live formula handle; `out_refuted` must be valid;
/// `out_countermodel_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn wlem_decide(
    f: *const WlemFormula,
    k: u64,
    max_size: u32,
    cap: u64,
    out_refuted: *mut bool,
    out_countermodel_json: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if f.is_null() || out_refuted.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        let budget = budget_for(cap);
        match decide::check_membership(&(*f).0, k, max_size as usize, &budget) {
            Ok(decide::Verdict::ValidUpToBound { .. }) => {
                *out_refuted = false;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json = std::ptr::null_mut();
                }
                WlemStatus::Ok
            }
            Ok(decide::Verdict::Refuted(cm)) => {
                *out_refuted = true;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json = string_out(json::countermodel_to_json(&cm, None));
                }
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Searches the enumerated frames (topwidth bound 0 means unbounded) for a
/// countermodel of the formula.
///
/// # Safety
/// `f` must be a live formula handle; `out_found` must be valid;
/// `out_countermodel_json` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn wlem_countermodel_search(
    f: *const WlemFormula,
    max_size: u32,
    topwidth: u32,
    cap: u64,
    out_found: *mut bool,
    out_countermodel_json: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if f.is_null() || out_found.is_null() {
            return fail(WlemStatus::NullArgument, "argument is NULL");
        }
        let params = SearchParams {
            max_size: max_size as usize,
            topwidth: if topwidth == 0 {
                None
            } else {
                Some(topwidth as usize)
            },
        };
        let budget = budget_for(cap);
        match kripke::countermodel_search(&(*f).0, &params, &budget) {
            Ok(None) => {
                *out_found = false;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json = std::ptr::null_mut();
                }
                WlemStatus::Ok
            }
            Ok(Some(cm)) => {
                *out_found = true;
                if !out_countermodel_json.is_null() {
                    *out_countermodel_json = string_out(json::countermodel_to_json(&cm, None));
                }
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Reads a countermodel of a testability schema (as JSON) and returns the
/// powerset antichain it certifies, as JSON.
///
/// # Safety
/// `countermodel_json` must be a NUL-terminated string; `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wlem_extract_antichain(
    countermodel_json: *const c_char,
    out: *mut *mut c_char,
) -> WlemStatus {
    guarded(|| {
        if out.is_null() {
            return fail(WlemStatus::NullArgument, "out pointer is NULL");
        }
        let text = match utf8_in(countermodel_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let (cm, _names) = match json::parse_countermodel(text) {
            Ok(v) => v,
            Err(e) => return fail_with(&e),
        };
        match kripke::extract_antichain(&cm) {
            Ok(antichain) => {
                *out = string_out(json::antichain_to_json(&antichain));
                WlemStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}
