//! C ABI over `sbp-core`.
//!
//! Objects cross the boundary as opaque handles that the caller releases
//! with the matching `*_free` function. Every entry point returns an
//! [`SbpStatus`]; on failure a message is available from
//! [`sbp_last_error`] until the next call on the same thread. Strings
//! returned through `char **` are owned by the caller and released with
//! [`sbp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use sbp_core::action::{synthesize, ActionError, PseudoAction};
use sbp_core::catalog;
use sbp_core::enumerate::{enumerate_pseudo_actions, EnumerationError, SearchConfig, DEFAULT_BUDGET};
use sbp_core::io::{self, ActionInput, BundleInput, LoadError, Workspace};
use sbp_core::monoid::FiniteMonoid;
use sbp_core::semibiproduct::{extract_pseudo_action, is_schreier, SemiBiproduct};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SbpStatus {
    Ok = 0,
    /// A mathematical check failed; the message names the witness.
    CheckFailed = 1,
    InvalidArgument = 2,
    ParseError = 3,
    ValidationError = 4,
    BudgetExceeded = 5,
    NullPointer = 6,
    Panic = 7,
}

/// A loaded set of monoids, maps, pseudo-actions and bundles.
pub struct SbpWorkspace(Workspace);

/// A verified semi-biproduct.
pub struct SbpSemiBiproduct(SemiBiproduct);

/// A validated pseudo-action.
pub struct SbpPseudoAction(PseudoAction);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

struct Failure(SbpStatus, String);

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let status = match e {
            LoadError::Io { .. } => SbpStatus::InvalidArgument,
            LoadError::Parse { .. } => SbpStatus::ParseError,
            LoadError::DuplicateName(_) | LoadError::DanglingReference(_) | LoadError::Validation { .. } => {
                SbpStatus::ValidationError
            }
        };
        Failure(status, e.to_string())
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        Failure(SbpStatus::BudgetExceeded, e.to_string())
    }
}

impl From<ActionError> for Failure {
    fn from(e: ActionError) -> Self {
        let status = match e {
            ActionError::Shape { .. } | ActionError::IndexOutOfRange { .. } | ActionError::MonoidMismatch => {
                SbpStatus::ValidationError
            }
            _ => SbpStatus::CheckFailed,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SbpStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SbpStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SbpStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SbpStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SbpStatus::InvalidArgument, "string is not UTF-8".into()))
}

/// # Safety
/// `p` is null or points to a live handle.
unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Failure(SbpStatus::InvalidArgument, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// The message for the last failed call on this thread, or an empty
/// string. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn sbp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses one `sbp-1` document held in memory.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_workspace_from_json(json: *const c_char, out: *mut *mut SbpWorkspace) -> SbpStatus {
    guard(|| {
        let ws = io::parse_str(text(json)?, "<memory>")?;
        put(out, SbpWorkspace(ws))
    })
}

/// Reads one `sbp-1` file.
///
/// # Safety
/// `path` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_workspace_load(path: *const c_char, out: *mut *mut SbpWorkspace) -> SbpStatus {
    guard(|| {
        let ws = io::parse_inputs(&[text(path)?])?;
        put(out, SbpWorkspace(ws))
    })
}

/// # Safety
/// `ws` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbp_workspace_free(ws: *mut SbpWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Number of semi-biproduct bundles in the workspace.
///
/// # Safety
/// `ws` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_workspace_bundle_count(ws: *const SbpWorkspace, out: *mut usize) -> SbpStatus {
    guard(|| {
        let ws = handle(ws)?;
        out.as_mut().ok_or_else(null).map(|o| *o = ws.0.bundles.len())
    })
}

fn one<'a, T>(map: &'a std::collections::BTreeMap<String, T>, name: Option<&str>, what: &str) -> Result<&'a T, Failure> {
    match name {
        Some(n) => map.get(n).ok_or_else(|| Failure(SbpStatus::InvalidArgument, format!("no {what} named {n:?}"))),
        None if map.len() == 1 => Ok(map.values().next().expect("one entry")),
        None => Err(Failure(SbpStatus::InvalidArgument, format!("{} {what}s; a name is required", map.len()))),
    }
}

/// Verifies the bundle `name` (or the only bundle when `name` is null).
/// Returns `CheckFailed` with the witness in the message when an equation
/// fails.
///
/// # Safety
/// `ws` is a live handle; `name` is null or NUL-terminated; `out` is valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_verify(
    ws: *const SbpWorkspace,
    name: *const c_char,
    out: *mut *mut SbpSemiBiproduct,
) -> SbpStatus {
    guard(|| {
        let ws = handle(ws)?;
        let name = if name.is_null() { None } else { Some(text(name)?) };
        let bundle = one(&ws.0.bundles, name, "bundle")?;
        let sb = bundle.verify().map_err(|e| Failure(SbpStatus::CheckFailed, e.to_string()))?;
        put(out, SbpSemiBiproduct(sb))
    })
}

/// # Safety
/// `sb` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbp_semibiproduct_free(sb: *mut SbpSemiBiproduct) {
    if !sb.is_null() {
        drop(Box::from_raw(sb));
    }
}

/// Whether the correction system is trivial.
///
/// # Safety
/// `sb` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_is_schreier(sb: *const SbpSemiBiproduct, out: *mut bool) -> SbpStatus {
    guard(|| {
        let sb = handle(sb)?;
        out.as_mut().ok_or_else(null).map(|o| *o = is_schreier(&sb.0))
    })
}

/// `|A|` of the semi-biproduct.
///
/// # Safety
/// `sb` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_semibiproduct_order(sb: *const SbpSemiBiproduct, out: *mut usize) -> SbpStatus {
    guard(|| {
        let sb = handle(sb)?;
        out.as_mut().ok_or_else(null).map(|o| *o = sb.0.a().order())
    })
}

/// The bundle as an `sbp-1` document with inline monoids.
///
/// # Safety
/// `sb` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_semibiproduct_to_json(sb: *const SbpSemiBiproduct, out: *mut *mut c_char) -> SbpStatus {
    guard(|| {
        let sb = handle(sb)?;
        let doc = io::emit_bundle(None, &BundleInput::from_semibiproduct(&sb.0));
        put_string(out, doc.to_string())
    })
}

/// Reads off the pseudo-action of a semi-biproduct.
///
/// # Safety
/// `sb` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_extract(sb: *const SbpSemiBiproduct, out: *mut *mut SbpPseudoAction) -> SbpStatus {
    guard(|| {
        let sb = handle(sb)?;
        let pa = extract_pseudo_action(&sb.0).map_err(|e| Failure(SbpStatus::CheckFailed, e.to_string()))?;
        put(out, SbpPseudoAction(pa))
    })
}

/// Validates the pseudo-action `name` (or the only one when `name` is
/// null).
///
/// # Safety
/// `ws` is a live handle; `name` is null or NUL-terminated; `out` is valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_validate_action(
    ws: *const SbpWorkspace,
    name: *const c_char,
    out: *mut *mut SbpPseudoAction,
) -> SbpStatus {
    guard(|| {
        let ws = handle(ws)?;
        let name = if name.is_null() { None } else { Some(text(name)?) };
        let pa = one(&ws.0.actions, name, "pseudo-action")?.validate()?;
        put(out, SbpPseudoAction(pa))
    })
}

/// # Safety
/// `pa` is null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbp_pseudo_action_free(pa: *mut SbpPseudoAction) {
    if !pa.is_null() {
        drop(Box::from_raw(pa));
    }
}

/// The pseudo-action as an `sbp-1` document with inline monoids.
///
/// # Safety
/// `pa` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_pseudo_action_to_json(pa: *const SbpPseudoAction, out: *mut *mut c_char) -> SbpStatus {
    guard(|| {
        let pa = handle(pa)?;
        put_string(out, io::emit_action(None, &ActionInput::from_action(&pa.0)).to_string())
    })
}

/// Builds the synthetic semi-biproduct `X ⋊ B` of a pseudo-action.
///
/// # Safety
/// `pa` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_synthesize(pa: *const SbpPseudoAction, out: *mut *mut SbpSemiBiproduct) -> SbpStatus {
    guard(|| {
        let pa = handle(pa)?;
        let (_, sb) = synthesize(&pa.0)?;
        put(out, SbpSemiBiproduct(sb))
    })
}

fn monoid(ws: Option<&SbpWorkspace>, name: &str) -> Result<Arc<FiniteMonoid>, Failure> {
    if let Some(m) = ws.and_then(|w| w.0.monoids.get(name)) {
        return Ok(m.clone());
    }
    catalog::builtin(name)
        .map(Arc::new)
        .ok_or_else(|| Failure(SbpStatus::InvalidArgument, format!("unknown monoid {name:?}")))
}

/// All pseudo-actions of `b` on `x` as JSON lines, one `sbp-1` document per
/// line in table order. Monoids are looked up in `ws` (which may be null)
/// and then among the builtin names. A `budget` of 0 selects the default.
///
/// # Safety
/// `ws` is null or a live handle; `x` and `b` are NUL-terminated; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sbp_enumerate_actions_jsonl(
    ws: *const SbpWorkspace,
    x: *const c_char,
    b: *const c_char,
    budget: u64,
    out: *mut *mut c_char,
) -> SbpStatus {
    guard(|| {
        let ws = ws.as_ref();
        let (x, b) = (monoid(ws, text(x)?)?, monoid(ws, text(b)?)?);
        let config = SearchConfig { budget: if budget == 0 { DEFAULT_BUDGET } else { budget }, ..Default::default() };
        let actions = enumerate_pseudo_actions(&x, &b, &config)?;
        let mut lines = String::new();
        for pa in &actions {
            lines.push_str(&io::emit_action(None, &ActionInput::from_action(pa)).to_string());
            lines.push('\n');
        }
        put_string(out, lines)
    })
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
