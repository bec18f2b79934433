//! C ABI over the decision engine.
//!
//! Conventions: every function returns a `PflStatus`; results come back
//! through out-pointers. Strings returned by this library are heap-allocated
//! and must be released with `pfl_string_free`. Handles are opaque and freed
//! with their matching `_free` function. On any non-OK status,
//! `pfl_last_error` returns a thread-local message valid until the next
//! failing call on the same thread.

use profilium::engine::{EngineError, Kind, ModuleCategory};
use profilium::report;
use profilium::rings::{build_category, AnyCategory, UniverseBounds};
use profilium::verify::SuiteId;
use profilium::with_category;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PflStatus {
    /// Success.
    PflOk = 0,
    /// A verification suite ran and reported at least one violation.
    PflSuiteFailure = 1,
    /// Unparseable input or an operation the ring family does not support.
    PflInvalidInput = 2,
    /// A required pointer argument was null.
    PflNullPointer = 3,
    /// Internal panic; the handle remains usable.
    PflPanic = 4,
}

/// Opaque handle to a ring family plus its finite universe.
pub struct PflRing {
    cat: AnyCategory,
}

/// Opaque handle to a parsed module, canonicalized against its ring.
pub struct PflModule {
    literal: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let owned = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = owned);
}

fn fail(status: PflStatus, msg: &str) -> PflStatus {
    set_error(msg);
    status
}

fn engine_fail(e: &EngineError) -> PflStatus {
    fail(PflStatus::PflInvalidInput, &e.to_string())
}

/// Last error message for this thread; empty string when no error has been
/// recorded. The pointer stays valid until the next failing call on the
/// same thread.
#[no_mangle]
pub extern "C" fn pfl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, PflStatus> {
    if ptr.is_null() {
        return Err(fail(PflStatus::PflNullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(PflStatus::PflInvalidInput, "string argument is not UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> PflStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PflStatus::PflOk
        }
        Err(_) => fail(PflStatus::PflInvalidInput, "output contained an interior NUL"),
    }
}

fn guarded(f: impl FnOnce() -> PflStatus) -> PflStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(PflStatus::PflPanic, "internal panic"),
    }
}

/// Builds a ring handle from a spec string (`Z`, `Zmod:<p>^<k>`, or
/// `A<n>:<orient>;q=<p>`). `primes`/`primes_len` may be null/0 to keep the
/// default {2, 3}; the bounds apply to the integer family only.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `primes` must point to
/// `primes_len` readable values when non-null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_ring_new(
    spec: *const c_char,
    primes: *const u64,
    primes_len: usize,
    maxexp: u32,
    maxrank: usize,
    out: *mut *mut PflRing,
) -> PflStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PflStatus::PflNullPointer, "null out pointer");
        }
        let spec = match read_str(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let mut bounds = UniverseBounds::default();
        bounds.maxexp = maxexp;
        bounds.maxrank = maxrank;
        if !primes.is_null() && primes_len > 0 {
            bounds.primes = slice::from_raw_parts(primes, primes_len).to_vec();
        }
        match build_category(spec, &bounds) {
            Ok(cat) => {
                *out = Box::into_raw(Box::new(PflRing { cat }));
                PflStatus::PflOk
            }
            Err(e) => engine_fail(&e),
        }
    })
}

/// # Safety
/// `ring` must be a pointer returned by `pfl_ring_new` (or null).
#[no_mangle]
pub unsafe extern "C" fn pfl_ring_free(ring: *mut PflRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Parses a module literal against the ring and returns an opaque handle
/// holding its canonical form.
///
/// # Safety
/// `ring` must be a live ring handle; `literal` a NUL-terminated string;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_module_parse(
    ring: *const PflRing,
    literal: *const c_char,
    out: *mut *mut PflModule,
) -> PflStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        let literal = match read_str(literal) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let canonical = with_category!(&(*ring).cat, |cat| cat
            .parse(literal)
            .map(|m| m.to_string()));
        match canonical {
            Ok(literal) => {
                *out = Box::into_raw(Box::new(PflModule { literal }));
                PflStatus::PflOk
            }
            Err(e) => engine_fail(&e),
        }
    })
}

/// # Safety
/// `module` must be a pointer returned by `pfl_module_parse` (or null).
#[no_mangle]
pub unsafe extern "C" fn pfl_module_free(module: *mut PflModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Canonical literal of a parsed module; release with `pfl_string_free`.
///
/// # Safety
/// `module` must be a live module handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_module_literal(
    module: *const PflModule,
    out: *mut *mut c_char,
) -> PflStatus {
    guarded(|| {
        if module.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        give_string((*module).literal.clone(), out)
    })
}

unsafe fn decide(
    ring: *const PflRing,
    m: *const PflModule,
    n: *const PflModule,
    kind: Kind,
    out: *mut bool,
) -> PflStatus {
    if ring.is_null() || m.is_null() || n.is_null() || out.is_null() {
        return fail(PflStatus::PflNullPointer, "null handle");
    }
    let verdict = with_category!(&(*ring).cat, |cat| {
        (|| -> Result<bool, EngineError> {
            let mm = cat.parse(&(*m).literal)?;
            let nn = cat.parse(&(*n).literal)?;
            profilium::engine::membership(cat, kind, &mm, &nn)
        })()
    });
    match verdict {
        Ok(v) => {
            *out = v;
            PflStatus::PflOk
        }
        Err(e) => engine_fail(&e),
    }
}

/// Decides whether `m` is `n`-subprojective.
///
/// # Safety
/// All handles must be live and created against the same ring; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_is_subprojective(
    ring: *const PflRing,
    m: *const PflModule,
    n: *const PflModule,
    out: *mut bool,
) -> PflStatus {
    guarded(|| decide(ring, m, n, Kind::Sp, out))
}

/// Decides whether `m` is `n`-subinjective.
///
/// # Safety
/// As for `pfl_is_subprojective`.
#[no_mangle]
pub unsafe extern "C" fn pfl_is_subinjective(
    ring: *const PflRing,
    m: *const PflModule,
    n: *const PflModule,
    out: *mut bool,
) -> PflStatus {
    guarded(|| decide(ring, m, n, Kind::Si, out))
}

fn parse_kind(kind: &str) -> Result<Kind, PflStatus> {
    Kind::parse(kind).map_err(|e| engine_fail(&e))
}

/// JSON domain report for the module literal held by `m`; `kind` is "sp" or
/// "si". Release the string with `pfl_string_free`.
///
/// # Safety
/// `ring` and `m` must be live handles; `kind` NUL-terminated; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_domain_json(
    ring: *const PflRing,
    m: *const PflModule,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> PflStatus {
    guarded(|| {
        if ring.is_null() || m.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        let kind = match read_str(kind).and_then(|k| parse_kind(k)) {
            Ok(k) => k,
            Err(status) => return status,
        };
        match report::domain_report(&(*ring).cat, kind, &(*m).literal, &mut None) {
            Ok(v) => give_string(report::to_json_line(&v), out),
            Err(e) => engine_fail(&e),
        }
    })
}

/// JSON profile report; `kind` is "sp" or "si".
///
/// # Safety
/// `ring` must be a live handle; `kind` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_profile_json(
    ring: *const PflRing,
    kind: *const c_char,
    out: *mut *mut c_char,
) -> PflStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        let kind = match read_str(kind).and_then(|k| parse_kind(k)) {
            Ok(k) => k,
            Err(status) => return status,
        };
        match report::profile_report(&(*ring).cat, kind) {
            Ok(v) => give_string(report::to_json_line(&v), out),
            Err(e) => engine_fail(&e),
        }
    })
}

/// Runs verification suites (`"all"` or a comma-separated list like
/// `"S9,S16"`) and returns the JSON report. Returns `PflSuiteFailure` when
/// any check fails; the report is still written to `out`.
///
/// # Safety
/// `ring` must be a live handle; `suites` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_verify_json(
    ring: *const PflRing,
    suites: *const c_char,
    out: *mut *mut c_char,
) -> PflStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        let suites = match read_str(suites) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let ids: Result<Vec<SuiteId>, EngineError> =
            if suites.trim().eq_ignore_ascii_case("all") {
                Ok(SuiteId::all())
            } else {
                suites
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(SuiteId::parse)
                    .collect()
            };
        let ids = match ids {
            Ok(ids) => ids,
            Err(e) => return engine_fail(&e),
        };
        match report::verify_report(&(*ring).cat, &ids) {
            Ok((v, all_passed)) => {
                let status = give_string(report::to_json_line(&v), out);
                if status != PflStatus::PflOk {
                    return status;
                }
                if all_passed {
                    PflStatus::PflOk
                } else {
                    fail(PflStatus::PflSuiteFailure, "at least one suite reported a violation")
                }
            }
            Err(e) => engine_fail(&e),
        }
    })
}

/// Number of indecomposables in the ring's universe.
///
/// # Safety
/// `ring` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pfl_universe_size(
    ring: *const PflRing,
    out: *mut usize,
) -> PflStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            return fail(PflStatus::PflNullPointer, "null handle");
        }
        *out = with_category!(&(*ring).cat, |cat| cat.indecomposables().len());
        PflStatus::PflOk
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `_json`/`_literal` function (or be
/// null), and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pfl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn ring(spec: &str) -> *mut PflRing {
        let spec = CString::new(spec).unwrap();
        let mut out: *mut PflRing = ptr::null_mut();
        let status = pfl_ring_new(spec.as_ptr(), ptr::null(), 0, 2, 1, &mut out);
        assert_eq!(status, PflStatus::PflOk);
        assert!(!out.is_null());
        out
    }

    unsafe fn module(r: *const PflRing, lit: &str) -> *mut PflModule {
        let lit = CString::new(lit).unwrap();
        let mut out: *mut PflModule = ptr::null_mut();
        let status = pfl_module_parse(r, lit.as_ptr(), &mut out);
        assert_eq!(status, PflStatus::PflOk);
        out
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        pfl_string_free(p);
        s
    }

    #[test]
    fn decision_round_trip() {
        unsafe {
            let r = ring("Z");
            let m = module(r, "Z/4");
            let n = module(r, "Z/3");
            let mut verdict = false;
            assert_eq!(pfl_is_subprojective(r, m, n, &mut verdict), PflStatus::PflOk);
            assert!(verdict);
            let n2 = module(r, "Z/2");
            assert_eq!(pfl_is_subprojective(r, m, n2, &mut verdict), PflStatus::PflOk);
            assert!(!verdict);
            pfl_module_free(m);
            pfl_module_free(n);
            pfl_module_free(n2);
            pfl_ring_free(r);
        }
    }

    #[test]
    fn canonical_literals_round_trip() {
        unsafe {
            let r = ring("Zmod:2^3");
            let m = module(r, "Z/2+Z/4");
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(pfl_module_literal(m, &mut out), PflStatus::PflOk);
            assert_eq!(take_string(out), "Z/4 + Z/2");
            pfl_module_free(m);
            pfl_ring_free(r);
        }
    }

    #[test]
    fn bad_input_reports_invalid_with_message() {
        unsafe {
            let spec = CString::new("Zmod:6^2").unwrap();
            let mut out: *mut PflRing = ptr::null_mut();
            let status = pfl_ring_new(spec.as_ptr(), ptr::null(), 0, 2, 1, &mut out);
            assert_eq!(status, PflStatus::PflInvalidInput);
            let msg = CStr::from_ptr(pfl_last_error()).to_str().unwrap();
            assert!(!msg.is_empty());

            let r = ring("Z");
            let lit = CString::new("Z/5").unwrap();
            let mut m: *mut PflModule = ptr::null_mut();
            assert_eq!(
                pfl_module_parse(r, lit.as_ptr(), &mut m),
                PflStatus::PflInvalidInput
            );
            pfl_ring_free(r);
        }
    }

    #[test]
    fn si_over_z_is_invalid_input() {
        unsafe {
            let r = ring("Z");
            let m = module(r, "Z/2");
            let mut verdict = false;
            assert_eq!(
                pfl_is_subinjective(r, m, m, &mut verdict),
                PflStatus::PflInvalidInput
            );
            let msg = CStr::from_ptr(pfl_last_error()).to_str().unwrap();
            assert!(msg.contains("injective envelopes"), "{msg}");
            pfl_module_free(m);
            pfl_ring_free(r);
        }
    }

    #[test]
    fn null_pointers_are_rejected() {
        unsafe {
            let mut verdict = false;
            assert_eq!(
                pfl_is_subprojective(ptr::null(), ptr::null(), ptr::null(), &mut verdict),
                PflStatus::PflNullPointer
            );
            let mut out: *mut PflRing = ptr::null_mut();
            assert_eq!(
                pfl_ring_new(ptr::null(), ptr::null(), 0, 2, 1, &mut out),
                PflStatus::PflNullPointer
            );
        }
    }

    #[test]
    fn json_reports_come_back_as_strings() {
        unsafe {
            let r = ring("Zmod:2^3");
            let m = module(r, "Z/2");
            let kind = CString::new("sp").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(pfl_domain_json(r, m, kind.as_ptr(), &mut out), PflStatus::PflOk);
            let text = take_string(out);
            assert!(text.starts_with('{') && text.ends_with('\n'));
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["domains"][0]["members"][0], "Z/8");

            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(pfl_profile_json(r, kind.as_ptr(), &mut out), PflStatus::PflOk);
            let v: serde_json::Value =
                serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(v["profile"]["classes"].as_array().unwrap().len(), 2);

            let suites = CString::new("all").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(pfl_verify_json(r, suites.as_ptr(), &mut out), PflStatus::PflOk);
            let v: serde_json::Value =
                serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(v["verify"]["all_passed"], true);

            let mut size = 0usize;
            assert_eq!(pfl_universe_size(r, &mut size), PflStatus::PflOk);
            assert_eq!(size, 3);

            pfl_module_free(m);
            pfl_ring_free(r);
        }
    }

    #[test]
    fn primes_array_overrides_the_default_universe() {
        unsafe {
            let spec = CString::new("Z").unwrap();
            let primes = [5u64, 2];
            let mut r: *mut PflRing = ptr::null_mut();
            assert_eq!(
                pfl_ring_new(spec.as_ptr(), primes.as_ptr(), 2, 1, 1, &mut r),
                PflStatus::PflOk
            );
            let mut size = 0usize;
            assert_eq!(pfl_universe_size(r, &mut size), PflStatus::PflOk);
            // Z plus one torsion module per prime at exponent 1.
            assert_eq!(size, 3);
            pfl_ring_free(r);
        }
    }
}
