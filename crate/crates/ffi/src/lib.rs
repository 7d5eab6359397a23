//! C ABI over `superstab`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free`. Every fallible call returns an [`SsStatus`]; on
//! failure `ss_last_error` describes the cause. Strings returned through out
//! parameters are owned by the caller and released with `ss_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Map, Value};
use superstab::combinat::Subset;
use superstab::envelope::{gkm_check, stab, verify_axioms, StabClass};
use superstab::exactalg::json::{lfp_to_json, matrix_to_json, poly_to_json};
use superstab::fixedpoints::VersionTag;
use superstab::rmatrix::{closed_form_r, geometric_r, yang_baxter_check, yangian_r};
use superstab::weightfn::{parse_spec, weight_function, SymmetrizedRF, WeightFunctionSpec};
use superstab::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Guard = 5,
    NoSolution = 6,
    Computation = 7,
    Panic = 8,
}

/// Matrix families accepted by `ss_rmatrix_json`.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SsMatrixKind {
    Closed = 0,
    Yangian = 1,
    YangianCheck = 2,
}

pub struct SsWeightFunction {
    spec: WeightFunctionSpec,
    w: SymmetrizedRF,
}

pub struct SsStabClass {
    class: StabClass,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SsStatus {
    match e {
        Error::Parse(_) => SsStatus::Parse,
        Error::Domain(_) | Error::SizeMismatch(_) => SsStatus::Domain,
        Error::GuardViolation { .. } => SsStatus::Guard,
        Error::NoSolution { .. } => SsStatus::NoSolution,
        _ => SsStatus::Computation,
    }
}

struct Fail(SsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SsStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SsStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SsStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SsStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(SsStatus::NullArgument, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SsStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(SsStatus::Computation, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn subset_key(s: &Subset) -> String {
    if s.k() == 0 {
        "none".into()
    } else {
        s.elems().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Message for the most recent failure on this thread. Empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn ss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `W^(r)_{σ,I}`. `sigma` is one-line notation ("" or "id" for the
/// identity); `subset` is a comma list or "none".
///
/// # Safety
/// String arguments must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_weight_new(
    r: *const c_char,
    n: u32,
    sigma: *const c_char,
    subset: *const c_char,
    out: *mut *mut SsWeightFunction,
) -> SsStatus {
    guard(|| {
        let spec = parse_spec(str_arg(r, "r")?, n as usize, str_arg(sigma, "sigma")?, str_arg(subset, "subset")?)?;
        let w = weight_function(&spec);
        put(out, Box::into_raw(Box::new(SsWeightFunction { spec, w })))
    })
}

/// # Safety
/// `h` must be null or a handle from `ss_weight_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_weight_free(h: *mut SsWeightFunction) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Human-readable sum of symmetrized terms.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_weight_to_string(h: *const SsWeightFunction, out: *mut *mut c_char) -> SsStatus {
    guard(|| put_string(out, ref_arg(h, "handle")?.w.to_string()))
}

/// `{ "r", "n", "k", "sigma", "subset", "terms": [...] }`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_weight_to_json(h: *const SsWeightFunction, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let h = ref_arg(h, "handle")?;
        let s = &h.spec;
        let v = json!({
            "r": s.r.as_str(), "n": s.n(), "k": s.k(), "sigma": s.sigma.to_string(), "subset": subset_key(&s.subset),
            "terms": h.w.terms().iter().map(lfp_to_json).collect::<Vec<_>>(),
        });
        put_string(out, v.to_string())
    })
}

/// Restriction to the fixed point `subset` as polynomial JSON.
///
/// # Safety
/// `h` must be a live handle; `subset` NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ss_weight_restrict_json(
    h: *const SsWeightFunction,
    subset: *const c_char,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let h = ref_arg(h, "handle")?;
        let j = Subset::parse(h.spec.n(), str_arg(subset, "subset")?)?;
        if j.k() != h.spec.k() {
            return Err(Fail(SsStatus::Domain, format!("fixed point {j} has size {} not {}", j.k(), h.spec.k())));
        }
        let p = h.w.restrict(&j)?;
        put_string(out, poly_to_json(&p, 0, h.spec.n()).to_string())
    })
}

/// The class `κ^(r)_{σ,I}` of a weight function.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_stab_new(h: *const SsWeightFunction, out: *mut *mut SsStabClass) -> SsStatus {
    guard(|| {
        let class = stab(&ref_arg(h, "handle")?.spec)?;
        put(out, Box::into_raw(Box::new(SsStabClass { class })))
    })
}

/// # Safety
/// `h` must be null or a handle from `ss_stab_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ss_stab_free(h: *mut SsStabClass) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `{ "subset-key": polynomial, ... }`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_stab_to_json(h: *const SsStabClass, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let c = &ref_arg(h, "handle")?.class.gkm;
        let map: Map<String, Value> =
            c.components().iter().map(|(j, p)| (subset_key(j), poly_to_json(p, 0, c.n()))).collect();
        put_string(out, Value::Object(map).to_string())
    })
}

/// `{ "A0": {"pass", "witness"}, ... }`; `all_pass` receives the conjunction.
///
/// # Safety
/// `h` must be a live handle; `out` and `all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_stab_axioms_json(h: *const SsStabClass, all_pass: *mut bool, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let rep = verify_axioms(&ref_arg(h, "handle")?.class);
        let map: Map<String, Value> = rep
            .checks()
            .iter()
            .map(|(n, c)| (n.to_string(), json!({ "pass": c.pass, "witness": c.witness })))
            .collect();
        put(all_pass, rep.all_pass())?;
        put_string(out, Value::Object(map).to_string())
    })
}

/// Number of GKM violations of the class.
///
/// # Safety
/// `h` must be a live handle; `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_stab_gkm_violations(h: *const SsStabClass, violations: *mut u32) -> SsStatus {
    guard(|| put(violations, gkm_check(&ref_arg(h, "handle")?.class.gkm).len() as u32))
}

/// A 4×4 R-matrix of version `r` as JSON.
///
/// # Safety
/// `r` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_rmatrix_json(r: *const c_char, kind: SsMatrixKind, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let r: VersionTag = str_arg(r, "r")?.parse()?;
        let m = match kind {
            SsMatrixKind::Closed => closed_form_r(r),
            SsMatrixKind::Yangian => yangian_r(r).0,
            SsMatrixKind::YangianCheck => yangian_r(r).1,
        };
        let labels = ["v1⊗v1", "v1⊗v2", "v2⊗v1", "v2⊗v2"].map(String::from);
        put_string(out, matrix_to_json(&m.entries, &labels, 0).to_string())
    })
}

/// The geometric R-matrix on `(C^2)^{⊗n}` for `(σ, a)`, `n ≤ 3`.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_geometric_r_json(
    r: *const c_char,
    n: u32,
    sigma: *const c_char,
    a: u32,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let spec = parse_spec(str_arg(r, "r")?, n as usize, str_arg(sigma, "sigma")?, "none")?;
        let n = n as usize;
        if a == 0 || a as usize >= n {
            return Err(Fail(SsStatus::Domain, format!("a = {a} outside 1..{}", n.saturating_sub(1))));
        }
        let g = geometric_r(spec.r, n, &spec.sigma, a as usize)?;
        put_string(out, matrix_to_json(g.matrix(), &g.labels(), n).to_string())
    })
}

/// Yang-Baxter check for the closed-form (`yangian = false`) or Yangian
/// R-matrix of version `r`.
///
/// # Safety
/// `r` must be NUL-terminated; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_yang_baxter(r: *const c_char, yangian: bool, holds: *mut bool) -> SsStatus {
    guard(|| {
        let r: VersionTag = str_arg(r, "r")?.parse()?;
        let m = if yangian { yangian_r(r).0 } else { closed_form_r(r) };
        put(holds, yang_baxter_check(&m)?)
    })
}
