//! C ABI for `codeloop`.
//!
//! Objects are opaque handles created by `cl_*_new`/`cl_*_parse`/`cl_build_*`
//! and released with the matching `cl_*_free`. Every fallible call returns a
//! [`ClStatus`]; on failure `cl_last_error` gives a message for the calling
//! thread. Strings returned through `char **` outputs are owned by the caller
//! and must be released with `cl_string_free`. Panics never cross the
//! boundary; they surface as `CL_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use codeloop::codes::{build_code, verify_build, BuildOptions, CodeBuild, SimplexCode};
use codeloop::loops::{p_from_loop, CodeLoop, LoopElement};
use codeloop::polarization::comb_degree_formula;
use codeloop::{CombDegree, Error, FieldCtx, ReducedPoly};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Invalid = 4,
    Degree = 5,
    CapExceeded = 6,
    FieldMismatch = 7,
    NotDoublyEven = 8,
    Verification = 9,
    Internal = 10,
    Panic = 11,
}

impl From<&Error> for ClStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => ClStatus::Parse,
            Error::Degree(_) => ClStatus::Degree,
            Error::CapExceeded { .. } => ClStatus::CapExceeded,
            Error::FieldMismatch(_) => ClStatus::FieldMismatch,
            Error::NotDoublyEven(_) => ClStatus::NotDoublyEven,
            Error::Internal(_) => ClStatus::Internal,
            _ => ClStatus::Invalid,
        }
    }
}

/// A finite field GF(p^e).
pub struct ClField(FieldCtx);

/// A reduced polynomial map over a field.
pub struct ClPoly(ReducedPoly);

/// A code built from a GF(2) map together with its embedding.
pub struct ClCodeBuild(CodeBuild);

/// A code loop with its Cayley table.
pub struct ClLoop(CodeLoop);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(ClStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(ClStatus::from(&e), e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// Runs `f`, records any failure message, and contains panics.
fn guard(f: impl FnOnce() -> Res<()>) -> ClStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            ClStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ClStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(ClStatus::Utf8, format!("{what} is not UTF-8: {e}")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates GF(p^e).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_field_new(p: u32, e: u32, out: *mut *mut ClField) -> ClStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(ClField(FieldCtx::new(p, e)?));
        Ok(())
    })
}

/// Creates a field from a spec such as "3^2" or "5".
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_field_parse(spec: *const c_char, out: *mut *mut ClField) -> ClStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let out = out_ptr(out, "out")?;
        *out = boxed(ClField(spec.parse()?));
        Ok(())
    })
}

/// Order q of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_field_order(field: *const ClField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.order())
}

/// # Safety
/// `field` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cl_field_free(field: *mut ClField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Parses a polynomial such as "x1^3*x2^7 + x1*x2*x3^5". A negative `vars`
/// takes the number of variables from the largest index used.
///
/// # Safety
/// `field` must be a live handle, `src` a nul-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_parse(
    field: *const ClField,
    src: *const c_char,
    vars: i32,
    out: *mut *mut ClPoly,
) -> ClStatus {
    guard(|| {
        let field = deref(field, "field")?;
        let src = read_str(src, "src")?;
        let out = out_ptr(out, "out")?;
        let n = usize::try_from(vars).ok();
        *out = boxed(ClPoly(ReducedPoly::parse(&field.0, n, src)?));
        Ok(())
    })
}

/// # Safety
/// `poly` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_free(poly: *mut ClPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_arity(poly: *const ClPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.arity())
}

/// Canonical text of the reduced polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_to_string(poly: *const ClPoly, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let poly = deref(poly, "poly")?;
        *out_ptr(out, "out")? = to_c_string(poly.0.to_string());
        Ok(())
    })
}

/// Combinatorial degree by the p-weight formula; -1 stands for infinity.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_comb_degree(poly: *const ClPoly, out: *mut i64) -> ClStatus {
    guard(|| {
        let poly = deref(poly, "poly")?;
        *out_ptr(out, "out")? = match comb_degree_formula(&poly.0) {
            CombDegree::Finite(d) => d as i64,
            CombDegree::Infinite => -1,
        };
        Ok(())
    })
}

/// Evaluates at a point given as `len` element encodings.
///
/// # Safety
/// `poly` must be a live handle, `point` must hold `len` values, and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_poly_eval(
    poly: *const ClPoly,
    point: *const u32,
    len: usize,
    out: *mut u32,
) -> ClStatus {
    guard(|| {
        let poly = deref(poly, "poly")?;
        let out = out_ptr(out, "out")?;
        let raw: &[u32] = if len == 0 {
            &[]
        } else if point.is_null() {
            return Err(null("point"));
        } else {
            std::slice::from_raw_parts(point, len)
        };
        let field = poly.0.field();
        let v = raw
            .iter()
            .map(|&x| field.element(x))
            .collect::<Result<Vec<_>, _>>()?;
        *out = poly.0.evaluate(&v)?.encoding();
        Ok(())
    })
}

/// Builds the code of level `cdeg P − 1`. `block_dim` 0 keeps the default;
/// `worked_example_simplex` selects the built-in dimension-3 simplex
/// generator; `order` is null or a family such as "1,2;2,3;1,2,3".
///
/// # Safety
/// `poly` must be a live handle, `order` null or a nul-terminated string,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_build_code(
    poly: *const ClPoly,
    block_dim: usize,
    worked_example_simplex: bool,
    order: *const c_char,
    out: *mut *mut ClCodeBuild,
) -> ClStatus {
    guard(|| {
        let poly = deref(poly, "poly")?;
        let out = out_ptr(out, "out")?;
        let mut opts = BuildOptions {
            block_dim: (block_dim > 0).then_some(block_dim),
            ..BuildOptions::default()
        };
        if worked_example_simplex {
            opts.simplex = Some(SimplexCode::worked_example());
        }
        if !order.is_null() {
            opts.order = Some(read_str(order, "order")?.parse()?);
        }
        *out = boxed(ClCodeBuild(build_code(&poly.0, &opts)?));
        Ok(())
    })
}

/// # Safety
/// `build` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_free(build: *mut ClCodeBuild) {
    if !build.is_null() {
        drop(Box::from_raw(build));
    }
}

/// Dimension of the code, or 0 for a null handle.
///
/// # Safety
/// `build` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_dim(build: *const ClCodeBuild) -> usize {
    build.as_ref().map_or(0, |b| b.0.code().dimension())
}

/// Ambient length of the code, or 0 for a null handle.
///
/// # Safety
/// `build` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_length(build: *const ClCodeBuild) -> usize {
    build.as_ref().map_or(0, |b| b.0.code().length())
}

/// The `r` with `w(π(x))/2^r ≡ P(x)`, or 0 for a null handle.
///
/// # Safety
/// `build` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_level(build: *const ClCodeBuild) -> u32 {
    build.as_ref().map_or(0, |b| b.0.level_target())
}

/// Generator row `i` (the image of `e_{i+1}`) as comma-separated blocks.
///
/// # Safety
/// `build` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_row(
    build: *const ClCodeBuild,
    i: usize,
    out: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let build = deref(build, "build")?;
        let out = out_ptr(out, "out")?;
        let row = build.0.code().rows().get(i).ok_or_else(|| {
            Failure(ClStatus::Invalid, format!("row {i} out of range"))
        })?;
        *out = to_c_string(row.to_blocks(build.0.block_length()));
        Ok(())
    })
}

/// Runs the full verification; writes the JSON report to `report` (if not
/// null) and returns `CL_STATUS_VERIFICATION` when it lists violations.
///
/// # Safety
/// `build` must be a live handle; `report` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_code_build_verify(
    build: *const ClCodeBuild,
    report: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let build = deref(build, "build")?;
        let rep = verify_build(&build.0)?;
        if let Some(out) = report.as_mut() {
            *out = to_c_string(serde_json::to_string(&rep).expect("reports serialize"));
        }
        if rep.ok() {
            Ok(())
        } else {
            Err(Failure(ClStatus::Verification, rep.violations.join("; ")))
        }
    })
}

/// Solves a factor set for the built code and forms its loop.
///
/// # Safety
/// `build` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_from_build(build: *const ClCodeBuild, out: *mut *mut ClLoop) -> ClStatus {
    guard(|| {
        let build = deref(build, "build")?;
        let out = out_ptr(out, "out")?;
        *out = boxed(ClLoop(CodeLoop::from_code(build.0.code())?));
        Ok(())
    })
}

/// # Safety
/// `l` must be null or a live handle, freed once.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_free(l: *mut ClLoop) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_order(l: *const ClLoop) -> usize {
    l.as_ref().map_or(0, |l| l.0.order())
}

/// Product of elements given by index (`2·x + a` for `(x, a)`).
///
/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_mul(l: *const ClLoop, u: usize, v: usize, out: *mut usize) -> ClStatus {
    guard(|| {
        let l = deref(l, "loop")?;
        let out = out_ptr(out, "out")?;
        let order = l.0.order();
        if u >= order || v >= order {
            return Err(Failure(
                ClStatus::Invalid,
                format!("element index out of range for a loop of order {order}"),
            ));
        }
        *out = l.0.mul(LoopElement::from_index(u), LoopElement::from_index(v)).index();
        Ok(())
    })
}

/// Checks the Latin-square, Moufang and code loop identities and that the
/// squaring map has combinatorial degree at most 3. Writes the JSON report
/// to `report` (if not null); returns `CL_STATUS_VERIFICATION` on violations.
///
/// # Safety
/// `l` must be a live handle; `report` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_verify(l: *const ClLoop, report: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let l = deref(l, "loop")?;
        let mut rep = l.0.verify_identities()?;
        if let Err(e) = p_from_loop(&l.0) {
            rep.violations.push(format!("squaring map: {e}"));
        }
        if let Some(out) = report.as_mut() {
            *out = to_c_string(serde_json::to_string(&rep).expect("reports serialize"));
        }
        if rep.ok() {
            Ok(())
        } else {
            Err(Failure(ClStatus::Verification, rep.violations.join("; ")))
        }
    })
}

/// The loop as JSON: order, η bit matrix and Cayley table.
///
/// # Safety
/// `l` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cl_loop_export_json(l: *const ClLoop, out: *mut *mut c_char) -> ClStatus {
    guard(|| {
        let l = deref(l, "loop")?;
        *out_ptr(out, "out")? = to_c_string(l.0.to_json().to_string());
        Ok(())
    })
}
