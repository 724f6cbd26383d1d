//! C ABI for the taukit library: opaque handles, status codes, and
//! decimal-string getters for values that exceed 64 bits.
//!
//! Conventions:
//! * Constructors return a handle through an out-parameter and a
//!   [`TaukitStatus`]; every handle must be released with the matching
//!   `*_free` function.
//! * Integers with unbounded magnitude (τ values, Hensel witnesses) are
//!   written into caller-provided buffers as NUL-terminated decimal
//!   strings.  When the buffer is too small the required size (including
//!   the NUL) is reported through `len_out` and `BufferTooSmall` is
//!   returned.
//! * No function panics across the boundary; invalid inputs map to status
//!   codes.

use std::ffi::{c_char, CStr};
use std::os::raw::c_int;

use taukit::congruence::{verify_congruence, CongruenceLaw};
use taukit::elliptic::{reduce_curve, CurveSpec, ReductionKind};
use taukit::padic::{
    has_root_in_zp, hensel_lift, is_square_in_qp, IntPolynomial, RootVerdict, Valuation,
};
use taukit::tau::{
    compute_tau_table, tau_extended, verify_conjecture_one, verify_deligne_bound,
    verify_eigenform, TauTable,
};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaukitStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    ComputeFailed = 4,
}

/// Verdict of a Z_p root search.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaukitRootVerdict {
    CertifiedNo = 0,
    CertifiedYes = 1,
    Inconclusive = 2,
}

/// Opaque τ table handle.
pub struct TaukitTauTable(TauTable);

/// Opaque curve handle.
pub struct TaukitCurve(CurveSpec);

/// Reduction of a curve at one prime.  `a_p` is meaningful only when
/// `has_a_p` is true (good reduction).
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct TaukitReduction {
    pub p: u64,
    pub good: bool,
    pub affine_count: u64,
    pub has_a_p: bool,
    pub a_p: i64,
}

/// Aggregate outcome of a verification sweep.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TaukitSweepSummary {
    pub checked: u64,
    pub failures: u64,
}

fn write_decimal(
    value: &str,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    let needed = value.len() + 1;
    if !len_out.is_null() {
        unsafe { *len_out = needed };
    }
    if buf.is_null() || cap < needed {
        return TaukitStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(value.as_ptr(), buf.cast::<u8>(), value.len());
        *buf.add(value.len()) = 0;
    }
    TaukitStatus::Ok
}

/// Collect an i64 coefficient array (constant term first) into a
/// polynomial.
///
/// # Safety
/// `coeffs` must point to `len` readable i64 values.
unsafe fn polynomial_from_raw(coeffs: *const i64, len: usize) -> Option<IntPolynomial> {
    if coeffs.is_null() || len == 0 {
        return None;
    }
    let slice = std::slice::from_raw_parts(coeffs, len);
    IntPolynomial::from_i64(slice).ok()
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn taukit_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Compute the τ table for 1 <= n <= max_n.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_table_compute(
    max_n: u64,
    out: *mut *mut TaukitTauTable,
) -> TaukitStatus {
    if out.is_null() {
        return TaukitStatus::NullPointer;
    }
    let Ok(max_n) = usize::try_from(max_n) else {
        return TaukitStatus::InvalidArgument;
    };
    match std::panic::catch_unwind(|| compute_tau_table(max_n)) {
        Ok(Ok(table)) => {
            *out = Box::into_raw(Box::new(TaukitTauTable(table)));
            TaukitStatus::Ok
        }
        Ok(Err(_)) => TaukitStatus::InvalidArgument,
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Load a table from the plain text format.
///
/// # Safety
/// `path` must be a NUL-terminated string, `out` a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_table_load(
    path: *const c_char,
    out: *mut *mut TaukitTauTable,
) -> TaukitStatus {
    if path.is_null() || out.is_null() {
        return TaukitStatus::NullPointer;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return TaukitStatus::InvalidArgument;
    };
    match TauTable::load(std::path::Path::new(path)) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(TaukitTauTable(table)));
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Save a table in the plain text format.
///
/// # Safety
/// `table` must be a live handle, `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_table_save(
    table: *const TaukitTauTable,
    path: *const c_char,
) -> TaukitStatus {
    if table.is_null() || path.is_null() {
        return TaukitStatus::NullPointer;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        return TaukitStatus::InvalidArgument;
    };
    match (*table).0.save(std::path::Path::new(path)) {
        Ok(()) => TaukitStatus::Ok,
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Release a table handle; a null pointer is a no-op.
///
/// # Safety
/// `table` must have come from a taukit constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_table_free(table: *mut TaukitTauTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Largest n covered by the table, or 0 for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_table_max_n(table: *const TaukitTauTable) -> u64 {
    if table.is_null() {
        return 0;
    }
    (*table).0.max_n() as u64
}

/// τ(n) as a NUL-terminated decimal string.
///
/// # Safety
/// `table` must be a live handle; `buf` must have `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_decimal(
    table: *const TaukitTauTable,
    n: u64,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    if table.is_null() {
        return TaukitStatus::NullPointer;
    }
    let Ok(n) = usize::try_from(n) else {
        return TaukitStatus::InvalidArgument;
    };
    match (*table).0.get(n) {
        Ok(v) => write_decimal(&v.to_string(), buf, cap, len_out),
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// τ(n) extended multiplicatively from the table's prime coverage, as a
/// decimal string; n may exceed the table.
///
/// # Safety
/// As for [`taukit_tau_decimal`].
#[no_mangle]
pub unsafe extern "C" fn taukit_tau_extended_decimal(
    table: *const TaukitTauTable,
    n: u64,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    if table.is_null() {
        return TaukitStatus::NullPointer;
    }
    match tau_extended(n, &(*table).0) {
        Ok(v) => write_decimal(&v.to_string(), buf, cap, len_out),
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// Sweep both laws of the multiplicativity conjecture.
///
/// # Safety
/// `table` must be a live handle, `summary` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taukit_verify_conjecture_one(
    table: *const TaukitTauTable,
    summary: *mut TaukitSweepSummary,
) -> TaukitStatus {
    if table.is_null() || summary.is_null() {
        return TaukitStatus::NullPointer;
    }
    match verify_conjecture_one(&(*table).0) {
        Ok(records) => {
            *summary = TaukitSweepSummary {
                checked: records.len() as u64,
                failures: records.iter().filter(|r| !r.pass()).count() as u64,
            };
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Sweep τ(p)² < 4p¹¹ over every prime in the table.
///
/// # Safety
/// As for [`taukit_verify_conjecture_one`].
#[no_mangle]
pub unsafe extern "C" fn taukit_verify_deligne(
    table: *const TaukitTauTable,
    summary: *mut TaukitSweepSummary,
) -> TaukitStatus {
    if table.is_null() || summary.is_null() {
        return TaukitStatus::NullPointer;
    }
    match verify_deligne_bound(&(*table).0) {
        Ok(records) => {
            *summary = TaukitSweepSummary {
                checked: records.len() as u64,
                failures: records.iter().filter(|r| !r.pass).count() as u64,
            };
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Sweep the eigenform identity for primes p <= p_max.
///
/// # Safety
/// As for [`taukit_verify_conjecture_one`].
#[no_mangle]
pub unsafe extern "C" fn taukit_verify_eigenform(
    table: *const TaukitTauTable,
    p_max: u64,
    summary: *mut TaukitSweepSummary,
) -> TaukitStatus {
    if table.is_null() || summary.is_null() {
        return TaukitStatus::NullPointer;
    }
    match verify_eigenform(&(*table).0, p_max) {
        Ok(records) => {
            *summary = TaukitSweepSummary {
                checked: records.len() as u64,
                failures: records.iter().filter(|r| !r.pass).count() as u64,
            };
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Sweep one of the classical congruence laws: 0 = mod 691, 1 = mod 2⁵,
/// 2 = mod 3.
///
/// # Safety
/// As for [`taukit_verify_conjecture_one`].
#[no_mangle]
pub unsafe extern "C" fn taukit_verify_congruence(
    table: *const TaukitTauTable,
    law: c_int,
    summary: *mut TaukitSweepSummary,
) -> TaukitStatus {
    if table.is_null() || summary.is_null() {
        return TaukitStatus::NullPointer;
    }
    let law = match law {
        0 => CongruenceLaw::mod_691(),
        1 => CongruenceLaw::mod_32(),
        2 => CongruenceLaw::mod_3(),
        _ => return TaukitStatus::InvalidArgument,
    };
    match verify_congruence(&law, &(*table).0) {
        Ok(records) => {
            *summary = TaukitSweepSummary {
                checked: records.len() as u64,
                failures: records.iter().filter(|r| !r.pass).count() as u64,
            };
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::ComputeFailed,
    }
}

/// Create a curve y² = x³ + ax + b; rejects zero discriminant.
///
/// # Safety
/// `out` must be a valid handle slot.
#[no_mangle]
pub unsafe extern "C" fn taukit_curve_new(
    a: i64,
    b: i64,
    out: *mut *mut TaukitCurve,
) -> TaukitStatus {
    if out.is_null() {
        return TaukitStatus::NullPointer;
    }
    match CurveSpec::from_i64(a, b) {
        Ok(curve) => {
            *out = Box::into_raw(Box::new(TaukitCurve(curve)));
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// Release a curve handle; a null pointer is a no-op.
///
/// # Safety
/// `curve` must have come from [`taukit_curve_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn taukit_curve_free(curve: *mut TaukitCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Reduce a curve at one prime: good/bad, affine count, and a_p when good.
///
/// # Safety
/// `curve` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taukit_curve_reduce(
    curve: *const TaukitCurve,
    p: u64,
    out: *mut TaukitReduction,
) -> TaukitStatus {
    if curve.is_null() || out.is_null() {
        return TaukitStatus::NullPointer;
    }
    match reduce_curve(&(*curve).0, p) {
        Ok(record) => {
            *out = TaukitReduction {
                p: record.p,
                good: record.kind == ReductionKind::Good,
                affine_count: record.affine_count,
                has_a_p: record.a_p.is_some(),
                a_p: record.a_p.unwrap_or(0),
            };
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// v_p(numer/denom) into `v_out`.
///
/// # Safety
/// `v_out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taukit_vp(
    p: u64,
    numer: i64,
    denom: i64,
    v_out: *mut i64,
) -> TaukitStatus {
    if v_out.is_null() {
        return TaukitStatus::NullPointer;
    }
    if numer == 0 || denom == 0 {
        return TaukitStatus::InvalidArgument;
    }
    let Ok(val) = Valuation::new(p) else {
        return TaukitStatus::InvalidArgument;
    };
    let x = num_rational::BigRational::new(numer.into(), denom.into());
    match val.of_rational(&x) {
        Ok(v) => {
            *v_out = v;
            TaukitStatus::Ok
        }
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// Hensel-lift the simple root `start` of f mod p to precision k; the
/// witness residue is written as a decimal string.
///
/// # Safety
/// `coeffs` must point to `coeffs_len` i64 values (constant term first);
/// `buf` must have `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn taukit_hensel_lift(
    coeffs: *const i64,
    coeffs_len: usize,
    p: u64,
    start: u64,
    k: u32,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    let Some(f) = polynomial_from_raw(coeffs, coeffs_len) else {
        return TaukitStatus::InvalidArgument;
    };
    match hensel_lift(&f, p, start, k) {
        Ok(witness) => write_decimal(&witness.to_string(), buf, cap, len_out),
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// Decide whether f has a root in Z_p within the effort bound; on
/// certified-yes the witness is written as a decimal string.
///
/// # Safety
/// As for [`taukit_hensel_lift`]; `verdict_out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn taukit_has_root_in_zp(
    coeffs: *const i64,
    coeffs_len: usize,
    p: u64,
    effort: u32,
    verdict_out: *mut TaukitRootVerdict,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    if verdict_out.is_null() {
        return TaukitStatus::NullPointer;
    }
    let Some(f) = polynomial_from_raw(coeffs, coeffs_len) else {
        return TaukitStatus::InvalidArgument;
    };
    match has_root_in_zp(&f, p, effort) {
        Ok(cert) => {
            *verdict_out = match cert.verdict {
                RootVerdict::CertifiedNo => TaukitRootVerdict::CertifiedNo,
                RootVerdict::CertifiedYes => TaukitRootVerdict::CertifiedYes,
                RootVerdict::Inconclusive => TaukitRootVerdict::Inconclusive,
            };
            match cert.witness {
                Some(w) => write_decimal(&w, buf, cap, len_out),
                None => TaukitStatus::Ok,
            }
        }
        Err(_) => TaukitStatus::InvalidArgument,
    }
}

/// Decide whether numer/denom is a square in Q_p at the given witness
/// precision; on success the unit-part square root is written as a decimal
/// string when the value is a square.
///
/// # Safety
/// `is_square_out` must be a valid pointer; `buf` must have `cap` writable
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn taukit_is_square_in_qp(
    numer: i64,
    denom: i64,
    p: u64,
    precision: u32,
    is_square_out: *mut bool,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> TaukitStatus {
    if is_square_out.is_null() {
        return TaukitStatus::NullPointer;
    }
    if denom == 0 {
        return TaukitStatus::InvalidArgument;
    }
    let value = num_rational::BigRational::new(numer.into(), denom.into());
    match is_square_in_qp(&value, p, precision) {
        Ok(cert) => {
            *is_square_out = cert.square;
            match cert.witness {
                Some(w) => write_decimal(&w, buf, cap, len_out),
                None => TaukitStatus::Ok,
            }
        }
        Err(_) => TaukitStatus::InvalidArgument,
    }
}
