//! C ABI for the RIS path-loss engine.
//!
//! Scenarios and sweep results are opaque handles created by `*_from_toml`
//! and released with the matching `*_free`. Every fallible call returns a
//! [`RisStatus`]; on failure the message is kept per thread and can be
//! copied out with [`ris_last_error_message`]. Panics never cross the
//! boundary.

use ris_core::coeffs::{self, CoefficientSet};
use ris_core::experiments::{self, SweepRow, SweepStrategy};
use ris_core::farfield;
use ris_core::link::{self, free_space_loss, Scenario};
use ris_core::pattern::{self, ElementPattern};
use ris_core::{db, Error};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes. Values 2-4 match the command line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisStatus {
    Ok = 0,
    InvalidArgument = 1,
    Config = 2,
    ResourceCap = 3,
    SelfCheck = 4,
    Geometry = 5,
    ModelDomain = 6,
    Divergence = 7,
    Io = 8,
    NullPointer = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisStrategy {
    Focusing = 0,
    Beamforming = 1,
    Uniform = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RisSweepStrategy {
    Focusing = 0,
    Beamforming = 1,
    Far = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RisPathLoss {
    pub inverse_loss: f64,
    pub loss_db: f64,
    pub received_power_w: f64,
    /// Gain over the free-space channel of length r_i + r_s, dB.
    pub normalized_db: f64,
    pub coherent_sum_re: f64,
    pub coherent_sum_im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisSweepRow {
    pub side_lambda: f64,
    pub psi_s_deg: f64,
    pub r_over_lambda: f64,
    pub strategy: RisSweepStrategy,
    pub n: u64,
    pub loss_db: f64,
    pub normalized_db: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RisRequiredSize {
    pub area_m2: f64,
    pub side_m: f64,
    pub side_lambda: f64,
}

/// Opaque scenario handle.
pub struct RisScenario {
    inner: Scenario,
}

/// Opaque sweep result handle.
pub struct RisSweepResult {
    rows: Vec<SweepRow>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> RisStatus {
    match err {
        Error::InvalidArgument(_) => RisStatus::InvalidArgument,
        Error::Geometry(_) => RisStatus::Geometry,
        Error::ModelDomain(_) => RisStatus::ModelDomain,
        Error::Divergence(_) => RisStatus::Divergence,
        Error::Config { .. } => RisStatus::Config,
        Error::ResourceCap { .. } => RisStatus::ResourceCap,
        Error::SelfCheck(_) => RisStatus::SelfCheck,
        Error::Io(_) | Error::Csv(_) => RisStatus::Io,
        // ris_core::Error is non-exhaustive from our side only in spirit
        #[allow(unreachable_patterns)]
        _ => RisStatus::InvalidArgument,
    }
}

fn guard<F: FnOnce() -> Result<(), Error>>(f: F) -> RisStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RisStatus::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".to_string());
            RisStatus::Panic
        }
    }
}

fn null_error(what: &str) -> RisStatus {
    set_error(format!("null pointer passed for `{what}`"));
    RisStatus::NullPointer
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, Error> {
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| Error::InvalidArgument(format!("input is not UTF-8: {e}")))
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len` bytes) and returns the full message
/// length excluding the terminator. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ris_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ris_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a TOML scenario document and stores a new handle in `out`.
///
/// # Safety
/// `toml` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_scenario_from_toml(
    toml: *const c_char,
    out: *mut *mut RisScenario,
) -> RisStatus {
    if toml.is_null() {
        return null_error("toml");
    }
    if out.is_null() {
        return null_error("out");
    }
    *out = ptr::null_mut();
    guard(|| {
        let cfg = experiments::parse_scenario(read_str(toml)?)?;
        let inner = cfg.to_scenario()?;
        *out = Box::into_raw(Box::new(RisScenario { inner }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or a pointer from [`ris_scenario_from_toml`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ris_scenario_free(handle: *mut RisScenario) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of RIS elements, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or a live scenario handle.
#[no_mangle]
pub unsafe extern "C" fn ris_scenario_element_count(handle: *const RisScenario) -> u64 {
    handle.as_ref().map_or(0, |h| h.inner.ris().len() as u64)
}

fn fill_path_loss(s: &Scenario, b: &CoefficientSet) -> Result<RisPathLoss, Error> {
    let r = link::path_loss(s, b)?;
    let (ri, rs) = s.reference_distances();
    let ls = free_space_loss(ri + rs, s.wavelength())?;
    Ok(RisPathLoss {
        inverse_loss: r.inverse_loss,
        loss_db: r.loss_db,
        received_power_w: r.received_power,
        normalized_db: db::to_db(ls * r.inverse_loss),
        coherent_sum_re: r.coherent_sum.re,
        coherent_sum_im: r.coherent_sum.im,
    })
}

/// Evaluates the scenario under one of the built-in strategies.
///
/// # Safety
/// `handle` must be a live scenario handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_scenario_path_loss(
    handle: *const RisScenario,
    strategy: RisStrategy,
    out: *mut RisPathLoss,
) -> RisStatus {
    let Some(h) = handle.as_ref() else {
        return null_error("handle");
    };
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        let s = &h.inner;
        let b = match strategy {
            RisStrategy::Focusing => coeffs::focusing(s)?,
            RisStrategy::Beamforming => coeffs::beamforming(s)?,
            RisStrategy::Uniform => coeffs::uniform(s.ris().len()),
        };
        *out = fill_path_loss(s, &b)?;
        Ok(())
    })
}

/// Evaluates the scenario with caller-supplied coefficients given as
/// parallel arrays of real and imaginary parts in row-major element order.
///
/// # Safety
/// `re` and `im` must each point to `len` readable doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ris_scenario_path_loss_custom(
    handle: *const RisScenario,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut RisPathLoss,
) -> RisStatus {
    let Some(h) = handle.as_ref() else {
        return null_error("handle");
    };
    if re.is_null() || im.is_null() {
        return null_error("coefficients");
    }
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        let re = std::slice::from_raw_parts(re, len);
        let im = std::slice::from_raw_parts(im, len);
        let values = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| num_complex_new(a, b))
            .collect();
        let b = coeffs::custom(values, h.inner.ris().len())?;
        *out = fill_path_loss(&h.inner, &b)?;
        Ok(())
    })
}

fn num_complex_new(re: f64, im: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(re, im)
}

/// Parses and runs a TOML sweep document.
///
/// # Safety
/// `toml` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_sweep_from_toml(
    toml: *const c_char,
    out: *mut *mut RisSweepResult,
) -> RisStatus {
    if toml.is_null() {
        return null_error("toml");
    }
    if out.is_null() {
        return null_error("out");
    }
    *out = ptr::null_mut();
    guard(|| {
        let spec = experiments::parse_sweep(read_str(toml)?)?.to_spec()?;
        let rows = experiments::run_sweep(&spec)?;
        *out = Box::into_raw(Box::new(RisSweepResult { rows }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn ris_sweep_len(handle: *const RisSweepResult) -> usize {
    handle.as_ref().map_or(0, |h| h.rows.len())
}

/// # Safety
/// `handle` must be a live sweep handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_sweep_row(
    handle: *const RisSweepResult,
    index: usize,
    out: *mut RisSweepRow,
) -> RisStatus {
    let Some(h) = handle.as_ref() else {
        return null_error("handle");
    };
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        let r = h.rows.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "row {index} out of range for {} rows",
                h.rows.len()
            ))
        })?;
        *out = RisSweepRow {
            side_lambda: r.side_lambda,
            psi_s_deg: r.psi_s_deg,
            r_over_lambda: r.r_over_lambda,
            strategy: match r.strategy {
                SweepStrategy::Focusing => RisSweepStrategy::Focusing,
                SweepStrategy::Beamforming => RisSweepStrategy::Beamforming,
                SweepStrategy::Far => RisSweepStrategy::Far,
            },
            n: r.n as u64,
            loss_db: r.loss_db,
            normalized_db: r.normalized_db,
        };
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or a pointer from [`ris_sweep_from_toml`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ris_sweep_free(handle: *mut RisSweepResult) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// RIS size at which the far-case channel equals the equal-length
/// free-space channel.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_required_area(
    focal_length_m: f64,
    wavelength_m: f64,
    u_inc: f64,
    u_sca: f64,
    efficiency: f64,
    q: f64,
    out: *mut RisRequiredSize,
) -> RisStatus {
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        let s = farfield::required_area(focal_length_m, wavelength_m, u_inc, u_sca, efficiency, q)?;
        *out = RisRequiredSize {
            area_m2: s.area,
            side_m: s.side,
            side_lambda: s.side_over_lambda,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_free_space_loss(
    path_length_m: f64,
    wavelength_m: f64,
    out: *mut f64,
) -> RisStatus {
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        *out = free_space_loss(path_length_m, wavelength_m)?;
        Ok(())
    })
}

/// Gain of the cos^2q element pattern along a direction with broadside
/// cosine `cos_psi`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ris_element_gain(q: f64, cos_psi: f64, out: *mut f64) -> RisStatus {
    if out.is_null() {
        return null_error("out");
    }
    guard(|| {
        *out = pattern::gain(&ElementPattern::new(q)?, cos_psi)?;
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn ris_benchmark_q() -> f64 {
    pattern::Q0
}

#[no_mangle]
pub extern "C" fn ris_far_path_loss_area(
    area_m2: f64,
    r_inc: f64,
    r_sca: f64,
    u_inc: f64,
    u_sca: f64,
    q: f64,
    efficiency: f64,
) -> f64 {
    farfield::far_path_loss_area(area_m2, r_inc, r_sca, u_inc, u_sca, q, efficiency)
}

#[no_mangle]
pub extern "C" fn ris_plate_path_loss(area_m2: f64, r_inc: f64, r_sca: f64) -> f64 {
    farfield::plate_path_loss(area_m2, r_inc, r_sca)
}

#[no_mangle]
pub extern "C" fn ris_plate_rcs(area_m2: f64, wavelength_m: f64) -> f64 {
    farfield::plate_rcs(area_m2, wavelength_m)
}

#[no_mangle]
pub extern "C" fn ris_effective_focal_length(r_inc: f64, r_sca: f64) -> f64 {
    farfield::effective_focal_length(r_inc, r_sca)
}
