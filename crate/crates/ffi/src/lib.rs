//! C ABI over `sortnet`.
//!
//! Networks and tableaux cross the boundary as opaque handles owned by the
//! caller and released with the matching `_free` function. Every fallible
//! call returns a [`SortnetStatus`]; on failure the message is available from
//! [`sortnet_last_error`] until the next failing call on the same thread.
//! Strings returned through out-parameters are freed with
//! [`sortnet_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sortnet::geometry::{certify_nonrealizable, realize_network_eps, GpPattern, PointConfiguration};
use sortnet::render::render_wiring_diagram;
use sortnet::sampler::{sample_random_network, sample_uniform_syt};
use sortnet::{eg_forward, eg_inverse, Error, SeededRng, SortingNetwork, StandardTableau, YoungDiagram};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortnetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidShape = 3,
    InvalidTableau = 4,
    InvalidNetwork = 5,
    GeneralPosition = 6,
    Parse = 7,
    Internal = 8,
}

/// A sorting network.
pub struct SortnetNetwork(SortingNetwork);

/// A standard Young tableau.
pub struct SortnetTableau(StandardTableau);

/// A space-time window `[time_start, time_end] x [pos_start, pos_end]`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortnetWindow {
    pub time_start: usize,
    pub time_end: usize,
    pub pos_start: usize,
    pub pos_end: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SortnetStatus {
    match e {
        Error::InvalidShape(_) | Error::NotStaircase(_) | Error::EmptyDiagram => SortnetStatus::InvalidShape,
        Error::InvalidTableau(_) => SortnetStatus::InvalidTableau,
        Error::InvalidNetwork { .. } => SortnetStatus::InvalidNetwork,
        Error::GeneralPosition(_) => SortnetStatus::GeneralPosition,
        Error::Json(_) | Error::Csv(_) | Error::Io(_) => SortnetStatus::Parse,
        Error::Inconsistent(_) => SortnetStatus::Internal,
        _ => SortnetStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (SortnetStatus, String)>) -> SortnetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SortnetStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SortnetStatus::Internal
        }
    }
}

fn lib<T>(r: sortnet::Result<T>) -> Result<T, (SortnetStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// Malformed JSON is a parse error; well-formed JSON describing an invalid
/// object gets `invalid`.
fn from_json<T: serde::de::DeserializeOwned>(
    s: &str,
    invalid: SortnetStatus,
) -> Result<T, (SortnetStatus, String)> {
    serde_json::from_str(s).map_err(|e| {
        let status = match e.classify() {
            serde_json::error::Category::Data => invalid,
            _ => SortnetStatus::Parse,
        };
        (status, e.to_string())
    })
}

fn null() -> (SortnetStatus, String) {
    (SortnetStatus::NullPointer, "null pointer argument".into())
}

unsafe fn as_ref<'a, T>(p: *const T) -> Result<&'a T, (SortnetStatus, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (SortnetStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (SortnetStatus::Parse, format!("input is not UTF-8: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (SortnetStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (SortnetStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|e| (SortnetStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or NULL. Owned by the
/// library; valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sortnet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sortnet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether `swaps[0..len]` is a sorting network of size `n`.
///
/// # Safety
/// `swaps` must point to `len` readable values (or be NULL with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn sortnet_validate_network(swaps: *const u32, len: usize, n: usize) -> bool {
    if swaps.is_null() {
        return len == 0 && sortnet::validate_network(&[], n);
    }
    sortnet::validate_network(std::slice::from_raw_parts(swaps, len), n)
}

/// Builds a network from its swaps.
///
/// # Safety
/// `swaps` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_new(
    n: usize,
    swaps: *const u32,
    len: usize,
    out: *mut *mut SortnetNetwork,
) -> SortnetStatus {
    guard(|| {
        let s = if len == 0 {
            Vec::new()
        } else {
            as_ref(swaps)?;
            std::slice::from_raw_parts(swaps, len).to_vec()
        };
        let net = lib(SortingNetwork::new(n, s))?;
        put(out, SortnetNetwork(net))
    })
}

/// Samples a uniform network of size `n` from stream `stream` of `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_sample(
    n: usize,
    seed: u64,
    stream: u64,
    out: *mut *mut SortnetNetwork,
) -> SortnetStatus {
    guard(|| {
        let net = lib(sample_random_network(n, &SeededRng::with_stream(seed, stream)))?;
        put(out, SortnetNetwork(net))
    })
}

/// Parses `{"n":..,"swaps":[..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_from_json(
    json: *const c_char,
    out: *mut *mut SortnetNetwork,
) -> SortnetStatus {
    guard(|| {
        let s = read_str(json)?;
        let net: SortingNetwork = from_json(s, SortnetStatus::InvalidNetwork)?;
        put(out, SortnetNetwork(net))
    })
}

/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_to_json(
    net: *const SortnetNetwork,
    out: *mut *mut c_char,
) -> SortnetStatus {
    guard(|| {
        let net = as_ref(net)?;
        let s = lib(serde_json::to_string(&net.0).map_err(Error::from))?;
        put_string(out, s)
    })
}

/// Size `n` of the network, or 0 for NULL.
///
/// # Safety
/// `net` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_size(net: *const SortnetNetwork) -> usize {
    net.as_ref().map_or(0, |x| x.0.n())
}

/// Number of swaps, or 0 for NULL.
///
/// # Safety
/// `net` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_len(net: *const SortnetNetwork) -> usize {
    net.as_ref().map_or(0, |x| x.0.len())
}

/// Borrowed pointer to the swaps, valid while the handle lives.
///
/// # Safety
/// `net` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_swaps(net: *const SortnetNetwork) -> *const u32 {
    net.as_ref().map_or(ptr::null(), |x| x.0.swaps().as_ptr())
}

/// SVG wiring diagram of the network.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_render_svg(
    net: *const SortnetNetwork,
    out: *mut *mut c_char,
) -> SortnetStatus {
    guard(|| put_string(out, render_wiring_diagram(&as_ref(net)?.0)))
}

/// # Safety
/// `net` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sortnet_network_free(net: *mut SortnetNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Samples a uniform tableau of staircase shape `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_tableau_sample_staircase(
    n: usize,
    seed: u64,
    stream: u64,
    out: *mut *mut SortnetTableau,
) -> SortnetStatus {
    guard(|| {
        let t = lib(sample_uniform_syt(
            &YoungDiagram::staircase(n),
            &SeededRng::with_stream(seed, stream),
        ))?;
        put(out, SortnetTableau(t))
    })
}

/// Parses `{"shape":[..],"entries":[[..],..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_tableau_from_json(
    json: *const c_char,
    out: *mut *mut SortnetTableau,
) -> SortnetStatus {
    guard(|| {
        let s = read_str(json)?;
        let t: StandardTableau = from_json(s, SortnetStatus::InvalidTableau)?;
        put(out, SortnetTableau(t))
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_tableau_to_json(
    t: *const SortnetTableau,
    out: *mut *mut c_char,
) -> SortnetStatus {
    guard(|| {
        let t = as_ref(t)?;
        let s = lib(serde_json::to_string(&t.0).map_err(Error::from))?;
        put_string(out, s)
    })
}

/// # Safety
/// `t` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn sortnet_tableau_free(t: *mut SortnetTableau) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Network of a staircase tableau.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_eg_forward(
    t: *const SortnetTableau,
    out: *mut *mut SortnetNetwork,
) -> SortnetStatus {
    guard(|| {
        let net = lib(eg_forward(&as_ref(t)?.0))?;
        put(out, SortnetNetwork(net))
    })
}

/// Staircase tableau of a network.
///
/// # Safety
/// `net` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_eg_inverse(
    net: *const SortnetNetwork,
    out: *mut *mut SortnetTableau,
) -> SortnetStatus {
    guard(|| {
        let t = lib(eg_inverse(&as_ref(net)?.0))?;
        put(out, SortnetTableau(t))
    })
}

/// Number of standard tableaux of shape `rows[0..len]`, as a decimal string.
///
/// # Safety
/// `rows` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_dimension(
    rows: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> SortnetStatus {
    guard(|| {
        let rows = if len == 0 {
            Vec::new()
        } else {
            as_ref(rows)?;
            std::slice::from_raw_parts(rows, len).to_vec()
        };
        let shape = lib(YoungDiagram::new(rows))?;
        put_string(out, shape.dimension().to_string())
    })
}

/// Network swept out by the points `(xs[i], ys[i])`; `eps` is the
/// general-position tolerance.
///
/// # Safety
/// `xs` and `ys` must each point to `len` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_realize(
    xs: *const f64,
    ys: *const f64,
    len: usize,
    eps: f64,
    out: *mut *mut SortnetNetwork,
) -> SortnetStatus {
    guard(|| {
        as_ref(xs)?;
        as_ref(ys)?;
        let xs = std::slice::from_raw_parts(xs, len);
        let ys = std::slice::from_raw_parts(ys, len);
        let x = PointConfiguration::new(xs.iter().copied().zip(ys.iter().copied()).collect());
        let net = lib(realize_network_eps(&x, eps))?;
        put(out, SortnetNetwork(net))
    })
}

/// Searches for the shipped non-realizability certificate. Sets `*found`
/// and, when found, the witness window.
///
/// # Safety
/// `net` must be a live handle; `found` and `window` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sortnet_certify(
    net: *const SortnetNetwork,
    found: *mut bool,
    window: *mut SortnetWindow,
) -> SortnetStatus {
    guard(|| {
        let net = as_ref(net)?;
        if found.is_null() || window.is_null() {
            return Err(null());
        }
        match certify_nonrealizable(&net.0, &GpPattern::builtin()) {
            Some(w) => {
                *found = true;
                *window = SortnetWindow {
                    time_start: w.time.0,
                    time_end: w.time.1,
                    pos_start: w.position.0,
                    pos_end: w.position.1,
                };
            }
            None => {
                *found = false;
                *window = SortnetWindow::default();
            }
        }
        Ok(())
    })
}
