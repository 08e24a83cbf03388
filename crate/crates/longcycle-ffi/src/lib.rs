//! C ABI for the longcycle solver.
//!
//! Graphs are opaque handles created from text or edge arrays and released
//! with [`lc_graph_free`]; certificates travel as JSON strings released with
//! [`lc_string_free`]. Every function returns an `LC_*` status code (see
//! `include/longcycle.h`, which is maintained by hand and mirrors the
//! signatures below).
//!
//! Thread safety: handles are immutable after creation and may be shared
//! across threads; distinct solves may run concurrently.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use longcycle::cert::{from_json, solve_to_json, verify_certificate, VerifyResult};
use longcycle::graph::{parse_dimacs, parse_edge_list, Graph};

/// Status codes returned by every FFI entry point.
pub const LC_OK: i32 = 0;
/// The certificate was parsed but does not verify against the graph.
pub const LC_INVALID_CERTIFICATE: i32 = 1;
/// Malformed graph or certificate text.
pub const LC_PARSE_ERROR: i32 = 2;
/// Bad scalar argument (e.g. ell < 3, vertex out of range).
pub const LC_BAD_ARGUMENT: i32 = 3;
/// A required pointer argument was null or not valid UTF-8.
pub const LC_NULL_POINTER: i32 = 4;

/// Opaque graph handle.
pub struct LcGraph {
    inner: Graph,
}

fn graph_out(g: Graph, out: *mut *mut LcGraph) -> i32 {
    unsafe {
        *out = Box::into_raw(Box::new(LcGraph { inner: g }));
    }
    LC_OK
}

unsafe fn read_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    CStr::from_ptr(s).to_str().ok()
}

/// Parses edge-list text ("u v" lines, optional "n=<k>" header) into a new
/// graph handle. On success writes the handle to `out` and returns `LC_OK`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_parse_edge_list(
    text: *const c_char,
    out: *mut *mut LcGraph,
) -> i32 {
    if out.is_null() {
        return LC_NULL_POINTER;
    }
    *out = ptr::null_mut();
    let Some(text) = read_str(text) else {
        return LC_NULL_POINTER;
    };
    match parse_edge_list(text) {
        Ok(g) => graph_out(g, out),
        Err(_) => LC_PARSE_ERROR,
    }
}

/// Parses DIMACS edge format ("p edge n m" then "e u v" lines, 1-indexed).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_parse_dimacs(text: *const c_char, out: *mut *mut LcGraph) -> i32 {
    if out.is_null() {
        return LC_NULL_POINTER;
    }
    *out = ptr::null_mut();
    let Some(text) = read_str(text) else {
        return LC_NULL_POINTER;
    };
    match parse_dimacs(text) {
        Ok(g) => graph_out(g, out),
        Err(_) => LC_PARSE_ERROR,
    }
}

/// Builds a graph on `n` vertices from `m` edges given as 2m endpoint ids
/// (u0, v0, u1, v1, ...), 0-indexed.
///
/// # Safety
/// `endpoints` must point to `2 * m` readable `uint32_t`s (or be null when
/// `m == 0`) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_from_edges(
    n: u32,
    endpoints: *const u32,
    m: usize,
    out: *mut *mut LcGraph,
) -> i32 {
    if out.is_null() {
        return LC_NULL_POINTER;
    }
    *out = ptr::null_mut();
    if m > 0 && endpoints.is_null() {
        return LC_NULL_POINTER;
    }
    let flat = if m == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(endpoints, 2 * m)
    };
    let edges: Vec<(usize, usize)> = flat
        .chunks_exact(2)
        .map(|e| (e[0] as usize, e[1] as usize))
        .collect();
    match Graph::from_edges(n as usize, &edges) {
        Ok(g) => graph_out(g, out),
        Err(_) => LC_BAD_ARGUMENT,
    }
}

/// Releases a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must be a handle returned by this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_free(g: *mut LcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_n(g: *const LcGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.inner.n() as u32)
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn lc_graph_edge_count(g: *const LcGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.inner.edge_count() as u32)
}

/// Solves the instance and writes the certificate as a JSON string to
/// `out_json` (release with [`lc_string_free`]). With `with_trace != 0` the
/// solver trace is attached.
///
/// # Safety
/// `g` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lc_solve_to_json(
    g: *const LcGraph,
    ell: u32,
    with_trace: i32,
    out_json: *mut *mut c_char,
) -> i32 {
    if out_json.is_null() {
        return LC_NULL_POINTER;
    }
    *out_json = ptr::null_mut();
    let Some(g) = g.as_ref() else {
        return LC_NULL_POINTER;
    };
    if ell < 3 {
        return LC_BAD_ARGUMENT;
    }
    let json = solve_to_json(&g.inner, ell as usize, with_trace != 0);
    let c = CString::new(json).expect("JSON contains no NUL");
    *out_json = c.into_raw();
    LC_OK
}

/// Verifies a JSON certificate against the graph from scratch. Returns
/// `LC_OK` when valid, `LC_INVALID_CERTIFICATE` when parsed but wrong, and
/// `LC_PARSE_ERROR` for malformed JSON.
///
/// # Safety
/// `g` must be a live handle and `cert_json` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lc_verify_json(g: *const LcGraph, cert_json: *const c_char) -> i32 {
    let Some(g) = g.as_ref() else {
        return LC_NULL_POINTER;
    };
    let Some(text) = read_str(cert_json) else {
        return LC_NULL_POINTER;
    };
    let doc = match from_json(text) {
        Ok(doc) => doc,
        Err(_) => return LC_PARSE_ERROR,
    };
    match verify_certificate(&g.inner, &doc) {
        VerifyResult::Valid => LC_OK,
        VerifyResult::Invalid(_) => LC_INVALID_CERTIFICATE,
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library, released at most once.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    unsafe fn make(text: &str) -> *mut LcGraph {
        let c = CString::new(text).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(lc_graph_parse_edge_list(c.as_ptr(), &mut g), LC_OK);
        g
    }

    #[test]
    fn solve_verify_round_trip() {
        unsafe {
            // Two disjoint 5-cycles.
            let g = make("0 1\n1 2\n2 3\n3 4\n4 0\n5 6\n6 7\n7 8\n8 9\n9 5");
            assert_eq!(lc_graph_n(g), 10);
            assert_eq!(lc_graph_edge_count(g), 10);
            let mut json = ptr::null_mut();
            assert_eq!(lc_solve_to_json(g, 5, 0, &mut json), LC_OK);
            assert_eq!(lc_verify_json(g, json), LC_OK);
            // The same certificate fails against a different graph.
            let h = make("0 1\n1 2\n2 0");
            assert_eq!(lc_verify_json(h, json), LC_INVALID_CERTIFICATE);
            lc_string_free(json);
            lc_graph_free(g);
            lc_graph_free(h);
        }
    }

    #[test]
    fn from_edges_and_errors() {
        unsafe {
            let endpoints: [u32; 6] = [0, 1, 1, 2, 2, 0];
            let mut g = ptr::null_mut();
            assert_eq!(lc_graph_from_edges(3, endpoints.as_ptr(), 3, &mut g), LC_OK);
            let mut json = ptr::null_mut();
            assert_eq!(lc_solve_to_json(g, 2, 1, &mut json), LC_BAD_ARGUMENT);
            assert_eq!(lc_solve_to_json(g, 3, 1, &mut json), LC_OK);
            assert_eq!(lc_verify_json(g, json), LC_OK);
            let bad = CString::new("not json").unwrap();
            assert_eq!(lc_verify_json(g, bad.as_ptr()), LC_PARSE_ERROR);
            lc_string_free(json);
            lc_graph_free(g);

            // Self-loop rejected.
            let loop_edge: [u32; 2] = [0, 0];
            let mut h = ptr::null_mut();
            assert_eq!(
                lc_graph_from_edges(2, loop_edge.as_ptr(), 1, &mut h),
                LC_BAD_ARGUMENT
            );
            assert!(h.is_null());

            let text = CString::new("0 0").unwrap();
            let mut k = ptr::null_mut();
            assert_eq!(lc_graph_parse_edge_list(text.as_ptr(), &mut k), LC_PARSE_ERROR);
            assert_eq!(lc_graph_parse_edge_list(ptr::null(), &mut k), LC_NULL_POINTER);
            assert_eq!(lc_solve_to_json(ptr::null(), 3, 0, &mut json), LC_NULL_POINTER);
        }
    }
}
