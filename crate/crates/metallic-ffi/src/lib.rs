//! C ABI for the metallic cube library: opaque graph handles, status codes,
//! and flat buffers, so other languages can bind without knowing any Rust.
//!
//! Conventions:
//! - Every fallible call returns a [`MetallicStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure.
//! - `char*` results are NUL-terminated, allocated by this library, and must
//!   be released with [`metallic_string_free`]; rank buffers with
//!   [`metallic_ranks_free`].
//! - Neighbor lists are borrowed views into the cube; they stay valid until
//!   the cube is freed.
//! - Big counts are returned as decimal strings, so arbitrary precision
//!   survives the ABI.

use libc::{c_char, size_t};
use metallic::counting;
use metallic::graph::{ExportFormat, MetallicCube};
use metallic::hamilton;
use metallic::metrics;
use metallic::strings::MetallicString;
use metallic::Error;
use std::ffi::{CStr, CString};

/// Status code of every fallible ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetallicStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// Parameters violate a precondition (bad letters, bad rank, bad text).
    InvalidArgument = 2,
    /// The requested object exceeds the vertex or all-pairs cap.
    CapExceeded = 3,
    /// The operation is not defined for these parameters (e.g. cycles for
    /// odd alphabets).
    Unsupported = 4,
    /// A constructor failed its own revalidation.
    ConstructionFailed = 5,
}

impl From<&Error> for MetallicStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::CapExceeded { .. } => MetallicStatus::CapExceeded,
            Error::UnsupportedAlphabet { .. } | Error::UnsupportedParity { .. } => {
                MetallicStatus::Unsupported
            }
            Error::ConstructionFailure(_) | Error::Inconsistency(_) => {
                MetallicStatus::ConstructionFailed
            }
            _ => MetallicStatus::InvalidArgument,
        }
    }
}

/// Export formats accepted by [`metallic_cube_export`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetallicFormat {
    Dot = 0,
    Json = 1,
    EdgeList = 2,
}

/// Opaque handle to an immutable graph.
pub struct MetallicCubeHandle {
    cube: MetallicCube,
}

fn cube_ref<'a>(handle: *const MetallicCubeHandle) -> Option<&'a MetallicCube> {
    // SAFETY: the caller promises the handle came from metallic_cube_build
    // and has not been freed.
    unsafe { handle.as_ref().map(|h| &h.cube) }
}

fn export_string(text: String, out: *mut *mut c_char) -> MetallicStatus {
    match CString::new(text) {
        Ok(cstring) => {
            // SAFETY: out was checked non-NULL by the caller.
            unsafe { *out = cstring.into_raw() };
            MetallicStatus::Ok
        }
        Err(_) => MetallicStatus::InvalidArgument,
    }
}

/// Builds `Π^a_n` under `vertex_cap` (pass 0 for the library default) and
/// stores an owned handle in `out`. Free it with [`metallic_cube_free`].
///
/// # Safety
/// `out` must be NULL or point to writable handle-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_build(
    a: u32,
    n: size_t,
    vertex_cap: u64,
    out: *mut *mut MetallicCubeHandle,
) -> MetallicStatus {
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    let cap = if vertex_cap == 0 {
        metallic::DEFAULT_VERTEX_CAP
    } else {
        vertex_cap
    };
    match MetallicCube::build_capped(a, n, cap) {
        Ok(cube) => {
            let handle = Box::new(MetallicCubeHandle { cube });
            // SAFETY: out is non-NULL per the check above.
            unsafe { *out = Box::into_raw(handle) };
            MetallicStatus::Ok
        }
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Releases a handle from [`metallic_cube_build`]. NULL is a no-op.
///
/// # Safety
/// `cube` must be a pointer returned by [`metallic_cube_build`] that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_free(cube: *mut MetallicCubeHandle) {
    if !cube.is_null() {
        drop(Box::from_raw(cube));
    }
}

/// Number of vertices, or 0 for a NULL handle.
///
/// # Safety
/// `cube` must be NULL or a live handle from [`metallic_cube_build`].
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_vertex_count(cube: *const MetallicCubeHandle) -> size_t {
    cube_ref(cube).map_or(0, |g| g.vertex_count())
}

/// Number of edges, or 0 for a NULL handle.
///
/// # Safety
/// `cube` must be NULL or a live handle from [`metallic_cube_build`].
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_edge_count(cube: *const MetallicCubeHandle) -> u64 {
    cube_ref(cube).map_or(0, |g| g.edge_count())
}

/// Degree of the vertex with the given rank.
///
/// # Safety
/// `cube` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_degree(
    cube: *const MetallicCubeHandle,
    rank: size_t,
    out: *mut size_t,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    if rank >= g.vertex_count() {
        return MetallicStatus::InvalidArgument;
    }
    // SAFETY: out is non-NULL.
    unsafe { *out = g.degree(rank) };
    MetallicStatus::Ok
}

/// Borrows the sorted neighbor ranks of a vertex. The view lives as long as
/// the cube handle.
///
/// # Safety
/// `cube` must be NULL or a live handle; the out-pointers NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_neighbors(
    cube: *const MetallicCubeHandle,
    rank: size_t,
    out_ptr: *mut *const u32,
    out_len: *mut size_t,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out_ptr.is_null() || out_len.is_null() {
        return MetallicStatus::NullPointer;
    }
    if rank >= g.vertex_count() {
        return MetallicStatus::InvalidArgument;
    }
    let neighbors = g.neighbors(rank);
    // SAFETY: both out-pointers are non-NULL.
    unsafe {
        *out_ptr = neighbors.as_ptr();
        *out_len = neighbors.len();
    }
    MetallicStatus::Ok
}

/// Textual form of a vertex (digits for a <= 9, dot-separated letters above,
/// `-` for the empty word). Free with [`metallic_string_free`].
///
/// # Safety
/// `cube` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_vertex_text(
    cube: *const MetallicCubeHandle,
    rank: size_t,
    out: *mut *mut c_char,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    if rank >= g.vertex_count() {
        return MetallicStatus::InvalidArgument;
    }
    export_string(g.vertex_text(rank), out)
}

/// Rank of the vertex spelled by `text` (same textual form as
/// [`metallic_cube_vertex_text`]).
///
/// # Safety
/// `text` must point to a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_rank_of(
    cube: *const MetallicCubeHandle,
    text: *const c_char,
    out: *mut size_t,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if text.is_null() || out.is_null() {
        return MetallicStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return MetallicStatus::InvalidArgument;
    };
    let word = match MetallicString::parse(g.a(), text) {
        Ok(word) => word,
        Err(err) => return MetallicStatus::from(&err),
    };
    match g.rank_of(&word) {
        Ok(rank) => {
            *out = rank;
            MetallicStatus::Ok
        }
        Err(err) => MetallicStatus::from(&err),
    }
}

/// BFS distances from `source` into `out`, which must hold
/// `metallic_cube_vertex_count` entries.
///
/// # Safety
/// `out` must point to writable memory for at least `vertex_count` u32s.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_bfs_distances(
    cube: *const MetallicCubeHandle,
    source: size_t,
    out: *mut u32,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    if source >= g.vertex_count() {
        return MetallicStatus::InvalidArgument;
    }
    let dist = g.bfs_distances(source);
    std::ptr::copy_nonoverlapping(dist.as_ptr(), out, dist.len());
    MetallicStatus::Ok
}

/// Serializes the graph (dot, json or edge list). Free the string with
/// [`metallic_string_free`].
///
/// # Safety
/// `cube` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_cube_export(
    cube: *const MetallicCubeHandle,
    format: MetallicFormat,
    out: *mut *mut c_char,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    let format = match format {
        MetallicFormat::Dot => ExportFormat::Dot,
        MetallicFormat::Json => ExportFormat::Json,
        MetallicFormat::EdgeList => ExportFormat::EdgeList,
    };
    export_string(g.export(format), out)
}

/// Vertex count `s^a_n` as a decimal string (exact for any size). Free with
/// [`metallic_string_free`].
///
/// # Safety
/// `out` must be NULL or point to writable string-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn metallic_vertex_count_decimal(
    a: u32,
    n: size_t,
    out: *mut *mut c_char,
) -> MetallicStatus {
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    match counting::vertex_count(a, n) {
        Ok(value) => export_string(value.to_string(), out),
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Edge count `e^a_n` as a decimal string. Free with
/// [`metallic_string_free`].
///
/// # Safety
/// `out` must be NULL or point to writable string-pointer storage.
#[no_mangle]
pub unsafe extern "C" fn metallic_edge_count_decimal(
    a: u32,
    n: size_t,
    out: *mut *mut c_char,
) -> MetallicStatus {
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    match counting::edge_count_formula(a, n) {
        Ok(value) => export_string(value.to_string(), out),
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Closed-form radius of `Π^a_n` (requires `a, n >= 1`).
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_radius(a: u32, n: size_t, out: *mut u64) -> MetallicStatus {
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    match metrics::radius_formula(a, n) {
        Ok(value) => {
            // SAFETY: out is non-NULL.
            unsafe { *out = value };
            MetallicStatus::Ok
        }
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Closed-form diameter `an − 1` of `Π^a_n` (requires `a, n >= 1`).
///
/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_diameter(a: u32, n: size_t, out: *mut u64) -> MetallicStatus {
    if out.is_null() {
        return MetallicStatus::NullPointer;
    }
    match metrics::diameter_formula(a, n) {
        Ok(value) => {
            // SAFETY: out is non-NULL.
            unsafe { *out = value };
            MetallicStatus::Ok
        }
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Constructs a Hamiltonian path and hands out its vertex ranks in visiting
/// order. Free the buffer with [`metallic_ranks_free`].
///
/// # Safety
/// `cube` must be NULL or a live handle; the out-pointers NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn metallic_hamiltonian_path(
    cube: *const MetallicCubeHandle,
    out_ranks: *mut *mut u32,
    out_len: *mut size_t,
) -> MetallicStatus {
    let Some(g) = cube_ref(cube) else {
        return MetallicStatus::NullPointer;
    };
    if out_ranks.is_null() || out_len.is_null() {
        return MetallicStatus::NullPointer;
    }
    match hamilton::hamiltonian_path(g) {
        Ok(witness) => {
            let mut ranks = witness.sequence.into_boxed_slice();
            // SAFETY: both out-pointers are non-NULL.
            unsafe {
                *out_len = ranks.len();
                *out_ranks = ranks.as_mut_ptr();
            }
            std::mem::forget(ranks);
            MetallicStatus::Ok
        }
        Err(err) => MetallicStatus::from(&err),
    }
}

/// Releases a rank buffer from [`metallic_hamiltonian_path`].
///
/// # Safety
/// `ranks` and `len` must come from a single successful
/// [`metallic_hamiltonian_path`] call, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn metallic_ranks_free(ranks: *mut u32, len: size_t) {
    if !ranks.is_null() {
        drop(Box::from_raw(std::ptr::slice_from_raw_parts_mut(
            ranks, len,
        )));
    }
}

/// Releases a string allocated by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn metallic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
