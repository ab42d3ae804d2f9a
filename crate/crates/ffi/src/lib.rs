//! C ABI over the sepcolor library so other languages can bind it.
//!
//! Conventions:
//! - Handles (`SepInstance`, `SepColoring`) are opaque; create them through
//!   the constructors here and release them with the matching `_free`.
//! - Every fallible call returns a [`SepStatus`]; on anything but
//!   `SEP_STATUS_OK` a human-readable message is available from
//!   [`sep_last_error_message`] until the next failure on the same thread.
//! - Strings returned through out-parameters are NUL-terminated, owned by
//!   the caller, and must be released with [`sep_string_free`].
//! - Graphs and colorings cross the boundary as the same versioned JSON
//!   documents the CLI reads and writes.

use std::cell::RefCell;
use std::ffi::{CStr, CString, c_char};

use sepcolor::doc::{ColoringDocument, GraphDocument, LoadedInstance};
use sepcolor::dot::render_dot;
use sepcolor::konig::{Bipartition, EdgeColoring, KonigError, check_bipartite, konig_color};
use sepcolor::pipeline::{PipelineError, greedy_baseline, run_pipeline};
use sepcolor::verify::{verify_bound, verify_coloring};
use sepcolor::witness::{
    RungPattern, gen_even_cycle, gen_even_torus, gen_random_bipartite, gen_two_ended_ladder,
};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SepStatus {
    Ok = 0,
    /// Null pointer, undersized buffer, or otherwise unusable argument.
    InvalidArgument = 1,
    /// Input text is not a valid document.
    Parse = 2,
    /// The graph is not bipartite (an odd cycle exists).
    NotBipartite = 3,
    /// The witness block is missing for an operation that needs one.
    MissingWitness = 4,
    /// The witness does not validate against the graph.
    InvalidWitness = 5,
    /// A produced coloring failed verification.
    VerifyFailed = 6,
    /// Internal invariant failure; indicates a bug, not bad input.
    Internal = 7,
}

/// Coloring algorithm selector for [`sep_color`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SepColorMode {
    /// Barrier/matching pipeline; requires a witness block.
    Pipeline = 0,
    /// Seeded greedy baseline (at most 2*delta - 1 colors).
    Greedy = 1,
    /// Plain König coloring with delta colors.
    Konig = 2,
}

/// Opaque handle: a loaded graph document (graph, optional bipartition,
/// optional witness, provenance).
pub struct SepInstance {
    instance: LoadedInstance,
    document: GraphDocument,
}

/// Opaque handle: a coloring document produced by [`sep_color`] or parsed
/// from JSON.
pub struct SepColoring {
    document: ColoringDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(text).expect("NUL stripped"));
    });
}

fn fail(status: SepStatus, message: impl Into<String>) -> SepStatus {
    set_error(message);
    status
}

/// Message describing the most recent failure on this thread, or null if
/// nothing failed yet. The pointer stays valid until the next failure on the
/// same thread; do not free it.
#[unsafe(no_mangle)]
pub extern "C" fn sep_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> SepStatus {
    if out.is_null() {
        return fail(SepStatus::InvalidArgument, "null out-parameter");
    }
    unsafe { out.write(value) };
    SepStatus::Ok
}

fn boxed_instance(
    bundle: Result<sepcolor::witness::InstanceBundle, sepcolor::witness::WitnessError>,
    out: *mut *mut SepInstance,
) -> SepStatus {
    match bundle {
        Ok(bundle) => {
            let document = GraphDocument::from_bundle(&bundle);
            let instance = match document.load() {
                Ok(instance) => instance,
                Err(err) => return fail(SepStatus::Internal, err.to_string()),
            };
            let handle = Box::new(SepInstance { instance, document });
            unsafe { write_out(out, Box::into_raw(handle)) }
        }
        Err(err) => fail(SepStatus::InvalidArgument, err.to_string()),
    }
}

/// Parses a graph document (JSON, format_version 1) into an instance handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_from_json(
    json: *const c_char,
    out: *mut *mut SepInstance,
) -> SepStatus {
    if json.is_null() || out.is_null() {
        return fail(SepStatus::InvalidArgument, "null argument");
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(text) => text,
        Err(_) => return fail(SepStatus::Parse, "input is not valid UTF-8"),
    };
    let document = match GraphDocument::parse(text) {
        Ok(doc) => doc,
        Err(err) => return fail(SepStatus::Parse, err.to_string()),
    };
    let instance = match document.load() {
        Ok(instance) => instance,
        Err(err) => return fail(SepStatus::Parse, err.to_string()),
    };
    unsafe {
        write_out(
            out,
            Box::into_raw(Box::new(SepInstance { instance, document })),
        )
    }
}

/// Even cycle C_{2*n_half} with an s = 1 witness of alternating arcs.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_generate_even_cycle(
    n_half: usize,
    arc_length: usize,
    r: usize,
    out: *mut *mut SepInstance,
) -> SepStatus {
    boxed_instance(gen_even_cycle(n_half, arc_length, r), out)
}

/// 4-regular torus grid with an s = 1 witness of alternating slabs.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_generate_even_torus(
    width: usize,
    height: usize,
    slab_thickness: usize,
    r: usize,
    out: *mut *mut SepInstance,
) -> SepStatus {
    boxed_instance(gen_even_torus(width, height, slab_thickness, r), out)
}

/// Ladder window of a two-ended graph. `rung_pattern`: 0 = every column,
/// 1 = even columns only.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_generate_ladder(
    length: usize,
    rung_pattern: u32,
    r: usize,
    out: *mut *mut SepInstance,
) -> SepStatus {
    let pattern = match rung_pattern {
        0 => RungPattern::Full,
        1 => RungPattern::Alternating,
        other => {
            return fail(
                SepStatus::InvalidArgument,
                format!("unknown rung pattern id {other}"),
            );
        }
    };
    boxed_instance(gen_two_ended_ladder(length, pattern, r), out)
}

/// Seeded random bipartite graph with a trivial (s = 0) witness.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_generate_random_bipartite(
    n_left: usize,
    n_right: usize,
    max_degree: usize,
    seed: u64,
    out: *mut *mut SepInstance,
) -> SepStatus {
    boxed_instance(
        Ok(gen_random_bipartite(n_left, n_right, max_degree, seed)),
        out,
    )
}

/// Serializes the instance back to its JSON document. The returned string
/// is byte-identical to what the CLI writes for the same instance.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_to_json(
    instance: *const SepInstance,
    out: *mut *mut c_char,
) -> SepStatus {
    let Some(handle) = (unsafe { instance.as_ref() }) else {
        return fail(SepStatus::InvalidArgument, "null instance");
    };
    let json = CString::new(handle.document.to_json()).expect("JSON has no NUL");
    unsafe { write_out(out, json.into_raw()) }
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_vertex_count(instance: *const SepInstance) -> usize {
    unsafe { instance.as_ref() }.map_or(0, |h| h.instance.graph.vertex_count())
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_edge_count(instance: *const SepInstance) -> usize {
    unsafe { instance.as_ref() }.map_or(0, |h| h.instance.graph.edge_count())
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_max_degree(instance: *const SepInstance) -> usize {
    unsafe { instance.as_ref() }.map_or(0, |h| h.instance.graph.max_degree())
}

/// Witness size s, or an error if the document has no witness block.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_witness_size(
    instance: *const SepInstance,
    out: *mut usize,
) -> SepStatus {
    let Some(handle) = (unsafe { instance.as_ref() }) else {
        return fail(SepStatus::InvalidArgument, "null instance");
    };
    match &handle.instance.witness {
        Some(w) => unsafe { write_out(out, w.s()) },
        None => fail(SepStatus::MissingWitness, "instance has no witness block"),
    }
}

fn bipartition_of(instance: &LoadedInstance) -> Result<Bipartition, SepStatus> {
    match &instance.bipartition {
        Some(b) => Ok(b.clone()),
        None => check_bipartite(&instance.graph).map_err(|err| match err {
            KonigError::NotBipartite(cycle) => fail(
                SepStatus::NotBipartite,
                format!("graph is not bipartite; odd cycle: {cycle:?}"),
            ),
            other => fail(SepStatus::InvalidArgument, other.to_string()),
        }),
    }
}

fn pipeline_status(err: &PipelineError) -> SepStatus {
    if err.is_internal() {
        SepStatus::Internal
    } else if matches!(err, PipelineError::InvalidWitness(_)) {
        SepStatus::InvalidWitness
    } else {
        SepStatus::InvalidArgument
    }
}

/// Colors the instance. `radius_override` may be null for the paper-faithful
/// mode (witness radius must equal 10*delta + 1); `seed` only affects greedy
/// mode. The produced coloring has already passed `verify_coloring` (and,
/// for pipeline mode, `verify_bound`) when this returns `SEP_STATUS_OK`.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_color(
    instance: *const SepInstance,
    mode: SepColorMode,
    seed: u64,
    radius_override: *const usize,
    out: *mut *mut SepColoring,
) -> SepStatus {
    let Some(handle) = (unsafe { instance.as_ref() }) else {
        return fail(SepStatus::InvalidArgument, "null instance");
    };
    let g = &handle.instance.graph;
    let document = match mode {
        SepColorMode::Pipeline => {
            let Some(witness) = &handle.instance.witness else {
                return fail(
                    SepStatus::MissingWitness,
                    "pipeline mode requires a witness",
                );
            };
            let b = match bipartition_of(&handle.instance) {
                Ok(b) => b,
                Err(status) => return status,
            };
            let override_value = unsafe { radius_override.as_ref() }.copied();
            let output = match run_pipeline(g, &b, witness, override_value) {
                Ok(output) => output,
                Err(err) => return fail(pipeline_status(&err), err.to_string()),
            };
            let proper = verify_coloring(g, &output.coloring).map(|r| r.pass);
            let bounded = verify_bound(g, witness, &output.coloring).map(|r| r.pass);
            if !(proper.unwrap_or(false) && bounded.unwrap_or(false)) {
                return fail(
                    SepStatus::VerifyFailed,
                    "pipeline coloring failed verification",
                );
            }
            ColoringDocument::for_pipeline(&output)
        }
        SepColorMode::Greedy => {
            let coloring = greedy_baseline(g, seed);
            if !verify_coloring(g, &coloring)
                .map(|r| r.pass)
                .unwrap_or(false)
            {
                return fail(
                    SepStatus::VerifyFailed,
                    "greedy coloring failed verification",
                );
            }
            ColoringDocument::for_greedy(g, &coloring, seed)
        }
        SepColorMode::Konig => {
            let b = match bipartition_of(&handle.instance) {
                Ok(b) => b,
                Err(status) => return status,
            };
            let coloring = match konig_color(g, &b) {
                Ok(coloring) => coloring,
                Err(err) => return fail(SepStatus::InvalidArgument, err.to_string()),
            };
            if !verify_coloring(g, &coloring)
                .map(|r| r.pass)
                .unwrap_or(false)
            {
                return fail(
                    SepStatus::VerifyFailed,
                    "Koenig coloring failed verification",
                );
            }
            ColoringDocument::for_konig(g, &coloring)
        }
    };
    unsafe { write_out(out, Box::into_raw(Box::new(SepColoring { document }))) }
}

/// Parses a coloring document (JSON, format_version 1).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_from_json(
    json: *const c_char,
    out: *mut *mut SepColoring,
) -> SepStatus {
    if json.is_null() || out.is_null() {
        return fail(SepStatus::InvalidArgument, "null argument");
    }
    let text = match unsafe { CStr::from_ptr(json) }.to_str() {
        Ok(text) => text,
        Err(_) => return fail(SepStatus::Parse, "input is not valid UTF-8"),
    };
    match ColoringDocument::parse(text) {
        Ok(document) => unsafe {
            write_out(out, Box::into_raw(Box::new(SepColoring { document })))
        },
        Err(err) => fail(SepStatus::Parse, err.to_string()),
    }
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_to_json(
    coloring: *const SepColoring,
    out: *mut *mut c_char,
) -> SepStatus {
    let Some(handle) = (unsafe { coloring.as_ref() }) else {
        return fail(SepStatus::InvalidArgument, "null coloring");
    };
    let json = CString::new(handle.document.to_json()).expect("JSON has no NUL");
    unsafe { write_out(out, json.into_raw()) }
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_palette_size(coloring: *const SepColoring) -> usize {
    unsafe { coloring.as_ref() }.map_or(0, |h| h.document.palette_size)
}

#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_colors_used(coloring: *const SepColoring) -> usize {
    unsafe { coloring.as_ref() }.map_or(0, |h| h.document.telemetry.colors_used)
}

/// Number of per-edge color entries (aligned with the instance's canonical
/// edge order).
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_edge_count(coloring: *const SepColoring) -> usize {
    unsafe { coloring.as_ref() }.map_or(0, |h| h.document.colors.len())
}

/// Copies the per-edge colors into `buffer`. `buffer_len` must be at least
/// [`sep_coloring_edge_count`].
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_colors(
    coloring: *const SepColoring,
    buffer: *mut usize,
    buffer_len: usize,
) -> SepStatus {
    let Some(handle) = (unsafe { coloring.as_ref() }) else {
        return fail(SepStatus::InvalidArgument, "null coloring");
    };
    let colors = &handle.document.colors;
    if buffer.is_null() || buffer_len < colors.len() {
        return fail(
            SepStatus::InvalidArgument,
            format!(
                "buffer of {buffer_len} too small for {} colors",
                colors.len()
            ),
        );
    }
    unsafe { std::ptr::copy_nonoverlapping(colors.as_ptr(), buffer, colors.len()) };
    SepStatus::Ok
}

/// Verifies the coloring against the instance: properness always, plus the
/// delta + s bound when `check_bound` is set (requires a witness). On
/// success writes whether the checks passed to `out_pass`.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_verify(
    instance: *const SepInstance,
    coloring: *const SepColoring,
    check_bound: bool,
    out_pass: *mut bool,
) -> SepStatus {
    let (Some(inst), Some(col)) = (unsafe { instance.as_ref() }, unsafe { coloring.as_ref() })
    else {
        return fail(SepStatus::InvalidArgument, "null handle");
    };
    let g = &inst.instance.graph;
    let edge_coloring = match col.document.to_coloring(g) {
        Ok(c) => c,
        Err(err) => return fail(SepStatus::InvalidArgument, err.to_string()),
    };
    let mut pass = match verify_coloring(g, &edge_coloring) {
        Ok(report) => report.pass,
        Err(err) => return fail(SepStatus::InvalidArgument, err.to_string()),
    };
    if check_bound {
        let Some(witness) = &inst.instance.witness else {
            return fail(SepStatus::MissingWitness, "bound check requires a witness");
        };
        pass = pass
            && match verify_bound(g, witness, &edge_coloring) {
                Ok(report) => report.pass,
                Err(err) => return fail(SepStatus::InvalidArgument, err.to_string()),
            };
    }
    unsafe { write_out(out_pass, pass) }
}

/// Renders the colored instance as DOT text.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_export_dot(
    instance: *const SepInstance,
    coloring: *const SepColoring,
    out: *mut *mut c_char,
) -> SepStatus {
    let (Some(inst), Some(col)) = (unsafe { instance.as_ref() }, unsafe { coloring.as_ref() })
    else {
        return fail(SepStatus::InvalidArgument, "null handle");
    };
    let g = &inst.instance.graph;
    let edge_coloring: EdgeColoring = match col.document.to_coloring(g) {
        Ok(c) => c,
        Err(err) => return fail(SepStatus::InvalidArgument, err.to_string()),
    };
    let dot = CString::new(render_dot(g, &edge_coloring)).expect("DOT has no NUL");
    unsafe { write_out(out, dot.into_raw()) }
}

/// Releases an instance handle. Null is a no-op.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_instance_free(instance: *mut SepInstance) {
    if !instance.is_null() {
        drop(unsafe { Box::from_raw(instance) });
    }
}

/// Releases a coloring handle. Null is a no-op.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_coloring_free(coloring: *mut SepColoring) {
    if !coloring.is_null() {
        drop(unsafe { Box::from_raw(coloring) });
    }
}

/// Releases a string returned by this library. Null is a no-op.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sep_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}
