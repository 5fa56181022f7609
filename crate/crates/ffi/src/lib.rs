//! C ABI over the `smallworld` library.
//!
//! Graphs are opaque `SwGraph` handles released with [`sw_graph_free`].
//! Every fallible call returns an [`SwStatus`]; on failure a description is
//! available from [`sw_last_error`] on the same thread. Strings returned by
//! the library are owned by the caller and released with [`sw_string_free`].
//! Enum-valued parameters are plain `int` so out-of-range values from C are
//! reported as `SW_STATUS_INVALID_ARGUMENT` rather than being undefined.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::io::Cursor;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use smallworld::error::{NullModelError, EXIT_DEGENERATE};
use smallworld::ingest::{ingest, ingest_path, ExclusionList, Ingested, InputFormat};
use smallworld::metrics::{
    apsp_stats, average_clustering, compute_report, density, triangle_count, ClusteringPolicy, DensityMode, PathScope,
    ReportOptions,
};
use smallworld::null_models::{gen_ba, gen_er, gen_ws, robustness_probe, small_world_index, RobustnessStrategy};
use smallworld::report::{to_json, ReportDocument};
use smallworld::{Error, Graph, GraphBuilder, NodeId};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// Malformed input, I/O failure or out-of-range parameter.
    Input = 4,
    /// The graph is too small or disconnected for the requested metric.
    Degenerate = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwFormat {
    Edgelist = 0,
    Table = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwScope {
    Lcc = 0,
    Whole = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwPolicy {
    Include = 0,
    Exclude = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwDensityMode {
    Unipartite = 0,
    Bipartite = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwStrategy {
    Random = 0,
    Hub = 1,
}

/// Opaque graph handle.
pub struct SwGraph {
    graph: Graph,
    ingested: Option<Ingested>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SwPathStats {
    pub diameter: u32,
    pub average_path_length: f64,
    pub reachable_pairs: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SwSmallWorld {
    pub sigma: f64,
    pub c_observed: f64,
    pub c_random: f64,
    pub l_observed: f64,
    pub l_random: f64,
    pub is_small_world: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(SwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.exit_code() == EXIT_DEGENERATE {
            SwStatus::Degenerate
        } else {
            SwStatus::Input
        };
        Failure(status, e.to_string())
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}
impl_failure_from!(
    smallworld::error::GraphError,
    smallworld::error::IngestError,
    smallworld::error::MetricsError,
    NullModelError
);

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(SwStatus::InvalidArgument, msg.into())
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_owned());
            set_last_error(format!("internal panic: {msg}"));
            SwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SwStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SwStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn graph_arg<'a>(g: *const SwGraph) -> Result<&'a SwGraph, Failure> {
    g.as_ref()
        .ok_or_else(|| Failure(SwStatus::NullPointer, "graph handle is null".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(SwStatus::NullPointer, "output pointer is null".into()))
}

fn format_arg(format: c_int) -> Result<InputFormat, Failure> {
    match format {
        x if x == SwFormat::Edgelist as c_int => Ok(InputFormat::Edgelist),
        x if x == SwFormat::Table as c_int => Ok(InputFormat::Table),
        _ => Err(invalid(format!("unknown format {format}"))),
    }
}

fn scope_arg(scope: c_int) -> Result<PathScope, Failure> {
    match scope {
        x if x == SwScope::Lcc as c_int => Ok(PathScope::LargestComponent),
        x if x == SwScope::Whole as c_int => Ok(PathScope::WholeGraph),
        _ => Err(invalid(format!("unknown scope {scope}"))),
    }
}

fn policy_arg(policy: c_int) -> Result<ClusteringPolicy, Failure> {
    match policy {
        x if x == SwPolicy::Include as c_int => Ok(ClusteringPolicy::IncludeLowDegreeAsZero),
        x if x == SwPolicy::Exclude as c_int => Ok(ClusteringPolicy::ExcludeLowDegree),
        _ => Err(invalid(format!("unknown clustering policy {policy}"))),
    }
}

fn density_arg(mode: c_int) -> Result<DensityMode, Failure> {
    match mode {
        x if x == SwDensityMode::Unipartite as c_int => Ok(DensityMode::Unipartite),
        x if x == SwDensityMode::Bipartite as c_int => Ok(DensityMode::Bipartite),
        _ => Err(invalid(format!("unknown density mode {mode}"))),
    }
}

fn strategy_arg(strategy: c_int) -> Result<RobustnessStrategy, Failure> {
    match strategy {
        x if x == SwStrategy::Random as c_int => Ok(RobustnessStrategy::Random),
        x if x == SwStrategy::Hub as c_int => Ok(RobustnessStrategy::Hub),
        _ => Err(invalid(format!("unknown strategy {strategy}"))),
    }
}

fn into_handle(graph: Graph, ingested: Option<Ingested>, out: &mut *mut SwGraph) {
    *out = Box::into_raw(Box::new(SwGraph { graph, ingested }));
}

fn finish_ingest(mut ingested: Ingested, case_fold: bool, out: &mut *mut SwGraph) -> Result<(), Failure> {
    let graph = GraphBuilder::new()
        .case_fold(case_fold)
        .build(ingested.pairs.iter().map(|p| p.as_tuple()))?;
    ingested.settle_duplicates(graph.edge_count());
    into_handle(graph, Some(ingested), out);
    Ok(())
}

fn string_out(s: String, out: &mut *mut c_char) -> Result<(), Failure> {
    *out = CString::new(s).map_err(|_| invalid("output contains NUL"))?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads and cleans a file. `format` is an `SwFormat` value.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_from_path(
    path: *const c_char,
    format: c_int,
    case_fold: bool,
    out: *mut *mut SwGraph,
) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        let path = str_arg(path, "path")?;
        let ingested = ingest_path(Path::new(path), format_arg(format)?, &ExclusionList::default())?;
        finish_ingest(ingested, case_fold, out)
    })
}

/// Like [`sw_graph_from_path`] but reads CSV text from memory.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_from_str(
    text: *const c_char,
    format: c_int,
    case_fold: bool,
    out: *mut *mut SwGraph,
) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        let text = str_arg(text, "text")?;
        let ingested = ingest(
            Cursor::new(text.as_bytes()),
            format_arg(format)?,
            &ExclusionList::default(),
        )?;
        finish_ingest(ingested, case_fold, out)
    })
}

/// Builds a graph from `len` (startup, investor) label pairs.
///
/// # Safety
/// `startups` and `investors` must each point to `len` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_from_pairs(
    startups: *const *const c_char,
    investors: *const *const c_char,
    len: usize,
    out: *mut *mut SwGraph,
) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        if len > 0 && (startups.is_null() || investors.is_null()) {
            return Err(Failure(SwStatus::NullPointer, "pair arrays are null".into()));
        }
        let mut pairs = Vec::with_capacity(len);
        for i in 0..len {
            pairs.push((
                str_arg(*startups.add(i), "startup label")?,
                str_arg(*investors.add(i), "investor label")?,
            ));
        }
        into_handle(GraphBuilder::new().build(pairs)?, None, out);
        Ok(())
    })
}

/// Erdős–Rényi graph with exactly `m` edges.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_generate_er(n: usize, m: usize, seed: u64, out: *mut *mut SwGraph) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        into_handle(gen_er(n, m, seed)?, None, out);
        Ok(())
    })
}

/// Watts–Strogatz ring of even degree `k` rewired with probability `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_generate_ws(n: usize, k: usize, p: f64, seed: u64, out: *mut *mut SwGraph) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        into_handle(gen_ws(n, k, p, seed)?, None, out);
        Ok(())
    })
}

/// Barabási–Albert graph, `m_attach` edges per arriving node.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_generate_ba(n: usize, m_attach: usize, seed: u64, out: *mut *mut SwGraph) -> SwStatus {
    guard(|| {
        let out = out_arg(out)?;
        into_handle(gen_ba(n, m_attach, seed)?, None, out);
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_free(g: *mut SwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Node count, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_node_count(g: *const SwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.node_count())
}

/// Edge count, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_edge_count(g: *const SwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_degree(g: *const SwGraph, node: u32, out: *mut usize) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        *out = g.graph.degree(NodeId(node))?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_density(g: *const SwGraph, mode: c_int, out: *mut f64) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        *out = density(&g.graph, density_arg(mode)?)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_average_clustering(g: *const SwGraph, policy: c_int, out: *mut f64) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        *out = average_clustering(&g.graph, policy_arg(policy)?)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_triangle_count(g: *const SwGraph, out: *mut u64) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        *out = triangle_count(&g.graph);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_path_stats(g: *const SwGraph, scope: c_int, out: *mut SwPathStats) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        let stats = apsp_stats(&g.graph, scope_arg(scope)?)?;
        *out = SwPathStats {
            diameter: stats.diameter,
            average_path_length: stats.average_path_length,
            reachable_pairs: stats.reachable_pairs,
        };
        Ok(())
    })
}

/// Full report as JSON with default options, named `name`.
///
/// # Safety
/// `g` must be a live handle, `name` a NUL-terminated string and `out`
/// writable. The returned string is freed with [`sw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sw_graph_report_json(
    g: *const SwGraph,
    name: *const c_char,
    out: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        let name = str_arg(name, "name")?;
        let metrics = compute_report(&g.graph, &ReportOptions::default())?;
        let mut doc = ReportDocument::new(name, metrics);
        if let Some(ing) = &g.ingested {
            doc.record_log = ing.record_log;
            doc.pair_log = Some(ing.pair_log);
        }
        string_out(to_json(&doc), out)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sw_graph_small_world(
    g: *const SwGraph,
    samples: usize,
    seed: u64,
    out: *mut SwSmallWorld,
) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        let v = small_world_index(&g.graph, samples, seed)?;
        *out = SwSmallWorld {
            sigma: v.sigma,
            c_observed: v.c_observed,
            c_random: v.c_random,
            l_observed: v.l_observed,
            l_random: v.l_random,
            is_small_world: v.is_small_world,
        };
        Ok(())
    })
}

/// Node-removal probe result as JSON.
///
/// # Safety
/// `g` must be a live handle and `out` writable. The returned string is
/// freed with [`sw_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sw_graph_robustness_json(
    g: *const SwGraph,
    strategy: c_int,
    fraction: f64,
    trials: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        let (g, out) = (graph_arg(g)?, out_arg(out)?);
        let result = robustness_probe(&g.graph, strategy_arg(strategy)?, fraction, trials, seed)?;
        string_out(to_json(&result), out)
    })
}
