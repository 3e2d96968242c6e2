//! C ABI over the ivybound library.
//!
//! Handles are opaque pointers created and destroyed by this library; every
//! fallible call returns an [`IvyStatus`] and writes its result through out
//! pointers. Strings returned through out pointers are NUL-terminated,
//! allocated here, and must be released with [`ivy_string_free`]. On any
//! non-OK status, [`ivy_last_error_message`] exposes a human-readable
//! message for the calling thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use ivybound::bounds::universal_lower_bound;
use ivybound::design::{
    bounded_size_intervention_set, single_multinode_intervention, sink_complement_interventions,
};
use ivybound::essential::{fully_orients, i_essential_graph};
use ivybound::oracle::optimal_atomic_size;
use ivybound::{Dag, Error, InterventionSet};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvyStatus {
    Ok = 0,
    /// Malformed edge-list or intervention text.
    ParseError = 1,
    /// A parameter violates the documented preconditions.
    InvalidParameter = 2,
    /// An enumeration budget was exhausted.
    BudgetExceeded = 3,
    /// A required pointer argument was NULL.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An internal invariant failed; see `ivy_last_error_message`.
    InternalError = 6,
}

/// Which intervention-set construction `ivy_design` runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvyDesignMode {
    /// Atomic interventions on every non-sink vertex.
    Atomic = 0,
    /// A single multi-node intervention.
    MultiNode = 1,
    /// The multi-node intervention split into chunks of at most k targets.
    Chunked = 2,
}

/// Lower-bound report of one DAG.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IvyBoundsReport {
    pub n: usize,
    pub r: usize,
    pub r_star: usize,
    pub omega: usize,
    pub our_bound: usize,
    pub prior_bound: usize,
}

/// Size and certificate of a constructed intervention set.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IvyDesignReport {
    /// Number of interventions, the empty one not counted.
    pub size: usize,
    /// Re-verified full-orientation verdict.
    pub certified: bool,
}

/// Outcome of the exact atomic-intervention search.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct IvyOracleReport {
    pub optimal_size: usize,
    pub subsets_checked: u64,
    pub budget_hit: bool,
}

/// Opaque DAG handle.
pub struct IvyDag {
    inner: Dag,
}

/// Opaque intervention-set handle.
pub struct IvyInterventions {
    inner: InterventionSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn stash_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_for(err: &Error) -> IvyStatus {
    match err {
        Error::Parse { .. }
        | Error::InvalidName(_)
        | Error::UnknownName(_)
        | Error::DirectedCycle
        | Error::ConflictingAdjacency(..)
        | Error::SelfAdjacency(_) => IvyStatus::ParseError,
        Error::InvalidParameter(_) => IvyStatus::InvalidParameter,
        Error::BudgetExceeded => IvyStatus::BudgetExceeded,
        _ => IvyStatus::InternalError,
    }
}

fn fail(err: &Error) -> IvyStatus {
    stash_error(&err.to_string());
    status_for(err)
}

/// # Safety
/// `ptr` must be NULL or a string returned by this library.
unsafe fn read_c_str<'a>(ptr: *const c_char) -> Result<&'a str, IvyStatus> {
    if ptr.is_null() {
        stash_error("NULL string argument");
        return Err(IvyStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        stash_error("string argument is not valid UTF-8");
        IvyStatus::InvalidUtf8
    })
}

fn write_string(out: *mut *mut c_char, text: String) -> IvyStatus {
    let cleaned = text.replace('\0', " ");
    match CString::new(cleaned) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            IvyStatus::Ok
        }
        Err(_) => {
            stash_error("output contained an interior NUL byte");
            IvyStatus::InternalError
        }
    }
}

/// Message of the last failing call on this thread. The pointer stays valid
/// until the next failing call; do not free it.
#[no_mangle]
pub extern "C" fn ivy_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse an edge list (`u -> v` per line, `#` comments) describing a DAG.
///
/// # Safety
/// `edge_list` must point to a NUL-terminated string and `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivy_dag_parse(
    edge_list: *const c_char,
    out: *mut *mut IvyDag,
) -> IvyStatus {
    if out.is_null() {
        stash_error("NULL out pointer");
        return IvyStatus::NullPointer;
    }
    let text = match read_c_str(edge_list) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Dag::parse_edge_list(text) {
        Ok(dag) => {
            *out = Box::into_raw(Box::new(IvyDag { inner: dag }));
            IvyStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release a DAG handle. NULL is accepted.
///
/// # Safety
/// `dag` must be NULL or a pointer returned by [`ivy_dag_parse`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ivy_dag_free(dag: *mut IvyDag) {
    if !dag.is_null() {
        drop(Box::from_raw(dag));
    }
}

/// Number of vertices of a DAG handle.
///
/// # Safety
/// `dag` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ivy_dag_vertex_count(dag: *const IvyDag) -> usize {
    dag.as_ref().map_or(0, |d| d.inner.vertex_count())
}

/// Serialize a DAG handle back to the edge-list format.
///
/// # Safety
/// `dag` must be a live handle; `out` must be valid. The returned string is
/// freed with [`ivy_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ivy_dag_to_edge_list(
    dag: *const IvyDag,
    out: *mut *mut c_char,
) -> IvyStatus {
    let (Some(dag), false) = (dag.as_ref(), out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    write_string(out, dag.inner.to_edge_list())
}

/// Parse an intervention-set file (one comma-separated intervention per
/// line, `#` comments, empty intervention implicit) against a DAG's vertex
/// names.
///
/// # Safety
/// `dag` must be a live handle, `text` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ivy_interventions_parse(
    dag: *const IvyDag,
    text: *const c_char,
    out: *mut *mut IvyInterventions,
) -> IvyStatus {
    let (Some(dag), false) = (dag.as_ref(), out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    let text = match read_c_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match InterventionSet::parse(text, dag.inner.graph()) {
        Ok(iv) => {
            *out = Box::into_raw(Box::new(IvyInterventions { inner: iv }));
            IvyStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Release an intervention-set handle. NULL is accepted.
///
/// # Safety
/// `iv` must be NULL or a live handle from [`ivy_interventions_parse`].
#[no_mangle]
pub unsafe extern "C" fn ivy_interventions_free(iv: *mut IvyInterventions) {
    if !iv.is_null() {
        drop(Box::from_raw(iv));
    }
}

/// Fill `report` with the lower-bound statistics of a DAG.
///
/// # Safety
/// `dag` must be a live handle and `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ivy_lower_bounds(
    dag: *const IvyDag,
    report: *mut IvyBoundsReport,
) -> IvyStatus {
    let (Some(dag), false) = (dag.as_ref(), report.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    match universal_lower_bound(&dag.inner) {
        Ok(b) => {
            *report = IvyBoundsReport {
                n: b.n,
                r: b.r,
                r_star: b.r_star,
                omega: b.omega,
                our_bound: b.our_bound,
                prior_bound: b.prior_bound,
            };
            IvyStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Construct an intervention set. `k` is only read in chunked mode. The
/// intervention-set text goes to `text_out` (freed with
/// [`ivy_string_free`]); size and certificate land in `report`.
///
/// # Safety
/// `dag` must be a live handle; `report` and `text_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ivy_design(
    dag: *const IvyDag,
    mode: IvyDesignMode,
    k: usize,
    report: *mut IvyDesignReport,
    text_out: *mut *mut c_char,
) -> IvyStatus {
    let (Some(dag), false, false) = (dag.as_ref(), report.is_null(), text_out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    let result = match mode {
        IvyDesignMode::Atomic => sink_complement_interventions(&dag.inner),
        IvyDesignMode::MultiNode => single_multinode_intervention(&dag.inner),
        IvyDesignMode::Chunked => bounded_size_intervention_set(&dag.inner, k),
    };
    match result {
        Ok(design) => {
            *report = IvyDesignReport {
                size: design.size,
                certified: design.certified,
            };
            write_string(text_out, design.interventions.format(dag.inner.graph()))
        }
        Err(e) => fail(&e),
    }
}

/// Does the intervention set fully orient the DAG's equivalence class?
///
/// # Safety
/// `dag` and `iv` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ivy_verify(
    dag: *const IvyDag,
    iv: *const IvyInterventions,
    out: *mut bool,
) -> IvyStatus {
    let (Some(dag), Some(iv), false) = (dag.as_ref(), iv.as_ref(), out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    match fully_orients(&dag.inner, &iv.inner) {
        Ok(v) => {
            *out = v;
            IvyStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Serialize the interventional essential graph as an edge list.
///
/// # Safety
/// `dag` and `iv` must be live handles; `out` must be valid. The string is
/// freed with [`ivy_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ivy_essential_edge_list(
    dag: *const IvyDag,
    iv: *const IvyInterventions,
    out: *mut *mut c_char,
) -> IvyStatus {
    let (Some(dag), Some(iv), false) = (dag.as_ref(), iv.as_ref(), out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    match i_essential_graph(&dag.inner, &iv.inner) {
        Ok(e) => write_string(out, e.graph().to_edge_list()),
        Err(e) => fail(&e),
    }
}

/// Exact smallest atomic intervention set, spending at most `budget`
/// orientation checks. The witness targets are written as a comma-separated
/// name list to `witness_out` (freed with [`ivy_string_free`]). When the
/// budget runs out the call still returns `Ok` with `budget_hit` set and
/// partial fields.
///
/// # Safety
/// `dag` must be a live handle; `report` and `witness_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ivy_optimal_atomic(
    dag: *const IvyDag,
    budget: u64,
    report: *mut IvyOracleReport,
    witness_out: *mut *mut c_char,
) -> IvyStatus {
    let (Some(dag), false, false) = (dag.as_ref(), report.is_null(), witness_out.is_null()) else {
        stash_error("NULL argument");
        return IvyStatus::NullPointer;
    };
    match optimal_atomic_size(&dag.inner, budget) {
        Ok(res) => {
            *report = IvyOracleReport {
                optimal_size: res.optimal_size,
                subsets_checked: res.subsets_checked,
                budget_hit: res.budget_hit,
            };
            let names: Vec<&str> = res
                .witness_set
                .iter()
                .map(|&v| dag.inner.name(v))
                .collect();
            write_string(witness_out, names.join(","))
        }
        Err(e) => fail(&e),
    }
}

/// Release a string returned by this library. NULL is accepted.
///
/// # Safety
/// `s` must be NULL or a string pointer produced by this library that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn ivy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
