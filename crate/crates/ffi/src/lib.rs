//! C ABI over `listopt`.
//!
//! Objects are opaque heap handles created by `*_new`/`listopt_solve` and released with
//! the matching `*_free`. Every fallible call returns a [`ListoptStatus`]; on failure the
//! message is available from [`listopt_last_error_message`] on the same thread.
//! Strings handed out by the library must be released with [`listopt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use listopt::model::{ItemList, Permutation, RequestSequence, Schedule, ScheduleRecord};
use listopt::online::{simulate, OnlinePolicy};
use listopt::oracles::{self, run_oracle, OracleConfig, OracleKind};
use listopt::solver::{self, solve_with, SolverConfig};
use listopt::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ListoptStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad input: unknown item, duplicate label, index out of range.
    Domain = 3,
    /// A size guard was exceeded.
    Config = 4,
    /// Unknown oracle kind or policy name.
    Usage = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// A list in its initial order plus a request sequence.
pub struct ListoptProblem {
    list: ItemList,
    rho0: Permutation,
    sigma: RequestSequence,
    solver_max_l: usize,
    oracle_max_l: usize,
}

/// A solved schedule.
pub struct ListoptSchedule {
    schedule: Schedule,
    record: ScheduleRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ListoptStatus {
    if e.is_config() {
        ListoptStatus::Config
    } else if e.is_usage() || matches!(e, Error::UnknownPolicy(_)) {
        ListoptStatus::Usage
    } else {
        ListoptStatus::Domain
    }
}

/// Runs `f` behind a panic guard and records the error message on failure.
fn guarded(f: impl FnOnce() -> Result<(), (ListoptStatus, String)>) -> ListoptStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ListoptStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ListoptStatus::Internal
        }
    }
}

fn domain(e: Error) -> (ListoptStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (ListoptStatus, String) {
    (ListoptStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ListoptStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        (
            ListoptStatus::InvalidUtf8,
            format!("{what} is not valid UTF-8"),
        )
    })
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (ListoptStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (ListoptStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Parses a comma-separated list (initial order) and comma-separated requests.
///
/// # Safety
/// `list_csv` and `requests_csv` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_problem_new(
    list_csv: *const c_char,
    requests_csv: *const c_char,
    out: *mut *mut ListoptProblem,
) -> ListoptStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let list = ItemList::parse_csv(read_str(list_csv, "list_csv")?).map_err(domain)?;
        let sigma = RequestSequence::parse_csv(&list, read_str(requests_csv, "requests_csv")?)
            .map_err(domain)?;
        let problem = ListoptProblem {
            rho0: list.identity(),
            list,
            sigma,
            solver_max_l: solver::DEFAULT_MAX_L,
            oracle_max_l: oracles::DEFAULT_MAX_L,
        };
        out.write(Box::into_raw(Box::new(problem)));
        Ok(())
    })
}

/// Overrides the list-size guards. Zero leaves a guard unchanged.
///
/// # Safety
/// `problem` must come from [`listopt_problem_new`] and not be freed.
#[no_mangle]
pub unsafe extern "C" fn listopt_problem_set_max_l(
    problem: *mut ListoptProblem,
    solver_max_l: usize,
    oracle_max_l: usize,
) -> ListoptStatus {
    guarded(|| {
        let p = problem.as_mut().ok_or_else(|| null("problem"))?;
        if solver_max_l != 0 {
            p.solver_max_l = solver_max_l;
        }
        if oracle_max_l != 0 {
            p.oracle_max_l = oracle_max_l;
        }
        Ok(())
    })
}

/// Number of items and of requests.
///
/// # Safety
/// `problem` must be a live handle; `out_l` and `out_m` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_problem_size(
    problem: *const ListoptProblem,
    out_l: *mut usize,
    out_m: *mut usize,
) -> ListoptStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        write_out(out_l, p.list.len(), "out_l")?;
        write_out(out_m, p.sigma.len(), "out_m")
    })
}

/// # Safety
/// `problem` must be null or a handle from [`listopt_problem_new`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn listopt_problem_free(problem: *mut ListoptProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Computes the optimal element-transfer schedule.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_solve(
    problem: *const ListoptProblem,
    out: *mut *mut ListoptSchedule,
) -> ListoptStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let p = deref(problem, "problem")?;
        let config = SolverConfig {
            max_l: p.solver_max_l,
            parallel: false,
        };
        let schedule = solve_with(&p.rho0, &p.sigma, &config).map_err(domain)?;
        let record = schedule.to_record(&p.list, &p.sigma).map_err(domain)?;
        out.write(Box::into_raw(Box::new(ListoptSchedule {
            schedule,
            record,
        })));
        Ok(())
    })
}

/// Total cost, or 0 for a null handle.
///
/// # Safety
/// `schedule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_total(schedule: *const ListoptSchedule) -> u64 {
    schedule.as_ref().map_or(0, |s| s.schedule.total)
}

/// Number of requests the schedule serves, or 0 for a null handle.
///
/// # Safety
/// `schedule` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_len(schedule: *const ListoptSchedule) -> usize {
    schedule.as_ref().map_or(0, |s| s.schedule.targets.len())
}

/// 1-based target position of the request at 0-based index `i`.
///
/// # Safety
/// `schedule` must be a live handle; `out_target` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_target(
    schedule: *const ListoptSchedule,
    i: usize,
    out_target: *mut usize,
) -> ListoptStatus {
    guarded(|| {
        let s = deref(schedule, "schedule")?;
        let len = s.schedule.targets.len();
        let &t = s
            .schedule
            .targets
            .get(i)
            .ok_or_else(|| domain(Error::RequestIndexOutOfRange { index: i, len }))?;
        write_out(out_target, t, "out_target")
    })
}

/// Initial ordering as 0-based item indices; writes `l` entries to `out_order`.
///
/// # Safety
/// `schedule` must be a live handle; `out_order` must have room for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_initial(
    schedule: *const ListoptSchedule,
    out_order: *mut usize,
    len: usize,
) -> ListoptStatus {
    guarded(|| {
        let s = deref(schedule, "schedule")?;
        let order = s.schedule.initial.order();
        if out_order.is_null() {
            return Err(null("out_order"));
        }
        if len < order.len() {
            return Err((
                ListoptStatus::Domain,
                format!("buffer holds {len} entries, need {}", order.len()),
            ));
        }
        ptr::copy_nonoverlapping(order.as_ptr(), out_order, order.len());
        Ok(())
    })
}

/// Schedule as JSON (initial ordering, per-request records, total). Free with
/// [`listopt_string_free`].
///
/// # Safety
/// `schedule` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_to_json(
    schedule: *const ListoptSchedule,
    out: *mut *mut c_char,
) -> ListoptStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(ptr::null_mut());
        let s = deref(schedule, "schedule")?;
        let json = serde_json::to_string(&s.record)
            .map_err(|e| (ListoptStatus::Internal, e.to_string()))?;
        let c = CString::new(json).map_err(|e| (ListoptStatus::Internal, e.to_string()))?;
        out.write(c.into_raw());
        Ok(())
    })
}

/// # Safety
/// `schedule` must be null or a handle from [`listopt_solve`], freed at most once.
#[no_mangle]
pub unsafe extern "C" fn listopt_schedule_free(schedule: *mut ListoptSchedule) {
    if !schedule.is_null() {
        drop(Box::from_raw(schedule));
    }
}

/// Brute-force optimum; `kind` is `all`, `paid-free` or `subset`.
///
/// # Safety
/// `problem` must be a live handle, `kind` a NUL-terminated string, `out_total` writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_oracle(
    problem: *const ListoptProblem,
    kind: *const c_char,
    out_total: *mut u64,
) -> ListoptStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        let kind: OracleKind = read_str(kind, "kind")?.parse().map_err(domain)?;
        let config = OracleConfig {
            max_l: p.oracle_max_l,
            ..OracleConfig::default()
        };
        let r = run_oracle(kind, &p.rho0, &p.sigma, &config).map_err(domain)?;
        write_out(out_total, r.total, "out_total")
    })
}

/// Online policy cost; `policy` is `mtf`, `transpose` or `frequency-count`.
///
/// # Safety
/// `problem` must be a live handle, `policy` a NUL-terminated string, `out_total` writable.
#[no_mangle]
pub unsafe extern "C" fn listopt_online(
    problem: *const ListoptProblem,
    policy: *const c_char,
    out_total: *mut u64,
) -> ListoptStatus {
    guarded(|| {
        let p = deref(problem, "problem")?;
        let policy: OnlinePolicy = read_str(policy, "policy")?.parse().map_err(domain)?;
        let run = simulate(policy, &p.rho0, &p.sigma).map_err(domain)?;
        write_out(out_total, run.total, "out_total")
    })
}

/// Message for the last failed call on this thread ("" after a success). The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn listopt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn listopt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
