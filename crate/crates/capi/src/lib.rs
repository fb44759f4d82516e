//! C ABI for the basym engine: opaque session handles, status codes, and
//! JSON-string results. The generated header lives in `include/basym.h`.

use basym::report::{parse_command, run};
use basym::session::Session;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasymStatus {
    BasymOk = 0,
    BasymNullArgument = 1,
    BasymInvalidUtf8 = 2,
    BasymParseError = 3,
    BasymUnknownCommand = 4,
    BasymComputeError = 5,
    BasymPanic = 6,
}

/// Opaque session handle.
pub struct BasymSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn basym_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copy of the last error message on this thread, or null when none.
/// Free the result with `basym_string_free`.
#[no_mangle]
pub extern "C" fn basym_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Parses a session source into a new handle.
///
/// # Safety
/// `source` must be a NUL-terminated string and `out_session` a valid
/// pointer; the handle must be released with `basym_session_free`.
#[no_mangle]
pub unsafe extern "C" fn basym_session_parse(
    source: *const c_char,
    out_session: *mut *mut BasymSession,
) -> BasymStatus {
    if source.is_null() || out_session.is_null() {
        set_error("null argument".into());
        return BasymStatus::BasymNullArgument;
    }
    let Ok(src) = CStr::from_ptr(source).to_str() else {
        set_error("source is not valid UTF-8".into());
        return BasymStatus::BasymInvalidUtf8;
    };
    match catch_unwind(|| Session::parse(src)) {
        Ok(Ok(session)) => {
            *out_session = Box::into_raw(Box::new(BasymSession { inner: session }));
            BasymStatus::BasymOk
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            BasymStatus::BasymParseError
        }
        Err(_) => {
            set_error("internal panic during parse".into());
            BasymStatus::BasymPanic
        }
    }
}

/// Releases a session handle. Null is a no-op.
///
/// # Safety
/// `session` must come from `basym_session_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn basym_session_free(session: *mut BasymSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Overrides the window of a session: exponent range [t_lo, t_hi] for every
/// block and, when positive, the degree-weight cap.
///
/// # Safety
/// `session` must be a live handle from `basym_session_parse`.
#[no_mangle]
pub unsafe extern "C" fn basym_session_window(
    session: *mut BasymSession,
    t_lo: i64,
    t_hi: i64,
    wcap: i64,
) -> BasymStatus {
    let Some(handle) = session.as_mut() else {
        set_error("null session".into());
        return BasymStatus::BasymNullArgument;
    };
    if t_lo < 0 || t_lo > t_hi {
        set_error("window bounds must satisfy 0 <= lo <= hi".into());
        return BasymStatus::BasymParseError;
    }
    let s = handle.inner.ideals.len();
    handle.inner.window.t_ranges = vec![(t_lo, t_hi); s];
    if wcap > 0 {
        handle.inner.window.wcap = wcap;
    }
    BasymStatus::BasymOk
}

/// Runs a command (betti | rees | gb | stanley | shape | verify) and returns
/// the JSON report as a newly allocated string in `out_json`; free it with
/// `basym_string_free`. `ell` below zero selects the command default.
///
/// # Safety
/// `session` must be a live handle; `command` a NUL-terminated string;
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn basym_run_json(
    session: *const BasymSession,
    command: *const c_char,
    ell: i32,
    out_json: *mut *mut c_char,
) -> BasymStatus {
    if session.is_null() || command.is_null() || out_json.is_null() {
        set_error("null argument".into());
        return BasymStatus::BasymNullArgument;
    }
    let Ok(name) = CStr::from_ptr(command).to_str() else {
        set_error("command is not valid UTF-8".into());
        return BasymStatus::BasymInvalidUtf8;
    };
    let ell_opt = if ell < 0 { None } else { Some(ell as usize) };
    let cmd = match parse_command(name, ell_opt) {
        Ok(c) => c,
        Err(e) => {
            set_error(e.to_string());
            return BasymStatus::BasymUnknownCommand;
        }
    };
    let inner = &(*session).inner;
    match catch_unwind(AssertUnwindSafe(|| run(inner, &cmd))) {
        Ok(Ok(output)) => {
            let text = serde_json::to_string_pretty(&output.json)
                .unwrap_or_else(|_| "{}".to_string());
            match CString::new(text) {
                Ok(c) => {
                    *out_json = c.into_raw();
                    BasymStatus::BasymOk
                }
                Err(_) => {
                    set_error("report contained an interior NUL".into());
                    BasymStatus::BasymComputeError
                }
            }
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            BasymStatus::BasymComputeError
        }
        Err(_) => {
            set_error("internal panic during computation".into());
            BasymStatus::BasymPanic
        }
    }
}

/// Frees a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn basym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(src: &str) -> CString {
        CString::new(src).unwrap()
    }

    #[test]
    fn parse_run_and_free_through_the_abi() {
        let src = c("grading Z^1; ring x:1 y:1; ideal I = x, y; window t=1..2 wcap=20;");
        let mut session: *mut BasymSession = std::ptr::null_mut();
        let st = unsafe { basym_session_parse(src.as_ptr(), &mut session) };
        assert_eq!(st, BasymStatus::BasymOk);
        assert!(!session.is_null());

        let cmd = c("verify");
        let mut out: *mut c_char = std::ptr::null_mut();
        let st = unsafe { basym_run_json(session, cmd.as_ptr(), -1, &mut out) };
        assert_eq!(st, BasymStatus::BasymOk);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
        assert!(text.contains("\"all_match\": true"), "{text}");
        unsafe { basym_string_free(out) };
        unsafe { basym_session_free(session) };
    }

    #[test]
    fn parse_errors_set_the_message() {
        let src = c("grading Z^1; ring x:1; ideal K = x + ;");
        let mut session: *mut BasymSession = std::ptr::null_mut();
        let st = unsafe { basym_session_parse(src.as_ptr(), &mut session) };
        assert_eq!(st, BasymStatus::BasymParseError);
        let err = basym_last_error();
        assert!(!err.is_null());
        let msg = unsafe { CStr::from_ptr(err) }.to_str().unwrap().to_string();
        assert!(msg.contains("line"), "{msg}");
        unsafe { basym_string_free(err) };
    }

    #[test]
    fn window_override_and_unknown_command() {
        let src = c("grading Z^1; ring x:1 y:1; ideal I = x, y;");
        let mut session: *mut BasymSession = std::ptr::null_mut();
        unsafe { basym_session_parse(src.as_ptr(), &mut session) };
        let st = unsafe { basym_session_window(session, 1, 2, 30) };
        assert_eq!(st, BasymStatus::BasymOk);
        let cmd = c("frobnicate");
        let mut out: *mut c_char = std::ptr::null_mut();
        let st = unsafe { basym_run_json(session, cmd.as_ptr(), -1, &mut out) };
        assert_eq!(st, BasymStatus::BasymUnknownCommand);
        unsafe { basym_session_free(session) };
    }
}
