//! C interface to the unireal engine.
//!
//! Every fallible function returns a [`UnirealStatus`]. On failure the
//! message is available from [`unireal_last_error`] until the next call on
//! the same thread. Strings handed out through `out` parameters are owned
//! by the caller and must be released with [`unireal_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use unireal::extract::extract;
use unireal::interp::{BaseInterpretation, InterpName};
use unireal::kernel::{parse_proof_file, ProofFile};
use unireal::pipeline::{load_proof, verify_proof, Config, PipelineError, RealizerFile};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnirealStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Syntax = 4,
    ProofRejected = 5,
    UnknownInterpretation = 6,
    ExtractionFailed = 7,
    BadConfig = 8,
    Panic = 9,
}

/// A parsed proof file.
pub struct UnirealProof {
    inner: ProofFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

type Res<T> = Result<T, UnirealStatus>;

fn fail<T>(status: UnirealStatus, msg: impl Into<String>) -> Res<T> {
    set_error(msg);
    Err(status)
}

fn guard(f: impl FnOnce() -> Res<()>) -> UnirealStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UnirealStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            UnirealStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return fail(UnirealStatus::NullArgument, format!("{what} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(_) => fail(UnirealStatus::InvalidUtf8, format!("{what} is not UTF-8")),
    }
}

unsafe fn proof<'a>(p: *const UnirealProof) -> Res<&'a ProofFile> {
    match p.as_ref() {
        Some(h) => Ok(&h.inner),
        None => fail(UnirealStatus::NullArgument, "proof handle is null"),
    }
}

unsafe fn give(out: *mut *mut c_char, s: String) -> Res<()> {
    if out.is_null() {
        return fail(UnirealStatus::NullArgument, "output pointer is null");
    }
    let c = CString::new(s.replace('\0', " ")).expect("nul bytes removed");
    *out = c.into_raw();
    Ok(())
}

fn interp(name: &str) -> Res<InterpName> {
    name.parse().or_else(|_| {
        fail(
            UnirealStatus::UnknownInterpretation,
            format!("unknown interpretation `{name}`"),
        )
    })
}

fn pipeline_status(e: &PipelineError) -> UnirealStatus {
    match e {
        PipelineError::Io { .. } => UnirealStatus::Io,
        PipelineError::Kernel(k) if k.path().is_none() => UnirealStatus::Syntax,
        PipelineError::Kernel(_) => UnirealStatus::ProofRejected,
        PipelineError::Extract(_) => UnirealStatus::ExtractionFailed,
        PipelineError::Realizer(_) => UnirealStatus::Syntax,
        PipelineError::Config(_) => UnirealStatus::BadConfig,
    }
}

fn store(out: *mut *mut UnirealProof, pf: ProofFile) -> Res<()> {
    if out.is_null() {
        return fail(UnirealStatus::NullArgument, "output pointer is null");
    }
    unsafe { *out = Box::into_raw(Box::new(UnirealProof { inner: pf })) };
    Ok(())
}

/// Parses proof text. `theorem` names the proof in reports.
///
/// # Safety
/// `theorem` and `source` must be NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn unireal_proof_parse(
    theorem: *const c_char,
    source: *const c_char,
    out: *mut *mut UnirealProof,
) -> UnirealStatus {
    guard(|| {
        let name = text(theorem, "theorem")?;
        let src = text(source, "source")?;
        match parse_proof_file(name, src) {
            Ok(pf) => store(out, pf),
            Err(e) => fail(UnirealStatus::Syntax, e.to_string()),
        }
    })
}

/// Reads and parses a `.proof` file; the theorem name is the file stem.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unireal_proof_load(
    path: *const c_char,
    out: *mut *mut UnirealProof,
) -> UnirealStatus {
    guard(|| {
        let p = text(path, "path")?;
        match load_proof(Path::new(p)) {
            Ok(pf) => store(out, pf),
            Err(e) => fail(pipeline_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `p` must be null or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn unireal_proof_free(p: *mut UnirealProof) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Checks the proof against its claim and writes the proved sequent.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unireal_proof_check(
    p: *const UnirealProof,
    out: *mut *mut c_char,
) -> UnirealStatus {
    guard(|| {
        let pf = proof(p)?;
        match pf.check() {
            Ok(_) => give(out, pf.claim.to_string()),
            Err(e) => fail(UnirealStatus::ProofRejected, e.to_string()),
        }
    })
}

/// Extracts a realizer under the named interpretation and writes it in the
/// realizer file format.
///
/// # Safety
/// `p` must be a live handle, `interp_name` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unireal_extract(
    p: *const UnirealProof,
    interp_name: *const c_char,
    out: *mut *mut c_char,
) -> UnirealStatus {
    guard(|| {
        let pf = proof(p)?;
        let i = interp(text(interp_name, "interpretation")?)?;
        let c = pf
            .check()
            .or_else(|e| fail(UnirealStatus::ProofRejected, e.to_string()))?;
        let e = extract(&c, &BaseInterpretation::new(i))
            .or_else(|e| fail(UnirealStatus::ExtractionFailed, e.to_string()))?;
        give(
            out,
            RealizerFile::from_extraction(&pf.theorem, &e).to_string(),
        )
    })
}

/// Verifies the extracted realizer and writes the report as JSON. A null
/// `config_toml` selects the default configuration. The verdict itself
/// (holds, fails, ...) is part of the report, not the status code.
///
/// # Safety
/// `p` must be a live handle, `interp_name` a NUL-terminated string,
/// `config_toml` null or NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unireal_verify(
    p: *const UnirealProof,
    interp_name: *const c_char,
    config_toml: *const c_char,
    out: *mut *mut c_char,
) -> UnirealStatus {
    guard(|| {
        let pf = proof(p)?;
        let i = interp(text(interp_name, "interpretation")?)?;
        let cfg = if config_toml.is_null() {
            Config::default()
        } else {
            Config::from_toml(text(config_toml, "config")?)
                .or_else(|e| fail(UnirealStatus::BadConfig, e.to_string()))?
        };
        let report = verify_proof(pf, i, &cfg, None);
        give(
            out,
            serde_json::to_string(&report).expect("report serializes"),
        )
    })
}

/// The message of the last failure on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn unireal_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn unireal_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn unireal_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
