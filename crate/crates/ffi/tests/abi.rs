use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use unireal_ffi::*;

fn corpus(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(format!("{name}.proof"));
    CString::new(p.to_str().unwrap()).unwrap()
}

fn load(name: &str) -> *mut UnirealProof {
    let mut p = ptr::null_mut();
    let s = unsafe { unireal_proof_load(corpus(name).as_ptr(), &mut p) };
    assert_eq!(s, UnirealStatus::Ok);
    assert!(!p.is_null());
    p
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { unireal_string_free(s) };
    out
}

fn last_error() -> String {
    let e = unireal_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_string()
}

#[test]
fn check_extract_verify() {
    let p = load("successor");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { unireal_proof_check(p, &mut out) },
        UnirealStatus::Ok
    );
    assert!(take(out).contains("⊢"));
    let kreisel = CString::new("kreisel").unwrap();
    assert_eq!(
        unsafe { unireal_extract(p, kreisel.as_ptr(), &mut out) },
        UnirealStatus::Ok
    );
    let real = take(out);
    assert!(
        real.contains("(theorem successor)") && real.contains("(interp kreisel)"),
        "{real}"
    );
    let cfg = CString::new("bound = 4").unwrap();
    assert_eq!(
        unsafe { unireal_verify(p, kreisel.as_ptr(), cfg.as_ptr(), &mut out) },
        UnirealStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["verdict"], "holds");
    assert_eq!(report["bound"], 4);
    unsafe { unireal_proof_free(p) };
}

#[test]
fn unsupported_pairs_report_through_json() {
    let p = load("st-two");
    let kleene = CString::new("kleene").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { unireal_extract(p, kleene.as_ptr(), &mut out) },
        UnirealStatus::ExtractionFailed
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { unireal_verify(p, kleene.as_ptr(), ptr::null(), &mut out) },
        UnirealStatus::Ok
    );
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["verdict"], "unsupported");
    unsafe { unireal_proof_free(p) };
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { unireal_proof_parse(ptr::null(), ptr::null(), &mut p) },
        UnirealStatus::NullArgument
    );
    let name = CString::new("x").unwrap();
    let bad = CString::new("(claim").unwrap();
    assert_eq!(
        unsafe { unireal_proof_parse(name.as_ptr(), bad.as_ptr(), &mut p) },
        UnirealStatus::Syntax
    );
    assert!(p.is_null());
    let missing = CString::new("/nonexistent/x.proof").unwrap();
    assert_eq!(
        unsafe { unireal_proof_load(missing.as_ptr(), &mut p) },
        UnirealStatus::Io
    );

    let broken =
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/broken/wrong-claim.proof");
    let broken = CString::new(broken.to_str().unwrap()).unwrap();
    assert_eq!(
        unsafe { unireal_proof_load(broken.as_ptr(), &mut p) },
        UnirealStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { unireal_proof_check(p, &mut out) },
        UnirealStatus::ProofRejected
    );
    assert!(last_error().contains("root"));
    unsafe { unireal_proof_free(p) };

    let p = load("two");
    let nope = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { unireal_extract(p, nope.as_ptr(), &mut out) },
        UnirealStatus::UnknownInterpretation
    );
    let kleene = CString::new("kleene").unwrap();
    let cfg = CString::new("colour = 3").unwrap();
    assert_eq!(
        unsafe { unireal_verify(p, kleene.as_ptr(), cfg.as_ptr(), &mut out) },
        UnirealStatus::BadConfig
    );
    assert_eq!(
        unsafe { unireal_proof_check(p, &mut out) },
        UnirealStatus::Ok
    );
    assert!(unireal_last_error().is_null());
    unsafe { unireal_string_free(out) };
    unsafe { unireal_proof_free(p) };
    unsafe { unireal_proof_free(ptr::null_mut()) };
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(unireal_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn staticlib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libunireal_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_the_header() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let Some(lib) = staticlib() else {
        eprintln!("static library not built; skipping the C link test");
        return;
    };
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("cc is available");
    assert!(status.success());
    let out = Command::new(&exe)
        .arg(dir.join("../core/corpus/two.proof"))
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        out.status.success(),
        "{stdout}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout.contains("\"verdict\":\"holds\""), "{stdout}");
    assert!(stdout.contains("unknown interpretation"), "{stdout}");
}
