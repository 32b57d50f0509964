use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use llab_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    llab_string_free(s);
    out
}

unsafe fn e1() -> (*mut LlabPoset, *mut LlabPosetIdeal) {
    let mut p = ptr::null_mut();
    assert_eq!(llab_poset_chain(2, &mut p), LlabStatus::Ok);
    let mut j = ptr::null_mut();
    assert_eq!(llab_poset_ideal_new(p, 2, c("1,2").as_ptr(), &mut j), LlabStatus::Ok);
    (p, j)
}

#[test]
fn resolution_round_trip() {
    unsafe {
        let (p, j) = e1();
        assert_eq!(llab_poset_size(p), 2);
        assert_eq!(llab_poset_ideal_size(j), 2);
        let mut r = ptr::null_mut();
        assert_eq!(llab_resolution_new(j, &mut r), LlabStatus::Ok);
        let mut buf = [0usize; 4];
        let mut len = 0;
        assert_eq!(llab_resolution_ranks(r, buf.as_mut_ptr(), 4, &mut len), LlabStatus::Ok);
        assert_eq!(&buf[..len], &[2, 1]);
        assert_eq!(
            llab_resolution_ranks(r, buf.as_mut_ptr(), 1, &mut len),
            LlabStatus::BufferTooSmall
        );
        assert_eq!(llab_resolution_verify(r, j, c("f2").as_ptr()), LlabStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(llab_resolution_json(r, &mut json), LlabStatus::Ok);
        assert!(take(json).contains("\"staircase\""));
        let mut gens = ptr::null_mut();
        assert_eq!(
            llab_ideal_generators(j, LlabIdealKind::Coletterplace, &mut gens),
            LlabStatus::Ok
        );
        assert_eq!(take(gens), "x_{p1,1}*x_{p2,1}\nx_{p1,1}*x_{p2,2}");
        let mut s = ptr::null_mut();
        assert_eq!(llab_certify(j, c("q").as_ptr(), &mut s), LlabStatus::Ok);
        assert_eq!(take(s), "ball, boundary sphere of dimension 0");
        llab_resolution_free(r);
        llab_poset_ideal_free(j);
        llab_poset_free(p);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            llab_poset_parse(c("elements: a\ncovers: a<b").as_ptr(), &mut p),
            LlabStatus::InvalidInput
        );
        let msg = CStr::from_ptr(llab_last_error()).to_str().unwrap();
        assert_eq!(msg, "unknown element `b`");
        assert_eq!(
            llab_poset_parse(c("covers: a<").as_ptr(), &mut p),
            LlabStatus::ParseError
        );
        assert_eq!(llab_poset_parse(ptr::null(), &mut p), LlabStatus::NullPointer);
        let (q, j) = e1();
        let mut s = ptr::null_mut();
        assert_eq!(llab_certify(j, c("gf4").as_ptr(), &mut s), LlabStatus::InvalidInput);
        let mut bad = ptr::null_mut();
        assert_eq!(
            llab_poset_ideal_new(q, 2, c("2,1").as_ptr(), &mut bad),
            LlabStatus::InvalidInput
        );
        llab_poset_ideal_free(j);
        llab_poset_free(q);
        llab_poset_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/llab.h")).unwrap();
    for name in ["llab_poset_parse", "llab_resolution_ranks", "llab_certify", "llab_last_error"] {
        assert!(header.contains(name), "{name}");
    }
    let out = std::env::temp_dir().join("llab_smoke.o");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-c"])
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg("-o")
        .arg(&out)
        .status();
    match status {
        Ok(s) => assert!(s.success()),
        Err(e) => {
            eprintln!("cc unavailable, skipped: {e}");
            return;
        }
    }
    let lib = dir.join("../../target/debug/libllab_ffi.a");
    if !lib.exists() {
        return;
    }
    let exe = std::env::temp_dir().join("llab_smoke");
    let linked = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(linked.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success());
    assert_eq!(
        String::from_utf8_lossy(&run.stdout),
        "2 2 1 ball, boundary sphere of dimension 0\n"
    );
}
