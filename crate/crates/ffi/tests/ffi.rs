use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sbp_ffi::*;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sbp_last_error()) }.to_string_lossy().into_owned()
}

fn load(name: &str) -> *mut SbpWorkspace {
    let path = CString::new(data(name).to_str().unwrap()).unwrap();
    let mut ws = ptr::null_mut();
    assert_eq!(unsafe { sbp_workspace_load(path.as_ptr(), &mut ws) }, SbpStatus::Ok, "{}", last_error());
    ws
}

#[test]
fn e1_through_the_c_interface() {
    unsafe {
        let ws = load("e1.json");
        let mut count = 0usize;
        assert_eq!(sbp_workspace_bundle_count(ws, &mut count), SbpStatus::Ok);
        assert_eq!(count, 1);
        let mut sb = ptr::null_mut();
        assert_eq!(sbp_verify(ws, ptr::null(), &mut sb), SbpStatus::Ok);
        let mut schreier = true;
        assert_eq!(sbp_is_schreier(sb, &mut schreier), SbpStatus::Ok);
        assert!(!schreier);
        let mut pa = ptr::null_mut();
        assert_eq!(sbp_extract(sb, &mut pa), SbpStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(sbp_pseudo_action_to_json(pa, &mut json), SbpStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["rho"], serde_json::json!([[0, 0], [1, 0]]));
        sbp_string_free(json);
        let mut synthetic = ptr::null_mut();
        assert_eq!(sbp_synthesize(pa, &mut synthetic), SbpStatus::Ok);
        let mut order = 0usize;
        assert_eq!(sbp_semibiproduct_order(synthetic, &mut order), SbpStatus::Ok);
        assert_eq!(order, 3);
        let mut bundle = ptr::null_mut();
        assert_eq!(sbp_semibiproduct_to_json(synthetic, &mut bundle), SbpStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(sbp_workspace_from_json(bundle, &mut again), SbpStatus::Ok, "{}", last_error());
        sbp_string_free(bundle);
        sbp_workspace_free(again);
        sbp_semibiproduct_free(synthetic);
        sbp_pseudo_action_free(pa);
        sbp_semibiproduct_free(sb);
        sbp_workspace_free(ws);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let ws = load("e1_sign.json");
        let mut sb = ptr::null_mut();
        assert_eq!(sbp_verify(ws, ptr::null(), &mut sb), SbpStatus::CheckFailed);
        assert_eq!(last_error(), "k not homomorphism at (s,s)");
        assert!(sb.is_null());
        let name = CString::new("missing").unwrap();
        assert_eq!(sbp_verify(ws, name.as_ptr(), &mut sb), SbpStatus::InvalidArgument);
        assert_eq!(sbp_verify(ws, ptr::null(), ptr::null_mut()), SbpStatus::CheckFailed);
        sbp_workspace_free(ws);

        let mut out = ptr::null_mut();
        let bad = CString::new("{ not json").unwrap();
        assert_eq!(sbp_workspace_from_json(bad.as_ptr(), &mut out), SbpStatus::ParseError);
        assert_eq!(sbp_workspace_from_json(ptr::null(), &mut out), SbpStatus::NullPointer);

        let path = CString::new(data("dangling.json").to_str().unwrap()).unwrap();
        assert_eq!(sbp_workspace_load(path.as_ptr(), &mut out), SbpStatus::ValidationError);
        assert!(last_error().contains("\"C\""));

        let broken = load("broken_action.json");
        let mut pa = ptr::null_mut();
        assert_eq!(sbp_validate_action(broken, ptr::null(), &mut pa), SbpStatus::CheckFailed);
        sbp_workspace_free(broken);

        let (z3, z2) = (CString::new("Z3").unwrap(), CString::new("Z2").unwrap());
        let mut lines = ptr::null_mut();
        assert_eq!(sbp_enumerate_actions_jsonl(ptr::null(), z3.as_ptr(), z2.as_ptr(), 10, &mut lines), SbpStatus::BudgetExceeded);
        assert_eq!(sbp_enumerate_actions_jsonl(ptr::null(), z3.as_ptr(), z2.as_ptr(), 0, &mut lines), SbpStatus::Ok);
        let text = CStr::from_ptr(lines).to_str().unwrap().to_owned();
        sbp_string_free(lines);
        let rhos: Vec<serde_json::Value> =
            text.lines().map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["rho"].clone()).collect();
        assert!(!rhos.is_empty());
        let trivial = serde_json::json!([[0, 0], [1, 1], [2, 2]]);
        assert!(rhos.iter().all(|r| *r == trivial));
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        sbp_workspace_free(ptr::null_mut());
        sbp_semibiproduct_free(ptr::null_mut());
        sbp_pseudo_action_free(ptr::null_mut());
        sbp_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_current_and_compiles() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = std::fs::read_to_string(include.join("sbp.h")).unwrap();
    for name in ["sbp_verify", "sbp_extract", "sbp_synthesize", "sbp_is_schreier", "sbp_enumerate_actions_jsonl", "SBP_STATUS_PANIC = 7"] {
        assert!(header.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/smoke.c"))
        .status()
    else {
        eprintln!("no C compiler; skipping the syntax check");
        return;
    };
    assert!(status.success());
}

/// Links `tests/smoke.c` against the static library when cargo has built
/// one next to this test binary.
#[test]
fn c_program_runs() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libsbp_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let out_dir = std::env::temp_dir().join(format!("sbp-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let bin = out_dir.join("smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Ok(status) = Command::new("cc")
        .arg("-std=c99")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
    let output = Command::new(&bin).arg(data("e1.json")).arg(data("e1_sign.json")).output().unwrap();
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout, "order=3 schreier=0 synthetic=3\nsign=1 k not homomorphism at (s,s)\nlines=2\n");
    std::fs::remove_dir_all(&out_dir).ok();
}
