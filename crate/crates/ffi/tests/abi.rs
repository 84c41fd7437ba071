use std::ffi::{CStr, CString};
use std::ptr;

use realquot_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn fixture(name: &str) -> CString {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/");
    cs(&std::fs::read_to_string(format!("{path}{name}")).unwrap())
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
    rq_string_free(s);
    text
}

unsafe fn last_error() -> String {
    let p = rq_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn graph_round_trip_and_queries() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            rq_graph_from_json(fixture("e8.json").as_ptr(), &mut g),
            RqStatus::Ok
        );
        assert!(rq_last_error().is_null());
        assert_eq!(rq_graph_is_sf(g), RqStatus::Ok);
        assert_eq!(rq_graph_is_negative_definite(g), RqStatus::Ok);
        let mut det = ptr::null_mut();
        assert_eq!(rq_graph_determinant(g, &mut det), RqStatus::Ok);
        assert_eq!(take(det), "1");
        let mut class = RqBoundary::Indeterminate;
        assert_eq!(rq_graph_boundary(g, &mut class), RqStatus::Ok);
        assert_eq!(class, RqBoundary::NotSphere3);
        let mut json = ptr::null_mut();
        assert_eq!(rq_graph_to_json(g, &mut json), RqStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(
            rq_graph_from_json(cs(&take(json)).as_ptr(), &mut h),
            RqStatus::Ok
        );
        assert_eq!(rq_graph_is_sf(h), RqStatus::Ok);
        rq_graph_free(h);
        rq_graph_free(g);
    }
}

#[test]
fn negative_verdicts_and_reduction() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            rq_graph_from_json(fixture("dot_node.json").as_ptr(), &mut g),
            RqStatus::Ok
        );
        assert_eq!(rq_graph_is_sf(g), RqStatus::Negative);
        rq_graph_free(g);

        assert_eq!(
            rq_graph_from_json(fixture("conj_pair_chain.json").as_ptr(), &mut g),
            RqStatus::Ok
        );
        let mut r = ptr::null_mut();
        assert_eq!(rq_graph_reduce(g, &mut r), RqStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(rq_graph_to_json(r, &mut json), RqStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["components"].as_array().map(Vec::len), Some(0));
        rq_graph_free(r);
        rq_graph_free(g);
    }
}

#[test]
fn invalid_input_sets_last_error() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            rq_graph_from_json(fixture("malformed.json").as_ptr(), &mut g),
            RqStatus::InvalidInput
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            rq_graph_from_json(fixture("asymmetric_pairing.json").as_ptr(), &mut g),
            RqStatus::InvalidInput
        );
        assert_eq!(
            rq_graph_from_json(ptr::null(), &mut g),
            RqStatus::NullPointer
        );
        assert_eq!(
            rq_graph_from_json(cs("{}").as_ptr(), ptr::null_mut()),
            RqStatus::NullPointer
        );
        assert_eq!(rq_graph_is_sf(ptr::null()), RqStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(
            rq_graph_from_json(bad.as_ptr().cast(), &mut g),
            RqStatus::Utf8
        );
        // A later success clears the message.
        assert_eq!(
            rq_graph_from_json(fixture("minus_one.json").as_ptr(), &mut g),
            RqStatus::Ok
        );
        assert!(rq_last_error().is_null());
        rq_graph_free(g);
        rq_graph_free(ptr::null_mut());
        rq_string_free(ptr::null_mut());
    }
}

#[test]
fn ledgers_run_events() {
    unsafe {
        let l = rq_ledger_new();
        let mut chi = 0;
        assert_eq!(rq_ledger_euler(l, &mut chi), RqStatus::Ok);
        assert_eq!(chi, 2);
        assert_eq!(rq_ledger_is_bus_trivial(l), RqStatus::Ok);
        let events = cs(r#"[{"type": "a3_minus", "direction": "into_nodal"}]"#);
        let mut next = ptr::null_mut();
        assert_eq!(rq_ledger_run(l, events.as_ptr(), &mut next), RqStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(rq_ledger_to_json(next, &mut json), RqStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(
            (v["node_count"].as_u64(), v["conj_cp2"].as_i64()),
            (Some(1), Some(2))
        );
        rq_ledger_free(next);

        let underflow = cs(r#"[{"type": "resolve_node"}]"#);
        assert_eq!(
            rq_ledger_run(l, underflow.as_ptr(), &mut next),
            RqStatus::InvalidInput
        );
        assert!(next.is_null());
        rq_ledger_free(l);

        let mut p = ptr::null_mut();
        assert_eq!(
            rq_ledger_from_json(cs(r#"{"s1xs3": 2}"#).as_ptr(), &mut p),
            RqStatus::Ok
        );
        assert_eq!(rq_ledger_is_bus_trivial(p), RqStatus::Negative);
        assert_eq!(rq_ledger_euler(p, &mut chi), RqStatus::Ok);
        assert_eq!(chi, -2);
        rq_ledger_free(p);
        assert_eq!(
            rq_ledger_from_json(cs(r#"{"bogus": 1}"#).as_ptr(), &mut p),
            RqStatus::InvalidInput
        );
    }
}

#[test]
fn arrangements() {
    unsafe {
        for k in 1..=6u32 {
            let a = rq_arrangement_pencil(k);
            let mut chi = 0;
            assert_eq!(
                rq_arrangement_chi_quotient(a, false, &mut chi),
                RqStatus::Ok
            );
            assert_eq!(chi, 4 - 2 * k as i64);
            assert_eq!(
                rq_arrangement_chi_quotient(a, true, &mut chi),
                if k == 1 {
                    RqStatus::Ok
                } else {
                    RqStatus::InvalidInput
                }
            );
            rq_arrangement_free(a);
        }
        let a = rq_arrangement_generic(3);
        let (mut plain, mut perturbed) = (0, 0);
        assert_eq!(
            rq_arrangement_chi_quotient(a, false, &mut plain),
            RqStatus::Ok
        );
        assert_eq!(
            rq_arrangement_chi_quotient(a, true, &mut perturbed),
            RqStatus::Ok
        );
        assert_eq!(plain, perturbed);
        let mut json = ptr::null_mut();
        assert_eq!(rq_arrangement_report(a, false, &mut json), RqStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["chi_xbar_route1"], v["chi_xbar_route2"]);
        rq_arrangement_free(a);
        assert!(rq_arrangement_generic(0).is_null());
        assert!(rq_arrangement_pencil(65).is_null());

        let mut b = ptr::null_mut();
        assert_eq!(
            rq_arrangement_from_json(fixture("four_lines.json").as_ptr(), &mut b),
            RqStatus::Ok
        );
        rq_arrangement_free(b);
        assert_eq!(
            rq_arrangement_from_json(fixture("duplicate_lines.json").as_ptr(), &mut b),
            RqStatus::InvalidInput
        );
        assert!(b.is_null());
    }
}

#[test]
fn certify_and_vanishing() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(
            rq_certify(2, 4, true, false, true, false, &mut json),
            RqStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["outcome"], "certified");
        assert_eq!(
            rq_certify(2, 2, false, false, true, true, &mut json),
            RqStatus::Negative
        );
        assert!(take(json).contains("cannot_certify"));
        assert_eq!(
            rq_certify(2, 3, true, true, true, true, &mut json),
            RqStatus::InvalidInput
        );
        assert!(json.is_null());
    }
    assert!(rq_sw_vanishes(1, 3));
    assert!(!rq_sw_vanishes(0, 3));
    let v = unsafe { CStr::from_ptr(rq_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            rq_graph_from_json(cs("[").as_ptr(), &mut g),
            RqStatus::InvalidInput
        );
        let other = std::thread::spawn(|| rq_last_error().is_null())
            .join()
            .unwrap();
        assert!(other);
        assert!(!last_error().is_empty());
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/realquot.h"))
            .unwrap();
    let source =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    for ty in [
        "typedef struct RqGraph RqGraph;",
        "RQ_STATUS_INVALID_INPUT = 2",
        "RQ_STATUS_PANIC",
    ] {
        assert!(header.contains(ty), "{ty}");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    // Integration tests live in target/<profile>/deps; the archive sits one level up.
    let profile = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let archive = profile.join("librealquot_ffi.a");
    assert!(archive.exists(), "{} not built", archive.display());
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = std::process::Command::new("cc")
        .arg(dir.join("examples-c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "chi=-2 certify=0\n");
}
