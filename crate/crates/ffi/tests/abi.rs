use std::ffi::{CStr, CString};
use std::ptr;

use entcount_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let v = CStr::from_ptr(s).to_str().unwrap().to_string();
    ec_string_free(s);
    v
}

#[test]
fn counts_through_handles() {
    unsafe {
        let spec = CString::new("k_dd:3").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(ec_graph_named(spec.as_ptr(), &mut g), EcStatus::EcOk);
        let (mut n, mut m) = (0usize, 0usize);
        assert_eq!(ec_graph_order(g, &mut n), EcStatus::EcOk);
        assert_eq!(ec_graph_edge_count(g, &mut m), EcStatus::EcOk);
        assert_eq!((n, m), (6, 9));
        let mut s = ptr::null_mut();
        assert_eq!(ec_colorings(g, 3, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "42");
        assert_eq!(ec_independent_sets(g, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "15");
        assert_eq!(ec_perfect_matchings(g, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "6");
        assert_eq!(ec_matchings(g, 2, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "18");
        let k2 = CString::new("kn:2").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(ec_graph_named(k2.as_ptr(), &mut h), EcStatus::EcOk);
        assert_eq!(ec_hom(g, h, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "2");
        ec_graph_free(g);
        ec_graph_free(h);
    }
}

#[test]
fn matrix_permanent() {
    unsafe {
        let src = CString::new("matrix 3\n111\n111\n111\n").unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(ec_matrix_parse(src.as_ptr(), &mut m), EcStatus::EcOk);
        let mut s = ptr::null_mut();
        assert_eq!(ec_permanent(m, &mut s), EcStatus::EcOk);
        assert_eq!(take(s), "6");
        ec_matrix_free(m);
    }
}

#[test]
fn errors_map_to_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(ec_graph_named(ptr::null(), &mut g), EcStatus::EcNullPointer);
        let bad = CString::new("nonsense:3").unwrap();
        assert_eq!(ec_graph_named(bad.as_ptr(), &mut g), EcStatus::EcInvalidInput);
        assert!(!CStr::from_ptr(ec_last_error()).to_bytes().is_empty());
        let src = CString::new("matrix 2\n12\n00\n").unwrap();
        let mut m = ptr::null_mut();
        assert_eq!(ec_matrix_parse(src.as_ptr(), &mut m), EcStatus::EcParse);
        let mut s = ptr::null_mut();
        assert_eq!(ec_colorings(ptr::null(), 3, &mut s), EcStatus::EcNullPointer);
        let name = CString::new("no-such-check").unwrap();
        let mut pass = 0;
        assert_eq!(ec_check_run(name.as_ptr(), ptr::null(), 0, &mut s, &mut pass), EcStatus::EcUnknownCheck);
        let ok = CString::new("kn:3").unwrap();
        assert_eq!(ec_graph_named(ok.as_ptr(), &mut g), EcStatus::EcOk);
        assert!(CStr::from_ptr(ec_last_error()).to_bytes().is_empty());
        ec_graph_free(g);
    }
}

#[test]
fn check_runs_and_reports() {
    unsafe {
        let name = CString::new("coin").unwrap();
        let params = CString::new(r#"{"max_n": 4}"#).unwrap();
        let (mut s, mut pass) = (ptr::null_mut(), 0);
        assert_eq!(ec_check_run(name.as_ptr(), params.as_ptr(), 3, &mut s, &mut pass), EcStatus::EcOk);
        assert_eq!(pass, 1);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report[0]["instances"], 4);
        let bad = CString::new(r#"{"nope": 1}"#).unwrap();
        assert_eq!(ec_check_run(name.as_ptr(), bad.as_ptr(), 3, &mut s, &mut pass), EcStatus::EcParse);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/entcount.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct EcGraph EcGraph;"));
}
