use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hypercover_ffi::*;

fn last_error() -> String {
    let p = hc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn edges_round_trip() {
    let edges: [u32; 9] = [0, 1, 2, 0, 1, 3, 0, 2, 3];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(hc_graph_from_edges(3, 4, edges.as_ptr(), 3, &mut g), HcStatus::HcOk);
        let mut n = 0;
        assert_eq!(hc_graph_edge_count(g, &mut n), HcStatus::HcOk);
        assert_eq!(n, 3);
        let mut needed = 0;
        assert_eq!(hc_graph_edges(g, ptr::null_mut(), 0, &mut needed), HcStatus::HcBufferTooSmall);
        assert_eq!(needed, 9);
        let mut buf = vec![0u32; needed];
        assert_eq!(hc_graph_edges(g, buf.as_mut_ptr(), buf.len(), &mut needed), HcStatus::HcOk);
        assert_eq!(buf, edges);

        let mut yes = false;
        let probe = [3u32, 1, 0];
        assert_eq!(hc_graph_contains(g, probe.as_ptr(), 3, &mut yes), HcStatus::HcOk);
        assert!(yes);
        let mut d = 0;
        assert_eq!(hc_graph_min_degree(g, 1, &mut d), HcStatus::HcOk);
        assert_eq!(d, 2);

        let mut text = ptr::null_mut();
        assert_eq!(hc_graph_to_text(g, &mut text), HcStatus::HcOk);
        let mut back = ptr::null_mut();
        assert_eq!(hc_graph_from_text(text, &mut back), HcStatus::HcOk);
        let mut m = 0;
        hc_graph_edge_count(back, &mut m);
        assert_eq!(m, 3);
        hc_string_free(text);
        hc_graph_free(back);
        hc_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut g = ptr::null_mut();
    let bad = [0u32, 0, 1];
    unsafe {
        assert_eq!(hc_graph_from_edges(3, 4, bad.as_ptr(), 1, &mut g), HcStatus::HcInvalidArgument);
        assert!(last_error().contains("repeats"));
        assert!(g.is_null());

        let text = CString::new("3 4\n0 1 9\n").unwrap();
        assert_eq!(hc_graph_from_text(text.as_ptr(), &mut g), HcStatus::HcParseError);
        assert!(last_error().starts_with("line 2"));

        assert_eq!(hc_graph_edge_count(ptr::null(), ptr::null_mut()), HcStatus::HcNullPointer);
        assert_eq!(hc_k4minus_lower(8, 3, 0, &mut g), HcStatus::HcInvalidArgument);
        assert!(last_error().contains("odd"));
    }
}

#[test]
fn constructions_and_metrics() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(hc_k4minus_lower(9, 3, 0, &mut g), HcStatus::HcOk);
        let mut d = 0;
        hc_graph_min_degree(g, 1, &mut d);
        assert_eq!(d, 12);
        let motif = CString::new("k4-").unwrap();
        let mut covered = true;
        assert_eq!(hc_graph_covers(g, motif.as_ptr(), 8, &mut covered), HcStatus::HcOk);
        assert!(!covered);
        hc_graph_free(g);

        let rho = CString::new("11/20").unwrap();
        assert_eq!(hc_tau_lower(40, rho.as_ptr(), 2, 0, &mut g), HcStatus::HcOk);
        let mut t = 0;
        hc_graph_t_max(g, &mut t);
        assert_eq!(t, 60);
        hc_graph_free(g);

        let factors = [3usize, 5];
        assert_eq!(hc_efg_graph(factors.as_ptr(), 2, 1, &mut g), HcStatus::HcOk);
        let mut bk = 0;
        hc_graph_book_number(g, &mut bk);
        assert_eq!(bk, 3);
        hc_graph_free(g);

        assert_eq!(hc_sts(7, &mut g), HcStatus::HcOk);
        let mut a = 0;
        assert_eq!(hc_graph_independence_number(g, 24, &mut a), HcStatus::HcOk);
        assert_eq!(a, 4);
        hc_graph_free(g);
    }
}

#[test]
fn oracle_and_formulas() {
    unsafe {
        let motif = CString::new("k4-").unwrap();
        let mut v = 0;
        let mut w = ptr::null_mut();
        assert_eq!(hc_max_delta1_no_cover(5, motif.as_ptr(), 0, &mut v, &mut w), HcStatus::HcOk);
        assert_eq!(v, 3);
        let mut count = 0;
        hc_graph_uncovered_count(w, motif.as_ptr(), &mut count);
        assert!(count >= 1);
        hc_graph_free(w);
        assert_eq!(
            hc_max_delta1_no_cover(9, motif.as_ptr(), 0, &mut v, ptr::null_mut()),
            HcStatus::HcLimitExceeded
        );

        let mut s = ptr::null_mut();
        assert_eq!(hc_d_star(9, 20, &mut s), HcStatus::HcOk);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "3.2749172176353748486");
        hc_string_free(s);
        assert!(!CStr::from_ptr(hc_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_declares_the_api_and_compiles() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/hypercover.h")).unwrap();
    for name in ["hc_graph_from_edges", "hc_graph_free", "hc_last_error", "HC_BUDGET_EXCEEDED", "typedef struct HcGraph HcGraph"] {
        assert!(header.contains(name), "{name} missing from header");
    }
    let tmp = tempdir();
    let src = tmp.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"hypercover.h\"\nint main(void) { HcGraph *g = 0; size_t n = 0; \
         return hc_graph_vertex_count(g, &n) == HC_NULL_POINTER ? 0 : 1; }\n",
    )
    .unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .status()
    {
        Ok(status) => assert!(status.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler; header syntax check skipped"),
    }
}

fn tempdir() -> PathBuf {
    let p = std::env::temp_dir().join(format!("hypercover-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&p).unwrap();
    p
}
