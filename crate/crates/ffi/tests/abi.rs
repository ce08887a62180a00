use std::ffi::CString;
use std::ptr;

use hopcut_ffi::*;

fn last_error() -> String {
    let n = unsafe { hc_last_error_message(ptr::null_mut(), 0) };
    let mut buf = vec![0u8; n + 1];
    unsafe { hc_last_error_message(buf.as_mut_ptr().cast(), buf.len()) };
    String::from_utf8_lossy(&buf[..n]).into_owned()
}

fn chain(n: u32, weights: Option<&[u64]>) -> *mut HcGraph {
    let src: Vec<u32> = (0..n - 1).collect();
    let dst: Vec<u32> = (1..n).collect();
    let w = weights.map_or(ptr::null(), |w| w.as_ptr());
    let mut g = ptr::null_mut();
    let st = unsafe { hc_graph_from_edges(n as usize, src.as_ptr(), dst.as_ptr(), w, src.len(), &mut g) };
    assert_eq!(st, HcStatus::Ok);
    g
}

#[test]
fn shortcut_round_trip() {
    let g = chain(40, None);
    unsafe {
        assert_eq!(hc_graph_vertex_count(g), 40);
        assert_eq!(hc_graph_edge_count(g), 39);
        assert!(!hc_graph_is_weighted(g));
        let mut h = ptr::null_mut();
        assert_eq!(hc_build_shortcut(g, HcPreset::Desk, 1, true, &mut h), HcStatus::Ok);
        let len = hc_augment_len(h);
        for i in 0..len {
            let (mut u, mut v, mut w) = (0, 0, 0);
            assert_eq!(hc_augment_edge(h, i, &mut u, &mut v, &mut w), HcStatus::Ok);
            assert!(u < v && w == 1);
        }
        let mut r = HcVerifyResult::default();
        assert_eq!(hc_verify_shortcut(g, h, &mut r), HcStatus::Ok);
        assert!(r.ok && r.edges_valid && r.reach_preserved);
        assert_eq!(r.size_h, len);
        assert!(r.beta_meas <= 39);

        let mut mask = vec![0u8; 40];
        let mut count = 0;
        assert_eq!(hc_reach(g, h, 10, mask.as_mut_ptr(), 40, &mut count), HcStatus::Ok);
        assert_eq!(count, 30);
        assert!(mask.iter().enumerate().all(|(t, &m)| (m == 1) == (t >= 10)));
        let mut u = 0;
        assert_eq!(hc_augment_edge(h, len, &mut u, &mut u, ptr::null_mut()), HcStatus::InvalidArgument);
        hc_augment_free(h);
        hc_graph_free(g);
    }
}

#[test]
fn hopset_and_sssp() {
    let w: Vec<u64> = (0..29).map(|i| 1 + i % 5).collect();
    let g = chain(30, Some(&w));
    unsafe {
        assert!(hc_graph_is_weighted(g));
        let mut h = ptr::null_mut();
        assert_eq!(hc_build_hopset(g, HcPreset::Desk, 1, 4, 3, true, &mut h), HcStatus::Ok);
        let mut r = HcVerifyResult::default();
        assert_eq!(hc_verify_hopset(g, h, 1, 4, &mut r), HcStatus::Ok);
        assert!(r.ok && r.dist_preserved && r.approx_holds);
        let mut dist = vec![0u64; 30];
        assert_eq!(hc_sssp(g, 5, HcPreset::Desk, 1, 4, 3, dist.as_mut_ptr(), 30), HcStatus::Ok);
        let mut exact = 0u64;
        for t in 0..30 {
            if t < 5 {
                assert_eq!(dist[t], HC_UNREACHED);
                continue;
            }
            if t > 5 {
                exact += w[t - 1];
            }
            assert!(dist[t] >= exact && 4 * dist[t] <= 5 * exact);
        }
        hc_augment_free(h);
        hc_graph_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        let (s, d) = ([0u32], [5u32]);
        assert_eq!(hc_graph_from_edges(2, s.as_ptr(), d.as_ptr(), ptr::null(), 1, &mut g), HcStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert!(g.is_null());

        assert_eq!(hc_graph_from_edges(2, ptr::null(), ptr::null(), ptr::null(), 1, &mut g), HcStatus::NullPointer);
        let path = CString::new("/nonexistent/graph.txt").unwrap();
        assert_eq!(hc_graph_read(path.as_ptr(), &mut g), HcStatus::Io);

        let cyc = chain(3, None);
        let mut h = ptr::null_mut();
        assert_eq!(hc_build_hopset(cyc, HcPreset::Desk, 0, 4, 0, true, &mut h), HcStatus::InvalidArgument);
        let mut mask = [0u8; 2];
        assert_eq!(hc_reach(cyc, ptr::null(), 0, mask.as_mut_ptr(), 2, ptr::null_mut()), HcStatus::InvalidArgument);
        assert!(last_error().contains("mask"));

        let mut tiny = [0 as std::ffi::c_char; 4];
        let n = hc_last_error_message(tiny.as_mut_ptr(), tiny.len());
        assert!(n > 3 && tiny[3] == 0);
        hc_graph_free(cyc);
        hc_graph_free(ptr::null_mut());
    }
}

#[test]
fn reads_edge_list_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.txt");
    std::fs::write(&p, "3 2 weighted\n0 1 4\n1 2 6\n").unwrap();
    let path = CString::new(p.to_str().unwrap()).unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(hc_graph_read(path.as_ptr(), &mut g), HcStatus::Ok);
        assert!(hc_graph_is_weighted(g));
        assert_eq!(hc_graph_edge_count(g), 2);
        hc_graph_free(g);
    }
}
