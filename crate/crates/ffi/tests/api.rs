use std::ptr;

use fum_ffi::*;

fn csr(rot: &[&[usize]]) -> (Vec<usize>, Vec<usize>) {
    let mut offsets = vec![0];
    let mut nbrs = Vec::new();
    for r in rot {
        nbrs.extend_from_slice(r);
        offsets.push(nbrs.len());
    }
    (offsets, nbrs)
}

fn build(rot: &[&[usize]], outer: (usize, usize)) -> Result<*mut FumGraph, FumStatus> {
    let (o, n) = csr(rot);
    let mut g = ptr::null_mut();
    let s = unsafe { fum_graph_new(rot.len(), o.as_ptr(), n.as_ptr(), outer.0, outer.1, &mut g) };
    if s == FumStatus::Ok {
        Ok(g)
    } else {
        Err(s)
    }
}

fn last_error() -> String {
    let len = unsafe { fum_last_error(ptr::null_mut(), 0) };
    let mut buf = vec![0 as std::os::raw::c_char; len + 1];
    unsafe { fum_last_error(buf.as_mut_ptr(), buf.len()) };
    let bytes: Vec<u8> = buf[..len].iter().map(|&c| c as u8).collect();
    String::from_utf8(bytes).unwrap()
}

const K4: [&[usize]; 4] = [&[1, 3, 2], &[2, 3, 0], &[0, 3, 1], &[0, 1, 2]];
const C5: [&[usize]; 5] = [&[1, 4], &[2, 0], &[3, 1], &[4, 2], &[0, 3]];

#[test]
fn k4_round_trip() {
    let g = build(&K4, (0, 1)).unwrap();
    unsafe {
        assert_eq!(fum_graph_vertex_count(g), 4);
        assert_eq!(fum_graph_edge_count(g), 6);
        assert_eq!(fum_graph_face_count(g), 4);
        let mut chi = 0;
        assert_eq!(fum_chi(g, 6, 0, &mut chi), FumStatus::Ok);
        assert_eq!(chi, 4);
        let mut cols = [0u32; 4];
        assert_eq!(
            fum_color(g, FumClass::SubcubicOrOuterplane, cols.as_mut_ptr(), 4),
            FumStatus::Ok
        );
        let mut valid = 0;
        assert_eq!(
            fum_check_vertex(g, cols.as_ptr(), 4, &mut valid),
            FumStatus::Ok
        );
        assert_eq!(valid, 1);
        let mut ecols = [0u32; 6];
        assert_eq!(fum_color_edge(g, ecols.as_mut_ptr(), 6), FumStatus::Ok);
        assert_eq!(
            fum_check_edge(g, ecols.as_ptr(), 6, &mut valid),
            FumStatus::Ok
        );
        assert_eq!(valid, 1);
        assert!(ecols.iter().all(|&c| (1..=4).contains(&c)));
        let mut flags = 0;
        assert_eq!(fum_classify(g, &mut flags), FumStatus::Ok);
        assert_eq!(flags & 0b1001, 0b1001);
        fum_graph_free(g);
    }
}

#[test]
fn cycle_values_and_edges() {
    let g = build(&C5, (FUM_DEFAULT_OUTER, FUM_DEFAULT_OUTER)).unwrap();
    unsafe {
        let mut chi = 0;
        assert_eq!(fum_chi(g, 6, 0, &mut chi), FumStatus::Ok);
        assert_eq!(chi, 3);
        assert_eq!(fum_chi_edge(g, 6, 0, &mut chi), FumStatus::Ok);
        assert_eq!(chi, 3);
        let (mut u, mut v) = (0, 0);
        assert_eq!(fum_graph_edge(g, 0, &mut u, &mut v), FumStatus::Ok);
        assert_eq!((u, v), (0, 1));
        assert_eq!(
            fum_graph_edge(g, 5, &mut u, &mut v),
            FumStatus::InvalidArgument
        );
        let bad = [1u32, 2, 1, 2, 1];
        let mut valid = 7;
        assert_eq!(
            fum_check_vertex(g, bad.as_ptr(), 5, &mut valid),
            FumStatus::Ok
        );
        assert_eq!(valid, 0);
        fum_graph_free(g);
    }
}

#[test]
fn error_statuses() {
    // K4 with every rotation in index order does not satisfy Euler's formula.
    let torus: [&[usize]; 4] = [&[1, 2, 3], &[0, 2, 3], &[0, 1, 3], &[0, 1, 2]];
    assert_eq!(
        build(&torus, (0, 1)).unwrap_err(),
        FumStatus::InvalidEmbedding
    );
    assert!(last_error().contains("Euler"));
    assert_eq!(build(&C5, (0, 2)).unwrap_err(), FumStatus::InvalidEmbedding);

    let g = build(&K4, (0, 1)).unwrap();
    unsafe {
        let mut chi = 0;
        assert_eq!(fum_chi(g, 3, 0, &mut chi), FumStatus::Exceeded);
        let mut small = [0u32; 2];
        assert_eq!(
            fum_color(g, FumClass::SubcubicOrOuterplane, small.as_mut_ptr(), 2),
            FumStatus::BufferTooSmall
        );
        let mut cols = [0u32; 4];
        assert_eq!(
            fum_color(g, FumClass::Quadrangulation, cols.as_mut_ptr(), 4),
            FumStatus::NotApplicable
        );
        assert_eq!(fum_chi(ptr::null(), 6, 0, &mut chi), FumStatus::NullPointer);
        fum_graph_free(g);
        fum_graph_free(ptr::null_mut());
    }
}

#[test]
fn planar_code_records() {
    let mut bytes = b">>planar_code<<".to_vec();
    bytes.extend([3, 2, 3, 0, 3, 1, 0, 1, 2, 0]);
    bytes.extend([4, 2, 4, 0, 3, 1, 0, 4, 2, 0, 1, 3, 0]);
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            fum_graph_from_planar_code(bytes.as_ptr(), bytes.len(), 1, &mut g),
            FumStatus::Ok
        );
        assert_eq!(fum_graph_vertex_count(g), 4);
        let mut cols = [0u32; 4];
        assert_eq!(
            fum_color(g, FumClass::Quadrangulation, cols.as_mut_ptr(), 4),
            FumStatus::Ok
        );
        assert!(cols.iter().all(|&c| (1..=4).contains(&c)));
        fum_graph_free(g);
        let mut h = ptr::null_mut();
        assert_eq!(
            fum_graph_from_planar_code(bytes.as_ptr(), bytes.len(), 2, &mut h),
            FumStatus::InvalidArgument
        );
        assert_eq!(
            fum_graph_from_planar_code(b"nope".as_ptr(), 4, 0, &mut h),
            FumStatus::InvalidFormat
        );
    }
}

#[test]
fn last_error_truncates() {
    let _ = build(&C5, (0, 2));
    let full = last_error();
    let mut buf = [1 as std::os::raw::c_char; 4];
    let n = unsafe { fum_last_error(buf.as_mut_ptr(), 4) };
    assert_eq!(n, full.len());
    assert_eq!(buf[3], 0);
}
