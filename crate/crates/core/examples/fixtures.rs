//! Regenerates the planar-code fixtures under `crates/core/tests/fixtures`.
//!
//! Run with `cargo run --release -p fum-core --example fixtures`.

use std::path::Path;
use std::time::Instant;

use fum_core::cli::write_planar_code;
use fum_core::embedding::{classify, Dart, PlaneGraph};
use fum_core::families::{connected_plane_graphs, quadrangulations, triangulations, MapClass};

/// Every `step`-th graph with exactly `n` vertices, at most `cap` of them.
fn sample(all: &[PlaneGraph], n: usize, cap: usize) -> Vec<PlaneGraph> {
    let of_n: Vec<&PlaneGraph> = all.iter().filter(|g| g.vertex_count() == n).collect();
    let step = of_n.len().div_ceil(cap).max(1);
    of_n.into_iter().step_by(step).take(cap).cloned().collect()
}

/// Renumbers `g` so that its outer face is the one planar code readers pick
/// by default: the face of the dart (0, first neighbour of 0).
fn normalise(g: &PlaneGraph) -> PlaneGraph {
    let Some(&d) = g.outer_darts().first() else {
        return g.clone();
    };
    let n = g.vertex_count();
    let swap = |v: usize| {
        if v == d.tail {
            0
        } else if v == 0 {
            d.tail
        } else {
            v
        }
    };
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        rot[swap(v)] = g.rotation(v).iter().map(|&w| swap(w)).collect();
    }
    let head = swap(d.head);
    let p = rot[0].iter().position(|&w| w == head).expect("outer head");
    rot[0].rotate_left(p);
    let h = PlaneGraph::new(rot, Some(Dart::new(0, head))).expect("relabelled embedding");
    assert_eq!(h.face_count(), g.face_count());
    h
}

fn write(dir: &Path, name: &str, graphs: &[PlaneGraph]) {
    let graphs: Vec<PlaneGraph> = graphs.iter().map(normalise).collect();
    let bytes = write_planar_code(&graphs).expect("small graphs");
    std::fs::write(dir.join(name), bytes).expect("write fixture");
    println!("{name}: {} graphs", graphs.len());
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    std::fs::create_dir_all(&dir).expect("fixture dir");
    let t = Instant::now();

    let subcubic = connected_plane_graphs(10, MapClass::Subcubic);
    let outerplane = connected_plane_graphs(10, MapClass::Outerplane);
    let mut sc = Vec::new();
    let mut op = Vec::new();
    for n in 8..=10 {
        sc.extend(sample(&subcubic, n, 40));
        op.extend(sample(&outerplane, n, 40));
    }
    write(&dir, "subcubic_8_10.pc", &sc);
    write(&dir, "outerplane_8_10.pc", &op);

    let tri = triangulations(9);
    let two_conn = |gs: &[PlaneGraph]| -> Vec<PlaneGraph> {
        gs.iter()
            .filter(|g| classify(g).map(|c| c.is_2connected).unwrap_or(false))
            .cloned()
            .collect()
    };
    let mut tc = Vec::new();
    for n in 8..=9 {
        tc.extend(sample(&two_conn(&subcubic), n, 25));
        tc.extend(sample(&two_conn(&outerplane), n, 25));
        tc.extend(sample(&tri, n, 10));
    }
    write(&dir, "two_connected_8_9.pc", &tc);

    write(&dir, "quadrangulations_4_12.pc", &quadrangulations(12));
    write(&dir, "triangulations_4_8.pc", &triangulations(8));
    println!("done in {:?}", t.elapsed());
}
