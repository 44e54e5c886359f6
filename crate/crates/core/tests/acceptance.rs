//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so every line is printed. Exit status is
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fum_core::cli::{parse_planar_code, parse_text, write_planar_code, write_text};
use fum_core::constructive::{
    color_quadrangulation, color_quadrangulation_with, color_with_precolored_path, fum_color,
    fum_edge_color_2connected, QuadMode, QuadRoute,
};
use fum_core::embedding::{Edge, PlaneGraph};
use fum_core::exact::{
    chi_fum, chi_fum_edge, chi_fum_edge_with, chi_fum_with, verify_five_color_bound, ChiResult,
    SolveLimits,
};
use fum_core::families::{
    cycle, find_hard_quadrangulation_par, gen_girth_edge_family, gen_girth_vertex_family,
    hard_nesting_face, k4, nest_quadrangulation, polygon_with_chords, quadrangulations,
    triangulations,
};
use fum_core::fumcheck::{
    check_extension_conditions, check_fum_edge, check_fum_vertex, facial_adjacent_edge_pairs,
    EdgeCheckMode, FreePairSet,
};
use rayon::prelude::*;

/// Largest order enumerated exhaustively for the subcubic and outerplane corpora;
/// the fixtures add samples from 8 to 10 vertices.
const ENUM_N: usize = 7;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vertex_corpus() -> Vec<PlaneGraph> {
    let mut v = subcubic_corpus(ENUM_N);
    v.extend(outerplane_corpus(ENUM_N));
    v
}

fn extension_sweep() -> Check {
    let corpus = vertex_corpus();
    let calls: usize = corpus
        .par_iter()
        .map(|g| {
            let paths = all_paths(g);
            for p in &paths {
                match color_with_precolored_path(g, p) {
                    Ok(c) => {
                        let v = check_extension_conditions(g, p, &c).map_err(|e| e.to_string())?;
                        ensure(v.is_ok(), || {
                            format!("{:?} on\n{}: {:?}", p, g.describe(), v.violations)
                        })?;
                    }
                    Err(e) => return Err(format!("{:?} on\n{}: {e}", p, g.describe())),
                }
            }
            Ok(paths.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!(
        "{} graphs, {calls} precoloured paths",
        corpus.len()
    ))
}

fn vertex_four_colouring() -> Check {
    let corpus = vertex_corpus();
    corpus
        .par_iter()
        .map(|g| {
            let c = fum_color(g).map_err(|e| format!("{}: {e}", g.describe()))?;
            let v = check_fum_vertex(g, &c).map_err(|e| e.to_string())?;
            ensure(v.is_ok() && c.max_color() <= 4, || {
                format!("rejected on\n{}", g.describe())
            })?;
            let chi = chi_fum(g, 4);
            ensure(matches!(chi, ChiResult::Value(k) if k <= 4), || {
                format!("exact {chi:?} on\n{}", g.describe())
            })
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{} graphs, exact cross-check on all", corpus.len()))
}

fn edge_four_colouring() -> Check {
    let corpus = two_connected_corpus(6, ENUM_N);
    let exact: usize = corpus
        .par_iter()
        .map(|g| {
            let c = fum_edge_color_2connected(g).map_err(|e| format!("{}: {e}", g.describe()))?;
            let v = check_fum_edge(g, &c, &FreePairSet::new(), EdgeCheckMode::default())
                .map_err(|e| e.to_string())?;
            ensure(v.is_ok() && c.max_color() <= 4, || {
                format!("rejected on\n{}", g.describe())
            })?;
            if g.vertex_count() <= 8 {
                let chi = chi_fum_edge(g, 4);
                ensure(matches!(chi, ChiResult::Value(k) if k <= 4), || {
                    format!("exact {chi:?} on\n{}", g.describe())
                })?;
                return Ok(1);
            }
            Ok(0)
        })
        .collect::<Result<Vec<usize>, String>>()?
        .into_iter()
        .sum();
    let max_n = corpus.iter().map(|g| g.vertex_count()).max().unwrap_or(0);
    Ok(format!(
        "{} graphs up to n={max_n}, {exact} exact confirmations",
        corpus.len()
    ))
}

fn quadrangulation_colouring() -> Check {
    let quads = fixture("quadrangulations_4_12.pc");
    let fallbacks = quads
        .par_iter()
        .map(|q| {
            let c = color_quadrangulation(q).map_err(|e| format!("{}: {e}", q.describe()))?;
            let v = check_fum_vertex(q, &c).map_err(|e| e.to_string())?;
            ensure(v.is_ok() && c.max_color() <= 4, || {
                format!("rejected on\n{}", q.describe())
            })?;
            let (_, route) =
                color_quadrangulation_with(q, QuadMode::Labelling, SolveLimits::none())
                    .map_err(|e| e.to_string())?;
            Ok((route == QuadRoute::Fallback) as usize)
        })
        .collect::<Result<Vec<usize>, String>>()?
        .into_iter()
        .sum::<usize>();
    let forced: Vec<&PlaneGraph> = quads.iter().filter(|q| q.vertex_count() <= 9).collect();
    for q in &forced {
        let (c, route) =
            color_quadrangulation_with(q, QuadMode::ForceFallback, SolveLimits::none())
                .map_err(|e| e.to_string())?;
        ensure(route == QuadRoute::Fallback, || {
            "forced fallback not taken".into()
        })?;
        ensure(
            check_fum_vertex(q, &c).unwrap().is_ok() && c.max_color() <= 4,
            || "fallback rejected".into(),
        )?;
    }
    let max_n = quads.iter().map(|q| q.vertex_count()).max().unwrap_or(0);
    Ok(format!(
        "{} quadrangulations up to n={max_n}, {fallbacks} needed the fallback, {} forced",
        quads.len(),
        forced.len()
    ))
}

fn tight_families() -> Check {
    let mut worst = Duration::ZERO;
    for g in [3, 4, 5, 6] {
        let h = gen_girth_vertex_family(g).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let r = chi_fum(&h, 6);
        worst = worst.max(t.elapsed());
        ensure(r == ChiResult::Value(4), || {
            format!("vertex family g={g}: {r:?}")
        })?;
    }
    for g in [4, 6, 8] {
        let h = gen_girth_edge_family(g).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let r = chi_fum_edge(&h, 6);
        worst = worst.max(t.elapsed());
        ensure(r == ChiResult::Value(4), || {
            format!("edge family g={g}: {r:?}")
        })?;
    }
    ensure(worst <= Duration::from_secs(30), || {
        format!("slowest solve {worst:?}")
    })?;
    Ok(format!("7 exact solves equal 4, slowest {worst:.2?}"))
}

fn hard_quadrangulation() -> Check {
    let bound = 10;
    let qs = quadrangulations(bound);
    match find_hard_quadrangulation_par(&qs, usize::MAX) {
        None => Ok(format!(
            "none among {} quadrangulations with n <= {bound}",
            qs.len()
        )),
        Some(q) => {
            let (r, w) = chi_fum_with(&q, 4, SolveLimits::none());
            ensure(r == ChiResult::Value(4), || {
                format!("found instance has {r:?}")
            })?;
            ensure(check_fum_vertex(&q, &w.unwrap()).unwrap().is_ok(), || {
                "witness rejected".into()
            })?;
            // Nest into every inner face; at least one must keep the value 4.
            let mut keeps = Vec::new();
            let mut out_of_reach = 0;
            let mut nested_n = 0;
            for face in (0..q.face_count()).filter(|&f| !q.faces()[f].is_outer()) {
                let nested = nest_quadrangulation(&q, face, 1).map_err(|e| e.to_string())?;
                nested_n = nested.vertex_count();
                ensure(nested_n == 2 * q.vertex_count() - 4, || {
                    "wrong nested size".into()
                })?;
                match chi_fum_with(&nested, 4, SolveLimits::timeout(Duration::from_secs(60))).0 {
                    ChiResult::Value(4) => keeps.push(face),
                    ChiResult::Value(_) => {}
                    ChiResult::TimedOut => out_of_reach += 1,
                    ChiResult::Exceeded => return Err("nested quadrangulation exceeds 4".into()),
                }
            }
            ensure(!keeps.is_empty() || out_of_reach > 0, || {
                "no nesting face keeps 4".into()
            })?;
            ensure(hard_nesting_face(&q) == keeps.first().copied(), || {
                "hard_nesting_face disagrees".into()
            })?;
            Ok(format!(
                "n={} hard instance verified; nesting (n={nested_n}) keeps 4 in faces {keeps:?}",
                q.vertex_count()
            ))
        }
    }
}

fn oracle_equivalence() -> Check {
    let mut corpus = vertex_corpus();
    corpus.extend(two_connected_corpus(6, ENUM_N));
    for name in FIXTURES {
        corpus.extend(fixture(name));
    }
    corpus
        .par_iter()
        .map(|g| {
            let lib: std::collections::BTreeSet<(Edge, Edge)> = facial_adjacent_edge_pairs(g)
                .into_iter()
                .map(|p| (p.first(), p.second()))
                .collect();
            ensure(lib == brute_facial_pairs(g), || {
                format!("facial pairs differ on\n{}", g.describe())
            })?;
            for c in 0..g.component_count() {
                let v = g.components()[c].len();
                let e = g
                    .edges()
                    .iter()
                    .filter(|e| g.component_of(e.u()) == c)
                    .count();
                let f = g.faces().iter().filter(|f| f.component() == c).count();
                ensure(v + f == e + 2, || {
                    format!("Euler fails on\n{}", g.describe())
                })?;
            }
            let doc = write_text(g);
            let back = parse_text(&doc).map_err(|e| e.to_string())?;
            ensure(write_text(&back) == doc, || {
                format!("text round trip differs on\n{doc}")
            })
        })
        .collect::<Result<Vec<()>, String>>()?;
    for name in FIXTURES {
        let bytes = fixture_bytes(name);
        let gs = parse_planar_code(&bytes).map_err(|e| e.to_string())?;
        ensure(write_planar_code(&gs).unwrap() == bytes, || {
            format!("{name} round trip differs")
        })?;
    }
    Ok(format!(
        "{} graphs, {} fixture files byte-identical",
        corpus.len(),
        FIXTURES.len()
    ))
}

fn spot_values() -> Check {
    // Frozen values, each confirmed by the brute-force oracle below.
    let domino = polygon_with_chords(&[0, 1, 2, 3, 4, 5], &[(1, 4)]).unwrap();
    let mut cases: Vec<(String, PlaneGraph, bool, u32)> = Vec::new();
    for n in 3..=8 {
        cases.push((format!("C{n}"), cycle(n), false, 3));
        cases.push((format!("C{n} edges"), cycle(n), true, 3));
    }
    cases.push(("K4".into(), k4(), false, 4));
    cases.push(("domino edges".into(), domino, true, 4));
    for (name, g, edge, want) in &cases {
        let got = if *edge {
            chi_fum_edge(g, 6)
        } else {
            chi_fum(g, 6)
        };
        ensure(got == ChiResult::Value(*want), || {
            format!("{name}: solver {got:?}, expected {want}")
        })?;
        let brute = if *edge {
            brute_chi_edge(g)
        } else {
            brute_chi_vertex(g)
        };
        ensure(brute == *want, || {
            format!("{name}: oracle {brute}, expected {want}")
        })?;
    }
    Ok(format!("{} values match solver and oracle", cases.len()))
}

fn bound_tripwires() -> Check {
    let mut corpus = vertex_corpus();
    corpus.extend(two_connected_corpus(6, ENUM_N));
    corpus.extend(fixture("quadrangulations_4_12.pc"));
    corpus.extend(triangulations(8));
    corpus
        .par_iter()
        .map(|g| {
            ensure(verify_five_color_bound(g), || {
                format!("needs more than 5 colours:\n{}", g.describe())
            })
        })
        .collect::<Result<Vec<()>, String>>()?;
    let reach = 12;
    let results: Vec<Option<u32>> = corpus
        .par_iter()
        .filter(|g| g.edge_count() <= reach)
        .map(|g| {
            let s = g.subdivide_all();
            match chi_fum_edge_with(&s, 4, SolveLimits::timeout(Duration::from_secs(10))).0 {
                ChiResult::Value(k) => Ok(Some(k)),
                ChiResult::TimedOut => Ok(None),
                ChiResult::Exceeded => Err(format!(
                    "subdivision needs more than 4 edge colours:\n{}",
                    g.describe()
                )),
            }
        })
        .collect::<Result<_, String>>()?;
    let solved = results.iter().filter(|r| r.is_some()).count();
    Ok(format!(
        "5-colour bound on {} graphs; subdivisions of {solved}/{} graphs with <= {reach} edges need <= 4",
        corpus.len(),
        results.len()
    ))
}

// ---- brute-force oracles for the spot values ----

fn unique_max(vals: &[u32]) -> bool {
    let m = vals.iter().copied().max().unwrap_or(0);
    vals.iter().filter(|&&x| x == m).count() == 1
}

fn odometer(len: usize, k: u32, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut c = vec![1u32; len];
    loop {
        if f(&c) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == len {
                return false;
            }
            if c[i] < k {
                c[i] += 1;
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

fn brute_chi_vertex(g: &PlaneGraph) -> u32 {
    let walks = trace_faces(g.rotations());
    (1..=6)
        .find(|&k| {
            odometer(g.vertex_count(), k, |c| {
                g.edges().iter().all(|e| c[e.u()] != c[e.v()])
                    && walks.iter().all(|w| {
                        let mut vs: Vec<usize> = w.iter().map(|d| d.0).collect();
                        vs.sort_unstable();
                        vs.dedup();
                        unique_max(&vs.iter().map(|&v| c[v]).collect::<Vec<_>>())
                    })
            })
        })
        .unwrap_or(u32::MAX)
}

fn brute_chi_edge(g: &PlaneGraph) -> u32 {
    let walks = trace_faces(g.rotations());
    let idx = |a: usize, b: usize| {
        g.edges()
            .iter()
            .position(|&e| e == Edge::new(a, b))
            .unwrap()
    };
    (1..=6)
        .find(|&k| {
            odometer(g.edge_count(), k, |c| {
                walks.iter().all(|w| {
                    let es: Vec<usize> = w.iter().map(|d| idx(d.0, d.1)).collect();
                    let consecutive_ok = (0..es.len()).all(|i| {
                        let (a, b) = (es[i], es[(i + 1) % es.len()]);
                        a == b || c[a] != c[b]
                    });
                    let mut set = es.clone();
                    set.sort_unstable();
                    set.dedup();
                    consecutive_ok && unique_max(&set.iter().map(|&e| c[e]).collect::<Vec<_>>())
                })
            })
        })
        .unwrap_or(u32::MAX)
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 precoloured-path extension on subcubic and outerplane graphs",
            extension_sweep,
        ),
        (
            "2 vertex 4-colouring of subcubic and outerplane graphs",
            vertex_four_colouring,
        ),
        (
            "3 edge 4-colouring of 2-connected graphs",
            edge_four_colouring,
        ),
        (
            "4 quadrangulations need at most 4 colours",
            quadrangulation_colouring,
        ),
        ("5 girth families are tight at 4", tight_families),
        ("6 hard quadrangulation search", hard_quadrangulation),
        (
            "7 oracle equivalence and format round trips",
            oracle_equivalence,
        ),
        ("8 closed-form spot values", spot_values),
        ("9 five-colour and subdivision tripwires", bound_tripwires),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name} ({detail}) [{:.1?}]", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{:.1?}]", t.elapsed());
            }
        }
    }
    println!(
        "acceptance: {}/9 passed in {:.1?}",
        9 - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
