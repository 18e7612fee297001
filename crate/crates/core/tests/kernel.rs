mod common;

use common::*;
use cutface::corpus::CORPUS;
use cutface::dual::build_dual;
use cutface::{analyze, trace_faces, Anchor, Arc, RotationSystem};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn corpus_round_trips_through_display() {
    for entry in &CORPUS {
        let rs = entry.rotation_system().unwrap();
        let normalized: Vec<String> = entry
            .text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .collect();
        let written: Vec<String> = rs.to_string().lines().map(str::to_string).collect();
        assert_eq!(written, normalized, "{}", entry.name);
        assert_eq!(RotationSystem::parse(&rs.to_string()).unwrap(), rs);
    }
}

#[test]
fn articulation_faces_match_deletion_oracle_on_corpus() {
    for entry in &CORPUS {
        let fs = trace_faces(&entry.rotation_system().unwrap());
        let fast = build_dual(&fs).find_cutfaces().unwrap();
        assert_eq!(fast, articulation_oracle(&fs), "{}", entry.name);
        assert_eq!(fast.len(), 1, "{}", entry.name);
    }
}

#[test]
fn articulation_faces_match_oracle_on_small_random_duals() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(3..9);
        let extra = rng.gen_range(0..12);
        let rs = random_embedding(&mut rng, n, extra);
        let fs = trace_faces(&rs);
        if fs.len() > 40 {
            continue;
        }
        let dual = build_dual(&fs);
        if dual.components_without(&[]).len() != 1 {
            continue;
        }
        assert_eq!(dual.find_cutfaces().unwrap(), articulation_oracle(&fs), "{rs}");
        checked += 1;
    }
}

#[test]
fn octahedron_triangle_reversal() {
    let oct = octahedron();
    let (_, before) = analyze(&oct).unwrap();
    assert_eq!((before.num_faces, before.genus), (8, 0));
    let reversed = oct.reverse_triangle([0, 1, 4]).unwrap();
    let (_, after) = analyze(&reversed).unwrap();
    assert_eq!((after.num_faces, after.genus), (6, 1));
    assert_eq!(after.face_census.count(9), 1);
    assert_eq!(reversed.reverse_triangle([0, 4, 1]).unwrap(), oct);
}

/// Inserts an edge between two corners; returns `(dF, dg)` measured by a
/// fresh trace and raw Euler counts.
fn insert_between(rs: &RotationSystem, c1: Arc, c2: Arc) -> Option<(i64, i64)> {
    // The corner after arc `w -> a` sits at `a`, right after `w`.
    let out = rs.insert_edge(c1.head, Anchor::After(c1.tail), c2.head, Anchor::After(c2.tail)).ok()?;
    let f0 = trace_faces(rs).len();
    let f1 = trace_faces(&out).len();
    Some((f1 as i64 - f0 as i64, euler_genus(&out, f1) - euler_genus(rs, f0)))
}

#[test]
fn edge_insertion_within_and_across_faces() {
    let mut rng = StdRng::seed_from_u64(11);
    let (mut within, mut across) = (0, 0);
    let mut attempts = 0;
    while (within < 25 || across < 25) && attempts < 10_000 {
        attempts += 1;
        let n = rng.gen_range(4..9);
        let extra = rng.gen_range(0..8);
        let rs = random_embedding(&mut rng, n, extra);
        let fs = trace_faces(&rs);
        let arcs: Vec<Arc> = rs.arcs().collect();
        let c1 = arcs[rng.gen_range(0..arcs.len())];
        let c2 = arcs[rng.gen_range(0..arcs.len())];
        if c1.head == c2.head || rs.has_edge(c1.head, c2.head) {
            continue;
        }
        let same_face = fs.face_of(c1) == fs.face_of(c2);
        let delta = insert_between(&rs, c1, c2).unwrap();
        if same_face {
            assert_eq!(delta, (1, 0), "{rs} corners {c1} {c2}");
            within += 1;
        } else {
            assert_eq!(delta, (-1, 1), "{rs} corners {c1} {c2}");
            across += 1;
        }
    }
    assert!(within >= 20 && across >= 20, "within {within} across {across}");
}

#[test]
fn mirror_preserves_corpus_census() {
    for entry in &CORPUS {
        let rs = entry.rotation_system().unwrap();
        let (_, a) = analyze(&rs).unwrap();
        let (_, b) = analyze(&rs.mirror()).unwrap();
        assert_eq!(a, b, "{}", entry.name);
    }
}

#[test]
fn k7_torus_is_triangular() {
    let rows: String = (0..7u32)
        .map(|i| {
            let nbrs: Vec<String> = [1, 3, 2, 6, 4, 5].iter().map(|d| ((i + d) % 7).to_string()).collect();
            format!("{i}. {}\n", nbrs.join(" "))
        })
        .collect();
    let (_, s) = analyze(&RotationSystem::parse(&rows).unwrap()).unwrap();
    assert_eq!((s.num_faces, s.genus, s.face_excess), (14, 1, 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn face_walks_partition_arcs(seed in any::<u64>(), n in 3u32..10, extra in 0usize..15) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rs = random_embedding(&mut rng, n, extra);
        let (fs, s) = analyze(&rs).unwrap();
        let total: usize = fs.lengths().sum();
        prop_assert_eq!(total, 2 * rs.num_edges());
        prop_assert_eq!(s.face_census.total_length(), 2 * s.num_edges);
        prop_assert_eq!(s.face_excess as i64, 2 * s.num_edges as i64 - 3 * s.num_faces as i64);
        prop_assert_eq!(s.euler_characteristic(), 2 - 2 * s.genus as i64);
        for arc in rs.arcs() {
            prop_assert!(fs.face_of(arc).is_some());
        }
    }

    #[test]
    fn delete_then_reinsert_restores(seed in any::<u64>(), n in 3u32..9, extra in 0usize..10) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rs = random_embedding(&mut rng, n, extra);
        let edges = rs.edges();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let mut cut = rs.clone();
        let (iu, iv) = cut.remove_edge(u, v).unwrap();
        cut.add_edge(u, Anchor::Slot(iu), v, Anchor::Slot(iv)).unwrap();
        prop_assert_eq!(cut, rs);
    }

    #[test]
    fn mirror_preserves_summary(seed in any::<u64>(), n in 3u32..9, extra in 0usize..12) {
        let mut rng = StdRng::seed_from_u64(seed);
        let rs = random_embedding(&mut rng, n, extra);
        let (_, a) = analyze(&rs).unwrap();
        let (_, b) = analyze(&rs.mirror()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn triangle_reversal_is_an_involution(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let corpus = &CORPUS[rng.gen_range(0..CORPUS.len())];
        let rs = corpus.rotation_system().unwrap();
        let fs = trace_faces(&rs);
        let triangles = fs.faces_of_len(3);
        let t = fs.vertex_cycle(triangles[rng.gen_range(0..triangles.len())]);
        let t = [t[0], t[1], t[2]];
        let once = rs.reverse_triangle(t).unwrap();
        let back = once.reverse_triangle([t[0], t[2], t[1]]).unwrap();
        prop_assert_eq!(back, rs);
    }
}
