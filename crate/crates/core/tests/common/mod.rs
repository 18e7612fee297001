#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use cutface::current::CurrentGraph;
use cutface::{Arc, FaceSet, RotationSystem, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_rs(name: &str) -> RotationSystem {
    RotationSystem::parse(&fixture(name)).unwrap()
}

pub fn fixture_cg(name: &str) -> CurrentGraph {
    CurrentGraph::parse(&fixture(name)).unwrap()
}

pub fn tetrahedron() -> RotationSystem {
    "0. 1 2 3\n1. 0 3 2\n2. 0 1 3\n3. 0 2 1".parse().unwrap()
}

/// The octahedron on the sphere: poles 0 and 5, equator 1 2 3 4.
pub fn octahedron() -> RotationSystem {
    "0. 1 2 3 4\n1. 0 4 5 2\n2. 0 1 5 3\n3. 0 2 5 4\n4. 0 3 5 1\n5. 1 4 3 2"
        .parse()
        .unwrap()
}

/// Euler genus computed by hand from raw counts, independent of `summarize`.
pub fn euler_genus(rs: &RotationSystem, faces: usize) -> i64 {
    let chi = rs.num_vertices() as i64 - rs.num_edges() as i64 + faces as i64;
    (2 - chi) / 2
}

/// A connected simple graph on `n` vertices (random spanning tree plus
/// extra edges) with uniformly shuffled rotations.
pub fn random_embedding(rng: &mut impl Rng, n: u32, extra: usize) -> RotationSystem {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = (0..n).map(|v| (v, Vec::new())).collect();
    for &(u, v) in &edges {
        rot.get_mut(&u).unwrap().push(v);
        rot.get_mut(&v).unwrap().push(u);
    }
    for r in rot.values_mut() {
        r.shuffle(rng);
    }
    RotationSystem::from_rotations(rot).unwrap()
}

/// Face adjacency built directly from the face walks: face `f` touches face
/// `g` when some arc of `f` has its reverse on `g`.
pub fn face_adjacency(fs: &FaceSet) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); fs.len()];
    for (f, face) in fs.faces().iter().enumerate() {
        for a in face {
            let g = fs.face_of(a.reversed()).unwrap();
            if g != f {
                adj[f].insert(g);
                adj[g].insert(f);
            }
        }
    }
    adj
}

/// Faces whose deletion disconnects the rest, by deleting each one and
/// counting components with a breadth-first search.
pub fn articulation_oracle(fs: &FaceSet) -> Vec<usize> {
    let adj = face_adjacency(fs);
    let n = adj.len();
    let components_without = |skip: usize| {
        let mut seen = vec![false; n];
        seen[skip] = true;
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                for &g in &adj[f] {
                    if !seen[g] {
                        seen[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        count
    };
    (0..n).filter(|&f| components_without(f) > 1).collect()
}

/// All arcs whose face is `face`, as the set of corners `(tail -> head)`.
pub fn arcs_of(fs: &FaceSet, face: usize) -> HashSet<Arc> {
    fs.face(face).iter().copied().collect()
}

/// Rebuilds a current graph with new labels, embedding or currents.
pub fn rebuild(
    cg: &CurrentGraph,
    labels: BTreeMap<Vertex, Option<String>>,
    embedding: RotationSystem,
    currents: Vec<(Arc, i64)>,
) -> CurrentGraph {
    CurrentGraph::new(cg.group(), labels, embedding, currents).unwrap()
}

fn currents_of(cg: &CurrentGraph) -> Vec<(Arc, i64)> {
    cg.edge_currents().into_iter().map(|(a, g)| (a, i64::from(g))).collect()
}

fn first_unlabeled(cg: &CurrentGraph) -> Vertex {
    cg.embedding().vertices().find(|&v| cg.label(v).is_none()).unwrap()
}

/// A closed walk `v0 -> v1 -> ... -> v0` through the edge `{u, v}`, found by
/// a breadth-first search from `v` to `u` avoiding that edge.
fn cycle_through(rs: &RotationSystem, u: Vertex, v: Vertex) -> Vec<Arc> {
    let mut parent = BTreeMap::from([(v, v)]);
    let mut queue = VecDeque::from([v]);
    while let Some(a) = queue.pop_front() {
        for &b in rs.rotation(a).unwrap() {
            if (a, b) == (v, u) || parent.contains_key(&b) {
                continue;
            }
            parent.insert(b, a);
            queue.push_back(b);
        }
    }
    let mut path = vec![u];
    while *path.last().unwrap() != v {
        path.push(parent[path.last().unwrap()]);
    }
    path.reverse();
    let mut arcs = vec![Arc::new(u, v)];
    arcs.extend(path.windows(2).map(|w| Arc::new(w[0], w[1])));
    arcs
}

/// Adds `t` to every arc of a cycle through the first edge: Kirchhoff's law
/// and the vortex excesses are unchanged, the logs are not.
pub fn shift_along_cycle(cg: &CurrentGraph, t: i64) -> CurrentGraph {
    let (u, v) = cg.embedding().edges()[0];
    let cycle = cycle_through(cg.embedding(), u, v);
    let mut out = cg.clone();
    for arc in cycle {
        out.set_current(arc, i64::from(cg.current(arc).unwrap()) + t);
    }
    out
}

/// One crafted negative per property, built from a valid current graph.
pub fn negatives(cg: &CurrentGraph) -> Vec<(u8, &'static str, CurrentGraph)> {
    let mut out = Vec::new();

    // (1) delete one edge between unlabeled vertices: two vertices of degree 2.
    let (u, v) = cg
        .embedding()
        .edges()
        .into_iter()
        .find(|&(u, v)| cg.label(u).is_none() && cg.label(v).is_none())
        .unwrap();
    let emb = cg.embedding().delete_edge(u, v).unwrap();
    let currents = currents_of(cg).into_iter().filter(|(a, _)| a.edge() != (u, v)).collect();
    out.push((1, "degree", rebuild(cg, cg.labels().clone(), emb, currents)));

    // (2) reverse one rotation so the face count changes.
    let flipped = cg
        .embedding()
        .vertices()
        .find_map(|w| {
            let rots = cg.embedding().rotations().map(|(x, r)| {
                let mut r = r.to_vec();
                if x == w {
                    r.swap(1, 2);
                }
                (x, r)
            });
            let emb = RotationSystem::from_rotations(rots).unwrap();
            (cutface::trace_faces(&emb).len() != 3).then_some(emb)
        })
        .unwrap();
    out.push((2, "circuit count", rebuild(cg, cg.labels().clone(), flipped, currents_of(cg))));

    // (3) shift by a multiple of 3 around a cycle: only the logs change.
    out.push((3, "log completeness", shift_along_cycle(cg, 9)));

    // (4) drop a vortex label: its nonzero excess now breaks Kirchhoff's law.
    let mut labels = cg.labels().clone();
    let (_, vortex) = cg.labeled_vertices()[0];
    labels.insert(vortex, None);
    out.push((4, "kirchhoff", rebuild(cg, labels, cg.embedding().clone(), currents_of(cg))));

    // (5) label an ordinary vertex: its excess 0 generates nothing.
    let mut labels = cg.labels().clone();
    labels.insert(first_unlabeled(cg), Some("z".into()));
    out.push((5, "vortex excess", rebuild(cg, labels, cg.embedding().clone(), currents_of(cg))));

    // (6) shift by 1 around a cycle: residues mod 3 no longer follow the labels.
    out.push((6, "mod-3 rule", shift_along_cycle(cg, 1)));
    out
}
