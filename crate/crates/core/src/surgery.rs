//! Subtractible-handle surgery.
//!
//! Input: a triangular embedding of `K_n - E(K_2)` containing the six-row
//! handle pattern below (vertex names are the roles; `w` is the wrap-around
//! neighbor, `12s-4` in the canonical family):
//!
//! ```text
//! 0. ... w  5 9 4 6 2  ...
//! 3. ... 7  9 5 6 4 y  ...
//! 4. ... y  3 6 0 9 16 ...
//! 5. ... x  6 3 9 0 w  ...
//! 6. ... 2  0 4 3 5 x  ...
//! 9. ... 16 4 0 5 3 7  ...
//! ```
//!
//! The pipeline deletes the six handle edges (genus -1), reverses the two
//! revealed triangles `[0,6,5]` and `[3,4,9]` (genus +2, two 9-gons appear),
//! puts the handle edges back on the other side (genus +1, the 9-gons now
//! form a dual 2-cut) and finally joins the 9-gons by three edges, one of
//! them the missing edge `{x, y}` and two relocated from elsewhere
//! (genus +1). The result is `K_n` with an 18-gon cutface and a simple dual.
//!
//! Re-insertion and bridge placement are chosen by a deterministic search:
//! every candidate is retraced and accepted only if it meets the step's
//! postconditions.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::genus_complete;
use crate::dual::{build_dual, vertices_of, SeparationCertificate};
use crate::faces::{analyze, trace_faces, EmbeddingSummary, FaceSet};
use crate::rotation::{Anchor, Arc, EmbeddingError, RotationSystem, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("no subtractible handle pattern: {0}")]
    NoPattern(String),
    #[error("{step}: postcondition failed: {reason}")]
    PostconditionFail { step: &'static str, reason: String },
    #[error("no re-insertion of the handle edges meets the postconditions")]
    NoValidReinsertion,
    #[error("no placement of three bridge edges yields an 18-gon cutface with a simple dual")]
    NoValidMerge,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// One occurrence of the handle pattern. Fields are named after the vertex
/// each one plays in the table in the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HandlePattern {
    pub v0: Vertex,
    pub v3: Vertex,
    pub v4: Vertex,
    pub v5: Vertex,
    pub v6: Vertex,
    pub v9: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub v2: Vertex,
    pub v7: Vertex,
    pub v16: Vertex,
    pub wrap: Vertex,
}

impl HandlePattern {
    /// The triangle revealed next to `x`, written as a face.
    pub fn near_triangle(&self) -> [Vertex; 3] {
        [self.v0, self.v6, self.v5]
    }

    /// The triangle revealed next to `y`, written as a face.
    pub fn far_triangle(&self) -> [Vertex; 3] {
        [self.v3, self.v4, self.v9]
    }

    pub fn handle_edges(&self) -> [(Vertex, Vertex); 6] {
        [
            (self.v0, self.v9),
            (self.v0, self.v4),
            (self.v3, self.v5),
            (self.v3, self.v6),
            (self.v4, self.v6),
            (self.v5, self.v9),
        ]
    }

    pub fn handle_vertices(&self) -> BTreeSet<Vertex> {
        [self.v0, self.v3, self.v4, self.v5, self.v6, self.v9].into()
    }

    /// The six table rows: each vertex with the window of its rotation.
    pub fn rows(&self) -> [(Vertex, [Vertex; 6]); 6] {
        let HandlePattern { v0, v3, v4, v5, v6, v9, x, y, v2, v7, v16, wrap } = *self;
        [
            (v0, [wrap, v5, v9, v4, v6, v2]),
            (v3, [v7, v9, v5, v6, v4, y]),
            (v4, [y, v3, v6, v0, v9, v16]),
            (v5, [x, v6, v3, v9, v0, wrap]),
            (v6, [v2, v0, v4, v3, v5, x]),
            (v9, [v16, v4, v0, v5, v3, v7]),
        ]
    }

    fn all_roles(&self) -> [Vertex; 12] {
        let HandlePattern { v0, v3, v4, v5, v6, v9, x, y, v2, v7, v16, wrap } = *self;
        [v0, v3, v4, v5, v6, v9, x, y, v2, v7, v16, wrap]
    }

    /// Arc on the 9-gon that forms around the reversed near triangle.
    fn near_nine_arc(&self) -> Arc {
        Arc::new(self.v5, self.v0)
    }

    fn far_nine_arc(&self) -> Arc {
        Arc::new(self.v9, self.v3)
    }
}

/// True when `window` occurs as consecutive entries of the cyclic `rot`.
fn has_window(rot: &[Vertex], window: &[Vertex]) -> bool {
    let n = rot.len();
    if window.len() > n {
        return false;
    }
    let Some(start) = rot.iter().position(|&v| v == window[0]) else {
        return false;
    };
    window.iter().enumerate().all(|(k, &w)| rot[(start + k) % n] == w)
}

fn neighbor_at(rs: &RotationSystem, v: Vertex, anchor: Vertex, offset: isize) -> Option<Vertex> {
    let rot = rs.rotation(v)?;
    let i = rot.iter().position(|&w| w == anchor)? as isize;
    let n = rot.len() as isize;
    Some(rot[(i + offset).rem_euclid(n) as usize])
}

/// Every role assignment matching the table orientation, sorted.
pub fn locate_pattern(rs: &RotationSystem) -> Vec<HandlePattern> {
    let mut found = BTreeSet::new();
    for (v0, rot0) in rs.rotations() {
        let n = rot0.len();
        if n < 6 {
            continue;
        }
        for i in 0..n {
            let at = |k: usize| rot0[(i + k) % n];
            let (wrap, v5, v9, v4, v6, v2) = (at(0), at(1), at(2), at(3), at(4), at(5));
            let Some(v3) = neighbor_at(rs, v5, v6, 1) else { continue };
            let Some(x) = neighbor_at(rs, v5, v6, -1) else { continue };
            let Some(y) = neighbor_at(rs, v3, v4, 1) else { continue };
            let Some(v7) = neighbor_at(rs, v3, v9, -1) else { continue };
            let Some(v16) = neighbor_at(rs, v4, v9, 1) else { continue };
            let hp = HandlePattern { v0, v3, v4, v5, v6, v9, x, y, v2, v7, v16, wrap };
            let distinct: BTreeSet<_> = hp.all_roles().into_iter().collect();
            if distinct.len() != 12 || rs.has_edge(x, y) {
                continue;
            }
            if hp
                .rows()
                .iter()
                .all(|(v, window)| rs.rotation(*v).is_some_and(|r| has_window(r, window)))
            {
                found.insert(hp);
            }
        }
    }
    found.into_iter().collect()
}

fn postcondition(step: &'static str, reason: impl Into<String>) -> SurgeryError {
    SurgeryError::PostconditionFail { step, reason: reason.into() }
}

/// Deletes the six handle edges. The result must stay triangular, lose one
/// unit of genus and show both revealed triangles as faces.
pub fn remove_handle(rs: &RotationSystem, hp: &HandlePattern) -> Result<RotationSystem, SurgeryError> {
    const STEP: &str = "remove_handle";
    let (_, before) = analyze(rs)?;
    if !before.is_triangular() {
        return Err(postcondition(STEP, "input is not triangular"));
    }
    let mut out = rs.clone();
    for (u, v) in hp.handle_edges() {
        out.remove_edge(u, v).map_err(|e| postcondition(STEP, e.to_string()))?;
    }
    let (_, after) = analyze(&out).map_err(|e| postcondition(STEP, e.to_string()))?;
    if !after.is_triangular() {
        return Err(postcondition(STEP, format!("result has face excess {}", after.face_excess)));
    }
    if after.genus + 1 != before.genus {
        return Err(postcondition(STEP, format!("genus went {} -> {}", before.genus, after.genus)));
    }
    for t in [hp.near_triangle(), hp.far_triangle()] {
        if !out.is_triangular_face(t) {
            return Err(postcondition(STEP, format!("{t:?} is not a face after deletion")));
        }
    }
    Ok(out)
}

/// Reverses both revealed triangles; each merges its three neighboring
/// triangles into a 9-gon.
pub fn reverse_revealed(rs: &RotationSystem, hp: &HandlePattern) -> Result<RotationSystem, SurgeryError> {
    const STEP: &str = "reverse_revealed";
    for t in [hp.near_triangle(), hp.far_triangle()] {
        if !rs.is_triangular_face(t) {
            return Err(postcondition(STEP, format!("{t:?} is not a face")));
        }
    }
    let (_, before) = analyze(rs)?;
    let out = rs
        .reverse_triangle(hp.near_triangle())?
        .reverse_triangle(hp.far_triangle())?;
    let (fs, after) = analyze(&out)?;
    if before.num_faces != after.num_faces + 4 || after.genus != before.genus + 2 {
        return Err(postcondition(
            STEP,
            format!(
                "(F, g) went ({}, {}) -> ({}, {})",
                before.num_faces, before.genus, after.num_faces, after.genus
            ),
        ));
    }
    let near = fs.face_of(hp.near_nine_arc()).expect("arc exists");
    let far = fs.face_of(hp.far_nine_arc()).expect("arc exists");
    if near == far || fs.face_len(near) != 9 || fs.face_len(far) != 9 {
        return Err(postcondition(STEP, "reversed triangles are not bordered by two distinct 9-gons"));
    }
    if after.face_census.count(9) != before.face_census.count(9) + 2 {
        return Err(postcondition(STEP, "expected exactly two new 9-gons"));
    }
    Ok(out)
}

/// An inserted edge: `b` goes right after `after_a` in the rotation at `a`,
/// and symmetrically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub a: Vertex,
    pub after_a: Vertex,
    pub b: Vertex,
    pub after_b: Vertex,
}

impl Placement {
    fn apply(&self, rs: &mut RotationSystem) -> Result<(), EmbeddingError> {
        rs.add_edge(self.a, Anchor::After(self.after_a), self.b, Anchor::After(self.after_b))
    }
}

/// Corners `(v, incoming neighbor)` at `v` on faces made only of `region`
/// arcs, sorted. Only region faces are traced.
fn region_corners(rs: &RotationSystem, region: &HashSet<Arc>, v: Vertex) -> Vec<Vertex> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &start in region {
        if seen.contains(&start) {
            continue;
        }
        let Some(face) = face_through(rs, start, region.len()) else { continue };
        seen.extend(face.iter().copied());
        if face.iter().all(|a| region.contains(a)) {
            out.extend(face.iter().filter(|a| a.head == v).map(|a| a.tail));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Depth-first search over corner placements for `edges`, restricted to
/// faces built from `region` arcs (the region grows with each inserted
/// edge). Returns the first complete placement accepted by `accept`.
fn search_insertions(
    rs: &RotationSystem,
    region: &HashSet<Arc>,
    edges: &[(Vertex, Vertex)],
    placed: &mut Vec<Placement>,
    accept: &mut dyn FnMut(&RotationSystem) -> bool,
) -> Option<RotationSystem> {
    let Some((&(a, b), rest)) = edges.split_first() else {
        return accept(rs).then(|| rs.clone());
    };
    let mut grown = region.clone();
    grown.insert(Arc::new(a, b));
    grown.insert(Arc::new(b, a));
    for after_a in region_corners(rs, region, a) {
        for after_b in region_corners(rs, region, b) {
            let p = Placement { a, after_a, b, after_b };
            let mut next = rs.clone();
            if p.apply(&mut next).is_err() {
                continue;
            }
            placed.push(p);
            if let Some(found) = search_insertions(&next, &grown, rest, placed, accept) {
                return Some(found);
            }
            placed.pop();
        }
    }
    None
}

/// The 9-gons around the reversed triangles, as face indices.
fn nine_gons(fs: &FaceSet, hp: &HandlePattern) -> Option<(usize, usize)> {
    let near = fs.face_of(hp.near_nine_arc())?;
    let far = fs.face_of(hp.far_nine_arc())?;
    (near != far && fs.face_len(near) == 9 && fs.face_len(far) == 9).then_some((near, far))
}

/// Checks that the two 9-gons cut off exactly six triangles spanned by the
/// handle vertices. Returns that block.
fn handle_block_behind_nines(rs: &RotationSystem, hp: &HandlePattern) -> Option<Vec<usize>> {
    let fs = trace_faces(rs);
    let (near, far) = nine_gons(&fs, hp)?;
    let cut = build_dual(&fs).two_cut(near, far).ok()?;
    if !cut.separates {
        return None;
    }
    let block = cut.blocks.into_iter().next()?;
    let handle = hp.handle_vertices();
    (block.len() == 6
        && block.iter().all(|&f| fs.face_len(f) == 3)
        && vertices_of(&fs, &block).is_subset(&handle))
    .then_some(block)
}

/// Re-inserts the handle edges across the two reversed triangles so that the
/// 9-gons separate the six new handle faces from the rest of the dual.
pub fn reinsert_handle(rs: &RotationSystem, hp: &HandlePattern) -> Result<(RotationSystem, Vec<Placement>), SurgeryError> {
    let (fs, before) = analyze(rs)?;
    if nine_gons(&fs, hp).is_none() {
        return Err(postcondition("reinsert_handle", "the two 9-gons are missing"));
    }
    let reversed = [
        [hp.v0, hp.v5, hp.v6],
        [hp.v3, hp.v9, hp.v4],
    ];
    let region: HashSet<Arc> = reversed
        .iter()
        .flat_map(|&[a, b, c]| [Arc::new(a, b), Arc::new(b, c), Arc::new(c, a)])
        .collect();
    let target_genus = before.genus + 1;
    let mut accept = |cand: &RotationSystem| {
        analyze(cand).is_ok_and(|(_, s)| s.genus == target_genus)
            && handle_block_behind_nines(cand, hp).is_some()
    };
    let mut placed = Vec::new();
    search_insertions(rs, &region, &hp.handle_edges(), &mut placed, &mut accept)
        .map(|out| (out, placed))
        .ok_or(SurgeryError::NoValidReinsertion)
}

/// An existing edge moved into the bridge, with its original slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelocatedEdge {
    pub edge: (Vertex, Vertex),
    pub original_slots: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeChoice {
    /// `{x, y}` first, then the two relocated edges.
    pub bridges: Vec<Placement>,
    pub relocated: Vec<RelocatedEdge>,
}

/// Final-state requirements shared by the merge search and the report.
fn final_cutface(rs: &RotationSystem, hp: &HandlePattern, target_genus: usize) -> Option<(FaceSet, usize, SeparationCertificate)> {
    let n = rs.num_vertices();
    if rs.num_edges() != n * (n - 1) / 2 {
        return None;
    }
    let (fs, s) = analyze(rs).ok()?;
    if s.genus != target_genus
        || s.face_census.count(18) != 1
        || s.face_census.count(4) != 2
        || s.face_census.count(3) + 3 != s.num_faces
    {
        return None;
    }
    let big = fs.faces_of_len(18)[0];
    let dual = build_dual(&fs);
    if !dual.is_simple() {
        return None;
    }
    let sep = dual.separation(big).ok()?;
    let handle = hp.handle_vertices();
    let small = sep.components.first()?;
    if small.len() != 6 || !vertices_of(&fs, small).is_subset(&handle) {
        return None;
    }
    Some((fs, big, sep))
}

/// The arcs of the face through `arc`, or `None` past `cap` arcs.
fn face_through(rs: &RotationSystem, arc: Arc, cap: usize) -> Option<Vec<Arc>> {
    let mut walk = vec![arc];
    loop {
        let a = *walk.last().expect("non-empty");
        let next = Arc::new(a.head, rs.next_after(a.head, a.tail)?);
        if next == arc {
            return Some(walk);
        }
        if walk.len() == cap {
            return None;
        }
        walk.push(next);
    }
}

/// Cheap filter before a full retrace: every face through a bridge arc is a
/// triangle except one 18-gon, and the 18-gon meets 18 distinct faces.
fn bridge_faces_look_right(rs: &RotationSystem, bridges: &[(Vertex, Vertex)]) -> bool {
    let mut big = None;
    for &(u, v) in bridges {
        for arc in [Arc::new(u, v), Arc::new(v, u)] {
            match face_through(rs, arc, 18) {
                Some(f) if f.len() == 3 => {}
                Some(f) if f.len() == 18 => big = Some(f),
                _ => return false,
            }
        }
    }
    let Some(big) = big else { return false };
    let key = |f: &[Arc]| f.iter().min().copied();
    let big_key = key(&big);
    let mut across = HashSet::new();
    big.iter().all(|a| {
        let k = face_through(rs, a.reversed(), 64).and_then(|f| key(&f));
        k.is_some() && k != big_key && across.insert(k)
    })
}

/// Joins the two 9-gons with three edges: `{x, y}` and two existing edges
/// moved off a pair of triangles each. Candidates are edges between the
/// vertex sets of the two 9-gons, in lexicographic order.
pub fn merge_nines(rs: &RotationSystem, hp: &HandlePattern) -> Result<(RotationSystem, BridgeChoice), SurgeryError> {
    let (fs, before) = analyze(rs)?;
    let (near, far) = nine_gons(&fs, hp)
        .ok_or_else(|| postcondition("merge_nines", "the two 9-gons are missing"))?;
    let near_vertices: BTreeSet<Vertex> = fs.vertex_cycle(near).into_iter().collect();
    let far_vertices: BTreeSet<Vertex> = fs.vertex_cycle(far).into_iter().collect();
    let handle: HashSet<(Vertex, Vertex)> = hp
        .handle_edges()
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    let region: HashSet<Arc> = fs.face(near).iter().chain(fs.face(far)).copied().collect();

    // Each candidate must separate two distinct triangles.
    let mut candidates: Vec<(Vertex, Vertex)> = Vec::new();
    for &a in &near_vertices {
        for &b in &far_vertices {
            let e = (a.min(b), a.max(b));
            if a == b || e == (hp.x.min(hp.y), hp.x.max(hp.y)) || handle.contains(&e) || !rs.has_edge(a, b) {
                continue;
            }
            let left = fs.face_of(Arc::new(a, b)).expect("edge");
            let right = fs.face_of(Arc::new(b, a)).expect("edge");
            if left != right && fs.face_len(left) == 3 && fs.face_len(right) == 3 {
                candidates.push(e);
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();

    let target_genus = before.genus + 1;
    let faces_of_edge = |(u, v): (Vertex, Vertex)| {
        [fs.face_of(Arc::new(u, v)).expect("edge"), fs.face_of(Arc::new(v, u)).expect("edge")]
    };
    for (i, &e1) in candidates.iter().enumerate() {
        for &e2 in &candidates[i + 1..] {
            let f1 = faces_of_edge(e1);
            let f2 = faces_of_edge(e2);
            if f1.iter().any(|f| f2.contains(f)) {
                continue;
            }
            let mut base = rs.clone();
            let relocated: Vec<RelocatedEdge> = [e1, e2]
                .iter()
                .map(|&edge| RelocatedEdge {
                    edge,
                    original_slots: base.remove_edge(edge.0, edge.1).expect("candidate edge"),
                })
                .collect();
            // Orient each bridge as (near endpoint, far endpoint).
            let orient = |(u, v): (Vertex, Vertex)| if near_vertices.contains(&u) { (u, v) } else { (v, u) };
            let bridges = [(hp.x, hp.y), orient(e1), orient(e2)];
            let mut accept = |cand: &RotationSystem| {
                bridge_faces_look_right(cand, &bridges) && final_cutface(cand, hp, target_genus).is_some()
            };
            let mut placed = Vec::new();
            if let Some(out) = search_insertions(&base, &region, &bridges, &mut placed, &mut accept) {
                return Ok((out, BridgeChoice { bridges: placed, relocated }));
            }
        }
    }
    Err(SurgeryError::NoValidMerge)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub name: &'static str,
    pub delta_edges: i64,
    pub delta_faces: i64,
    pub delta_genus: i64,
    /// Euler bookkeeping `dV - dE + dF = -2 dg` with `dV = 0`.
    pub euler_consistent: bool,
}

impl StepRecord {
    fn between(name: &'static str, before: &EmbeddingSummary, after: &EmbeddingSummary) -> Self {
        let delta_edges = after.num_edges as i64 - before.num_edges as i64;
        let delta_faces = after.num_faces as i64 - before.num_faces as i64;
        let delta_genus = after.genus as i64 - before.genus as i64;
        let delta_vertices = after.num_vertices as i64 - before.num_vertices as i64;
        StepRecord {
            name,
            delta_edges,
            delta_faces,
            delta_genus,
            euler_consistent: delta_vertices == 0 && -delta_edges + delta_faces == -2 * delta_genus,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SurgeryReport {
    pub pattern: HandlePattern,
    pub input: EmbeddingSummary,
    pub steps: Vec<StepRecord>,
    pub reinsertion: Vec<Placement>,
    pub bridge_choice: BridgeChoice,
    pub output: EmbeddingSummary,
    /// Genus of a minimum embedding of `K_n`; optimal output has genus two more.
    pub genus_complete: u64,
    pub two_cut_block: Vec<usize>,
    pub cutface: usize,
    pub separation: SeparationCertificate,
    #[serde(skip)]
    pub stages: Vec<(&'static str, RotationSystem)>,
}

impl SurgeryReport {
    pub fn final_embedding(&self) -> &RotationSystem {
        &self.stages.last().expect("four stages").1
    }

    pub fn total_delta(&self) -> (i64, i64) {
        self.steps
            .iter()
            .fold((0, 0), |(e, g), s| (e + s.delta_edges, g + s.delta_genus))
    }

    pub fn is_optimal(&self) -> bool {
        self.output.genus as u64 == self.genus_complete + 2
    }
}

fn check_input(rs: &RotationSystem) -> Result<EmbeddingSummary, SurgeryError> {
    let (_, s) = analyze(rs)?;
    let n = s.num_vertices;
    if !s.is_triangular() {
        return Err(SurgeryError::NoPattern(format!(
            "input is not triangular (face census {})",
            s.face_census
        )));
    }
    if n < 3 || s.num_edges + 1 != n * (n - 1) / 2 {
        return Err(SurgeryError::NoPattern(format!(
            "input has {} edges, K_{n} minus one edge has {}",
            s.num_edges,
            (n * (n - 1) / 2).saturating_sub(1)
        )));
    }
    Ok(s)
}

/// Runs the four steps on the first located pattern that survives all of
/// them.
pub fn run_surgery(rs: &RotationSystem) -> Result<SurgeryReport, SurgeryError> {
    let input = check_input(rs)?;
    let patterns = locate_pattern(rs);
    let mut first_err = None;
    for hp in &patterns {
        match run_with_pattern(rs, &input, hp) {
            Ok(report) => return Ok(report),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.unwrap_or_else(|| SurgeryError::NoPattern("no match of the six-row table".into())))
}

/// Runs the four steps for one given pattern.
pub fn run_with_pattern(
    rs: &RotationSystem,
    input: &EmbeddingSummary,
    hp: &HandlePattern,
) -> Result<SurgeryReport, SurgeryError> {
    let removed = remove_handle(rs, hp)?;
    let reversed = reverse_revealed(&removed, hp)?;
    let (reinserted, reinsertion) = reinsert_handle(&reversed, hp)?;
    let two_cut_block = handle_block_behind_nines(&reinserted, hp)
        .ok_or_else(|| postcondition("reinsert_handle", "9-gons do not form a 2-cut"))?;
    let (merged, bridge_choice) = merge_nines(&reinserted, hp)?;

    let stages = vec![
        ("remove_handle", removed),
        ("reverse_revealed", reversed),
        ("reinsert_handle", reinserted),
        ("merge_nines", merged),
    ];
    let mut steps = Vec::new();
    let mut prev = input.clone();
    for (name, stage) in &stages {
        let (_, s) = analyze(stage)?;
        steps.push(StepRecord::between(name, &prev, &s));
        prev = s;
    }
    let output = prev;
    let final_rs = &stages[3].1;
    let (_, cutface, separation) = final_cutface(final_rs, hp, output.genus)
        .ok_or_else(|| postcondition("merge_nines", "final embedding lost its cutface"))?;
    let n = u32::try_from(output.num_vertices).expect("vertex count fits u32");
    let genus_complete = genus_complete(n).map_err(|e| postcondition("merge_nines", e.to_string()))?;
    Ok(SurgeryReport {
        pattern: *hp,
        input: input.clone(),
        steps,
        reinsertion,
        bridge_choice,
        output,
        genus_complete,
        two_cut_block,
        cutface,
        separation,
        stages,
    })
}
