//! Face tracing and the Euler-formula summary of an embedding.
//!
//! Tracing rule: the arc after `u -> v` on a boundary walk is `v -> w`, where
//! `w` immediately follows `u` in the rotation at `v`. The opposite rule
//! gives the mirror surface with the same face census.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::rotation::{Arc, EmbeddingError, RotationSystem, Vertex};

/// Face boundary walks of a rotation system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Vec<Arc>>,
    arc_to_face: HashMap<Arc, usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Vec<Arc>] {
        &self.faces
    }

    pub fn face(&self, index: usize) -> &[Arc] {
        &self.faces[index]
    }

    pub fn face_of(&self, arc: Arc) -> Option<usize> {
        self.arc_to_face.get(&arc).copied()
    }

    pub fn face_len(&self, index: usize) -> usize {
        self.faces[index].len()
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.faces.iter().map(Vec::len)
    }

    /// Cyclic vertex sequence of a face: the tail of each boundary arc.
    pub fn vertex_cycle(&self, index: usize) -> Vec<Vertex> {
        self.faces[index].iter().map(|a| a.tail).collect()
    }

    /// Corners of a face as `(vertex, incoming neighbor)`. Inserting a new
    /// neighbor right after the incoming neighbor in that vertex's rotation
    /// puts the new edge inside this face.
    pub fn corners(&self, index: usize) -> Vec<(Vertex, Vertex)> {
        self.faces[index].iter().map(|a| (a.head, a.tail)).collect()
    }

    /// Faces whose lengths match `len`, in index order.
    pub fn faces_of_len(&self, len: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].len() == len).collect()
    }

    pub fn census(&self) -> FaceCensus {
        let mut census = FaceCensus::default();
        for len in self.lengths() {
            *census.0.entry(len).or_default() += 1;
        }
        census
    }
}

/// Partitions every arc of `rs` into boundary walks.
///
/// Faces are numbered in discovery order: vertices ascending, then each
/// rotation left to right.
pub fn trace_faces(rs: &RotationSystem) -> FaceSet {
    let pos = rs.position_index();
    let mut faces = Vec::new();
    let mut arc_to_face = HashMap::with_capacity(2 * rs.num_edges());
    for start in rs.arcs() {
        if arc_to_face.contains_key(&start) {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut arc = start;
        loop {
            arc_to_face.insert(arc, id);
            walk.push(arc);
            let rot = rs.rotation(arc.head).expect("head is a vertex");
            let i = pos[&arc.head][&arc.tail];
            arc = Arc::new(arc.head, rot[(i + 1) % rot.len()]);
            if arc == start {
                break;
            }
        }
        faces.push(walk);
    }
    FaceSet { faces, arc_to_face }
}

/// Face-length histogram: length -> number of faces.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FaceCensus(pub BTreeMap<usize, usize>);

impl FaceCensus {
    pub fn count(&self, len: usize) -> usize {
        self.0.get(&len).copied().unwrap_or(0)
    }

    pub fn total_faces(&self) -> usize {
        self.0.values().sum()
    }

    pub fn total_length(&self) -> usize {
        self.0.iter().map(|(l, c)| l * c).sum()
    }

    pub fn max_len(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }
}

impl std::fmt::Display for FaceCensus {
    /// `3^31 17^1`, ascending by length.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (len, count) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{len}^{count}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingSummary {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    pub genus: usize,
    pub face_census: FaceCensus,
    /// Sum over faces of (length - 3).
    pub face_excess: usize,
}

impl EmbeddingSummary {
    /// `|V| - (c + 1)`, or `None` when the graph has fewer than `c + 1`
    /// vertices (it cannot then be c-connected).
    pub fn vertex_excess_for(&self, c: usize) -> Option<usize> {
        self.num_vertices.checked_sub(c + 1)
    }

    pub fn is_triangular(&self) -> bool {
        self.face_excess == 0
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges as i64 + self.num_faces as i64
    }
}

/// Solves Euler's formula `V - E + F = 2 - 2g` for the genus.
pub fn summarize(rs: &RotationSystem, fs: &FaceSet) -> Result<EmbeddingSummary, EmbeddingError> {
    if rs.num_components() != 1 {
        return Err(EmbeddingError::Disconnected);
    }
    let v = rs.num_vertices();
    let e = rs.num_edges();
    let f = fs.len();
    let chi = v as i64 - e as i64 + f as i64;
    if chi % 2 != 0 || chi > 2 {
        return Err(EmbeddingError::NonIntegerGenus(chi));
    }
    let face_census = fs.census();
    debug_assert_eq!(face_census.total_length(), 2 * e);
    Ok(EmbeddingSummary {
        num_vertices: v,
        num_edges: e,
        num_faces: f,
        genus: ((2 - chi) / 2) as usize,
        face_excess: 2 * e - 3 * f,
        face_census,
    })
}

/// Traces and summarizes in one step.
pub fn analyze(rs: &RotationSystem) -> Result<(FaceSet, EmbeddingSummary), EmbeddingError> {
    let fs = trace_faces(rs);
    let summary = summarize(rs, &fs)?;
    Ok((fs, summary))
}
