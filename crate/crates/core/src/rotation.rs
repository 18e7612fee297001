//! Rotation systems: the combinatorial encoding of an orientable cellular
//! embedding as a cyclic neighbor order at every vertex.
//!
//! The text format is one line per vertex, `<id>. <n1> <n2> ... <nk>`, with
//! `#` starting a comment line. The writer always emits vertices in
//! ascending id order.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = u32;

/// A directed edge. Every undirected edge `{u, v}` contributes the two arcs
/// `u -> v` and `v -> u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Self {
        Arc::new(self.head, self.tail)
    }

    /// The undirected edge carrying this arc, smaller endpoint first.
    pub fn edge(self) -> (Vertex, Vertex) {
        if self.tail < self.head {
            (self.tail, self.head)
        } else {
            (self.head, self.tail)
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("symmetry violation: {u} lists {v} but {v} does not list {u}")]
    SymmetryViolation { u: Vertex, v: Vertex },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("vertex {vertex} lists itself")]
    SelfLoop { vertex: Vertex },
    #[error("graph is disconnected; cellular embeddings need a connected graph")]
    Disconnected,
    #[error("rotation system has no vertices")]
    Empty,
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("no edge {{{u}, {v}}}")]
    NoSuchEdge { u: Vertex, v: Vertex },
    #[error("edge {{{u}, {v}}} already present")]
    EdgeExists { u: Vertex, v: Vertex },
    #[error("bad anchor {anchor:?} at vertex {vertex}")]
    BadAnchor { vertex: Vertex, anchor: Anchor },
    #[error("[{}, {}, {}] is not a face", .0[0], .0[1], .0[2])]
    NotAFace([Vertex; 3]),
    #[error("V - E + F = {0} is odd; face tracing is inconsistent")]
    NonIntegerGenus(i64),
}

/// Where to put a new neighbor inside a rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// Immediately after an existing neighbor.
    After(Vertex),
    /// At this index of the rotation, shifting later entries right.
    Slot(usize),
}

/// Vertex-indexed cyclic neighbor orders of a simple graph.
///
/// Invariants (checked by [`RotationSystem::from_rotations`] and preserved by
/// every edit): adjacency is symmetric, there are no self-loops, and no
/// neighbor is repeated within a rotation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RotationSystem {
    rotations: BTreeMap<Vertex, Vec<Vertex>>,
}

impl RotationSystem {
    /// Builds a rotation system, checking symmetry, simplicity and
    /// connectivity.
    pub fn from_rotations(
        rotations: impl IntoIterator<Item = (Vertex, Vec<Vertex>)>,
    ) -> Result<Self, EmbeddingError> {
        let rotations: BTreeMap<_, _> = rotations.into_iter().collect();
        let rs = RotationSystem { rotations };
        rs.check_simple()?;
        rs.check_connected()?;
        Ok(rs)
    }

    fn check_simple(&self) -> Result<(), EmbeddingError> {
        for (&v, rot) in &self.rotations {
            let mut seen = BTreeSet::new();
            for &w in rot {
                if w == v {
                    return Err(EmbeddingError::SelfLoop { vertex: v });
                }
                if !seen.insert(w) {
                    return Err(EmbeddingError::DuplicateNeighbor {
                        vertex: v,
                        neighbor: w,
                    });
                }
                match self.rotations.get(&w) {
                    Some(back) if back.contains(&v) => {}
                    _ => return Err(EmbeddingError::SymmetryViolation { u: v, v: w }),
                }
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), EmbeddingError> {
        let Some(&start) = self.rotations.keys().next() else {
            return Err(EmbeddingError::Empty);
        };
        if self.num_components() != 1 {
            return Err(EmbeddingError::Disconnected);
        }
        debug_assert!(self.rotations.contains_key(&start));
        Ok(())
    }

    pub fn num_components(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &root in self.rotations.keys() {
            if !seen.insert(root) {
                continue;
            }
            count += 1;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.rotations[&v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.rotations.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rotations.keys().copied()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.rotations.contains_key(&v)
    }

    pub fn rotation(&self, v: Vertex) -> Option<&[Vertex]> {
        self.rotations.get(&v).map(Vec::as_slice)
    }

    pub fn rotations(&self) -> impl Iterator<Item = (Vertex, &[Vertex])> + '_ {
        self.rotations.iter().map(|(&v, r)| (v, r.as_slice()))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotations.get(&v).map_or(0, Vec::len)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rotations.get(&u).is_some_and(|r| r.contains(&v))
    }

    /// All undirected edges, smaller endpoint first, in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.rotations
            .iter()
            .flat_map(|(&u, r)| r.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    /// All arcs, grouped by tail in ascending order and then by rotation order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.rotations
            .iter()
            .flat_map(|(&u, r)| r.iter().map(move |&v| Arc::new(u, v)))
    }

    /// The neighbor immediately after `w` in the rotation at `v`.
    pub fn next_after(&self, v: Vertex, w: Vertex) -> Option<Vertex> {
        let rot = self.rotations.get(&v)?;
        let i = rot.iter().position(|&x| x == w)?;
        Some(rot[(i + 1) % rot.len()])
    }

    /// The neighbor immediately before `w` in the rotation at `v`.
    pub fn prev_before(&self, v: Vertex, w: Vertex) -> Option<Vertex> {
        let rot = self.rotations.get(&v)?;
        let i = rot.iter().position(|&x| x == w)?;
        Some(rot[(i + rot.len() - 1) % rot.len()])
    }

    /// Index of `v` in the rotation at `u` and of `u` in the rotation at `v`.
    /// Feeding these back as [`Anchor::Slot`]s after a deletion restores the
    /// rotation system exactly.
    pub fn edge_slots(&self, u: Vertex, v: Vertex) -> Option<(usize, usize)> {
        let iu = self.rotations.get(&u)?.iter().position(|&x| x == v)?;
        let iv = self.rotations.get(&v)?.iter().position(|&x| x == u)?;
        Some((iu, iv))
    }

    /// Every rotation reversed: the embedding in the mirrored surface.
    pub fn mirror(&self) -> Self {
        RotationSystem {
            rotations: self
                .rotations
                .iter()
                .map(|(&v, r)| (v, r.iter().rev().copied().collect()))
                .collect(),
        }
    }

    /// Renames vertices; `map` must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        RotationSystem {
            rotations: self
                .rotations
                .iter()
                .map(|(&v, r)| (map(v), r.iter().map(|&w| map(w)).collect()))
                .collect(),
        }
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Self, EmbeddingError> {
        let mut out = self.clone();
        out.remove_edge(u, v)?;
        Ok(out)
    }

    /// In-place form of [`delete_edge`](Self::delete_edge); returns the slots
    /// the edge occupied.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<(usize, usize), EmbeddingError> {
        let (iu, iv) = self
            .edge_slots(u, v)
            .ok_or(EmbeddingError::NoSuchEdge { u, v })?;
        self.rotations.get_mut(&u).expect("checked").remove(iu);
        self.rotations.get_mut(&v).expect("checked").remove(iv);
        Ok((iu, iv))
    }

    pub fn insert_edge(
        &self,
        u: Vertex,
        after_u: Anchor,
        v: Vertex,
        after_v: Anchor,
    ) -> Result<Self, EmbeddingError> {
        let mut out = self.clone();
        out.add_edge(u, after_u, v, after_v)?;
        Ok(out)
    }

    /// In-place form of [`insert_edge`](Self::insert_edge).
    pub fn add_edge(
        &mut self,
        u: Vertex,
        after_u: Anchor,
        v: Vertex,
        after_v: Anchor,
    ) -> Result<(), EmbeddingError> {
        if u == v {
            return Err(EmbeddingError::SelfLoop { vertex: u });
        }
        for x in [u, v] {
            if !self.rotations.contains_key(&x) {
                return Err(EmbeddingError::UnknownVertex(x));
            }
        }
        if self.has_edge(u, v) {
            return Err(EmbeddingError::EdgeExists { u, v });
        }
        let iu = self.resolve(u, after_u)?;
        let iv = self.resolve(v, after_v)?;
        self.rotations.get_mut(&u).expect("checked").insert(iu, v);
        self.rotations.get_mut(&v).expect("checked").insert(iv, u);
        Ok(())
    }

    fn resolve(&self, vertex: Vertex, anchor: Anchor) -> Result<usize, EmbeddingError> {
        let rot = &self.rotations[&vertex];
        let bad = EmbeddingError::BadAnchor { vertex, anchor };
        match anchor {
            Anchor::After(w) => rot.iter().position(|&x| x == w).map(|i| i + 1).ok_or(bad),
            Anchor::Slot(i) if i <= rot.len() => Ok(i),
            Anchor::Slot(_) => Err(bad),
        }
    }

    /// True when `a -> b -> c -> a` is a boundary walk of a face under the
    /// tracing rule used throughout the crate.
    pub fn is_triangular_face(&self, [a, b, c]: [Vertex; 3]) -> bool {
        a != b
            && b != c
            && a != c
            && self.next_after(b, a) == Some(c)
            && self.next_after(c, b) == Some(a)
            && self.next_after(a, c) == Some(b)
    }

    /// Transposes the other two corners of the face `[a, b, c]` in each of
    /// its three rotations. Applying it twice is the identity.
    pub fn reverse_triangle(&self, t: [Vertex; 3]) -> Result<Self, EmbeddingError> {
        if !self.is_triangular_face(t) {
            return Err(EmbeddingError::NotAFace(t));
        }
        let mut out = self.clone();
        let [a, b, c] = t;
        for (v, p, q) in [(a, b, c), (b, c, a), (c, a, b)] {
            let rot = out.rotations.get_mut(&v).expect("face vertex");
            let ip = rot.iter().position(|&x| x == p).expect("face neighbor");
            let iq = rot.iter().position(|&x| x == q).expect("face neighbor");
            rot.swap(ip, iq);
        }
        Ok(out)
    }

    /// Parses the line format described in the module docs.
    pub fn parse(text: &str) -> Result<Self, EmbeddingError> {
        let mut rotations = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| EmbeddingError::Parse { line: line_no, msg };
            let mut tokens = line.split_whitespace();
            let head = tokens.next().expect("non-empty line");
            let id = head
                .strip_suffix('.')
                .ok_or_else(|| parse_err(format!("expected `<id>.`, found `{head}`")))?
                .parse::<Vertex>()
                .map_err(|e| parse_err(format!("bad vertex id `{head}`: {e}")))?;
            let rot = tokens
                .map(|t| {
                    t.parse::<Vertex>()
                        .map_err(|e| parse_err(format!("bad neighbor `{t}`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if rotations.insert(id, rot).is_some() {
                return Err(parse_err(format!("vertex {id} listed twice")));
            }
        }
        Self::from_rotations(rotations)
    }

    /// Adjacency map, for callers that need O(1) neighbor positions.
    pub(crate) fn position_index(&self) -> HashMap<Vertex, HashMap<Vertex, usize>> {
        self.rotations
            .iter()
            .map(|(&v, r)| (v, r.iter().enumerate().map(|(i, &w)| (w, i)).collect()))
            .collect()
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, rot) in &self.rotations {
            write!(f, "{v}.")?;
            for w in rot {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for RotationSystem {
    type Err = EmbeddingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> RotationSystem {
        "0. 1 2\n1. 0 2\n2. 0 1\n".parse().unwrap()
    }

    #[test]
    fn parses_triangle() {
        let rs = k3();
        assert_eq!(rs.num_vertices(), 3);
        assert_eq!(rs.num_edges(), 3);
        assert_eq!(rs.to_string(), "0. 1 2\n1. 0 2\n2. 0 1\n");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            RotationSystem::parse("0. 1 2\n1. 0\n2. 0 1"),
            Err(EmbeddingError::SymmetryViolation { u: 2, v: 1 })
        );
        assert!(matches!(
            RotationSystem::parse("0. 1 1\n1. 0"),
            Err(EmbeddingError::DuplicateNeighbor { vertex: 0, neighbor: 1 })
        ));
        assert!(matches!(
            RotationSystem::parse("0. 0 1\n1. 0"),
            Err(EmbeddingError::SelfLoop { vertex: 0 })
        ));
        assert!(matches!(
            RotationSystem::parse("0 1 2"),
            Err(EmbeddingError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            RotationSystem::parse("0. 1\n1. 0\n2. 3\n3. 2"),
            Err(EmbeddingError::Disconnected)
        ));
        assert!(matches!(
            RotationSystem::parse("# nothing\n"),
            Err(EmbeddingError::Empty)
        ));
    }

    #[test]
    fn comments_and_sparse_ids() {
        let rs = RotationSystem::parse("# c\n10. 20 30\n20. 10 30\n\n30. 10 20\n").unwrap();
        assert_eq!(rs.vertices().collect::<Vec<_>>(), vec![10, 20, 30]);
    }

    #[test]
    fn delete_and_reinsert() {
        let rs = k3();
        assert_eq!(
            rs.delete_edge(0, 7),
            Err(EmbeddingError::NoSuchEdge { u: 0, v: 7 })
        );
        let (iu, iv) = rs.edge_slots(0, 1).unwrap();
        let path = rs.delete_edge(0, 1).unwrap();
        assert_eq!(path.num_edges(), 2);
        let back = path
            .insert_edge(0, Anchor::Slot(iu), 1, Anchor::Slot(iv))
            .unwrap();
        assert_eq!(back, rs);
        assert!(matches!(
            rs.insert_edge(0, Anchor::Slot(0), 1, Anchor::Slot(0)),
            Err(EmbeddingError::EdgeExists { .. })
        ));
        assert!(matches!(
            path.insert_edge(0, Anchor::After(1), 1, Anchor::Slot(0)),
            Err(EmbeddingError::BadAnchor { vertex: 0, .. })
        ));
    }

    #[test]
    fn reverse_triangle_is_involution() {
        let rs = k3();
        assert!(rs.is_triangular_face([0, 1, 2]) || rs.is_triangular_face([0, 2, 1]));
        let face = if rs.is_triangular_face([0, 1, 2]) { [0, 1, 2] } else { [0, 2, 1] };
        let once = rs.reverse_triangle(face).unwrap();
        // In K3 each rotation has only the two triangle neighbors, so the
        // swap reverses the whole rotation.
        assert_eq!(once, rs.mirror());
        let mirrored_face = [face[0], face[2], face[1]];
        assert_eq!(once.reverse_triangle(mirrored_face).unwrap(), rs);
        assert!(matches!(
            rs.reverse_triangle([0, 1, 5]),
            Err(EmbeddingError::NotAFace(_))
        ));
    }
}
