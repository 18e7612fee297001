//! The dual multigraph of an embedding: simplicity, cutfaces (dual
//! articulation nodes) and the separations they induce.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::faces::{FaceCensus, FaceSet};
use crate::rotation::{Arc, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("face {0} is not a cutface")]
    NotACutface(usize),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("dual graph is disconnected")]
    DisconnectedDual,
}

/// One dual edge per primal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    /// Face carrying the arc `primal.0 -> primal.1`.
    pub left: usize,
    /// Face carrying the arc `primal.1 -> primal.0`.
    pub right: usize,
    pub primal: (Vertex, Vertex),
}

impl DualEdge {
    pub fn is_loop(&self) -> bool {
        self.left == self.right
    }

    pub fn other(&self, face: usize) -> usize {
        if self.left == face {
            self.right
        } else {
            self.left
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualGraph {
    face_lengths: Vec<usize>,
    edges: Vec<DualEdge>,
    incidence: Vec<Vec<usize>>,
}

pub fn build_dual(fs: &FaceSet) -> DualGraph {
    let mut edges = Vec::new();
    let mut incidence = vec![Vec::new(); fs.len()];
    for (fi, face) in fs.faces().iter().enumerate() {
        for &arc in face {
            if arc.tail > arc.head {
                continue;
            }
            let right = fs
                .face_of(arc.reversed())
                .expect("reverse arc lies on some face");
            let id = edges.len();
            edges.push(DualEdge { left: fi, right, primal: (arc.tail, arc.head) });
            incidence[fi].push(id);
            if right != fi {
                incidence[right].push(id);
            }
        }
    }
    DualGraph { face_lengths: fs.lengths().collect(), edges, incidence }
}

/// Why a dual is not simple. Primal edges are reported smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplicityWitness {
    /// A primal edge with both sides on one face.
    SelfLoop { face: usize, primal: (Vertex, Vertex) },
    /// Two faces sharing two or more primal edges.
    MultiEdge { faces: (usize, usize), primal: Vec<(Vertex, Vertex)> },
}

impl std::fmt::Display for SimplicityWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimplicityWitness::SelfLoop { face, primal } => {
                write!(f, "self-loop at face {face} via edge {}-{}", primal.0, primal.1)
            }
            SimplicityWitness::MultiEdge { faces, primal } => {
                write!(f, "faces {} and {} share edges", faces.0, faces.1)?;
                for (u, v) in primal {
                    write!(f, " {u}-{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl DualGraph {
    pub fn num_nodes(&self) -> usize {
        self.face_lengths.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn incident(&self, face: usize) -> impl Iterator<Item = &DualEdge> + '_ {
        self.incidence[face].iter().map(|&e| &self.edges[e])
    }

    pub fn face_len(&self, face: usize) -> usize {
        self.face_lengths[face]
    }

    /// `None` when simple, otherwise the first witness found (self-loops
    /// take precedence, then the lexicographically least face pair).
    pub fn simplicity_witness(&self) -> Option<SimplicityWitness> {
        if let Some(e) = self.edges.iter().find(|e| e.is_loop()) {
            return Some(SimplicityWitness::SelfLoop { face: e.left, primal: e.primal });
        }
        let mut shared: BTreeMap<(usize, usize), Vec<(Vertex, Vertex)>> = BTreeMap::new();
        for e in &self.edges {
            let key = (e.left.min(e.right), e.left.max(e.right));
            shared.entry(key).or_default().push(e.primal);
        }
        shared
            .into_iter()
            .find(|(_, edges)| edges.len() > 1)
            .map(|(faces, primal)| SimplicityWitness::MultiEdge { faces, primal })
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_witness().is_none()
    }

    /// Node-adjacency lists ignoring loops and parallel copies.
    fn neighbors(&self) -> Vec<Vec<usize>> {
        (0..self.num_nodes())
            .map(|f| {
                self.incident(f)
                    .filter(|e| !e.is_loop())
                    .map(|e| e.other(f))
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            })
            .collect()
    }

    /// Articulation nodes of the dual, ascending, from one iterative
    /// low-link DFS.
    pub fn find_cutfaces(&self) -> Result<Vec<usize>, DualError> {
        let n = self.num_nodes();
        if n == 0 {
            return Ok(Vec::new());
        }
        let adj = self.neighbors();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        // (node, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = timer;
        low[0] = timer;
        timer += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != 0 && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if disc.contains(&usize::MAX) {
            return Err(DualError::DisconnectedDual);
        }
        is_cut[0] = root_children > 1;
        Ok((0..n).filter(|&f| is_cut[f]).collect())
    }

    /// Connected components after deleting `removed`, each sorted, ordered by
    /// (size, smallest face).
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.num_nodes()];
        for &r in removed {
            seen[r] = true;
        }
        let mut comps = Vec::new();
        for root in 0..self.num_nodes() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by_key(|c| (c.len(), c[0]));
        comps
    }

    pub fn separation(&self, cutface: usize) -> Result<SeparationCertificate, DualError> {
        if cutface >= self.num_nodes() {
            return Err(DualError::NoSuchFace(cutface));
        }
        let components = self.components_without(&[cutface]);
        if components.len() < 2 {
            return Err(DualError::NotACutface(cutface));
        }
        let side_census = components.iter().map(|c| self.census_of(c)).collect();
        Ok(SeparationCertificate { cutface, components, side_census })
    }

    /// Whether deleting both faces disconnects the dual, with the resulting
    /// blocks.
    pub fn two_cut(&self, f1: usize, f2: usize) -> Result<TwoCut, DualError> {
        for f in [f1, f2] {
            if f >= self.num_nodes() {
                return Err(DualError::NoSuchFace(f));
            }
        }
        let blocks = self.components_without(&[f1, f2]);
        Ok(TwoCut { separates: blocks.len() > 1, blocks })
    }

    fn census_of(&self, faces: &[usize]) -> FaceCensus {
        let mut census = FaceCensus::default();
        for &f in faces {
            *census.0.entry(self.face_lengths[f]).or_default() += 1;
        }
        census
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub cutface: usize,
    pub components: Vec<Vec<usize>>,
    pub side_census: Vec<FaceCensus>,
}

impl SeparationCertificate {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// Vertices appearing on the faces of one block.
    pub fn block_vertices(&self, fs: &FaceSet, block: usize) -> BTreeSet<Vertex> {
        vertices_of(fs, &self.components[block])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCut {
    pub separates: bool,
    pub blocks: Vec<Vec<usize>>,
}

pub fn vertices_of(fs: &FaceSet, faces: &[usize]) -> BTreeSet<Vertex> {
    faces
        .iter()
        .flat_map(|&f| fs.face(f).iter().map(|a: &Arc| a.tail))
        .collect()
}
