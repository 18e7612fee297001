//! Index-3 current graphs over the cyclic group `Z_m`, `m = 12s + 3`, and
//! the triangular embeddings they derive.
//!
//! File format (`#` starts a comment):
//!
//! ```text
//! group 15
//! vertex 0 label x
//! vertex 1
//! rot 0: 1 4 9
//! arc 0 1 current 5
//! ```
//!
//! `arc u v current g` puts `g` on `u -> v` and `-g` on `v -> u`. Every edge
//! of the rotation needs exactly one `arc` line.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::faces::trace_faces;
use crate::rotation::{Arc, EmbeddingError, RotationSystem, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurrentGraphError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group order {0} is not of the form 12s+3 with s >= 1")]
    BadModulus(u32),
    #[error("current graph embedding: {0}")]
    Embedding(#[from] EmbeddingError),
    #[error("expected exactly three circuits, traced {0}")]
    CircuitCount(usize),
    #[error("current graph fails validation:\n{0}")]
    Invalid(ValidationReport),
    #[error("vertex labeled {label} induces a face of length {len}, not a Hamiltonian face")]
    HamiltonianFaceMissing { label: String, len: usize },
}

/// The cyclic group `Z_m` with `m = 12s + 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurrentGroup {
    modulus: u32,
}

impl CurrentGroup {
    pub fn new(modulus: u32) -> Result<Self, CurrentGraphError> {
        if modulus < 15 || modulus % 12 != 3 {
            return Err(CurrentGraphError::BadModulus(modulus));
        }
        Ok(CurrentGroup { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn s(&self) -> u32 {
        (self.modulus - 3) / 12
    }

    pub fn reduce(&self, g: i64) -> u32 {
        g.rem_euclid(i64::from(self.modulus)) as u32
    }

    pub fn neg(&self, g: u32) -> u32 {
        (self.modulus - g % self.modulus) % self.modulus
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.modulus)) as u32
    }

    /// Whether `g` generates the index-3 subgroup `{0, 3, 6, ...}`.
    pub fn generates_index3_subgroup(&self, g: u32) -> bool {
        let g = g % self.modulus;
        g.is_multiple_of(3) && gcd(g / 3, self.modulus / 3) == 1
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An embedded, arc-labeled graph. Labeled vertices (vortices) carry a
/// distinct letter each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentGraph {
    group: CurrentGroup,
    labels: BTreeMap<Vertex, Option<String>>,
    embedding: RotationSystem,
    currents: HashMap<Arc, u32>,
}

impl CurrentGraph {
    /// `currents` needs one entry per edge, in either direction; the reverse
    /// arc gets the negated current.
    pub fn new(
        group: CurrentGroup,
        labels: BTreeMap<Vertex, Option<String>>,
        embedding: RotationSystem,
        currents: impl IntoIterator<Item = (Arc, i64)>,
    ) -> Result<Self, CurrentGraphError> {
        let structural = |msg: String| CurrentGraphError::Parse { line: 0, msg };
        let declared: BTreeSet<Vertex> = labels.keys().copied().collect();
        let embedded: BTreeSet<Vertex> = embedding.vertices().collect();
        if declared != embedded {
            return Err(structural(format!(
                "declared vertices {declared:?} differ from rotated vertices {embedded:?}"
            )));
        }
        let mut seen_labels = BTreeSet::new();
        for label in labels.values().flatten() {
            if !seen_labels.insert(label) {
                return Err(structural(format!("label {label} used twice")));
            }
        }
        let mut map = HashMap::new();
        for (arc, g) in currents {
            if !embedding.has_edge(arc.tail, arc.head) {
                return Err(structural(format!("current on non-edge {arc}")));
            }
            let g = group.reduce(g);
            if g == 0 {
                return Err(structural(format!("zero current on {arc}")));
            }
            if map.insert(arc, g).is_some() || map.insert(arc.reversed(), group.neg(g)).is_some() {
                return Err(structural(format!("edge {arc} given two currents")));
            }
        }
        if let Some(arc) = embedding.arcs().find(|a| !map.contains_key(a)) {
            return Err(structural(format!("edge {arc} has no current")));
        }
        Ok(CurrentGraph { group, labels, embedding, currents: map })
    }

    pub fn parse(text: &str) -> Result<Self, CurrentGraphError> {
        let mut group = None;
        let mut labels = BTreeMap::new();
        let mut rotations = BTreeMap::new();
        let mut currents = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| CurrentGraphError::Parse { line: idx + 1, msg };
            let num = |t: &str| t.parse::<i64>().map_err(|e| err(format!("bad number `{t}`: {e}")));
            let vertex = |t: &str| t.parse::<Vertex>().map_err(|e| err(format!("bad vertex `{t}`: {e}")));
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["group", m] => {
                    let m = u32::try_from(num(m)?).map_err(|_| err(format!("bad group order `{m}`")))?;
                    if group.replace(CurrentGroup::new(m)?).is_some() {
                        return Err(err("group declared twice".into()));
                    }
                }
                ["vertex", id] => {
                    if labels.insert(vertex(id)?, None).is_some() {
                        return Err(err(format!("vertex {id} declared twice")));
                    }
                }
                ["vertex", id, "label", letter] => {
                    if !letter.chars().all(|c| c.is_ascii_alphabetic()) {
                        return Err(err(format!("label `{letter}` is not a letter")));
                    }
                    if labels.insert(vertex(id)?, Some(letter.to_string())).is_some() {
                        return Err(err(format!("vertex {id} declared twice")));
                    }
                }
                ["rot", id, rest @ ..] => {
                    let id = vertex(id.strip_suffix(':').ok_or_else(|| err("expected `rot <id>:`".into()))?)?;
                    let rot = rest.iter().map(|t| vertex(t)).collect::<Result<Vec<_>, _>>()?;
                    if rotations.insert(id, rot).is_some() {
                        return Err(err(format!("rotation of {id} given twice")));
                    }
                }
                ["arc", u, v, "current", g] => {
                    currents.push((Arc::new(vertex(u)?, vertex(v)?), num(g)?));
                }
                _ => return Err(err(format!("unrecognized line `{line}`"))),
            }
        }
        let group = group.ok_or(CurrentGraphError::Parse { line: 0, msg: "missing `group` line".into() })?;
        let embedding = RotationSystem::from_rotations(rotations)?;
        Self::new(group, labels, embedding, currents)
    }

    pub fn group(&self) -> CurrentGroup {
        self.group
    }

    pub fn embedding(&self) -> &RotationSystem {
        &self.embedding
    }

    pub fn current(&self, arc: Arc) -> Option<u32> {
        self.currents.get(&arc).copied()
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).and_then(|l| l.as_deref())
    }

    /// Labeled vertices sorted by label.
    pub fn labeled_vertices(&self) -> Vec<(String, Vertex)> {
        let mut out: Vec<_> = self
            .labels
            .iter()
            .filter_map(|(&v, l)| l.clone().map(|l| (l, v)))
            .collect();
        out.sort();
        out
    }

    /// Sum of the currents on arcs directed into `v`.
    pub fn excess(&self, v: Vertex) -> u32 {
        let rot = self.embedding.rotation(v).unwrap_or(&[]);
        rot.iter()
            .fold(0, |acc, &w| self.group.add(acc, self.currents[&Arc::new(w, v)]))
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, Option<String>> {
        &self.labels
    }

    /// One `(arc, current)` per edge, smaller endpoint as tail, sorted.
    pub fn edge_currents(&self) -> Vec<(Arc, u32)> {
        self.embedding
            .edges()
            .into_iter()
            .map(|(u, v)| (Arc::new(u, v), self.currents[&Arc::new(u, v)]))
            .collect()
    }

    /// Replaces the current on `arc` (and its reverse). For building
    /// negative fixtures.
    pub fn set_current(&mut self, arc: Arc, g: i64) {
        let g = self.group.reduce(g);
        self.currents.insert(arc, g);
        self.currents.insert(arc.reversed(), self.group.neg(g));
    }
}

impl fmt::Display for CurrentGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group {}", self.group.modulus)?;
        for (v, label) in &self.labels {
            match label {
                Some(l) => writeln!(f, "vertex {v} label {l}")?,
                None => writeln!(f, "vertex {v}")?,
            }
        }
        for (v, rot) in self.embedding.rotations() {
            write!(f, "rot {v}:")?;
            for w in rot {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        for (u, v) in self.embedding.edges() {
            writeln!(f, "arc {u} {v} current {}", self.currents[&Arc::new(u, v)])?;
        }
        Ok(())
    }
}

/// The three face boundary walks of a current graph, indexed by circuit
/// label, with their logs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitSet {
    pub circuits: [Vec<Arc>; 3],
    pub logs: [Vec<u32>; 3],
    label_of: HashMap<Arc, u8>,
}

impl CircuitSet {
    pub fn label_of(&self, arc: Arc) -> Option<u8> {
        self.label_of.get(&arc).copied()
    }

    /// Circuit labels meeting `v` (the labels of its outgoing arcs).
    pub fn labels_at(&self, cg: &CurrentGraph, v: Vertex) -> BTreeSet<u8> {
        cg.embedding
            .rotation(v)
            .unwrap_or(&[])
            .iter()
            .filter_map(|&w| self.label_of(Arc::new(v, w)))
            .collect()
    }
}

/// Number of edges whose current breaks the mod-3 rule under a labeling.
fn mod3_failures(cg: &CurrentGraph, label: &HashMap<Arc, u8>) -> Vec<(Arc, u32, u8)> {
    cg.embedding
        .edges()
        .into_iter()
        .filter_map(|(u, v)| {
            let fwd = Arc::new(u, v);
            let g = cg.currents[&fwd];
            let expected = (3 + label[&fwd.reversed()] - label[&fwd]) % 3;
            (g % 3 != u32::from(expected)).then_some((fwd, g, expected))
        })
        .collect()
}

const LABELINGS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Traces the circuits and labels them `[0]`, `[1]`, `[2]`: the labeling
/// with the fewest mod-3 failures wins, ties going to the first in
/// lexicographic order, so the first traced face gets label 0 whenever the
/// rule can be met.
pub fn trace_circuits(cg: &CurrentGraph) -> Result<CircuitSet, CurrentGraphError> {
    let fs = trace_faces(&cg.embedding);
    if fs.len() != 3 {
        return Err(CurrentGraphError::CircuitCount(fs.len()));
    }
    let label_map = |perm: &[u8; 3]| -> HashMap<Arc, u8> {
        fs.faces()
            .iter()
            .enumerate()
            .flat_map(|(i, face)| face.iter().map(move |&a| (a, perm[i])))
            .collect()
    };
    let best = LABELINGS
        .iter()
        .min_by_key(|perm| mod3_failures(cg, &label_map(perm)).len())
        .expect("non-empty");
    let label_of = label_map(best);
    let mut circuits: [Vec<Arc>; 3] = Default::default();
    for (i, face) in fs.faces().iter().enumerate() {
        circuits[usize::from(best[i])] = face.clone();
    }
    let logs = circuits
        .each_ref()
        .map(|walk| walk.iter().map(|a| cg.currents[a]).collect());
    Ok(CircuitSet { circuits, logs, label_of })
}

/// One failed property, numbered as in the standard list: (1) cubic,
/// (2) three circuits, (3) log completeness, (4) Kirchhoff's current law,
/// (5) vortex incidence and excess, (6) the mod-3 edge rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotCubic { vertex: Vertex, degree: usize },
    CircuitCount { found: usize },
    LogIncomplete { circuit: u8, missing: Vec<u32>, repeated: Vec<u32> },
    Kirchhoff { vertex: Vertex, excess: u32 },
    VortexIncidence { vertex: Vertex, circuits: Vec<u8> },
    VortexExcess { vertex: Vertex, excess: u32 },
    ModThree { arc: Arc, current: u32, expected_residue: u8 },
}

impl Violation {
    pub fn property(&self) -> u8 {
        match self {
            Violation::NotCubic { .. } => 1,
            Violation::CircuitCount { .. } => 2,
            Violation::LogIncomplete { .. } => 3,
            Violation::Kirchhoff { .. } => 4,
            Violation::VortexIncidence { .. } | Violation::VortexExcess { .. } => 5,
            Violation::ModThree { .. } => 6,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violation ({}): ", self.property())?;
        match self {
            Violation::NotCubic { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}, every vertex must have degree 3")
            }
            Violation::CircuitCount { found } => {
                write!(f, "embedding has {found} circuits, need exactly three circuits")
            }
            Violation::LogIncomplete { circuit, missing, repeated } => write!(
                f,
                "log of circuit [{circuit}] misses {missing:?} and repeats {repeated:?}"
            ),
            Violation::Kirchhoff { vertex, excess } => write!(
                f,
                "unlabeled vertex {vertex} has excess {excess}, Kirchhoff's current law needs 0"
            ),
            Violation::VortexIncidence { vertex, circuits } => write!(
                f,
                "labeled vertex {vertex} is met only by circuits {circuits:?}"
            ),
            Violation::VortexExcess { vertex, excess } => write!(
                f,
                "labeled vertex {vertex} has excess {excess}, which does not generate the index 3 subgroup"
            ),
            Violation::ModThree { arc, current, expected_residue } => write!(
                f,
                "arc {arc} carries {current}, which is not {expected_residue} mod 3"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, property: u8) -> bool {
        self.violations.iter().any(|v| v.property() == property)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "all six current graph properties hold");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks all six properties and lists every violation, in property order.
pub fn validate(cg: &CurrentGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let group = cg.group;
    for v in cg.embedding.vertices() {
        let degree = cg.embedding.degree(v);
        if degree != 3 {
            violations.push(Violation::NotCubic { vertex: v, degree });
        }
    }
    let circuits = match trace_circuits(cg) {
        Ok(c) => Some(c),
        Err(CurrentGraphError::CircuitCount(found)) => {
            violations.push(Violation::CircuitCount { found });
            None
        }
        Err(e) => unreachable!("tracing a parsed graph cannot fail otherwise: {e}"),
    };
    if let Some(cs) = &circuits {
        for (c, log) in cs.logs.iter().enumerate() {
            let mut counts = vec![0usize; group.modulus as usize];
            for &g in log {
                counts[g as usize] += 1;
            }
            let missing: Vec<u32> = (1..group.modulus).filter(|&g| counts[g as usize] == 0).collect();
            let repeated: Vec<u32> = (1..group.modulus).filter(|&g| counts[g as usize] > 1).collect();
            if !missing.is_empty() || !repeated.is_empty() {
                violations.push(Violation::LogIncomplete { circuit: c as u8, missing, repeated });
            }
        }
    }
    for v in cg.embedding.vertices() {
        if cg.label(v).is_none() {
            let excess = cg.excess(v);
            if excess != 0 {
                violations.push(Violation::Kirchhoff { vertex: v, excess });
            }
        }
    }
    for (_, v) in cg.labeled_vertices() {
        if let Some(cs) = &circuits {
            let met = cs.labels_at(cg, v);
            if met.len() != 3 {
                violations.push(Violation::VortexIncidence { vertex: v, circuits: met.into_iter().collect() });
            }
        }
        let excess = cg.excess(v);
        if !group.generates_index3_subgroup(excess) {
            violations.push(Violation::VortexExcess { vertex: v, excess });
        }
    }
    if let Some(cs) = &circuits {
        for (arc, current, expected_residue) in mod3_failures(cg, &cs.label_of) {
            violations.push(Violation::ModThree { arc, current, expected_residue });
        }
    }
    ValidationReport { violations }
}

/// Builds the derived embedding: vertex `j` of `Z_m` gets the log of
/// circuit `[j mod 3]` shifted by `j`, then each labeled vertex's
/// Hamiltonian face is subdivided by a new vertex. New vertices are numbered
/// `m, m+1, ...` in label order. The result triangulates
/// `K_{m+l} - E(K_l)` for `l` labeled vertices.
pub fn derive(cg: &CurrentGraph) -> Result<RotationSystem, CurrentGraphError> {
    let report = validate(cg);
    if !report.is_valid() {
        return Err(CurrentGraphError::Invalid(report));
    }
    let cs = trace_circuits(cg)?;
    let m = cg.group.modulus;
    let base = RotationSystem::from_rotations((0..m).map(|j| {
        let log = &cs.logs[(j % 3) as usize];
        (j, log.iter().map(|&g| cg.group.add(g, j)).collect())
    }))?;
    let fs = trace_faces(&base);
    let mut rotations: BTreeMap<Vertex, Vec<Vertex>> =
        base.rotations().map(|(v, r)| (v, r.to_vec())).collect();
    let mut used_faces = BTreeSet::new();
    for (k, (label, v)) in cg.labeled_vertices().into_iter().enumerate() {
        let w = cg.embedding.rotation(v).expect("labeled vertex")[0];
        let out = Arc::new(v, w);
        let c = u32::from(cs.label_of(out).expect("traced"));
        let g = cg.currents[&out];
        let face = fs.face_of(Arc::new(c, cg.group.add(c, g))).expect("derived arc");
        if fs.face_len(face) != m as usize || !used_faces.insert(face) {
            return Err(CurrentGraphError::HamiltonianFaceMissing { label, len: fs.face_len(face) });
        }
        let hub = m + k as u32;
        let walk = fs.face(face);
        for arc in walk {
            let rot = rotations.get_mut(&arc.head).expect("face vertex");
            let i = rot.iter().position(|&x| x == arc.tail).expect("face neighbor");
            rot.insert(i + 1, hub);
        }
        rotations.insert(hub, walk.iter().rev().map(|a| a.tail).collect());
    }
    Ok(RotationSystem::from_rotations(rotations)?)
}
