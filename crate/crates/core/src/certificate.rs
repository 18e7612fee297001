//! Verification certificates: everything `verify` and `surgery` report about
//! an embedding, re-derived from the input text on every run.
//!
//! The line format is `key: value`, one fact per line, in a fixed order.
//! The JSON form carries the same fields.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::{delta1_lower, genus_complete};
use crate::dual::{build_dual, SimplicityWitness};
use crate::faces::{analyze, EmbeddingSummary, FaceCensus};
use crate::rotation::{EmbeddingError, RotationSystem, Vertex};
use crate::surgery::{HandlePattern, Placement, RelocatedEdge, StepRecord, SurgeryReport};

/// Blocks with at most this many faces list their vertices.
const SMALL_BLOCK: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub size: usize,
    pub census: FaceCensus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cutface {
    pub face: usize,
    pub length: usize,
    pub corners: Vec<Vertex>,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimality {
    pub genus_complete: u64,
    /// `gamma(K_n) + 2`, the least genus any dual-separable embedding (simple
    /// dual with a cutface) of a graph of connectivity `n - 1` can have.
    pub lower_bound: u64,
    pub optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgerySection {
    pub pattern: HandlePattern,
    pub steps: Vec<StepRecord>,
    pub total_delta_edges: i64,
    pub total_delta_genus: i64,
    pub reinsertion: Vec<Placement>,
    pub bridges: Vec<Placement>,
    pub relocated: Vec<RelocatedEdge>,
    pub two_cut_block_size: usize,
}

impl From<&SurgeryReport> for SurgerySection {
    fn from(r: &SurgeryReport) -> Self {
        let (total_delta_edges, total_delta_genus) = r.total_delta();
        SurgerySection {
            pattern: r.pattern,
            steps: r.steps.clone(),
            total_delta_edges,
            total_delta_genus,
            reinsertion: r.reinsertion.clone(),
            bridges: r.bridge_choice.bridges.clone(),
            relocated: r.bridge_choice.relocated.clone(),
            two_cut_block_size: r.two_cut_block.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub input_sha256: String,
    pub summary: EmbeddingSummary,
    /// `n` when the graph is `K_n`.
    pub complete_graph: Option<usize>,
    pub dual_simple: bool,
    pub simplicity_witness: Option<SimplicityWitness>,
    pub cutfaces: Vec<Cutface>,
    pub optimality: Option<Optimality>,
    pub surgery: Option<SurgerySection>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Certificate {
    /// Parses `text` and certifies the embedding it describes.
    pub fn from_text(text: &str) -> Result<Self, EmbeddingError> {
        let rs = RotationSystem::parse(text)?;
        Self::for_embedding(sha256_hex(text.as_bytes()), &rs)
    }

    pub fn for_embedding(input_sha256: String, rs: &RotationSystem) -> Result<Self, EmbeddingError> {
        let (fs, summary) = analyze(rs)?;
        let n = summary.num_vertices;
        let complete_graph = (summary.num_edges == n * (n - 1) / 2).then_some(n);
        let dual = build_dual(&fs);
        let simplicity_witness = dual.simplicity_witness();
        let cutface_ids = dual.find_cutfaces().unwrap_or_default();
        let cutfaces = cutface_ids
            .iter()
            .map(|&face| {
                let sep = dual.separation(face).expect("articulation face separates");
                let largest = sep.components.len() - 1;
                let blocks = sep
                    .components
                    .iter()
                    .zip(&sep.side_census)
                    .enumerate()
                    .map(|(i, (comp, census))| Block {
                        size: comp.len(),
                        census: census.clone(),
                        vertices: (i != largest && comp.len() <= SMALL_BLOCK)
                            .then(|| sep.block_vertices(&fs, i).into_iter().collect()),
                    })
                    .collect();
                Cutface { face, length: fs.face_len(face), corners: fs.vertex_cycle(face), blocks }
            })
            .collect();
        let optimality = complete_graph.and_then(|n| {
            let c = u32::try_from(n - 1).ok()?;
            let lower_bound = delta1_lower(c).ok()?;
            Some(Optimality {
                genus_complete: genus_complete(c + 1).ok()?,
                lower_bound,
                optimal: simplicity_witness.is_none()
                    && !cutface_ids.is_empty()
                    && summary.genus as u64 == lower_bound,
            })
        });
        Ok(Certificate {
            input_sha256,
            dual_simple: simplicity_witness.is_none(),
            simplicity_witness,
            summary,
            complete_graph,
            cutfaces,
            optimality,
            surgery: None,
        })
    }

    pub fn with_surgery(mut self, report: &SurgeryReport) -> Self {
        self.surgery = Some(report.into());
        self
    }

    pub fn has_cutface_of_len(&self, len: usize) -> bool {
        self.cutfaces.iter().any(|c| c.length == len)
    }

    /// Vertex sets of every listed small block, over all cutfaces.
    pub fn small_block_vertex_sets(&self) -> Vec<BTreeSet<Vertex>> {
        self.cutfaces
            .iter()
            .flat_map(|c| &c.blocks)
            .filter_map(|b| b.vertices.as_ref().map(|v| v.iter().copied().collect()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        writeln!(f, "input_sha256: {}", self.input_sha256)?;
        writeln!(f, "vertices: {}", s.num_vertices)?;
        writeln!(f, "edges: {}", s.num_edges)?;
        writeln!(f, "faces: {}", s.num_faces)?;
        writeln!(f, "genus: {}", s.genus)?;
        match self.complete_graph {
            Some(n) => writeln!(f, "complete_graph: K{n}")?,
            None => writeln!(f, "complete_graph: no")?,
        }
        writeln!(f, "face_census: {}", s.face_census)?;
        writeln!(f, "face_excess: {}", s.face_excess)?;
        writeln!(f, "dual_simple: {}", yes_no(self.dual_simple))?;
        if let Some(w) = &self.simplicity_witness {
            writeln!(f, "dual_witness: {w}")?;
        }
        writeln!(f, "cutfaces: {}", self.cutfaces.len())?;
        for c in &self.cutfaces {
            writeln!(
                f,
                "cutface: face {} length {} blocks {}",
                c.face,
                c.length,
                join(c.blocks.iter().map(|b| b.size))
            )?;
            writeln!(f, "cutface_corners: {}", join(&c.corners))?;
            for b in &c.blocks {
                write!(f, "block: size {} census {}", b.size, b.census)?;
                if let Some(vs) = &b.vertices {
                    write!(f, " vertices {}", join(vs))?;
                }
                writeln!(f)?;
            }
        }
        if let Some(o) = &self.optimality {
            writeln!(f, "genus_complete: {}", o.genus_complete)?;
            writeln!(f, "dual_separable_lower_bound: {}", o.lower_bound)?;
            writeln!(f, "optimal: {}", yes_no(o.optimal))?;
        }
        if let Some(sg) = &self.surgery {
            let p = &sg.pattern;
            writeln!(
                f,
                "surgery_pattern: 0={} 3={} 4={} 5={} 6={} 9={} x={} y={}",
                p.v0, p.v3, p.v4, p.v5, p.v6, p.v9, p.x, p.y
            )?;
            for st in &sg.steps {
                writeln!(
                    f,
                    "step: {} dE {:+} dF {:+} dg {:+} euler {}",
                    st.name,
                    st.delta_edges,
                    st.delta_faces,
                    st.delta_genus,
                    if st.euler_consistent { "ok" } else { "FAIL" }
                )?;
            }
            writeln!(f, "surgery_total: dE {:+} dg {:+}", sg.total_delta_edges, sg.total_delta_genus)?;
            writeln!(f, "two_cut_block: {}", sg.two_cut_block_size)?;
            for pl in &sg.reinsertion {
                writeln!(f, "reinserted: {}-{} after {} at {}, after {} at {}", pl.a, pl.b, pl.after_a, pl.a, pl.after_b, pl.b)?;
            }
            for pl in &sg.bridges {
                writeln!(f, "bridge: {}-{} after {} at {}, after {} at {}", pl.a, pl.b, pl.after_a, pl.a, pl.after_b, pl.b)?;
            }
            for r in &sg.relocated {
                writeln!(
                    f,
                    "relocated: {}-{} from slots {} {}",
                    r.edge.0, r.edge.1, r.original_slots.0, r.original_slots.1
                )?;
            }
        }
        Ok(())
    }
}
