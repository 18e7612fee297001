//! Small optimal dual-separable embeddings of complete graphs, bundled
//! verbatim as rotation files. There is no `K12` entry: no such embedding is
//! known (connectivity 11 is the open case).

use crate::rotation::{EmbeddingError, RotationSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub n: u32,
    pub text: &'static str,
    pub expected_genus: usize,
    pub cutface_len: usize,
    /// Non-triangular faces other than the cutface, as (length, count).
    pub extra_faces: &'static [(usize, usize)],
}

impl CorpusEntry {
    pub fn rotation_system(&self) -> Result<RotationSystem, EmbeddingError> {
        RotationSystem::parse(self.text)
    }
}

pub const CORPUS: [CorpusEntry; 6] = [
    CorpusEntry {
        name: "K11",
        n: 11,
        text: include_str!("../corpus/K11.txt"),
        expected_genus: 7,
        cutface_len: 17,
        extra_faces: &[],
    },
    CorpusEntry {
        name: "K13",
        n: 13,
        text: include_str!("../corpus/K13.txt"),
        expected_genus: 10,
        cutface_len: 15,
        extra_faces: &[(4, 3)],
    },
    CorpusEntry {
        name: "K14",
        n: 14,
        text: include_str!("../corpus/K14.txt"),
        expected_genus: 12,
        cutface_len: 17,
        extra_faces: &[(6, 1)],
    },
    CorpusEntry {
        name: "K15",
        n: 15,
        text: include_str!("../corpus/K15.txt"),
        expected_genus: 13,
        cutface_len: 15,
        extra_faces: &[],
    },
    CorpusEntry {
        name: "K16",
        n: 16,
        text: include_str!("../corpus/K16.txt"),
        expected_genus: 15,
        cutface_len: 15,
        extra_faces: &[],
    },
    CorpusEntry {
        name: "K17",
        n: 17,
        text: include_str!("../corpus/K17.txt"),
        expected_genus: 18,
        cutface_len: 17,
        extra_faces: &[(6, 1)],
    },
];

/// Looks up `K11` or `corpus:K11`, case-insensitively.
pub fn lookup(name: &str) -> Option<&'static CorpusEntry> {
    let name = name.strip_prefix("corpus:").unwrap_or(name);
    CORPUS.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}
