//! Workbench for orientable cellular embeddings given by rotation systems.
//!
//! - [`rotation`]: rotation systems, the text format and positional edits.
//! - [`faces`]: face tracing and the Euler summary.
//! - [`dual`]: dual multigraphs, simplicity and cutfaces.
//! - [`current`]: index-3 current graphs and their derived embeddings.
//! - [`surgery`]: the subtractible-handle construction that turns a
//!   triangulation of `K_{12s+5} - E(K_2)` into an optimal dual-separable
//!   embedding of `K_{12s+5}`.
//! - [`bounds`]: exact genus bounds.
//! - [`certificate`] and [`corpus`]: verification reports and the bundled
//!   small embeddings.

pub mod bounds;
pub mod certificate;
pub mod corpus;
pub mod current;
pub mod dual;
pub mod faces;
pub mod rotation;
pub mod surgery;

pub use faces::{analyze, summarize, trace_faces, EmbeddingSummary, FaceCensus, FaceSet};
pub use rotation::{Anchor, Arc, EmbeddingError, RotationSystem, Vertex};
