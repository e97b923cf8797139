//! Genus embeddings of complete graphs: rotation systems, index 3 current
//! graphs, handle surgery and the parametric families that drive them.

pub mod current;
pub mod embedding;
pub mod error;
pub mod families;
pub mod rotation;
pub mod search;
pub mod surgery;
pub mod vertex;

pub use current::{derive_embedding, find_ladders, CircuitLog, CurrentGraph, LadderSpec, PrincipleReport};
pub use embedding::{
    analyze, deficit, edge_flip, genus_kn, is_triangular_ruler, mt_valid, trace_faces, Deficit, DeficitShape,
    EmbeddingSummary, Face,
};
pub use error::{Error, Result};
pub use rotation::RotationSystem;
pub use vertex::VertexId;
