//! Representation rings `R(H)` of the finite stabilizer types, with
//! restriction and induction matrices between them.
//!
//! Character values live in `Z[w]` for a primitive cube root of unity `w`,
//! which suffices for every group type here. Embeddings are recorded by
//! their action on conjugacy classes; induction and restriction depend on
//! nothing else.

mod cyclotomic;
mod embedding;
mod tables;

pub use cyclotomic::CyclotomicInt;
pub use embedding::{
    canonical_embedding, canonical_embedding_names, induction_matrix, restriction_matrix,
    validate_embedding, EmbeddingProblem, EmbeddingReport, EmbeddingSpec, InductionMatrix,
};
pub use tables::{character_table, CharacterTable, GroupType, UnknownGroupType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("invalid embedding: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidEmbedding(Vec<EmbeddingProblem>),
    #[error("invalid induction matrix {sub} -> {sup}: {why}")]
    InvalidInductionMatrix {
        sub: GroupType,
        sup: GroupType,
        why: String,
    },
    #[error("unknown canonical embedding {0:?}")]
    UnknownEmbedding(String),
}
