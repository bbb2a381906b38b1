//! Copies of `T_m` inside `A_n`, exact oscillation LPs, and searches for
//! colorings that defeat them.

mod coloring;
mod copies;
mod embedding;
pub mod lp;
mod search;
mod strong;

pub use coloring::Coloring;
pub use copies::{
    constant_copy_exists, copy_values, min_oscillation_copy, min_oscillation_lp, ConstantCopy,
    CopyProblem, CopyValues, OscillationLp, OscillationResult,
};
pub use embedding::{
    compositions, count_embeddings, enumerate_embeddings, enumerate_embeddings_with_cap, Embedding,
    EmbeddingCopy, MAX_EMBEDDINGS,
};
pub use search::{
    adversarial_coloring_search, scan_minimal_n, AdversaryOutcome, ScanRow, Verdict,
    EXHAUSTIVE_TREE_LIMIT,
};
pub use strong::{
    strong_copy_search, strong_copy_values, strong_min_oscillation_exact, StrongCopy,
};
