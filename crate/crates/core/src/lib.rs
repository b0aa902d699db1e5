//! Exact computation of planar Turán numbers of double stars.
//!
//! The crate enumerates small planar graphs up to isomorphism, detects double
//! stars `S(m,l)`, computes `ex_P(n, S(m,l))` exhaustively for small `n`,
//! builds extremal constructions and certifies edge bounds through star-block
//! weight decompositions.

pub mod canon;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod formats;
pub mod graph;
pub mod oracle;
pub mod pattern;
pub mod planarity;
pub mod starblock;
pub mod turan;

pub use canon::{canonical_form, CanonicalForm};
pub use enumerate::{enumerate_graphs, enumerate_parallel, EnumConstraints, EnumStats};
pub use error::{Error, Result};
pub use extremal::{construct, search_extremal, ConstructionRecipe};
pub use graph::{Graph, GraphBuilder, VertexSet, MAX_VERTICES};
pub use pattern::{contains_double_star, detect_double_star, DoubleStarWitness, PatternSpec};
pub use planarity::{is_planar, planar_embedding, Embedding, KuratowskiWitness};
pub use starblock::{
    audit, build_base, classify, degree_class_report, lemma1_bound, modified_weight,
    primary_weight, refine_until_bounded, BlockClass, BlockKind, QuarterWeight, StarBlock,
    StarBlockBase, WeightAudit,
};
pub use turan::{compute_planar_turan, verify_corpus_lemmas, verify_theorem, TuranResult};
