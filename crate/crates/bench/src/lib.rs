//! Shared inputs for the benchmarks under `benches/`.

use planar_turan_core::{construct, ConstructionRecipe, Graph};

/// A fixed planar S(3,3)-free graph per size, for detection and planarity.
pub fn glued_stars(n: usize) -> Graph {
    construct(ConstructionRecipe::GluedStars(n)).expect("n >= 10")
}

/// Maximal planar graphs, dense enough to exercise the embedding.
pub fn double_wheel(n: usize) -> Graph {
    construct(ConstructionRecipe::DoubleWheel(n)).expect("n >= 5")
}
