//! Seeded workloads shared by the criterion benchmarks.

use swapnet_core::random::seeded_tree_instance;
use swapnet_core::{CostVersion, GameInstance};

/// A random MAX-version tree instance on `n` nodes.
pub fn random_instance(n: usize, interest_density: f64, seed: u64) -> GameInstance {
    seeded_tree_instance(n, interest_density, seed, CostVersion::Max)
}
