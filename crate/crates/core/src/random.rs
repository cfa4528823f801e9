//! Seeded random instances for experiments and property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::prufer_decode;
use crate::graph::edge;
use crate::model::{CostVersion, GameInstance, NodeId};

/// A uniformly random labeled tree on `n >= 2` nodes.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    assert!(n >= 2, "a tree needs at least two nodes here");
    let seq: Vec<NodeId> = (0..n.saturating_sub(2))
        .map(|_| rng.random_range(0..n))
        .collect();
    prufer_decode(&seq, n)
}

/// Erdős–Rényi interests with edge probability `p`, then every node left
/// without an interest is paired with a uniformly chosen other node.
pub fn random_interests<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    assert!(n >= 2, "interests need at least two nodes");
    let mut edges = Vec::new();
    let mut has = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
                has[u] = true;
                has[v] = true;
            }
        }
    }
    for u in 0..n {
        if !has[u] {
            let mut w = rng.random_range(0..n - 1);
            if w >= u {
                w += 1;
            }
            edges.push(edge(u, w));
            has[u] = true;
            has[w] = true;
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// [`random_interests`] drawn from a ChaCha8 stream seeded with `seed`.
pub fn seeded_interests(n: usize, p: f64, seed: u64) -> Vec<(NodeId, NodeId)> {
    random_interests(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A random tree with random interests, both drawn from one seeded stream
/// (tree first).
pub fn seeded_tree_instance(n: usize, p: f64, seed: u64, version: CostVersion) -> GameInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, &mut rng);
    let interests = random_interests(n, p, &mut rng);
    GameInstance::new_tree(n, tree, interests, version).expect("random tree instance is valid")
}
