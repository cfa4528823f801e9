//! MAX-arrangements: interest-linked node sequences starting at a costly node
//! whose shortest-path traversal lower-bounds the size of the tree.

use std::collections::HashMap;

use super::{distance_to_path, max_cost, max_tree_distances};
use crate::error::{Error, Result};
use crate::graph::{edge, DistanceMatrix, Graph};
use crate::model::{GameInstance, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxArrangement {
    pub nodes: Vec<NodeId>,
    pub start_cost: u32,
    /// `(d(v_i, v_{i+1}), c(v_{i+1}))` for every consecutive pair.
    pub per_step: Vec<(u32, u32)>,
}

impl MaxArrangement {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cost of every node in the sequence.
    pub fn costs(&self) -> Vec<u32> {
        std::iter::once(self.start_cost)
            .chain(self.per_step.iter().map(|&(_, c)| c))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraversalStats {
    pub total_length: u32,
    pub distinct_edges: usize,
    pub max_edge_multiplicity: usize,
}

/// Builds a MAX-arrangement from `start` (default: the lowest-id node of
/// maximum cost).
///
/// `v_1` is the lowest-id interest of `v_0` at distance `c(v_0)`. Every later
/// node is the interest of its predecessor farthest from the node two places
/// back, among those whose connecting tree path passes within one hop of the
/// predecessor; ties go to the smaller id. Candidates must cost at least 3 and
/// differ from the node two places back. Construction ends at the first node
/// of cost 3.
pub fn build_max_arrangement(inst: &GameInstance, start: Option<NodeId>) -> Result<MaxArrangement> {
    let dm = max_tree_distances(inst)?;
    let n = inst.node_count();
    let cost = |v: NodeId| max_cost(inst, &dm, v);
    let v0 = match start {
        Some(v) => {
            inst.check_node(v)?;
            v
        }
        None => (0..n)
            .max_by_key(|&v| (cost(v), std::cmp::Reverse(v)))
            .expect("instance has nodes"),
    };
    let c0 = cost(v0);
    if c0 <= 3 {
        return Err(Error::PreconditionViolated(format!(
            "arrangement start {v0} has cost {c0}, needs more than 3"
        )));
    }
    let interests = inst.interests();
    let v1 = interests
        .neighbors(v0)
        .iter()
        .copied()
        .find(|&u| dm.get(v0, u) == c0)
        .expect("cost is attained by some interest");

    let mut nodes = vec![v0, v1];
    let mut per_step = vec![(c0, cost(v1))];
    let mut on_seq = vec![false; n];
    on_seq[v0] = true;
    on_seq[v1] = true;

    while cost(*nodes.last().unwrap()) > 3 {
        if nodes.len() > n {
            return Err(Error::NotInEquilibrium(
                "arrangement exceeded n nodes".into(),
            ));
        }
        let prev = nodes[nodes.len() - 2];
        let cur = nodes[nodes.len() - 1];
        let next = interests
            .neighbors(cur)
            .iter()
            .copied()
            // only nodes that can stay in a MAX-arrangement: cost at least 3,
            // and never straight back to v_{i-2}
            .filter(|&w| w != prev && cost(w) >= 3)
            .filter(|&w| distance_to_path(&dm, cur, prev, w) <= 1)
            .max_by_key(|&w| (dm.get(prev, w), std::cmp::Reverse(w)));
        let Some(next) = next else {
            return Err(Error::NotInEquilibrium(format!(
                "arrangement stalls at node {cur} with cost {}",
                cost(cur)
            )));
        };
        if on_seq[next] {
            return Err(Error::NotInEquilibrium(format!(
                "arrangement revisits node {next}"
            )));
        }
        let c_next = cost(next);
        on_seq[next] = true;
        per_step.push((dm.get(cur, next), c_next));
        nodes.push(next);
    }

    Ok(MaxArrangement {
        nodes,
        start_cost: c0,
        per_step,
    })
}

/// Walks the tree paths between consecutive arrangement nodes and counts how
/// often each edge is used.
pub fn arrangement_stats(inst: &GameInstance, arr: &MaxArrangement) -> Result<TraversalStats> {
    let dm = max_tree_distances(inst)?;
    let parent = bfs_parents(inst.connection(), 0);
    let mut uses: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    let mut total = 0;
    for pair in arr.nodes.windows(2) {
        for e in tree_path_edges(&dm, &parent, pair[0], pair[1]) {
            *uses.entry(e).or_default() += 1;
            total += 1;
        }
    }
    Ok(TraversalStats {
        total_length: total,
        distinct_edges: uses.len(),
        max_edge_multiplicity: uses.values().copied().max().unwrap_or(0),
    })
}

fn bfs_parents(g: &Graph, root: NodeId) -> Vec<NodeId> {
    let dist = g.bfs(root);
    (0..g.node_count())
        .map(|v| {
            if v == root {
                root
            } else {
                *g.neighbors(v)
                    .iter()
                    .find(|&&p| dist[p] + 1 == dist[v])
                    .expect("connected tree")
            }
        })
        .collect()
}

fn tree_path_edges(
    dm: &DistanceMatrix,
    parent: &[NodeId],
    mut a: NodeId,
    mut b: NodeId,
) -> Vec<(NodeId, NodeId)> {
    // parents come from a BFS rooted at node 0
    let root_dist = |v: NodeId| dm.get(v, 0);
    let mut out = Vec::new();
    while a != b {
        if root_dist(a) >= root_dist(b) {
            out.push(edge(a, parent[a]));
            a = parent[a];
        } else {
            out.push(edge(b, parent[b]));
            b = parent[b];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostVersion;

    #[test]
    fn low_cost_start_is_rejected() {
        let inst = GameInstance::new_tree(
            4,
            [(0, 1), (1, 2), (2, 3)],
            [(0, 3), (1, 2)],
            CostVersion::Max,
        )
        .unwrap();
        assert!(matches!(
            build_max_arrangement(&inst, None),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn two_node_traversal_length() {
        let inst = GameInstance::new_tree(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4)],
            [(0, 4), (1, 2), (2, 3)],
            CostVersion::Max,
        )
        .unwrap();
        let arr = MaxArrangement {
            nodes: vec![0, 4],
            start_cost: 4,
            per_step: vec![(4, 4)],
        };
        let stats = arrangement_stats(&inst, &arr).unwrap();
        assert_eq!(stats.total_length, 4);
        assert_eq!(stats.distinct_edges, 4);
        assert_eq!(stats.max_edge_multiplicity, 1);
    }

    #[test]
    fn back_and_forth_counts_twice() {
        let inst = GameInstance::new_tree(3, [(0, 1), (1, 2)], [(0, 2), (1, 2)], CostVersion::Max)
            .unwrap();
        let arr = MaxArrangement {
            nodes: vec![0, 2, 1],
            start_cost: 2,
            per_step: vec![(2, 2), (1, 1)],
        };
        let stats = arrangement_stats(&inst, &arr).unwrap();
        assert_eq!(stats.total_length, 3);
        assert_eq!(stats.distinct_edges, 2);
        assert_eq!(stats.max_edge_multiplicity, 2);
    }
}
