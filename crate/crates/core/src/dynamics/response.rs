//! Improving moves, best responses and equilibrium verification.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, UNREACHABLE};
use crate::model::{Cost, GameInstance, ImprovingStep, NodeId, Swap};

/// How many simultaneous swaps a node may combine into one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EquilibriumMode {
    #[default]
    Single,
    /// Up to `k` simultaneous swaps, `k >= 1`. `Multi(1)` behaves as `Single`.
    Multi(usize),
}

impl EquilibriumMode {
    pub fn max_swaps(self) -> usize {
        match self {
            EquilibriumMode::Single => 1,
            EquilibriumMode::Multi(k) => k.max(1),
        }
    }

    pub fn normalized(self) -> Self {
        match self {
            EquilibriumMode::Multi(k) if k <= 1 => EquilibriumMode::Single,
            m => m,
        }
    }
}

impl fmt::Display for EquilibriumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized() {
            EquilibriumMode::Single => f.write_str("single"),
            EquilibriumMode::Multi(k) => write!(f, "multi:{k}"),
        }
    }
}

impl FromStr for EquilibriumMode {
    type Err = Error;

    /// Parses `single` or `multi:k` with `k >= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad =
            || Error::ParameterOutOfDomain(format!("mode must be single or multi:k, got {s:?}"));
        match s.trim() {
            "single" => Ok(EquilibriumMode::Single),
            m => {
                let k: usize = m
                    .strip_prefix("multi:")
                    .and_then(|k| k.parse().ok())
                    .ok_or_else(bad)?;
                if k == 0 {
                    return Err(Error::ParameterOutOfDomain("multi:k needs k >= 1".into()));
                }
                Ok(EquilibriumMode::Multi(k).normalized())
            }
        }
    }
}

/// A best response together with the actor's cost before and after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub step: ImprovingStep,
    pub cost_before: Cost,
    pub cost_after: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub is_equilibrium: bool,
    pub mode: EquilibriumMode,
    /// Best response of the lowest-id node that has one.
    pub witness: Option<BestResponse>,
    /// Set in single mode when some node with degree > 1 and cost > 1 exists,
    /// i.e. a simultaneous multi-swap deviation was not searched.
    pub caveat: bool,
}

/// Per-instance search context. Trees get a precomputed distance matrix and
/// the component-membership shortcut for single swaps.
pub(crate) struct MoveSearch<'a> {
    inst: &'a GameInstance,
    tree: Option<DistanceMatrix>,
}

impl<'a> MoveSearch<'a> {
    pub(crate) fn new(inst: &'a GameInstance) -> Result<Self> {
        let tree = if inst.is_tree() {
            Some(DistanceMatrix::new(inst.connection())?)
        } else {
            None
        };
        Ok(MoveSearch { inst, tree })
    }

    fn interests(&self, v: NodeId) -> &[NodeId] {
        self.inst.interests().neighbors(v)
    }

    fn key_from_row(&self, v: NodeId, row: &[u32]) -> u64 {
        self.inst
            .version()
            .key(self.interests(v).iter().map(|&u| row[u]))
    }

    fn cost_of(&self, v: NodeId, key: u64) -> Cost {
        self.inst
            .version()
            .cost_of_key(key, self.interests(v).len())
    }

    pub(crate) fn current_key(&self, v: NodeId) -> Result<u64> {
        match &self.tree {
            Some(dm) => Ok(self.key_from_row(v, dm.row(v))),
            None => {
                let row = crate::model::distances_from(self.inst, v)?;
                Ok(self.key_from_row(v, &row))
            }
        }
    }

    /// Smallest key any configuration could give `v`: every interest adjacent.
    fn floor_key(&self, v: NodeId) -> u64 {
        self.inst.version().key(self.interests(v).iter().map(|_| 1))
    }

    /// Every connectivity-preserving single swap of `v` with its cost key.
    pub(crate) fn single_swaps(&self, v: NodeId) -> Vec<(Swap, u64)> {
        match &self.tree {
            Some(dm) => self.tree_single_swaps(dm, v),
            None => self.general_single_swaps(v),
        }
    }

    fn tree_single_swaps(&self, dm: &DistanceMatrix, v: NodeId) -> Vec<(Swap, u64)> {
        let g = self.inst.connection();
        let n = g.node_count();
        let version = self.inst.version();
        let interests = self.interests(v);
        let mut out = Vec::new();
        for &x in g.neighbors(v) {
            // Removing {v,x} leaves x's side = nodes closer to x than to v.
            let x_side: Vec<bool> = (0..n).map(|u| dm.get(x, u) < dm.get(v, u)).collect();
            for w in 0..n {
                if !x_side[w] || w == x {
                    continue;
                }
                let key = version.key(interests.iter().map(|&u| {
                    if x_side[u] {
                        1 + dm.get(w, u)
                    } else {
                        dm.get(v, u)
                    }
                }));
                out.push((Swap::new(v, x, w), key));
            }
        }
        out
    }

    fn general_single_swaps(&self, v: NodeId) -> Vec<(Swap, u64)> {
        let g = self.inst.connection();
        let mut out = Vec::new();
        for &x in g.neighbors(v) {
            for w in 0..g.node_count() {
                if w == v || g.has_edge(v, w) {
                    continue;
                }
                if let Some(key) = self.rewired_key(g, v, &[x], &[w]) {
                    out.push((Swap::new(v, x, w), key));
                }
            }
        }
        out
    }

    /// Cost key of `v` after rewiring, or `None` if the result is disconnected.
    fn rewired_key(
        &self,
        g: &Graph,
        v: NodeId,
        dropped: &[NodeId],
        added: &[NodeId],
    ) -> Option<u64> {
        let next = g.rewired(v, dropped, added);
        let row = next.bfs(v);
        if row.contains(&UNREACHABLE) {
            return None;
        }
        Some(self.key_from_row(v, &row))
    }

    pub(crate) fn best_response(
        &self,
        v: NodeId,
        max_swaps: usize,
    ) -> Result<Option<BestResponse>> {
        self.inst.check_node(v)?;
        let current = self.current_key(v)?;
        if current <= self.floor_key(v) {
            return Ok(None);
        }

        // (key, swap count, pairs) ordered lexicographically.
        type Candidate = (u64, usize, Vec<(NodeId, NodeId)>);
        let mut best: Option<Candidate> = None;
        let mut offer = |key: u64, pairs: Vec<(NodeId, NodeId)>| {
            if key >= current {
                return;
            }
            let cand = (key, pairs.len(), pairs);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        };

        for (swap, key) in self.single_swaps(v) {
            offer(key, vec![(swap.dropped, swap.added)]);
        }

        let g = self.inst.connection();
        let incident = g.neighbors(v).to_vec();
        let targets: Vec<NodeId> = (0..g.node_count())
            .filter(|&w| w != v && !g.has_edge(v, w))
            .collect();
        let limit = max_swaps.min(incident.len()).min(targets.len());
        for j in 2..=limit {
            for dropped in incident.iter().copied().combinations(j) {
                for added in targets.iter().copied().combinations(j) {
                    if let Some(key) = self.rewired_key(g, v, &dropped, &added) {
                        let pairs = dropped.iter().copied().zip(added.iter().copied()).collect();
                        offer(key, pairs);
                    }
                }
            }
        }

        Ok(best.map(|(key, _, pairs)| BestResponse {
            step: ImprovingStep::from_pairs(v, pairs),
            cost_before: self.cost_of(v, current),
            cost_after: self.cost_of(v, key),
        }))
    }

    pub(crate) fn is_equilibrium(&self, mode: EquilibriumMode) -> Result<EquilibriumReport> {
        let mode = mode.normalized();
        let g = self.inst.connection();
        let mut witness = None;
        let mut caveat = false;
        for v in 0..g.node_count() {
            if mode == EquilibriumMode::Single
                && g.degree(v) > 1
                && self.current_key(v)? > self.floor_key(v)
            {
                caveat = true;
            }
            if witness.is_none() {
                witness = self.best_response(v, mode.max_swaps())?;
            }
            if witness.is_some() && (caveat || mode != EquilibriumMode::Single) {
                break;
            }
        }
        Ok(EquilibriumReport {
            is_equilibrium: witness.is_none(),
            mode,
            witness,
            caveat,
        })
    }
}

/// Every single swap by `v` that keeps the graph connected and strictly lowers
/// `c(v)`, with the resulting cost, ordered by `(dropped, added)`.
pub fn enumerate_improving_swaps(inst: &GameInstance, v: NodeId) -> Result<Vec<(Swap, Cost)>> {
    inst.check_node(v)?;
    let search = MoveSearch::new(inst)?;
    let current = search.current_key(v)?;
    let mut out: Vec<_> = search
        .single_swaps(v)
        .into_iter()
        .filter(|&(_, key)| key < current)
        .map(|(swap, key)| (swap, search.cost_of(v, key)))
        .collect();
    out.sort_by_key(|&(s, _)| (s.dropped, s.added));
    Ok(out)
}

/// The cost-minimal step of `v` within `mode`, or `None` if `v` cannot
/// improve. Ties go to fewer swaps, then to the lexicographically smallest
/// list of `(dropped, added)` pairs.
pub fn best_response(
    inst: &GameInstance,
    v: NodeId,
    mode: EquilibriumMode,
) -> Result<Option<BestResponse>> {
    MoveSearch::new(inst)?.best_response(v, mode.max_swaps())
}

pub fn is_equilibrium(inst: &GameInstance, mode: EquilibriumMode) -> Result<EquilibriumReport> {
    MoveSearch::new(inst)?.is_equilibrium(mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{apply_step, private_cost, CostVersion};

    /// Path 0-1-2-3-4 where the endpoints want each other.
    fn path_example() -> GameInstance {
        GameInstance::new_tree(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4)],
            [(0, 4), (1, 2), (2, 3)],
            CostVersion::Max,
        )
        .unwrap()
    }

    /// Oracle: every (dropped, added) pair, applied and re-measured by BFS.
    fn oracle_improving(inst: &GameInstance, v: NodeId) -> Vec<(Swap, Cost)> {
        let before = private_cost(inst, v).unwrap();
        let mut out = Vec::new();
        for &x in inst.connection().neighbors(v) {
            for w in 0..inst.node_count() {
                let swap = Swap::new(v, x, w);
                if let Ok(next) = apply_step(inst, &swap.into()) {
                    let after = private_cost(&next, v).unwrap();
                    if after < before {
                        out.push((swap, after));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn path_endpoint_swaps_match_oracle() {
        let inst = path_example();
        let swaps = enumerate_improving_swaps(&inst, 0).unwrap();
        assert_eq!(swaps, oracle_improving(&inst, 0));
        assert!(swaps.contains(&(Swap::new(0, 1, 4), Cost::integer(1))));
        assert!(swaps.contains(&(Swap::new(0, 1, 3), Cost::integer(2))));
        assert!(swaps.iter().all(|(s, _)| s.added != 0 && s.added != 1));
    }

    #[test]
    fn cost_one_nodes_have_no_moves() {
        let inst = path_example();
        assert!(enumerate_improving_swaps(&inst, 2).unwrap().is_empty());
    }

    #[test]
    fn best_response_prefers_lowest_cost() {
        let inst = path_example();
        let br = best_response(&inst, 0, EquilibriumMode::Single)
            .unwrap()
            .unwrap();
        assert_eq!(br.step, ImprovingStep::single(Swap::new(0, 1, 4)));
        assert_eq!(br.cost_before, Cost::integer(4));
        assert_eq!(br.cost_after, Cost::integer(1));
    }

    #[test]
    fn single_interest_node_reaches_cost_one() {
        // 0-1-2-3, node 3 only cares about 0.
        let inst = GameInstance::new_tree(
            4,
            [(0, 1), (1, 2), (2, 3)],
            [(0, 3), (0, 1), (1, 2)],
            CostVersion::Max,
        )
        .unwrap();
        let br = best_response(&inst, 3, EquilibriumMode::Single)
            .unwrap()
            .unwrap();
        assert_eq!(br.cost_after, Cost::integer(1));
    }

    #[test]
    fn path_example_is_not_equilibrium() {
        let report = is_equilibrium(&path_example(), EquilibriumMode::Single).unwrap();
        assert!(!report.is_equilibrium);
        assert_eq!(
            report.witness.unwrap().step,
            ImprovingStep::single(Swap::new(0, 1, 4))
        );
    }

    #[test]
    fn multi_swap_finds_joint_improvement() {
        // Node 0 hangs two paths and wants both far ends; one swap only
        // shortens one branch.
        // 0-1-2-3 and 0-4-5-6, I(0) = {3, 6}
        let inst = GameInstance::new_tree(
            7,
            [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
            [(0, 3), (0, 6), (1, 2), (4, 5), (2, 3), (5, 6)],
            CostVersion::Max,
        )
        .unwrap();
        let single = best_response(&inst, 0, EquilibriumMode::Single).unwrap();
        assert!(single.is_none());
        let multi = best_response(&inst, 0, EquilibriumMode::Multi(2))
            .unwrap()
            .unwrap();
        assert_eq!(multi.step.swaps.len(), 2);
        assert_eq!(multi.cost_after, Cost::integer(1));
        let next = apply_step(&inst, &multi.step).unwrap();
        assert!(next.is_tree());
        assert_eq!(private_cost(&next, 0).unwrap(), Cost::integer(1));

        let single_report = is_equilibrium(&inst, EquilibriumMode::Single).unwrap();
        assert!(single_report.caveat);
    }

    #[test]
    fn multi_one_is_single() {
        assert_eq!(
            EquilibriumMode::Multi(1).normalized(),
            EquilibriumMode::Single
        );
        let inst = path_example();
        assert_eq!(
            best_response(&inst, 0, EquilibriumMode::Multi(1)).unwrap(),
            best_response(&inst, 0, EquilibriumMode::Single).unwrap()
        );
    }

    #[test]
    fn general_graph_swaps_use_bfs() {
        // 4-cycle plus pendant: 0-1-2-3-0, 3-4; I(4) = {1}.
        let inst = GameInstance::new(
            5,
            [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)],
            [(1, 4), (0, 1), (2, 3), (0, 3)],
            CostVersion::Max,
        )
        .unwrap();
        let swaps = enumerate_improving_swaps(&inst, 4).unwrap();
        assert_eq!(swaps, oracle_improving(&inst, 4));
        assert_eq!(swaps.len(), 3);
        let br = best_response(&inst, 4, EquilibriumMode::Single)
            .unwrap()
            .unwrap();
        assert_eq!(br.step, ImprovingStep::single(Swap::new(4, 3, 1)));
    }
}
