//! Exhaustive enumeration of labeled trees via Prüfer sequences: social
//! optima and empirical price of anarchy / stability.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::dynamics::{EquilibriumMode, MoveSearch};
use crate::error::{Error, Result};
use crate::graph::{edge, DistanceMatrix, Graph};
use crate::model::{cost_from_row, Cost, CostVersion, GameInstance, NodeId};

/// Largest node count for which all `n^(n-2)` trees are enumerated.
pub const ENUMERATION_CAP: usize = 8;

/// Decodes a Prüfer sequence of length `n - 2` into the edges of a labeled
/// tree on `n` nodes.
pub fn prufer_decode(seq: &[NodeId], n: usize) -> Vec<(NodeId, NodeId)> {
    debug_assert_eq!(seq.len() + 2, n.max(2));
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("leaf exists");
        edges.push(edge(leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
    if rest.len() == 2 {
        edges.push(edge(rest[0], rest[1]));
    }
    edges.sort_unstable();
    edges
}

/// Iterates the edge lists of all labeled trees on `n` nodes in Prüfer
/// (lexicographic) order.
pub struct LabeledTrees {
    n: usize,
    seq: Vec<NodeId>,
    done: bool,
}

impl LabeledTrees {
    pub fn new(n: usize) -> Self {
        LabeledTrees {
            n,
            seq: vec![0; n.saturating_sub(2)],
            done: n < 2,
        }
    }

    fn with_prefix(n: usize, first: NodeId) -> Self {
        let mut it = Self::new(n);
        if let Some(s) = it.seq.first_mut() {
            *s = first;
        }
        it
    }
}

impl Iterator for LabeledTrees {
    type Item = Vec<(NodeId, NodeId)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = prufer_decode(&self.seq, self.n);
        // increment the base-n counter from the right
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.seq[i] += 1;
            if self.seq[i] < self.n {
                break;
            }
            self.seq[i] = 0;
        }
        Some(out)
    }
}

#[derive(Debug, Clone)]
pub struct Optimum {
    pub tree: GameInstance,
    pub cost: Cost,
}

#[derive(Debug, Clone)]
pub struct PoaReport {
    pub optimum: Optimum,
    pub trees: usize,
    pub equilibria: usize,
    pub best_equilibrium: Option<Optimum>,
    pub worst_equilibrium: Option<Optimum>,
}

impl PoaReport {
    /// Worst equilibrium cost over the optimum; `None` without equilibria.
    pub fn poa(&self) -> Option<Ratio<u64>> {
        self.worst_equilibrium
            .as_ref()
            .map(|e| e.cost.ratio_to(self.optimum.cost))
    }

    /// Best equilibrium cost over the optimum; `None` without equilibria.
    pub fn pos(&self) -> Option<Ratio<u64>> {
        self.best_equilibrium
            .as_ref()
            .map(|e| e.cost.ratio_to(self.optimum.cost))
    }
}

fn check_enumerable(interests: &Graph) -> Result<()> {
    let n = interests.node_count();
    if !(2..=ENUMERATION_CAP).contains(&n) {
        return Err(Error::ParameterOutOfDomain(format!(
            "tree enumeration needs 2 <= n <= {ENUMERATION_CAP}, got {n}"
        )));
    }
    if let Some(v) = (0..n).find(|&v| interests.degree(v) == 0) {
        return Err(Error::PreconditionViolated(format!(
            "node {v} has no interest"
        )));
    }
    Ok(())
}

fn tree_social_cost(inst: &GameInstance) -> Cost {
    let dm = DistanceMatrix::new(inst.connection()).expect("trees are connected");
    (0..inst.node_count())
        .map(|v| cost_from_row(inst, v, dm.row(v)))
        .sum()
}

/// Per-partition summary: `(cost, index)` keys order ties by enumeration
/// position so the result is independent of the thread schedule.
type Keyed<I> = Option<(Cost, I, Vec<(NodeId, NodeId)>)>;

#[derive(Default)]
struct Partial {
    trees: usize,
    equilibria: usize,
    optimum: Keyed<usize>,
    best: Keyed<usize>,
    worst: Keyed<std::cmp::Reverse<usize>>,
}

fn keep_min<K: Ord>(slot: &mut Option<K>, cand: K) {
    if slot.as_ref().is_none_or(|s| cand < *s) {
        *slot = Some(cand);
    }
}

fn keep_max<K: Ord>(slot: &mut Option<K>, cand: K) {
    if slot.as_ref().is_none_or(|s| cand > *s) {
        *slot = Some(cand);
    }
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.trees += other.trees;
        self.equilibria += other.equilibria;
        if let Some(o) = other.optimum {
            keep_min(&mut self.optimum, o);
        }
        if let Some(b) = other.best {
            keep_min(&mut self.best, b);
        }
        if let Some(w) = other.worst {
            keep_max(&mut self.worst, w);
        }
        self
    }
}

fn enumerate(interests: &Graph, version: CostVersion, equilibria: bool) -> Result<Partial> {
    check_enumerable(interests)?;
    let n = interests.node_count();
    let shared = Arc::new(interests.clone());
    let per_prefix = n.pow((n as u32).saturating_sub(3));
    let prefixes: Vec<NodeId> = if n > 2 { (0..n).collect() } else { vec![0] };

    let partials: Result<Vec<Partial>> = prefixes
        .into_par_iter()
        .map(|first| {
            let mut acc = Partial::default();
            let trees = if n > 2 {
                LabeledTrees::with_prefix(n, first).take(per_prefix)
            } else {
                LabeledTrees::new(n).take(1)
            };
            for (k, edges) in trees.enumerate() {
                let index = first * per_prefix + k;
                let conn = Graph::new(n, edges.iter().copied())?;
                let inst = GameInstance::from_graphs(conn, Arc::clone(&shared), version);
                let cost = tree_social_cost(&inst);
                acc.trees += 1;
                keep_min(&mut acc.optimum, (cost, index, edges.clone()));
                if equilibria
                    && MoveSearch::new(&inst)?
                        .is_equilibrium(EquilibriumMode::Single)?
                        .is_equilibrium
                {
                    acc.equilibria += 1;
                    keep_min(&mut acc.best, (cost, index, edges.clone()));
                    keep_max(&mut acc.worst, (cost, std::cmp::Reverse(index), edges));
                }
            }
            Ok(acc)
        })
        .collect();
    Ok(partials?
        .into_iter()
        .fold(Partial::default(), Partial::merge))
}

fn optimum_from(
    interests: &Graph,
    version: CostVersion,
    (cost, _, edges): (Cost, impl Sized, Vec<(NodeId, NodeId)>),
) -> Result<Optimum> {
    let tree = GameInstance::new_tree(
        interests.node_count(),
        edges,
        interests.edges().iter().copied(),
        version,
    )?;
    Ok(Optimum { tree, cost })
}

/// Minimum social cost over all labeled trees on the interest graph's nodes,
/// with the first optimal tree in Prüfer order as witness.
pub fn brute_force_optimum(interests: &Graph, version: CostVersion) -> Result<Optimum> {
    let partial = enumerate(interests, version, false)?;
    optimum_from(
        interests,
        version,
        partial.optimum.expect("at least one tree"),
    )
}

/// Enumerates all trees, keeps those in single-swap equilibrium and reports
/// the best and worst equilibrium against the social optimum.
pub fn empirical_poa_pos(interests: &Graph, version: CostVersion) -> Result<PoaReport> {
    let partial = enumerate(interests, version, true)?;
    Ok(PoaReport {
        optimum: optimum_from(
            interests,
            version,
            partial.optimum.expect("at least one tree"),
        )?,
        trees: partial.trees,
        equilibria: partial.equilibria,
        best_equilibrium: partial
            .best
            .map(|b| optimum_from(interests, version, b))
            .transpose()?,
        worst_equilibrium: partial
            .worst
            .map(|w| optimum_from(interests, version, w))
            .transpose()?,
    })
}
