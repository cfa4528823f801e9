//! Deterministic generators for equilibrium families and lower-bound
//! instances. Every generator ships a cost certificate that can be
//! re-checked against the generated instance.

use std::collections::BTreeSet;

use crate::dynamics::{run_dynamics, EquilibriumMode, Outcome, Scheduler};
use crate::error::{Error, Result};
use crate::graph::{edge, Graph};
use crate::model::{private_costs, Cost, CostVersion, GameInstance, NodeId, Swap};

/// A generated instance with the private cost expected at every node.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub instance: GameInstance,
    pub certificate: Vec<Cost>,
}

impl GeneratedInstance {
    /// Recomputes all private costs and compares them to the certificate.
    pub fn verify(&self) -> Result<()> {
        let actual = private_costs(&self.instance)?;
        for (v, (got, want)) in actual.iter().zip(&self.certificate).enumerate() {
            if got != want {
                return Err(Error::ReconstructionFailed(format!(
                    "node {v}: private cost {got}, certificate says {want}"
                )));
            }
        }
        Ok(())
    }

    pub fn max_cost(&self) -> Cost {
        self.certificate
            .iter()
            .copied()
            .max()
            .unwrap_or_else(Cost::zero)
    }

    pub fn social_cost(&self) -> Cost {
        self.certificate.iter().copied().sum()
    }
}

/// Node count of the circle lower-bound tree for maximum cost `d`.
pub fn circle_lb_size(d: usize) -> usize {
    d * d - 2 * d + 3
}

/// Node count of the price-of-anarchy tree with ring offset `c`.
pub fn poa_lb_size(c: usize) -> usize {
    ((2 * c + 3) * (2 * c + 3) + 7) / 2
}

/// Builds a tree from a spine path and leaves hanging off spine positions.
/// `spine` lists node ids in path order, `leaves` pairs a leaf with the index
/// of its spine attachment.
fn spine_tree(spine: &[NodeId], leaves: &[(NodeId, usize)]) -> Vec<(NodeId, NodeId)> {
    let mut edges: Vec<_> = spine.windows(2).map(|w| edge(w[0], w[1])).collect();
    edges.extend(leaves.iter().map(|&(leaf, pos)| edge(leaf, spine[pos])));
    edges
}

/// Circular interests on `n` nodes with a tree in MAX-equilibrium in which
/// node `d - 2` (and its successor) has private cost `d`.
///
/// Nodes `2d-2 .. n` form a spine path carrying the circle order, the first
/// `2d - 2` circle nodes are leaves whose spine gaps grow `0, 1, ..., d-2`
/// and shrink back to 0, so consecutive leaf costs differ by one.
pub fn gen_circle_lb(d: usize) -> Result<GeneratedInstance> {
    if d < 4 {
        return Err(Error::ParameterOutOfDomain(format!(
            "D must be at least 4, got {d}"
        )));
    }
    let n = circle_lb_size(d);
    let leaf_count = 2 * d - 2;
    let spine: Vec<NodeId> = (leaf_count..n).collect();
    let last = spine.len() - 1;
    debug_assert_eq!(last, (d - 2) * (d - 2));

    // leaf j (1-based circle index) sits at spine position pos[j-1]
    let mut leaves = Vec::with_capacity(leaf_count);
    let mut pos = last;
    for j in 1..=leaf_count {
        leaves.push((j - 1, pos));
        if j < leaf_count {
            let gap = if j < d { j - 1 } else { 2 * d - 3 - j };
            pos -= gap;
        }
    }
    debug_assert_eq!(pos, 0);

    let interests: Vec<_> = (0..n).map(|i| edge(i, (i + 1) % n)).collect();
    let instance =
        GameInstance::new_tree(n, spine_tree(&spine, &leaves), interests, CostVersion::Max)?;
    let mut certificate = vec![Cost::integer(1); n];
    for j in 1..=leaf_count {
        let c = if j < d { j + 1 } else { 2 * d - j };
        certificate[j - 1] = Cost::integer(c as u64);
    }
    Ok(GeneratedInstance {
        instance,
        certificate,
    })
}

/// Interests forming a path `v_1 .. v_{h-1}` (with `h = n/2`) plus a group
/// `v_h .. v_n` whose members each want both path ends. In the tree every
/// group member hangs off one spine node and pays `c + 2`.
pub fn gen_poa_lb(c: usize) -> Result<GeneratedInstance> {
    if c < 1 {
        return Err(Error::ParameterOutOfDomain(format!(
            "C must be at least 1, got {c}"
        )));
    }
    let n = poa_lb_size(c);
    let h = n / 2;
    // 0-based ids: v_j -> j - 1
    let v = |j: usize| j - 1;

    let spine: Vec<NodeId> = (c + 2..=h - c - 2).map(v).collect();
    let last = spine.len() - 1;
    debug_assert_eq!(last, c * c + c);
    let hub = c * (c - 1) / 2 + c;

    let mut leaves = Vec::new();
    let mut certificate = vec![Cost::integer(1); n];
    for t in 0..=c {
        let left = c + 1 - t;
        let right = h - c - 1 + t;
        leaves.push((v(left), t * t.saturating_sub(1) / 2));
        leaves.push((v(right), last - t * t.saturating_sub(1) / 2));
        certificate[v(left)] = Cost::integer(t as u64 + 2);
        certificate[v(right)] = Cost::integer(t as u64 + 2);
    }
    for g in h..=n {
        leaves.push((v(g), hub));
        certificate[v(g)] = Cost::integer(c as u64 + 2);
    }

    let mut interests: Vec<_> = (1..h - 1).map(|i| edge(v(i), v(i + 1))).collect();
    for g in h..=n {
        interests.push(edge(v(g), v(1)));
        interests.push(edge(v(g), v(h - 1)));
    }
    interests.sort_unstable();
    interests.dedup();

    let instance =
        GameInstance::new_tree(n, spine_tree(&spine, &leaves), interests, CostVersion::Max)?;
    Ok(GeneratedInstance {
        instance,
        certificate,
    })
}

/// Ring of `n/2` nodes, one satellite per ring node. Ring nodes want their
/// three neighbours, satellites want their ring node and the two satellites
/// `n/6` ring steps away in either direction. Not a tree.
pub fn gen_general_poa(n: usize) -> Result<GeneratedInstance> {
    if !n.is_multiple_of(6) || n < 12 {
        return Err(Error::ParameterOutOfDomain(format!(
            "n must satisfy n ≡ 0 mod 6 and n >= 12, got {n}"
        )));
    }
    let ring = n / 2;
    let offset = n / 6;
    let sat = |i: usize| ring + i;
    let mut conn = Vec::with_capacity(n);
    let mut interests = Vec::new();
    for i in 0..ring {
        conn.push(edge(i, (i + 1) % ring));
        conn.push(edge(i, sat(i)));
        interests.push(edge(i, (i + 1) % ring));
        interests.push(edge(i, sat(i)));
        interests.push(edge(sat(i), sat((i + offset) % ring)));
    }
    let instance = GameInstance::new(n, conn, interests, CostVersion::Max)?;
    let mut certificate = vec![Cost::integer(1); n];
    for i in 0..ring {
        certificate[sat(i)] = Cost::integer(offset as u64 + 2);
    }
    Ok(GeneratedInstance {
        instance,
        certificate,
    })
}

/// Path connection graph with path-plus-closing-edge interests under AVG.
/// Both endpoints pay `n/2`.
pub fn gen_avg_path(n: usize) -> Result<GeneratedInstance> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::ParameterOutOfDomain(format!(
            "n must be even and at least 4, got {n}"
        )));
    }
    let conn: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let mut interests = conn.clone();
    interests.push((0, n - 1));
    let instance = GameInstance::new_tree(n, conn, interests, CostVersion::Avg)?;
    let mut certificate = vec![Cost::integer(1); n];
    certificate[0] = Cost::ratio(n as u64, 2);
    certificate[n - 1] = Cost::ratio(n as u64, 2);
    Ok(GeneratedInstance {
        instance,
        certificate,
    })
}

/// Builds a MAX-equilibrium tree with every private cost at most 2 for the
/// given interest graph.
///
/// Nodes with a single interest attach to it; then nodes missing at most one
/// interest edge are saturated; the remaining nodes form a star around the
/// lowest remaining id; leftover components are stitched to the star centre.
/// If no node remains for the star, node 0 serves as the centre.
pub fn build_equilibrium_alg1(interests: &Graph) -> Result<GameInstance> {
    let n = interests.node_count();
    if n < 2 {
        return Err(Error::ParameterOutOfDomain(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    if !interests.is_simple() {
        return Err(Error::PreconditionViolated(
            "interest graph has self-loops or duplicate edges".into(),
        ));
    }
    if let Some(v) = (0..n).find(|&v| interests.degree(v) == 0) {
        return Err(Error::PreconditionViolated(format!(
            "node {v} has no interest"
        )));
    }

    let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let in_a: Vec<bool> = (0..n).map(|v| interests.degree(v) == 1).collect();
    let mut b: BTreeSet<NodeId> = (0..n).filter(|&v| !in_a[v]).collect();

    for v in (0..n).filter(|&v| in_a[v]) {
        edges.insert(edge(v, interests.neighbors(v)[0]));
    }

    let missing = |v: NodeId, edges: &BTreeSet<(NodeId, NodeId)>| -> Vec<NodeId> {
        interests
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !edges.contains(&edge(v, w)))
            .collect()
    };
    while let Some(v) = b.iter().copied().find(|&v| missing(v, &edges).len() <= 1) {
        if let Some(&w) = missing(v, &edges).first() {
            edges.insert(edge(v, w));
        }
        b.remove(&v);
    }

    let center = match b.pop_first() {
        Some(x) => {
            for &w in &b {
                edges.insert(edge(x, w));
            }
            x
        }
        None => 0,
    };

    let partial = Graph::new(n, edges.iter().copied())?;
    for comp in partial.components() {
        if !comp.contains(&center) {
            edges.insert(edge(center, comp[0]));
        }
    }

    let inst = GameInstance::unchecked(
        n,
        edges,
        interests.edges().iter().copied(),
        CostVersion::Max,
    )?;
    if !inst.is_tree() {
        return Err(Error::ReconstructionFailed(
            "construction did not produce a tree".into(),
        ));
    }
    Ok(inst)
}

/// Node ids of the cycling instance, grouped as `x1..x4`, `y1..y4`, `z1..z4`.
pub mod cycling {
    use crate::model::NodeId;

    pub const fn x(i: usize) -> NodeId {
        i - 1
    }
    pub const fn y(i: usize) -> NodeId {
        3 + i
    }
    pub const fn z(i: usize) -> NodeId {
        7 + i
    }
}

/// Frozen 12-node instance on which best-response dynamics under the
/// invocation order `x1..x4, y1..y4, z1..z4` never converge: per pass exactly
/// `x3:[y3->z3]`, `y3:[z3->x3]`, `z3:[x3->y3]` fire and the connection graph
/// returns to its initial state.
pub fn gen_cycling_instance() -> Result<(GameInstance, Scheduler)> {
    use cycling::{x, y, z};

    let inst = GameInstance::new_tree(
        12,
        CYCLING_CONNECTION.iter().copied(),
        CYCLING_INTERESTS.iter().copied(),
        CostVersion::Max,
    )
    .map_err(|e| Error::ReconstructionFailed(e.to_string()))?;
    let order: Vec<NodeId> = (1..=4)
        .map(x)
        .chain((1..=4).map(y))
        .chain((1..=4).map(z))
        .collect();
    let sched = Scheduler::Explicit(order.clone());

    // Guard the per-pass swap contract.
    let expected = [
        Swap::new(x(3), y(3), z(3)),
        Swap::new(y(3), z(3), x(3)),
        Swap::new(z(3), x(3), y(3)),
    ];
    let trace = run_dynamics(&inst, &sched, EquilibriumMode::Single, order.len())?;
    let fired: Vec<Swap> = trace
        .steps
        .iter()
        .filter_map(|s| s.action.as_ref())
        .flat_map(|br| br.step.swaps.iter().copied())
        .collect();
    if fired != expected {
        return Err(Error::ReconstructionFailed(format!(
            "expected swaps {expected:?} in one pass, got {fired:?}"
        )));
    }
    if !matches!(trace.outcome, Outcome::Cycle { first: 0, period } if period == order.len()) {
        return Err(Error::ReconstructionFailed(format!(
            "one pass did not return to the initial state: {:?}",
            trace.outcome
        )));
    }
    Ok((inst, sched))
}

// Found once by symmetric search (see examples/search_cycling.rs).
#[rustfmt::skip]
const CYCLING_CONNECTION: &[(NodeId, NodeId)] = &[
    (0, 3), (1, 3), (2, 3), (2, 6), (4, 7), (5, 7),
    (6, 7), (6, 10), (8, 11), (9, 11), (10, 11),
];
#[rustfmt::skip]
const CYCLING_INTERESTS: &[(NodeId, NodeId)] = &[
    (0, 1), (0, 3), (0, 6), (1, 2), (1, 6), (2, 3), (2, 7),
    (2, 8), (2, 9), (3, 10), (4, 5), (4, 7), (4, 10), (5, 6),
    (5, 10), (6, 7), (6, 11), (8, 9), (8, 11), (9, 10), (10, 11),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::is_equilibrium;
    use crate::model::{private_cost, social_cost};

    #[test]
    fn parameter_domains() {
        assert!(gen_circle_lb(3).is_err());
        assert!(gen_poa_lb(0).is_err());
        assert!(gen_general_poa(13).is_err());
        assert!(gen_general_poa(6).is_err());
        assert!(gen_avg_path(7).is_err());
        assert!(gen_avg_path(2).is_err());
    }

    #[test]
    fn circle_lb_sizes_and_peak() {
        for (d, n) in [(4, 11), (6, 27)] {
            let g = gen_circle_lb(d).unwrap();
            assert_eq!(g.instance.node_count(), n);
            g.verify().unwrap();
            assert_eq!(g.max_cost(), Cost::integer(d as u64));
            assert_eq!(
                private_cost(&g.instance, d - 2).unwrap(),
                Cost::integer(d as u64)
            );
        }
    }

    #[test]
    fn poa_lb_group_cost() {
        for (c, n, cost) in [(1, 16, 3), (2, 28, 4)] {
            let g = gen_poa_lb(c).unwrap();
            assert_eq!(g.instance.node_count(), n);
            g.verify().unwrap();
            for v in n / 2 - 1..n {
                assert_eq!(g.certificate[v], Cost::integer(cost));
            }
        }
    }

    #[test]
    fn general_poa_costs() {
        for (n, sat, total) in [(12, 4, 30), (18, 5, 54)] {
            let g = gen_general_poa(n).unwrap();
            g.verify().unwrap();
            assert_eq!(g.max_cost(), Cost::integer(sat));
            assert_eq!(social_cost(&g.instance).unwrap(), Cost::integer(total));
        }
    }

    #[test]
    fn avg_path_costs() {
        let g = gen_avg_path(10).unwrap();
        g.verify().unwrap();
        assert_eq!(private_cost(&g.instance, 0).unwrap(), Cost::integer(5));
        assert_eq!(social_cost(&g.instance).unwrap(), Cost::integer(18));
        assert_eq!(g.instance.version(), CostVersion::Avg);
    }

    #[test]
    fn alg1_path_interests() {
        let interests = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let tree = build_equilibrium_alg1(&interests).unwrap();
        assert_eq!(tree.connection().edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(social_cost(&tree).unwrap(), Cost::integer(4));
    }

    #[test]
    fn alg1_complete_interests_build_a_star() {
        let tree = build_equilibrium_alg1(&Graph::complete(4)).unwrap();
        assert_eq!(tree.connection().edges(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(private_cost(&tree, 0).unwrap(), Cost::integer(1));
        assert_eq!(social_cost(&tree).unwrap(), Cost::integer(7));
    }

    #[test]
    fn alg1_single_edge() {
        let tree = build_equilibrium_alg1(&Graph::new(2, [(0, 1)]).unwrap()).unwrap();
        assert_eq!(tree.connection().edges(), &[(0, 1)]);
        assert_eq!(social_cost(&tree).unwrap(), Cost::integer(2));
    }

    #[test]
    fn alg1_stitches_when_nothing_remains_for_the_star() {
        // two disjoint interest edges: everything is in A, B stays empty
        let interests = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let tree = build_equilibrium_alg1(&interests).unwrap();
        assert_eq!(tree.connection().edges(), &[(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn alg1_rejects_missing_interest() {
        let interests = Graph::new(3, [(0, 1)]).unwrap();
        assert!(build_equilibrium_alg1(&interests).is_err());
    }

    #[test]
    fn cycling_instance_returns_to_start_every_pass() {
        let (inst, sched) = gen_cycling_instance().unwrap();
        let trace = run_dynamics(&inst, &sched, EquilibriumMode::Single, 120).unwrap();
        assert_eq!(
            trace.outcome,
            Outcome::Cycle {
                first: 0,
                period: 12
            }
        );
        assert_eq!(trace.moves(), 3);
        assert_eq!(trace.state(12), trace.initial);
    }

    #[test]
    fn cycling_instance_is_not_an_equilibrium() {
        use cycling::{x, y, z};
        let (inst, _) = gen_cycling_instance().unwrap();
        let r = is_equilibrium(&inst, EquilibriumMode::Single).unwrap();
        assert!(!r.is_equilibrium);
        let w = r.witness.unwrap();
        assert_eq!(w.step.actor, x(3));
        assert_eq!(w.step.swaps, vec![Swap::new(x(3), y(3), z(3))]);
    }
}
