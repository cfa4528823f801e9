//! Checks the size bounds that every MAX-equilibrium tree must satisfy.

use std::fmt;

use super::arrangement::{
    arrangement_stats, build_max_arrangement, MaxArrangement, TraversalStats,
};
use super::mis::max_independent_set;
use super::{max_cost, max_tree_distances};
use crate::error::Result;
use crate::model::GameInstance;

/// One inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: String,
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
}

impl BoundCheck {
    fn new(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        BoundCheck {
            name: name.into(),
            holds: lhs <= rhs,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: {} <= {}",
            if self.holds { "ok" } else { "FAIL" },
            self.name,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub n: usize,
    pub d_max: u32,
    /// Size of a maximum independent set of the interest graph.
    pub mis: usize,
    /// One arrangement per node of cost above 3, with its traversal stats.
    pub arrangements: Vec<(MaxArrangement, TraversalStats)>,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    /// True when no node costs more than 3 and every check is vacuous.
    pub fn vacuous(&self) -> bool {
        self.d_max <= 3
    }
}

/// Checks, for a MAX-equilibrium tree:
///
/// * `D^2 + D - 6 <= 4(n - 1)` for the maximum private cost `D > 3`;
/// * for an arrangement started at every node of cost above 3: successive
///   distances and costs drop by at most one per step, no node repeats, no
///   tree edge is traversed more than twice, the traversal covers at least
///   `(c0^2 + c0 - 6)/4` distinct edges, the even-indexed nodes before the
///   last one are pairwise non-interested, and the node count is at most
///   twice the maximum independent set of the interest graph.
pub fn check_bounds(inst: &GameInstance) -> Result<BoundsReport> {
    let dm = max_tree_distances(inst)?;
    let n = inst.node_count();
    let costs: Vec<u32> = (0..n).map(|v| max_cost(inst, &dm, v)).collect();
    let d_max = costs.iter().copied().max().unwrap_or(0);
    let mis = max_independent_set(inst.interests())?.len();

    let mut report = BoundsReport {
        n,
        d_max,
        mis,
        arrangements: Vec::new(),
        checks: Vec::new(),
    };
    if d_max <= 3 {
        return Ok(report);
    }

    let d = i64::from(d_max);
    report.checks.push(BoundCheck::new(
        "D^2 + D - 6 <= 4(n-1)",
        d * d + d - 6,
        4 * (n as i64 - 1),
    ));

    let interests = inst.interests();
    for start in (0..n).filter(|&v| costs[v] > 3) {
        let arr = build_max_arrangement(inst, Some(start))?;
        let stats = arrangement_stats(inst, &arr)?;
        let tag = |what: &str| format!("arrangement from {start}: {what}");
        let seq_costs = arr.costs();

        let dist_drops = arr
            .per_step
            .iter()
            .zip(&seq_costs)
            .filter(|&(&(dist, _), &c)| dist + 1 < c)
            .count();
        let cost_drops = seq_costs.windows(2).filter(|w| w[1] + 1 < w[0]).count();
        let mut sorted = arr.nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let repeats = arr.len() - sorted.len();
        let c0 = i64::from(arr.start_cost);
        let even: Vec<_> = arr.nodes[..arr.len() - 1]
            .iter()
            .step_by(2)
            .copied()
            .collect();
        let inside = even
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| even[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| interests.has_edge(a, b))
            .count();

        report.checks.extend([
            BoundCheck::new(
                tag("steps with d(v_i,v_i+1) < c(v_i) - 1"),
                dist_drops as i64,
                0,
            ),
            BoundCheck::new(
                tag("steps with c(v_i+1) < c(v_i) - 1"),
                cost_drops as i64,
                0,
            ),
            BoundCheck::new(tag("repeated nodes"), repeats as i64, 0),
            BoundCheck::new(
                tag("max edge multiplicity"),
                stats.max_edge_multiplicity as i64,
                2,
            ),
            BoundCheck::new(
                tag("c0^2 + c0 - 6 <= 4 * distinct edges"),
                c0 * c0 + c0 - 6,
                4 * stats.distinct_edges as i64,
            ),
            BoundCheck::new(
                tag("interest edges among even-index nodes"),
                inside as i64,
                0,
            ),
            BoundCheck::new(
                tag("node count <= 2 * MIS"),
                arr.len() as i64,
                2 * mis as i64,
            ),
        ]);
        report.arrangements.push((arr, stats));
    }
    Ok(report)
}
