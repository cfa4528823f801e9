//! Structural certificates of MAX-equilibria and exhaustive optima.

mod arrangement;
mod bounds;
mod mis;
mod optimum;
mod tconfig;

pub use arrangement::{arrangement_stats, build_max_arrangement, MaxArrangement, TraversalStats};
pub use bounds::{check_bounds, BoundCheck, BoundsReport};
pub use mis::{max_independent_set, max_independent_set_with_budget, DEFAULT_MIS_BUDGET};
pub use optimum::{
    brute_force_optimum, empirical_poa_pos, prufer_decode, LabeledTrees, Optimum, PoaReport,
    ENUMERATION_CAP,
};
pub use tconfig::find_t_configuration;

use crate::error::{Error, Result};
use crate::graph::DistanceMatrix;
use crate::model::{CostVersion, GameInstance, NodeId};

/// Distance matrix of a MAX-version tree instance, or a precondition error.
pub(crate) fn max_tree_distances(inst: &GameInstance) -> Result<DistanceMatrix> {
    if inst.version() != CostVersion::Max {
        return Err(Error::PreconditionViolated(
            "structural analysis applies to the MAX version only".into(),
        ));
    }
    if !inst.is_tree() {
        return Err(Error::PreconditionViolated(
            "connection graph must be a tree".into(),
        ));
    }
    DistanceMatrix::new(inst.connection())
}

/// MAX cost of `v` read off a distance matrix.
pub(crate) fn max_cost(inst: &GameInstance, dm: &DistanceMatrix, v: NodeId) -> u32 {
    inst.interests()
        .neighbors(v)
        .iter()
        .map(|&u| dm.get(v, u))
        .max()
        .unwrap_or(0)
}

/// Hop distance from `v` to the unique tree path between `a` and `b`.
#[inline]
pub(crate) fn distance_to_path(dm: &DistanceMatrix, v: NodeId, a: NodeId, b: NodeId) -> u32 {
    (dm.get(v, a) + dm.get(v, b) - dm.get(a, b)) / 2
}
