use super::{distance_to_path, max_cost, max_tree_distances};
use crate::error::{Error, Result};
use crate::model::{GameInstance, NodeId};

/// Finds interests `x, y` of `v` with `d(v,x) = c(v)`, `|d(v,x) - d(v,y)| <= 1`
/// and `v` at most one hop away from the tree path between them. Returns the
/// lexicographically smallest such pair.
pub fn find_t_configuration(inst: &GameInstance, v: NodeId) -> Result<Option<(NodeId, NodeId)>> {
    inst.check_node(v)?;
    let interests = inst.interests().neighbors(v);
    if interests.len() < 2 {
        return Err(Error::PreconditionViolated(format!(
            "node {v} has {} interest(s), a T-configuration needs at least 2",
            interests.len()
        )));
    }
    let dm = max_tree_distances(inst)?;
    let cost = max_cost(inst, &dm, v);
    for &x in interests.iter().filter(|&&x| dm.get(v, x) == cost) {
        for &y in interests {
            if y != x
                && dm.get(v, x).abs_diff(dm.get(v, y)) <= 1
                && distance_to_path(&dm, v, x, y) <= 1
            {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostVersion;

    #[test]
    fn star_center_between_two_leaves() {
        let inst = GameInstance::new_tree(3, [(0, 1), (0, 2)], [(0, 1), (0, 2)], CostVersion::Max)
            .unwrap();
        assert_eq!(find_t_configuration(&inst, 0).unwrap(), Some((1, 2)));
    }

    #[test]
    fn improvable_endpoint_has_none() {
        // path 0-1-2-3-4 with I(0) = {3, 4}: both interests lie on one side
        let inst = GameInstance::new_tree(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 4)],
            [(0, 3), (0, 4), (1, 2), (2, 3)],
            CostVersion::Max,
        )
        .unwrap();
        assert_eq!(find_t_configuration(&inst, 0).unwrap(), None);
    }

    #[test]
    fn needs_two_interests() {
        let inst = GameInstance::new_tree(2, [(0, 1)], [(0, 1)], CostVersion::Max).unwrap();
        assert!(matches!(
            find_t_configuration(&inst, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
