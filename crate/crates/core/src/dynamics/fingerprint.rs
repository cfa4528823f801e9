//! Canonical connection-graph fingerprints for cycle detection.

use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::model::{canonical_edges, GameInstance, NodeId};

/// A 64-bit digest of the canonical (sorted, `u < v`) edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(pub u64);

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

fn digest(n: usize, edges: &[(NodeId, NodeId)]) -> Fingerprint {
    let mut hasher = Sha256::new();
    hasher.update((n as u64).to_le_bytes());
    for &(u, v) in edges {
        hasher.update((u as u64).to_le_bytes());
        hasher.update((v as u64).to_le_bytes());
    }
    let out = hasher.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&out[..8]);
    Fingerprint(u64::from_be_bytes(head))
}

pub fn canonical_state(inst: &GameInstance) -> Fingerprint {
    digest(inst.node_count(), &canonical_edges(inst))
}

/// Interns connection graphs so that state identity is decided on the edge
/// lists themselves, with the fingerprint only as the lookup key.
#[derive(Debug, Default)]
pub(crate) struct StateTable {
    by_fingerprint: HashMap<Fingerprint, Vec<usize>>,
    states: Vec<Vec<(NodeId, NodeId)>>,
}

impl StateTable {
    /// Returns the dense state id of `inst`, interning it when new.
    pub(crate) fn intern(&mut self, inst: &GameInstance) -> (usize, Fingerprint) {
        let edges = canonical_edges(inst);
        let fp = digest(inst.node_count(), &edges);
        let ids = self.by_fingerprint.entry(fp).or_default();
        if let Some(&id) = ids.iter().find(|&&id| self.states[id] == edges) {
            return (id, fp);
        }
        let id = self.states.len();
        self.states.push(edges);
        ids.push(id);
        (id, fp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::CostVersion;

    #[test]
    fn deterministic_and_distinguishing() {
        let a = GameInstance::new(3, [(0, 1), (1, 2)], [(0, 2), (1, 2)], CostVersion::Max).unwrap();
        let b = GameInstance::new(3, [(0, 2), (1, 2)], [(0, 2), (1, 2)], CostVersion::Max).unwrap();
        assert_eq!(canonical_state(&a), canonical_state(&a.clone()));
        assert_ne!(canonical_state(&a), canonical_state(&b));
    }

    #[test]
    fn interning_reuses_ids() {
        let a = GameInstance::new(3, [(0, 1), (1, 2)], [(0, 2), (1, 2)], CostVersion::Max).unwrap();
        let b = GameInstance::new(3, [(0, 2), (1, 2)], [(0, 2), (1, 2)], CostVersion::Max).unwrap();
        let mut table = StateTable::default();
        assert_eq!(table.intern(&a).0, 0);
        assert_eq!(table.intern(&b).0, 1);
        assert_eq!(table.intern(&a).0, 0);
    }
}
