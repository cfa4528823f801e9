//! The JSON instance format.
//!
//! Canonical files list keys in a fixed order, put each edge list on one
//! line, write every edge as `[u, v]` with `u < v` and sort the lists.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use swapnet_core::{validate_instance, CostVersion, GameInstance, NodeId};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: String,
    pub n: usize,
    pub connection_edges: Vec<[NodeId; 2]>,
    pub interest_edges: Vec<[NodeId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Where an instance came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
}

impl Metadata {
    pub fn new<const N: usize>(generator: &str, params: [(&str, Value); N]) -> Self {
        Metadata {
            generator: generator.to_string(),
            params: params
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

fn pairs(edges: &[(NodeId, NodeId)]) -> Vec<[NodeId; 2]> {
    edges.iter().map(|&(u, v)| [u, v]).collect()
}

impl InstanceFile {
    pub fn from_instance(inst: &GameInstance, metadata: Option<Metadata>) -> Self {
        InstanceFile {
            version: inst.version().as_str().to_string(),
            n: inst.node_count(),
            connection_edges: pairs(inst.connection().edges()),
            interest_edges: pairs(inst.interests().edges()),
            metadata,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::invalid(format!("malformed instance: {e}")))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }

    /// Builds and validates the instance. With `require_tree` the connection
    /// graph must also be a tree.
    pub fn to_instance(&self, require_tree: bool) -> CliResult<GameInstance> {
        let version: CostVersion = self.version.parse()?;
        let conn = self.connection_edges.iter().map(|&[u, v]| (u, v));
        let ints = self.interest_edges.iter().map(|&[u, v]| (u, v));
        let inst = GameInstance::unchecked(self.n, conn, ints, version)?;
        let report = validate_instance(&inst, require_tree);
        if !report.is_valid() {
            return Err(CliError::invalid(format!("invalid instance: {report}")));
        }
        Ok(inst)
    }

    /// Canonical text form, newline terminated.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out += &format!("  \"version\": {},\n", json(&self.version));
        out += &format!("  \"n\": {},\n", self.n);
        out += &format!(
            "  \"connection_edges\": {},\n",
            json(&canonical(&self.connection_edges))
        );
        out += &format!(
            "  \"interest_edges\": {}",
            json(&canonical(&self.interest_edges))
        );
        if let Some(m) = &self.metadata {
            out += &format!(",\n  \"metadata\": {}", json(m));
        }
        out += "\n}\n";
        out
    }
}

fn canonical(edges: &[[NodeId; 2]]) -> Vec<[NodeId; 2]> {
    let mut e: Vec<[NodeId; 2]> = edges.iter().map(|&[u, v]| [u.min(v), u.max(v)]).collect();
    e.sort_unstable();
    e
}

fn json<T: Serialize>(v: &T) -> String {
    // strings, integers and JSON values never fail to serialize
    serde_json::to_string(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const CANON: &str = "{\n  \"version\": \"MAX\",\n  \"n\": 3,\n  \"connection_edges\": [[0,1],[1,2]],\n  \"interest_edges\": [[0,2],[1,2]]\n}\n";

    #[test]
    fn canonical_text_round_trips() {
        let f = InstanceFile::parse(CANON).unwrap();
        assert_eq!(f.to_json(), CANON);
        let inst = f.to_instance(true).unwrap();
        assert_eq!(InstanceFile::from_instance(&inst, None), f);
    }

    #[test]
    fn emit_canonicalizes() {
        let messy = r#"{"n":3,"version":"MAX","connection_edges":[[2,1],[1,0]],"interest_edges":[[2,1],[2,0]]}"#;
        assert_eq!(InstanceFile::parse(messy).unwrap().to_json(), CANON);
    }

    #[test]
    fn metadata_survives() {
        let mut f = InstanceFile::parse(CANON).unwrap();
        f.metadata = Some(Metadata::new("circle-lb", [("D", json!(6))]));
        let back = InstanceFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), f.to_json());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(InstanceFile::parse("{").is_err());
        assert!(InstanceFile::parse(
            r#"{"version":"MAX","n":2,"connection_edges":[],"interest_edges":[],"extra":1}"#
        )
        .is_err());
        let f = InstanceFile::parse(
            r#"{"version":"MIN","n":2,"connection_edges":[[0,1]],"interest_edges":[[0,1]]}"#,
        )
        .unwrap();
        assert!(f.to_instance(false).is_err());
        let triangle = InstanceFile::parse(
            r#"{"version":"MAX","n":3,"connection_edges":[[0,1],[1,2],[0,2]],"interest_edges":[[0,1],[1,2]]}"#,
        )
        .unwrap();
        assert!(triangle.to_instance(false).is_ok());
        let err = triangle.to_instance(true).unwrap_err();
        assert!(err.to_string().contains("not a tree"), "{err}");
    }
}
