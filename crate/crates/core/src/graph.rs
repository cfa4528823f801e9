//! Small undirected graphs over dense node ids.
//!
//! The same representation holds both the connection graph and the interest
//! graph of a game. Construction only rejects out-of-range ids; self-loops and
//! duplicate edges are kept so that validation can report them.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::NodeId;

/// Distance marker for nodes not reachable from the BFS source.
pub const UNREACHABLE: u32 = u32::MAX;

/// Normalizes an unordered pair so that the smaller id comes first.
#[inline]
pub fn edge(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted canonical edge list (u <= v), duplicates preserved.
    edges: Vec<(NodeId, NodeId)>,
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            list.push(edge(u, v));
        }
        list.sort_unstable();
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(NodeId, NodeId)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(n, edges)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Returns a copy in which `actor` loses its edges to `dropped` and gains
    /// edges to `added`. No validation is performed here.
    pub fn rewired(&self, actor: NodeId, dropped: &[NodeId], added: &[NodeId]) -> Graph {
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| {
                !((u == actor && dropped.contains(&v)) || (v == actor && dropped.contains(&u)))
            })
            .collect();
        edges.extend(added.iter().map(|&w| edge(actor, w)));
        edges.sort_unstable();
        Self::from_sorted(self.n, edges)
    }

    /// BFS hop distances from `source`; unreachable nodes get [`UNREACHABLE`].
    pub fn bfs(&self, source: NodeId) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected components, each sorted, ordered by their smallest node.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True for simple connected graphs with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.edges.len() == self.n - 1 && self.is_simple() && self.is_connected()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|&(u, v)| u != v) && self.edges.windows(2).all(|w| w[0] != w[1])
    }
}

/// All-pairs hop distances of a connected graph, stored row-major.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn new(graph: &Graph) -> Result<Self> {
        let n = graph.node_count();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            let row = graph.bfs(s);
            if let Some(u) = row.iter().position(|&d| d == UNREACHABLE) {
                return Err(Error::DisconnectedGraph(u));
            }
            dist.extend(row);
        }
        Ok(Self { n, dist })
    }

    #[inline]
    pub fn get(&self, u: NodeId, v: NodeId) -> u32 {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn row(&self, u: NodeId) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}
