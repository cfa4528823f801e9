//! Exact maximum independent set by branch and bound on bitmasks.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::NodeId;

pub const DEFAULT_MIS_BUDGET: u64 = 50_000_000;
const MAX_NODES: usize = 128;

struct Search {
    adj: Vec<u128>,
    best: u128,
    best_size: u32,
    visited: u64,
    budget: u64,
}

/// A maximum independent set, sorted by node id.
pub fn max_independent_set(g: &Graph) -> Result<Vec<NodeId>> {
    max_independent_set_with_budget(g, DEFAULT_MIS_BUDGET)
}

pub fn max_independent_set_with_budget(g: &Graph, budget: u64) -> Result<Vec<NodeId>> {
    let n = g.node_count();
    if n > MAX_NODES {
        return Err(Error::ParameterOutOfDomain(format!(
            "exact MIS supports at most {MAX_NODES} nodes, got {n}"
        )));
    }
    let mut adj = vec![0u128; n];
    for &(u, v) in g.edges() {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let all = if n == MAX_NODES {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    // self-loops exclude a node outright
    let cand = g
        .edges()
        .iter()
        .filter(|&&(u, v)| u == v)
        .fold(all, |m, &(u, _)| m & !(1u128 << u));
    let mut s = Search {
        adj,
        best: 0,
        best_size: 0,
        visited: 0,
        budget,
    };
    s.best = greedy(&s.adj, cand);
    s.best_size = s.best.count_ones();
    s.branch(cand, 0)?;
    Ok(bits(s.best))
}

fn bits(mut m: u128) -> Vec<NodeId> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as NodeId);
        m &= m - 1;
    }
    out
}

/// Min-degree greedy independent set, used as the initial incumbent.
fn greedy(adj: &[u128], mut cand: u128) -> u128 {
    let mut set = 0;
    while cand != 0 {
        let v = bits(cand)
            .into_iter()
            .min_by_key(|&v| (adj[v] & cand).count_ones())
            .unwrap();
        set |= 1 << v;
        cand &= !(adj[v] | 1 << v);
    }
    set
}

/// Upper bound: number of cliques in a greedy clique cover of `cand`.
fn clique_cover_bound(adj: &[u128], mut cand: u128) -> u32 {
    let mut cliques = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let mut common = adj[v] & cand;
        cand &= !(1 << v);
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            common &= adj[w];
            cand &= !(1 << w);
        }
        cliques += 1;
    }
    cliques
}

impl Search {
    fn branch(&mut self, mut cand: u128, mut cur: u128) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }
        // nodes of degree <= 1 can always be taken
        loop {
            let pick = bits(cand)
                .into_iter()
                .find(|&v| (self.adj[v] & cand).count_ones() <= 1);
            match pick {
                Some(v) => {
                    cur |= 1 << v;
                    cand &= !(self.adj[v] | 1 << v);
                }
                None => break,
            }
        }
        if cand == 0 {
            if cur.count_ones() > self.best_size {
                self.best = cur;
                self.best_size = cur.count_ones();
            }
            return Ok(());
        }
        if cur.count_ones() + clique_cover_bound(&self.adj, cand) <= self.best_size {
            return Ok(());
        }
        let v = bits(cand)
            .into_iter()
            .max_by_key(|&v| (self.adj[v] & cand).count_ones())
            .unwrap();
        self.branch(cand & !(self.adj[v] | 1 << v), cur | 1 << v)?;
        self.branch(cand & !(1 << v), cur)
    }
}
