//! Independent reference implementations used to cross-check the library.
//! Everything here works on raw edge lists and recomputes from scratch.

#![allow(dead_code)]

use std::collections::VecDeque;

use swapnet_core::{Cost, CostVersion, GameInstance};

pub type Edges = Vec<(usize, usize)>;

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Hop distances from `s`; `None` for unreachable nodes.
pub fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        let du = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                q.push_back(w);
            }
        }
    }
    dist
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    bfs(&adjacency(n, edges), 0).iter().all(Option::is_some)
}

/// Private cost of `v`, or `None` if an interest is unreachable.
pub fn cost(
    n: usize,
    conn: &[(usize, usize)],
    ints: &[(usize, usize)],
    version: CostVersion,
    v: usize,
) -> Option<Cost> {
    let dist = bfs(&adjacency(n, conn), v);
    let targets: Vec<usize> = ints
        .iter()
        .filter_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
        .collect();
    let ds: Option<Vec<u64>> = targets.iter().map(|&u| dist[u]).collect();
    let ds = ds?;
    Some(match version {
        CostVersion::Max => Cost::integer(ds.iter().copied().max().unwrap_or(0)),
        CostVersion::Avg => Cost::ratio(ds.iter().sum(), ds.len() as u64),
    })
}

pub fn social(
    n: usize,
    conn: &[(usize, usize)],
    ints: &[(usize, usize)],
    version: CostVersion,
) -> Option<Cost> {
    (0..n).map(|v| cost(n, conn, ints, version, v)).sum()
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Every single swap `(actor, dropped, added)` that keeps the graph
/// connected and strictly lowers the actor's cost.
pub fn improving_swaps(
    n: usize,
    conn: &[(usize, usize)],
    ints: &[(usize, usize)],
    version: CostVersion,
) -> Vec<(usize, usize, usize)> {
    let mut found = Vec::new();
    for u in 0..n {
        let before = cost(n, conn, ints, version, u).expect("connected input");
        for &(a, b) in conn {
            let v = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            for w in 0..n {
                if w == u || w == v || conn.contains(&norm(u, w)) {
                    continue;
                }
                let mut next: Edges = conn.iter().copied().filter(|&e| e != norm(u, v)).collect();
                next.push(norm(u, w));
                if !connected(n, &next) {
                    continue;
                }
                if cost(n, &next, ints, version, u).unwrap() < before {
                    found.push((u, v, w));
                }
            }
        }
    }
    found
}

pub fn raw(inst: &GameInstance) -> (usize, Edges, Edges, CostVersion) {
    (
        inst.node_count(),
        inst.connection().edges().to_vec(),
        inst.interests().edges().to_vec(),
        inst.version(),
    )
}

/// Minimum social cost over all spanning trees of the complete graph,
/// enumerated by recursive edge inclusion with cycle pruning.
pub fn tree_optimum(n: usize, ints: &[(usize, usize)], version: CostVersion) -> Cost {
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn rec(
        i: usize,
        all: &[(usize, usize)],
        chosen: &mut Edges,
        n: usize,
        ints: &[(usize, usize)],
        version: CostVersion,
        best: &mut Option<Cost>,
    ) {
        if chosen.len() == n - 1 {
            let mut p: Vec<usize> = (0..n).collect();
            for &(u, v) in chosen.iter() {
                let (a, b) = (find(&mut p, u), find(&mut p, v));
                if a == b {
                    return;
                }
                p[a] = b;
            }
            let c = social(n, chosen, ints, version).unwrap();
            if best.is_none_or(|b| c < b) {
                *best = Some(c);
            }
            return;
        }
        if i == all.len() || all.len() - i < n - 1 - chosen.len() {
            return;
        }
        chosen.push(all[i]);
        rec(i + 1, all, chosen, n, ints, version, best);
        chosen.pop();
        rec(i + 1, all, chosen, n, ints, version, best);
    }
    let all: Edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut best = None;
    rec(0, &all, &mut Vec::new(), n, ints, version, &mut best);
    best.expect("n >= 2")
}

/// Edges of the unique path between `a` and `b` in a tree.
pub fn tree_path(n: usize, tree: &[(usize, usize)], a: usize, b: usize) -> Edges {
    let adj = adjacency(n, tree);
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut q = VecDeque::from([a]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                q.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut x = b;
    while x != a {
        path.push(norm(x, parent[x]));
        x = parent[x];
    }
    path
}
