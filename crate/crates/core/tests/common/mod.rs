//! Independent oracles shared by the integration tests. Nothing here calls the
//! algorithms it is used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use earpack::generators::random_regular;
use earpack::{Extended, Graph};
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

/// Breadth-first distances from `s`, `usize::MAX` when unreachable.
pub fn distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest cycle through the edge list, by deleting each edge in
/// turn. `None` for forests.
pub fn naive_girth(g: &Graph) -> Option<usize> {
    let edges: Vec<_> = g.edges().collect();
    edges
        .iter()
        .filter_map(|&(u, v)| {
            let h = g.with_edges_removed(&[(u, v)]).unwrap();
            let d = distances(&h, u)[v];
            (d != usize::MAX).then(|| d + 1)
        })
        .min()
}

fn is_bipartite_naive(g: &Graph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

struct Parity {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl Parity {
    fn new(n: usize) -> Self {
        Parity {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, u8) {
        let mut p = 0;
        let mut x = v;
        while self.parent[x] != x {
            p ^= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }
}

/// Whether deleting the edges in `removed` (a bitmask over `edges`) leaves two
/// components with cycles, one of them odd when `odd` is set.
fn is_cut(n: usize, edges: &[(usize, usize)], removed: u64, odd: bool) -> bool {
    let mut uf = Parity::new(n);
    let mut size = vec![1usize; n];
    let mut count = vec![0usize; n];
    let mut has_odd = vec![false; n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if removed >> i & 1 == 1 {
            continue;
        }
        let (ru, pu) = uf.find(u);
        let (rv, pv) = uf.find(v);
        if ru == rv {
            count[ru] += 1;
            if pu == pv {
                has_odd[ru] = true;
            }
        } else {
            uf.parent[rv] = ru;
            uf.parity[rv] = pu ^ pv ^ 1;
            size[ru] += size[rv];
            count[ru] += count[rv] + 1;
            has_odd[ru] |= has_odd[rv];
        }
    }
    let roots: Vec<usize> = (0..n).filter(|&v| uf.parent[v] == v).collect();
    let cyclic = roots.iter().filter(|&&r| count[r] >= size[r]).count();
    if cyclic < 2 {
        return false;
    }
    !odd || roots.iter().any(|&r| has_odd[r])
}

/// Next bitmask with the same popcount (Gosper).
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Smallest edge set whose removal leaves two components containing cycles
/// (one containing an odd cycle when `odd`), by trying all edge subsets in
/// increasing size starting at `from`. Sizes beyond `|E| - 2 girth` cannot
/// leave two disjoint cycles, so the search stops there.
pub fn brute_force_lambda(g: &Graph, odd: bool, from: usize) -> Extended {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    assert!(edges.len() < 64, "oracle handles fewer than 64 edges");
    let Some(girth) = naive_girth(g) else {
        return Extended::Infinite;
    };
    if odd && is_bipartite_naive(g) {
        return Extended::Infinite;
    }
    let e = edges.len();
    let limit = e.saturating_sub(2 * girth);
    for k in from..=limit {
        if k == 0 {
            if is_cut(g.n(), &edges, 0, odd) {
                return Extended::Finite(0);
            }
            continue;
        }
        let mut mask: u64 = (1u64 << k) - 1;
        while mask < (1u64 << e) {
            if is_cut(g.n(), &edges, mask, odd) {
                return Extended::Finite(k);
            }
            mask = next_combination(mask);
        }
    }
    Extended::Infinite
}

/// An ear as a bitmask over `g.edges()` order.
fn edge_ids(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    g.edges().enumerate().map(|(i, e)| (e, i)).collect()
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// All odd ears of `u`, as edge masks: paths between two vertices of `u` whose
/// interior avoids `u`, and cycles meeting `u` in one vertex.
pub fn odd_ear_masks(g: &Graph, u: &[usize]) -> Vec<u64> {
    let ids = edge_ids(g);
    assert!(ids.len() <= 64);
    let mut in_u = vec![false; g.n()];
    for &x in u {
        in_u[x] = true;
    }
    let mut out = Vec::new();
    for &start in u {
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        walk(g, &ids, &in_u, start, start, 0, 0, &mut on_path, &mut out);
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    g: &Graph,
    ids: &BTreeMap<(usize, usize), usize>,
    in_u: &[bool],
    start: usize,
    at: usize,
    len: usize,
    mask: u64,
    on_path: &mut [bool],
    out: &mut Vec<u64>,
) {
    for &w in g.neighbors(at) {
        let bit = 1u64 << ids[&key(at, w)];
        if mask & bit != 0 {
            continue;
        }
        let next_len = len + 1;
        if w == start {
            // closing a cycle through start: needs at least 3 edges
            if next_len >= 3 && next_len % 2 == 1 {
                out.push(mask | bit);
            }
            continue;
        }
        if on_path[w] {
            continue;
        }
        if in_u[w] {
            if next_len % 2 == 1 {
                out.push(mask | bit);
            }
            continue;
        }
        on_path[w] = true;
        walk(g, ids, in_u, start, w, next_len, mask | bit, on_path, out);
        on_path[w] = false;
    }
}

/// Maximum number of pairwise edge-disjoint masks, by branching on the lowest
/// undecided edge at `u`: leave it unused or spend it on one of its ears.
pub fn max_disjoint(g: &Graph, u: &[usize], ears: &[u64]) -> usize {
    let ids = edge_ids(g);
    let mut touching: Vec<usize> = Vec::new();
    for &x in u {
        for &w in g.neighbors(x) {
            touching.push(ids[&key(x, w)]);
        }
    }
    touching.sort_unstable();
    touching.dedup();
    fn go(i: usize, used: u64, touching: &[usize], ears: &[u64]) -> usize {
        let Some(&e) = touching[i..].iter().find(|&&e| used >> e & 1 == 0) else {
            return 0;
        };
        let i = touching.iter().position(|&x| x == e).unwrap();
        let bit = 1u64 << e;
        let mut best = go(i + 1, used | bit, touching, ears);
        for &ear in ears {
            if ear & bit != 0 && ear & used == 0 {
                best = best.max(1 + go(i + 1, used | ear, touching, ears));
            }
        }
        best
    }
    go(0, 0, &touching, ears)
}

fn to_petgraph(g: &Graph) -> UnGraph<(), ()> {
    let mut p = UnGraph::<(), ()>::with_capacity(g.n(), g.num_edges());
    for _ in 0..g.n() {
        p.add_node(());
    }
    for (u, v) in g.edges() {
        p.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    p
}

fn invariant(g: &Graph) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            let mut d = distances(g, v);
            d.sort_unstable();
            d
        })
        .collect();
    rows.sort();
    rows
}

/// All connected cubic graphs on `n` vertices up to isomorphism: every
/// labelled completion is generated by filling the lowest deficient vertex
/// first (untouched vertices are interchangeable, so only the smallest is
/// tried), then duplicates are removed with an isomorphism test.
pub fn connected_cubic_graphs(n: usize) -> Vec<Graph> {
    let mut adj = vec![Vec::new(); n];
    let mut found: Vec<Found> = Vec::new();
    fill(&mut adj, &mut found);
    found.into_iter().map(|(_, g, _)| g).collect()
}

type Found = (Vec<Vec<usize>>, Graph, UnGraph<(), ()>);

fn fill(adj: &mut Vec<Vec<usize>>, found: &mut Vec<Found>) {
    let n = adj.len();
    let Some(v) = (0..n).find(|&v| adj[v].len() < 3) else {
        let edges = (0..n).flat_map(|u| adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w)));
        let g = Graph::from_edges(n, edges).unwrap();
        if distances(&g, 0).contains(&usize::MAX) {
            return;
        }
        let inv = invariant(&g);
        let p = to_petgraph(&g);
        if found.iter().any(|(i, _, q)| *i == inv && is_isomorphic(q, &p)) {
            return;
        }
        found.push((inv, g, p));
        return;
    };
    let floor = adj[v].iter().copied().filter(|&w| w > v).max().unwrap_or(v);
    let mut fresh_tried = false;
    for w in floor + 1..n {
        if adj[w].len() >= 3 || adj[v].contains(&w) {
            continue;
        }
        if adj[w].is_empty() {
            if fresh_tried {
                continue;
            }
            fresh_tried = true;
        }
        adj[v].push(w);
        adj[w].push(v);
        fill(adj, found);
        adj[v].pop();
        adj[w].pop();
    }
}

/// Every connected cubic graph on at most 10 vertices.
pub fn small_cubic_corpus() -> Vec<Graph> {
    [4, 6, 8, 10].iter().flat_map(|&n| connected_cubic_graphs(n)).collect()
}

/// `count` seeded random regular graphs with degree 3 or 4 and at most
/// `max_n` vertices.
pub fn random_regular_corpus(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        i += 1;
        let r = 3 + (s % 2) as usize;
        let orders: Vec<usize> = (r + 1..=max_n).filter(|n| (n * r).is_multiple_of(2)).collect();
        let n = orders[(s / 2) as usize % orders.len()];
        if let Ok(g) = random_regular(n, r, s) {
            out.push(g);
        }
    }
    out
}
