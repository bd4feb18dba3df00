//! Regular bipartite source graphs and the deficient bases cut from them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connectivity::{cyclic_edge_connectivity_with, ConnectivityOptions};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::fixtures;
use crate::generators::{below, random_regular_bipartite, rng};
use crate::graph::{edge, Edge, Extended, Graph, Vertex};

/// An `r`-regular bipartite graph with a matching removed. The removed edge
/// `i` joined `side_b_deficient[i]` and `side_w_deficient[i]` unless the
/// lists were re-paired by [`DeficientBipartiteBase::paired_by_disjoint_paths`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficientBipartiteBase {
    pub graph: Graph,
    pub r: usize,
    pub side_b_deficient: Vec<Vertex>,
    pub side_w_deficient: Vec<Vertex>,
    pub measured: BaseMeasurements,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseMeasurements {
    pub girth: Extended,
    /// Smallest distance between two deficient vertices.
    pub separation: Extended,
    /// Filled in by [`DeficientBipartiteBase::measure_lambda_c`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_c: Option<Extended>,
}

impl DeficientBipartiteBase {
    /// Removes `removed` (a matching) from the `r`-regular bipartite `source`.
    pub fn from_removed(source: &Graph, removed: &[Edge]) -> Result<Self> {
        let r = source
            .is_regular()
            .ok_or_else(|| Error::domain("source graph is not regular"))?;
        let colour = source
            .two_coloring()
            .ok_or_else(|| Error::domain("source graph is not bipartite"))?;
        let mut touched: Vec<Vertex> = removed.iter().flat_map(|&(a, b)| [a, b]).collect();
        touched.sort_unstable();
        if touched.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("removed edges must form a matching"));
        }
        let graph = source.with_edges_removed(removed)?;
        let (xs, ys) = removed
            .iter()
            .map(|&(a, b)| if colour[a] == 0 { (a, b) } else { (b, a) })
            .unzip();
        Ok(Self::measure(graph, r, xs, ys))
    }

    fn measure(graph: Graph, r: usize, xs: Vec<Vertex>, ys: Vec<Vertex>) -> Self {
        let all: Vec<Vertex> = xs.iter().chain(&ys).copied().collect();
        let mut separation = Extended::Infinite;
        for (i, &a) in all.iter().enumerate() {
            let dist = graph.bfs_distances(a);
            for &b in &all[i + 1..] {
                separation = separation.min(Extended::from(dist[b]));
            }
        }
        let measured = BaseMeasurements {
            girth: graph.girth(),
            separation,
            lambda_c: None,
        };
        DeficientBipartiteBase {
            graph,
            r,
            side_b_deficient: xs,
            side_w_deficient: ys,
            measured,
        }
    }

    /// Records `λ_c` of the base, or its upper bound when the cycle cap is hit.
    pub fn measure_lambda_c(&mut self, opts: ConnectivityOptions) -> Result<Extended> {
        let value = match cyclic_edge_connectivity_with(&self.graph, opts) {
            Ok(v) => v.value,
            Err(Error::Inexact { .. }) => return Err(Error::Budget("cycle cap reached".into())),
            Err(e) => return Err(e),
        };
        self.measured.lambda_c = Some(value);
        Ok(value)
    }

    /// Number of deficient vertices on each side.
    pub fn ell(&self) -> usize {
        self.side_b_deficient.len()
    }

    /// Vertices on the same side as the `side_w_deficient` vertices.
    pub fn w_side(&self) -> Vec<Vertex> {
        let colour = self.graph.two_coloring().expect("base is bipartite");
        let c = self
            .side_w_deficient
            .first()
            .map(|&y| colour[y])
            .unwrap_or(1);
        (0..self.graph.n()).filter(|&v| colour[v] == c).collect()
    }

    /// Re-orders `side_w_deficient` so that vertex-disjoint paths join the
    /// `i`-th deficient vertices of the two sides. Errors when no such
    /// system of paths exists.
    pub fn paired_by_disjoint_paths(&self) -> Result<Self> {
        let g = &self.graph;
        let n = g.n();
        let (s, t) = (2 * n, 2 * n + 1);
        let mut net = FlowNetwork::new(2 * n + 2);
        for v in 0..n {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
        for (a, b) in g.edges() {
            net.add_arc(2 * a + 1, 2 * b, 1);
            net.add_arc(2 * b + 1, 2 * a, 1);
        }
        for &x in &self.side_b_deficient {
            net.add_arc(s, 2 * x, 1);
        }
        for &y in &self.side_w_deficient {
            net.add_arc(2 * y + 1, t, 1);
        }
        let want = self.ell() as i64;
        if net.max_flow(s, t, want) < want {
            return Err(Error::domain(
                "no vertex-disjoint paths between the deficient vertices of the two sides",
            ));
        }
        let mut ys = Vec::with_capacity(self.ell());
        for &x in &self.side_b_deficient {
            let mut at = 2 * x + 1;
            loop {
                let next = net
                    .arcs_from(at)
                    .iter()
                    .copied()
                    .find(|&id| id % 2 == 0 && net.flow(id) > 0)
                    .map(|id| net.head(id))
                    .expect("flow leaves every saturated vertex");
                if next == t {
                    ys.push(at / 2);
                    break;
                }
                at = next + 1;
            }
        }
        Ok(Self::measure(g.clone(), self.r, self.side_b_deficient.clone(), ys))
    }
}

/// A shortest cycle, starting at the lowest root from which one is found.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut best: Option<(usize, Vec<Vertex>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut found: Option<(usize, Vertex, Vertex)> = None;
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|(len, _)| 2 * dist[u] + 1 >= *len) {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    found = Some((dist[u] + dist[w] + 1, u, w));
                    break 'bfs;
                }
            }
        }
        if let Some((len, u, w)) = found {
            if best.as_ref().is_none_or(|(b, _)| len < *b) {
                let climb = |mut v: Vertex| {
                    let mut p = vec![v];
                    while v != root {
                        v = parent[v];
                        p.push(v);
                    }
                    p
                };
                let mut left = climb(u);
                left.reverse();
                let mut right = climb(w);
                right.pop();
                left.extend(right);
                let mut sorted = left.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() == left.len() {
                    best = Some((len, left));
                }
            }
        }
    }
    best.map(|(_, c)| c)
}

/// Removes `ell` edges at positions `0, d+2, 2(d+2), ...` of a shortest cycle
/// of the `r`-regular bipartite `base`.
pub fn gamma(base: &Graph, ell: usize, d: usize) -> Result<DeficientBipartiteBase> {
    if ell == 0 {
        return Err(Error::domain("ell must be positive"));
    }
    let need = ell * (d + 2);
    let girth = base.girth();
    if !girth.at_least(need) {
        return Err(Error::domain(format!(
            "girth {girth} is smaller than ell*(d+2) = {need}"
        )));
    }
    let cycle = shortest_cycle(base).ok_or_else(|| Error::domain("base has no cycle"))?;
    if cycle.len() < need {
        return Err(Error::domain("shortest cycle too short to space the edges"));
    }
    let k = cycle.len();
    let removed: Vec<Edge> = (0..ell)
        .map(|j| {
            let p = j * (d + 2);
            edge(cycle[p], cycle[(p + 1) % k])
        })
        .collect();
    DeficientBipartiteBase::from_removed(base, &removed)
}

/// Greedily removes `count` edges (lowest first) whose endpoints are pairwise
/// at distance at least `min_sep` in `source`, apart from the two ends of one
/// edge.
pub fn spread_deficient_base(
    source: &Graph,
    count: usize,
    min_sep: usize,
) -> Result<DeficientBipartiteBase> {
    let n = source.n();
    let mut near = vec![usize::MAX; n];
    let mut chosen = Vec::with_capacity(count);
    for (a, b) in source.edges() {
        if chosen.len() == count {
            break;
        }
        if near[a] < min_sep || near[b] < min_sep {
            continue;
        }
        chosen.push((a, b));
        for (v, d) in source.multi_source_distances(&[a, b]).into_iter().enumerate() {
            if let Some(d) = d {
                near[v] = near[v].min(d);
            }
        }
    }
    if chosen.len() < count {
        return Err(Error::domain(format!(
            "only {} edges with separation {min_sep} fit in a {n}-vertex source",
            chosen.len()
        )));
    }
    DeficientBipartiteBase::from_removed(source, &chosen)
}

/// Candidate sources of degree `r`, smallest first: the catalog graphs and
/// then seeded random bipartite graphs of growing size.
fn sources(r: usize) -> impl Iterator<Item = Graph> {
    let catalog: Vec<Graph> = if r == 3 {
        vec![
            fixtures::complete_bipartite(3, 3),
            fixtures::heawood(),
            fixtures::tutte_coxeter(),
            fixtures::tutte_12_cage(),
        ]
    } else {
        let mut v = vec![fixtures::complete_bipartite(r, r)];
        v.extend(fixtures::projective_plane_incidence(r - 1));
        v
    };
    let random = [16usize, 32, 64, 128, 256, 512]
        .into_iter()
        .filter(move |&side| side > r)
        .filter_map(move |side| random_regular_bipartite(side, r, side as u64).ok());
    catalog.into_iter().chain(random)
}

/// Deficient base with `pairs` removed edges at separation `min_sep`, cut
/// from the smallest source that has room. With `paired`, the sides are
/// re-paired along vertex-disjoint paths.
pub fn smallest_base(
    r: usize,
    pairs: usize,
    min_sep: usize,
    paired: bool,
) -> Result<DeficientBipartiteBase> {
    if r < 3 || pairs == 0 {
        return Err(Error::domain("need r >= 3 and at least one pair"));
    }
    for source in sources(r) {
        let Ok(base) = spread_deficient_base(&source, pairs, min_sep) else {
            continue;
        };
        if !paired {
            return Ok(base);
        }
        if let Ok(base) = base.paired_by_disjoint_paths() {
            return Ok(base);
        }
    }
    Err(Error::Budget(format!(
        "no source graph of degree {r} fits {pairs} pairs at separation {min_sep}"
    )))
}

/// Smallest catalogued `r`-regular bipartite graph of girth at least
/// `min_girth`, falling back to a seeded edge-switching search on at most
/// 200 vertices.
pub fn base_catalog(r: usize, min_girth: usize) -> Option<Graph> {
    if r < 3 {
        return None;
    }
    if min_girth <= 4 {
        return Some(fixtures::complete_bipartite(r, r));
    }
    if min_girth <= 6 {
        if r == 3 {
            return Some(fixtures::heawood());
        }
        if let Some(g) = fixtures::projective_plane_incidence(r - 1) {
            return Some(g);
        }
    }
    if r == 3 {
        match min_girth {
            0..=8 => return Some(fixtures::tutte_coxeter()),
            9..=12 => return Some(fixtures::tutte_12_cage()),
            _ => {}
        }
    }
    search_high_girth(r, min_girth, 200, 0)
}

/// Vertices of a bipartite Moore graph: a lower bound on any `r`-regular
/// bipartite graph of girth `g`.
fn bipartite_moore_bound(r: usize, g: usize) -> usize {
    let half = g.div_ceil(2);
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..half {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(r - 1);
    }
    2 * total
}

fn search_high_girth(r: usize, girth: usize, max_vertices: usize, seed: u64) -> Option<Graph> {
    let lower = bipartite_moore_bound(r, girth);
    if lower > max_vertices {
        return None;
    }
    let mut side = lower / 2;
    let mut attempt = 0u64;
    while 2 * side <= max_vertices {
        for _ in 0..3 {
            attempt += 1;
            let start = random_regular_bipartite(side, r, seed.wrapping_add(attempt)).ok()?;
            if let Some(g) = improve_girth(start, girth, seed.wrapping_add(attempt), 400) {
                return Some(g);
            }
        }
        side += side.div_ceil(4).max(1);
    }
    None
}

/// Sum over roots of how far the shortest cycle seen from that root falls
/// short of `target`.
fn shortfall(g: &Graph, target: usize) -> usize {
    let n = g.n();
    let mut total = 0;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut local = target;
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= local {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    local = local.min(dist[u] + dist[w] + 1);
                    break 'bfs;
                }
            }
        }
        total += target - local;
    }
    total
}

/// Switches an edge of a shortest cycle with a random edge while the
/// shortfall does not grow.
fn improve_girth(mut g: Graph, target: usize, seed: u64, steps: usize) -> Option<Graph> {
    let mut rng = rng(seed);
    let colour = g.two_coloring()?;
    let mut score = shortfall(&g, target);
    for _ in 0..steps {
        if score == 0 {
            return Some(g);
        }
        let cycle = shortest_cycle(&g)?;
        let i = below(&mut rng, cycle.len());
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        let (a, b) = if colour[a] == 0 { (a, b) } else { (b, a) };
        let edges: Vec<Edge> = g.edges().collect();
        let (c, d) = edges[below(&mut rng, edges.len())];
        let (c, d) = if colour[c] == 0 { (c, d) } else { (d, c) };
        if c == a || d == b || g.has_edge(a, d) || g.has_edge(c, b) {
            continue;
        }
        let Ok(next) = g
            .with_edges_removed(&[edge(a, b), edge(c, d)])
            .and_then(|h| h.with_edges_added([edge(a, d), edge(c, b)]))
        else {
            continue;
        };
        let next_score = shortfall(&next, target);
        if next_score <= score {
            g = next;
            score = next_score;
        }
    }
    (score == 0).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lookups() {
        assert_eq!(base_catalog(3, 6), Some(fixtures::heawood()));
        assert_eq!(base_catalog(3, 8), Some(fixtures::tutte_coxeter()));
        assert_eq!(base_catalog(3, 20), None);
        assert_eq!(base_catalog(4, 6).unwrap().is_regular(), Some(4));
    }

    #[test]
    fn moore_bounds() {
        assert_eq!(bipartite_moore_bound(3, 6), 14);
        assert_eq!(bipartite_moore_bound(3, 8), 30);
        assert_eq!(bipartite_moore_bound(3, 12), 126);
    }

    #[test]
    fn gamma_examples() {
        let h = gamma(&fixtures::heawood(), 1, 1).unwrap();
        let deg2 = (0..h.graph.n()).filter(|&v| h.graph.degree(v) == 2).count();
        assert_eq!(deg2, 2);

        let tc = gamma(&fixtures::tutte_coxeter(), 2, 2).unwrap();
        let deg2 = (0..tc.graph.n()).filter(|&v| tc.graph.degree(v) == 2).count();
        assert_eq!(deg2, 4);
        assert!(tc.measured.separation.at_least(3));

        assert!(gamma(&fixtures::heawood(), 3, 3).is_err());
    }

    #[test]
    fn shortest_cycles_are_cycles() {
        for g in [fixtures::petersen(), fixtures::heawood(), fixtures::tutte_coxeter()] {
            let c = shortest_cycle(&g).unwrap();
            assert_eq!(Extended::Finite(c.len()), g.girth());
            for i in 0..c.len() {
                assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
            }
        }
        assert!(shortest_cycle(&fixtures::path(4)).is_none());
    }

    #[test]
    fn disjoint_path_pairing() {
        let base = spread_deficient_base(&fixtures::tutte_12_cage(), 6, 4).unwrap();
        assert!(base.measured.separation.at_least(4));
        let paired = base.paired_by_disjoint_paths().unwrap();
        let mut before = base.side_w_deficient.clone();
        let mut after = paired.side_w_deficient.clone();
        before.sort_unstable();
        after.sort_unstable();
        assert_eq!(before, after);
    }

    #[test]
    fn smallest_bases_grow_with_demand() {
        let one = smallest_base(3, 1, 2, false).unwrap();
        assert_eq!(one.graph.n(), 6);
        let ten = smallest_base(3, 10, 3, false).unwrap();
        assert_eq!(ten.ell(), 10);
        assert!(ten.measured.separation.at_least(3));
        for &v in ten.side_b_deficient.iter().chain(&ten.side_w_deficient) {
            assert_eq!(ten.graph.degree(v), 2);
        }
        let paired = smallest_base(3, 6, 2, true).unwrap();
        assert_eq!(paired.ell(), 6);
    }

    #[test]
    fn edge_switching_reaches_small_targets() {
        let g = search_high_girth(3, 6, 40, 3).unwrap();
        assert!(g.girth().at_least(6));
        assert!(g.is_bipartite());
        assert_eq!(g.is_regular(), Some(3));
    }
}
