use std::collections::VecDeque;

use super::{edge, membership, normalize_vertex_set, Edge, EdgeSet, Extended, Graph, Vertex};
use crate::error::{Error, Result};

/// A cycle given by its vertex sequence; consecutive vertices (and the last
/// and first) are adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleList {
    pub cycles: Vec<Cycle>,
    /// Set when enumeration stopped at the count cap; `cycles` is then partial.
    pub truncated: bool,
}

impl Graph {
    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        self.multi_source_distances(std::slice::from_ref(&source))
    }

    pub fn multi_source_distances(&self, sources: &[Vertex]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn vertex_distance(&self, u: Vertex, v: Vertex) -> Extended {
        self.bfs_distances(u)[v].into()
    }

    /// Length of a shortest path joining an endpoint of `e` to an endpoint of `f`.
    pub fn edge_distance(&self, e: Edge, f: Edge) -> Result<Extended> {
        for &(u, v) in &[e, f] {
            if !self.has_edge(u, v) {
                return Err(Error::domain(format!("{u}-{v} is not an edge")));
            }
        }
        if edge(e.0, e.1) == edge(f.0, f.1) {
            return Err(Error::domain("edge distance is defined for distinct edges"));
        }
        let dist = self.multi_source_distances(&[e.0, e.1]);
        Ok(Extended::from(dist[f.0]).min(Extended::from(dist[f.1])))
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn is_regular(&self) -> Option<usize> {
        let r = if self.n() == 0 { 0 } else { self.degree(0) };
        (0..self.n()).all(|v| self.degree(v) == r).then_some(r)
    }

    /// Two-coloring with color 0 on the lowest vertex of each component.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n()];
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if color[w] == u8::MAX {
                        color[w] = color[u] ^ 1;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Partite sets `(B, W)`, with `B` holding the lowest-indexed vertex of
    /// each component. `None` if the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let color = self.two_coloring()?;
        let (b, w): (Vec<Vertex>, Vec<Vertex>) = (0..self.n()).partition(|&v| color[v] == 0);
        Some((b, w))
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn girth(&self) -> Extended {
        let mut best: Option<usize> = None;
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.fill(usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best.into()
    }

    /// Enumerates chordless (induced) cycles of length at most `max_len`,
    /// one representative per cycle, stopping after `cap` cycles.
    ///
    /// Each cycle is reported starting at its smallest vertex `s`, with the
    /// second vertex smaller than the last. Search extends induced paths
    /// from `s` through vertices larger than `s` only.
    pub fn chordless_cycles(&self, max_len: usize, cap: usize) -> CycleList {
        let n = self.n();
        let mut out = CycleList::default();
        if max_len < 3 {
            return out;
        }
        let mut path: Vec<Vertex> = Vec::with_capacity(max_len);
        for s in 0..n {
            for &v1 in self.neighbors(s) {
                if v1 <= s {
                    continue;
                }
                path.clear();
                path.push(s);
                path.push(v1);
                if self.extend_induced_path(&mut path, max_len, cap, &mut out) {
                    return out;
                }
            }
        }
        out
    }

    // path = s, v1, ..., vk is induced; a neighbor w of vk may extend it if it
    // has no edge to v1..v_{k-1}, and closes a cycle if it is adjacent to s.
    fn extend_induced_path(
        &self,
        path: &mut Vec<Vertex>,
        max_len: usize,
        cap: usize,
        out: &mut CycleList,
    ) -> bool {
        let s = path[0];
        let k = path.len() - 1;
        let tail = path[k];
        let v1 = path[1];
        for &w in self.neighbors(tail) {
            if w <= s || path.contains(&w) {
                continue;
            }
            // chords from w to v1..v_{k-1}
            if path[1..k].iter().any(|&p| self.has_edge(p, w)) {
                continue;
            }
            if self.has_edge(s, w) {
                if v1 < w {
                    if out.cycles.len() >= cap {
                        out.truncated = true;
                        return true;
                    }
                    let mut vertices = path.clone();
                    vertices.push(w);
                    out.cycles.push(Cycle { vertices });
                }
                continue;
            }
            if path.len() + 1 >= max_len || !self.can_close(path, w) {
                continue;
            }
            path.push(w);
            if self.extend_induced_path(path, max_len, cap, out) {
                return true;
            }
            path.pop();
        }
        false
    }

    // Whether path + w extends to a chordless cycle reported from this branch:
    // a walk from w through vertices above s that avoid the path and its
    // neighbourhood must reach a neighbour x of s with x > v1. Pruning dead
    // branches keeps the work between two reported cycles polynomial.
    fn can_close(&self, path: &[Vertex], w: Vertex) -> bool {
        let s = path[0];
        let v1 = path[1];
        let n = self.n();
        let mut blocked = vec![false; n];
        for &p in &path[1..] {
            blocked[p] = true;
            for &q in self.neighbors(p) {
                blocked[q] = true;
            }
        }
        blocked[s] = true;
        let mut seen = vec![false; n];
        seen[w] = true;
        let mut stack = vec![w];
        while let Some(x) = stack.pop() {
            for &y in self.neighbors(x) {
                if y <= s || seen[y] || blocked[y] {
                    continue;
                }
                if self.has_edge(s, y) {
                    if y > v1 {
                        return true;
                    }
                    continue;
                }
                seen[y] = true;
                stack.push(y);
            }
        }
        false
    }

    /// Subgraph induced by `vertices`, plus the map from new to old indices.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let keep = normalize_vertex_set(self, vertices)?;
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().flat_map(|&u| {
            let index = &index;
            self.neighbors(u)
                .iter()
                .filter(move |&&w| w > u && index[w] != usize::MAX)
                .map(move |&w| (index[u], index[w]))
        });
        let sub = Graph::from_edges(keep.len(), edges.collect::<Vec<_>>())?;
        Ok((sub, keep))
    }

    /// `E(X, V \ X)`.
    pub fn boundary_edges(&self, vertices: &[Vertex]) -> Result<EdgeSet> {
        let set = normalize_vertex_set(self, vertices)?;
        let inside = membership(self.n(), &set);
        let mut cut: Vec<Edge> = set
            .iter()
            .flat_map(|&u| {
                let inside = &inside;
                self.neighbors(u)
                    .iter()
                    .filter(move |&&w| !inside[w])
                    .map(move |&w| edge(u, w))
            })
            .collect();
        cut.sort_unstable();
        Ok(EdgeSet::from_sorted_unchecked(cut))
    }

    /// Number of edges with exactly one end in the marked set.
    pub(crate) fn boundary_size(&self, inside: &[bool]) -> usize {
        (0..self.n())
            .filter(|&u| inside[u])
            .map(|u| self.neighbors(u).iter().filter(|&&w| !inside[w]).count())
            .sum()
    }

    /// Connected components of the subgraph induced by unmasked vertices
    /// (`removed[v] == true` excludes `v`). Components are sorted internally
    /// and listed by smallest vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.n()])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}
