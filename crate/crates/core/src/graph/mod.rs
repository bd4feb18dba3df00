//! Simple undirected graphs with dense vertex indices.
//!
//! A [`Graph`] is immutable once built. Neighbor lists are kept sorted, which
//! gives deterministic iteration order everywhere else in the crate and lets
//! edges be addressed by a stable index (their rank in lexicographic order).

mod io;
mod structure;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use io::{parse_graph, serialize_graph, Format};
pub use structure::{Cycle, CycleList};

pub type Vertex = usize;

/// An unordered vertex pair, always stored with the smaller index first.
pub type Edge = (Vertex, Vertex);

/// Normalizes an unordered pair.
#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A nonnegative integer or infinity. Orders with `Infinite` above every
/// finite value and serializes as a JSON number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(usize),
    Infinite,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `self >= bound`, with infinity dominating everything.
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Extended::Finite(v) => v >= bound,
            Extended::Infinite => true,
        }
    }
}

impl From<Option<usize>> for Extended {
    fn from(v: Option<usize>) -> Self {
        v.map_or(Extended::Infinite, Extended::Finite)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_u64(*v as u64),
            Extended::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Extended::Finite(v as usize)),
            Repr::Str(s) if s == "inf" => Ok(Extended::Infinite),
            Repr::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    // edge_start[u] = index of the first edge (u, v) with v > u in lexicographic order
    edge_start: Vec<usize>,
    num_edges: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (i, (u, v)) in edges.into_iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::domain(format!(
                    "edge #{i} ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("edge #{i} is a loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("parallel edge {v}-{}", w[0])));
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let mut edge_start = Vec::with_capacity(adj.len() + 1);
        let mut total = 0;
        for (u, list) in adj.iter().enumerate() {
            edge_start.push(total);
            total += list.len() - list.partition_point(|&v| v <= u);
        }
        edge_start.push(total);
        Graph {
            adj,
            edge_start,
            num_edges: total,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Rank of edge `uv` in [`Graph::edges`] order, if it is an edge.
    pub fn edge_index(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (u, v) = edge(u, v);
        if v >= self.n() {
            return None;
        }
        let list = &self.adj[u];
        let start = list.partition_point(|&w| w <= u);
        list[start..]
            .binary_search(&v)
            .ok()
            .map(|pos| self.edge_start[u] + pos)
    }

    /// Returns a new graph with the given edges added.
    pub fn with_edges_added<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Graph::from_edges(self.n(), self.edges().chain(extra))
    }

    /// Returns a new graph with the given edges removed. Missing edges are an error.
    pub fn with_edges_removed(&self, removed: &[Edge]) -> Result<Self> {
        let mut drop = Vec::with_capacity(removed.len());
        for &(u, v) in removed {
            if !self.has_edge(u, v) {
                return Err(Error::domain(format!("{u}-{v} is not an edge")));
            }
            drop.push(edge(u, v));
        }
        drop.sort_unstable();
        Graph::from_edges(
            self.n(),
            self.edges().filter(|e| drop.binary_search(e).is_err()),
        )
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&v| v + off).collect()),
        );
        Self::from_adjacency(adj)
    }

    /// Returns a graph with `extra` isolated vertices appended.
    pub fn with_vertices_added(&self, extra: usize) -> Graph {
        let mut adj = self.adj.clone();
        adj.resize(self.n() + extra, Vec::new());
        Self::from_adjacency(adj)
    }
}

/// A set of edges of a host graph, normalized and sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    /// Validates membership in `g` and rejects duplicates.
    pub fn new<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut list: Vec<Edge> = edges.into_iter().map(|(u, v)| edge(u, v)).collect();
        for &(u, v) in &list {
            if !g.has_edge(u, v) {
                return Err(Error::domain(format!("{u}-{v} is not an edge of the graph")));
            }
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("duplicate edge in edge set"));
        }
        Ok(EdgeSet(list))
    }

    pub(crate) fn from_sorted_unchecked(list: Vec<Edge>) -> Self {
        debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
        EdgeSet(list)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.0.binary_search(&edge(u, v)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }
}

/// Boolean membership vector for a vertex subset.
pub(crate) fn membership(n: usize, vertices: &[Vertex]) -> Vec<bool> {
    let mut mark = vec![false; n];
    for &v in vertices {
        mark[v] = true;
    }
    mark
}

/// Sorts and deduplicates a vertex list, checking the range.
pub(crate) fn normalize_vertex_set(g: &Graph, vertices: &[Vertex]) -> Result<Vec<Vertex>> {
    let mut set = vertices.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&v) = set.last() {
        if v >= g.n() {
            return Err(Error::domain(format!("vertex {v} out of range 0..{}", g.n())));
        }
    }
    Ok(set)
}
