//! Matchings: maximum matching, extension to a perfect matching with a
//! Tutte-barrier certificate on failure, and distance predicates.

mod barrier;
mod blossom;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, membership, Edge, EdgeSet, Extended, Graph, Vertex};

pub use barrier::{
    barrier_for, eq1_sides, extend_matching, verify_barrier, BarrierCertificate, BarrierDefect,
    Eq1Sides, ExtensionResult,
};
pub(crate) use blossom::Blossom;

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeSet", try_from = "EdgeSet")]
pub struct Matching {
    edges: EdgeSet,
    covered: Vec<Vertex>,
}

impl TryFrom<EdgeSet> for Matching {
    type Error = Error;

    fn try_from(edges: EdgeSet) -> Result<Self> {
        let mut covered: Vec<Vertex> = edges.iter().flat_map(|(u, v)| [u, v]).collect();
        covered.sort_unstable();
        if covered.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("edges of a matching must be vertex-disjoint"));
        }
        Ok(Matching { edges, covered })
    }
}

impl From<Matching> for EdgeSet {
    fn from(m: Matching) -> EdgeSet {
        m.edges
    }
}

impl Matching {
    pub fn new<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        Matching::try_from(EdgeSet::new(g, edges)?)
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    /// `m = |M|`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    /// `V(M)`, sorted.
    pub fn covered(&self) -> &[Vertex] {
        &self.covered
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.covered.binary_search(&v).is_ok()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(u, v)
    }

    /// Checks that every edge belongs to `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.edges.iter().find(|&(u, v)| !g.has_edge(u, v)) {
            Some((u, v)) => Err(Error::domain(format!("matching edge {u}-{v} is not in the graph"))),
            None => Ok(()),
        }
    }

    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        self.covered.len() == g.n()
    }
}

/// A maximum-cardinality matching.
pub fn maximum_matching(g: &Graph) -> Matching {
    let mut solver = Blossom::new(g);
    solver.solve();
    let edges: Vec<Edge> = (0..g.n())
        .filter_map(|v| solver.mate_of(v).filter(|&w| v < w).map(|w| (v, w)))
        .collect();
    Matching::try_from(EdgeSet::from_sorted_unchecked(edges)).expect("blossom output is a matching")
}

/// True iff every two distinct edges of `m` are at edge distance at least `d`.
pub fn is_distance_d_matching(g: &Graph, m: &Matching, d: usize) -> bool {
    if d == 0 {
        return true;
    }
    min_edge_distance(g, m).at_least(d)
}

/// Smallest edge distance between two distinct matching edges (infinite for
/// fewer than two edges).
pub fn min_edge_distance(g: &Graph, m: &Matching) -> Extended {
    let list = m.edges().as_slice();
    let mut best = Extended::Infinite;
    for (i, &(a, b)) in list.iter().enumerate() {
        let dist = g.multi_source_distances(&[a, b]);
        for &(c, d) in &list[i + 1..] {
            best = best.min(Extended::from(dist[c]).min(Extended::from(dist[d])));
        }
    }
    best
}

/// Lowest-indexed vertex outside `V(M)` with at least `r - 1` neighbors in `V(M)`.
pub fn heavy_neighbor_exists(g: &Graph, m: &Matching, r: usize) -> Option<Vertex> {
    if m.is_empty() {
        return None;
    }
    let inside = membership(g.n(), m.covered());
    let need = r.saturating_sub(1);
    (0..g.n()).find(|&v| {
        !inside[v] && g.neighbors(v).iter().filter(|&&w| inside[w]).count() >= need
    })
}

/// Parses `"u-v,u-v,..."` into edges.
pub fn parse_edge_list(text: &str) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    for (i, item) in text.split(',').map(str::trim).enumerate() {
        if item.is_empty() {
            continue;
        }
        let (a, b) = item
            .split_once('-')
            .ok_or_else(|| Error::domain(format!("item {i} ({item:?}) is not of the form u-v")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<Vertex>()
                .map_err(|_| Error::domain(format!("item {i} ({item:?}) has a non-integer endpoint")))
        };
        out.push(edge(parse(a)?, parse(b)?));
    }
    Ok(out)
}
