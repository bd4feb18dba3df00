//! Ears of a vertex set `U` and packings of edge-disjoint odd ears.
//!
//! An ear of `U` is a path whose two ends lie in `U` and whose inner vertices
//! do not, or a cycle meeting `U` in exactly one vertex. Cycle ears list that
//! vertex first and do not repeat it at the end.

mod bipartite;
mod search;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{edge, membership, Edge, Graph, Vertex};

pub use bipartite::bipartite_ear_packing;
pub use search::{max_odd_ear_packing, EarSearch, SearchOptions, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EarKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ear {
    pub kind: EarKind,
    pub vertices: Vec<Vertex>,
}

impl Ear {
    pub fn path(vertices: Vec<Vertex>) -> Self {
        Ear {
            kind: EarKind::Path,
            vertices,
        }
    }

    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        Ear {
            kind: EarKind::Cycle,
            vertices,
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        match self.kind {
            EarKind::Path => self.vertices.len().saturating_sub(1),
            EarKind::Cycle => self.vertices.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn edges(&self) -> Vec<Edge> {
        let v = &self.vertices;
        let mut out: Vec<Edge> = v.windows(2).map(|w| edge(w[0], w[1])).collect();
        if self.kind == EarKind::Cycle && v.len() >= 2 {
            out.push(edge(v[v.len() - 1], v[0]));
        }
        out
    }

    /// Vertices of `U` on the ear.
    pub fn anchors(&self, u: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .vertices
            .iter()
            .copied()
            .filter(|v| u.binary_search(v).is_ok())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarPacking {
    #[serde(rename = "U")]
    pub u: Vec<Vertex>,
    pub ears: Vec<Ear>,
}

impl EarPacking {
    pub fn k(&self) -> usize {
        self.ears.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum EarDefect {
    #[error("vertex out of range")]
    OutOfRange,
    #[error("too few vertices for a {kind:?} ear")]
    TooShort { kind: EarKind },
    #[error("a vertex repeats")]
    RepeatedVertex,
    #[error("{u}-{v} is not an edge")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("path end is not in U")]
    EndOutsideU,
    #[error("an inner vertex lies in U")]
    InnerInU,
    #[error("cycle meets U in {hits} vertices")]
    CycleAnchors { hits: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum PackingDefect {
    #[error("ear {index}: {defect}")]
    InvalidEar { index: usize, defect: EarDefect },
    #[error("ear {index} has even length")]
    EvenEar { index: usize },
    #[error("edge {edge:?} is used twice")]
    SharedEdge { edge: Edge },
    #[error("U is not sorted and duplicate-free")]
    BadU,
}

/// Checks that `ear` is an ear of `U` in `g` (odd or even).
pub fn validate_ear(g: &Graph, u: &[Vertex], ear: &Ear) -> Result<(), EarDefect> {
    let vs = &ear.vertices;
    if vs.iter().any(|&v| v >= g.n()) || u.iter().any(|&v| v >= g.n()) {
        return Err(EarDefect::OutOfRange);
    }
    let min = match ear.kind {
        EarKind::Path => 2,
        EarKind::Cycle => 3,
    };
    if vs.len() < min {
        return Err(EarDefect::TooShort { kind: ear.kind });
    }
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(EarDefect::RepeatedVertex);
    }
    if let Some((a, b)) = ear.edges().into_iter().find(|&(a, b)| !g.has_edge(a, b)) {
        return Err(EarDefect::MissingEdge { u: a, v: b });
    }
    let in_u = membership(g.n(), u);
    match ear.kind {
        EarKind::Path => {
            if !in_u[vs[0]] || !in_u[vs[vs.len() - 1]] {
                return Err(EarDefect::EndOutsideU);
            }
            if vs[1..vs.len() - 1].iter().any(|&v| in_u[v]) {
                return Err(EarDefect::InnerInU);
            }
        }
        EarKind::Cycle => {
            let hits = vs.iter().filter(|&&v| in_u[v]).count();
            if hits != 1 {
                return Err(EarDefect::CycleAnchors { hits });
            }
        }
    }
    Ok(())
}

/// Checks that every ear is a valid odd ear of `p.u` and that ears are pairwise
/// edge-disjoint.
pub fn verify_packing(g: &Graph, p: &EarPacking) -> Result<(), PackingDefect> {
    if p.u.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PackingDefect::BadU);
    }
    let mut seen = HashSet::new();
    for (index, ear) in p.ears.iter().enumerate() {
        validate_ear(g, &p.u, ear).map_err(|defect| PackingDefect::InvalidEar { index, defect })?;
        if !ear.is_odd() {
            return Err(PackingDefect::EvenEar { index });
        }
        for e in ear.edges() {
            if !seen.insert(e) {
                return Err(PackingDefect::SharedEdge { edge: e });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ear_validation() {
        let k13 = fixtures::complete_bipartite(1, 3);
        let leaves = [1, 2, 3];
        let ear = Ear::path(vec![1, 0, 2]);
        assert_eq!(validate_ear(&k13, &leaves, &ear), Ok(()));
        assert!(!ear.is_odd());

        let k3 = fixtures::complete(3);
        let tri = Ear::cycle(vec![0, 1, 2]);
        assert_eq!(validate_ear(&k3, &[0], &tri), Ok(()));
        assert!(tri.is_odd());
        assert_eq!(validate_ear(&k3, &[0, 1], &tri), Err(EarDefect::CycleAnchors { hits: 2 }));

        let single = Ear::path(vec![0, 1]);
        assert_eq!(validate_ear(&k3, &[0, 1], &single), Ok(()));
        assert_eq!(single.len(), 1);
        assert_eq!(validate_ear(&k3, &[0, 1, 2], &Ear::path(vec![0, 2, 1])), Err(EarDefect::InnerInU));
        assert_eq!(validate_ear(&fixtures::path(3), &[0, 2], &Ear::path(vec![0, 2])), Err(EarDefect::MissingEdge { u: 0, v: 2 }));
    }

    #[test]
    fn packing_verification() {
        let k4 = fixtures::complete(4);
        let empty = EarPacking {
            u: vec![0, 1],
            ears: vec![],
        };
        assert_eq!(verify_packing(&k4, &empty), Ok(()));
        let shared = EarPacking {
            u: vec![0, 1],
            ears: vec![Ear::path(vec![0, 2, 3, 1]), Ear::path(vec![0, 3, 2, 1])],
        };
        assert_eq!(verify_packing(&k4, &shared), Err(PackingDefect::SharedEdge { edge: (2, 3) }));
        let json = serde_json::to_value(&shared).unwrap();
        assert_eq!(json["ears"][0]["kind"], "path");
        assert!(json.get("U").is_some());
    }
}
