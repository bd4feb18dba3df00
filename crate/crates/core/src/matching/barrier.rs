//! Extension of a matching to a perfect matching, and Tutte barriers for the
//! blocked case.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Blossom, Matching};
use crate::error::{Error, Result};
use crate::graph::{membership, normalize_vertex_set, Edge, Graph, Vertex};

/// A set `S` outside `V(M)` together with the components of
/// `T = G - V(M) - S` and the counting quantities used in the extension proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarrierCertificate {
    #[serde(rename = "S")]
    pub s_set: Vec<Vertex>,
    /// Components of `T`, each sorted, listed by smallest vertex.
    pub components: Vec<Vec<Vertex>>,
    /// The odd-cardinality members of `components`, in the same order.
    pub odd: Vec<Vec<Vertex>>,
    pub m_star: usize,
    pub mu: usize,
    pub q1: usize,
    pub q2: usize,
}

impl BarrierCertificate {
    pub fn s(&self) -> usize {
        self.s_set.len()
    }

    /// Number of odd components beyond `|S|` (at least 2 for a valid barrier).
    pub fn deficiency(&self) -> i64 {
        self.odd.len() as i64 - self.s() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum ExtensionResult {
    Extended { perfect_matching: Matching },
    Blocked { barrier: BarrierCertificate },
}

impl ExtensionResult {
    pub fn is_extended(&self) -> bool {
        matches!(self, ExtensionResult::Extended { .. })
    }

    pub fn barrier(&self) -> Option<&BarrierCertificate> {
        match self {
            ExtensionResult::Blocked { barrier } => Some(barrier),
            ExtensionResult::Extended { .. } => None,
        }
    }
}

/// Reason a barrier certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum BarrierDefect {
    #[error("matching is not a matching of the graph")]
    BadMatching,
    #[error("S contains vertex {vertex} which is out of range or covered by M")]
    SetNotOutsideMatching { vertex: Vertex },
    #[error("S is not sorted and duplicate-free")]
    SetNotCanonical,
    #[error("component list differs from the components of G - V(M) - S")]
    ComponentsMismatch,
    #[error("odd component list is wrong")]
    OddMismatch,
    #[error("recorded {field} is {recorded}, recount gives {actual}")]
    CountMismatch {
        field: &'static str,
        recorded: usize,
        actual: usize,
    },
    #[error("{odd} odd components but |S| + 2 = {needed}")]
    NoViolation { odd: usize, needed: usize },
}

/// Decides whether `M` extends to a perfect matching of `g`. On failure the
/// barrier is the Gallai–Edmonds set `A` of `G - V(M)`.
pub fn extend_matching(g: &Graph, m: &Matching) -> Result<ExtensionResult> {
    if g.n() % 2 == 1 {
        return Err(Error::domain(format!("graph has odd order {}", g.n())));
    }
    m.check_in(g)?;
    let covered = membership(g.n(), m.covered());
    let rest: Vec<Vertex> = (0..g.n()).filter(|&v| !covered[v]).collect();
    let (h, map) = g.induced_subgraph(&rest)?;
    let mut solver = Blossom::new(&h);
    solver.solve();
    if (0..h.n()).all(|v| solver.mate_of(v).is_some()) {
        let mut edges: Vec<Edge> = m.edges().iter().collect();
        edges.extend(
            (0..h.n())
                .filter_map(|v| solver.mate_of(v).filter(|&w| v < w).map(|w| (map[v], map[w]))),
        );
        let perfect_matching = Matching::new(g, edges)?;
        return Ok(ExtensionResult::Extended { perfect_matching });
    }
    let d = solver.even_reachable();
    let mut a: Vec<Vertex> = (0..h.n())
        .filter(|&v| !d[v] && h.neighbors(v).iter().any(|&w| d[w]))
        .map(|v| map[v])
        .collect();
    a.sort_unstable();
    let barrier = barrier_for(g, m, &a)?;
    debug_assert!(barrier.deficiency() >= 2);
    Ok(ExtensionResult::Blocked { barrier })
}

/// Builds the certificate for a caller-chosen `S`. The Tutte violation is not
/// checked here; see [`verify_barrier`].
pub fn barrier_for(g: &Graph, m: &Matching, s: &[Vertex]) -> Result<BarrierCertificate> {
    m.check_in(g)?;
    let s_set = normalize_vertex_set(g, s)?;
    if let Some(&v) = s_set.iter().find(|&&v| m.covers(v)) {
        return Err(Error::domain(format!("S contains vertex {v} of V(M)")));
    }
    Ok(recount(g, m, s_set))
}

fn recount(g: &Graph, m: &Matching, s_set: Vec<Vertex>) -> BarrierCertificate {
    let in_m = membership(g.n(), m.covered());
    let in_s = membership(g.n(), &s_set);
    let removed: Vec<bool> = (0..g.n()).map(|v| in_m[v] || in_s[v]).collect();
    let components = g.components_avoiding(&removed);
    let odd: Vec<Vec<Vertex>> = components.iter().filter(|c| c.len() % 2 == 1).cloned().collect();
    let q1 = odd
        .iter()
        .filter(|c| g.induced_subgraph(c).map(|(h, _)| h.is_bipartite()).unwrap_or(false))
        .count();
    let q2 = odd.len() - q1;
    let (m_star, mu) = m_star_mu(g, m, &in_m, &in_s);
    BarrierCertificate {
        s_set,
        components,
        odd,
        m_star,
        mu,
        q1,
        q2,
    }
}

fn m_star_mu(g: &Graph, m: &Matching, in_m: &[bool], in_s: &[bool]) -> (usize, usize) {
    let mut mm = 0;
    let mut mu = 0;
    for (u, v) in g.edges() {
        if in_m[u] && in_m[v] {
            mm += 1;
        }
        if (in_s[u] && (in_s[v] || in_m[v])) || (in_s[v] && in_m[u]) {
            mu += 1;
        }
    }
    (mm - m.size(), mu)
}

/// Checks every field of `cert` against a recount and requires at least
/// `|S| + 2` odd components.
pub fn verify_barrier(
    g: &Graph,
    m: &Matching,
    cert: &BarrierCertificate,
) -> std::result::Result<(), BarrierDefect> {
    if m.check_in(g).is_err() {
        return Err(BarrierDefect::BadMatching);
    }
    if let Some(&vertex) = cert.s_set.iter().find(|&&v| v >= g.n() || m.covers(v)) {
        return Err(BarrierDefect::SetNotOutsideMatching { vertex });
    }
    if cert.s_set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BarrierDefect::SetNotCanonical);
    }
    let fresh = recount(g, m, cert.s_set.clone());
    if fresh.components != cert.components {
        return Err(BarrierDefect::ComponentsMismatch);
    }
    if fresh.odd != cert.odd {
        return Err(BarrierDefect::OddMismatch);
    }
    for (field, recorded, actual) in [
        ("m_star", cert.m_star, fresh.m_star),
        ("mu", cert.mu, fresh.mu),
        ("q1", cert.q1, fresh.q1),
        ("q2", cert.q2, fresh.q2),
    ] {
        if recorded != actual {
            return Err(BarrierDefect::CountMismatch {
                field,
                recorded,
                actual,
            });
        }
    }
    let needed = cert.s() + 2;
    if cert.odd.len() < needed {
        return Err(BarrierDefect::NoViolation {
            odd: cert.odd.len(),
            needed,
        });
    }
    Ok(())
}

/// Both sides of the edge-count identity
/// `|E(T, V - T)| = s r + 2 (m r - m - m* - mu)` for `T = G - V(M) - S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq1Sides {
    pub lhs: i64,
    pub rhs: i64,
    pub s: usize,
    pub m_star: usize,
    pub mu: usize,
}

pub fn eq1_sides(g: &Graph, m: &Matching, s: &[Vertex]) -> Result<Eq1Sides> {
    let r = g
        .is_regular()
        .ok_or_else(|| Error::domain("graph is not regular"))?;
    m.check_in(g)?;
    let s_set = normalize_vertex_set(g, s)?;
    if let Some(&v) = s_set.iter().find(|&&v| m.covers(v)) {
        return Err(Error::domain(format!("S contains vertex {v} of V(M)")));
    }
    let in_m = membership(g.n(), m.covered());
    let in_s = membership(g.n(), &s_set);
    let in_t: Vec<bool> = (0..g.n()).map(|v| !in_m[v] && !in_s[v]).collect();
    let lhs = g.boundary_size(&in_t) as i64;
    let (m_star, mu) = m_star_mu(g, m, &in_m, &in_s);
    let (si, ri, mi) = (s_set.len() as i64, r as i64, m.size() as i64);
    let rhs = si * ri + 2 * (mi * ri - mi - m_star as i64 - mu as i64);
    Ok(Eq1Sides {
        lhs,
        rhs,
        s: s_set.len(),
        m_star,
        mu,
    })
}
