//! Cyclic and odd-cyclic edge-connectivity with cut certificates.
//!
//! Every side of a cyclic cut that contains a cycle contains one that is
//! chordless in the whole graph, so the minimum over vertex-disjoint pairs of
//! chordless cycles of the min cut between them is exact.

use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{membership, normalize_vertex_set, Cycle, EdgeSet, Extended, Graph, Vertex};

/// `F = E(side_a, side_b)` with a cycle on each side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    #[serde(rename = "F")]
    pub cut: EdgeSet,
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
    pub cycle_a: Vec<Vertex>,
    pub cycle_b: Vec<Vertex>,
    /// Whether `cycle_a` has odd length.
    pub odd: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityValue {
    pub value: Extended,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CutCertificate>,
}

impl ConnectivityValue {
    fn infinite() -> Self {
        ConnectivityValue {
            value: Extended::Infinite,
            certificate: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectivityOptions {
    /// Chordless cycles enumerated before giving up with [`Error::Inexact`].
    pub max_cycles: usize,
}

impl Default for ConnectivityOptions {
    fn default() -> Self {
        ConnectivityOptions {
            max_cycles: 1_000_000,
        }
    }
}

/// A minimum edge cut between two vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCut {
    pub size: usize,
    #[serde(rename = "F")]
    pub cut: EdgeSet,
    /// Vertices on the `X` side: those reachable from `X` in the final residual network.
    pub source_side: Vec<Vertex>,
}

/// Minimum number of edges separating `x` from `y`.
pub fn min_cut_between(g: &Graph, x: &[Vertex], y: &[Vertex]) -> Result<MinCut> {
    let x = normalize_vertex_set(g, x)?;
    let y = normalize_vertex_set(g, y)?;
    if x.is_empty() || y.is_empty() {
        return Err(Error::domain("both terminal sets must be nonempty"));
    }
    let in_x = membership(g.n(), &x);
    if let Some(&v) = y.iter().find(|&&v| in_x[v]) {
        return Err(Error::domain(format!("terminal sets share vertex {v}")));
    }
    Ok(cut_between(g, &x, &y, usize::MAX).expect("unbounded search always returns"))
}

/// Min cut with flow capped at `limit + 1`; `None` when the cut exceeds `limit`.
fn cut_between(g: &Graph, x: &[Vertex], y: &[Vertex], limit: usize) -> Option<MinCut> {
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    let big = g.num_edges() as i64 + 1;
    for &v in x {
        net.add_arc(s, v, big);
    }
    for &v in y {
        net.add_arc(v, t, big);
    }
    for (u, v) in g.edges() {
        net.add_undirected(u, v, 1);
    }
    let cap = if limit >= g.num_edges() { i64::MAX } else { limit as i64 + 1 };
    let value = net.max_flow(s, t, cap) as usize;
    if value > limit {
        return None;
    }
    let reach = net.residual_reachable(s);
    let side = &reach[..n];
    let source_side: Vec<Vertex> = (0..n).filter(|&v| side[v]).collect();
    let mut cut: Vec<_> = g.edges().filter(|&(u, v)| side[u] != side[v]).collect();
    cut.sort_unstable();
    debug_assert_eq!(cut.len(), value);
    Some(MinCut {
        size: value,
        cut: EdgeSet::from_sorted_unchecked(cut),
        source_side,
    })
}

/// `λ_c`: size of a smallest edge set whose removal leaves two components
/// that both contain a cycle.
pub fn cyclic_edge_connectivity(g: &Graph) -> Result<ConnectivityValue> {
    cyclic_edge_connectivity_with(g, ConnectivityOptions::default())
}

pub fn cyclic_edge_connectivity_with(
    g: &Graph,
    opts: ConnectivityOptions,
) -> Result<ConnectivityValue> {
    search(g, opts, false)
}

/// `λ_oc`: as [`cyclic_edge_connectivity`] with an odd cycle on one side.
pub fn odd_cyclic_edge_connectivity(g: &Graph) -> Result<ConnectivityValue> {
    odd_cyclic_edge_connectivity_with(g, ConnectivityOptions::default())
}

pub fn odd_cyclic_edge_connectivity_with(
    g: &Graph,
    opts: ConnectivityOptions,
) -> Result<ConnectivityValue> {
    if g.is_bipartite() {
        return Ok(ConnectivityValue::infinite());
    }
    search(g, opts, true)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    size: usize,
    cut: EdgeSet,
    i: usize,
    j: usize,
    source_side: Vec<Vertex>,
}

fn search(g: &Graph, opts: ConnectivityOptions, odd: bool) -> Result<ConnectivityValue> {
    let list = g.chordless_cycles(g.n(), opts.max_cycles);
    let cycles = list.cycles;
    let n = g.n();
    let masks: Vec<FixedBitSet> = cycles
        .iter()
        .map(|c| {
            let mut b = FixedBitSet::with_capacity(n);
            c.vertices.iter().for_each(|&v| b.insert(v));
            b
        })
        .collect();

    let seed = cheap_upper_bound(g, &cycles, odd);
    if list.truncated {
        return Err(Error::Inexact {
            cycles: cycles.len(),
            upper_bound: seed,
        });
    }
    let Extended::Finite(seed) = seed else {
        // No cycle has a cycle in its complement, so no disjoint pair exists.
        return Ok(ConnectivityValue::infinite());
    };

    let best = AtomicUsize::new(seed);
    let found: Vec<Candidate> = (0..cycles.len())
        .into_par_iter()
        .filter(|&i| !odd || cycles[i].is_odd())
        .flat_map_iter(|i| {
            let mut local = Vec::new();
            for j in 0..cycles.len() {
                let ordered_ok = if odd { j != i } else { j > i };
                if !ordered_ok || !masks[i].is_disjoint(&masks[j]) {
                    continue;
                }
                let limit = best.load(Ordering::Relaxed);
                if let Some(c) = cut_between(g, &cycles[i].vertices, &cycles[j].vertices, limit) {
                    best.fetch_min(c.size, Ordering::Relaxed);
                    local.push(Candidate {
                        size: c.size,
                        cut: c.cut,
                        i,
                        j,
                        source_side: c.source_side,
                    });
                }
            }
            local
        })
        .collect();

    let winner = found
        .into_iter()
        .min()
        .expect("the seeding cycle pair is always within the bound");
    let inside = membership(n, &winner.source_side);
    let side_b = (0..n).filter(|&v| !inside[v]).collect();
    let cycle_a = cycles[winner.i].vertices.clone();
    Ok(ConnectivityValue {
        value: Extended::Finite(winner.size),
        certificate: Some(CutCertificate {
            cut: winner.cut,
            side_a: winner.source_side,
            side_b,
            odd: cycle_a.len() % 2 == 1,
            cycle_a,
            cycle_b: cycles[winner.j].vertices.clone(),
        }),
    })
}

/// Smallest `|∂V(C)|` over listed cycles `C` (odd ones when `odd`) whose
/// complement still contains a cycle.
fn cheap_upper_bound(g: &Graph, cycles: &[Cycle], odd: bool) -> Extended {
    let mut best = Extended::Infinite;
    for c in cycles.iter().filter(|c| !odd || c.is_odd()) {
        let inside = membership(g.n(), &c.vertices);
        let bound = g.boundary_size(&inside);
        if Extended::Finite(bound) >= best {
            continue;
        }
        let outside: Vec<bool> = inside.iter().map(|&b| !b).collect();
        let has_cycle = g
            .components_avoiding(&inside)
            .iter()
            .any(|comp| {
                let edges = comp
                    .iter()
                    .map(|&v| g.neighbors(v).iter().filter(|&&w| outside[w]).count())
                    .sum::<usize>()
                    / 2;
                edges >= comp.len()
            });
        if has_cycle {
            best = Extended::Finite(bound);
        }
    }
    best
}

/// Reason a cut certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CutDefect {
    #[error("sides do not partition the vertex set")]
    NotPartition,
    #[error("F is not the set of edges between the two sides")]
    WrongCut,
    #[error("{which} is not a cycle of the graph")]
    NotACycle { which: &'static str },
    #[error("{which} leaves its side")]
    CycleCrossesCut { which: &'static str },
    #[error("odd flag does not match the parity of cycle_a")]
    ParityMismatch,
    #[error("an odd cycle on side_a is required")]
    NotOdd,
    #[error("recorded value differs from |F|")]
    ValueMismatch,
}

/// Checks a certificate against the definitions of a (odd-)cyclic cut.
pub fn verify_cut(
    g: &Graph,
    cert: &CutCertificate,
    require_odd: bool,
) -> std::result::Result<(), CutDefect> {
    let n = g.n();
    let mut all: Vec<Vertex> = cert.side_a.iter().chain(&cert.side_b).copied().collect();
    all.sort_unstable();
    if all.len() != n || all.iter().enumerate().any(|(i, &v)| i != v) {
        return Err(CutDefect::NotPartition);
    }
    let in_a = membership(n, &cert.side_a);
    let mut expected: Vec<_> = g.edges().filter(|&(u, v)| in_a[u] != in_a[v]).collect();
    expected.sort_unstable();
    if cert.cut.as_slice() != expected.as_slice() {
        return Err(CutDefect::WrongCut);
    }
    for (which, cycle, side) in [("cycle_a", &cert.cycle_a, true), ("cycle_b", &cert.cycle_b, false)] {
        if !is_cycle(g, cycle) {
            return Err(CutDefect::NotACycle { which });
        }
        if cycle.iter().any(|&v| in_a[v] != side) {
            return Err(CutDefect::CycleCrossesCut { which });
        }
    }
    if cert.odd != (cert.cycle_a.len() % 2 == 1) {
        return Err(CutDefect::ParityMismatch);
    }
    if require_odd && !cert.odd {
        return Err(CutDefect::NotOdd);
    }
    Ok(())
}

/// [`verify_cut`] plus `value == |F|`.
pub fn verify_value(
    g: &Graph,
    value: &ConnectivityValue,
    require_odd: bool,
) -> std::result::Result<(), CutDefect> {
    match (&value.value, &value.certificate) {
        (Extended::Infinite, None) => Ok(()),
        (Extended::Finite(k), Some(cert)) if *k == cert.cut.len() => verify_cut(g, cert, require_odd),
        _ => Err(CutDefect::ValueMismatch),
    }
}

fn is_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}
