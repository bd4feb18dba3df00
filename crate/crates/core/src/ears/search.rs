//! Exact branch-and-bound for edge-disjoint odd ears.
//!
//! Every ear uses exactly two half-edges at `U` (an edge inside `U` counts as
//! two). The search takes the lowest half-edge still free and either starts an
//! ear there or gives it up, which blocks its edge for good. Half the number
//! of free half-edges bounds what the remaining ears can add. Ear length is
//! capped and the cap is raised over odd values until the search completes.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Ear, EarPacking};
use crate::error::{Error, Result};
use crate::graph::{membership, normalize_vertex_set, Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop as soon as this many ears are found.
    pub target: Option<usize>,
    /// Search nodes (packing states plus ear-walk steps) before giving up.
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            target: None,
            node_budget: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    /// The search finished: the packing is maximum.
    Maximum,
    /// A packing of the requested size was found; it may not be maximum.
    TargetReached,
    /// Budget ran out first; the packing is only a lower bound.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarSearch {
    pub packing: EarPacking,
    pub outcome: SearchOutcome,
    /// Proven upper bound on the maximum (equal to `k` when maximum).
    pub upper_bound: usize,
    pub nodes: u64,
}

impl EarSearch {
    pub fn k(&self) -> usize {
        self.packing.k()
    }

    pub fn is_exact(&self) -> bool {
        self.outcome == SearchOutcome::Maximum
    }

    /// True when `target` ears were proven impossible.
    pub fn rules_out(&self, target: usize) -> bool {
        self.upper_bound < target
    }
}

struct HalfEdge {
    anchor: Vertex,
    other: Vertex,
    edge: usize,
}

struct Searcher<'g> {
    g: &'g Graph,
    in_u: Vec<bool>,
    half: Vec<HalfEdge>,
    cap: usize,
    target: Option<usize>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    done: bool,
    best: Vec<Ear>,
    stack: Vec<Ear>,
    fail: HashMap<FixedBitSet, usize>,
}

const MEMO_LIMIT: usize = 1 << 21;

/// Largest set of pairwise edge-disjoint odd ears of `u` that the budget allows.
pub fn max_odd_ear_packing(g: &Graph, u: &[Vertex], opts: SearchOptions) -> Result<EarSearch> {
    let u = normalize_vertex_set(g, u)?;
    if u.is_empty() {
        return Err(Error::domain("U must be nonempty"));
    }
    let in_u = membership(g.n(), &u);
    let mut half = Vec::new();
    for &a in &u {
        for &b in g.neighbors(a) {
            half.push(HalfEdge {
                anchor: a,
                other: b,
                edge: g.edge_index(a, b).expect("neighbor edge exists"),
            });
        }
    }
    let root_bound = half.len() / 2;
    let mut s = Searcher {
        g,
        in_u,
        half,
        cap: 1,
        target: opts.target,
        budget: opts.node_budget,
        nodes: 0,
        exhausted: false,
        done: false,
        best: Vec::new(),
        stack: Vec::new(),
        fail: HashMap::new(),
    };
    let finish = |s: Searcher, outcome: SearchOutcome| {
        let k = s.best.len();
        EarSearch {
            packing: EarPacking {
                u: u.clone(),
                ears: s.best,
            },
            outcome,
            upper_bound: if outcome == SearchOutcome::Maximum { k } else { root_bound },
            nodes: s.nodes,
        }
    };
    if opts.target.is_some_and(|t| t == 0) {
        return Ok(finish(s, SearchOutcome::TargetReached));
    }
    let longest = if g.n() % 2 == 1 { g.n() } else { g.n().saturating_sub(1) }.max(1);
    let mut cap = 1;
    loop {
        s.cap = cap;
        s.fail.clear();
        let mut blocked = FixedBitSet::with_capacity(g.num_edges());
        s.dfs(&mut blocked, 0);
        if s.done {
            return Ok(finish(s, SearchOutcome::TargetReached));
        }
        if s.exhausted {
            return Ok(finish(s, SearchOutcome::Unknown));
        }
        if s.best.len() == root_bound || cap >= longest {
            let maximum = s.target.is_none_or(|t| root_bound < t || s.best.len() < t);
            debug_assert!(maximum);
            return Ok(finish(s, SearchOutcome::Maximum));
        }
        cap += 2;
    }
}

impl Searcher<'_> {
    fn need(&self) -> usize {
        self.target.unwrap_or(self.best.len() + 1)
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn dfs(&mut self, blocked: &mut FixedBitSet, from: usize) {
        if !self.tick() {
            return;
        }
        if self.stack.len() > self.best.len() {
            self.best = self.stack.clone();
            if self.target.is_some_and(|t| self.best.len() >= t) {
                self.done = true;
                return;
            }
        }
        let Some(h) = (from..self.half.len()).find(|&i| !blocked[self.half[i].edge]) else {
            return;
        };
        let free = (h..self.half.len()).filter(|&i| !blocked[self.half[i].edge]).count();
        let required = self.need().saturating_sub(self.stack.len());
        if free / 2 < required {
            return;
        }
        if self.fail.get(blocked).is_some_and(|&k| k <= required) {
            return;
        }

        for ear in self.ears_from(h, blocked) {
            if self.exhausted {
                return;
            }
            let edges: Vec<usize> = ear
                .edges()
                .iter()
                .map(|&(a, b)| self.g.edge_index(a, b).expect("ear edges exist"))
                .collect();
            edges.iter().for_each(|&e| blocked.insert(e));
            self.stack.push(ear);
            self.dfs(blocked, h + 1);
            self.stack.pop();
            edges.iter().for_each(|&e| blocked.set(e, false));
            if self.done || self.exhausted {
                return;
            }
        }

        let e = self.half[h].edge;
        blocked.insert(e);
        self.dfs(blocked, h + 1);
        blocked.set(e, false);
        if self.done || self.exhausted {
            return;
        }

        if self.best.len() < self.stack.len() + required {
            if self.fail.len() >= MEMO_LIMIT {
                self.fail.clear();
            }
            let slot = self.fail.entry(blocked.clone()).or_insert(required);
            *slot = (*slot).min(required);
        }
    }

    /// Odd ears of length at most `cap` that start with half-edge `h`,
    /// shortest first.
    fn ears_from(&mut self, h: usize, blocked: &FixedBitSet) -> Vec<Ear> {
        let HalfEdge { anchor, other, edge } = self.half[h];
        if self.in_u[other] {
            return vec![Ear::path(vec![anchor, other])];
        }
        let mut out = Vec::new();
        if self.cap < 3 {
            return out;
        }
        let mut used = blocked.clone();
        used.insert(edge);
        let mut on_path = vec![false; self.g.n()];
        on_path[anchor] = true;
        on_path[other] = true;
        let mut path = vec![anchor, other];
        self.walk(&mut path, &mut on_path, &mut used, &mut out);
        out.sort_by(|a, b| (a.len(), a.kind, &a.vertices).cmp(&(b.len(), b.kind, &b.vertices)));
        out
    }

    fn walk(
        &mut self,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        used: &mut FixedBitSet,
        out: &mut Vec<Ear>,
    ) {
        let g = self.g;
        let y = *path.last().expect("path is nonempty");
        let closing = path.len();
        for &z in g.neighbors(y) {
            if !self.tick() {
                return;
            }
            let e = g.edge_index(y, z).expect("neighbor edge exists");
            if used[e] {
                continue;
            }
            if self.in_u[z] {
                if closing % 2 == 1 && closing <= self.cap {
                    if z == path[0] {
                        out.push(Ear::cycle(path.clone()));
                    } else {
                        let mut p = path.clone();
                        p.push(z);
                        out.push(Ear::path(p));
                    }
                }
            } else if !on_path[z] && closing < self.cap {
                used.insert(e);
                on_path[z] = true;
                path.push(z);
                self.walk(path, on_path, used, out);
                path.pop();
                on_path[z] = false;
                used.set(e, false);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::verify_packing;
    use crate::fixtures;

    fn exact(g: &Graph, u: &[Vertex]) -> usize {
        let r = max_odd_ear_packing(g, u, SearchOptions::default()).unwrap();
        assert!(r.is_exact());
        verify_packing(g, &r.packing).unwrap();
        r.k()
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(exact(&fixtures::complete_bipartite(1, 3), &[1, 2, 3]), 0);
        assert_eq!(exact(&fixtures::complete(4), &[0, 1]), 2);
        assert_eq!(exact(&fixtures::complete(3), &[0]), 1);
        assert_eq!(exact(&fixtures::cycle(6), &[0, 1]), 2);
        assert_eq!(exact(&fixtures::petersen(), &[0, 1]), 3);
    }

    #[test]
    fn target_mode_stops_early() {
        let h = fixtures::heawood();
        let opts = SearchOptions {
            target: Some(3),
            ..SearchOptions::default()
        };
        let r = max_odd_ear_packing(&h, &[0, 1], opts).unwrap();
        assert_eq!(r.outcome, SearchOutcome::TargetReached);
        assert_eq!(r.k(), 3);
        verify_packing(&h, &r.packing).unwrap();
    }

    #[test]
    fn impossible_target_is_proven() {
        let opts = SearchOptions {
            target: Some(3),
            ..SearchOptions::default()
        };
        let r = max_odd_ear_packing(&fixtures::complete(4), &[0, 1], opts).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Maximum);
        assert!(r.rules_out(3));
    }

    #[test]
    fn tiny_budget_is_unknown() {
        let opts = SearchOptions {
            target: None,
            node_budget: 5,
        };
        let r = max_odd_ear_packing(&fixtures::petersen(), &[0, 1, 2, 3], opts).unwrap();
        assert_eq!(r.outcome, SearchOutcome::Unknown);
        verify_packing(&fixtures::petersen(), &r.packing).unwrap();
    }

    #[test]
    fn empty_u_rejected() {
        assert!(max_odd_ear_packing(&fixtures::complete(4), &[], SearchOptions::default()).is_err());
    }
}
