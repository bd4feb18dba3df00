//! Edmonds' blossom algorithm, O(n^3), with deterministic scan order.
//!
//! Roots are tried in increasing index order and neighbors are scanned in
//! sorted order, so the matching returned for a given graph never changes.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

const NONE: usize = usize::MAX;

pub(crate) struct Blossom<'g> {
    g: &'g Graph,
    pub(crate) mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    outer: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Blossom<'g> {
    pub fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Blossom {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            outer: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    /// Runs augmentations from every exposed vertex until none succeeds.
    pub fn solve(&mut self) {
        for root in 0..self.g.n() {
            if self.mate[root] == NONE {
                if let Some(end) = self.search(root) {
                    self.augment(end);
                }
            }
        }
    }

    pub fn mate_of(&self, v: Vertex) -> Option<Vertex> {
        (self.mate[v] != NONE).then_some(self.mate[v])
    }

    /// Vertices reachable from some exposed vertex by an even-length
    /// alternating path: the `D` set of the Gallai–Edmonds decomposition.
    /// Only meaningful once `solve` has produced a maximum matching.
    pub fn even_reachable(&mut self) -> Vec<bool> {
        let n = self.g.n();
        let mut reach = vec![false; n];
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            let found = self.search(root);
            debug_assert!(found.is_none(), "matching was not maximum");
            for (r, &o) in reach.iter_mut().zip(&self.outer) {
                *r |= o;
            }
        }
        reach
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the exposed endpoint of
    /// an augmenting path if one exists. Leaves `outer` marking the even
    /// vertices of the final tree.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.outer.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.outer[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.outer[i] {
                                self.outer[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.outer[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}
