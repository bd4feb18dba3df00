//! Dinic max-flow on small integer-capacity networks.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    original: Vec<i64>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.to.len()
    }

    /// Arc `u -> v`; returns its id. The paired residual arc is `id ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64) -> usize {
        self.push_pair(u, v, cap, 0)
    }

    /// Undirected edge carrying up to `cap` units in either direction.
    pub fn add_undirected(&mut self, u: usize, v: usize, cap: i64) -> usize {
        self.push_pair(u, v, cap, cap)
    }

    fn push_pair(&mut self, u: usize, v: usize, forward: i64, backward: i64) -> usize {
        let id = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([forward, backward]);
        self.original.extend([forward, backward]);
        self.adj[u].push(id);
        self.adj[v].push(id + 1);
        id
    }

    /// Net flow along arc `id` in its forward direction (negative if reversed).
    pub fn flow(&self, id: usize) -> i64 {
        self.original[id] - self.cap[id]
    }

    pub fn head(&self, id: usize) -> usize {
        self.to[id]
    }

    pub fn arcs_from(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// Pushes flow until `limit` is reached or no augmenting path is left.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let mut total = 0;
        while total < limit && self.build_levels(s, t) {
            self.next.fill(0);
            loop {
                let pushed = self.augment(s, t, limit - total);
                if pushed == 0 {
                    break;
                }
                total += pushed;
                if total >= limit {
                    break;
                }
            }
        }
        total
    }

    fn build_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let v = self.to[id];
                if self.cap[id] > 0 && self.level[v] == u32::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    // Iterative blocking-flow DFS.
    fn augment(&mut self, s: usize, t: usize, want: i64) -> i64 {
        let mut stack: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let bottleneck = stack
                    .iter()
                    .map(|&id| self.cap[id])
                    .min()
                    .unwrap_or(0)
                    .min(want);
                for &id in &stack {
                    self.cap[id] -= bottleneck;
                    self.cap[id ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while self.next[u] < self.adj[u].len() {
                let id = self.adj[u][self.next[u]];
                let v = self.to[id];
                if self.cap[id] > 0 && self.level[v] == self.level[u] + 1 {
                    stack.push(id);
                    u = v;
                    advanced = true;
                    break;
                }
                self.next[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                self.level[u] = u32::MAX;
                let id = stack.pop().unwrap();
                u = self.to[id ^ 1];
                self.next[u] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let v = self.to[id];
                if self.cap[id] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}
