//! Benchmark inputs shared by the criterion targets.

use earpack::generators::{random_regular, random_regular_bipartite};
use earpack::Graph;

/// Seeded cubic graphs of the given even orders.
pub fn cubic_corpus(orders: &[usize], seed: u64) -> Vec<Graph> {
    orders
        .iter()
        .map(|&n| random_regular(n, 3, seed + n as u64).expect("cubic graph exists"))
        .collect()
}

pub fn bipartite(n_side: usize, r: usize, seed: u64) -> Graph {
    random_regular_bipartite(n_side, r, seed).expect("bipartite graph exists")
}
