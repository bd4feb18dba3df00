//! Seeded random regular graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph};

const ATTEMPTS: usize = 10_000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple `r`-regular graph on `n` vertices from the pairing model,
/// rejecting pairings with loops or parallel edges.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if (n * r) % 2 == 1 {
        return Err(Error::domain(format!("n*r = {} is odd", n * r)));
    }
    if r >= n && !(n == 0 && r == 0) {
        return Err(Error::domain(format!("need n > r, got n = {n}, r = {r}")));
    }
    let mut rng = rng(seed);
    let mut points: Vec<usize> = (0..n * r).map(|p| p / r.max(1)).collect();
    'attempt: for _ in 0..ATTEMPTS {
        points.shuffle(&mut rng);
        let mut edges: Vec<Edge> = Vec::with_capacity(n * r / 2);
        for pair in points.chunks(2) {
            if pair[0] == pair[1] {
                continue 'attempt;
            }
            edges.push(edge(pair[0], pair[1]));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::Budget(format!(
        "no simple pairing for n = {n}, r = {r} after {ATTEMPTS} attempts"
    )))
}

/// Random simple `r`-regular bipartite graph with parts `0..n` and `n..2n`,
/// as a union of `r` random perfect matchings.
pub fn random_regular_bipartite(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if r > n {
        return Err(Error::domain(format!("need n >= r, got n = {n}, r = {r}")));
    }
    let mut rng = rng(seed);
    'attempt: for _ in 0..ATTEMPTS {
        let mut adj = vec![Vec::<usize>::new(); n];
        for _ in 0..r {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut placed = false;
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                if (0..n).all(|b| !adj[b].contains(&perm[b])) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
            for b in 0..n {
                adj[b].push(perm[b]);
            }
        }
        let edges: Vec<Edge> = adj
            .iter()
            .enumerate()
            .flat_map(|(b, ws)| ws.iter().map(move |&w| (b, n + w)))
            .collect();
        return Graph::from_edges(2 * n, edges);
    }
    Err(Error::Budget(format!(
        "no simple bipartite graph for n = {n}, r = {r}"
    )))
}

/// Uniform index below `bound`.
pub(crate) fn below(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    rng.random_range(0..bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_vertex_cubic_is_k4() {
        assert_eq!(random_regular(4, 3, 1).unwrap(), fixtures::complete(4));
    }

    #[test]
    fn seeded_output_is_stable() {
        let a = random_regular(10, 3, 42).unwrap();
        let b = random_regular(10, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.is_regular(), Some(3));
    }

    #[test]
    fn bad_parameters() {
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(3, 3, 0).is_err());
    }

    #[test]
    fn bipartite_generator() {
        let g = random_regular_bipartite(10, 3, 7).unwrap();
        assert_eq!(g.is_regular(), Some(3));
        assert!(g.is_bipartite());
        assert_eq!(g.n(), 20);
    }
}
