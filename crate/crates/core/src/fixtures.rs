//! Named graphs used as fixtures and as construction bases.

use crate::graph::{Graph, Vertex};

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph is simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
        .expect("complete bipartite graph is simple")
}

/// Graph from LCF notation: a Hamiltonian cycle `0..n` plus chords `i -> i + shift`.
pub fn lcf(n: usize, shifts: &[i64], repeats: usize) -> Graph {
    let mut edges: Vec<(Vertex, Vertex)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for (i, &shift) in shifts.iter().cycle().take(shifts.len() * repeats).enumerate() {
        let j = (i as i64 + shift).rem_euclid(n as i64) as usize;
        if i < j {
            edges.push((i, j));
        }
    }
    edges.iter_mut().for_each(|e| *e = crate::graph::edge(e.0, e.1));
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, edges).expect("LCF graph is simple")
}

/// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram `5-7-9-6-8`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, edges).expect("Petersen graph is simple")
}

/// The (3,6)-cage on 14 vertices.
pub fn heawood() -> Graph {
    lcf(14, &[5, -5], 7)
}

/// The (3,8)-cage on 30 vertices.
pub fn tutte_coxeter() -> Graph {
    lcf(30, &[-13, -9, 7, -7, 9, 13], 5)
}

/// The (3,12)-cage on 126 vertices.
pub fn tutte_12_cage() -> Graph {
    lcf(
        126,
        &[17, 27, -13, -59, -35, 35, -11, 13, -53, 53, -27, 21, 57, 11, -21, -57, 59, -17],
        7,
    )
}

/// Two triangles joined by a perfect matching.
pub fn prism() -> Graph {
    Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
        .expect("prism is simple")
}

/// Point-line incidence graph of the Desarguesian plane of order `q`,
/// built from a Singer difference set. Points are `0..n`, lines `n..2n`
/// with `n = q^2 + q + 1`. The result is `(q+1)`-regular, bipartite, girth 6.
pub fn projective_plane_incidence(q: usize) -> Option<Graph> {
    let set: &[usize] = match q {
        2 => &[0, 1, 3],
        3 => &[0, 1, 3, 9],
        4 => &[0, 1, 4, 14, 16],
        5 => &[0, 1, 3, 8, 12, 18],
        _ => return None,
    };
    let n = q * q + q + 1;
    let edges = (0..n).flat_map(|line| set.iter().map(move |&d| ((line + d) % n, n + line)));
    Some(Graph::from_edges(2 * n, edges.collect::<Vec<_>>()).expect("incidence graph is simple"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{serialize_graph, Extended, Format};

    #[test]
    fn petersen_graph6_matches_reference_encoding() {
        assert_eq!(serialize_graph(&petersen(), Format::Graph6), b"IheA@GUAo");
    }

    #[test]
    fn cages_have_expected_parameters() {
        for (g, n, girth) in [
            (heawood(), 14, 6),
            (tutte_coxeter(), 30, 8),
            (tutte_12_cage(), 126, 12),
        ] {
            assert_eq!(g.n(), n);
            assert_eq!(g.is_regular(), Some(3));
            assert!(g.is_bipartite());
            assert_eq!(g.girth(), Extended::Finite(girth));
        }
    }

    #[test]
    fn projective_planes() {
        for q in 2..=5 {
            let g = projective_plane_incidence(q).unwrap();
            assert_eq!(g.is_regular(), Some(q + 1));
            assert!(g.is_bipartite());
            assert_eq!(g.girth(), Extended::Finite(6));
        }
        assert!(projective_plane_incidence(7).is_none());
    }
}
