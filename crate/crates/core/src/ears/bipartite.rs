//! Odd ears of `V(M)` in a bipartite graph from a unit-capacity flow between
//! the two colour classes of `V(M)`.

use super::{Ear, EarPacking};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{membership, Graph, Vertex};
use crate::matching::Matching;

/// Edge-disjoint `(M_B, M_W)`-paths cut down to ears. In a bipartite graph
/// every odd ear joins `M_B` to `M_W`, so the packing is maximum.
pub fn bipartite_ear_packing(g: &Graph, m: &Matching) -> Result<EarPacking> {
    m.check_in(g)?;
    let colour = g
        .two_coloring()
        .ok_or_else(|| Error::domain("graph is not bipartite"))?;
    let n = g.n();
    let u = m.covered().to_vec();
    let in_u = membership(n, &u);
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for &v in &u {
        let d = g.degree(v) as i64;
        if colour[v] == 0 {
            net.add_arc(s, v, d);
        } else {
            net.add_arc(v, t, d);
        }
    }
    let first_edge_arc = net.arc_count();
    for (a, b) in g.edges() {
        net.add_undirected(a, b, 1);
    }
    net.max_flow(s, t, i64::MAX);

    // Remaining flow on each arc, decremented as paths are peeled off.
    let mut left: Vec<i64> = (0..net.arc_count()).map(|id| net.flow(id).max(0)).collect();
    let mut ears = Vec::new();
    let mut seen = vec![usize::MAX; n + 2];
    loop {
        let mut walk = vec![s];
        let mut arcs: Vec<usize> = Vec::new();
        seen[s] = 0;
        let mut at = s;
        while at != t {
            let Some(&id) = net.arcs_from(at).iter().find(|&&id| left[id] > 0) else {
                break;
            };
            arcs.push(id);
            at = net.head(id);
            if seen[at] != usize::MAX && seen[at] < walk.len() {
                // Cancel the loop as a circulation and continue from `at`.
                let start = seen[at];
                for &lid in &arcs[start..] {
                    left[lid] -= 1;
                }
                for &v in &walk[start + 1..] {
                    seen[v] = usize::MAX;
                }
                walk.truncate(start + 1);
                arcs.truncate(start);
                continue;
            }
            seen[at] = walk.len();
            walk.push(at);
        }
        for &v in &walk {
            seen[v] = usize::MAX;
        }
        if at != t {
            break;
        }
        for &id in &arcs {
            left[id] -= 1;
        }
        debug_assert!(arcs[1..arcs.len() - 1].iter().all(|&id| id >= first_edge_arc));
        ears.push(trim(&walk[1..walk.len() - 1], &in_u, &colour));
    }
    ears.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    Ok(EarPacking { u, ears })
}

/// The segment from the last `M_B` vertex before the first `M_W` vertex to
/// that `M_W` vertex.
fn trim(path: &[Vertex], in_u: &[bool], colour: &[u8]) -> Ear {
    let j = path
        .iter()
        .position(|&v| in_u[v] && colour[v] == 1)
        .expect("flow path ends in M_W");
    let i = path[..j]
        .iter()
        .rposition(|&v| in_u[v] && colour[v] == 0)
        .expect("flow path starts in M_B");
    Ear::path(path[i..=j].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ears::verify_packing;
    use crate::fixtures;

    #[test]
    fn heawood_single_edge() {
        let h = fixtures::heawood();
        let m = Matching::new(&h, [(0, 1)]).unwrap();
        let p = bipartite_ear_packing(&h, &m).unwrap();
        assert_eq!(p.k(), 3);
        verify_packing(&h, &p).unwrap();
    }

    #[test]
    fn hexagon_single_edge() {
        let c6 = fixtures::cycle(6);
        let m = Matching::new(&c6, [(2, 3)]).unwrap();
        let p = bipartite_ear_packing(&c6, &m).unwrap();
        assert_eq!(p.k(), 2);
        verify_packing(&c6, &p).unwrap();
        assert_eq!(p.ears.iter().map(Ear::len).collect::<Vec<_>>(), vec![1, 5]);
    }

    #[test]
    fn inner_matching_vertices_are_trimmed() {
        // Path 0-1-2-3-4-5 with M = {01, 45}: flow paths may run through V(M).
        let p6 = fixtures::path(6);
        let m = Matching::new(&p6, [(0, 1), (4, 5)]).unwrap();
        let p = bipartite_ear_packing(&p6, &m).unwrap();
        verify_packing(&p6, &p).unwrap();
        assert_eq!(p.k(), 3);
    }

    #[test]
    fn non_bipartite_rejected() {
        let k3 = fixtures::complete(3);
        let m = Matching::new(&k3, [(0, 1)]).unwrap();
        assert!(bipartite_ear_packing(&k3, &m).is_err());
    }
}
