use std::collections::{BTreeMap, VecDeque};

use super::bases::{smallest_base, DeficientBipartiteBase};
use super::{Check, ConstructionOutput, Expectation, Family};
use crate::error::{Error, Result};
use crate::graph::{edge, Edge, Graph, Vertex};
use crate::matching::Matching;

struct Assembly {
    n: usize,
    edges: Vec<Edge>,
    names: BTreeMap<String, Vertex>,
}

impl Assembly {
    fn new() -> Self {
        Assembly {
            n: 0,
            edges: Vec::new(),
            names: BTreeMap::new(),
        }
    }

    fn add_graph(&mut self, g: &Graph) -> usize {
        let off = self.n;
        self.edges.extend(g.edges().map(|(a, b)| (a + off, b + off)));
        self.n += g.n();
        off
    }

    fn vertex(&mut self, label: String) -> Vertex {
        let v = self.n;
        self.n += 1;
        self.names.insert(label, v);
        v
    }

    /// Names the deficient vertices of a base placed at `off`, 1-based.
    fn name_base(
        &mut self,
        base: &DeficientBipartiteBase,
        off: usize,
        b: &str,
        w: &str,
    ) -> (Vec<Vertex>, Vec<Vertex>) {
        let xs: Vec<Vertex> = base.side_b_deficient.iter().map(|&v| v + off).collect();
        let ys: Vec<Vertex> = base.side_w_deficient.iter().map(|&v| v + off).collect();
        for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
            self.names.insert(format!("{b}_{}", i + 1), x);
            self.names.insert(format!("{w}_{}", i + 1), y);
        }
        (xs, ys)
    }

    fn join(&mut self, a: Vertex, b: Vertex) {
        self.edges.push(edge(a, b));
    }

    fn finish(self) -> Result<(Graph, BTreeMap<String, Vertex>)> {
        Ok((Graph::from_edges(self.n, self.edges)?, self.names))
    }
}

/// Removes `count` vertices from the front of `pool`.
fn take(pool: &mut VecDeque<Vertex>, count: usize, what: &str) -> Result<Vec<Vertex>> {
    if pool.len() < count {
        return Err(Error::domain(format!(
            "join rules need {count} more vertices of {what}, only {} left",
            pool.len()
        )));
    }
    Ok(pool.drain(..count).collect())
}

/// Takes `count` vertices, from `first` while it lasts and then from `second`.
fn take_preferring(
    first: &mut VecDeque<Vertex>,
    second: &mut VecDeque<Vertex>,
    count: usize,
    what: &str,
) -> Result<Vec<Vertex>> {
    let from_first = count.min(first.len());
    let mut out = take(first, from_first, what)?;
    out.extend(take(second, count - from_first, what)?);
    Ok(out)
}

fn check_base(base: &DeficientBipartiteBase, r: usize, pairs: usize, what: &str) -> Result<()> {
    if base.r != r {
        return Err(Error::domain(format!("{what} has degree {}, expected {r}", base.r)));
    }
    if base.ell() != pairs {
        return Err(Error::domain(format!(
            "{what} has {} deficient vertices per side, expected {pairs}",
            base.ell()
        )));
    }
    if !base.graph.is_connected() {
        return Err(Error::domain(format!("{what} is disconnected")));
    }
    Ok(())
}

fn check_mr(m: usize, r: usize) -> Result<()> {
    if m < 2 || r < 3 {
        return Err(Error::domain(format!("need m >= 2 and r >= 3, got m = {m}, r = {r}")));
    }
    Ok(())
}

fn params(pairs: &[(&str, usize)]) -> BTreeMap<String, usize> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn ceil_half(r: usize) -> usize {
    r.div_ceil(2)
}

/// The cubic bipartite graph on which a distance-4 matching of size `2k+1`
/// has at most `5k+4` edge-disjoint odd ears. `base` must be cubic with
/// `4k+2` deficient vertices per side at separation at least 3.
pub fn build_lemma3_counterexample(
    k: usize,
    base: &DeficientBipartiteBase,
) -> Result<ConstructionOutput> {
    if k < 2 {
        return Err(Error::domain(format!("need k >= 2, got {k}")));
    }
    check_base(base, 3, 4 * k + 2, "base")?;
    if !base.measured.separation.at_least(3) {
        return Err(Error::domain(format!(
            "deficient vertices of the base are only {} apart, need 3",
            base.measured.separation
        )));
    }
    let mut a = Assembly::new();
    let off = a.add_graph(&base.graph);
    let (b, w) = a.name_base(base, off, "b", "w");

    let xs: Vec<Vertex> = (1..=2 * k + 1).map(|i| a.vertex(format!("x_{i}"))).collect();
    let ys: Vec<Vertex> = (1..=2 * k + 1).map(|i| a.vertex(format!("y_{i}"))).collect();
    let ss: Vec<Vertex> = (1..=k).map(|i| a.vertex(format!("s_{i}"))).collect();
    for i in 0..2 * k + 1 {
        if i % 2 == 1 {
            // x_{2j} y_{2j} is subdivided by s_j
            let s = ss[i / 2];
            a.join(xs[i], s);
            a.join(s, ys[i]);
        } else {
            a.join(xs[i], ys[i]);
        }
        if i + 1 < 2 * k + 1 {
            a.join(xs[i], xs[i + 1]);
        }
    }
    let mut tree: Vec<Vertex> = xs.iter().chain(&ys).chain(&ss).copied().collect();
    tree.sort_unstable();

    let mut low_degree = vec![xs[0], xs[2 * k]];
    low_degree.extend(&ss);
    for (&t, &bj) in low_degree.iter().zip(&b) {
        a.join(t, bj);
    }
    for i in 1..=k {
        let u = a.vertex(format!("u_{i}"));
        for j in k + 3 * i..=k + 3 * i + 2 {
            a.join(u, b[j - 1]);
        }
    }
    for i in 1..=2 * k + 1 {
        a.join(ys[i - 1], w[2 * i - 2]);
        a.join(ys[i - 1], w[2 * i - 1]);
    }
    let (graph, names) = a.finish()?;
    let matching = Matching::new(&graph, (1..=2 * k + 1).map(|i| (ys[i - 1], w[2 * i - 1])))?;

    let expectations = vec![
        Expectation::guaranteed(Check::Regular(3)),
        Expectation::guaranteed(Check::EvenOrder),
        Expectation::guaranteed(Check::Bipartite),
        Expectation::guaranteed(Check::MatchingSize(2 * k + 1)),
        Expectation::guaranteed(Check::DistanceMatching(4)),
        Expectation::guaranteed(Check::CutSize {
            side: tree,
            size: 5 * k + 4,
        }),
        Expectation::guaranteed(Check::OddEarsAtMost(5 * k + 4)),
        Expectation::asymptotic(Check::LambdaCAtLeast(6 * k + 3)),
    ];
    Ok(ConstructionOutput {
        family: Family::Lemma3,
        params: params(&[("k", k), ("r", 3), ("base_n", base.graph.n())]),
        graph,
        matching,
        names,
        expectations,
    })
}

/// A non-extendable `m`-edge matching in an `r`-regular graph whose odd-ear
/// count is one short of case (i). `a1` needs `m(r-1) + ceil(r/2)` deficient
/// pairs and `a2` needs `m(r-1)`.
pub fn build_sharpness_i(
    m: usize,
    r: usize,
    a1: &DeficientBipartiteBase,
    a2: &DeficientBipartiteBase,
) -> Result<ConstructionOutput> {
    check_mr(m, r)?;
    let alpha = m * (r - 1);
    let (up, down) = (ceil_half(r), r / 2);
    check_base(a1, r, alpha + up, "first base")?;
    check_base(a2, r, alpha, "second base")?;
    let a1 = a1.paired_by_disjoint_paths()?;
    let a2 = a2.paired_by_disjoint_paths()?;

    let mut a = Assembly::new();
    let off1 = a.add_graph(&a1.graph);
    let (x, y) = a.name_base(&a1, off1, "x", "y");
    let q1 = a.vertex("q_1".into());
    let off2 = a.add_graph(&a2.graph);
    let (z, u) = a.name_base(&a2, off2, "z", "u");
    let q2 = a.vertex("q_2".into());
    let h2: Vec<Vertex> = (off2..=q2).collect();
    let bs: Vec<Vertex> = (1..=m).map(|i| a.vertex(format!("b_{i}"))).collect();
    let ws: Vec<Vertex> = (1..=m).map(|i| a.vertex(format!("w_{i}"))).collect();
    for i in 0..m {
        a.join(bs[i], ws[i]);
    }

    // 1-based index i lives at position i - 1
    for i in alpha - down + 1..=alpha + up {
        a.join(q1, y[i - 1]);
    }
    for i in alpha - up + 1..=alpha {
        a.join(q2, z[i - 1]);
    }
    for i in alpha - down + 1..=alpha {
        a.join(q2, u[i - 1]);
    }
    for i in 1..=alpha - down {
        a.join(y[i - 1], u[i - 1]);
    }

    let mut pool_x: VecDeque<Vertex> = x.iter().copied().collect();
    let mut pool_z: VecDeque<Vertex> = z[..alpha - up].iter().copied().collect();
    let (hi, lo) = (r / 2, (r - 1) / 2);
    let mut plan: Vec<(Vertex, usize, usize)> = Vec::new();
    for i in 0..m - 1 {
        plan.push((bs[i], hi, lo));
        plan.push((ws[i], lo, hi));
    }
    plan.push((bs[m - 1], up, down - 1));
    plan.push((ws[m - 1], r - 1, 0));
    for (v, nx, nz) in plan {
        for t in take(&mut pool_x, nx, "X")? {
            a.join(v, t);
        }
        for t in take(&mut pool_z, nz, "Z")? {
            a.join(v, t);
        }
    }
    debug_assert!(pool_x.is_empty() && pool_z.is_empty());

    let (graph, names) = a.finish()?;
    let matching = Matching::new(&graph, bs.iter().zip(&ws).map(|(&b, &w)| (b, w)))?;
    let s: Vec<Vertex> = a1.w_side().iter().map(|&v| v + off1).collect();
    let sep = a1.measured.separation.min(a2.measured.separation);
    let d = sep.finite().map_or(graph.n(), |s| s + 2);

    let expectations = vec![
        Expectation::guaranteed(Check::Regular(r)),
        Expectation::guaranteed(Check::EvenOrder),
        Expectation::guaranteed(Check::MatchingSize(m)),
        Expectation::guaranteed(Check::DistanceMatching(d)),
        Expectation::guaranteed(Check::BarrierShape {
            singletons: s.len() + 1,
            s,
            large: vec![h2.len()],
        }),
        Expectation::asymptotic(Check::OddEarsAtLeast(m * r - up)),
        Expectation::asymptotic(Check::LambdaCAtLeast(2 * m * (r - 1) - r)),
    ];
    Ok(ConstructionOutput {
        family: Family::SharpnessI,
        params: params(&[("m", m), ("r", r), ("alpha", alpha)]),
        graph,
        matching,
        names,
        expectations,
    })
}

/// A non-extendable `m`-edge matching with many odd ears whose cyclic
/// connectivity is one short of case (i). `a` needs `rho` deficient pairs,
/// `rho = ceil((m+1)(r-1)/2)`; `a2` needs `rho` when `m` and `r` are both
/// even and `rho + 1` otherwise.
pub fn build_sharpness_lambda(
    m: usize,
    r: usize,
    a: &DeficientBipartiteBase,
    a2: &DeficientBipartiteBase,
) -> Result<ConstructionOutput> {
    check_mr(m, r)?;
    let rho = ((m + 1) * (r - 1)).div_ceil(2);
    let even = m.is_multiple_of(2) && r.is_multiple_of(2);
    let (up, down) = (ceil_half(r), r / 2);
    let shift = usize::from(!even);
    check_base(a, r, rho, "first base")?;
    check_base(a2, r, rho + shift, "second base")?;
    let a1 = a.paired_by_disjoint_paths()?;
    let a2 = a2.paired_by_disjoint_paths()?;

    let mut asm = Assembly::new();
    let mut halves = Vec::new();
    for (base, prime, extra) in [(&a1, "", 0), (&a2, "'", shift)] {
        let off = asm.add_graph(&base.graph);
        let (x, y) = asm.name_base(base, off, &format!("x{prime}"), &format!("y{prime}"));
        let q = asm.vertex(format!("q{prime}"));
        let top = rho + extra;
        for i in top + 1 - up..=top {
            asm.join(q, x[i - 1]);
        }
        for i in top + 1 - down..=top {
            asm.join(q, y[i - 1]);
        }
        let pool_x: VecDeque<Vertex> = x[..top - up].iter().copied().collect();
        let pool_y: VecDeque<Vertex> = y[..top - down].iter().copied().collect();
        halves.push(((off..=q).count(), pool_x, pool_y));
    }
    let bs: Vec<Vertex> = (1..=m).map(|i| asm.vertex(format!("b_{i}"))).collect();
    let ws: Vec<Vertex> = (1..=m).map(|i| asm.vertex(format!("w_{i}"))).collect();
    for i in 0..m {
        asm.join(bs[i], ws[i]);
    }

    let (hi, lo) = (r / 2, (r - 1) / 2);
    for i in 0..m {
        let (b1, b2) = if i == m - 1 && !even { (hi - 1, lo + 1) } else { (hi, lo) };
        // b's take x-side vertices and w's y-side ones where possible, so
        // that b..x~y..w walks close odd ears
        for (v, counts, b_like) in [(bs[i], [b1, b2], true), (ws[i], [lo, hi], false)] {
            for (h, &count) in halves.iter_mut().zip(&counts) {
                let (_, px, py) = h;
                let picked = if b_like {
                    take_preferring(px, py, count, "U")?
                } else {
                    take_preferring(py, px, count, "U")?
                };
                for t in picked {
                    asm.join(v, t);
                }
            }
        }
    }
    debug_assert!(halves.iter().all(|(_, px, py)| px.is_empty() && py.is_empty()));

    let (graph, names) = asm.finish()?;
    let matching = Matching::new(&graph, bs.iter().zip(&ws).map(|(&b, &w)| (b, w)))?;
    let lambda = if even { m * (r - 1) } else { m * (r - 1) - 1 };
    let expectations = vec![
        Expectation::guaranteed(Check::Regular(r)),
        Expectation::guaranteed(Check::EvenOrder),
        Expectation::guaranteed(Check::MatchingSize(m)),
        Expectation::guaranteed(Check::BarrierShape {
            s: Vec::new(),
            singletons: 0,
            large: vec![halves[0].0, halves[1].0],
        }),
        Expectation::asymptotic(Check::OddEarsAtLeast(m * r - up + 1)),
        Expectation::asymptotic(Check::LambdaCEquals(lambda)),
    ];
    Ok(ConstructionOutput {
        family: Family::SharpnessLambda,
        params: params(&[("m", m), ("r", r), ("rho", rho)]),
        graph,
        matching,
        names,
        expectations,
    })
}

/// A non-extendable `m`-edge matching whose odd-ear count is one short of
/// case (ii). `base` needs exactly `m` deficient pairs, each pair joined by
/// the removed edge.
pub fn build_sharpness_ii(
    m: usize,
    r: usize,
    base: &DeficientBipartiteBase,
) -> Result<ConstructionOutput> {
    check_mr(m, r)?;
    check_base(base, r, m, "base")?;
    let mut a = Assembly::new();
    let off = a.add_graph(&base.graph);
    let (x, y) = a.name_base(base, off, "x", "y");
    a.join(x[0], x[1]);
    a.join(y[0], y[1]);
    for i in 2..m {
        a.join(x[i], y[i]);
    }
    let (graph, mut names) = a.finish()?;

    let mut taken: Vec<Vertex> = x.iter().chain(&y[1..]).copied().collect();
    taken.sort_unstable();
    let x2_star = graph
        .neighbors(y[1])
        .iter()
        .copied()
        .find(|&v| v != y[0] && taken.binary_search(&v).is_err())
        .ok_or_else(|| Error::domain("y_2 has no neighbor outside V(M) other than y_1"))?;
    names.insert("x_2*".into(), x2_star);
    let mut edges = vec![(x[0], x[1]), (y[1], x2_star)];
    edges.extend((2..m).map(|i| (x[i], y[i])));
    let matching = Matching::new(&graph, edges)?;

    let colour = base.graph.two_coloring().expect("base is bipartite");
    let x_side = colour[x[0] - off];
    // G - V(M) is the base minus V(M); its x-side is two short
    let s: Vec<Vertex> = (0..base.graph.n())
        .filter(|&v| colour[v] == x_side)
        .map(|v| v + off)
        .filter(|&v| !matching.covers(v))
        .collect();
    let expectations = vec![
        Expectation::guaranteed(Check::Regular(r)),
        Expectation::guaranteed(Check::EvenOrder),
        Expectation::guaranteed(Check::MatchingSize(m)),
        Expectation::guaranteed(Check::UnbalancedRemainder(2)),
        Expectation::guaranteed(Check::BarrierShape {
            singletons: s.len() + 2,
            s,
            large: Vec::new(),
        }),
        Expectation::asymptotic(Check::OddEarsAtLeast((m - 1) * r)),
        Expectation::asymptotic(Check::LambdaCAtLeast((2 * m - 1) * (r - 1))),
    ];
    Ok(ConstructionOutput {
        family: Family::SharpnessIi,
        params: params(&[("m", m), ("r", r), ("base_n", base.graph.n())]),
        graph,
        matching,
        names,
        expectations,
    })
}

/// Builds `family` on the smallest bases [`smallest_base`] finds. `param` is
/// `k` for [`Family::Lemma3`] (where `r` must be 3) and `m` otherwise.
pub fn smallest_instance(family: Family, param: usize, r: usize) -> Result<ConstructionOutput> {
    match family {
        Family::Lemma3 => {
            if r != 3 {
                return Err(Error::domain("the lemma 3 family is cubic"));
            }
            if param < 2 {
                return Err(Error::domain(format!("need k >= 2, got {param}")));
            }
            let base = smallest_base(3, 4 * param + 2, 3, false)?;
            build_lemma3_counterexample(param, &base)
        }
        Family::SharpnessI => {
            check_mr(param, r)?;
            let alpha = param * (r - 1);
            let a1 = smallest_base(r, alpha + ceil_half(r), 2, true)?;
            let a2 = smallest_base(r, alpha, 2, true)?;
            build_sharpness_i(param, r, &a1, &a2)
        }
        Family::SharpnessLambda => {
            check_mr(param, r)?;
            let rho = ((param + 1) * (r - 1)).div_ceil(2);
            let a = smallest_base(r, rho, 2, true)?;
            let a2 = if param.is_multiple_of(2) && r.is_multiple_of(2) {
                a.clone()
            } else {
                smallest_base(r, rho + 1, 2, true)?
            };
            build_sharpness_lambda(param, r, &a, &a2)
        }
        Family::SharpnessIi => {
            check_mr(param, r)?;
            let base = smallest_base(r, param, 2, false)?;
            build_sharpness_ii(param, r, &base)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gamma;
    use crate::fixtures;
    use crate::matching::{extend_matching, is_distance_d_matching};

    fn distinct_names(out: &ConstructionOutput) {
        let mut v: Vec<Vertex> = out.names.values().copied().collect();
        v.sort_unstable();
        let len = v.len();
        v.dedup();
        assert_eq!(v.len(), len);
    }

    #[test]
    fn lemma3_small() {
        let out = smallest_instance(Family::Lemma3, 2, 3).unwrap();
        assert_eq!(out.graph.is_regular(), Some(3));
        assert!(out.graph.is_bipartite());
        assert_eq!(out.matching.size(), 5);
        assert!(is_distance_d_matching(&out.graph, &out.matching, 4));
        distinct_names(&out);
        let base = smallest_base(3, 10, 3, false).unwrap();
        assert!(build_lemma3_counterexample(1, &base).is_err());
    }

    #[test]
    fn sharpness_i_small() {
        let out = smallest_instance(Family::SharpnessI, 2, 3).unwrap();
        assert_eq!(out.graph.is_regular(), Some(3));
        assert_eq!(out.graph.n() % 2, 0);
        assert!(!extend_matching(&out.graph, &out.matching).unwrap().is_extended());
        distinct_names(&out);
    }

    #[test]
    fn sharpness_lambda_small() {
        for (m, r) in [(2, 3), (2, 4), (3, 3)] {
            let out = smallest_instance(Family::SharpnessLambda, m, r).unwrap();
            assert_eq!(out.graph.is_regular(), Some(r), "m={m} r={r}");
            assert!(!extend_matching(&out.graph, &out.matching).unwrap().is_extended());
        }
    }

    #[test]
    fn sharpness_ii_on_gamma() {
        let base = gamma(&fixtures::tutte_coxeter(), 2, 2).unwrap();
        let out = build_sharpness_ii(2, 3, &base).unwrap();
        assert_eq!(out.graph.is_regular(), Some(3));
        assert_eq!(out.graph.n(), 30);
        assert!(!extend_matching(&out.graph, &out.matching).unwrap().is_extended());
        assert!(build_sharpness_ii(3, 3, &base).is_err());
    }

    #[test]
    fn parameter_errors() {
        assert!(smallest_instance(Family::SharpnessI, 1, 3).is_err());
        assert!(smallest_instance(Family::Lemma3, 2, 4).is_err());
        let base = gamma(&fixtures::tutte_coxeter(), 2, 2).unwrap();
        assert!(build_sharpness_i(2, 3, &base, &base).is_err());
    }
}
