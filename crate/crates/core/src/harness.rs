//! Checks of the extension theorem on concrete instances: hypothesis
//! evaluation, the verdict, the tree-boundary lemma, the counting claims
//! inside the proof, and seeded falsification sweeps.

use std::path::{Path, PathBuf};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{
    cyclic_edge_connectivity_with, odd_cyclic_edge_connectivity_with, ConnectivityOptions,
    ConnectivityValue,
};
use crate::ears::{bipartite_ear_packing, max_odd_ear_packing, SearchOptions, SearchOutcome};
use crate::error::{Error, Result};
use crate::generators::{random_regular, random_regular_bipartite, rng};
use crate::graph::{membership, normalize_vertex_set, Edge, Extended, Format, Graph, Vertex};
use crate::matching::{
    eq1_sides, extend_matching, heavy_neighbor_exists, is_distance_d_matching, min_edge_distance,
    verify_barrier, BarrierCertificate, Eq1Sides, ExtensionResult, Matching,
};

/// Search limits shared by the harness. `EARPACK_BUDGET` overrides the
/// defaults as `NODES` or `NODES,CYCLES`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub ear_nodes: u64,
    pub max_cycles: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            ear_nodes: SearchOptions::default().node_budget,
            max_cycles: ConnectivityOptions::default().max_cycles,
        }
    }
}

impl Budget {
    pub const ENV: &'static str = "EARPACK_BUDGET";

    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::domain(format!("budget {text:?} is not NODES or NODES,CYCLES"));
        let mut parts = text.split(',').map(str::trim);
        let nodes = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let mut b = Budget {
            ear_nodes: nodes,
            ..Budget::default()
        };
        if let Some(c) = parts.next() {
            b.max_cycles = c.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(b)
    }

    /// Defaults overridden by the environment, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    fn connectivity(self) -> ConnectivityOptions {
        ConnectivityOptions {
            max_cycles: self.max_cycles,
        }
    }
}

/// A connectivity value, or only an upper bound when the cycle cap was hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Connectivity {
    Exact(ConnectivityValue),
    Unknown { upper_bound: Extended },
}

impl Connectivity {
    fn measure(result: Result<ConnectivityValue>) -> Result<Self> {
        match result {
            Ok(v) => Ok(Connectivity::Exact(v)),
            Err(Error::Inexact { upper_bound, .. }) => Ok(Connectivity::Unknown { upper_bound }),
            Err(e) => Err(e),
        }
    }

    pub fn value(&self) -> Option<Extended> {
        match self {
            Connectivity::Exact(v) => Some(v.value),
            Connectivity::Unknown { .. } => None,
        }
    }

    /// Known to be at least `bound`.
    pub fn at_least(&self, bound: usize) -> bool {
        self.value().is_some_and(|v| v.at_least(bound))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KFound {
    /// Size of the best packing found.
    pub k: usize,
    pub outcome: SearchOutcome,
    pub upper_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub even_order: bool,
    /// Informational: the unified statement does not need it.
    pub distance3: bool,
    /// Lowest vertex outside `V(M)` with `r - 1` neighbors in `V(M)`.
    pub heavy_neighbor: Option<Vertex>,
    pub k_found: KFound,
    pub lambda_c: Connectivity,
    pub lambda_oc: Connectivity,
    pub theta: usize,
    pub case_i: bool,
    pub case_ii: bool,
}

impl HypothesisReport {
    /// `k` needed by case (i) and case (ii).
    pub fn ear_thresholds(&self) -> (usize, usize) {
        thresholds(self.m, self.r)
    }

    /// The case flags recomputed from the stored fields.
    pub fn recompute_cases(&self) -> (bool, bool) {
        let (m, r) = (self.m, self.r);
        let common = m >= 2
            && r >= 3
            && self.even_order
            && (m < r || self.heavy_neighbor.is_none());
        let (ti, tii) = self.ear_thresholds();
        let case_i =
            common && self.k_found.k >= ti && self.lambda_c.at_least(m * r - m + self.theta);
        let case_ii =
            common && self.k_found.k >= tii && self.lambda_oc.at_least((2 * m - 1) * (r - 1));
        (case_i, case_ii)
    }

    pub fn hypothesis_met(&self) -> bool {
        self.case_i || self.case_ii
    }
}

fn thresholds(m: usize, r: usize) -> (usize, usize) {
    ((m * r + 1).saturating_sub(r.div_ceil(2)), (m * r + 1).saturating_sub(r))
}

/// Evaluates every hypothesis of the theorem for `(g, M)`. Budget-limited
/// quantities count as not meeting their bound.
pub fn evaluate_hypotheses(g: &Graph, m: &Matching, budget: Budget) -> Result<HypothesisReport> {
    let lambda_c = Connectivity::measure(cyclic_edge_connectivity_with(g, budget.connectivity()))?;
    let lambda_oc =
        Connectivity::measure(odd_cyclic_edge_connectivity_with(g, budget.connectivity()))?;
    evaluate_with(g, m, budget, lambda_c, lambda_oc)
}

fn evaluate_with(
    g: &Graph,
    m: &Matching,
    budget: Budget,
    lambda_c: Connectivity,
    lambda_oc: Connectivity,
) -> Result<HypothesisReport> {
    m.check_in(g)?;
    let size = m.size();
    if size < 2 {
        return Err(Error::domain(format!("the theorem needs m >= 2, got m = {size}")));
    }
    let r = g
        .is_regular()
        .ok_or_else(|| Error::domain("graph is not regular"))?;
    let (ti, tii) = thresholds(size, r);
    let k_found = find_ears(g, m, ti, tii, budget)?;
    let theta = usize::from(size.is_multiple_of(2) && r.is_multiple_of(2));
    let mut report = HypothesisReport {
        n: g.n(),
        r,
        m: size,
        even_order: g.n().is_multiple_of(2),
        distance3: is_distance_d_matching(g, m, 3),
        heavy_neighbor: heavy_neighbor_exists(g, m, r),
        k_found,
        lambda_c,
        lambda_oc,
        theta,
        case_i: false,
        case_ii: false,
    };
    (report.case_i, report.case_ii) = report.recompute_cases();
    Ok(report)
}

/// Target search at the larger threshold, then at the smaller one if the
/// first run was inconclusive.
fn find_ears(g: &Graph, m: &Matching, ti: usize, tii: usize, budget: Budget) -> Result<KFound> {
    let run = |target| {
        max_odd_ear_packing(
            g,
            m.covered(),
            SearchOptions {
                target: Some(target),
                node_budget: budget.ear_nodes,
            },
        )
    };
    let mut best = run(ti.max(tii))?;
    if best.outcome == SearchOutcome::Unknown && best.k() < ti.min(tii) {
        let second = run(ti.min(tii))?;
        if second.k() > best.k() || second.outcome != SearchOutcome::Unknown {
            best = second;
        }
    }
    Ok(KFound {
        k: best.k(),
        outcome: best.outcome,
        upper_bound: best.upper_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub report: HypothesisReport,
    pub hypothesis_met: bool,
    pub extension: ExtensionResult,
    /// False would refute the theorem.
    pub consistent: bool,
}

pub fn check_theorem(g: &Graph, m: &Matching, budget: Budget) -> Result<TheoremVerdict> {
    let report = evaluate_hypotheses(g, m, budget)?;
    verdict(g, m, report)
}

fn verdict(g: &Graph, m: &Matching, report: HypothesisReport) -> Result<TheoremVerdict> {
    let extension = extend_matching(g, m)?;
    let hypothesis_met = report.hypothesis_met();
    Ok(TheoremVerdict {
        consistent: !hypothesis_met || extension.is_extended(),
        report,
        hypothesis_met,
        extension,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma10Result {
    /// `|E(T, V - T)|`.
    pub lhs: usize,
    /// `r |L|`.
    pub rhs: usize,
    pub holds: bool,
}

/// Compares the boundary of the induced tree `T` with `r |L|`, after checking
/// every precondition.
pub fn lemma10_check(g: &Graph, t: &[Vertex], l: &[Vertex], d: usize) -> Result<Lemma10Result> {
    let r = g
        .is_regular()
        .ok_or_else(|| Error::domain("graph is not regular"))?;
    if !g.is_connected() {
        return Err(Error::domain("graph is not connected"));
    }
    if r < 2 || d < 2 || (r - 2) * (d - 2) < 4 {
        return Err(Error::domain(format!("(r-2)(d-2) >= 4 fails for r = {r}, d = {d}")));
    }
    let t = normalize_vertex_set(g, t)?;
    let l = normalize_vertex_set(g, l)?;
    if t.is_empty() {
        return Err(Error::domain("T is empty"));
    }
    let (tree, _) = g.induced_subgraph(&t)?;
    if !tree.is_connected() || tree.num_edges() + 1 != tree.n() {
        return Err(Error::domain("T does not induce a tree"));
    }
    let in_t = membership(g.n(), &t);
    if let Some(&v) = l.iter().find(|&&v| !in_t[v]) {
        return Err(Error::domain(format!("L contains {v}, which is not in T")));
    }
    for (i, &a) in l.iter().enumerate() {
        let dist = g.bfs_distances(a);
        if let Some(&b) = l[i + 1..].iter().find(|&&b| dist[b].is_some_and(|x| x < d)) {
            return Err(Error::domain(format!("L is not a distance-{d} set: {a} and {b} are too close")));
        }
    }
    let lhs = g.boundary_size(&in_t);
    let rhs = r * l.len();
    Ok(Lemma10Result {
        lhs,
        rhs,
        holds: lhs >= rhs,
    })
}

/// A random induced tree of `g` with at most `max_size` vertices and a
/// random distance-`d` subset of it, grown from a seeded start vertex.
pub fn sample_tree_instance(
    g: &Graph,
    max_size: usize,
    d: usize,
    seed: u64,
) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut rng = rng(seed);
    let n = g.n();
    if n == 0 || max_size == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut in_t = vec![false; n];
    let mut hits = vec![0usize; n];
    let start = rng.random_range(0..n);
    let mut tree = vec![start];
    in_t[start] = true;
    for &w in g.neighbors(start) {
        hits[w] += 1;
    }
    while tree.len() < max_size {
        // a vertex with exactly one tree neighbour keeps T induced and acyclic
        let frontier: Vec<Vertex> = (0..n).filter(|&v| !in_t[v] && hits[v] == 1).collect();
        let Some(&v) = frontier.choose(&mut rng) else {
            break;
        };
        in_t[v] = true;
        tree.push(v);
        for &w in g.neighbors(v) {
            hits[w] += 1;
        }
    }
    tree.sort_unstable();
    let mut order = tree.clone();
    order.shuffle(&mut rng);
    let mut l: Vec<Vertex> = Vec::new();
    for v in order {
        let dist = g.bfs_distances(v);
        if l.iter().all(|&u| dist[u].is_none_or(|x| x >= d)) && rng.random_bool(0.7) {
            l.push(v);
        }
    }
    l.sort_unstable();
    (tree, l)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRow {
    pub claim: String,
    /// Index into the certificate's component list, when per component.
    pub component: Option<usize>,
    pub value: usize,
    pub bound: usize,
    pub holds: bool,
    /// Only asserted rows count as violations.
    pub asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub hypothesis_met: bool,
    pub rows: Vec<ClaimRow>,
    pub eq1: Eq1Sides,
    pub violations: usize,
}

/// Evaluates the counting claims of the proof on a verified barrier. The
/// per-component bounds are asserted only when `hypothesis_met`; the edge
/// count identity is asserted always.
pub fn claim_invariants(
    g: &Graph,
    m: &Matching,
    cert: &BarrierCertificate,
    hypothesis_met: bool,
) -> Result<ClaimReport> {
    verify_barrier(g, m, cert).map_err(|e| Error::domain(format!("barrier rejected: {e}")))?;
    let eq1 = eq1_sides(g, m, &cert.s_set)?;
    let r = g.is_regular().expect("eq1_sides checked regularity");
    let mut rows = Vec::new();
    for (i, comp) in cert.components.iter().enumerate() {
        if comp.len() % 2 == 0 {
            continue;
        }
        let boundary = g.boundary_size(&membership(g.n(), comp));
        rows.push(ClaimRow {
            claim: "odd_component_boundary".into(),
            component: Some(i),
            value: boundary,
            bound: r,
            holds: boundary >= r,
            asserted: hypothesis_met,
        });
    }
    rows.push(ClaimRow {
        claim: "non_bipartite_odd_components".into(),
        component: None,
        value: cert.q2,
        bound: 1,
        holds: cert.q2 <= 1,
        asserted: hypothesis_met,
    });
    let mut violations = rows.iter().filter(|r| r.asserted && !r.holds).count();
    if eq1.lhs != eq1.rhs {
        violations += 1;
    }
    Ok(ClaimReport {
        hypothesis_met,
        rows,
        eq1,
        violations,
    })
}

/// Distance-3 matchings with at least `min_size` edges, in a seeded
/// depth-first order, at most `cap` of them.
pub fn distance3_matchings(g: &Graph, min_size: usize, cap: usize, seed: u64) -> Vec<Matching> {
    let mut edges: Vec<Edge> = g.edges().collect();
    edges.shuffle(&mut rng(seed));
    let dist: Vec<Vec<Option<usize>>> = (0..g.n()).map(|v| g.bfs_distances(v)).collect();
    let far = |a: Edge, b: Edge| {
        [a.0, a.1]
            .iter()
            .all(|&u| [b.0, b.1].iter().all(|&v| dist[u][v].is_none_or(|x| x >= 3)))
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        i: usize,
        edges: &[Edge],
        chosen: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
        min_size: usize,
        cap: usize,
        far: &dyn Fn(Edge, Edge) -> bool,
    ) {
        for j in i..edges.len() {
            if out.len() >= cap {
                return;
            }
            if chosen.iter().all(|&c| far(c, edges[j])) {
                chosen.push(edges[j]);
                if chosen.len() >= min_size {
                    out.push(chosen.clone());
                }
                walk(j + 1, edges, chosen, out, min_size, cap, far);
                chosen.pop();
            }
        }
    }
    walk(0, &edges, &mut chosen, &mut out, min_size.max(1), cap, &far);
    out.into_iter()
        .map(|list| Matching::new(g, list).expect("distance-3 edges form a matching"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParams {
    pub degrees: Vec<usize>,
    /// Inclusive range of orders; only even orders are sampled.
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub budget: Budget,
    pub max_matchings: usize,
    /// Also test single-edge matchings (outside the theorem's range).
    pub include_m1: bool,
    /// Sample bipartite graphs and also check the odd-ear lemma.
    pub bipartite: bool,
    /// Where reproduction bundles go; none are written when absent.
    pub bundle_dir: Option<PathBuf>,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams {
            degrees: vec![3],
            n_min: 4,
            n_max: 14,
            samples: 100,
            seed: 0,
            budget: Budget::default(),
            max_matchings: 200,
            include_m1: false,
            bipartite: false,
            bundle_dir: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub samples: usize,
    pub instances: usize,
    pub hypothesis_met: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    /// Hypothesis evaluations cut short by the budget.
    pub unknown: usize,
    pub max_matchings: usize,
    pub lemma3_checked: usize,
    pub lemma3_violations: usize,
    pub bundles: Vec<String>,
}

/// Everything needed to replay one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub version: String,
    pub sweep_seed: u64,
    pub sample: usize,
    pub graph_seed: u64,
    pub graph6: String,
    pub matching: Matching,
    pub verdict: Option<TheoremVerdict>,
    pub note: String,
}

#[derive(Default)]
struct Tally {
    summary: SweepSummary,
    failures: Vec<Bundle>,
}

struct Job {
    sample: usize,
    n: usize,
    r: usize,
    graph_seed: u64,
}

/// Samples regular graphs and tests the theorem on capped families of
/// distance-3 matchings. Jobs run in parallel; the summary is assembled in
/// sample order.
pub fn falsification_sweep(params: &SweepParams) -> Result<SweepSummary> {
    let mut master = rng(params.seed);
    let mut jobs = Vec::with_capacity(params.samples);
    for sample in 0..params.samples {
        let r = params.degrees[sample % params.degrees.len().max(1)];
        let orders: Vec<usize> = (params.n_min..=params.n_max)
            .filter(|&n| n % 2 == 0 && if params.bipartite { n >= 2 * r } else { n > r })
            .collect();
        let Some(&n) = orders.choose(&mut master) else {
            return Err(Error::domain(format!("no even order in range admits degree {r}")));
        };
        jobs.push(Job {
            sample,
            n,
            r,
            graph_seed: master.random(),
        });
    }
    let tallies: Vec<Result<Tally>> = jobs.par_iter().map(|job| run_job(params, job)).collect();
    let mut total = SweepSummary {
        samples: params.samples,
        max_matchings: params.max_matchings,
        ..SweepSummary::default()
    };
    let mut failures = Vec::new();
    for t in tallies {
        let t = t?;
        let s = t.summary;
        total.instances += s.instances;
        total.hypothesis_met += s.hypothesis_met;
        total.consistent += s.consistent;
        total.inconsistent += s.inconsistent;
        total.unknown += s.unknown;
        total.lemma3_checked += s.lemma3_checked;
        total.lemma3_violations += s.lemma3_violations;
        failures.extend(t.failures);
    }
    if let Some(dir) = &params.bundle_dir {
        for b in &failures {
            total.bundles.push(write_bundle(dir, b)?);
        }
    }
    Ok(total)
}

fn write_bundle(dir: &Path, b: &Bundle) -> Result<String> {
    let io = |e: std::io::Error| Error::domain(format!("cannot write bundle: {e}"));
    std::fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(format!("bundle-{}-{}-{}.json", b.sweep_seed, b.sample, b.matching.size()));
    let text = serde_json::to_string_pretty(b).expect("bundles serialize");
    std::fs::write(&path, text).map_err(io)?;
    Ok(path.display().to_string())
}

fn run_job(params: &SweepParams, job: &Job) -> Result<Tally> {
    let g = if params.bipartite {
        random_regular_bipartite(job.n / 2, job.r, job.graph_seed)?
    } else {
        random_regular(job.n, job.r, job.graph_seed)?
    };
    let budget = params.budget;
    let lambda_c = Connectivity::measure(cyclic_edge_connectivity_with(&g, budget.connectivity()))?;
    let lambda_oc =
        Connectivity::measure(odd_cyclic_edge_connectivity_with(&g, budget.connectivity()))?;
    let min_size = if params.include_m1 { 1 } else { 2 };
    let mut tally = Tally::default();
    let bundle = |m: &Matching, verdict: Option<TheoremVerdict>, note: &str| Bundle {
        version: env!("CARGO_PKG_VERSION").to_string(),
        sweep_seed: params.seed,
        sample: job.sample,
        graph_seed: job.graph_seed,
        graph6: String::from_utf8(crate::graph::serialize_graph(&g, Format::Graph6))
            .expect("graph6 is ASCII")
            .trim_end()
            .to_string(),
        matching: m.clone(),
        verdict,
        note: note.to_string(),
    };
    for m in distance3_matchings(&g, min_size, params.max_matchings, job.graph_seed) {
        let s = &mut tally.summary;
        s.instances += 1;
        if params.bipartite {
            let d = min_edge_distance(&g, &m).finite().unwrap_or(usize::MAX);
            if d >= 3 && !(job.r == 3 && (d == 3 || d == 4)) {
                if let Connectivity::Exact(lc) = &lambda_c {
                    let want = lc.value.finite().map_or(m.size() * job.r, |v| v.min(m.size() * job.r));
                    let k = bipartite_ear_packing(&g, &m)?.k();
                    s.lemma3_checked += 1;
                    if k < want {
                        s.lemma3_violations += 1;
                        tally.failures.push(bundle(&m, None, "odd-ear lemma bound missed"));
                    }
                }
            }
        }
        if m.size() < 2 {
            // single edges: only extension is recorded, the theorem is silent
            let s = &mut tally.summary;
            s.consistent += 1;
            continue;
        }
        let report = evaluate_with(&g, &m, budget, lambda_c.clone(), lambda_oc.clone())?;
        let unknown = report.k_found.outcome == SearchOutcome::Unknown
            || report.lambda_c.value().is_none()
            || report.lambda_oc.value().is_none();
        let v = verdict(&g, &m, report)?;
        let s = &mut tally.summary;
        s.unknown += usize::from(unknown);
        s.hypothesis_met += usize::from(v.hypothesis_met);
        if v.consistent {
            s.consistent += 1;
        } else {
            s.inconsistent += 1;
            tally.failures.push(bundle(&m, Some(v), "hypotheses hold but M does not extend"));
        }
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{smallest_instance, Family};
    use crate::fixtures;

    fn small_budget() -> Budget {
        Budget {
            ear_nodes: 500_000,
            max_cycles: 100_000,
        }
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(Budget::parse("10").unwrap().ear_nodes, 10);
        let b = Budget::parse("10, 20").unwrap();
        assert_eq!((b.ear_nodes, b.max_cycles), (10, 20));
        assert!(Budget::parse("x").is_err());
        assert!(Budget::parse("1,2,3").is_err());
    }

    #[test]
    fn heawood_case_ii() {
        let h = fixtures::heawood();
        // diameter 3 and bipartite: no two edges are at distance 3
        assert!(distance3_matchings(&h, 2, 10, 0).is_empty());
        let m = Matching::new(&h, [(0, 1), (3, 4)]).unwrap();
        let report = evaluate_hypotheses(&h, &m, small_budget()).unwrap();
        assert_eq!(report.lambda_oc.value(), Some(Extended::Infinite));
        assert!(report.k_found.k >= 4);
        assert!(report.case_ii);
        assert_eq!(report.recompute_cases(), (report.case_i, report.case_ii));
        let v = check_theorem(&h, &m, small_budget()).unwrap();
        assert!(v.consistent && v.extension.is_extended());
    }

    #[test]
    fn empty_matching_rejected() {
        let h = fixtures::heawood();
        assert!(evaluate_hypotheses(&h, &Matching::empty(), small_budget()).is_err());
    }

    #[test]
    fn sharpness_instances_fail_hypotheses() {
        let out = smallest_instance(Family::SharpnessIi, 2, 3).unwrap();
        let v = check_theorem(&out.graph, &out.matching, small_budget()).unwrap();
        assert!(!v.hypothesis_met);
        assert!(!v.extension.is_extended());
        assert!(v.consistent);
    }

    #[test]
    fn lemma10_examples() {
        let g = fixtures::complete(5);
        // r = 4 needs d >= 4; K5 has diameter 1 so only |L| <= 1 works
        let single = lemma10_check(&g, &[0], &[0], 4).unwrap();
        assert_eq!((single.lhs, single.rhs), (4, 4));
        assert!(single.holds);
        let none = lemma10_check(&g, &[0, 1], &[], 4).unwrap();
        assert_eq!(none.rhs, 0);
        assert!(lemma10_check(&g, &[0, 1, 2], &[], 4).is_err());
        assert!(lemma10_check(&g, &[0], &[0], 3).is_err());
        assert!(lemma10_check(&g, &[0, 1], &[0, 1], 4).is_err());
    }

    #[test]
    fn sampled_trees_are_valid() {
        let g = random_regular(20, 4, 3).unwrap();
        for seed in 0..20 {
            let (t, l) = sample_tree_instance(&g, 8, 4, seed);
            let res = lemma10_check(&g, &t, &l, 4).unwrap();
            assert!(res.holds);
        }
    }

    #[test]
    fn claims_on_sharpness_instance() {
        let out = smallest_instance(Family::SharpnessI, 2, 3).unwrap();
        let ext = extend_matching(&out.graph, &out.matching).unwrap();
        let cert = ext.barrier().unwrap();
        let report = claim_invariants(&out.graph, &out.matching, cert, false).unwrap();
        assert_eq!(report.eq1.lhs, report.eq1.rhs);
        assert_eq!(report.violations, 0);
        assert!(report.rows.iter().all(|r| !r.asserted));
    }

    #[test]
    fn small_sweep_is_consistent_and_deterministic() {
        let params = SweepParams {
            samples: 6,
            n_min: 8,
            n_max: 10,
            seed: 7,
            max_matchings: 20,
            budget: small_budget(),
            ..SweepParams::default()
        };
        let a = falsification_sweep(&params).unwrap();
        assert_eq!(a.inconsistent, 0);
        assert!(a.instances > 0);
        assert_eq!(a, falsification_sweep(&params).unwrap());
        let empty = falsification_sweep(&SweepParams {
            samples: 0,
            ..params
        })
        .unwrap();
        assert_eq!(empty.instances, 0);
    }

    #[test]
    fn bipartite_sweep_checks_ear_lemma() {
        let params = SweepParams {
            samples: 4,
            n_min: 20,
            n_max: 24,
            seed: 1,
            max_matchings: 10,
            bipartite: true,
            budget: small_budget(),
            ..SweepParams::default()
        };
        let s = falsification_sweep(&params).unwrap();
        assert_eq!(s.lemma3_violations, 0);
        assert_eq!(s.inconsistent, 0);
    }
}
