//! Builders for non-extendable matchings in regular graphs and the deficient
//! bipartite bases they are assembled from.
//!
//! Every builder performs the assembly on whatever base it is handed. Claims
//! that follow from the assembly alone are tagged
//! [`Basis::GuaranteedByAssembly`] and checked hard by [`verify_expectations`];
//! claims that need high-girth bases are tagged [`Basis::PaperAsymptotic`] and
//! only reported.

mod bases;
mod builders;
mod verify;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::matching::Matching;

pub use bases::{
    base_catalog, gamma, shortest_cycle, smallest_base, spread_deficient_base, BaseMeasurements,
    DeficientBipartiteBase,
};
pub use builders::{
    build_lemma3_counterexample, build_sharpness_i, build_sharpness_ii, build_sharpness_lambda,
    smallest_instance,
};
pub use verify::{verify_expectations, ExpectationReport, ExpectationRow, RowStatus, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Lemma3,
    SharpnessI,
    SharpnessLambda,
    SharpnessIi,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma3" => Ok(Family::Lemma3),
            "sharpness-i" | "sharpness_i" => Ok(Family::SharpnessI),
            "sharpness-lambda" | "sharpness_lambda" => Ok(Family::SharpnessLambda),
            "sharpness-ii" | "sharpness_ii" => Ok(Family::SharpnessIi),
            _ => Err(Error::domain(format!(
                "unknown family {s:?}; expected lemma3, sharpness-i, sharpness-lambda or sharpness-ii"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    GuaranteedByAssembly,
    PaperAsymptotic,
}

/// A measurable property and its predicted value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "property", content = "predicted", rename_all = "snake_case")]
pub enum Check {
    Regular(usize),
    EvenOrder,
    Bipartite,
    MatchingSize(usize),
    DistanceMatching(usize),
    /// `M` is blocked and `S` is a verified barrier whose remainder has
    /// `singletons` isolated vertices and larger components of the given sizes.
    BarrierShape {
        #[serde(rename = "S")]
        s: Vec<Vertex>,
        singletons: usize,
        large: Vec<usize>,
    },
    /// `G - V(M)` is bipartite with sides differing by `excess`.
    UnbalancedRemainder(usize),
    CutSize {
        side: Vec<Vertex>,
        size: usize,
    },
    OddEarsAtMost(usize),
    OddEarsAtLeast(usize),
    LambdaCAtLeast(usize),
    LambdaCEquals(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub check: Check,
    pub basis: Basis,
}

impl Expectation {
    pub fn guaranteed(check: Check) -> Self {
        Expectation {
            check,
            basis: Basis::GuaranteedByAssembly,
        }
    }

    pub fn asymptotic(check: Check) -> Self {
        Expectation {
            check,
            basis: Basis::PaperAsymptotic,
        }
    }
}

/// A built graph with its designated matching, role labels and expectations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionOutput {
    pub family: Family,
    pub params: BTreeMap<String, usize>,
    pub graph: Graph,
    pub matching: Matching,
    /// Role label (`"x_3"`, `"q_1"`, `"b_m"`, ...) to vertex.
    pub names: BTreeMap<String, Vertex>,
    pub expectations: Vec<Expectation>,
}

/// Everything in a [`ConstructionOutput`] except the graph, for storing next
/// to a graph file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: Family,
    pub params: BTreeMap<String, usize>,
    pub matching: Matching,
    pub names: BTreeMap<String, Vertex>,
    pub expectations: Vec<Expectation>,
}

impl ConstructionOutput {
    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            family: self.family,
            params: self.params.clone(),
            matching: self.matching.clone(),
            names: self.names.clone(),
            expectations: self.expectations.clone(),
        }
    }

    /// Reattaches a sidecar to its graph, checking the matching and names.
    pub fn from_parts(graph: Graph, sidecar: Sidecar) -> Result<Self> {
        sidecar.matching.check_in(&graph)?;
        let mut seen: Vec<Vertex> = sidecar.names.values().copied().collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("two labels name the same vertex"));
        }
        if seen.last().is_some_and(|&v| v >= graph.n()) {
            return Err(Error::domain("a label names a vertex outside the graph"));
        }
        Ok(ConstructionOutput {
            family: sidecar.family,
            params: sidecar.params,
            graph,
            matching: sidecar.matching,
            names: sidecar.names,
            expectations: sidecar.expectations,
        })
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.names.get(label).copied()
    }
}
