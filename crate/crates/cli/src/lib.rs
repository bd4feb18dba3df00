//! The `earpack` command line. [`run`] does all the work so tests can drive it
//! in-process; `main` only wires it to the real streams.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use earpack::connectivity::{
    cyclic_edge_connectivity_with, odd_cyclic_edge_connectivity_with, verify_value,
    ConnectivityOptions,
};
use earpack::constructions::{
    smallest_instance, verify_expectations, ConstructionOutput, Family, Sidecar, VerifyOptions,
};
use earpack::ears::{bipartite_ear_packing, max_odd_ear_packing, SearchOptions, SearchOutcome};
use earpack::harness::{falsification_sweep, SweepParams, SweepSummary};
use earpack::matching::{extend_matching, parse_edge_list, verify_barrier};
use earpack::{parse_graph, serialize_graph, BarrierCertificate, Budget, Error, Format, Graph, Matching};

pub const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "earpack", version, about = "Matching extension toolkit for regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Input graph format: graph6 or edgelist. Inferred from the file otherwise.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Search budget as NODES or NODES,CYCLES. Overrides EARPACK_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, degree, girth, bipartiteness and both cyclic connectivities.
    Analyze { graph: PathBuf },
    /// Extend a matching to a perfect matching or return a barrier.
    Extend {
        graph: PathBuf,
        #[arg(long)]
        matching: String,
    },
    /// Check a barrier certificate (a bare certificate or `extend` output).
    BarrierVerify {
        graph: PathBuf,
        #[arg(long)]
        matching: String,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Cyclic edge-connectivity with a cut certificate.
    Lambda {
        graph: PathBuf,
        /// Odd-cyclic edge-connectivity instead.
        #[arg(long)]
        odd: bool,
    },
    /// Edge-disjoint odd ears of a vertex set.
    Ears {
        graph: PathBuf,
        /// Vertex set as "0,1,2".
        #[arg(long, conflicts_with = "matching")]
        u: Option<String>,
        /// Use the covered vertices of this matching. Bipartite graphs are solved by flow.
        #[arg(long)]
        matching: Option<String>,
        /// Stop once this many ears are found.
        #[arg(long)]
        target: Option<usize>,
    },
    /// Build the smallest instance of a family.
    Construct {
        /// lemma3, sharpness-i, sharpness-lambda or sharpness-ii
        family: String,
        /// k for lemma3, m otherwise.
        #[arg(long, default_value_t = 2)]
        param: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Write the graph here and the sidecar next to it with a .json extension.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Measure a construction against its sidecar expectations.
    Verify {
        /// Sidecar JSON, as written by `construct`.
        sidecar: PathBuf,
        /// Graph file; defaults to the `graph6` field of the sidecar.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Random falsification sweep of the extension theorem.
    Sweep {
        /// Degrees, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        r: Vec<usize>,
        /// Orders as an inclusive range "LO..HI" or a single value.
        #[arg(long, default_value = "8..12")]
        n: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        max_matchings: usize,
        #[arg(long)]
        include_m1: bool,
        /// Sample bipartite graphs and also check the odd-ear lemma.
        #[arg(long)]
        bipartite: bool,
        #[arg(long, default_value = "earpack-bundles")]
        bundle_dir: PathBuf,
    },
    /// Rewrite a graph file in another format.
    Convert {
        input: PathBuf,
        output: PathBuf,
        /// Output format; inferred from the output extension otherwise.
        #[arg(long)]
        to: Option<String>,
    },
}

/// Exit status plus the JSON document to emit.
struct Outcome {
    value: Value,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, failed: false }
    }

    fn check(value: Value, passed: bool) -> Self {
        Outcome { value, failed: !passed }
    }
}

/// Runs one command. Returns the process exit code: 0 on success, 1 on usage
/// or input errors, 2 when a verification fails or a result is inexact.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let out = cli.out.clone();
    match execute(cli) {
        Ok(outcome) => {
            let text = render(outcome.value);
            let written = match &out {
                Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(Into::into),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e:#}");
                return 1;
            }
            if outcome.failed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Inexact { .. } | Error::Budget(_)) => 2,
                _ => 1,
            }
        }
    }
}

fn render(mut value: Value) -> String {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut text = serde_json::to_string(&value).expect("values serialize");
    text.push('\n');
    text
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn execute(cli: Cli) -> anyhow::Result<Outcome> {
    let budget = match &cli.budget {
        Some(text) => Budget::parse(text)?,
        None => Budget::from_env()?,
    };
    let format = cli.format.as_deref().map(str::parse::<Format>).transpose()?;
    let load = |path: &Path| read_graph(path, format);

    match cli.command {
        Command::Analyze { graph } => {
            let g = load(&graph)?;
            analyze(&g, budget)
        }
        Command::Extend { graph, matching } => {
            let g = load(&graph)?;
            let m = parse_matching(&g, &matching)?;
            Ok(Outcome::ok(to_value(&extend_matching(&g, &m)?)))
        }
        Command::BarrierVerify {
            graph,
            matching,
            certificate,
        } => {
            let g = load(&graph)?;
            let m = parse_matching(&g, &matching)?;
            let cert = read_certificate(&certificate)?;
            Ok(match verify_barrier(&g, &m, &cert) {
                Ok(()) => Outcome::ok(json!({ "valid": true, "S": cert.s_set, "odd": cert.odd.len() })),
                Err(defect) => Outcome::check(
                    json!({ "valid": false, "defect": defect, "message": defect.to_string() }),
                    false,
                ),
            })
        }
        Command::Lambda { graph, odd } => {
            let g = load(&graph)?;
            let opts = ConnectivityOptions {
                max_cycles: budget.max_cycles,
            };
            let result = if odd {
                odd_cyclic_edge_connectivity_with(&g, opts)
            } else {
                cyclic_edge_connectivity_with(&g, opts)
            };
            let kind = if odd { "lambda_oc" } else { "lambda_c" };
            Ok(match result {
                Ok(v) => {
                    let verified = verify_value(&g, &v, odd).is_ok();
                    let mut value = to_value(&v);
                    value["kind"] = json!(kind);
                    value["exact"] = json!(true);
                    Outcome::check(value, verified)
                }
                Err(Error::Inexact { cycles, upper_bound }) => Outcome::check(
                    json!({ "kind": kind, "exact": false, "value": null, "cycles": cycles, "upper_bound": upper_bound }),
                    false,
                ),
                Err(e) => return Err(e.into()),
            })
        }
        Command::Ears {
            graph,
            u,
            matching,
            target,
        } => {
            let g = load(&graph)?;
            ears(&g, u, matching, target, budget)
        }
        Command::Construct {
            family,
            param,
            r,
            graph_out,
        } => {
            let family: Family = family.parse()?;
            let built = smallest_instance(family, param, r)?;
            construct(&built, graph_out.as_deref())
        }
        Command::Verify { sidecar, graph } => {
            let text = fs::read(&sidecar).with_context(|| format!("reading {}", sidecar.display()))?;
            let doc: Value = serde_json::from_slice(&text)
                .map_err(|e| anyhow!("{}: not JSON: {e}", sidecar.display()))?;
            let g = match graph {
                Some(path) => load(&path)?,
                None => {
                    let g6 = doc["graph6"]
                        .as_str()
                        .ok_or_else(|| anyhow!("sidecar has no graph6 field; pass --graph"))?;
                    parse_graph(g6.as_bytes(), Format::Graph6)?
                }
            };
            let side: Sidecar = serde_json::from_value(doc)
                .map_err(|e| anyhow!("{}: bad sidecar: {e}", sidecar.display()))?;
            let built = ConstructionOutput::from_parts(g, side)?;
            let opts = VerifyOptions {
                max_cycles: budget.max_cycles.min(VerifyOptions::default().max_cycles),
                ear_budget: budget.ear_nodes.min(VerifyOptions::default().ear_budget),
            };
            let report = verify_expectations(&built, opts);
            let mut value = to_value(&report);
            value["family"] = to_value(&built.family);
            value["n"] = json!(built.graph.n());
            Ok(Outcome::check(value, report.guaranteed_hold))
        }
        Command::Sweep {
            r,
            n,
            samples,
            seed,
            max_matchings,
            include_m1,
            bipartite,
            bundle_dir,
        } => {
            let (n_min, n_max) = parse_range(&n)?;
            let params = SweepParams {
                degrees: r,
                n_min,
                n_max,
                samples,
                seed,
                budget,
                max_matchings,
                include_m1,
                bipartite,
                bundle_dir: Some(bundle_dir),
            };
            let summary = falsification_sweep(&params)?;
            Ok(Outcome::check(to_value(&summary), sweep_passed(&summary)))
        }
        Command::Convert { input, output, to } => {
            let g = load(&input)?;
            let to = match to {
                Some(t) => t.parse()?,
                None => format_from_extension(&output).unwrap_or(Format::Graph6),
            };
            fs::write(&output, serialize_graph(&g, to))
                .with_context(|| format!("writing {}", output.display()))?;
            Ok(Outcome::ok(json!({
                "n": g.n(),
                "edges": g.num_edges(),
                "format": to,
                "written": output.display().to_string(),
            })))
        }
    }
}

/// A sweep fails when any instance contradicts the theorem or the ear lemma.
pub fn sweep_passed(summary: &SweepSummary) -> bool {
    summary.inconsistent == 0 && summary.lemma3_violations == 0
}

fn analyze(g: &Graph, budget: Budget) -> anyhow::Result<Outcome> {
    let opts = ConnectivityOptions {
        max_cycles: budget.max_cycles,
    };
    let mut value = json!({
        "n": g.n(),
        "edges": g.num_edges(),
        "r": g.is_regular(),
        "girth": g.girth(),
        "bipartite": g.is_bipartite(),
        "connected": g.is_connected(),
    });
    let mut exact = true;
    for (key, result) in [
        ("lambda_c", cyclic_edge_connectivity_with(g, opts)),
        ("lambda_oc", odd_cyclic_edge_connectivity_with(g, opts)),
    ] {
        match result {
            Ok(v) => value[key] = to_value(&v.value),
            Err(Error::Inexact { upper_bound, .. }) => {
                exact = false;
                value[key] = Value::Null;
                value[format!("{key}_upper_bound")] = to_value(&upper_bound);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Outcome::check(value, exact))
}

fn ears(
    g: &Graph,
    u: Option<String>,
    matching: Option<String>,
    target: Option<usize>,
    budget: Budget,
) -> anyhow::Result<Outcome> {
    if let Some(text) = &matching {
        let m = parse_matching(g, text)?;
        if g.is_bipartite() && target.is_none() {
            let packing = bipartite_ear_packing(g, &m)?;
            return Ok(Outcome::ok(json!({
                "method": "flow",
                "k": packing.k(),
                "exact": true,
                "packing": packing,
            })));
        }
        return search(g, m.covered(), target, budget);
    }
    let Some(text) = u else {
        bail!("pass --u or --matching");
    };
    let set = parse_vertices(text.as_str(), g.n())?;
    search(g, &set, target, budget)
}

fn search(g: &Graph, u: &[usize], target: Option<usize>, budget: Budget) -> anyhow::Result<Outcome> {
    let result = max_odd_ear_packing(
        g,
        u,
        SearchOptions {
            target,
            node_budget: budget.ear_nodes,
        },
    )?;
    let settled = result.outcome != SearchOutcome::Unknown;
    Ok(Outcome::check(
        json!({
            "method": "search",
            "k": result.k(),
            "exact": result.is_exact(),
            "outcome": result.outcome,
            "upper_bound": result.upper_bound,
            "nodes": result.nodes,
            "packing": result.packing,
        }),
        settled,
    ))
}

fn construct(built: &ConstructionOutput, graph_out: Option<&Path>) -> anyhow::Result<Outcome> {
    let mut value = to_value(&built.sidecar());
    let g6 = String::from_utf8(serialize_graph(&built.graph, Format::Graph6))?;
    value["graph6"] = json!(g6.trim_end());
    value["n"] = json!(built.graph.n());
    if let Some(path) = graph_out {
        let format = format_from_extension(path).unwrap_or(Format::Graph6);
        fs::write(path, serialize_graph(&built.graph, format))
            .with_context(|| format!("writing {}", path.display()))?;
        let side = path.with_extension("json");
        let mut doc = value.clone();
        doc["schema"] = json!(SCHEMA);
        fs::write(&side, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", side.display()))?;
        value["graph_file"] = json!(path.display().to_string());
        value["sidecar_file"] = json!(side.display().to_string());
    }
    Ok(Outcome::ok(value))
}

fn format_from_extension(path: &Path) -> Option<Format> {
    let ext = path.extension()?.to_str()?;
    match ext.to_ascii_lowercase().as_str() {
        "g6" | "graph6" => Some(Format::Graph6),
        "txt" | "el" | "edges" | "edgelist" => Some(Format::EdgeList),
        _ => None,
    }
}

/// Edge lists start with a line of two integers; anything else is graph6.
fn sniff_format(text: &[u8]) -> Format {
    let first = text
        .split(|&b| b == b'\n')
        .map(|l| String::from_utf8_lossy(l).trim().to_string())
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.split_whitespace().all(|t| t.parse::<usize>().is_ok()) => Format::EdgeList,
        _ => Format::Graph6,
    }
}

fn read_graph(path: &Path, format: Option<Format>) -> anyhow::Result<Graph> {
    let text = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format
        .or_else(|| format_from_extension(path))
        .unwrap_or_else(|| sniff_format(&text));
    parse_graph(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn parse_matching(g: &Graph, text: &str) -> anyhow::Result<Matching> {
    let edges = parse_edge_list(text)?;
    Ok(Matching::new(g, edges)?)
}

fn parse_vertices(text: &str, n: usize) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().map_err(|_| anyhow!("bad vertex {tok:?}"))?;
        if v >= n {
            bail!("vertex {v} outside 0..{n}");
        }
        out.push(v);
    }
    Ok(out)
}

fn parse_range(text: &str) -> anyhow::Result<(usize, usize)> {
    let bad = || anyhow!("order range {text:?} is not LO..HI or N");
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (text, text),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Accepts a bare certificate or any document with a `barrier` field.
fn read_certificate(path: &Path) -> anyhow::Result<BarrierCertificate> {
    let text = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: Value = serde_json::from_slice(&text).map_err(|e| anyhow!("{}: not JSON: {e}", path.display()))?;
    let cert = match doc.get("barrier") {
        Some(inner) => inner.clone(),
        None if doc.get("outcome").is_some_and(|o| o == "extended") => {
            bail!("{} records an extended matching, not a barrier", path.display())
        }
        None => doc,
    };
    serde_json::from_value(cert).map_err(|e| anyhow!("{}: bad certificate: {e}", path.display()))
}
