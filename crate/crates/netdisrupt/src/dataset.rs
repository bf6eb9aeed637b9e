//! Edge-list parsing, summary statistics, and trace serialization.
//!
//! The interchange format is a plain CSV edge list with an explicit header:
//!
//! ```text
//! source,target,weight
//! 1,2,3
//! ```
//!
//! Ids are non-negative integers, weights are integer interaction counts
//! (the weight column may be omitted, in which case every edge has weight
//! 1). Duplicate undirected pairs are rejected rather than merged: counts
//! are pre-aggregated per pair, so a duplicate row signals corruption.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::disruption::{DisruptionRun, IterationRecord};
use crate::graph::{Graph, NodeId, WeightMode};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}:{line}: {kind}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        kind: ParseErrorKind,
    },
    #[error(
        "edge {0}-{1} has non-integer weight {2}; the edge-list format carries integer counts"
    )]
    NonIntegerWeight(NodeId, NodeId, f64),
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseErrorKind {
    #[error("empty file: missing header row")]
    MissingHeader,
    #[error("header must be 'source,target' or 'source,target,weight', got '{0}'")]
    BadHeader(String),
    #[error("expected {expected} comma-separated fields, got {got}")]
    FieldCount { expected: usize, got: usize },
    #[error("invalid node id '{0}'")]
    InvalidNodeId(String),
    #[error("invalid weight '{0}': must be an integer >= 1")]
    InvalidWeight(String),
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate undirected pair {0}-{1}")]
    DuplicatePair(NodeId, NodeId),
}

/// One line of the edge-list interchange format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRecord {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: u64,
}

/// Summary statistics of a network.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct NetworkStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub max_weight: u64,
    pub avg_degree: f64,
    pub max_shortest_path: usize,
}

impl std::fmt::Display for NetworkStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Nodes: {}", self.node_count)?;
        writeln!(f, "Edges: {}", self.edge_count)?;
        writeln!(f, "Max weight: {}", self.max_weight)?;
        writeln!(f, "Avg degree: {:.2}", self.avg_degree)?;
        write!(f, "Max shortest path: {}", self.max_shortest_path)
    }
}

/// Parses a CSV edge list into a graph. Every endpoint becomes a node;
/// every record becomes one weighted undirected edge. Malformed rows are
/// reported with their 1-based line number.
pub fn load_edge_list(path: &Path) -> Result<Graph, DatasetError> {
    let text = std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text, path)
}

fn parse_edge_list(text: &str, path: &Path) -> Result<Graph, DatasetError> {
    let err = |line: usize, kind: ParseErrorKind| DatasetError::Parse {
        path: path.to_path_buf(),
        line,
        kind,
    };

    let mut lines = text.lines().enumerate();
    let (header_idx, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    let header_fields: Vec<&str> = header.split(',').map(str::trim).collect();
    let expected = match header_fields.as_slice() {
        ["source", "target"] => 2,
        ["source", "target", "weight"] => 3,
        _ => {
            return Err(err(
                header_idx + 1,
                ParseErrorKind::BadHeader(header.trim().to_string()),
            ))
        }
    };

    let mut g = Graph::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != expected {
            return Err(err(
                line_no,
                ParseErrorKind::FieldCount {
                    expected,
                    got: fields.len(),
                },
            ));
        }
        let record = parse_record(&fields, expected == 3).map_err(|kind| err(line_no, kind))?;
        if g.has_edge(record.source, record.target) {
            return Err(err(
                line_no,
                ParseErrorKind::DuplicatePair(record.source, record.target),
            ));
        }
        for endpoint in [record.source, record.target] {
            if !g.has_node(endpoint) {
                g.add_node(endpoint).unwrap();
            }
        }
        g.add_edge(record.source, record.target, record.weight as f64)
            .unwrap();
    }
    Ok(g)
}

fn parse_record(fields: &[&str], has_weight: bool) -> Result<EdgeRecord, ParseErrorKind> {
    let parse_id = |token: &str| {
        token
            .parse::<u32>()
            .map(NodeId)
            .map_err(|_| ParseErrorKind::InvalidNodeId(token.to_string()))
    };
    let source = parse_id(fields[0])?;
    let target = parse_id(fields[1])?;
    let weight = if has_weight {
        match fields[2].parse::<u64>() {
            Ok(w) if w >= 1 => w,
            _ => return Err(ParseErrorKind::InvalidWeight(fields[2].to_string())),
        }
    } else {
        1
    };
    if source == target {
        return Err(ParseErrorKind::SelfLoop(source));
    }
    Ok(EdgeRecord {
        source,
        target,
        weight,
    })
}

/// Serializes a graph back to the edge-list format, edges ordered by
/// (source, target) with the smaller endpoint first. Re-loading the output
/// reproduces the graph exactly.
pub fn write_edge_list(g: &Graph, path: &Path) -> Result<(), DatasetError> {
    let mut out = String::from("source,target,weight\n");
    for (i, j, w) in g.edges() {
        if w.fract() != 0.0 || w < 1.0 {
            return Err(DatasetError::NonIntegerWeight(i, j, w));
        }
        writeln!(out, "{i},{j},{}", w as u64).unwrap();
    }
    std::fs::write(path, out).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Network statistics per the dataset summary table. The maximum shortest
/// path is computed on the unweighted view.
pub fn compute_stats(g: &Graph) -> NetworkStats {
    let node_count = g.node_count();
    let edge_count = g.edge_count();
    let max_weight = g.edges().map(|(_, _, w)| w).fold(0.0f64, f64::max).round() as u64;
    let avg_degree = if node_count == 0 {
        0.0
    } else {
        2.0 * edge_count as f64 / node_count as f64
    };
    NetworkStats {
        node_count,
        edge_count,
        max_weight,
        avg_degree,
        max_shortest_path: g.max_shortest_path(WeightMode::Unweighted) as usize,
    }
}

/// Intersection of the node sets of two graphs sharing an id space.
pub fn common_nodes(g1: &Graph, g2: &Graph) -> BTreeSet<NodeId> {
    g1.nodes().filter(|&n| g2.has_node(n)).collect()
}

/// Histogram of edge weights, ascending by weight. Counts sum to the edge
/// count.
pub fn weight_distribution(g: &Graph) -> Vec<(f64, usize)> {
    let mut hist: Vec<(f64, usize)> = Vec::new();
    let mut weights: Vec<f64> = g.edges().map(|(_, _, w)| w).collect();
    weights.sort_by(f64::total_cmp);
    for w in weights {
        match hist.last_mut() {
            Some((value, count)) if *value == w => *count += 1,
            _ => hist.push((w, 1)),
        }
    }
    hist
}

/// Trace export format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ExportedRun {
    metric: crate::centrality::Metric,
    mode: WeightMode,
    strategy: crate::disruption::Strategy,
    dataset_checksum: Option<String>,
    trace: Vec<IterationRecord>,
}

/// Renders the trace as CSV: one row per iteration, removed ids
/// semicolon-joined, rho with six decimal places.
pub fn render_run_csv(run: &DisruptionRun) -> String {
    let mut out = String::from("iteration,removed,lcc_size,rho\n");
    for rec in &run.trace {
        let removed = rec
            .removed
            .iter()
            .map(|r| r.id.to_string())
            .collect::<Vec<_>>()
            .join(";");
        writeln!(
            out,
            "{},{},{},{:.6}",
            rec.iteration, removed, rec.lcc_size, rec.rho
        )
        .unwrap();
    }
    out
}

/// Renders the trace as JSON with a metadata header (metric, mode,
/// strategy, dataset checksum). Full float precision is preserved, so the
/// output re-parses to an identical trace.
pub fn render_run_json(run: &DisruptionRun, dataset_checksum: Option<&str>) -> String {
    let exported = ExportedRun {
        metric: run.metric.clone(),
        mode: run.mode,
        strategy: run.strategy,
        dataset_checksum: dataset_checksum.map(str::to_string),
        trace: run.trace.clone(),
    };
    let mut out = serde_json::to_string_pretty(&exported).unwrap();
    out.push('\n');
    out
}

/// Writes a disruption trace to `path` in the requested format.
pub fn export_run(
    run: &DisruptionRun,
    format: ExportFormat,
    path: &Path,
    dataset_checksum: Option<&str>,
) -> Result<(), DatasetError> {
    let rendered = match format {
        ExportFormat::Csv => render_run_csv(run),
        ExportFormat::Json => render_run_json(run, dataset_checksum),
    };
    std::fs::write(path, rendered).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Re-parses a JSON trace export. Returns the run and the recorded dataset
/// checksum, if any.
pub fn import_run(path: &Path) -> Result<(DisruptionRun, Option<String>), DatasetError> {
    let text = std::fs::read_to_string(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let exported: ExportedRun =
        serde_json::from_str(&text).map_err(|source| DatasetError::Json {
            path: path.to_path_buf(),
            source,
        })?;
    Ok((
        DisruptionRun {
            metric: exported.metric,
            mode: exported.mode,
            strategy: exported.strategy,
            trace: exported.trace,
        },
        exported.dataset_checksum,
    ))
}

/// SHA-256 of a file's bytes, as lowercase hex. Recorded in JSON exports so
/// a trace can be tied back to the exact dataset file it came from.
pub fn file_checksum(path: &Path) -> Result<String, DatasetError> {
    let bytes = std::fs::read(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}
