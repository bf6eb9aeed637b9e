//! Iterative node-removal attacks and the rho collapse curve.
//!
//! A run repeatedly ranks the nodes of the *current* graph by a centrality
//! metric, removes the top node (sequential) or the top block (block),
//! and records the surviving largest-connected-component size until the
//! graph is empty. Ranks are recomputed from scratch after every removal,
//! so the attack adapts to the perturbed topology.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::centrality::{self, CentralityError, Metric};
use crate::graph::{Graph, NodeId, WeightMode};

/// Rho threshold used in summaries: the collapse point reported by the
/// command line and comparison tables.
pub const RHO_COLLAPSE_THRESHOLD: f64 = 0.30;

/// Node-removal strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// One node per iteration (single arrests).
    Sequential,
    /// A fixed-size batch per iteration (police raids); the final batch may
    /// be smaller when fewer nodes remain.
    Block { block_size: usize },
}

impl Strategy {
    pub fn block_default() -> Self {
        Strategy::Block { block_size: 5 }
    }

    fn batch_size(&self) -> usize {
        match self {
            Strategy::Sequential => 1,
            Strategy::Block { block_size } => *block_size,
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Sequential => write!(f, "sequential"),
            Strategy::Block { block_size } => write!(f, "block({block_size})"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DisruptionError {
    #[error("cannot disrupt an empty graph")]
    EmptyGraph,
    #[error("block size must be at least 1")]
    InvalidBlockSize,
    #[error("lcc size {now} exceeds the initial lcc size {initial}")]
    LccGrew { now: usize, initial: usize },
    #[error("centrality computation failed at iteration {iteration}: {source}")]
    Centrality {
        iteration: usize,
        #[source]
        source: CentralityError,
    },
    #[error("comparison requires at least one run")]
    NoRuns,
    #[error("runs cover different initial graphs")]
    MismatchedRuns,
}

/// One node removed at a specific iteration, with its score at removal time.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RemovedNode {
    pub id: NodeId,
    pub score: f64,
}

/// State after one iteration of the removal loop. Iteration 0 describes the
/// unperturbed graph.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub removed: Vec<RemovedNode>,
    pub lcc_size: usize,
    pub rho: f64,
}

/// Configuration and full trace of one disruption run.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct DisruptionRun {
    pub metric: Metric,
    pub mode: WeightMode,
    pub strategy: Strategy,
    pub trace: Vec<IterationRecord>,
}

impl DisruptionRun {
    /// The ordered sequence of removed node ids across all iterations.
    pub fn removal_sequence(&self) -> Vec<NodeId> {
        self.trace
            .iter()
            .flat_map(|rec| rec.removed.iter().map(|r| r.id))
            .collect()
    }

    /// Rho at a given iteration; runs shorter than `iteration` have
    /// reached 0 and stay there.
    pub fn rho_at(&self, iteration: usize) -> f64 {
        self.trace.get(iteration).map_or(0.0, |rec| rec.rho)
    }

    /// First iteration at which rho drops to `threshold` or below.
    pub fn first_reach(&self, threshold: f64) -> Option<usize> {
        self.trace
            .iter()
            .find(|rec| rec.rho <= threshold)
            .map(|rec| rec.iteration)
    }
}

/// Normalized LCC survival: 1 - |lcc_now - lcc_initial| / lcc_initial,
/// computed as the algebraically identical lcc_now / lcc_initial (removals
/// never grow the LCC, which the contract enforces).
pub fn rho(lcc_now: usize, lcc_initial: usize) -> Result<f64, DisruptionError> {
    if lcc_now > lcc_initial {
        return Err(DisruptionError::LccGrew {
            now: lcc_now,
            initial: lcc_initial,
        });
    }
    Ok(lcc_now as f64 / lcc_initial as f64)
}

/// Runs the removal loop to total destruction and records the trace.
///
/// Every iteration recomputes the centrality scores on the current graph,
/// removes the top-ranked node (or block), and appends the new LCC size
/// and rho. The loop ends when no nodes remain, so the final rho is 0.
pub fn run_disruption(
    g: &Graph,
    metric: &Metric,
    mode: WeightMode,
    strategy: Strategy,
) -> Result<DisruptionRun, DisruptionError> {
    if g.node_count() == 0 {
        return Err(DisruptionError::EmptyGraph);
    }
    if strategy.batch_size() == 0 {
        return Err(DisruptionError::InvalidBlockSize);
    }
    let mut current = g.clone();
    let lcc_initial = current.lcc_size();
    let mut trace = vec![IterationRecord {
        iteration: 0,
        removed: Vec::new(),
        lcc_size: lcc_initial,
        rho: 1.0,
    }];

    let mut iteration = 0;
    while current.node_count() > 0 {
        iteration += 1;
        let scores = centrality::compute(&current, metric, mode)
            .map_err(|source| DisruptionError::Centrality { iteration, source })?;
        let ranked = centrality::rank_nodes(&scores);
        let batch: Vec<RemovedNode> = ranked
            .into_iter()
            .take(strategy.batch_size())
            .map(|id| RemovedNode {
                id,
                score: scores.scores[&id],
            })
            .collect();
        for removed in &batch {
            current.remove_node(removed.id).unwrap();
        }
        let lcc_size = current.lcc_size();
        trace.push(IterationRecord {
            iteration,
            removed: batch,
            lcc_size,
            rho: rho(lcc_size, lcc_initial)?,
        });
    }

    Ok(DisruptionRun {
        metric: metric.clone(),
        mode,
        strategy,
        trace,
    })
}

/// Aligned rho-per-iteration table across several runs over the same
/// initial graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    /// One label per run: "metric/mode/strategy".
    pub labels: Vec<String>,
    /// rows[i][k] is rho of run k at iteration i, padded with 0 after a
    /// run's termination.
    pub rows: Vec<Vec<f64>>,
    /// Per run, the first iteration at which rho <= RHO_COLLAPSE_THRESHOLD.
    pub first_collapse: Vec<Option<usize>>,
}

/// Builds the aligned comparison table. All runs must describe attacks on
/// the same initial graph: equal initial LCC and equal overall node set.
pub fn compare_runs(runs: &[DisruptionRun]) -> Result<ComparisonTable, DisruptionError> {
    if runs.is_empty() {
        return Err(DisruptionError::NoRuns);
    }
    let reference_nodes: BTreeSet<NodeId> = runs[0].removal_sequence().into_iter().collect();
    let reference_lcc = runs[0].trace[0].lcc_size;
    for run in &runs[1..] {
        let nodes: BTreeSet<NodeId> = run.removal_sequence().into_iter().collect();
        if nodes != reference_nodes || run.trace[0].lcc_size != reference_lcc {
            return Err(DisruptionError::MismatchedRuns);
        }
    }
    let depth = runs.iter().map(|r| r.trace.len()).max().unwrap();
    let rows = (0..depth)
        .map(|i| runs.iter().map(|r| r.rho_at(i)).collect())
        .collect();
    Ok(ComparisonTable {
        labels: runs
            .iter()
            .map(|r| format!("{}/{}/{}", r.metric.short_name(), r.mode, r.strategy))
            .collect(),
        rows,
        first_collapse: runs
            .iter()
            .map(|r| r.first_reach(RHO_COLLAPSE_THRESHOLD))
            .collect(),
    })
}
