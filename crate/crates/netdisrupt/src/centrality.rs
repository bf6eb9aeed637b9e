//! The four centrality metrics: degree, betweenness, Katz, and collective
//! influence, each computable on the unweighted or weighted view of a graph.
//!
//! All computations are pure functions of an immutable graph and fully
//! deterministic: ties are resolved by ascending node id everywhere.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, NodeId, WeightMode};

/// Per-component convergence tolerance of the Katz fixed-point iteration.
pub const KATZ_TOLERANCE: f64 = 1e-9;
/// Sweep cap for the Katz fixed-point iteration.
pub const KATZ_MAX_SWEEPS: usize = 10_000;
/// Relative tolerance of the power-iteration spectral estimate.
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;

/// A centrality metric together with its parameters.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Degree,
    Betweenness,
    Katz { alpha: f64, beta: f64 },
    CollectiveInfluence { radius: usize },
}

impl Metric {
    /// Katz with the customary defaults alpha = 0.1, beta = 1.0.
    pub fn katz_default() -> Self {
        Metric::Katz {
            alpha: 0.1,
            beta: 1.0,
        }
    }

    /// Collective influence with the default ball radius 2.
    pub fn collective_influence_default() -> Self {
        Metric::CollectiveInfluence { radius: 2 }
    }

    /// Short identifier used in table headers and file names.
    pub fn short_name(&self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Betweenness => "betweenness",
            Metric::Katz { .. } => "katz",
            Metric::CollectiveInfluence { .. } => "ci",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::Degree => write!(f, "degree"),
            Metric::Betweenness => write!(f, "betweenness"),
            Metric::Katz { alpha, beta } => write!(f, "katz(alpha={alpha}, beta={beta})"),
            Metric::CollectiveInfluence { radius } => write!(f, "ci(radius={radius})"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CentralityError {
    #[error("katz alpha must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error(
        "katz diverges: alpha {alpha} is not below the spectral bound {bound} \
         (largest adjacency eigenvalue about {lambda_max})"
    )]
    AlphaAboveBound {
        alpha: f64,
        bound: f64,
        lambda_max: f64,
    },
    #[error("katz fixed-point iteration did not converge within {0} sweeps")]
    NotConverged(usize),
    #[error("collective influence radius must be at least 1, got {0}")]
    InvalidRadius(usize),
}

/// Scores of one metric under one weighting mode, one entry per node.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityScores {
    pub metric: Metric,
    pub mode: WeightMode,
    pub scores: BTreeMap<NodeId, f64>,
}

/// Dispatches to the metric-specific computation.
pub fn compute(
    g: &Graph,
    metric: &Metric,
    mode: WeightMode,
) -> Result<CentralityScores, CentralityError> {
    match *metric {
        Metric::Degree => Ok(degree_centrality(g, mode)),
        Metric::Betweenness => Ok(betweenness_centrality(g, mode)),
        Metric::Katz { alpha, beta } => katz_centrality(g, mode, alpha, beta),
        Metric::CollectiveInfluence { radius } => collective_influence(g, mode, radius),
    }
}

/// Degree centrality: incident-edge count, or sum of incident weights.
pub fn degree_centrality(g: &Graph, mode: WeightMode) -> CentralityScores {
    let scores = g.nodes().map(|n| (n, g.degree(n, mode).unwrap())).collect();
    CentralityScores {
        metric: Metric::Degree,
        mode,
        scores,
    }
}

/// Shortest-path betweenness via Brandes' accumulation, one source pass per
/// node. Pair dependencies are summed over unordered pairs with endpoints
/// excluded and no normalization; disconnected pairs contribute nothing.
///
/// Path counting uses exact equality on accumulated costs, which is exact
/// for integer weights. The accumulation order is canonical (distance, then
/// id), so results are bit-stable and the weighted pass on an all-ones
/// graph reproduces the unweighted pass exactly.
pub fn betweenness_centrality(g: &Graph, mode: WeightMode) -> CentralityScores {
    let mut bc: BTreeMap<NodeId, f64> = g.nodes().map(|n| (n, 0.0)).collect();
    for s in g.nodes().collect::<Vec<_>>() {
        let dist = g.shortest_path_lengths(s, mode).unwrap();

        // Reachable nodes ordered by (distance, id): a topological order of
        // the shortest-path DAG.
        let mut order: Vec<NodeId> = dist.keys().copied().collect();
        order.sort_by(|a, b| dist[a].total_cmp(&dist[b]).then(a.cmp(b)));

        let mut sigma: BTreeMap<NodeId, f64> = BTreeMap::new();
        let mut preds: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        sigma.insert(s, 1.0);
        for &w in order.iter().skip(1) {
            let dw = dist[&w];
            let mut count = 0.0;
            let mut pw = Vec::new();
            for (v, edge_w) in g.neighbors(w) {
                let step = match mode {
                    WeightMode::Unweighted => 1.0,
                    WeightMode::Weighted => edge_w,
                };
                if let Some(&dv) = dist.get(&v) {
                    if dv + step == dw {
                        count += sigma[&v];
                        pw.push(v);
                    }
                }
            }
            sigma.insert(w, count);
            preds.insert(w, pw);
        }

        let mut delta: BTreeMap<NodeId, f64> = order.iter().map(|&v| (v, 0.0)).collect();
        for &w in order.iter().rev() {
            if w == s {
                continue;
            }
            let coeff = (1.0 + delta[&w]) / sigma[&w];
            for &v in &preds[&w] {
                *delta.get_mut(&v).unwrap() += sigma[&v] * coeff;
            }
            *bc.get_mut(&w).unwrap() += delta[&w];
        }
    }
    // Each unordered pair was counted from both endpoints.
    for v in bc.values_mut() {
        *v /= 2.0;
    }
    CentralityScores {
        metric: Metric::Betweenness,
        mode,
        scores: bc,
    }
}

/// Katz centrality: the fixed point of x = alpha * A x + beta * 1, found by
/// fixed-point iteration from x = beta * 1.
///
/// The recursion runs on the binary adjacency in both modes. With
/// interaction-count weights, an edge of weight w forces the weighted
/// spectral radius to at least w, so any usable alpha (alpha * w >= 1)
/// would fail the convergence bound; ranking walks on the contact
/// structure keeps the metric well defined and comparable across modes.
/// Alpha is validated against the binary spectrum before iterating.
pub fn katz_centrality(
    g: &Graph,
    mode: WeightMode,
    alpha: f64,
    beta: f64,
) -> Result<CentralityScores, CentralityError> {
    if alpha <= 0.0 || alpha.is_nan() {
        return Err(CentralityError::InvalidAlpha(alpha));
    }
    let lambda_max = spectral_bound(g, WeightMode::Unweighted);
    if alpha * lambda_max >= 1.0 {
        return Err(CentralityError::AlphaAboveBound {
            alpha,
            bound: 1.0 / lambda_max,
            lambda_max,
        });
    }

    let nodes: Vec<NodeId> = g.nodes().collect();
    let mut x: BTreeMap<NodeId, f64> = nodes.iter().map(|&n| (n, beta)).collect();
    for _ in 0..KATZ_MAX_SWEEPS {
        let mut next = BTreeMap::new();
        let mut max_delta = 0.0f64;
        for &n in &nodes {
            let acc: f64 = g.neighbors(n).map(|(j, _)| x[&j]).sum();
            let value = alpha * acc + beta;
            max_delta = max_delta.max((value - x[&n]).abs());
            next.insert(n, value);
        }
        x = next;
        if max_delta <= KATZ_TOLERANCE {
            return Ok(CentralityScores {
                metric: Metric::Katz { alpha, beta },
                mode,
                scores: x,
            });
        }
    }
    Err(CentralityError::NotConverged(KATZ_MAX_SWEEPS))
}

/// Collective influence of radius l: (k_i - 1) times the sum of (k_j - 1)
/// over the frontier of the hop-ball of radius l around i. The degree k is
/// unweighted or weighted per `mode`; frontier membership is always
/// hop-based.
pub fn collective_influence(
    g: &Graph,
    mode: WeightMode,
    radius: usize,
) -> Result<CentralityScores, CentralityError> {
    if radius < 1 {
        return Err(CentralityError::InvalidRadius(radius));
    }
    let mut scores = BTreeMap::new();
    for i in g.nodes().collect::<Vec<_>>() {
        let frontier = g.ball_frontier(i, radius).unwrap();
        let frontier_sum: f64 = frontier
            .iter()
            .map(|&j| g.degree(j, mode).unwrap() - 1.0)
            .sum();
        let ki = g.degree(i, mode).unwrap();
        // Empty frontier gives 0 regardless of (k_i - 1).
        let score = if frontier.is_empty() {
            0.0
        } else {
            (ki - 1.0) * frontier_sum
        };
        scores.insert(i, score);
    }
    Ok(CentralityScores {
        metric: Metric::CollectiveInfluence { radius },
        mode,
        scores,
    })
}

/// Estimate of the largest adjacency eigenvalue, by power iteration on the
/// shifted matrix A + I (the shift breaks the +/- eigenvalue symmetry of
/// bipartite graphs). Returns 0 for edgeless graphs.
pub fn spectral_bound(g: &Graph, mode: WeightMode) -> f64 {
    if g.edge_count() == 0 {
        return 0.0;
    }
    let nodes: Vec<NodeId> = g.nodes().collect();
    let index: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let n = nodes.len();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda_prev = 0.0f64;
    for _ in 0..100_000 {
        let mut y = vec![0.0f64; n];
        for (i, &ni) in nodes.iter().enumerate() {
            let mut acc = x[i]; // shift
            for (j, w) in g.neighbors(ni) {
                let step = match mode {
                    WeightMode::Unweighted => 1.0,
                    WeightMode::Weighted => w,
                };
                acc += step * x[index[&j]];
            }
            y[i] = acc;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        for v in y.iter_mut() {
            *v /= norm;
        }
        // Rayleigh quotient of the shifted matrix for the normalized iterate.
        let lambda = {
            let mut acc = 0.0;
            for (i, &ni) in nodes.iter().enumerate() {
                let mut row = y[i];
                for (j, w) in g.neighbors(ni) {
                    let step = match mode {
                        WeightMode::Unweighted => 1.0,
                        WeightMode::Weighted => w,
                    };
                    row += step * y[index[&j]];
                }
                acc += y[i] * row;
            }
            acc
        };
        x = y;
        if (lambda - lambda_prev).abs() <= SPECTRAL_TOLERANCE * lambda.abs() {
            return lambda - 1.0;
        }
        lambda_prev = lambda;
    }
    lambda_prev - 1.0
}

/// Nodes sorted by score descending; ties broken by ascending id, so the
/// ordering is a deterministic permutation of the node set.
pub fn rank_nodes(scores: &CentralityScores) -> Vec<NodeId> {
    let mut ranked: Vec<NodeId> = scores.scores.keys().copied().collect();
    ranked.sort_by(|a, b| scores.scores[b].total_cmp(&scores.scores[a]).then(a.cmp(b)));
    ranked
}
