//! Undirected weighted simple graph with stable node identifiers.
//!
//! The adjacency structure is ordered (`BTreeMap`) so that every traversal
//! is deterministic and node ids survive removals without re-indexing.
//! All read operations take `&self` and are safe to call concurrently;
//! mutation requires `&mut self`.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use thiserror::Error;

/// Stable, opaque node identifier. Ids are never re-used or re-indexed
/// when other nodes are removed.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for NodeId {
    fn from(id: u32) -> Self {
        NodeId(id)
    }
}

/// Optional per-node labels carried by some datasets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeAttrs {
    pub clan: Option<String>,
    pub role: Option<String>,
}

/// Selects whether operations read the recorded edge weight or a constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Unweighted,
    Weighted,
}

impl std::fmt::Display for WeightMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WeightMode::Unweighted => write!(f, "unweighted"),
            WeightMode::Weighted => write!(f, "weighted"),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("node {0} already present")]
    DuplicateNode(NodeId),
    #[error("node {0} not present")]
    MissingNode(NodeId),
    #[error("self-loop on node {0} not allowed")]
    SelfLoop(NodeId),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge {0}-{1} has non-positive weight {2}")]
    NonPositiveWeight(NodeId, NodeId, f64),
}

/// Partition of the node set into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Disjoint node sets, largest first; ties broken by smallest member id.
    pub components: Vec<BTreeSet<NodeId>>,
    /// Node count of the largest component, 0 for the empty graph.
    pub lcc_size: usize,
}

/// Undirected weighted simple graph. No self-loops, no parallel edges,
/// every weight strictly positive.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Graph {
    adjacency: BTreeMap<NodeId, BTreeMap<NodeId, f64>>,
    attrs: BTreeMap<NodeId, NodeAttrs>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_node(&self, n: NodeId) -> bool {
        self.adjacency.contains_key(&n)
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.adjacency.get(&i).is_some_and(|nb| nb.contains_key(&j))
    }

    /// Weight of edge i-j, if present. Symmetric by construction.
    pub fn weight(&self, i: NodeId, j: NodeId) -> Option<f64> {
        self.adjacency.get(&i).and_then(|nb| nb.get(&j)).copied()
    }

    /// Nodes in ascending id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency.keys().copied()
    }

    /// Neighbors of `n` in ascending id order with edge weights.
    /// Empty iterator if `n` is absent.
    pub fn neighbors(&self, n: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.adjacency
            .get(&n)
            .into_iter()
            .flat_map(|nb| nb.iter().map(|(&j, &w)| (j, w)))
    }

    /// Every edge once, as (i, j, w) with i < j, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency.iter().flat_map(|(&i, nb)| {
            nb.iter()
                .filter(move |(&j, _)| i < j)
                .map(move |(&j, &w)| (i, j, w))
        })
    }

    pub fn attrs(&self, n: NodeId) -> Option<&NodeAttrs> {
        self.attrs.get(&n)
    }

    pub fn add_node(&mut self, n: NodeId) -> Result<(), GraphError> {
        if self.adjacency.contains_key(&n) {
            return Err(GraphError::DuplicateNode(n));
        }
        self.adjacency.insert(n, BTreeMap::new());
        Ok(())
    }

    pub fn add_node_with_attrs(&mut self, n: NodeId, attrs: NodeAttrs) -> Result<(), GraphError> {
        self.add_node(n)?;
        self.attrs.insert(n, attrs);
        Ok(())
    }

    pub fn add_edge(&mut self, i: NodeId, j: NodeId, w: f64) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::SelfLoop(i));
        }
        if !self.adjacency.contains_key(&i) {
            return Err(GraphError::MissingNode(i));
        }
        if !self.adjacency.contains_key(&j) {
            return Err(GraphError::MissingNode(j));
        }
        if self.has_edge(i, j) {
            return Err(GraphError::DuplicateEdge(i, j));
        }
        if w <= 0.0 || w.is_nan() {
            return Err(GraphError::NonPositiveWeight(i, j, w));
        }
        self.adjacency.get_mut(&i).unwrap().insert(j, w);
        self.adjacency.get_mut(&j).unwrap().insert(i, w);
        self.edge_count += 1;
        Ok(())
    }

    /// Removes `n` together with all incident edges. Other nodes and edges
    /// are untouched.
    pub fn remove_node(&mut self, n: NodeId) -> Result<(), GraphError> {
        let neighbors = self
            .adjacency
            .remove(&n)
            .ok_or(GraphError::MissingNode(n))?;
        for j in neighbors.keys() {
            self.adjacency.get_mut(j).unwrap().remove(&n);
        }
        self.edge_count -= neighbors.len();
        self.attrs.remove(&n);
        Ok(())
    }

    /// Degree of `n`: incident-edge count in unweighted mode, sum of
    /// incident weights in weighted mode.
    pub fn degree(&self, n: NodeId, mode: WeightMode) -> Result<f64, GraphError> {
        let nb = self.adjacency.get(&n).ok_or(GraphError::MissingNode(n))?;
        Ok(match mode {
            WeightMode::Unweighted => nb.len() as f64,
            WeightMode::Weighted => nb.values().sum(),
        })
    }

    /// Partition of the node set by path-connectivity.
    pub fn connected_components(&self) -> ComponentPartition {
        let mut seen: BTreeSet<NodeId> = BTreeSet::new();
        let mut components: Vec<BTreeSet<NodeId>> = Vec::new();
        for start in self.adjacency.keys().copied() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::new();
            queue.push_back(start);
            seen.insert(start);
            comp.insert(start);
            while let Some(v) = queue.pop_front() {
                for (j, _) in self.neighbors(v) {
                    if seen.insert(j) {
                        comp.insert(j);
                        queue.push_back(j);
                    }
                }
            }
            components.push(comp);
        }
        components.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.iter().next().cmp(&b.iter().next()))
        });
        let lcc_size = components.first().map_or(0, |c| c.len());
        ComponentPartition {
            components,
            lcc_size,
        }
    }

    /// Node count of the largest connected component.
    pub fn lcc_size(&self) -> usize {
        self.connected_components().lcc_size
    }

    /// Minimal path cost from `s` to every reachable node: hop count in
    /// unweighted mode (BFS), sum of edge weights in weighted mode
    /// (Dijkstra). Unreachable nodes are absent from the map.
    pub fn shortest_path_lengths(
        &self,
        s: NodeId,
        mode: WeightMode,
    ) -> Result<BTreeMap<NodeId, f64>, GraphError> {
        if !self.has_node(s) {
            return Err(GraphError::MissingNode(s));
        }
        let mut dist: BTreeMap<NodeId, f64> = BTreeMap::new();
        match mode {
            WeightMode::Unweighted => {
                dist.insert(s, 0.0);
                let mut queue = VecDeque::new();
                queue.push_back(s);
                while let Some(v) = queue.pop_front() {
                    let dv = dist[&v];
                    for (j, _) in self.neighbors(v) {
                        if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(j) {
                            e.insert(dv + 1.0);
                            queue.push_back(j);
                        }
                    }
                }
            }
            WeightMode::Weighted => {
                // Max-heap on Reverse(cost); ties popped in ascending id order.
                let mut heap: BinaryHeap<std::cmp::Reverse<(OrderedCost, NodeId)>> =
                    BinaryHeap::new();
                heap.push(std::cmp::Reverse((OrderedCost(0.0), s)));
                while let Some(std::cmp::Reverse((OrderedCost(d), v))) = heap.pop() {
                    if dist.contains_key(&v) {
                        continue;
                    }
                    dist.insert(v, d);
                    for (j, w) in self.neighbors(v) {
                        if !dist.contains_key(&j) {
                            heap.push(std::cmp::Reverse((OrderedCost(d + w), j)));
                        }
                    }
                }
            }
        }
        Ok(dist)
    }

    /// Largest finite shortest-path cost over all ordered pairs;
    /// 0 for graphs with fewer than two connected nodes.
    pub fn max_shortest_path(&self, mode: WeightMode) -> f64 {
        let mut max = 0.0f64;
        for s in self.nodes() {
            let dist = self.shortest_path_lengths(s, mode).unwrap();
            for (&t, &d) in &dist {
                if t != s && d > max {
                    max = d;
                }
            }
        }
        max
    }

    /// Nodes at hop distance exactly `l` from `i`. Distance is always
    /// measured in edges regardless of any weighting.
    pub fn ball_frontier(&self, i: NodeId, l: usize) -> Result<BTreeSet<NodeId>, GraphError> {
        if !self.has_node(i) {
            return Err(GraphError::MissingNode(i));
        }
        let mut level: BTreeMap<NodeId, usize> = BTreeMap::new();
        level.insert(i, 0);
        let mut queue = VecDeque::new();
        queue.push_back(i);
        let mut frontier = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            let lv = level[&v];
            if lv >= l {
                continue;
            }
            for (j, _) in self.neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = level.entry(j) {
                    e.insert(lv + 1);
                    if lv + 1 == l {
                        frontier.insert(j);
                    } else {
                        queue.push_back(j);
                    }
                }
            }
        }
        if l == 0 {
            frontier.insert(i);
        }
        Ok(frontier)
    }
}

/// f64 wrapper ordered by `total_cmp` for use in the Dijkstra heap.
/// Path costs are finite sums of positive weights, never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OrderedCost(pub f64);

impl Eq for OrderedCost {}

impl PartialOrd for OrderedCost {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedCost {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
