//! Graph analytics for studying how undirected weighted networks fall
//! apart under targeted node removal.
//!
//! The crate has four layers:
//!
//! - [`graph`]: the undirected weighted graph substrate (components,
//!   shortest paths, hop-ball frontiers);
//! - [`centrality`]: degree, betweenness, Katz, and collective-influence
//!   scores in unweighted and weighted form;
//! - [`disruption`]: adaptive sequential and block node-removal attacks
//!   tracked by the normalized LCC survival ratio rho;
//! - [`dataset`]: the CSV edge-list interchange format, summary statistics,
//!   and trace export.
//!
//! [`cli`] wires everything into the `netdisrupt` binary.
//!
//! ```
//! use netdisrupt::{Graph, Metric, NodeId, Strategy, WeightMode};
//!
//! let mut g = Graph::new();
//! for id in 0..4 {
//!     g.add_node(NodeId(id)).unwrap();
//! }
//! g.add_edge(NodeId(0), NodeId(1), 1.0).unwrap();
//! g.add_edge(NodeId(1), NodeId(2), 1.0).unwrap();
//! g.add_edge(NodeId(1), NodeId(3), 2.0).unwrap();
//!
//! let run = netdisrupt::disruption::run_disruption(
//!     &g,
//!     &Metric::Degree,
//!     WeightMode::Weighted,
//!     Strategy::Sequential,
//! )
//! .unwrap();
//! // The hub falls first and the four-node component collapses to singletons.
//! assert_eq!(run.trace[1].removed[0].id, NodeId(1));
//! assert_eq!(run.trace[1].lcc_size, 1);
//! ```

pub mod centrality;
pub mod cli;
pub mod dataset;
pub mod disruption;
pub mod graph;

pub use centrality::{CentralityScores, Metric};
pub use dataset::{EdgeRecord, NetworkStats};
pub use disruption::{DisruptionRun, IterationRecord, Strategy};
pub use graph::{ComponentPartition, Graph, NodeId, WeightMode};
