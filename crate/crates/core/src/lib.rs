//! Gossip spreading on weighted networks.
//!
//! Gossip about a victim travels only among the victim's friends, through
//! chains of triangles that share the victim. The unweighted model lets every
//! friend who hears it pass it on; the weighted model adds a close-friend
//! rule under which a friend who values the victim above their own average
//! tie keeps quiet. This crate runs both models, aggregates the spread
//! factors per victim, per degree and per network, and ships the generators
//! and parsers needed to feed it.

pub mod error;
pub mod fixtures;
pub mod generators;
pub mod gossip;
pub mod graph;
pub mod ingest;
pub mod metrics;

pub use error::{ConfigError, GossipError, GraphError, IngestError, MetricsError};
pub use gossip::{
    cascade, cascade_unweighted, cascade_weighted, fast_victim_spread, is_close_friend, victim_spread, CascadeResult,
    ModelSelection, SpreadCounts, SpreadModel, VictimSpread,
};
pub use graph::{build_graph, GraphBuilder, LocalGraph, NodeId, NodeProfile, WeightedGraph};
pub use metrics::{
    analyze, clustering_coefficient, critical_degree, find_k0, global_spread, ratio_curves, spread_by_degree,
    summarize, AnalysisOptions, DegreeCurve, LeafConvention, NetworkAnalysis, NetworkSummary,
};
