use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop on node {label:?}")]
    SelfLoop { label: String },
    #[error("edge {a:?}-{b:?} has non-positive weight {weight}")]
    NonPositiveWeight { a: String, b: String, weight: f64 },
    #[error("edge {a:?}-{b:?} has a non-finite weight")]
    NonFiniteWeight { a: String, b: String },
    #[error("unknown node {0}")]
    UnknownNode(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GossipError {
    #[error("no edge between {0} and {1}")]
    NoEdge(usize, usize),
    #[error("node {originator} is not a neighbor of victim {victim}")]
    NotANeighbor { victim: usize, originator: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("every node is isolated; spread factors are undefined")]
    AllIsolated,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("probability p = {0} is outside [0, 1]")]
    Probability(f64),
    #[error("need m <= m0 < N (got m = {m}, m0 = {m0}, N = {n})")]
    BarabasiAlbert { m: usize, m0: usize, n: usize },
    #[error("Watts-Strogatz ring degree k = {k} must be even and below N = {n}")]
    WattsStrogatz { k: usize, n: usize },
    #[error("N must be at least 1")]
    EmptyNetwork,
    #[error("BA needs m >= 1")]
    NoAttachment,
    #[error("weight_stddev must be finite and non-negative (got {0})")]
    WeightSpread(f64),
    #[error("weight_mean must be finite (got {0})")]
    WeightMean(f64),
    #[error("clamp/resample floor is unreachable: weight_stddev = 0 with weight_mean = {0} <= 0")]
    DegenerateWeights(f64),
    #[error("realizations must be at least 1")]
    NoRealizations,
    #[error("cannot parse generator config: {0}")]
    Parse(String),
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(
        "cannot tell the separator apart: some records use commas and others do not (first mismatch on line {line})"
    )]
    AmbiguousSeparator { line: usize },
}
