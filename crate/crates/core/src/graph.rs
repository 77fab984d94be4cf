//! Immutable weighted undirected graph.
//!
//! Nodes are addressed by dense `0..N` indices ([`NodeId`]); the original
//! labels are kept for reporting. Adjacency lists are sorted by neighbor
//! index, which keeps every traversal in this crate deterministic and makes
//! weight lookups a binary search.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::GraphError;

/// Dense 0-based node index.
pub type NodeId = usize;

/// Undirected simple graph with strictly positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    adjacency: Vec<Vec<(NodeId, f64)>>,
    edge_count: usize,
}

/// Degree, strength and close-friend threshold of a single node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeProfile {
    pub degree: usize,
    pub strength: f64,
    /// Mean incident edge weight; `None` for isolated nodes.
    pub threshold: Option<f64>,
}

/// Incremental builder used by the parsers and generators.
///
/// Duplicate edge records are merged by summing their weights, so a
/// deduplicated input is unaffected while repeated co-occurrence records
/// accumulate.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    weights: BTreeMap<(NodeId, NodeId), f64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a node (idempotent) and returns its dense index.
    pub fn add_node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    /// Adds (or accumulates onto) the edge `a`–`b`.
    pub fn add_edge(&mut self, a: &str, b: &str, weight: f64) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop { label: a.to_owned() });
        }
        check_weight(a, b, weight)?;
        let i = self.add_node(a);
        let j = self.add_node(b);
        self.accumulate(i, j, weight);
        Ok(())
    }

    /// Same as [`add_edge`](Self::add_edge) for nodes that were already
    /// declared, addressed by index.
    pub fn add_edge_by_id(&mut self, i: NodeId, j: NodeId, weight: f64) -> Result<(), GraphError> {
        let n = self.labels.len();
        for id in [i, j] {
            if id >= n {
                return Err(GraphError::UnknownNode(id.to_string()));
            }
        }
        if i == j {
            return Err(GraphError::SelfLoop {
                label: self.labels[i].clone(),
            });
        }
        check_weight(&self.labels[i], &self.labels[j], weight)?;
        self.accumulate(i, j, weight);
        Ok(())
    }

    fn accumulate(&mut self, i: NodeId, j: NodeId, weight: f64) {
        let key = (i.min(j), i.max(j));
        *self.weights.entry(key).or_insert(0.0) += weight;
    }

    pub fn build(self) -> WeightedGraph {
        let n = self.labels.len();
        let mut adjacency = vec![Vec::new(); n];
        // BTreeMap iteration is ordered by (min, max), so both endpoint lists
        // come out sorted by neighbor index without a separate sort.
        for (&(i, j), &w) in &self.weights {
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(nb, _)| nb);
        }
        WeightedGraph {
            labels: self.labels,
            adjacency,
            edge_count: self.weights.len(),
        }
    }
}

fn check_weight(a: &str, b: &str, weight: f64) -> Result<(), GraphError> {
    if !weight.is_finite() {
        return Err(GraphError::NonFiniteWeight {
            a: a.to_owned(),
            b: b.to_owned(),
        });
    }
    if weight <= 0.0 {
        return Err(GraphError::NonPositiveWeight {
            a: a.to_owned(),
            b: b.to_owned(),
            weight,
        });
    }
    Ok(())
}

/// Builds a graph from `(label, label, weight)` records.
pub fn build_graph<I, L>(records: I) -> Result<WeightedGraph, GraphError>
where
    I: IntoIterator<Item = (L, L, f64)>,
    L: AsRef<str>,
{
    let mut builder = GraphBuilder::new();
    for (a, b, w) in records {
        builder.add_edge(a.as_ref(), b.as_ref(), w)?;
    }
    Ok(builder.build())
}

impl WeightedGraph {
    /// Graph on `n` nodes labelled `"0".."n-1"` from index-addressed edges.
    pub fn from_indexed_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut builder = GraphBuilder::new();
        for i in 0..n {
            builder.add_node(&i.to_string());
        }
        for (i, j, w) in edges {
            builder.add_edge_by_id(i, j, w)?;
        }
        Ok(builder.build())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, i: NodeId) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, i: NodeId) -> bool {
        i < self.labels.len()
    }

    pub fn degree(&self, i: NodeId) -> usize {
        self.adjacency[i].len()
    }

    /// `(neighbor, weight)` pairs sorted by neighbor index.
    pub fn neighbors(&self, i: NodeId) -> &[(NodeId, f64)] {
        &self.adjacency[i]
    }

    pub fn neighbor_ids(&self, i: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[i].iter().map(|&(j, _)| j)
    }

    pub fn weight(&self, i: NodeId, j: NodeId) -> Option<f64> {
        let list = self.adjacency.get(i)?;
        list.binary_search_by_key(&j, |&(nb, _)| nb).ok().map(|pos| list[pos].1)
    }

    pub fn has_edge(&self, i: NodeId, j: NodeId) -> bool {
        self.weight(i, j).is_some()
    }

    /// Canonical edges `(i, j, w)` with `i < j`, ordered by `(i, j)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&(j, _)| j > i).map(move |&(j, w)| (i, j, w)))
    }

    pub fn strength(&self, i: NodeId) -> f64 {
        self.adjacency[i].iter().map(|&(_, w)| w).sum()
    }

    /// Mean incident edge weight; `None` when `i` is isolated.
    pub fn threshold(&self, i: NodeId) -> Option<f64> {
        let k = self.degree(i);
        (k > 0).then(|| self.strength(i) / k as f64)
    }

    pub fn profile(&self, i: NodeId) -> Result<NodeProfile, GraphError> {
        if !self.contains(i) {
            return Err(GraphError::UnknownNode(i.to_string()));
        }
        Ok(NodeProfile {
            degree: self.degree(i),
            strength: self.strength(i),
            threshold: self.threshold(i),
        })
    }

    pub fn profile_by_label(&self, label: &str) -> Result<NodeProfile, GraphError> {
        let id = self
            .node_id(label)
            .ok_or_else(|| GraphError::UnknownNode(label.to_owned()))?;
        self.profile(id)
    }

    pub fn isolated_count(&self) -> usize {
        self.adjacency.iter().filter(|l| l.is_empty()).count()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Subgraph induced by the 1-neighborhood of `v`.
    pub fn induced_neighborhood(&self, v: NodeId) -> LocalGraph {
        let nodes: Vec<NodeId> = self.neighbor_ids(v).collect();
        let adjacency = nodes
            .iter()
            .map(|&u| {
                // Both lists are sorted, so a merge walk finds N1(u) ∩ N1(v)
                // already expressed as positions in `nodes`.
                let mut local = Vec::new();
                let mut pos = 0;
                for (nb, _) in self.neighbors(u) {
                    while pos < nodes.len() && nodes[pos] < *nb {
                        pos += 1;
                    }
                    if pos < nodes.len() && nodes[pos] == *nb {
                        local.push(pos);
                    }
                }
                local
            })
            .collect();
        LocalGraph { nodes, adjacency }
    }

    /// Same topology with every weight replaced by `f(i, j, w)`.
    pub fn reweighted<F>(&self, mut f: F) -> Result<Self, GraphError>
    where
        F: FnMut(NodeId, NodeId, f64) -> f64,
    {
        let mut builder = GraphBuilder::new();
        for label in &self.labels {
            builder.add_node(label);
        }
        for (i, j, w) in self.edges() {
            builder.add_edge_by_id(i, j, f(i, j, w))?;
        }
        Ok(builder.build())
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightedGraph(N={}, M={})", self.node_count(), self.edge_count())
    }
}

/// Subgraph induced by `N1(v)`, re-indexed locally.
///
/// Local node `p` is global node `nodes[p]`; each local edge corresponds to
/// exactly one triangle through the victim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGraph {
    pub nodes: Vec<NodeId>,
    pub adjacency: Vec<Vec<usize>>,
}

impl LocalGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn local_index(&self, global: NodeId) -> Option<usize> {
        self.nodes.binary_search(&global).ok()
    }

    /// Local edges as global node pairs `(min, max)`.
    pub fn global_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (p, list) in self.adjacency.iter().enumerate() {
            for &q in list.iter().filter(|&&q| q > p) {
                out.push((self.nodes[p], self.nodes[q]));
            }
        }
        out
    }
}
