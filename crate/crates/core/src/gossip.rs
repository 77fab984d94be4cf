//! Triangle-cascade gossip spreading about a single victim.
//!
//! Gossip about victim `v` only travels inside the subgraph induced by
//! `N1(v)`: a spreader `s` passes it to a target `t` when `v`, `s` and `t`
//! form a triangle. In the unweighted model every knower forwards to all of
//! its local neighbors. In the weighted model a knower who regards the victim
//! as a close friend still hears the gossip but never passes it on; the
//! originator is subject to the same rule before its first send.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GossipError;
use crate::graph::{LocalGraph, NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpreadModel {
    Unweighted,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelSelection {
    Unweighted,
    Weighted,
    #[default]
    Both,
}

impl ModelSelection {
    pub fn includes(self, model: SpreadModel) -> bool {
        matches!(
            (self, model),
            (ModelSelection::Both, _)
                | (ModelSelection::Unweighted, SpreadModel::Unweighted)
                | (ModelSelection::Weighted, SpreadModel::Weighted)
        )
    }
}

/// True iff `v` is a close friend of `s`: `w_sv` strictly exceeds the mean
/// weight of `s`'s edges. Asymmetric in general.
pub fn is_close_friend(g: &WeightedGraph, s: NodeId, v: NodeId) -> Result<bool, GossipError> {
    if !g.contains(s) || !g.contains(v) {
        return Err(GossipError::NoEdge(s, v));
    }
    let w_sv = g.weight(s, v).ok_or(GossipError::NoEdge(s, v))?;
    Ok(exceeds_mean(g, s, w_sv))
}

// Evaluated as Σ_ℓ (w_sv − w_sℓ) > 0 rather than w_sv > strength / k so that
// equal weights tie exactly instead of depending on summation rounding.
fn exceeds_mean(g: &WeightedGraph, s: NodeId, w_sv: f64) -> bool {
    g.neighbors(s).iter().map(|&(_, w)| w_sv - w).sum::<f64>() > 0.0
}

/// Forwarding decision of every local node of `local` about victim `v`.
fn forwarding_mask(g: &WeightedGraph, v: NodeId, local: &LocalGraph, model: SpreadModel) -> Vec<bool> {
    match model {
        SpreadModel::Unweighted => vec![true; local.len()],
        SpreadModel::Weighted => g
            .neighbors(v)
            .iter()
            .map(|&(s, w_vs)| !exceeds_mean(g, s, w_vs))
            .collect(),
    }
}

/// Outcome of one (victim, originator) run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeResult {
    /// Global ids of every neighbor of the victim that heard the gossip,
    /// originator included, sorted ascending.
    pub knowers: Vec<NodeId>,
    /// Largest propagation-hop distance from the originator among knowers.
    pub spreading_time: usize,
}

impl CascadeResult {
    pub fn count(&self) -> usize {
        self.knowers.len()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.knowers.binary_search(&node).is_ok()
    }

    pub fn is_subset_of(&self, other: &CascadeResult) -> bool {
        self.knowers.iter().all(|&n| other.contains(n))
    }
}

/// BFS from `start` where only nodes with `forwards[p]` expand.
/// Returns local knower indices and the maximal layer reached.
fn spread_local(local: &LocalGraph, forwards: &[bool], start: usize) -> (Vec<usize>, usize) {
    let mut layer = vec![usize::MAX; local.len()];
    let mut queue = VecDeque::new();
    let mut knowers = vec![start];
    let mut depth = 0;
    layer[start] = 0;
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        if !forwards[p] {
            continue;
        }
        for &q in &local.adjacency[p] {
            if layer[q] == usize::MAX {
                layer[q] = layer[p] + 1;
                depth = depth.max(layer[q]);
                knowers.push(q);
                queue.push_back(q);
            }
        }
    }
    (knowers, depth)
}

fn originator_slot(local: &LocalGraph, v: NodeId, r: NodeId) -> Result<usize, GossipError> {
    local.local_index(r).ok_or(GossipError::NotANeighbor {
        victim: v,
        originator: r,
    })
}

fn check_victim(g: &WeightedGraph, v: NodeId) -> Result<(), GossipError> {
    if g.contains(v) {
        Ok(())
    } else {
        Err(crate::error::GraphError::UnknownNode(v.to_string()).into())
    }
}

/// Runs one cascade about victim `v` started by neighbor `r`.
pub fn cascade(g: &WeightedGraph, v: NodeId, r: NodeId, model: SpreadModel) -> Result<CascadeResult, GossipError> {
    check_victim(g, v)?;
    let local = g.induced_neighborhood(v);
    let start = originator_slot(&local, v, r)?;
    let forwards = forwarding_mask(g, v, &local, model);
    let (reached, spreading_time) = spread_local(&local, &forwards, start);
    let mut knowers: Vec<NodeId> = reached.into_iter().map(|p| local.nodes[p]).collect();
    knowers.sort_unstable();
    Ok(CascadeResult {
        knowers,
        spreading_time,
    })
}

pub fn cascade_unweighted(g: &WeightedGraph, v: NodeId, r: NodeId) -> Result<CascadeResult, GossipError> {
    cascade(g, v, r, SpreadModel::Unweighted)
}

pub fn cascade_weighted(g: &WeightedGraph, v: NodeId, r: NodeId) -> Result<CascadeResult, GossipError> {
    cascade(g, v, r, SpreadModel::Weighted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CascadeStats {
    /// `n_vr` (unweighted) or `m_vr` (weighted).
    pub count: usize,
    pub spreading_time: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OriginatorOutcome {
    pub originator: NodeId,
    pub unweighted: Option<CascadeStats>,
    pub weighted: Option<CascadeStats>,
}

/// Per-originator cascades for one victim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VictimSpread {
    pub victim: NodeId,
    pub degree: usize,
    pub per_originator: Vec<OriginatorOutcome>,
}

impl OriginatorOutcome {
    fn stats(&self, model: SpreadModel) -> Option<CascadeStats> {
        match model {
            SpreadModel::Unweighted => self.unweighted,
            SpreadModel::Weighted => self.weighted,
        }
    }
}

impl VictimSpread {
    /// σ_vr for each originator, in originator order.
    pub fn sigma_per_originator(&self) -> Option<Vec<f64>> {
        self.fractions(SpreadModel::Unweighted)
    }

    /// β_vr for each originator, in originator order.
    pub fn beta_per_originator(&self) -> Option<Vec<f64>> {
        self.fractions(SpreadModel::Weighted)
    }

    fn fractions(&self, model: SpreadModel) -> Option<Vec<f64>> {
        let k = self.degree as f64;
        self.per_originator
            .iter()
            .map(|o| o.stats(model).map(|s| s.count as f64 / k))
            .collect()
    }

    pub fn sigma(&self) -> Option<f64> {
        self.counts().sigma()
    }

    pub fn beta(&self) -> Option<f64> {
        self.counts().beta()
    }

    /// Count-only view, comparable with [`fast_victim_spread`].
    pub fn counts(&self) -> SpreadCounts {
        let collect = |model| {
            self.per_originator
                .iter()
                .map(|o| o.stats(model).map(|s| s.count))
                .collect::<Option<Vec<_>>>()
        };
        SpreadCounts {
            victim: self.victim,
            degree: self.degree,
            unweighted: collect(SpreadModel::Unweighted),
            weighted: collect(SpreadModel::Weighted),
        }
    }
}

/// Knower counts per originator (in ascending originator id order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadCounts {
    pub victim: NodeId,
    pub degree: usize,
    pub unweighted: Option<Vec<usize>>,
    pub weighted: Option<Vec<usize>>,
}

impl SpreadCounts {
    /// Σ_r n_vr; σ_v is this over `k_v²`.
    pub fn unweighted_total(&self) -> Option<usize> {
        self.unweighted.as_ref().map(|c| c.iter().sum())
    }

    /// Σ_r m_vr; β_v is this over `k_v²`.
    pub fn weighted_total(&self) -> Option<usize> {
        self.weighted.as_ref().map(|c| c.iter().sum())
    }

    pub fn sigma(&self) -> Option<f64> {
        self.unweighted_total().map(|t| self.normalize(t))
    }

    pub fn beta(&self) -> Option<f64> {
        self.weighted_total().map(|t| self.normalize(t))
    }

    pub fn value(&self, model: SpreadModel) -> Option<f64> {
        match model {
            SpreadModel::Unweighted => self.sigma(),
            SpreadModel::Weighted => self.beta(),
        }
    }

    fn normalize(&self, total: usize) -> f64 {
        let k = self.degree as f64;
        total as f64 / (k * k)
    }
}

/// Runs every originator's cascade with explicit BFS. `None` for an
/// isolated victim.
pub fn victim_spread(g: &WeightedGraph, v: NodeId, models: ModelSelection) -> Option<VictimSpread> {
    if !g.contains(v) || g.degree(v) == 0 {
        return None;
    }
    let local = g.induced_neighborhood(v);
    let masks = [SpreadModel::Unweighted, SpreadModel::Weighted]
        .map(|m| models.includes(m).then(|| forwarding_mask(g, v, &local, m)));
    let run = |mask: &Option<Vec<bool>>, start: usize| {
        mask.as_ref().map(|forwards| {
            let (knowers, spreading_time) = spread_local(&local, forwards, start);
            CascadeStats {
                count: knowers.len(),
                spreading_time,
            }
        })
    };
    let per_originator = (0..local.len())
        .map(|p| OriginatorOutcome {
            originator: local.nodes[p],
            unweighted: run(&masks[0], p),
            weighted: run(&masks[1], p),
        })
        .collect();
    Some(VictimSpread {
        victim: v,
        degree: local.len(),
        per_originator,
    })
}

/// Component labelling of `local` restricted to nodes with `keep[p]`.
/// Returns (label per node or usize::MAX, component sizes).
fn components(local: &LocalGraph, keep: &[bool]) -> (Vec<usize>, Vec<usize>) {
    let mut label = vec![usize::MAX; local.len()];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for seed in 0..local.len() {
        if !keep[seed] || label[seed] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        label[seed] = id;
        stack.push(seed);
        while let Some(p) = stack.pop() {
            size += 1;
            for &q in &local.adjacency[p] {
                if keep[q] && label[q] == usize::MAX {
                    label[q] = id;
                    stack.push(q);
                }
            }
        }
        sizes.push(size);
    }
    (label, sizes)
}

fn unweighted_counts(local: &LocalGraph) -> Vec<usize> {
    let all = vec![true; local.len()];
    let (label, sizes) = components(local, &all);
    label.iter().map(|&c| sizes[c]).collect()
}

fn weighted_counts(local: &LocalGraph, forwards: &[bool]) -> Vec<usize> {
    let (label, sizes) = components(local, forwards);
    // Non-forwarders adjacent to each forwarder component: they hear the
    // gossip from the component and absorb it.
    let mut members = vec![Vec::new(); sizes.len()];
    for (p, &c) in label.iter().enumerate() {
        if c != usize::MAX {
            members[c].push(p);
        }
    }
    let mut boundary = vec![0usize; sizes.len()];
    // A stopper can border several components; `seen_by` dedupes per component.
    let mut seen_by = vec![usize::MAX; local.len()];
    for (c, list) in members.iter().enumerate() {
        for &p in list {
            for &q in &local.adjacency[p] {
                if !forwards[q] && seen_by[q] != c {
                    seen_by[q] = c;
                    boundary[c] += 1;
                }
            }
        }
    }
    label
        .iter()
        .map(|&c| if c == usize::MAX { 1 } else { sizes[c] + boundary[c] })
        .collect()
}

/// Same counts as [`victim_spread`] computed from connected components of
/// the local subgraph instead of one BFS per originator. Spreading times are
/// not produced.
pub fn fast_victim_spread(g: &WeightedGraph, v: NodeId, models: ModelSelection) -> Option<SpreadCounts> {
    if !g.contains(v) || g.degree(v) == 0 {
        return None;
    }
    let local = g.induced_neighborhood(v);
    let unweighted = models
        .includes(SpreadModel::Unweighted)
        .then(|| unweighted_counts(&local));
    let weighted = models.includes(SpreadModel::Weighted).then(|| {
        let forwards = forwarding_mask(g, v, &local, SpreadModel::Weighted);
        weighted_counts(&local, &forwards)
    });
    Some(SpreadCounts {
        victim: v,
        degree: local.len(),
        unweighted,
        weighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn id(g: &WeightedGraph, label: &str) -> NodeId {
        g.node_id(label).unwrap()
    }

    fn labels(g: &WeightedGraph, r: &CascadeResult) -> Vec<String> {
        let mut out: Vec<String> = r.knowers.iter().map(|&n| g.label(n).to_owned()).collect();
        out.sort();
        out
    }

    #[test]
    fn asymmetric_pair_close_friend_is_asymmetric() {
        let g = fixtures::asymmetric_pair();
        let (i, j) = (id(&g, "i"), id(&g, "j"));
        assert!(is_close_friend(&g, j, i).unwrap());
        assert!(!is_close_friend(&g, i, j).unwrap());
    }

    #[test]
    fn degree_one_spreader_never_counts_victim_as_close() {
        let g = fixtures::path(2);
        assert!(!is_close_friend(&g, 0, 1).unwrap());
    }

    #[test]
    fn close_friend_requires_edge() {
        let g = fixtures::path(3);
        assert_eq!(is_close_friend(&g, 0, 2), Err(GossipError::NoEdge(0, 2)));
    }

    #[test]
    fn uniform_awkward_weights_tie_exactly() {
        // 0.7 * 3 summed in floating point rounds below 2.1; the tie must
        // still hold.
        let g = fixtures::complete(4, 0.7);
        for s in 0..4 {
            for v in 0..4 {
                if s != v {
                    assert!(!is_close_friend(&g, s, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn eight_friends_unweighted_cascades() {
        let g = fixtures::eight_friends();
        let v = id(&g, "v");
        let b = cascade_unweighted(&g, v, id(&g, "b")).unwrap();
        assert_eq!(labels(&g, &b), ["a", "b", "c", "d", "e"]);
        assert_eq!(b.spreading_time, 2);
        let f = cascade_unweighted(&g, v, id(&g, "f")).unwrap();
        assert_eq!(f.count(), 1);
        assert_eq!(f.spreading_time, 0);
        let gg = cascade_unweighted(&g, v, id(&g, "g")).unwrap();
        assert_eq!(labels(&g, &gg), ["g", "h"]);
        assert_eq!(gg.spreading_time, 1);
    }

    #[test]
    fn eight_friends_weighted_cascades() {
        let g = fixtures::eight_friends();
        let v = id(&g, "v");
        let run = |r: &str| labels(&g, &cascade_weighted(&g, v, id(&g, r)).unwrap());
        assert_eq!(run("b"), ["b"]);
        assert_eq!(run("a"), ["a", "b"]);
        assert_eq!(run("d"), ["b", "d", "e"]);
        assert_eq!(run("e"), ["b", "d", "e"]);
        assert_eq!(run("f"), ["f"]);
        assert_eq!(run("g"), ["g", "h"]);
    }

    #[test]
    fn weighted_spreading_time_follows_permitted_paths() {
        let g = fixtures::eight_friends();
        let v = id(&g, "v");
        let e = cascade_weighted(&g, v, id(&g, "e")).unwrap();
        // e -> d -> b
        assert_eq!(e.spreading_time, 2);
        let b = cascade_weighted(&g, v, id(&g, "b")).unwrap();
        assert_eq!(b.spreading_time, 0);
    }

    #[test]
    fn originator_must_neighbor_victim() {
        let g = fixtures::eight_friends();
        let err = cascade_unweighted(&g, id(&g, "a"), id(&g, "e")).unwrap_err();
        assert!(matches!(err, GossipError::NotANeighbor { .. }));
    }

    #[test]
    fn eight_friends_victim_totals() {
        let g = fixtures::eight_friends();
        let spread = victim_spread(&g, id(&g, "v"), ModelSelection::Both).unwrap();
        let counts = spread.counts();
        assert_eq!(counts.degree, 8);
        assert_eq!(counts.unweighted_total(), Some(30));
        assert_eq!(counts.weighted_total(), Some(16));
        assert_eq!(spread.sigma(), Some(30.0 / 64.0));
        assert_eq!(spread.beta(), Some(16.0 / 64.0));
        assert_eq!(fast_victim_spread(&g, id(&g, "v"), ModelSelection::Both), Some(counts));
    }

    #[test]
    fn uniform_triangle_spreads_everywhere() {
        let g = fixtures::complete(3, 1.0);
        for v in 0..3 {
            let s = victim_spread(&g, v, ModelSelection::Both).unwrap();
            assert_eq!(s.sigma(), Some(1.0));
            assert_eq!(s.beta(), Some(1.0));
        }
    }

    #[test]
    fn complete_five_is_fully_gossipy() {
        let g = fixtures::complete(5, 2.5);
        let s = victim_spread(&g, 2, ModelSelection::Both).unwrap();
        assert_eq!(s.sigma(), Some(1.0));
        assert_eq!(s.beta(), Some(1.0));
    }

    #[test]
    fn star_center_spread_is_one_over_k() {
        let g = fixtures::star(5);
        let c = fast_victim_spread(&g, 0, ModelSelection::Both).unwrap();
        assert_eq!(c.sigma(), Some(1.0 / 5.0));
        assert_eq!(c.unweighted, Some(vec![1; 5]));
    }

    #[test]
    fn isolated_victim_is_undefined() {
        let mut b = crate::graph::GraphBuilder::new();
        b.add_node("x");
        let g = b.build();
        assert!(victim_spread(&g, 0, ModelSelection::Both).is_none());
        assert!(fast_victim_spread(&g, 0, ModelSelection::Both).is_none());
    }

    #[test]
    fn model_selection_limits_work() {
        let g = fixtures::eight_friends();
        let s = victim_spread(&g, 0, ModelSelection::Unweighted).unwrap();
        assert!(s.sigma().is_some());
        assert!(s.beta().is_none());
        let c = fast_victim_spread(&g, 0, ModelSelection::Weighted).unwrap();
        assert!(c.unweighted.is_none());
        assert!(c.weighted.is_some());
    }

    #[test]
    fn per_originator_fractions() {
        let g = fixtures::eight_friends();
        let s = victim_spread(&g, id(&g, "v"), ModelSelection::Both).unwrap();
        let sig = s.sigma_per_originator().unwrap();
        let bet = s.beta_per_originator().unwrap();
        let pos = |l: &str| s.per_originator.iter().position(|o| o.originator == id(&g, l)).unwrap();
        assert_eq!(sig[pos("a")], 5.0 / 8.0);
        assert_eq!(sig[pos("g")], 2.0 / 8.0);
        assert_eq!(bet[pos("d")], 3.0 / 8.0);
        assert_eq!(bet[pos("b")], 1.0 / 8.0);
    }
}
