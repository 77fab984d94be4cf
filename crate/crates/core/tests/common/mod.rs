//! Shared test helpers: seeded random graphs and a from-the-definition
//! cascade oracle that does not go through the library's local-subgraph code.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use gossipnet::{NodeId, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) with n in 5..=60 and small integer weights (1..=4), so the
/// close-friend test can be checked in exact arithmetic and ties are common.
pub fn random_integer_weighted(seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(5..=60);
    let p = rng.random_range(0.05..0.5);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j, rng.random_range(1..=4) as f64));
            }
        }
    }
    WeightedGraph::from_indexed_edges(n, edges).unwrap()
}

/// Same topology family with continuous weights in (0, 10).
pub fn random_real_weighted(seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5_A5A5);
    let n = rng.random_range(5..=60);
    let p = rng.random_range(0.05..0.5);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j, rng.random_range(0.01..10.0)));
            }
        }
    }
    WeightedGraph::from_indexed_edges(n, edges).unwrap()
}

/// Random bipartite graph (two sides, edges only across): triangle-free.
pub fn random_bipartite(seed: u64) -> WeightedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = rng.random_range(2..=25);
    let right = rng.random_range(2..=25);
    let p = rng.random_range(0.1..0.7);
    let mut edges = Vec::new();
    for i in 0..left {
        for j in 0..right {
            if rng.random_bool(p) {
                edges.push((i, left + j, rng.random_range(0.5..3.0)));
            }
        }
    }
    WeightedGraph::from_indexed_edges(left + right, edges).unwrap()
}

/// Close-friend test straight from the definition, `w_sv > strength / k`,
/// evaluated as `w_sv * k > strength` (exact for small integer weights).
pub fn oracle_close_friend(g: &WeightedGraph, s: NodeId, v: NodeId) -> bool {
    let w_sv = g.weight(s, v).unwrap();
    let strength: f64 = g.neighbors(s).iter().map(|&(_, w)| w).sum();
    w_sv * g.degree(s) as f64 > strength
}

/// Knower set of the cascade about `v` started by `r`: a knower `s` tells
/// every `t` that is adjacent to both `s` and `v`, unless (weighted model)
/// `v` is a close friend of `s`. Returns (knowers, max BFS layer).
pub fn oracle_cascade(g: &WeightedGraph, v: NodeId, r: NodeId, weighted: bool) -> (BTreeSet<NodeId>, usize) {
    let friends: BTreeSet<NodeId> = g.neighbor_ids(v).collect();
    assert!(friends.contains(&r));
    let mut knowers = BTreeSet::from([r]);
    let mut queue = VecDeque::from([(r, 0usize)]);
    let mut depth = 0;
    while let Some((s, d)) = queue.pop_front() {
        if weighted && oracle_close_friend(g, s, v) {
            continue;
        }
        for t in g.neighbor_ids(s) {
            if friends.contains(&t) && knowers.insert(t) {
                depth = depth.max(d + 1);
                queue.push_back((t, d + 1));
            }
        }
    }
    (knowers, depth)
}

/// Σ_r |knowers(v, r)| for one victim.
pub fn oracle_total(g: &WeightedGraph, v: NodeId, weighted: bool) -> usize {
    g.neighbor_ids(v)
        .map(|r| oracle_cascade(g, v, r, weighted).0.len())
        .sum()
}

/// Number of triangles through `v` by brute-force pair enumeration.
pub fn brute_triangles(g: &WeightedGraph, v: NodeId) -> usize {
    let nb: Vec<NodeId> = g.neighbor_ids(v).collect();
    let mut count = 0;
    for (x, &a) in nb.iter().enumerate() {
        for &b in &nb[x + 1..] {
            if g.has_edge(a, b) {
                count += 1;
            }
        }
    }
    count
}
