//! Small reference networks with hand-checkable spread values.

use crate::graph::{build_graph, WeightedGraph};

/// Victim `v` with eight neighbors `a..h`; local edges a-b, b-c, b-d, d-e
/// and g-h. All weights are 1 except v-b, which is 2.
pub fn eight_friends() -> WeightedGraph {
    let mut records: Vec<(&str, &str, f64)> = ["a", "b", "c", "d", "e", "f", "g", "h"]
        .into_iter()
        .map(|n| ("v", n, if n == "b" { 2.0 } else { 1.0 }))
        .collect();
    records.extend([
        ("a", "b", 1.0),
        ("b", "c", 1.0),
        ("b", "d", 1.0),
        ("d", "e", 1.0),
        ("g", "h", 1.0),
    ]);
    build_graph(records).expect("static fixture")
}

/// Two adjacent nodes with asymmetric close-friend views of each other:
/// `i` has incident weights 2 and 9 (mean 11/2), `j` has 2, 1 and 1
/// (mean 4/3); `w_ij = 2`.
pub fn asymmetric_pair() -> WeightedGraph {
    build_graph([("i", "j", 2.0), ("i", "x", 9.0), ("j", "y", 1.0), ("j", "z", 1.0)]).expect("static fixture")
}

pub fn complete(n: usize, weight: f64) -> WeightedGraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, weight)));
    WeightedGraph::from_indexed_edges(n, edges).expect("valid complete graph")
}

/// Star with center `0` and `leaves` leaves.
pub fn star(leaves: usize) -> WeightedGraph {
    WeightedGraph::from_indexed_edges(leaves + 1, (1..=leaves).map(|j| (0, j, 1.0))).expect("valid star")
}

pub fn path(n: usize) -> WeightedGraph {
    WeightedGraph::from_indexed_edges(n, (1..n).map(|j| (j - 1, j, 1.0))).expect("valid path")
}
