mod common;

use std::path::Path;

use common::{brute_triangles, oracle_total};
use gossipnet::ingest::parse_edge_list;
use gossipnet::{analyze, fast_victim_spread, AnalysisOptions, LeafConvention, ModelSelection, WeightedGraph};

fn lesmis() -> WeightedGraph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/lesmis.edges");
    parse_edge_list(&path, None).unwrap()
}

#[test]
fn size_and_clustering() {
    let g = lesmis();
    assert_eq!((g.node_count(), g.edge_count()), (77, 254));
    // Average local clustering from brute-force triangle counts.
    let cc: f64 = (0..g.node_count())
        .map(|v| {
            let k = g.degree(v);
            if k < 2 {
                0.0
            } else {
                2.0 * brute_triangles(&g, v) as f64 / (k * (k - 1)) as f64
            }
        })
        .sum::<f64>()
        / 77.0;
    let s = analyze(&g, &AnalysisOptions::default()).summary;
    assert!((s.cc - cc).abs() < 1e-12);
    assert!((s.cc - 0.5731).abs() < 1e-4);
}

#[test]
fn spread_matches_oracle() {
    let g = lesmis();
    let mut sigma = 0.0;
    let mut beta = 0.0;
    let mut sigma_zero = 0.0;
    for v in 0..g.node_count() {
        let k = g.degree(v);
        let c = fast_victim_spread(&g, v, ModelSelection::Both).unwrap();
        let (u, w) = (oracle_total(&g, v, false), oracle_total(&g, v, true));
        assert_eq!(c.unweighted_total(), Some(u));
        assert_eq!(c.weighted_total(), Some(w));
        sigma += u as f64 / (k * k) as f64;
        beta += w as f64 / (k * k) as f64;
        if k > 1 {
            sigma_zero += u as f64 / (k * k) as f64;
        }
    }
    let literal = analyze(&g, &AnalysisOptions::default()).summary;
    assert!((literal.sigma.unwrap() - sigma / 77.0).abs() < 1e-12);
    assert!((literal.beta.unwrap() - beta / 77.0).abs() < 1e-12);
    let zero = analyze(
        &g,
        &AnalysisOptions {
            leaf: LeafConvention::Zero,
            ..Default::default()
        },
    )
    .summary;
    assert!((zero.sigma.unwrap() - sigma_zero / 77.0).abs() < 1e-12);
}

#[test]
fn zero_convention_skips_leaf_point_for_critical_degree() {
    let g = lesmis();
    for min_samples in 1..=3 {
        let literal = AnalysisOptions {
            min_samples,
            ..Default::default()
        };
        let zero = AnalysisOptions {
            leaf: LeafConvention::Zero,
            ..literal
        };
        let a = analyze(&g, &literal).summary;
        let b = analyze(&g, &zero).summary;
        assert_eq!((a.k0, a.k0_w), (b.k0, b.k0_w));
        assert_ne!(b.k0, Some(1));
    }
}
