//! Network-level aggregates: spread factors, clustering, critical degrees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::MetricsError;
use crate::gossip::{fast_victim_spread, ModelSelection, SpreadCounts, SpreadModel};
use crate::graph::{NodeId, WeightedGraph};

/// How degree-1 victims enter network and per-degree averages.
///
/// A degree-1 victim's only friend is the originator, so `σ_v = β_v = 1`
/// under the cascade definition (`Literal`). `Zero` instead scores such
/// victims 0 (no triangle exists to carry the gossip anywhere) while still
/// counting them in the denominator. Per-victim values are never affected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafConvention {
    #[default]
    Literal,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub models: ModelSelection,
    /// Minimum `|V_k|` for a degree to be eligible as a critical degree.
    pub min_samples: usize,
    pub leaf: LeafConvention,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            models: ModelSelection::Both,
            min_samples: 1,
            leaf: LeafConvention::Literal,
        }
    }
}

/// Per-victim knower counts for the whole graph, indexed by node id.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadTable {
    victims: Vec<Option<SpreadCounts>>,
}

impl SpreadTable {
    /// Computes every victim in parallel; the result is ordered by node id
    /// regardless of scheduling.
    pub fn compute(g: &WeightedGraph, models: ModelSelection) -> Self {
        let victims = (0..g.node_count())
            .into_par_iter()
            .map(|v| fast_victim_spread(g, v, models))
            .collect();
        Self { victims }
    }

    pub fn get(&self, v: NodeId) -> Option<&SpreadCounts> {
        self.victims.get(v).and_then(Option::as_ref)
    }

    pub fn len(&self) -> usize {
        self.victims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.victims.is_empty()
    }

    /// Victim value after applying the leaf convention; `None` when isolated
    /// or the model was not computed.
    pub fn value(&self, v: NodeId, model: SpreadModel, leaf: LeafConvention) -> Option<f64> {
        let counts = self.get(v)?;
        let raw = counts.value(model)?;
        Some(match leaf {
            LeafConvention::Zero if counts.degree == 1 => 0.0,
            _ => raw,
        })
    }

    /// `(degree, value)` for every non-isolated victim in node order.
    fn samples(&self, model: SpreadModel, leaf: LeafConvention) -> impl Iterator<Item = (usize, f64)> + '_ {
        (0..self.victims.len()).filter_map(move |v| {
            let value = self.value(v, model, leaf)?;
            Some((self.victims[v].as_ref()?.degree, value))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub value: f64,
    pub samples: usize,
}

/// Per-degree means, keyed by degree.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DegreeCurve {
    pub points: BTreeMap<usize, CurvePoint>,
}

impl DegreeCurve {
    /// Groups `(degree, value)` samples and averages per degree.
    pub fn from_samples<I: IntoIterator<Item = (usize, f64)>>(samples: I) -> Self {
        let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
        for (k, x) in samples {
            let e = acc.entry(k).or_insert((0.0, 0));
            e.0 += x;
            e.1 += 1;
        }
        let points = acc
            .into_iter()
            .map(|(k, (sum, n))| {
                (
                    k,
                    CurvePoint {
                        value: sum / n as f64,
                        samples: n,
                    },
                )
            })
            .collect();
        Self { points }
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.points.get(&k).map(|p| p.value)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, CurvePoint)> + '_ {
        self.points.iter().map(|(&k, &p)| (k, p))
    }

    /// `|V_k|`-weighted mean over all points.
    pub fn weighted_mean(&self) -> Option<f64> {
        let total: usize = self.points.values().map(|p| p.samples).sum();
        (total > 0).then(|| self.points.values().map(|p| p.value * p.samples as f64).sum::<f64>() / total as f64)
    }

    /// Pointwise `self / denominator` where the denominator is present and
    /// nonzero; sample counts are taken from `self`.
    pub fn divide(&self, denominator: &DegreeCurve) -> DegreeCurve {
        let points = self
            .points
            .iter()
            .filter_map(|(&k, p)| {
                let d = denominator.get(k)?;
                (d != 0.0).then(|| {
                    (
                        k,
                        CurvePoint {
                            value: p.value / d,
                            samples: p.samples,
                        },
                    )
                })
            })
            .collect();
        DegreeCurve { points }
    }

    /// Pointwise product over shared degrees.
    pub fn multiply(&self, other: &DegreeCurve) -> DegreeCurve {
        let points = self
            .points
            .iter()
            .filter_map(|(&k, p)| {
                other.get(k).map(|o| {
                    (
                        k,
                        CurvePoint {
                            value: p.value * o,
                            samples: p.samples,
                        },
                    )
                })
            })
            .collect();
        DegreeCurve { points }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalSpread {
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    /// Victims averaged over (nodes with degree >= 1).
    pub victims: usize,
    pub isolated: usize,
}

fn mean_over_victims(table: &SpreadTable, model: SpreadModel, leaf: LeafConvention) -> Option<f64> {
    let mut sum = 0.0;
    let mut n = 0usize;
    for (_, x) in table.samples(model, leaf) {
        sum += x;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

fn global_from_table(g: &WeightedGraph, table: &SpreadTable, leaf: LeafConvention) -> GlobalSpread {
    let isolated = g.isolated_count();
    GlobalSpread {
        sigma: mean_over_victims(table, SpreadModel::Unweighted, leaf),
        beta: mean_over_victims(table, SpreadModel::Weighted, leaf),
        victims: g.node_count() - isolated,
        isolated,
    }
}

/// Network means σ and β over all non-isolated victims.
pub fn global_spread(
    g: &WeightedGraph,
    models: ModelSelection,
    leaf: LeafConvention,
) -> Result<GlobalSpread, MetricsError> {
    if g.edge_count() == 0 {
        return Err(MetricsError::AllIsolated);
    }
    let table = SpreadTable::compute(g, models);
    Ok(global_from_table(g, &table, leaf))
}

/// σ_k (or β_k): mean victim value per victim degree.
pub fn spread_by_degree(g: &WeightedGraph, model: SpreadModel, leaf: LeafConvention) -> DegreeCurve {
    let models = match model {
        SpreadModel::Unweighted => ModelSelection::Unweighted,
        SpreadModel::Weighted => ModelSelection::Weighted,
    };
    let table = SpreadTable::compute(g, models);
    DegreeCurve::from_samples(table.samples(model, leaf))
}

/// Local clustering coefficient of every node; 0 for degree < 2.
pub fn local_clustering(g: &WeightedGraph) -> Vec<f64> {
    (0..g.node_count())
        .into_par_iter()
        .map(|i| {
            let k = g.degree(i);
            if k < 2 {
                return 0.0;
            }
            let links = g.induced_neighborhood(i).edge_count();
            2.0 * links as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// Mean local clustering over all nodes, plus its per-degree curve.
pub fn clustering_coefficient(g: &WeightedGraph) -> (f64, DegreeCurve) {
    let local = local_clustering(g);
    let cc = if local.is_empty() {
        0.0
    } else {
        local.iter().sum::<f64>() / local.len() as f64
    };
    let curve = DegreeCurve::from_samples(local.iter().enumerate().map(|(i, &c)| (g.degree(i), c)));
    (cc, curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalDegree {
    pub degree: usize,
    /// Both a smaller and a larger eligible degree have a higher value.
    pub interior: bool,
}

/// Degree minimizing `curve` among points with at least `min_samples`
/// samples, ties going to the smallest degree. Absent with fewer than three
/// eligible points.
pub fn find_k0(curve: &DegreeCurve, min_samples: usize) -> Option<CriticalDegree> {
    let eligible: Vec<(usize, f64)> = curve
        .iter()
        .filter(|(_, p)| p.samples >= min_samples)
        .map(|(k, p)| (k, p.value))
        .collect();
    if eligible.len() < 3 {
        return None;
    }
    let (degree, min) = eligible
        .iter()
        .copied()
        .fold(None, |best: Option<(usize, f64)>, (k, x)| match best {
            Some((_, b)) if b <= x => best,
            _ => Some((k, x)),
        })?;
    let below = eligible.iter().any(|&(k, x)| k < degree && x > min);
    let above = eligible.iter().any(|&(k, x)| k > degree && x > min);
    Some(CriticalDegree {
        degree,
        interior: below && above,
    })
}

/// `find_k0` under the analysis options. With `LeafConvention::Zero` the
/// degree-1 point is a convention rather than a measurement, so it is left
/// out of the search.
pub fn critical_degree(curve: &DegreeCurve, opts: &AnalysisOptions) -> Option<CriticalDegree> {
    match opts.leaf {
        LeafConvention::Literal => find_k0(curve, opts.min_samples),
        LeafConvention::Zero => {
            let trimmed = DegreeCurve {
                points: curve.points.range(2..).map(|(&k, &p)| (k, p)).collect(),
            };
            find_k0(&trimmed, opts.min_samples)
        }
    }
}

/// Table-style network coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub k0: Option<usize>,
    pub k0_w: Option<usize>,
    pub k0w_over_k0: Option<f64>,
    #[serde(rename = "CC")]
    pub cc: f64,
    pub sigma: Option<f64>,
    pub beta: Option<f64>,
    pub sigma_over_cc: Option<f64>,
    pub beta_over_cc: Option<f64>,
    pub beta_over_sigma: Option<f64>,
    pub beta_over_sigma_cc: Option<f64>,
    /// Nodes with degree >= 1 (the σ/β denominator).
    #[serde(rename = "N_active")]
    pub n_active: usize,
    pub isolated: usize,
    pub k0_interior: Option<bool>,
    pub k0_w_interior: Option<bool>,
    pub min_samples: usize,
    pub leaf_victims: LeafConvention,
}

fn ratio(num: Option<f64>, den: Option<f64>) -> Option<f64> {
    match (num, den) {
        (Some(a), Some(b)) if b != 0.0 => Some(a / b),
        _ => None,
    }
}

impl NetworkSummary {
    /// Column names of the numeric fields, in output order.
    pub const FIELD_NAMES: [&'static str; 14] = [
        "N",
        "M",
        "k0",
        "k0_w",
        "k0w_over_k0",
        "CC",
        "sigma",
        "beta",
        "sigma_over_cc",
        "beta_over_cc",
        "beta_over_sigma",
        "beta_over_sigma_cc",
        "N_active",
        "isolated",
    ];

    /// Numeric fields in [`FIELD_NAMES`](Self::FIELD_NAMES) order.
    pub fn numeric_fields(&self) -> [Option<f64>; 14] {
        [
            Some(self.n as f64),
            Some(self.m as f64),
            self.k0.map(|k| k as f64),
            self.k0_w.map(|k| k as f64),
            self.k0w_over_k0,
            Some(self.cc),
            self.sigma,
            self.beta,
            self.sigma_over_cc,
            self.beta_over_cc,
            self.beta_over_sigma,
            self.beta_over_sigma_cc,
            Some(self.n_active as f64),
            Some(self.isolated as f64),
        ]
    }

    fn fill_ratios(&mut self) {
        let cc = Some(self.cc);
        self.k0w_over_k0 = ratio(self.k0_w.map(|k| k as f64), self.k0.map(|k| k as f64));
        self.sigma_over_cc = ratio(self.sigma, cc);
        self.beta_over_cc = ratio(self.beta, cc);
        self.beta_over_sigma = ratio(self.beta, self.sigma);
        self.beta_over_sigma_cc = ratio(self.beta, self.sigma.map(|s| s * self.cc));
    }
}

/// All per-degree curves produced by an analysis. Missing models yield
/// empty curves.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DegreeCurves {
    pub sigma: DegreeCurve,
    pub beta: DegreeCurve,
    pub cc: DegreeCurve,
    pub beta_over_sigma: DegreeCurve,
    pub beta_over_sigma_cc: DegreeCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkAnalysis {
    pub summary: NetworkSummary,
    pub curves: DegreeCurves,
}

/// Runs the selected models over every victim and assembles the summary and
/// per-degree curves from one pass.
pub fn analyze(g: &WeightedGraph, opts: &AnalysisOptions) -> NetworkAnalysis {
    let table = SpreadTable::compute(g, opts.models);
    analyze_table(g, &table, opts)
}

pub fn analyze_table(g: &WeightedGraph, table: &SpreadTable, opts: &AnalysisOptions) -> NetworkAnalysis {
    let global = global_from_table(g, table, opts.leaf);
    let (cc, cc_curve) = clustering_coefficient(g);
    let sigma = DegreeCurve::from_samples(table.samples(SpreadModel::Unweighted, opts.leaf));
    let beta = DegreeCurve::from_samples(table.samples(SpreadModel::Weighted, opts.leaf));
    let (beta_over_sigma, beta_over_sigma_cc) = ratio_curves_from(&sigma, &beta, &cc_curve);
    let k0 = critical_degree(&sigma, opts);
    let k0_w = critical_degree(&beta, opts);
    let mut summary = NetworkSummary {
        n: g.node_count(),
        m: g.edge_count(),
        k0: k0.map(|c| c.degree),
        k0_w: k0_w.map(|c| c.degree),
        k0w_over_k0: None,
        cc,
        sigma: global.sigma,
        beta: global.beta,
        sigma_over_cc: None,
        beta_over_cc: None,
        beta_over_sigma: None,
        beta_over_sigma_cc: None,
        n_active: global.victims,
        isolated: global.isolated,
        k0_interior: k0.map(|c| c.interior),
        k0_w_interior: k0_w.map(|c| c.interior),
        min_samples: opts.min_samples,
        leaf_victims: opts.leaf,
    };
    summary.fill_ratios();
    NetworkAnalysis {
        summary,
        curves: DegreeCurves {
            sigma,
            beta,
            cc: cc_curve,
            beta_over_sigma,
            beta_over_sigma_cc,
        },
    }
}

pub fn summarize(g: &WeightedGraph, opts: &AnalysisOptions) -> NetworkSummary {
    analyze(g, opts).summary
}

fn ratio_curves_from(sigma: &DegreeCurve, beta: &DegreeCurve, cc: &DegreeCurve) -> (DegreeCurve, DegreeCurve) {
    (beta.divide(sigma), beta.divide(&sigma.multiply(cc)))
}

/// `β_k / σ_k` and `β_k / (σ_k · CC_k)`.
pub fn ratio_curves(g: &WeightedGraph, leaf: LeafConvention) -> (DegreeCurve, DegreeCurve) {
    let table = SpreadTable::compute(g, ModelSelection::Both);
    let sigma = DegreeCurve::from_samples(table.samples(SpreadModel::Unweighted, leaf));
    let beta = DegreeCurve::from_samples(table.samples(SpreadModel::Weighted, leaf));
    let (_, cc) = clustering_coefficient(g);
    ratio_curves_from(&sigma, &beta, &cc)
}
