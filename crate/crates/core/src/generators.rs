//! Erdős–Rényi, Barabási–Albert and Watts–Strogatz networks with
//! Gaussian node weights, plus seeded ensemble runs.
//!
//! Every realization owns a ChaCha8 generator seeded with
//! [`realization_seed`]; stream 0 drives the topology and stream 1 the
//! weights, so realizations are independent of each other and of the order
//! in which they are executed.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::graph::WeightedGraph;
use crate::metrics::{
    analyze, critical_degree, AnalysisOptions, CriticalDegree, CurvePoint, DegreeCurve, NetworkSummary,
};

/// Node weights are kept strictly above this floor.
pub const WEIGHT_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorModel {
    Er,
    Ba,
    Ws,
}

impl GeneratorModel {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorModel::Er => "er",
            GeneratorModel::Ba => "ba",
            GeneratorModel::Ws => "ws",
        }
    }
}

/// What to do with Gaussian draws at or below [`WEIGHT_FLOOR`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truncation {
    /// Draw again until the value clears the floor.
    #[default]
    Resample,
    /// Replace the value with the floor.
    Clamp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub model: GeneratorModel,
    #[serde(rename = "N")]
    pub n: usize,
    /// ER connection probability or WS rewiring probability.
    pub p: f64,
    /// BA seed clique size.
    pub m0: usize,
    /// BA edges per new node.
    pub m: usize,
    /// WS ring degree (even).
    pub k: usize,
    pub weight_mean: f64,
    pub weight_stddev: f64,
    pub weight_truncation: Truncation,
    pub seed: u64,
    pub realizations: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self::small(GeneratorModel::Er)
    }
}

impl GeneratorConfig {
    /// N = 200 networks with roughly 800 edges (ER, BA) or the k = 4 ring
    /// (WS), 50 realizations.
    pub fn small(model: GeneratorModel) -> Self {
        let base = Self {
            model,
            n: 200,
            p: 0.04,
            m0: 10,
            m: 4,
            k: 4,
            weight_mean: 1.0,
            weight_stddev: 1.0,
            weight_truncation: Truncation::Resample,
            seed: 1,
            realizations: 50,
        };
        match model {
            GeneratorModel::Ws => Self { p: 0.1, ..base },
            _ => base,
        }
    }

    /// N = 1000 networks with about 10^4 edges.
    pub fn large(model: GeneratorModel) -> Self {
        let base = Self::small(model);
        match model {
            GeneratorModel::Er => Self {
                n: 1000,
                p: 0.021,
                ..base
            },
            GeneratorModel::Ba => Self {
                n: 1000,
                m0: 40,
                m: 10,
                ..base
            },
            GeneratorModel::Ws => Self { n: 1000, k: 20, ..base },
        }
    }

    /// Parses `key = value` lines. Keys left out take the [`small`](Self::small)
    /// preset of the chosen model (ER when `model` is omitted).
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let raw: PartialConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let cfg = raw.resolve();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fails only for seeds above `i64::MAX`, which TOML integers cannot hold.
    pub fn to_toml_string(&self) -> Result<String, ConfigError> {
        toml::to_string(self).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::EmptyNetwork);
        }
        if self.realizations == 0 {
            return Err(ConfigError::NoRealizations);
        }
        if !self.weight_mean.is_finite() {
            return Err(ConfigError::WeightMean(self.weight_mean));
        }
        if !self.weight_stddev.is_finite() || self.weight_stddev < 0.0 {
            return Err(ConfigError::WeightSpread(self.weight_stddev));
        }
        if self.weight_stddev == 0.0
            && self.weight_mean <= WEIGHT_FLOOR
            && self.weight_truncation == Truncation::Resample
        {
            return Err(ConfigError::DegenerateWeights(self.weight_mean));
        }
        match self.model {
            GeneratorModel::Er => check_probability(self.p),
            GeneratorModel::Ba => {
                if self.m == 0 {
                    return Err(ConfigError::NoAttachment);
                }
                if self.m > self.m0 || self.m0 >= self.n {
                    return Err(ConfigError::BarabasiAlbert {
                        m: self.m,
                        m0: self.m0,
                        n: self.n,
                    });
                }
                Ok(())
            }
            GeneratorModel::Ws => {
                if !self.k.is_multiple_of(2) || self.k >= self.n {
                    return Err(ConfigError::WattsStrogatz { k: self.k, n: self.n });
                }
                check_probability(self.p)
            }
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    model: Option<GeneratorModel>,
    #[serde(rename = "N")]
    n: Option<usize>,
    p: Option<f64>,
    m0: Option<usize>,
    m: Option<usize>,
    k: Option<usize>,
    weight_mean: Option<f64>,
    weight_stddev: Option<f64>,
    weight_truncation: Option<Truncation>,
    seed: Option<u64>,
    realizations: Option<usize>,
}

impl PartialConfig {
    fn resolve(self) -> GeneratorConfig {
        let base = GeneratorConfig::small(self.model.unwrap_or(GeneratorModel::Er));
        GeneratorConfig {
            model: base.model,
            n: self.n.unwrap_or(base.n),
            p: self.p.unwrap_or(base.p),
            m0: self.m0.unwrap_or(base.m0),
            m: self.m.unwrap_or(base.m),
            k: self.k.unwrap_or(base.k),
            weight_mean: self.weight_mean.unwrap_or(base.weight_mean),
            weight_stddev: self.weight_stddev.unwrap_or(base.weight_stddev),
            weight_truncation: self.weight_truncation.unwrap_or(base.weight_truncation),
            seed: self.seed.unwrap_or(base.seed),
            realizations: self.realizations.unwrap_or(base.realizations),
        }
    }
}

fn check_probability(p: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(ConfigError::Probability(p))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of realization `index`: `seed XOR splitmix64(index)`.
pub fn realization_seed(seed: u64, index: usize) -> u64 {
    seed ^ splitmix64(index as u64)
}

fn stream(cfg: &GeneratorConfig, index: usize, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(realization_seed(cfg.seed, index));
    rng.set_stream(stream);
    rng
}

/// Topology of realization `index` with every edge weight set to 1.
pub fn generate_structure(cfg: &GeneratorConfig, index: usize) -> Result<WeightedGraph, ConfigError> {
    cfg.validate()?;
    let mut rng = stream(cfg, index, 0);
    let edges = match cfg.model {
        GeneratorModel::Er => erdos_renyi(cfg.n, cfg.p, &mut rng),
        GeneratorModel::Ba => barabasi_albert(cfg.n, cfg.m0, cfg.m, &mut rng),
        GeneratorModel::Ws => watts_strogatz(cfg.n, cfg.k, cfg.p, &mut rng),
    };
    Ok(
        WeightedGraph::from_indexed_edges(cfg.n, edges.into_iter().map(|(i, j)| (i, j, 1.0)))
            .expect("generators emit simple graphs"),
    )
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn barabasi_albert<R: Rng>(n: usize, m0: usize, m: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    // Every edge endpoint once: uniform draws from here are degree-proportional.
    let mut endpoints = Vec::new();
    for i in 0..m0 {
        for j in i + 1..m0 {
            edges.push((i, j));
            endpoints.extend([i, j]);
        }
    }
    let mut targets = BTreeSet::new();
    for new in m0..n {
        targets.clear();
        while targets.len() < m {
            let t = if endpoints.is_empty() {
                rng.random_range(0..new)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            targets.insert(t);
        }
        for &t in &targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    edges
}

fn watts_strogatz<R: Rng>(n: usize, k: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !adj[u].contains(&v) || !rng.random_bool(p) {
                continue;
            }
            if adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    adj.iter()
        .enumerate()
        .flat_map(|(u, set)| set.range(u + 1..).map(move |&v| (u, v)))
        .collect()
}

/// One node weight per node, then `w_ij = (w_i + w_j) / 2` on every edge.
pub fn assign_weights<R: Rng>(
    g: &WeightedGraph,
    cfg: &GeneratorConfig,
    rng: &mut R,
) -> Result<WeightedGraph, ConfigError> {
    let node_weights = draw_node_weights(g.node_count(), cfg, rng)?;
    Ok(g.reweighted(|i, j, _| 0.5 * (node_weights[i] + node_weights[j]))
        .expect("node weights are above the floor"))
}

pub fn draw_node_weights<R: Rng>(n: usize, cfg: &GeneratorConfig, rng: &mut R) -> Result<Vec<f64>, ConfigError> {
    let normal =
        Normal::new(cfg.weight_mean, cfg.weight_stddev).map_err(|_| ConfigError::WeightSpread(cfg.weight_stddev))?;
    let weights = (0..n)
        .map(|_| match cfg.weight_truncation {
            Truncation::Resample => loop {
                let x = normal.sample(rng);
                if x > WEIGHT_FLOOR {
                    break x;
                }
            },
            Truncation::Clamp => normal.sample(rng).max(WEIGHT_FLOOR),
        })
        .collect();
    Ok(weights)
}

/// Weighted graph of realization `index`.
pub fn generate_realization(cfg: &GeneratorConfig, index: usize) -> Result<WeightedGraph, ConfigError> {
    let structure = generate_structure(cfg, index)?;
    assign_weights(&structure, cfg, &mut stream(cfg, index, 1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldStats {
    pub name: String,
    pub mean: Option<f64>,
    /// Sample standard deviation; absent with fewer than two values.
    pub stddev: Option<f64>,
    /// Realizations where the field was defined.
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsemblePoint {
    pub value: f64,
    /// Realizations containing this degree.
    pub realizations: usize,
    /// Victims of this degree summed over realizations.
    pub samples: usize,
}

/// Per-degree means across realizations; a realization without a degree
/// contributes nothing to that degree.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnsembleCurve {
    pub points: BTreeMap<usize, EnsemblePoint>,
}

impl EnsembleCurve {
    fn from_curves<'a, I: IntoIterator<Item = &'a DegreeCurve>>(curves: I) -> Self {
        let mut acc: BTreeMap<usize, (f64, usize, usize)> = BTreeMap::new();
        for curve in curves {
            for (k, p) in curve.iter() {
                let e = acc.entry(k).or_insert((0.0, 0, 0));
                e.0 += p.value;
                e.1 += 1;
                e.2 += p.samples;
            }
        }
        let points = acc
            .into_iter()
            .map(|(k, (sum, r, s))| {
                (
                    k,
                    EnsemblePoint {
                        value: sum / r as f64,
                        realizations: r,
                        samples: s,
                    },
                )
            })
            .collect();
        Self { points }
    }

    /// As a [`DegreeCurve`] whose sample counts are the pooled victim counts.
    pub fn as_degree_curve(&self) -> DegreeCurve {
        DegreeCurve {
            points: self
                .points
                .iter()
                .map(|(&k, p)| {
                    (
                        k,
                        CurvePoint {
                            value: p.value,
                            samples: p.samples,
                        },
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub config: GeneratorConfig,
    pub seeds: Vec<u64>,
    pub per_realization: Vec<NetworkSummary>,
    pub fields: Vec<FieldStats>,
    pub sigma_k: EnsembleCurve,
    pub beta_k: EnsembleCurve,
    pub cc_k: EnsembleCurve,
    /// Critical degrees of the mean curves (the per-realization mean of k0
    /// is reported in `fields`).
    pub k0_of_mean_curve: Option<CriticalDegree>,
    pub k0_w_of_mean_curve: Option<CriticalDegree>,
}

impl EnsembleSummary {
    pub fn field(&self, name: &str) -> Option<&FieldStats> {
        self.fields.iter().find(|f| f.name == name)
    }

    pub fn mean(&self, name: &str) -> Option<f64> {
        self.field(name).and_then(|f| f.mean)
    }
}

fn field_stats(name: &str, values: &[f64]) -> FieldStats {
    let count = values.len();
    let mean = (count > 0).then(|| values.iter().sum::<f64>() / count as f64);
    let stddev = mean.filter(|_| count > 1).map(|mu| {
        let ss: f64 = values.iter().map(|x| (x - mu) * (x - mu)).sum();
        (ss / (count - 1) as f64).sqrt()
    });
    FieldStats {
        name: name.to_owned(),
        mean,
        stddev,
        count,
    }
}

/// Generates and analyzes `cfg.realizations` networks.
pub fn run_ensemble(cfg: &GeneratorConfig, opts: &AnalysisOptions) -> Result<EnsembleSummary, ConfigError> {
    cfg.validate()?;
    let analyses = (0..cfg.realizations)
        .into_par_iter()
        .map(|i| generate_realization(cfg, i).map(|g| analyze(&g, opts)))
        .collect::<Result<Vec<_>, _>>()?;

    let per_realization: Vec<NetworkSummary> = analyses.iter().map(|a| a.summary.clone()).collect();
    let rows: Vec<_> = per_realization.iter().map(NetworkSummary::numeric_fields).collect();
    let fields = NetworkSummary::FIELD_NAMES
        .iter()
        .enumerate()
        .map(|(col, name)| {
            let values: Vec<f64> = rows.iter().filter_map(|r| r[col]).collect();
            field_stats(name, &values)
        })
        .collect();

    let sigma_k = EnsembleCurve::from_curves(analyses.iter().map(|a| &a.curves.sigma));
    let beta_k = EnsembleCurve::from_curves(analyses.iter().map(|a| &a.curves.beta));
    let cc_k = EnsembleCurve::from_curves(analyses.iter().map(|a| &a.curves.cc));
    Ok(EnsembleSummary {
        config: cfg.clone(),
        seeds: (0..cfg.realizations).map(|i| realization_seed(cfg.seed, i)).collect(),
        per_realization,
        fields,
        k0_of_mean_curve: critical_degree(&sigma_k.as_degree_curve(), opts),
        k0_w_of_mean_curve: critical_degree(&beta_k.as_degree_curve(), opts),
        sigma_k,
        beta_k,
        cc_k,
    })
}
