//! CSV and JSON writers. Absent values are empty CSV cells and JSON nulls.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use gossipnet::generators::{EnsembleCurve, EnsembleSummary};
use gossipnet::metrics::{DegreeCurves, NetworkSummary};
use gossipnet::WeightedGraph;
use serde::Serialize;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Column order of `summary.csv`; the first twelve mirror the classic
/// network-coefficient table.
pub const SUMMARY_COLUMNS: [&str; 18] = [
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
    "k0_interior",
    "k0_w_interior",
    "min_samples",
    "leaf_victims",
];

pub const CURVE_COLUMNS: [&str; 7] = [
    "k",
    "count",
    "sigma_k",
    "beta_k",
    "cc_k",
    "beta_over_sigma_k",
    "beta_over_sigma_cc_k",
];

fn num(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn int(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn flag(x: Option<bool>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn summary_row(s: &NetworkSummary) -> Vec<String> {
    vec![
        s.n.to_string(),
        s.m.to_string(),
        int(s.k0),
        int(s.k0_w),
        num(s.k0w_over_k0),
        s.cc.to_string(),
        num(s.sigma),
        num(s.beta),
        num(s.sigma_over_cc),
        num(s.beta_over_cc),
        num(s.beta_over_sigma),
        num(s.beta_over_sigma_cc),
        s.n_active.to_string(),
        s.isolated.to_string(),
        flag(s.k0_interior),
        flag(s.k0_w_interior),
        s.min_samples.to_string(),
        match s.leaf_victims {
            gossipnet::LeafConvention::Literal => "literal".into(),
            gossipnet::LeafConvention::Zero => "zero".into(),
        },
    ]
}

fn write_csv<H, R>(path: &Path, header: H, rows: R) -> Result<(), CliError>
where
    H: IntoIterator,
    H::Item: AsRef<[u8]>,
    R: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(CliError::output)?;
    for row in rows {
        w.write_record(&row).map_err(CliError::output)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    write_bytes(path, &bytes)
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(CliError::output)?;
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn write_summary_csv(path: &Path, s: &NetworkSummary) -> Result<(), CliError> {
    write_csv(path, SUMMARY_COLUMNS, [summary_row(s)])
}

#[derive(Serialize)]
struct SummaryDoc<'a> {
    schema_version: u32,
    summary: &'a NetworkSummary,
}

pub fn write_summary_json(path: &Path, s: &NetworkSummary) -> Result<(), CliError> {
    write_json(
        path,
        &SummaryDoc {
            schema_version: SCHEMA_VERSION,
            summary: s,
        },
    )
}

#[derive(Serialize)]
pub struct CurveRow {
    pub k: usize,
    pub count: usize,
    pub sigma_k: Option<f64>,
    pub beta_k: Option<f64>,
    pub cc_k: Option<f64>,
    pub beta_over_sigma_k: Option<f64>,
    pub beta_over_sigma_cc_k: Option<f64>,
}

/// One row per degree present in the graph (degree 0 included when there
/// are isolated nodes; its spread cells are empty).
pub fn curve_rows(c: &DegreeCurves) -> Vec<CurveRow> {
    let degrees: BTreeSet<usize> = c.cc.points.keys().chain(c.sigma.points.keys()).copied().collect();
    degrees
        .into_iter()
        .map(|k| CurveRow {
            k,
            count: c.cc.points.get(&k).map(|p| p.samples).unwrap_or(0),
            sigma_k: c.sigma.get(k),
            beta_k: c.beta.get(k),
            cc_k: c.cc.get(k),
            beta_over_sigma_k: c.beta_over_sigma.get(k),
            beta_over_sigma_cc_k: c.beta_over_sigma_cc.get(k),
        })
        .collect()
}

pub fn write_curves_csv(path: &Path, c: &DegreeCurves) -> Result<(), CliError> {
    let rows = curve_rows(c).into_iter().map(|r| {
        vec![
            r.k.to_string(),
            r.count.to_string(),
            num(r.sigma_k),
            num(r.beta_k),
            num(r.cc_k),
            num(r.beta_over_sigma_k),
            num(r.beta_over_sigma_cc_k),
        ]
    });
    write_csv(path, CURVE_COLUMNS, rows)
}

#[derive(Serialize)]
struct CurvesDoc {
    schema_version: u32,
    curves: Vec<CurveRow>,
}

pub fn write_curves_json(path: &Path, c: &DegreeCurves) -> Result<(), CliError> {
    write_json(
        path,
        &CurvesDoc {
            schema_version: SCHEMA_VERSION,
            curves: curve_rows(c),
        },
    )
}

pub fn write_labels(path: &Path, g: &WeightedGraph) -> Result<(), CliError> {
    let rows = g
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| vec![i.to_string(), l.clone()]);
    write_csv(path, ["index", "label"], rows)
}

pub fn write_realizations_csv(path: &Path, e: &EnsembleSummary) -> Result<(), CliError> {
    let header = ["realization", "seed"].into_iter().chain(SUMMARY_COLUMNS);
    let rows = e.per_realization.iter().enumerate().map(|(i, s)| {
        let mut row = vec![i.to_string(), e.seeds[i].to_string()];
        row.extend(summary_row(s));
        row
    });
    write_csv(path, header, rows)
}

pub fn write_ensemble_csv(path: &Path, e: &EnsembleSummary) -> Result<(), CliError> {
    let rows = e
        .fields
        .iter()
        .map(|f| vec![f.name.clone(), num(f.mean), num(f.stddev), f.count.to_string()]);
    write_csv(path, ["field", "mean", "stddev", "count"], rows)
}

pub fn write_mean_curves_csv(path: &Path, e: &EnsembleSummary) -> Result<(), CliError> {
    let degrees: BTreeSet<usize> = [&e.sigma_k, &e.beta_k, &e.cc_k]
        .iter()
        .flat_map(|c| c.points.keys().copied())
        .collect();
    let value = |c: &EnsembleCurve, k| c.points.get(&k).map(|p| p.value);
    let rows = degrees.into_iter().map(|k| {
        let cc = e.cc_k.points.get(&k);
        vec![
            k.to_string(),
            int(cc.map(|p| p.realizations)),
            int(cc.map(|p| p.samples)),
            num(value(&e.sigma_k, k)),
            num(value(&e.beta_k, k)),
            num(value(&e.cc_k, k)),
        ]
    });
    write_csv(
        path,
        ["k", "realizations", "samples", "sigma_k", "beta_k", "cc_k"],
        rows,
    )
}

#[derive(Serialize)]
struct EnsembleDoc<'a> {
    schema_version: u32,
    ensemble: &'a EnsembleSummary,
}

pub fn write_ensemble_json(path: &Path, e: &EnsembleSummary) -> Result<(), CliError> {
    write_json(
        path,
        &EnsembleDoc {
            schema_version: SCHEMA_VERSION,
            ensemble: e,
        },
    )
}

pub fn write_manifest<T: Serialize>(path: &Path, manifest: &T) -> Result<(), CliError> {
    write_json(path, manifest)
}
