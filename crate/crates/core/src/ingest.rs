//! Weighted edge lists and bipartite co-occurrence projection.
//!
//! Edge-list lines are `<label><sep><label><sep><weight>`; bipartite lines
//! are `<group-id><sep><member-label>`. Blank lines and lines starting with
//! `#` are skipped, except a `# nodes:` header whose whitespace-separated
//! labels are declared as nodes (this is how isolated nodes survive a round
//! trip). The separator is a comma or whitespace, detected per file unless
//! given explicitly.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::IngestError;
use crate::graph::{GraphBuilder, WeightedGraph};

const NODES_HEADER: &str = "# nodes:";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Separator {
    Comma,
    Whitespace,
}

impl Separator {
    fn split(self, line: &str) -> Vec<&str> {
        match self {
            Separator::Comma => line.split(',').map(str::trim).collect(),
            Separator::Whitespace => line.split_whitespace().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionScheme {
    /// Each shared group adds 1 to the pair weight.
    Count,
    /// Each shared group of size n adds 1/(n-1) to the pair weight.
    Newman,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub line: usize,
    pub a: String,
    pub b: String,
    pub weight: f64,
}

/// Parsed contents of an edge-list file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeListFile {
    pub records: Vec<EdgeRecord>,
    /// Labels from `# nodes:` headers, in order.
    pub declared_nodes: Vec<String>,
}

enum Line<'a> {
    Skip,
    Nodes(&'a str),
    Data(&'a str),
}

fn classify(raw: &str) -> Line<'_> {
    let line = raw.trim();
    if line.is_empty() {
        Line::Skip
    } else if let Some(rest) = line.strip_prefix(NODES_HEADER) {
        Line::Nodes(rest)
    } else if line.starts_with('#') {
        Line::Skip
    } else {
        Line::Data(line)
    }
}

/// Picks the separator from data lines: all with commas, or none.
fn detect_separator(text: &str) -> Result<Separator, IngestError> {
    let mut seen: Option<bool> = None;
    for (idx, raw) in text.lines().enumerate() {
        if let Line::Data(line) = classify(raw) {
            let comma = line.contains(',');
            match seen {
                None => seen = Some(comma),
                Some(prev) if prev != comma => return Err(IngestError::AmbiguousSeparator { line: idx + 1 }),
                _ => {}
            }
        }
    }
    Ok(if seen == Some(true) {
        Separator::Comma
    } else {
        Separator::Whitespace
    })
}

fn fields<'a>(
    line: &'a str,
    sep: Separator,
    expected: usize,
    lineno: usize,
    what: &str,
) -> Result<Vec<&'a str>, IngestError> {
    let parts = sep.split(line);
    if parts.len() != expected || parts.iter().any(|p| p.is_empty()) {
        return Err(IngestError::Malformed {
            line: lineno,
            message: format!("expected {what}, found {line:?}"),
        });
    }
    Ok(parts)
}

pub fn parse_edge_records(text: &str, sep: Option<Separator>) -> Result<EdgeListFile, IngestError> {
    let sep = match sep {
        Some(s) => s,
        None => detect_separator(text)?,
    };
    let mut out = EdgeListFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        match classify(raw) {
            Line::Skip => {}
            Line::Nodes(rest) => out.declared_nodes.extend(rest.split_whitespace().map(str::to_owned)),
            Line::Data(line) => {
                let parts = fields(line, sep, 3, lineno, "<label> <label> <weight>")?;
                let weight: f64 = parts[2].parse().map_err(|_| IngestError::Malformed {
                    line: lineno,
                    message: format!("weight {:?} is not a number", parts[2]),
                })?;
                out.records.push(EdgeRecord {
                    line: lineno,
                    a: parts[0].to_owned(),
                    b: parts[1].to_owned(),
                    weight,
                });
            }
        }
    }
    Ok(out)
}

impl EdgeListFile {
    /// Builds the graph; duplicate pairs are merged by summing weights.
    pub fn to_graph(&self) -> Result<WeightedGraph, IngestError> {
        let mut builder = GraphBuilder::new();
        for label in &self.declared_nodes {
            builder.add_node(label);
        }
        for r in &self.records {
            builder
                .add_edge(&r.a, &r.b, r.weight)
                .map_err(|source| IngestError::Invalid { line: r.line, source })?;
        }
        Ok(builder.build())
    }
}

pub fn parse_edge_list_str(text: &str, sep: Option<Separator>) -> Result<WeightedGraph, IngestError> {
    parse_edge_records(text, sep)?.to_graph()
}

pub fn parse_edge_list(path: &Path, sep: Option<Separator>) -> Result<WeightedGraph, IngestError> {
    parse_edge_list_str(&read(path)?, sep)
}

fn read(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_owned(),
        source,
    })
}

/// `printf("%.17g")`: 17 significant digits, trailing zeros removed.
pub fn format_weight(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_owned()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Canonical edge list: one line per edge sorted by (smaller label, larger
/// label), weights at 17 significant digits, isolated nodes in a
/// `# nodes:` header.
pub fn export_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let isolated: Vec<&str> = (0..g.node_count())
        .filter(|&i| g.degree(i) == 0)
        .map(|i| g.label(i))
        .collect();
    if !isolated.is_empty() {
        let _ = writeln!(out, "{NODES_HEADER} {}", isolated.join(" "));
    }
    let mut lines: Vec<(&str, &str, f64)> = g
        .edges()
        .map(|(i, j, w)| {
            let (a, b) = (g.label(i), g.label(j));
            if a <= b {
                (a, b, w)
            } else {
                (b, a, w)
            }
        })
        .collect();
    lines.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
    for (a, b, w) in lines {
        let _ = writeln!(out, "{a} {b} {}", format_weight(w));
    }
    out
}

/// Groups of co-occurring members (articles and their authors, scenes and
/// their characters, ...).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BipartiteEvents {
    /// Member labels in order of first appearance.
    pub members: Vec<String>,
    /// `(group id, member indices)`; a member appears at most once per group.
    pub groups: Vec<(String, Vec<usize>)>,
}

impl BipartiteEvents {
    /// Groups given as label lists; repeated members collapse.
    pub fn from_groups<G, S>(groups: G) -> Self
    where
        G: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut acc = EventAccumulator::default();
        for (g, members) in groups.into_iter().enumerate() {
            let id = g.to_string();
            acc.open_group(&id);
            for m in members {
                acc.add(&id, m.as_ref());
            }
        }
        acc.finish()
    }
}

#[derive(Default)]
struct EventAccumulator {
    events: BipartiteEvents,
    member_index: HashMap<String, usize>,
    group_index: HashMap<String, usize>,
    seen: Vec<HashSet<usize>>,
}

impl EventAccumulator {
    fn open_group(&mut self, group: &str) -> usize {
        if let Some(&g) = self.group_index.get(group) {
            return g;
        }
        let g = self.events.groups.len();
        self.events.groups.push((group.to_owned(), Vec::new()));
        self.group_index.insert(group.to_owned(), g);
        self.seen.push(HashSet::new());
        g
    }

    fn add(&mut self, group: &str, member: &str) {
        let g = self.open_group(group);
        let next = self.events.members.len();
        let m = *self.member_index.entry(member.to_owned()).or_insert(next);
        if m == next {
            self.events.members.push(member.to_owned());
        }
        if self.seen[g].insert(m) {
            self.events.groups[g].1.push(m);
        }
    }

    fn finish(self) -> BipartiteEvents {
        self.events
    }
}

/// Parses `<group-id><sep><member>` lines. Records of one group need not be
/// consecutive.
pub fn parse_bipartite_str(text: &str, sep: Option<Separator>) -> Result<BipartiteEvents, IngestError> {
    let sep = match sep {
        Some(s) => s,
        None => detect_separator(text)?,
    };
    let mut acc = EventAccumulator::default();
    for (idx, raw) in text.lines().enumerate() {
        if let Line::Data(line) = classify(raw) {
            let parts = fields(line, sep, 2, idx + 1, "<group> <member>")?;
            acc.add(parts[0], parts[1]);
        }
    }
    Ok(acc.finish())
}

pub fn parse_bipartite(path: &Path, sep: Option<Separator>) -> Result<BipartiteEvents, IngestError> {
    parse_bipartite_str(&read(path)?, sep)
}

/// One-mode projection onto the members. Members that never share a group
/// stay as isolated nodes.
pub fn project(events: &BipartiteEvents, scheme: ProjectionScheme) -> WeightedGraph {
    let mut builder = GraphBuilder::new();
    for m in &events.members {
        builder.add_node(m);
    }
    for (_, members) in &events.groups {
        let n = members.len();
        if n < 2 {
            continue;
        }
        let w = match scheme {
            ProjectionScheme::Count => 1.0,
            ProjectionScheme::Newman => 1.0 / (n - 1) as f64,
        };
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                builder
                    .add_edge_by_id(i, j, w)
                    .expect("distinct members, positive weight");
            }
        }
    }
    builder.build()
}

pub fn project_count(events: &BipartiteEvents) -> WeightedGraph {
    project(events, ProjectionScheme::Count)
}

pub fn project_newman(events: &BipartiteEvents) -> WeightedGraph {
    project(events, ProjectionScheme::Newman)
}
