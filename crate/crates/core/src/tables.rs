//! (n, k) grids of index values over a ranged family, and their output formats.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::coloring::{closed_form_phi, GraphSymmetry};
use crate::error::{Error, Result};
use crate::graph::{make_family, FamilyKind, FamilySpec};
use crate::index::{Backend, BackendChoice, IndexValue, Mode};
use crate::partition::{closed_form_psi, PartitionCensus, PartitionFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Phi,
    Psi,
    Pi,
    Xi,
    D,
    Theta,
    Dp,
}

/// An index together with its counting mode.
///
/// Capitalized count names (`Phi`, `Psi`, `Pi`, `Xi`) count with at most `k`
/// colors or cells; lowercase ones (`phi`, `psi`, `pi`, `xi`) with exactly `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexName {
    pub kind: IndexKind,
    pub mode: Mode,
}

impl IndexName {
    pub const fn new(kind: IndexKind, mode: Mode) -> Self {
        IndexName { kind, mode }
    }

    /// Whether the index is a count parameterized by `k`.
    pub fn takes_k(self) -> bool {
        matches!(
            self.kind,
            IndexKind::Phi | IndexKind::Psi | IndexKind::Pi | IndexKind::Xi
        )
    }

    pub fn exact(self) -> Self {
        IndexName {
            mode: Mode::Exact,
            ..self
        }
    }

    fn partition_family(self) -> Option<PartitionFamily> {
        match self.kind {
            IndexKind::Psi => Some(PartitionFamily::Psi),
            IndexKind::Pi => Some(PartitionFamily::Pi),
            IndexKind::Xi => Some(PartitionFamily::Xi),
            _ => None,
        }
    }
}

impl FromStr for IndexName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use IndexKind::*;
        let (kind, mode) = match s {
            "Phi" => (Phi, Mode::AtMost),
            "phi" => (Phi, Mode::Exact),
            "Psi" => (Psi, Mode::AtMost),
            "psi" => (Psi, Mode::Exact),
            "Pi" => (Pi, Mode::AtMost),
            "pi" => (Pi, Mode::Exact),
            "Xi" => (Xi, Mode::AtMost),
            "xi" => (Xi, Mode::Exact),
            "D" => (D, Mode::AtMost),
            "theta" => (Theta, Mode::AtMost),
            "DP" => (Dp, Mode::AtMost),
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown index `{other}` (expected Phi, phi, Psi, psi, Pi, pi, Xi, xi, D, theta or DP)"
                )))
            }
        };
        Ok(IndexName { kind, mode })
    }
}

impl fmt::Display for IndexName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exact = self.mode == Mode::Exact;
        let name = match self.kind {
            IndexKind::Phi if exact => "phi",
            IndexKind::Phi => "Phi",
            IndexKind::Psi if exact => "psi",
            IndexKind::Psi => "Psi",
            IndexKind::Pi if exact => "pi",
            IndexKind::Pi => "Pi",
            IndexKind::Xi if exact => "xi",
            IndexKind::Xi => "Xi",
            IndexKind::D => "D",
            IndexKind::Theta => "theta",
            IndexKind::Dp => "DP",
        };
        f.write_str(name)
    }
}

/// A family with one parameter ranged, e.g. `path:2..10` or `kneser:5..7,2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPattern {
    kind: FamilyKind,
    params: Vec<RangeInclusive<usize>>,
}

impl FamilyPattern {
    pub fn new(kind: FamilyKind, params: Vec<RangeInclusive<usize>>) -> Result<Self> {
        let ranged = params.iter().filter(|r| r.start() != r.end()).count();
        if ranged > 1 {
            return Err(Error::InvalidInput(
                "at most one family parameter may be a range".into(),
            ));
        }
        if let Some(r) = params.iter().find(|r| r.is_empty()) {
            return Err(Error::InvalidInput(format!(
                "empty range {}..{}",
                r.start(),
                r.end()
            )));
        }
        Ok(FamilyPattern { kind, params })
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// Members as (row label, spec); the label is the ranged parameter, or
    /// the first parameter when nothing is ranged.
    pub fn members(&self) -> Result<Vec<(usize, FamilySpec)>> {
        let axis = self
            .params
            .iter()
            .position(|r| r.start() != r.end())
            .unwrap_or(0);
        self.params[axis]
            .clone()
            .map(|v| {
                let params = self
                    .params
                    .iter()
                    .enumerate()
                    .map(|(i, r)| if i == axis { v } else { *r.start() })
                    .collect();
                Ok((v, FamilySpec::new(self.kind, params)?))
            })
            .collect()
    }
}

impl FromStr for FamilyPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidFamily {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `kind:p1[,p2]` with one parameter as `a..b`"))?;
        let kind: FamilyKind = kind.trim().parse()?;
        let params = rest
            .split(',')
            .map(|p| {
                let p = p.trim();
                let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad("bad parameter"));
                match p.split_once("..") {
                    Some((a, b)) => Ok(parse(a)?..=parse(b.trim_start_matches('='))?),
                    None => {
                        let v = parse(p)?;
                        Ok(v..=v)
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        FamilyPattern::new(kind, params)
    }
}

impl fmt::Display for FamilyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind)?;
        for (i, r) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if r.start() == r.end() {
                write!(f, "{}", r.start())?;
            } else {
                write!(f, "{}..{}", r.start(), r.end())?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRequest {
    pub index: IndexName,
    pub family: FamilyPattern,
    /// Ignored for the scalar indices D, theta and DP.
    pub k_range: RangeInclusive<usize>,
    pub backend: BackendChoice,
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub n: usize,
    /// One entry per `k` (a single entry for scalar indices); `None` when the
    /// index does not exist (DP of a graph without distinguishing partitions).
    pub values: Vec<Option<IndexValue>>,
}

/// A computed grid with the provenance of every cell.
#[derive(Debug, Clone)]
pub struct CountTable {
    pub index: IndexName,
    pub family: String,
    /// Column labels; empty for scalar indices.
    pub ks: Vec<usize>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Markdown,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(Error::InvalidInput(format!("unknown format `{other}`"))),
        }
    }
}

/// Computes every cell of `req`, rows in parallel, output in request order.
pub fn compute_table(req: &TableRequest) -> Result<CountTable> {
    if req.index.takes_k() && (req.k_range.is_empty() || *req.k_range.start() < 1) {
        return Err(Error::InvalidInput(format!(
            "k range {}..{} must be nonempty and start at 1 or more",
            req.k_range.start(),
            req.k_range.end()
        )));
    }
    let members = req.family.members()?;
    let rows = members
        .par_iter()
        .map(|(n, spec)| {
            Ok(TableRow {
                n: *n,
                values: compute_row(req, spec)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable {
        index: req.index,
        family: req.family.to_string(),
        ks: if req.index.takes_k() {
            req.k_range.clone().collect()
        } else {
            Vec::new()
        },
        rows,
    })
}

/// Single value of an index on one family member.
pub fn compute_value(
    index: IndexName,
    spec: &FamilySpec,
    k: Option<usize>,
    backend: BackendChoice,
) -> Result<Option<IndexValue>> {
    let k = match (index.takes_k(), k) {
        (true, Some(k)) => k,
        (true, None) => {
            return Err(Error::InvalidInput(format!("index {index} requires k")));
        }
        (false, _) => 1,
    };
    let req = TableRequest {
        index,
        family: FamilyPattern::new(spec.kind(), spec.params().iter().map(|&p| p..=p).collect())?,
        k_range: k..=k,
        backend,
    };
    Ok(compute_row(&req, spec)?.swap_remove(0))
}

fn compute_row(req: &TableRequest, spec: &FamilySpec) -> Result<Vec<Option<IndexValue>>> {
    let graph = make_family(spec)?;
    let sym = GraphSymmetry::new(&graph)?;
    let index = req.index;
    let ks = req.k_range.clone();
    match index.kind {
        IndexKind::D => Ok(vec![Some(sym.distinguishing_number()?)]),
        IndexKind::Theta => Ok(vec![Some(sym.threshold())]),
        IndexKind::Dp => {
            let census = PartitionCensus::for_group(sym.group(), graph.vertex_count())?;
            Ok(vec![census
                .dp()
                .map(|r| IndexValue::new(r, Backend::Oracle))])
        }
        IndexKind::Phi => ks
            .map(|k| phi_cell(&sym, spec, k, index.mode, req.backend).map(Some))
            .collect(),
        IndexKind::Psi | IndexKind::Pi | IndexKind::Xi => {
            let family = index.partition_family().expect("partition index");
            if req.backend == BackendChoice::Closed {
                return ks
                    .map(|k| match (family, index.mode) {
                        (PartitionFamily::Psi, Mode::Exact) => closed_form_psi(spec, k).map(Some),
                        _ => Err(Error::NoClosedForm(format!("{index} of {spec}"))),
                    })
                    .collect();
            }
            if matches!(req.backend, BackendChoice::Moebius) {
                return Err(Error::InvalidInput(format!(
                    "the Möbius backend counts colorings only, not {index}"
                )));
            }
            let census = PartitionCensus::for_group(sym.group(), *ks.end())?;
            Ok(ks
                .map(|k| {
                    Some(IndexValue::new(
                        census.count(family, k, index.mode),
                        Backend::Oracle,
                    ))
                })
                .collect())
        }
    }
}

fn phi_cell(
    sym: &GraphSymmetry,
    spec: &FamilySpec,
    k: usize,
    mode: Mode,
    backend: BackendChoice,
) -> Result<IndexValue> {
    let named = match spec.kind() {
        FamilyKind::Path | FamilyKind::Complete | FamilyKind::Empty => true,
        FamilyKind::Biclique => spec.params()[0] == spec.params()[1],
        _ => false,
    };
    match backend {
        BackendChoice::Closed => closed_form_phi(spec, k, mode),
        BackendChoice::Auto if named => closed_form_phi(spec, k, mode),
        other => sym.count_phi(k, mode, other),
    }
}

impl CountTable {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
            OutputFormat::Markdown => self.to_markdown(),
        }
    }

    fn header(&self) -> Vec<String> {
        if self.ks.is_empty() {
            vec!["n".into(), self.index.to_string()]
        } else {
            std::iter::once("n\\k".to_string())
                .chain(self.ks.iter().map(usize::to_string))
                .collect()
        }
    }

    fn cells(row: &TableRow) -> impl Iterator<Item = String> + '_ {
        row.values.iter().map(|v| match v {
            Some(v) => v.value.to_string(),
            None => "none".into(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = std::iter::once(row.n.to_string())
                .chain(Self::cells(row))
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let header = self.header();
        let mut out = format!("| {} |\n", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for row in &self.rows {
            let line: Vec<String> = std::iter::once(row.n.to_string())
                .chain(Self::cells(row))
                .collect();
            let _ = writeln!(out, "| {} |", line.join(" | "));
        }
        out
    }

    /// `{index, family, rows: [{n, values: {k: "decimal"}}]}`; scalar indices
    /// use the index name as the single key. Missing values are `null`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut values = Map::new();
                let keys: Vec<String> = if self.ks.is_empty() {
                    vec![self.index.to_string()]
                } else {
                    self.ks.iter().map(usize::to_string).collect()
                };
                for (key, v) in keys.into_iter().zip(&row.values) {
                    let v = match v {
                        Some(v) => Value::String(v.value.to_string()),
                        None => Value::Null,
                    };
                    values.insert(key, v);
                }
                json!({ "n": row.n, "values": values })
            })
            .collect();
        let doc = json!({
            "index": self.index.to_string(),
            "family": self.family,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("JSON of strings and integers");
        s.push('\n');
        s
    }

    /// Value at row `n`, column `k` (or the scalar of row `n`).
    pub fn get(&self, n: usize, k: Option<usize>) -> Option<&BigUint> {
        let row = self.rows.iter().find(|r| r.n == n)?;
        let col = match k {
            Some(k) => self.ks.iter().position(|&c| c == k)?,
            None => 0,
        };
        row.values.get(col)?.as_ref().map(|v| &v.value)
    }

    /// Distinct backends used, in first-use order.
    pub fn backends(&self) -> Vec<Backend> {
        let mut seen = Vec::new();
        for v in self.rows.iter().flat_map(|r| r.values.iter().flatten()) {
            if !seen.contains(&v.backend) {
                seen.push(v.backend);
            }
        }
        seen
    }
}
