//! Bundled reference tables of Φ, φ, Ψ, ψ, Π, π, Ξ, ξ on paths and cycles,
//! and the suite that recomputes and compares them.

use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::FamilyKind;
use crate::index::{BackendChoice, Mode};
use crate::tables::{compute_table, CountTable, FamilyPattern, IndexKind, IndexName, TableRequest};

macro_rules! table_file {
    ($stem:literal) => {
        (
            $stem,
            include_str!(concat!("../data/appendix/", $stem, ".csv")),
        )
    };
}

/// Reference tables in their published order.
const FILES: [(&str, &str); 16] = [
    table_file!("upper_phi_path"),
    table_file!("upper_phi_cycle"),
    table_file!("lower_phi_path"),
    table_file!("lower_phi_cycle"),
    table_file!("upper_psi_path"),
    table_file!("upper_psi_cycle"),
    table_file!("lower_psi_path"),
    table_file!("lower_psi_cycle"),
    table_file!("upper_pi_path"),
    table_file!("upper_pi_cycle"),
    table_file!("lower_pi_path"),
    table_file!("lower_pi_cycle"),
    table_file!("upper_xi_path"),
    table_file!("upper_xi_cycle"),
    table_file!("lower_xi_path"),
    table_file!("lower_xi_cycle"),
];

#[derive(Debug, Clone)]
pub struct GoldenTable {
    /// File stem, e.g. `upper_phi_path`.
    pub name: &'static str,
    /// Caption line from the file header.
    pub caption: String,
    pub index: IndexName,
    pub family: FamilyKind,
    pub ks: Vec<usize>,
    pub rows: Vec<(usize, Vec<BigUint>)>,
}

impl GoldenTable {
    fn parse(name: &'static str, text: &str) -> Result<Self> {
        let bad = |why: String| Error::InvalidInput(format!("golden table {name}: {why}"));
        let caption = text
            .lines()
            .next()
            .and_then(|l| l.strip_prefix('#'))
            .ok_or_else(|| bad("missing caption line".into()))?
            .trim()
            .to_string();
        let mut parts = name.split('_');
        let (case, index, family) = (parts.next(), parts.next(), parts.next());
        let mode = match case {
            Some("upper") => Mode::AtMost,
            Some("lower") => Mode::Exact,
            _ => return Err(bad("bad file name".into())),
        };
        let kind = match index {
            Some("phi") => IndexKind::Phi,
            Some("psi") => IndexKind::Psi,
            Some("pi") => IndexKind::Pi,
            Some("xi") => IndexKind::Xi,
            _ => return Err(bad("bad file name".into())),
        };
        let family: FamilyKind = family.ok_or_else(|| bad("bad file name".into()))?.parse()?;

        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| bad(format!("`{s}`: {e}")))
        };
        let ks = reader
            .headers()
            .map_err(|e| bad(e.to_string()))?
            .iter()
            .skip(1)
            .map(number)
            .collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            let n = number(&record[0])?;
            let values = record
                .iter()
                .skip(1)
                .map(|s| {
                    s.trim()
                        .parse::<BigUint>()
                        .map_err(|e| bad(format!("`{s}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if values.len() != ks.len() {
                return Err(bad(format!("row {n} has {} values", values.len())));
            }
            rows.push((n, values));
        }
        Ok(GoldenTable {
            name,
            caption,
            index: IndexName::new(kind, mode),
            family,
            ks,
            rows,
        })
    }

    /// The table request that recomputes this table.
    pub fn request(&self, backend: BackendChoice) -> Result<TableRequest> {
        let first = self.rows.first().map_or(1, |r| r.0);
        let last = self.rows.last().map_or(1, |r| r.0);
        Ok(TableRequest {
            index: self.index,
            family: FamilyPattern::new(self.family, vec![first..=last])?,
            k_range: self.ks[0]..=*self.ks.last().expect("nonempty header"),
            backend,
        })
    }

    /// Reference value at row `n`, column `k`.
    pub fn get(&self, n: usize, k: usize) -> Option<&BigUint> {
        let col = self.ks.iter().position(|&c| c == k)?;
        self.rows.iter().find(|r| r.0 == n).map(|r| &r.1[col])
    }
}

/// All sixteen reference tables.
pub fn appendix_tables() -> Vec<GoldenTable> {
    FILES
        .iter()
        .map(|(name, text)| GoldenTable::parse(name, text).expect("bundled tables are well-formed"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub table: &'static str,
    pub n: usize,
    pub k: usize,
    pub expected: BigUint,
    pub actual: Option<BigUint>,
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub name: &'static str,
    pub caption: String,
    pub cells: usize,
    pub mismatches: Vec<Mismatch>,
    /// Set when the table could not be computed at all.
    pub error: Option<Error>,
    pub elapsed: Duration,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub tables: Vec<TableReport>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.tables.iter().all(TableReport::passed)
    }

    pub fn passed_count(&self) -> usize {
        self.tables.iter().filter(|t| t.passed()).count()
    }

    /// The first `limit` mismatching cells in table order.
    pub fn first_mismatches(&self, limit: usize) -> Vec<&Mismatch> {
        self.tables
            .iter()
            .flat_map(|t| &t.mismatches)
            .take(limit)
            .collect()
    }
}

/// Recomputes every reference table with the automatic backend.
pub fn verify_appendix() -> VerifyReport {
    verify_appendix_with(&compute_table)
}

/// Like [`verify_appendix`] with a caller-supplied table evaluator.
pub fn verify_appendix_with(
    evaluate: &dyn Fn(&TableRequest) -> Result<CountTable>,
) -> VerifyReport {
    let start = Instant::now();
    let tables = appendix_tables()
        .iter()
        .map(|golden| check_table(golden, evaluate))
        .collect();
    VerifyReport {
        tables,
        elapsed: start.elapsed(),
    }
}

fn check_table(
    golden: &GoldenTable,
    evaluate: &dyn Fn(&TableRequest) -> Result<CountTable>,
) -> TableReport {
    let start = Instant::now();
    let cells = golden.rows.len() * golden.ks.len();
    let mut report = TableReport {
        name: golden.name,
        caption: golden.caption.clone(),
        cells,
        mismatches: Vec::new(),
        error: None,
        elapsed: Duration::ZERO,
    };
    let computed = golden
        .request(BackendChoice::Auto)
        .and_then(|req| evaluate(&req));
    match computed {
        Err(e) => report.error = Some(e),
        Ok(table) => {
            for (n, expected) in &golden.rows {
                for (&k, expected) in golden.ks.iter().zip(expected) {
                    let actual = table.get(*n, Some(k));
                    if actual != Some(expected) {
                        report.mismatches.push(Mismatch {
                            table: golden.name,
                            n: *n,
                            k,
                            expected: expected.clone(),
                            actual: actual.cloned(),
                        });
                    }
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}
