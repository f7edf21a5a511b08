use std::fmt;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    Biclique,
    Empty,
    Kneser,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::Biclique => "biclique",
            FamilyKind::Empty => "empty",
            FamilyKind::Kneser => "kneser",
        }
    }

    fn arity(self) -> usize {
        match self {
            FamilyKind::Biclique | FamilyKind::Kneser => 2,
            _ => 1,
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => FamilyKind::Path,
            "cycle" => FamilyKind::Cycle,
            "complete" => FamilyKind::Complete,
            "biclique" => FamilyKind::Biclique,
            "empty" => FamilyKind::Empty,
            "kneser" => FamilyKind::Kneser,
            other => {
                return Err(Error::InvalidFamily {
                    spec: s.to_string(),
                    reason: format!("unknown family `{other}`"),
                })
            }
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A named graph family with its parameters, written `kind:p1[,p2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<usize>) -> Result<Self> {
        let spec = FamilySpec { kind, params };
        spec.validate()?;
        Ok(spec)
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(FamilyKind::Path, vec![n])
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::new(FamilyKind::Cycle, vec![n])
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(FamilyKind::Complete, vec![n])
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn params(&self) -> &[usize] {
        &self.params
    }

    fn invalid(&self, reason: impl Into<String>) -> Error {
        Error::InvalidFamily {
            spec: self.to_string(),
            reason: reason.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.params.len() != self.kind.arity() {
            return Err(self.invalid(format!(
                "expected {} parameter(s), got {}",
                self.kind.arity(),
                self.params.len()
            )));
        }
        let p = &self.params;
        match self.kind {
            FamilyKind::Path | FamilyKind::Complete if p[0] < 1 => {
                Err(self.invalid("requires n >= 1"))
            }
            FamilyKind::Cycle if p[0] < 3 => Err(self.invalid("requires n >= 3")),
            FamilyKind::Biclique if p[0] < 1 || p[1] < 1 => {
                Err(self.invalid("requires both parts nonempty"))
            }
            FamilyKind::Kneser if p[0] < 1 || 2 * p[1] > p[0] => {
                Err(self.invalid("requires n >= 1 and 0 <= k <= n/2"))
            }
            _ => Ok(()),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidFamily {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| bad("expected `kind:p1[,p2]`"))?;
        let kind: FamilyKind = kind.trim().parse().map_err(|_| bad("unknown family"))?;
        let params = rest
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("parameters must be non-negative integers"))?;
        FamilySpec::new(kind, params)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.kind)?;
        for (i, p) in self.params.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Builds the canonical member of a named family.
///
/// Kneser vertices are the `k`-subsets of `{1..n}` in colexicographic order;
/// two vertices are adjacent when their subsets are disjoint.
pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let p = spec.params();
    let g = match spec.kind() {
        FamilyKind::Path => {
            let n = p[0];
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?
        }
        FamilyKind::Cycle => {
            let n = p[0];
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        FamilyKind::Complete => {
            let n = p[0];
            Graph::from_edges(n, (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))))?
        }
        FamilyKind::Empty => Graph::empty(p[0]),
        FamilyKind::Biclique => {
            let (a, b) = (p[0], p[1]);
            Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))?
        }
        FamilyKind::Kneser => {
            let subsets = colex_subsets(p[0], p[1]);
            let mut g = Graph::empty(subsets.len());
            for (i, s) in subsets.iter().enumerate() {
                for (j, t) in subsets.iter().enumerate().skip(i + 1) {
                    if s & t == 0 {
                        g.set_edge(i, j);
                    }
                }
            }
            g
        }
    };
    Ok(g.with_label(spec.to_string()))
}

/// All `k`-subsets of `{1..n}` as bitmasks (bit `i-1` for element `i`), colex order.
fn colex_subsets(n: usize, k: usize) -> Vec<u64> {
    assert!(n < 64, "kneser ground set too large");
    // Colex order on k-subsets coincides with numeric order of their bitmasks,
    // which Gosper's hack walks directly.
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut m = (1u64 << k) - 1;
    while m < limit {
        out.push(m);
        let low = m & m.wrapping_neg();
        let ripple = m + low;
        m = (((ripple ^ m) >> 2) / low) | ripple;
    }
    out
}
