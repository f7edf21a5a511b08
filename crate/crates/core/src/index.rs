use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::Error;

/// Whether a count ranges over at most `k` colors/cells or exactly `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    AtMost,
    Exact,
}

/// Backend requested by a caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BackendChoice {
    #[default]
    Auto,
    Oracle,
    Moebius,
    Closed,
}

impl FromStr for BackendChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "auto" => Ok(BackendChoice::Auto),
            "oracle" => Ok(BackendChoice::Oracle),
            "moebius" | "mobius" => Ok(BackendChoice::Moebius),
            "closed" | "closed-form" => Ok(BackendChoice::Closed),
            other => Err(Error::InvalidInput(format!("unknown backend `{other}`"))),
        }
    }
}

/// Named closed-form rules, reported as provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Two-term recursions for paths.
    PathRecursion,
    /// `Φ_k(K_n) = C(k,n)`; also used for the edgeless graph, which has the same group.
    CompleteGraph,
    /// Balanced complete bipartite graph formulas.
    BalancedBiclique,
    /// `φ_k = k!·S(n,k)/|Aut|` for `k ≥ θ`.
    ThresholdRegime,
    /// `φ_n = n!/|Aut|`.
    AllDistinctColors,
    /// `θ = 1 + max` cycle count over non-identity automorphisms.
    CycleCount,
    /// ψ_2 of a path from φ_2.
    PathTwoCells,
    /// ψ_{n-1} of a path or cycle.
    OneSharedCell,
    /// Distinguishing number of a lexicographic product with natural automorphisms.
    LexicographicProduct,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::PathRecursion => "path recursion",
            Rule::CompleteGraph => "complete graph",
            Rule::BalancedBiclique => "balanced biclique",
            Rule::ThresholdRegime => "threshold regime k!S(n,k)/|Aut|",
            Rule::AllDistinctColors => "all-distinct n!/|Aut|",
            Rule::CycleCount => "1 + max non-identity cycle count",
            Rule::PathTwoCells => "two-cell path partitions",
            Rule::OneSharedCell => "single shared cell",
            Rule::LexicographicProduct => "lexicographic product (naturality verified)",
        }
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    /// Exhaustive enumeration.
    Oracle,
    /// Möbius inversion over the subgroup lattice.
    Moebius,
    ClosedForm(Rule),
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Oracle => f.write_str("oracle"),
            Backend::Moebius => f.write_str("moebius"),
            Backend::ClosedForm(rule) => write!(f, "closed-form ({})", rule.name()),
        }
    }
}

/// A computed index value with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexValue {
    pub value: BigUint,
    pub backend: Backend,
}

impl IndexValue {
    pub fn new(value: impl Into<BigUint>, backend: Backend) -> Self {
        IndexValue {
            value: value.into(),
            backend,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for IndexValue {
    /// Decimal string, so values survive consumers without big integers.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.value.to_str_radix(10))
    }
}
