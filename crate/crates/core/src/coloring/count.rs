use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};
use rayon::prelude::*;

use crate::combinat::{binomial, factorial, stirling2};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{
    automorphism_group, subgroup_lattice, PermutationGroup, SubgroupLattice, DEFAULT_LATTICE_BOUND,
};
use crate::index::{Backend, BackendChoice, IndexValue, Mode, Rule};

/// Largest number of colorings `k^n` the oracle enumerates.
pub const ORACLE_LIMIT: u64 = 10_000_000;

const ORACLE_CHUNK: u64 = 1 << 15;

/// A graph together with its automorphism group and, on demand, the
/// subgroup lattice. Counting many `k` for one graph should go through one
/// of these so the group work is done once.
pub struct GraphSymmetry {
    graph: Graph,
    group: PermutationGroup,
    lattice: OnceLock<Result<SubgroupLattice>>,
}

impl GraphSymmetry {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(GraphSymmetry {
            group: automorphism_group(g)?,
            graph: g.clone(),
            lattice: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        self.lattice
            .get_or_init(|| subgroup_lattice(&self.group))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    /// θ(G) as one more than the largest cycle count of a non-identity
    /// automorphism; 1 for asymmetric graphs.
    ///
    /// A coloring is preserved by `g` iff it is constant on the cycles of `g`,
    /// so `g` preserves some surjective `t`-coloring exactly when it has at
    /// least `t` cycles.
    pub fn threshold(&self) -> IndexValue {
        let max_cycles = self
            .group
            .non_identity()
            .map(|p| p.cycle_count())
            .max()
            .unwrap_or(0);
        IndexValue::new(1 + max_cycles, Backend::ClosedForm(Rule::CycleCount))
    }

    pub fn count_phi(&self, k: usize, mode: Mode, backend: BackendChoice) -> Result<IndexValue> {
        if k < 1 {
            return Err(Error::InvalidInput(
                "number of colors k must be at least 1".into(),
            ));
        }
        match backend {
            BackendChoice::Oracle => {
                Ok(IndexValue::new(self.oracle_phi(k, mode)?, Backend::Oracle))
            }
            BackendChoice::Moebius => Ok(IndexValue::new(
                self.moebius_phi(k, mode)?,
                Backend::Moebius,
            )),
            BackendChoice::Closed => self.closed_phi(k, mode),
            BackendChoice::Auto => {
                if oracle_size(self.n(), k).is_some_and(|s| s <= ORACLE_LIMIT) {
                    self.count_phi(k, mode, BackendChoice::Oracle)
                } else if self.group.order() <= DEFAULT_LATTICE_BOUND {
                    self.count_phi(k, mode, BackendChoice::Moebius)
                } else {
                    self.closed_phi(k, mode).map_err(|_| {
                        Error::size_bound(
                            "automorphism group order for Möbius counting",
                            self.group.order(),
                            DEFAULT_LATTICE_BOUND,
                        )
                    })
                }
            }
        }
    }

    /// Counts by enumerating all `k^n` colorings.
    ///
    /// A coloring has a nontrivial stabilizer iff the stabilizer contains an
    /// element of prime order, so one generator per subgroup of prime order is
    /// enough to test. Distinguishing colorings form free orbits, which makes
    /// the orbit count an exact division by `|Aut|`.
    pub fn oracle_phi(&self, k: usize, mode: Mode) -> Result<BigUint> {
        let n = self.n();
        let total = oracle_size(n, k)
            .filter(|&s| s <= ORACLE_LIMIT)
            .ok_or_else(|| {
                Error::size_bound(
                    "oracle colorings k^n",
                    BigUint::from(k).pow(n as u32),
                    ORACLE_LIMIT,
                )
            })?;
        let witnesses = prime_order_witnesses(&self.group);
        let chunks = total.div_ceil(ORACLE_CHUNK);
        let (all, surjective) = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let end = ((c + 1) * ORACLE_CHUNK).min(total);
                count_range(n, k, c * ORACLE_CHUNK, end, &witnesses)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let hits = match mode {
            Mode::AtMost => all,
            Mode::Exact => surjective,
        };
        exact_quotient(BigUint::from(hits), self.group.order())
    }

    /// Counts by Möbius inversion over the subgroup lattice.
    pub fn moebius_phi(&self, k: usize, mode: Mode) -> Result<BigUint> {
        match mode {
            Mode::AtMost => self.moebius_at_most(k),
            Mode::Exact => {
                let mut acc = BigInt::zero();
                for i in 0..=k {
                    let term =
                        BigInt::from_biguint(Sign::Plus, binomial(k, i) * self.moebius_at_most(i)?);
                    if (k - i).is_multiple_of(2) {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc.to_biguint().ok_or_else(|| {
                    Error::Internal(format!("binomial inversion gave φ_{k} = {acc}"))
                })
            }
        }
    }

    fn moebius_at_most(&self, k: usize) -> Result<BigUint> {
        let lattice = self.lattice()?;
        let subgroups = lattice.subgroups();
        // fixed[h]: colorings whose stabilizer is exactly subgroup h
        let mut fixed = vec![BigInt::zero(); subgroups.len()];
        for h in (0..subgroups.len()).rev() {
            let mut v = BigInt::from(k).pow(subgroups[h].orbit_count() as u32);
            for &above in lattice.strictly_above(h) {
                v -= &fixed[above];
            }
            fixed[h] = v;
        }
        debug_assert_eq!(subgroups[0].order(), 1);
        let free = fixed.swap_remove(0);
        if free.is_negative() {
            return Err(Error::Internal(format!("negative free-orbit count {free}")));
        }
        exact_quotient(free.magnitude().clone(), self.group.order())
    }

    /// Closed forms that need only the graph: complete and edgeless graphs,
    /// the threshold regime `k ≥ θ` for exact counts, and asymmetric graphs.
    pub fn closed_phi(&self, k: usize, mode: Mode) -> Result<IndexValue> {
        let n = self.n();
        if n >= 1 && (self.graph.is_complete() || self.graph.edge_count() == 0) {
            let value = match mode {
                Mode::AtMost => binomial(k, n),
                Mode::Exact => BigUint::from((k == n) as u32),
            };
            return Ok(IndexValue::new(
                value,
                Backend::ClosedForm(Rule::CompleteGraph),
            ));
        }
        let theta = self.threshold().value;
        match mode {
            Mode::Exact if BigUint::from(k) >= theta => {
                let rule = if k == n {
                    Rule::AllDistinctColors
                } else {
                    Rule::ThresholdRegime
                };
                let value = exact_quotient(factorial(k) * stirling2(n, k), self.group.order())?;
                Ok(IndexValue::new(value, Backend::ClosedForm(rule)))
            }
            Mode::AtMost if self.group.is_trivial() => Ok(IndexValue::new(
                BigUint::from(k).pow(n as u32),
                Backend::ClosedForm(Rule::ThresholdRegime),
            )),
            _ => Err(Error::NoClosedForm(format!(
                "{} colorings with k = {k} below the threshold {theta}",
                match mode {
                    Mode::AtMost => "at-most",
                    Mode::Exact => "exact",
                }
            ))),
        }
    }

    /// Least `d` with `Φ_d > 0`; at most `n` since an all-distinct coloring
    /// always distinguishes.
    pub fn distinguishing_number(&self) -> Result<IndexValue> {
        let n = self.n();
        if self.group.is_trivial() {
            return Ok(IndexValue::new(1u32, Backend::ClosedForm(Rule::CycleCount)));
        }
        for d in 1..n {
            let count = self.count_phi(d, Mode::AtMost, BackendChoice::Auto)?;
            if !count.value.is_zero() {
                return Ok(IndexValue::new(d, count.backend));
            }
        }
        Ok(IndexValue::new(
            n,
            Backend::ClosedForm(Rule::AllDistinctColors),
        ))
    }
}

pub fn count_phi(g: &Graph, k: usize, mode: Mode, backend: BackendChoice) -> Result<IndexValue> {
    GraphSymmetry::new(g)?.count_phi(k, mode, backend)
}

pub fn distinguishing_number(g: &Graph) -> Result<IndexValue> {
    GraphSymmetry::new(g)?.distinguishing_number()
}

pub fn threshold(g: &Graph) -> Result<IndexValue> {
    Ok(GraphSymmetry::new(g)?.threshold())
}

fn oracle_size(n: usize, k: usize) -> Option<u64> {
    (k as u64).checked_pow(u32::try_from(n).ok()?)
}

pub(crate) fn exact_quotient(total: BigUint, order: usize) -> Result<BigUint> {
    let (q, r) = total.div_rem(&BigUint::from(order));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "{total} distinguishing colorings not divisible by |Aut| = {order}"
        )));
    }
    Ok(q)
}

/// Moved-point pairs `(v, p(v))` of one element per subgroup of prime order.
fn prime_order_witnesses(group: &PermutationGroup) -> Vec<Vec<(usize, usize)>> {
    let mut covered = vec![false; group.order()];
    let mut witnesses = Vec::new();
    for i in 1..group.order() {
        if covered[i] {
            continue;
        }
        let order = group.element(i).order();
        if !is_prime(order) {
            continue;
        }
        let mut power = i;
        while power != 0 {
            covered[power] = true;
            power = group.multiply(power, i);
        }
        let p = group.element(i);
        witnesses.push(
            (0..p.degree())
                .filter(|&v| p.image(v) != v)
                .map(|v| (v, p.image(v)))
                .collect(),
        );
    }
    witnesses
}

fn is_prime(m: u64) -> bool {
    m >= 2
        && (2..)
            .take_while(|d| d * d <= m)
            .all(|d| !m.is_multiple_of(d))
}

/// Distinguishing colorings among codes `start..end`, where code `c` colors
/// vertex `v` with digit `v` of `c` in base `k`. Returns (all, surjective).
fn count_range(
    n: usize,
    k: usize,
    start: u64,
    end: u64,
    witnesses: &[Vec<(usize, usize)>],
) -> (u64, u64) {
    let mut digits = vec![0usize; n];
    let mut rest = start;
    for d in digits.iter_mut() {
        *d = (rest % k as u64) as usize;
        rest /= k as u64;
    }
    let mut used = vec![0usize; k];
    for &d in &digits {
        used[d] += 1;
    }
    let mut distinct = used.iter().filter(|&&u| u > 0).count();
    let (mut all, mut surjective) = (0, 0);
    for code in start..end {
        let preserved = witnesses
            .iter()
            .any(|w| w.iter().all(|&(v, pv)| digits[v] == digits[pv]));
        if !preserved {
            all += 1;
            surjective += (distinct == k) as u64;
        }
        if code + 1 == end {
            break;
        }
        for d in digits.iter_mut() {
            used[*d] -= 1;
            if used[*d] == 0 {
                distinct -= 1;
            }
            *d = (*d + 1) % k;
            if used[*d] == 0 {
                distinct += 1;
            }
            used[*d] += 1;
            if *d != 0 {
                break;
            }
        }
    }
    (all, surjective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_family;

    fn sym(s: &str) -> GraphSymmetry {
        GraphSymmetry::new(&make_family(&s.parse().unwrap()).unwrap()).unwrap()
    }

    fn value(v: Result<IndexValue>) -> u64 {
        u64::try_from(v.unwrap().value).unwrap()
    }

    #[test]
    fn count_examples() {
        for backend in [BackendChoice::Oracle, BackendChoice::Moebius] {
            assert_eq!(value(sym("path:6").count_phi(2, Mode::AtMost, backend)), 28);
            assert_eq!(value(sym("cycle:5").count_phi(4, Mode::Exact, backend)), 24);
            assert_eq!(
                value(sym("complete:3").count_phi(5, Mode::AtMost, backend)),
                10
            );
        }
        assert_eq!(
            value(sym("complete:3").count_phi(5, Mode::AtMost, BackendChoice::Closed)),
            10
        );
    }

    #[test]
    fn distinguishing_number_examples() {
        assert_eq!(value(sym("cycle:5").distinguishing_number()), 3);
        assert_eq!(value(sym("cycle:6").distinguishing_number()), 2);
        assert_eq!(value(sym("complete:4").distinguishing_number()), 4);
        assert_eq!(value(sym("path:1").distinguishing_number()), 1);
        assert_eq!(value(sym("kneser:5,2").distinguishing_number()), 3);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(value(Ok(sym("path:7").threshold())), 5);
        assert_eq!(value(Ok(sym("cycle:8").threshold())), 6);
        assert_eq!(value(Ok(sym("kneser:5,2").threshold())), 8);
        assert_eq!(value(Ok(sym("path:1").threshold())), 1);
    }

    #[test]
    fn auto_falls_back_to_moebius_past_oracle_limit() {
        let s = sym("cycle:10");
        let v = s.count_phi(9, Mode::AtMost, BackendChoice::Auto).unwrap();
        assert_eq!(v.backend, Backend::Moebius);
        assert_eq!(v.value, BigUint::from(174_189_024u64));
        let o = s.count_phi(4, Mode::AtMost, BackendChoice::Auto).unwrap();
        assert_eq!(o.backend, Backend::Oracle);
    }

    #[test]
    fn oracle_bound_and_k_zero() {
        let s = sym("cycle:10");
        let err = s
            .count_phi(6, Mode::AtMost, BackendChoice::Oracle)
            .unwrap_err();
        assert!(err.is_resource_bound());
        assert!(s.count_phi(0, Mode::AtMost, BackendChoice::Auto).is_err());
    }

    #[test]
    fn closed_regimes() {
        let s = sym("path:6");
        let v = s.closed_phi(5, Mode::Exact).unwrap();
        assert_eq!(v.value, BigUint::from(900u32));
        assert_eq!(v.backend, Backend::ClosedForm(Rule::ThresholdRegime));
        assert!(s.closed_phi(3, Mode::Exact).is_err());
        assert!(s.closed_phi(5, Mode::AtMost).is_err());
        let v = sym("path:4").closed_phi(4, Mode::Exact).unwrap();
        assert_eq!(v.value, BigUint::from(12u32));
        assert_eq!(v.backend, Backend::ClosedForm(Rule::AllDistinctColors));
        assert_eq!(value(sym("empty:3").closed_phi(4, Mode::AtMost)), 4);
    }

    #[test]
    fn moebius_row_matches_top_down_solve() {
        let s = sym("kneser:5,2");
        let lattice = s.lattice().unwrap();
        let row = lattice.moebius_row(0);
        for k in 1..=5usize {
            let mut free = BigInt::zero();
            for (h, sub) in lattice.subgroups().iter().enumerate() {
                free += BigInt::from(k).pow(sub.orbit_count() as u32) * row[h];
            }
            let expected = s.moebius_phi(k, Mode::AtMost).unwrap() * 120u32;
            assert_eq!(free, BigInt::from(expected), "k={k}");
        }
        for k in 1..=4 {
            assert_eq!(
                s.moebius_phi(k, Mode::AtMost).unwrap(),
                s.oracle_phi(k, Mode::AtMost).unwrap()
            );
        }
    }

    #[test]
    fn witnesses_cover_prime_order_subgroups() {
        // D4 has five involutions and no elements of odd prime order
        assert_eq!(prime_order_witnesses(sym("cycle:4").group()).len(), 5);
        // S3: three involutions, one subgroup of order 3
        assert_eq!(prime_order_witnesses(sym("complete:3").group()).len(), 4);
    }
}
