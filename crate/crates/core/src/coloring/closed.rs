use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use super::count::GraphSymmetry;
use crate::combinat::{binomial, factorial, stirling2};
use crate::error::Result;
use crate::graph::{make_family, FamilyKind, FamilySpec};
use crate::index::{Backend, IndexValue, Mode, Rule};

/// Closed-form Φ_k / φ_k for a named family.
///
/// Paths use their two recursions, complete and edgeless graphs `C(k,n)`,
/// balanced bicliques their own formula. Anything else is built and handed
/// to the graph-level forms (threshold regime, `k = n`, asymmetric graphs).
pub fn closed_form_phi(spec: &FamilySpec, k: usize, mode: Mode) -> Result<IndexValue> {
    let p = spec.params();
    let (value, rule) = match spec.kind() {
        FamilyKind::Path => {
            let value = match mode {
                Mode::AtMost => path_at_most(p[0], k),
                Mode::Exact => path_exact_row(p[0], k).swap_remove(k),
            };
            (value, Rule::PathRecursion)
        }
        FamilyKind::Complete | FamilyKind::Empty => {
            let n = p[0];
            let value = match mode {
                Mode::AtMost => binomial(k, n),
                Mode::Exact => BigUint::from((k == n) as u32),
            };
            (value, Rule::CompleteGraph)
        }
        FamilyKind::Biclique if p[0] == p[1] => {
            (balanced_biclique(p[0], k, mode), Rule::BalancedBiclique)
        }
        _ => return GraphSymmetry::new(&make_family(spec)?)?.closed_phi(k, mode),
    };
    Ok(IndexValue::new(value, Backend::ClosedForm(rule)))
}

/// Φ_k(P_n): the end vertices either differ in color, or agree and the
/// interior P_{n-2} must itself be distinguishing.
fn path_at_most(n: usize, k: usize) -> BigUint {
    let pairs = binomial(k, 2);
    let mut value = match n {
        1 => return BigUint::from(k),
        _ if n.is_multiple_of(2) => pairs.clone(),
        _ => &pairs * k,
    };
    let mut m = if n.is_multiple_of(2) { 2 } else { 3 };
    while m < n {
        m += 2;
        value = &pairs * BigUint::from(k).pow((m - 2) as u32) + value * k;
    }
    value
}

/// φ_j(P_n) for `j = 0..=k`.
fn path_exact_row(n: usize, k: usize) -> Vec<BigUint> {
    let base = |m: usize| -> Vec<BigUint> {
        (0..=k)
            .map(|j| match (m, j) {
                (1, 1) | (2, 2) => BigUint::one(),
                (3, 2) => BigUint::from(2u32),
                (3, 3) => BigUint::from(3u32),
                _ => BigUint::zero(),
            })
            .collect()
    };
    if n <= 3 {
        return base(n);
    }
    let mut m = if n.is_multiple_of(2) { 2 } else { 3 };
    let mut row = base(m);
    while m < n {
        m += 2;
        let inner = m - 2;
        let surj = |j: usize| factorial(j) * stirling2(inner, j);
        row = (0..=k)
            .map(|j| {
                if j < 2 {
                    return BigUint::zero();
                }
                let ends = surj(j - 2) + surj(j - 1) * 2u32 + surj(j);
                (&row[j] + &row[j - 1]) * j + binomial(j, 2) * ends
            })
            .collect();
    }
    row
}

/// K_{n,n}: each side needs distinct colors, and a coloring is identified
/// with the one obtained by swapping the sides.
fn balanced_biclique(n: usize, k: usize, mode: Mode) -> BigUint {
    let sides = binomial(k, n);
    match mode {
        Mode::AtMost if sides.is_zero() => sides,
        Mode::AtMost => &sides * (&sides - 1u32) / 2u32,
        Mode::Exact if k > n && k <= 2 * n => sides * binomial(n, k - n) / 2u32,
        Mode::Exact => BigUint::zero(),
    }
}
