//! Exact integer combinatorics used by the closed forms and inversions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Stirling number of the second kind, `S(n, k)`, by
/// `S(n,k) = k·S(n-1,k) + S(n-1,k-1)`. Zero outside `0 ≤ k ≤ n` except `S(0,0) = 1`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of surjections from an `n`-set onto a `k`-set.
pub fn surjections(n: usize, k: usize) -> BigUint {
    factorial(k) * stirling2(n, k)
}

/// Bell number `B(n)`, saturating at `u128::MAX`.
pub fn bell(n: usize) -> u128 {
    // Bell triangle
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let v = next.last().unwrap().saturating_add(x);
            next.push(v);
        }
        row = next;
    }
    row[0]
}
