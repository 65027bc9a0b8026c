//! Irreducible characters of the symmetric group via Murnaghan–Nakayama.

use std::collections::{BTreeSet, HashMap};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partition::Partition;

static CHARACTER_CACHE: LazyLock<RwLock<HashMap<(Partition, Partition), i64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Centralizer order `z(μ) = ∏ r^{m_r} m_r!`.
pub fn zmu(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (r, &m) in mu.multiplicities().iter().enumerate().skip(1) {
        for i in 1..=m {
            z *= BigInt::from(r) * BigInt::from(i);
        }
    }
    z
}

/// The character `χ^λ` evaluated on the conjugacy class of cycle type `μ`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    Ok(character_unchecked(lambda, mu))
}

fn character_unchecked(lambda: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = CHARACTER_CACHE
        .read()
        .expect("character cache poisoned")
        .get(&key)
    {
        return v;
    }

    // Strip a rim hook of length μ_1 in every possible way. On the beta-set
    // {λ_i + ℓ - 1 - i}, that replaces some b by b - r when b - r is free, with
    // sign (-1)^(number of beta numbers strictly between b - r and b).
    let r = mu.part(0);
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("tail of a partition");
    let len = lambda.length();
    let beta: BTreeSet<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();

    let mut total = 0i64;
    for &b in &beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.range(b - r + 1..b).count();
        let mut next: Vec<usize> = beta.iter().copied().filter(|&x| x != b).collect();
        next.push(b - r);
        next.sort_unstable_by(|a, b| b.cmp(a));
        let n = next.len();
        let parts = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (n - 1 - i))
            .collect();
        let smaller = Partition::new(parts).expect("rim hook removal yields a partition");
        let sign = if between.is_multiple_of(2) { 1 } else { -1 };
        total += sign * character_unchecked(&smaller, &rest);
    }

    CHARACTER_CACHE
        .write()
        .expect("character cache poisoned")
        .insert(key, total);
    total
}

/// Dimension of the irreducible representation labelled by `λ`.
pub fn dimension(lambda: &Partition) -> i64 {
    character_unchecked(lambda, &Partition::column(lambda.weight()))
}
